import os
import random

import pytest

from models import Complex, Reaction, ReactionNetwork
from parsers import load_network, parse_network

SAMPLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'samples')


def sample_path(name: str) -> str:
    return os.path.join(SAMPLES, name)


def load_sample(name: str):
    return load_network(sample_path(name))


def network(text: str) -> ReactionNetwork:
    return parse_network(text).network


def random_complex(rng: random.Random, n: int, max_coefficient: int = 3) -> Complex:
    return Complex(tuple(rng.randint(0, max_coefficient) for _ in range(n)))


def random_reaction(rng: random.Random, n: int, max_coefficient: int = 3) -> Reaction:
    while True:
        source = random_complex(rng, n, max_coefficient)
        product = random_complex(rng, n, max_coefficient)
        if source != product:
            return Reaction(source, product)


def random_network(rng: random.Random, max_species: int = 4, max_reactions: int = 8,
                   max_coefficient: int = 3, n: int = None) -> ReactionNetwork:
    """Random network biased towards shared sources, which is where the interesting cases are."""
    n = n or rng.randint(1, max_species)
    d = rng.randint(1, max_reactions)
    sources = [random_complex(rng, n, max_coefficient) for _ in range(rng.randint(1, 3))]

    reactions = []
    attempts = 0
    while len(reactions) < d and attempts < 200:
        attempts += 1
        source = rng.choice(sources) if rng.random() < 0.7 else random_complex(rng, n, max_coefficient)
        product = random_complex(rng, n, max_coefficient)
        reaction = Reaction(source, product) if source != product else None
        if reaction is not None and reaction not in reactions:
            reactions.append(reaction)

    species = [f"X{i + 1}" for i in range(n)]
    return ReactionNetwork.build(species, [(r.source.coefficients, r.product.coefficients) for r in reactions])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def same_generator():
    return load_sample('same_generator_1.rn'), load_sample('same_generator_2.rn')


@pytest.fixture
def birth_death():
    return load_sample('birth_death.rn')


@pytest.fixture
def collinear_growth():
    return load_sample('collinear_growth.rn')


@pytest.fixture
def branching():
    return load_sample('branching_a.rn'), load_sample('branching_b.rn')


@pytest.fixture
def production():
    return load_sample('production_a.rn'), load_sample('production_b.rn')
