from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from helpers.errors import AlignmentError, NetworkError

Rational = Union[int, str, Fraction]


@dataclass(frozen=True)
class Species:
    name: str
    index: int


@dataclass(frozen=True, order=True)
class Complex:
    """Non-negative integer combination of species. Ordered lexicographically on coefficients."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coefficients = tuple(int(c) for c in self.coefficients)
        if any(c < 0 for c in coefficients):
            raise NetworkError(f"Complex coefficients must be non-negative: {coefficients}")
        object.__setattr__(self, 'coefficients', coefficients)

    @classmethod
    def empty(cls, n: int) -> 'Complex':
        return cls((0,) * n)

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    @property
    def molecularity(self) -> int:
        return sum(self.coefficients)

    def permuted(self, permutation: Sequence[int]) -> 'Complex':
        """Move coordinate j to position permutation[j]."""
        moved = [0] * self.dimension
        for j, c in enumerate(self.coefficients):
            moved[permutation[j]] = c
        return Complex(tuple(moved))

    def __sub__(self, other: 'Complex') -> Tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.coefficients, other.coefficients))


@dataclass(frozen=True)
class ExtendedReactionVector:
    """(y'-y, upper triangle of (y'-y)(y'-y)^T in row-major order)."""

    drift_part: Tuple[int, ...]
    diffusion_part: Tuple[int, ...]

    def as_column(self) -> Tuple[int, ...]:
        return self.drift_part + self.diffusion_part


@dataclass(frozen=True)
class Reaction:
    source: Complex
    product: Complex

    def __post_init__(self):
        if self.source.dimension != self.product.dimension:
            raise NetworkError("Source and product complexes have different dimensions")
        if self.source == self.product:
            raise NetworkError(f"Source and product of a reaction must differ: {self.source.coefficients}")

    @property
    def vector(self) -> Tuple[int, ...]:
        return self.product - self.source


def upper_triangle(vector: Sequence) -> Tuple:
    n = len(vector)
    return tuple(vector[i] * vector[j] for i in range(n) for j in range(i, n))


def extended_reaction_vector(reaction: Reaction) -> ExtendedReactionVector:
    drift = reaction.vector
    return ExtendedReactionVector(drift_part=drift, diffusion_part=upper_triangle(drift))


@dataclass(frozen=True)
class RateVector:
    rates: Tuple[Fraction, ...]

    def __post_init__(self):
        rates = tuple(Fraction(rate) for rate in self.rates)
        for position, rate in enumerate(rates):
            if rate <= 0:
                raise NetworkError(f"rate must be positive (reaction {position + 1}: {rate})")
        object.__setattr__(self, 'rates', rates)

    @classmethod
    def of(cls, *rates: Rational) -> 'RateVector':
        return cls(tuple(Fraction(rate) for rate in rates))

    @classmethod
    def ones(cls, d: int) -> 'RateVector':
        return cls((Fraction(1),) * d)

    def __len__(self) -> int:
        return len(self.rates)

    def __getitem__(self, item):
        return self.rates[item]

    def __iter__(self):
        return iter(self.rates)

    def scaled(self, factor: Rational) -> 'RateVector':
        return RateVector(tuple(rate * Fraction(factor) for rate in self.rates))


@dataclass(frozen=True)
class ReactionNetwork:
    species: Tuple[Species, ...]
    reactions: Tuple[Reaction, ...]
    name: Optional[str] = None
    _sources: Tuple[Complex, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        species = tuple(self.species)
        reactions = tuple(self.reactions)

        names = [s.name for s in species]
        if len(set(names)) != len(names):
            raise NetworkError(f"Species names must be unique: {names}")
        for position, s in enumerate(species):
            if not s.name:
                raise NetworkError("Species names must be non-empty")
            if s.index != position:
                raise NetworkError(f"Species '{s.name}' has index {s.index}, expected {position}")

        seen = set()
        for reaction in reactions:
            if reaction.source.dimension != len(species):
                raise NetworkError(f"Complex dimension {reaction.source.dimension} does not match "
                                   f"{len(species)} species")
            if reaction in seen:
                raise NetworkError(f"Duplicate reaction: {self.describe(reaction, names)}")
            seen.add(reaction)

        object.__setattr__(self, 'species', species)
        object.__setattr__(self, 'reactions', reactions)
        object.__setattr__(self, '_sources', tuple(sorted({r.source for r in reactions})))

    @classmethod
    def build(cls, species: Sequence[str], reactions: Iterable[Tuple[Sequence[int], Sequence[int]]],
              name: Optional[str] = None) -> 'ReactionNetwork':
        """Shortcut: species names plus (source coefficients, product coefficients) pairs."""
        return cls(
            species=tuple(Species(s, i) for i, s in enumerate(species)),
            reactions=tuple(Reaction(Complex(tuple(y)), Complex(tuple(y_prime))) for y, y_prime in reactions),
            name=name,
        )

    @property
    def n_species(self) -> int:
        return len(self.species)

    @property
    def n_reactions(self) -> int:
        return len(self.reactions)

    @property
    def species_names(self) -> Tuple[str, ...]:
        return tuple(s.name for s in self.species)

    @property
    def complexes(self) -> Tuple[Complex, ...]:
        return tuple(sorted({c for r in self.reactions for c in (r.source, r.product)}))

    def source_complexes(self) -> Tuple[Complex, ...]:
        return self._sources

    def reactions_from(self, source: Complex) -> List[int]:
        return [i for i, r in enumerate(self.reactions) if r.source == source]

    def reactions_by_source(self) -> Dict[Complex, List[int]]:
        grouped = {y: [] for y in self._sources}
        for i, reaction in enumerate(self.reactions):
            grouped[reaction.source].append(i)
        return grouped

    def with_reactions(self, extra: Iterable[Reaction], name: Optional[str] = None) -> 'ReactionNetwork':
        return ReactionNetwork(self.species, self.reactions + tuple(extra), name or self.name)

    def without_reaction(self, index: int) -> 'ReactionNetwork':
        kept = self.reactions[:index] + self.reactions[index + 1:]
        return ReactionNetwork(self.species, kept, self.name)

    def align_to(self, species_names: Sequence[str]) -> 'ReactionNetwork':
        """Re-express the network over species_names (same set, possibly another order)."""
        if sorted(species_names) != sorted(self.species_names):
            raise AlignmentError(f"Species mismatch: {list(self.species_names)} vs {list(species_names)}")
        if tuple(species_names) == self.species_names:
            return self

        target = {name: i for i, name in enumerate(species_names)}
        permutation = [target[s.name] for s in self.species]
        return ReactionNetwork(
            species=tuple(Species(name, i) for i, name in enumerate(species_names)),
            reactions=tuple(Reaction(r.source.permuted(permutation), r.product.permuted(permutation))
                            for r in self.reactions),
            name=self.name,
        )

    def permuted(self, permutation: Sequence[int], species_names: Sequence[str]) -> 'ReactionNetwork':
        """Relabel coordinates: species j of this network becomes coordinate permutation[j]."""
        return ReactionNetwork(
            species=tuple(Species(name, i) for i, name in enumerate(species_names)),
            reactions=tuple(Reaction(r.source.permuted(permutation), r.product.permuted(permutation))
                            for r in self.reactions),
            name=self.name,
        )

    def check_rates(self, rates: RateVector):
        if len(rates) != self.n_reactions:
            raise NetworkError(f"Rate vector has {len(rates)} entries, network has {self.n_reactions} reactions")

    @staticmethod
    def describe_complex(c: Complex, names: Sequence[str]) -> str:
        terms = []
        for name, coefficient in zip(names, c.coefficients):
            if coefficient == 1:
                terms.append(name)
            elif coefficient > 1:
                terms.append(f"{coefficient} {name}")
        return ' + '.join(terms) if terms else '0'

    @classmethod
    def describe(cls, reaction: Reaction, names: Sequence[str]) -> str:
        return f"{cls.describe_complex(reaction.source, names)} -> {cls.describe_complex(reaction.product, names)}"

    def __str__(self) -> str:
        return '; '.join(self.describe(r, self.species_names) for r in self.reactions)


def stoichiometric_matrix(net: ReactionNetwork) -> Tuple[Tuple[int, ...], ...]:
    """n x d integer matrix whose column r is product(r) - source(r)."""
    columns = [r.vector for r in net.reactions]
    return tuple(tuple(column[i] for column in columns) for i in range(net.n_species))


def source_complexes(net: ReactionNetwork) -> Tuple[Complex, ...]:
    return net.source_complexes()


def is_subnetwork(sub: ReactionNetwork, sup: ReactionNetwork) -> bool:
    aligned = sub.align_to(sup.species_names)
    return set(aligned.reactions) <= set(sup.reactions)


def pad_rates(sub: ReactionNetwork, sup: ReactionNetwork, rates: RateVector,
              fill: Rational = 1) -> RateVector:
    """Carry the rates of sub over to sup; reactions only in sup get `fill`."""
    sub.check_rates(rates)
    aligned = sub.align_to(sup.species_names)
    known = dict(zip(aligned.reactions, rates))
    if not set(known) <= set(sup.reactions):
        raise NetworkError("Rates can only be padded onto a supernetwork")
    return RateVector(tuple(known.get(r, Fraction(fill)) for r in sup.reactions))
