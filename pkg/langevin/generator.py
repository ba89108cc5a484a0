from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np
import sympy

from helpers.errors import NetworkError
from models import Complex, RateVector, ReactionNetwork, upper_triangle


@dataclass(frozen=True)
class GeneratorBlock:
    drift: Tuple[Fraction, ...]
    diffusion: Tuple[Fraction, ...]

    @classmethod
    def zero(cls, n: int) -> 'GeneratorBlock':
        return cls((Fraction(0),) * n, (Fraction(0),) * (n * (n + 1) // 2))

    def diffusion_matrix(self, n: int) -> List[List[Fraction]]:
        matrix = [[Fraction(0)] * n for _ in range(n)]
        entries = iter(self.diffusion)
        for i in range(n):
            for j in range(i, n):
                matrix[i][j] = matrix[j][i] = next(entries)
        return matrix


@dataclass(frozen=True)
class GeneratorCoefficients:
    """Per source complex y, the coefficients of x^y in the drift A(x) and diffusion B(x)."""

    species: Tuple[str, ...]
    blocks: Dict[Complex, GeneratorBlock]

    @property
    def n_species(self) -> int:
        return len(self.species)

    def block(self, source: Complex) -> GeneratorBlock:
        return self.blocks.get(source, GeneratorBlock.zero(self.n_species))

    def sources(self) -> Tuple[Complex, ...]:
        return tuple(sorted(self.blocks))

    def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Float exponents (k x n), drift coefficients (k x n) and diffusion coefficients (k x n x n)."""
        n = self.n_species
        sources = self.sources()
        exponents = np.array([y.coefficients for y in sources], dtype=float).reshape(len(sources), n)
        drift = np.array([[float(c) for c in self.blocks[y].drift] for y in sources],
                         dtype=float).reshape(len(sources), n)
        diffusion = np.array([[[float(c) for c in row] for row in self.blocks[y].diffusion_matrix(n)]
                              for y in sources], dtype=float).reshape(len(sources), n, n)
        return exponents, drift, diffusion


def generator_coefficients(net: ReactionNetwork, kappa: RateVector) -> GeneratorCoefficients:
    net.check_rates(kappa)
    n = net.n_species
    blocks = {}

    for source, indices in net.reactions_by_source().items():
        drift = [Fraction(0)] * n
        diffusion = [Fraction(0)] * (n * (n + 1) // 2)
        for r in indices:
            vector = net.reactions[r].vector
            rate = kappa[r]
            drift = [d + rate * v for d, v in zip(drift, vector)]
            diffusion = [d + rate * v for d, v in zip(diffusion, upper_triangle(vector))]
        blocks[source] = GeneratorBlock(tuple(drift), tuple(diffusion))

    return GeneratorCoefficients(net.species_names, blocks)


def _aligned_pair(net_a: ReactionNetwork, net_b: ReactionNetwork) -> ReactionNetwork:
    return net_b.align_to(net_a.species_names)


def generators_equal(net_a: ReactionNetwork, kappa_a: RateVector,
                     net_b: ReactionNetwork, kappa_b: RateVector) -> bool:
    """Exact comparison of drift and diffusion coefficients per source complex."""
    gc_a = generator_coefficients(net_a, kappa_a)
    gc_b = generator_coefficients(_aligned_pair(net_a, net_b), kappa_b)
    return all(gc_a.block(y) == gc_b.block(y) for y in set(gc_a.blocks) | set(gc_b.blocks))


def drifts_equal(net_a: ReactionNetwork, kappa_a: RateVector,
                 net_b: ReactionNetwork, kappa_b: RateVector) -> bool:
    """Exact comparison of the mass-action ODE right-hand sides (drift coefficients only)."""
    gc_a = generator_coefficients(net_a, kappa_a)
    gc_b = generator_coefficients(_aligned_pair(net_a, net_b), kappa_b)
    return all(gc_a.block(y).drift == gc_b.block(y).drift for y in set(gc_a.blocks) | set(gc_b.blocks))


def _state(x: Sequence, n: int) -> np.ndarray:
    if len(x) != n:
        raise NetworkError(f"State has {len(x)} coordinates, network has {n} species")
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    state = np.array([Fraction(v) for v in x], dtype=object) if exact else np.asarray(x, dtype=float)
    if any(v <= 0 for v in state):
        raise NetworkError(f"State must be strictly positive, got {list(x)}")
    return state


def _monomial(x: np.ndarray, exponents: Sequence[int]):
    value = Fraction(1) if x.dtype == object else 1.0
    for xi, e in zip(x, exponents):
        if e:
            value = value * xi ** e
    return value


def ode_rhs(net: ReactionNetwork, kappa: RateVector, x: Sequence) -> np.ndarray:
    """sum_r kappa_r x^{y_r} (y_r' - y_r); exact (object array of Fraction) when x is rational."""
    net.check_rates(kappa)
    state = _state(x, net.n_species)
    zero = Fraction(0) if state.dtype == object else 0.0
    rhs = np.array([zero] * net.n_species, dtype=state.dtype)

    for reaction, rate in zip(net.reactions, kappa):
        flux = (rate if state.dtype == object else float(rate)) * _monomial(state, reaction.source.coefficients)
        rhs = rhs + np.array([flux * v for v in reaction.vector], dtype=state.dtype)

    return rhs


def eval_drift(gc: GeneratorCoefficients, x: Sequence) -> np.ndarray:
    state = _state(x, gc.n_species)
    exact = state.dtype == object
    zero = Fraction(0) if exact else 0.0
    drift = np.array([zero] * gc.n_species, dtype=state.dtype)

    for source in gc.sources():
        weight = _monomial(state, source.coefficients)
        coefficients = gc.blocks[source].drift
        drift = drift + np.array([weight * (c if exact else float(c)) for c in coefficients], dtype=state.dtype)

    return drift


def eval_diffusion(gc: GeneratorCoefficients, x: Sequence) -> np.ndarray:
    state = _state(x, gc.n_species)
    exact = state.dtype == object
    n = gc.n_species
    zero = Fraction(0) if exact else 0.0
    diffusion = np.array([[zero] * n for _ in range(n)], dtype=state.dtype).reshape(n, n)

    for source in gc.sources():
        weight = _monomial(state, source.coefficients)
        matrix = gc.blocks[source].diffusion_matrix(n)
        diffusion = diffusion + np.array([[weight * (c if exact else float(c)) for c in row] for row in matrix],
                                         dtype=state.dtype).reshape(n, n)

    return diffusion


def _variables(species: Sequence[str]) -> List[sympy.Symbol]:
    lowered = [s.lower() for s in species]
    names = lowered if len(set(lowered)) == len(lowered) else list(species)
    return [sympy.Symbol(name) for name in names]


def polynomial(terms: Sequence[Tuple[Fraction, Complex]], variables: Sequence[sympy.Symbol]) -> sympy.Expr:
    """sum of c * x^y over (c, y) as an exact sympy expression."""
    return sympy.Add(*(
        sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        * sympy.Mul(*(v ** e for v, e in zip(variables, source.coefficients)))
        for c, source in terms
    ))


def format_polynomials(gc: GeneratorCoefficients) -> List[str]:
    """Human-readable A(x) and B(x); one species prints as 'A(s) = 12 - s', 'B(s) = s + 26'."""
    n = gc.n_species
    variables = _variables(gc.species)
    arguments = ', '.join(str(v) for v in variables)
    sources = gc.sources()
    lines = []

    for i in range(n):
        expr = polynomial([(gc.blocks[y].drift[i], y) for y in sources], variables)
        label = 'A' if n == 1 else f"A[{gc.species[i]}]"
        lines.append(f"{label}({arguments}) = {sympy.sstr(expr)}")

    position = 0
    for i in range(n):
        for j in range(i, n):
            expr = polynomial([(gc.blocks[y].diffusion[position], y) for y in sources], variables)
            label = 'B' if n == 1 else f"B[{gc.species[i]},{gc.species[j]}]"
            lines.append(f"{label}({arguments}) = {sympy.sstr(expr)}")
            position += 1

    return lines
