"""
Linear conjugacy search.

N and N' are linearly conjugated w.r.t. their Langevin equations when, for some species
permutation P and positive diagonal D (G = DP), every source complex y of N satisfies

    sum_{y->y' in N}  kappa (v, v v^T)  =  sum_{y->y' in PN'} beta (D w, D w w^T D),

with v, w the reaction vectors. The conjugated rates of N' are then kappa'_{y->y'} = beta * c^y.
The system is polynomial in (kappa, beta, c); it is searched numerically by multi-start least
squares in log coordinates, and every accepted point is rationalised and re-verified exactly.
A failed search is reported as `unknown`, never as impossible.

Under ODE semantics only the drift rows are compared. A source complex then may be missing from
one side, provided the other side can balance its drift to zero with positive rates.
"""
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple, Union

import numpy as np
from scipy.optimize import least_squares

from consts import defaults
from helpers.errors import NetworkError
from helpers.log import logs
from linalg import solve_cone_feasibility
from models import Complex, ReactionNetwork, upper_triangle
from .semantics import ModelSemantics

Number = Union[Fraction, float]


class ConjugacyStatus(Enum):
    CONJUGATE = 'conjugate'
    IMPOSSIBLE = 'structurally-impossible'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class ConjugacyOptions:
    tol: float = defaults.CONJUGACY_TOL
    starts: int = defaults.CONJUGACY_STARTS
    max_perms: Optional[int] = None
    seed: int = defaults.SEED
    max_denominator: int = defaults.MAX_DENOMINATOR
    threads: int = defaults.THREADS


@dataclass(frozen=True)
class ConjugacyWitness:
    permutation: Tuple[int, ...]
    scaling: Tuple[Number, ...]
    kappa: Tuple[Number, ...]
    beta: Tuple[Number, ...]
    kappa_prime: Tuple[Number, ...]
    residual: float
    exact: bool
    raw_scaling: Tuple[float, ...] = ()


@dataclass(frozen=True)
class ConjugacyVerdict:
    status: ConjugacyStatus
    witness: Optional[ConjugacyWitness] = None
    permutations_tried: int = 0
    admissible: Tuple[Tuple[int, ...], ...] = field(default_factory=tuple)
    model: ModelSemantics = ModelSemantics.SDE


def _check_permutation(permutation: Sequence[int], n: int):
    if sorted(permutation) != list(range(n)):
        raise NetworkError(f"{list(permutation)} is not a permutation of {n} species")


def conjugated_rates(net_b: ReactionNetwork, beta: Sequence[Number], scaling: Sequence[Number],
                     permutation: Sequence[int]) -> Tuple[Number, ...]:
    """kappa'_{y->y'} = beta_{y->y'} * prod_j c_j^{y_j}, y taken in the coordinates of the first network."""
    rates = []
    for reaction, b in zip(net_b.reactions, beta):
        factor = b
        for j, e in enumerate(reaction.source.permuted(permutation).coefficients):
            if e:
                factor = factor * scaling[j] ** e
        rates.append(factor)
    return tuple(rates)


def verify_conjugacy_witness(net_a: ReactionNetwork, kappa: Sequence[Number], net_b: ReactionNetwork,
                             beta: Sequence[Number], scaling: Sequence[Number],
                             permutation: Sequence[int], sem: ModelSemantics = ModelSemantics.SDE) -> bool:
    """Exact check of the per-source drift (and, for SDEs, diffusion) equalities under G = D P."""
    sem = ModelSemantics.parse(sem)
    n = net_a.n_species
    if net_b.n_species != n:
        raise NetworkError(f"Species counts differ: {n} vs {net_b.n_species}")
    if len(kappa) != net_a.n_reactions or len(beta) != net_b.n_reactions or len(scaling) != n:
        raise NetworkError("Witness dimensions do not match the networks")
    _check_permutation(permutation, n)

    kappa = [Fraction(k) for k in kappa]
    beta = [Fraction(b) for b in beta]
    scaling = [Fraction(c) for c in scaling]
    if any(v <= 0 for v in kappa + beta + scaling):
        return False

    relabelled = net_b.permuted(permutation, net_a.species_names)
    sources = set(net_a.source_complexes()) | set(relabelled.source_complexes())
    height = sem.column_height(n)

    def column(v):
        return v if sem is ModelSemantics.ODE else v + upper_triangle(v)

    for source in sources:
        lhs = [Fraction(0)] * height
        for r in net_a.reactions_from(source):
            lhs = [a + kappa[r] * e for a, e in zip(lhs, column(net_a.reactions[r].vector))]
        rhs = [Fraction(0)] * height
        for s in relabelled.reactions_from(source):
            w = tuple(c * x for c, x in zip(scaling, relabelled.reactions[s].vector))
            rhs = [a + beta[s] * e for a, e in zip(rhs, column(w))]
        if lhs != rhs:
            return False

    return True


class _ConjugacySystem:
    """Residual of the conjugacy equations in log coordinates for one fixed permutation."""

    def __init__(self, net_a: ReactionNetwork, relabelled: ReactionNetwork,
                 sem: ModelSemantics = ModelSemantics.SDE):
        self.n = net_a.n_species
        self.sem = ModelSemantics.parse(sem)
        sources_a = list(net_a.source_complexes())
        sources = sources_a + sorted(set(relabelled.source_complexes()) - set(sources_a))
        position = {y: i for i, y in enumerate(sources)}
        self.k = len(sources)

        self.d_a = net_a.n_reactions
        self.d_b = relabelled.n_reactions
        self.vectors_a = np.array([self.sem.reaction_column(net_a, r) for r in range(self.d_a)],
                                  dtype=float).reshape(self.d_a, -1)
        self.source_a = np.array([position[r.source] for r in net_a.reactions], dtype=int)
        self.vectors_b = np.array([r.vector for r in relabelled.reactions], dtype=float).reshape(self.d_b, self.n)
        self.source_b = np.array([position[r.source] for r in relabelled.reactions], dtype=int)
        self.upper = np.triu_indices(self.n)

        # one rate per source block of the first network is pinned to 1 (each block is scale invariant)
        pinned = {net_a.reactions_from(y)[0] for y in sources_a}
        self.free_a = np.array([r for r in range(self.d_a) if r not in pinned], dtype=int)
        self.size = len(self.free_a) + self.d_b + self.n

    def unpack(self, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        kappa = np.ones(self.d_a)
        kappa[self.free_a] = np.exp(theta[:len(self.free_a)])
        beta = np.exp(theta[len(self.free_a):len(self.free_a) + self.d_b])
        scaling = np.exp(theta[len(self.free_a) + self.d_b:])
        return kappa, beta, scaling

    def sides(self, kappa: np.ndarray, beta: np.ndarray, scaling: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        height = self.vectors_a.shape[1]
        lhs = np.zeros((self.k, height))
        np.add.at(lhs, self.source_a, kappa[:, np.newaxis] * self.vectors_a)

        extended = self.vectors_b * scaling[np.newaxis, :]
        if self.sem is ModelSemantics.SDE:
            extended = np.hstack([extended, extended[:, self.upper[0]] * extended[:, self.upper[1]]])
        rhs = np.zeros((self.k, height))
        np.add.at(rhs, self.source_b, beta[:, np.newaxis] * extended)
        return lhs, rhs

    def residual(self, theta: np.ndarray) -> np.ndarray:
        lhs, rhs = self.sides(*self.unpack(theta))
        return (lhs - rhs).ravel()

    def relative_residual(self, theta: np.ndarray) -> float:
        lhs, rhs = self.sides(*self.unpack(theta))
        return float(np.linalg.norm(lhs - rhs) / max(1.0, np.linalg.norm(lhs)))


def _rationalise(values: np.ndarray, max_denominator: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(float(v)).limit_denominator(max_denominator) for v in values)


def _search(net_a: ReactionNetwork, net_b: ReactionNetwork, permutation: Tuple[int, ...], number: int,
            options: ConjugacyOptions, sem: ModelSemantics) -> Optional[ConjugacyWitness]:
    relabelled = net_b.permuted(permutation, net_a.species_names)
    system = _ConjugacySystem(net_a, relabelled, sem)
    rng = np.random.default_rng([options.seed, number])
    bound = defaults.CONJUGACY_LOG_BOUND

    best = None
    for start in range(options.starts):
        theta0 = np.zeros(system.size) if start == 0 else rng.uniform(-2.0, 2.0, system.size)
        solution = least_squares(system.residual, theta0, bounds=(-bound, bound), method='trf',
                                 xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200 * (system.size + 1))
        residual = system.relative_residual(solution.x)
        logs.debug(f"Permutation {permutation}, start {start}: relative residual {residual:.3e}")
        if best is None or residual < best[0]:
            best = (residual, solution.x)
        if residual < options.tol:
            break

    residual, theta = best
    if residual >= options.tol:
        return None

    kappa, beta, scaling = system.unpack(theta)
    exact_kappa = _rationalise(kappa, options.max_denominator)
    exact_beta = _rationalise(beta, options.max_denominator)
    exact_scaling = _rationalise(scaling, options.max_denominator)

    if verify_conjugacy_witness(net_a, exact_kappa, net_b, exact_beta, exact_scaling, permutation, sem):
        return ConjugacyWitness(
            permutation=permutation,
            scaling=exact_scaling,
            kappa=exact_kappa,
            beta=exact_beta,
            kappa_prime=conjugated_rates(net_b, exact_beta, exact_scaling, permutation),
            residual=0.0,
            exact=True,
            raw_scaling=tuple(float(c) for c in scaling),
        )

    logs.warning(f"Witness for permutation {permutation} did not survive rationalisation; "
                 f"reporting floats (relative residual {residual:.3e})")
    floats = tuple(float(c) for c in scaling)
    return ConjugacyWitness(
        permutation=permutation,
        scaling=floats,
        kappa=tuple(float(k) for k in kappa),
        beta=tuple(float(b) for b in beta),
        kappa_prime=conjugated_rates(net_b, tuple(float(b) for b in beta), floats, permutation),
        residual=residual,
        exact=False,
        raw_scaling=floats,
    )


def _base_alignment(net_a: ReactionNetwork, net_b: ReactionNetwork) -> List[int]:
    """Index in net_a of each species of net_b: by name when the name sets agree, else by position."""
    if set(net_a.species_names) == set(net_b.species_names):
        position = {name: i for i, name in enumerate(net_a.species_names)}
        return [position[name] for name in net_b.species_names]
    logs.debug("Species names differ; aligning the second network by position")
    return list(range(net_b.n_species))


def _balances_to_zero(net: ReactionNetwork, source: Complex) -> bool:
    matrix, _ = ModelSemantics.ODE.source_matrix(net, source)
    return solve_cone_feasibility(matrix).feasible


def _admissible(net_a: ReactionNetwork, sources_a: Set[Complex], relabelled: ReactionNetwork,
                sem: ModelSemantics) -> bool:
    sources_b = set(relabelled.source_complexes())
    if sem is ModelSemantics.SDE:
        return sources_b == sources_a
    return (all(_balances_to_zero(net_a, y) for y in sources_a - sources_b)
            and all(_balances_to_zero(relabelled, y) for y in sources_b - sources_a))


def check_linear_conjugacy(net_a: ReactionNetwork, net_b: ReactionNetwork,
                           options: Optional[ConjugacyOptions] = None,
                           sem: ModelSemantics = ModelSemantics.SDE) -> ConjugacyVerdict:
    options = options or ConjugacyOptions()
    sem = ModelSemantics.parse(sem)
    n = net_a.n_species
    if net_b.n_species != n:
        raise NetworkError(f"Species counts differ: {n} vs {net_b.n_species}")
    if (set(net_a.species_names) == set(net_b.species_names)
            and set(net_a.reactions) == set(net_b.align_to(net_a.species_names).reactions)):
        raise NetworkError("Conjugacy compares two different networks, got the same reaction set twice")

    base = _base_alignment(net_a, net_b)
    if n > defaults.CONJUGACY_MAX_SPECIES:
        logs.warning(f"{n} species: only the identity alignment is searched")
        candidates = iter([tuple(range(n))])
        complete = False
    else:
        candidates = itertools.permutations(range(n))
        complete = True

    if options.max_perms is not None:
        total = math.factorial(n) if complete else 1
        complete = complete and options.max_perms >= total
        candidates = itertools.islice(candidates, options.max_perms)

    sources_a = set(net_a.source_complexes())
    tried = 0
    admissible = []
    for p in candidates:
        tried += 1
        permutation = tuple(p[base[j]] for j in range(n))
        if _admissible(net_a, sources_a, net_b.permuted(permutation, net_a.species_names), sem):
            admissible.append(permutation)

    logs.debug(f"[{sem.value}] {len(admissible)} of {tried} permutations match the source complexes")
    if not admissible:
        status = ConjugacyStatus.IMPOSSIBLE if complete else ConjugacyStatus.UNKNOWN
        return ConjugacyVerdict(status, permutations_tried=tried, model=sem)

    def attempt(item):
        number, permutation = item
        return _search(net_a, net_b, permutation, number, options, sem)

    witness = None
    if options.threads > 1:
        with ThreadPoolExecutor(max_workers=options.threads) as executor:
            results = list(executor.map(attempt, enumerate(admissible)))
        witness = next((w for w in results if w is not None), None)
    else:
        for item in enumerate(admissible):
            witness = attempt(item)
            if witness is not None:
                break

    if witness is None:
        return ConjugacyVerdict(ConjugacyStatus.UNKNOWN, permutations_tried=tried, admissible=tuple(admissible),
                                model=sem)

    if witness.exact and not verify_conjugacy_witness(net_a, witness.kappa, net_b, witness.beta, witness.scaling,
                                                      witness.permutation, sem):
        raise NetworkError("Exact conjugacy witness failed re-verification")

    return ConjugacyVerdict(ConjugacyStatus.CONJUGATE, witness, tried, tuple(admissible), sem)
