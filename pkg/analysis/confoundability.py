from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from helpers.errors import NetworkError, WitnessError
from helpers.log import logs
from linalg import RationalMatrix, solve_cone_feasibility
from models import Complex, RateVector, ReactionNetwork
from .semantics import ModelSemantics


@dataclass(frozen=True)
class SourceInfeasibility:
    source: Complex
    farkas: Tuple[Fraction, ...]


@dataclass(frozen=True)
class ConfoundingCertificate:
    """Why no positive rates make the two networks indistinguishable."""

    source_mismatch: Tuple[Complex, ...] = ()
    infeasible_sources: Tuple[SourceInfeasibility, ...] = ()

    @property
    def failed_sources(self) -> Tuple[Complex, ...]:
        return tuple(sorted(set(self.source_mismatch) | {f.source for f in self.infeasible_sources}))


@dataclass(frozen=True)
class ConfoundabilityVerdict:
    confoundable: bool
    semantics: ModelSemantics
    witness: Optional[Tuple[RateVector, RateVector]] = None
    certificate: Optional[ConfoundingCertificate] = None
    per_source: Dict[Complex, bool] = field(default_factory=dict)

    def __post_init__(self):
        if self.confoundable and self.witness is None:
            raise WitnessError("A confoundable verdict needs a witness")
        if not self.confoundable and self.certificate is None:
            raise WitnessError("An unconfoundable verdict needs a certificate")


def _cone_system(sem: ModelSemantics, net_a: ReactionNetwork, net_b: ReactionNetwork,
                 source: Complex) -> Tuple[RationalMatrix, List[int], List[int]]:
    """Columns: vectors of net_a out of source, then negated vectors of net_b out of source."""
    indices_a = net_a.reactions_from(source)
    indices_b = net_b.reactions_from(source)
    columns = [sem.reaction_column(net_a, r) for r in indices_a]
    columns += [tuple(-v for v in sem.reaction_column(net_b, r)) for r in indices_b]
    return RationalMatrix.from_columns(columns, sem.column_height(net_a.n_species)), indices_a, indices_b


def check_confoundability(net_a: ReactionNetwork, net_b: ReactionNetwork,
                          sem: ModelSemantics) -> ConfoundabilityVerdict:
    sem = ModelSemantics.parse(sem)
    aligned_b = net_b.align_to(net_a.species_names)
    if set(net_a.reactions) == set(aligned_b.reactions):
        raise NetworkError("Confoundability compares two different networks, got the same reaction set twice")

    sources_a = set(net_a.source_complexes())
    sources_b = set(aligned_b.source_complexes())
    mismatch = tuple(sorted(sources_a ^ sources_b))

    if sem is ModelSemantics.SDE and mismatch:
        # every source contributes a positive diagonal to the diffusion, so it cannot be matched by nothing
        logs.debug(f"[sde] source sets differ at {[y.coefficients for y in mismatch]}")
        return ConfoundabilityVerdict(False, sem, certificate=ConfoundingCertificate(source_mismatch=mismatch))

    rates_a: List[Optional[Fraction]] = [None] * net_a.n_reactions
    rates_b: List[Optional[Fraction]] = [None] * net_b.n_reactions
    infeasible: List[SourceInfeasibility] = []
    per_source: Dict[Complex, bool] = {}

    for source in sorted(sources_a | sources_b):
        system, indices_a, indices_b = _cone_system(sem, net_a, aligned_b, source)
        result = solve_cone_feasibility(system)
        per_source[source] = result.feasible
        logs.debug(f"[{sem.value}] source {source.coefficients}: "
                   f"{'feasible' if result.feasible else 'infeasible'} ({result.pivots} pivots)")

        if not result.feasible:
            infeasible.append(SourceInfeasibility(source, result.farkas))
            continue

        point = result.witness.point
        for position, r in enumerate(indices_a):
            rates_a[r] = point[position]
        for position, r in enumerate(indices_b):
            rates_b[r] = point[len(indices_a) + position]

    if infeasible:
        return ConfoundabilityVerdict(False, sem, certificate=ConfoundingCertificate(infeasible_sources=tuple(infeasible)),
                                      per_source=per_source)

    witness = (RateVector(tuple(rates_a)), RateVector(tuple(rates_b)))
    if not sem.same_dynamics(net_a, witness[0], net_b, witness[1]):
        raise WitnessError(f"Confounding witness does not reproduce the same {sem.value.upper()} dynamics")

    return ConfoundabilityVerdict(True, sem, witness=witness, per_source=per_source)
