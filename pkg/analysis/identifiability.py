from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from consts import defaults
from helpers.errors import WitnessError
from helpers.log import logs
from linalg import nullspace, rank
from models import Complex, RateVector, ReactionNetwork
from .semantics import ModelSemantics


@dataclass(frozen=True)
class IdentifiabilityVerdict:
    identifiable: bool
    semantics: ModelSemantics
    dependent_source: Optional[Complex] = None
    dependent_reactions: Optional[Tuple[int, ...]] = None
    dependence_coefficients: Optional[Tuple[Fraction, ...]] = None
    witness_pair: Optional[Tuple[RateVector, RateVector]] = None

    def __post_init__(self):
        optionals = (self.dependent_source, self.dependent_reactions, self.dependence_coefficients,
                     self.witness_pair)
        if self.identifiable and any(o is not None for o in optionals):
            raise WitnessError("An identifiable verdict carries no dependence data")
        if not self.identifiable and any(o is None for o in optionals):
            raise WitnessError("A non-identifiable verdict needs a dependence and a witness pair")


def witness_from_dependence(net: ReactionNetwork, source: Complex, coeffs: Sequence[Fraction],
                            sem: ModelSemantics) -> Tuple[RateVector, RateVector]:
    """
    Two positive rate vectors with kappa - kappa' = coeffs on the reactions out of `source`
    and kappa = kappa' elsewhere: kappa_r = 1 + max(c_r, 0), kappa'_r = 1 + max(-c_r, 0).
    """
    sem = ModelSemantics.parse(sem)
    indices = net.reactions_from(source)
    coeffs = tuple(Fraction(c) for c in coeffs)

    if len(coeffs) != len(indices):
        raise WitnessError(f"{len(coeffs)} coefficients for {len(indices)} reactions out of {source.coefficients}")
    if not any(coeffs):
        raise WitnessError("Dependence coefficients are all zero")

    matrix, _ = sem.source_matrix(net, source)
    if any(matrix.apply(coeffs)):
        raise WitnessError("Coefficients are not a linear dependence of the reaction vectors")

    base = defaults.WITNESS_BASE_RATE
    kappa = [base] * net.n_reactions
    kappa_prime = [base] * net.n_reactions
    for r, c in zip(indices, coeffs):
        kappa[r] = base + max(c, Fraction(0))
        kappa_prime[r] = base + max(-c, Fraction(0))

    return RateVector(tuple(kappa)), RateVector(tuple(kappa_prime))


def check_identifiability(net: ReactionNetwork, sem: ModelSemantics) -> IdentifiabilityVerdict:
    sem = ModelSemantics.parse(sem)

    for source in net.source_complexes():
        matrix, indices = sem.source_matrix(net, source)
        matrix_rank = rank(matrix)
        logs.debug(f"[{sem.value}] source {source.coefficients}: {len(indices)} reactions, rank {matrix_rank}")
        if matrix_rank == len(indices):
            continue

        coeffs = nullspace(matrix)[0]
        kappa, kappa_prime = witness_from_dependence(net, source, coeffs, sem)
        if not sem.same_dynamics(net, kappa, net, kappa_prime):
            raise WitnessError(f"Witness pair {kappa.rates} / {kappa_prime.rates} does not reproduce "
                               f"the same {sem.value.upper()} dynamics")

        return IdentifiabilityVerdict(
            identifiable=False,
            semantics=sem,
            dependent_source=source,
            dependent_reactions=tuple(indices),
            dependence_coefficients=tuple(coeffs),
            witness_pair=(kappa, kappa_prime),
        )

    return IdentifiabilityVerdict(identifiable=True, semantics=sem)
