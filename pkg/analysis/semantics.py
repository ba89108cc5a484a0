from enum import Enum
from typing import List, Tuple

from linalg import RationalMatrix
from models import Complex, RateVector, ReactionNetwork, extended_reaction_vector
from langevin import drifts_equal, generators_equal


class ModelSemantics(Enum):
    ODE = 'ode'
    SDE = 'sde'

    @classmethod
    def parse(cls, value) -> 'ModelSemantics':
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())

    def reaction_column(self, net: ReactionNetwork, r: int) -> Tuple[int, ...]:
        """Reaction vector for ODEs, extended (drift, diffusion) vector for SDEs."""
        reaction = net.reactions[r]
        if self is ModelSemantics.ODE:
            return reaction.vector
        return extended_reaction_vector(reaction).as_column()

    def column_height(self, n: int) -> int:
        return n if self is ModelSemantics.ODE else n + n * (n + 1) // 2

    def source_matrix(self, net: ReactionNetwork, source: Complex) -> Tuple[RationalMatrix, List[int]]:
        indices = net.reactions_from(source)
        columns = [self.reaction_column(net, r) for r in indices]
        return RationalMatrix.from_columns(columns, self.column_height(net.n_species)), indices

    def same_dynamics(self, net_a: ReactionNetwork, kappa_a: RateVector,
                      net_b: ReactionNetwork, kappa_b: RateVector) -> bool:
        if self is ModelSemantics.ODE:
            return drifts_equal(net_a, kappa_a, net_b, kappa_b)
        return generators_equal(net_a, kappa_a, net_b, kappa_b)
