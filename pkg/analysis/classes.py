from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from models import ReactionNetwork


@dataclass(frozen=True)
class NetworkClasses:
    """Structural classes with a known identifiability answer. None means the class says nothing."""

    k_unary: Optional[Tuple[int, ...]]
    single_species: bool
    distinct_sources: bool
    max_reactions_per_source: int

    @property
    def ode_identifiable(self) -> Optional[bool]:
        if self.k_unary is not None or self.distinct_sources:
            return True
        return None

    @property
    def sde_identifiable(self) -> Optional[bool]:
        if self.ode_identifiable:
            return True
        if self.single_species:
            return self.max_reactions_per_source <= 2
        return None


def k_unary_signature(net: ReactionNetwork) -> Optional[Tuple[int, ...]]:
    """
    The vector k when every complex is empty or k_i S_i for a single species i with a fixed k_i
    (reactions k_i S_i -> k_j S_j, k_i S_i -> 0, 0 -> k_i S_i), else None.
    Species that never occur get k_i = 1.
    """
    k: Dict[int, int] = {}
    for complex_ in net.complexes:
        support = [(i, c) for i, c in enumerate(complex_.coefficients) if c]
        if len(support) > 1:
            return None
        if support:
            i, c = support[0]
            if k.setdefault(i, c) != c:
                return None
    return tuple(k.get(i, 1) for i in range(net.n_species))


def classify_network(net: ReactionNetwork) -> NetworkClasses:
    grouped = net.reactions_by_source()
    return NetworkClasses(
        k_unary=k_unary_signature(net),
        single_species=net.n_species == 1,
        distinct_sources=all(len(indices) == 1 for indices in grouped.values()),
        max_reactions_per_source=max((len(indices) for indices in grouped.values()), default=0),
    )
