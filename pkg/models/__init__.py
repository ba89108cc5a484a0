from .network import (
    Complex,
    ExtendedReactionVector,
    RateVector,
    Reaction,
    ReactionNetwork,
    Species,
    extended_reaction_vector,
    is_subnetwork,
    pad_rates,
    source_complexes,
    stoichiometric_matrix,
    upper_triangle,
)
