from .semantics import ModelSemantics
from .identifiability import IdentifiabilityVerdict, check_identifiability, witness_from_dependence
from .confoundability import (
    ConfoundabilityVerdict,
    ConfoundingCertificate,
    SourceInfeasibility,
    check_confoundability,
)
from .conjugacy import (
    ConjugacyOptions,
    ConjugacyStatus,
    ConjugacyVerdict,
    ConjugacyWitness,
    check_linear_conjugacy,
    conjugated_rates,
    verify_conjugacy_witness,
)
from .classes import NetworkClasses, classify_network, k_unary_signature
