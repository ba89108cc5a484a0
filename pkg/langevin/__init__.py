from .generator import (
    GeneratorBlock,
    GeneratorCoefficients,
    drifts_equal,
    eval_diffusion,
    eval_drift,
    format_polynomials,
    generator_coefficients,
    generators_equal,
    ode_rhs,
    polynomial,
)
from .simulate import (
    BoxDomain,
    EnsembleSummary,
    SimulationPath,
    derive_seed,
    monte_carlo,
    psd_sqrt,
    simulate_em,
)
