from .matrix import RationalMatrix, nullspace, rank, rref
from .simplex import (
    ConeFeasibility,
    FeasibilityWitness,
    lp_feasible_cone,
    solve_cone_feasibility,
    verify_cone_point,
    verify_farkas,
)
