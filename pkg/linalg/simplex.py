"""
Exact feasibility of  z > 0, Mz = 0.

The solution set of Mz = 0 is a cone: if z > 0 solves it, so does t*z for every t > 0, and
choosing t = 1 / min(z) gives a solution with every coordinate >= 1. Conversely z >= 1 is
strictly positive. Hence  {z > 0, Mz = 0} is non-empty  iff  {z >= 1, Mz = 0} is non-empty,
and the closed system is what a phase-1 simplex can decide. Substituting z = 1 + s gives
s >= 0, Ms = -M1.

Arithmetic is over Fraction and pivoting follows Bland's rule, so the method terminates and
the verdict is exact.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from helpers.errors import WitnessError
from helpers.log import logs
from .matrix import RationalMatrix, Vector


@dataclass(frozen=True)
class FeasibilityWitness:
    point: Vector
    slack_ok: bool


@dataclass(frozen=True)
class ConeFeasibility:
    witness: Optional[FeasibilityWitness]
    farkas: Optional[Vector]
    pivots: int

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def verify_cone_point(M: RationalMatrix, z) -> bool:
    return len(z) == M.cols and all(x >= 1 for x in z) and not any(M.apply(z))


def verify_farkas(M: RationalMatrix, u) -> bool:
    """u^T M >= 0 with a positive total proves that no z > 0 satisfies Mz = 0."""
    if len(u) != M.rows:
        return False
    combination = M.transpose_apply(u)
    return all(x >= 0 for x in combination) and sum(combination, Fraction(0)) > 0


class _Phase1Tableau:
    """Rows [M' | I | b'] with b' >= 0; artificial variable k+i starts basic in row i."""

    def __init__(self, M: RationalMatrix):
        self.m = M.rows
        self.k = M.cols
        self.width = self.k + self.m

        ones = [Fraction(1)] * self.k
        b = [-x for x in M.apply(ones)]
        self.signs = [1 if x >= 0 else -1 for x in b]

        self.rows: List[List[Fraction]] = []
        self.rhs: List[Fraction] = []
        for i in range(self.m):
            sign = self.signs[i]
            row = [sign * e for e in M.row(i)] + [Fraction(int(i == j)) for j in range(self.m)]
            self.rows.append(row)
            self.rhs.append(sign * b[i])

        self.basis = [self.k + i for i in range(self.m)]
        self.costs = [Fraction(0)] * self.k + [Fraction(1)] * self.m
        self.reduced = [self.costs[j] - sum((row[j] for row in self.rows), Fraction(0))
                        for j in range(self.width)]
        self.pivots = 0

    def entering(self) -> Optional[int]:
        return next((j for j in range(self.width) if self.reduced[j] < 0), None)

    def leaving(self, entering: int) -> Optional[int]:
        best = None
        for i in range(self.m):
            a = self.rows[i][entering]
            if a <= 0:
                continue
            ratio = self.rhs[i] / a
            if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                best = (ratio, i)
        return None if best is None else best[1]

    def pivot(self, row: int, col: int):
        lead = self.rows[row][col]
        self.rows[row] = [e / lead for e in self.rows[row]]
        self.rhs[row] /= lead

        for i in range(self.m):
            if i != row and self.rows[i][col] != 0:
                factor = self.rows[i][col]
                self.rows[i] = [a - factor * b for a, b in zip(self.rows[i], self.rows[row])]
                self.rhs[i] -= factor * self.rhs[row]

        factor = self.reduced[col]
        self.reduced = [r - factor * b for r, b in zip(self.reduced, self.rows[row])]
        self.basis[row] = col
        self.pivots += 1

    def solve(self) -> Fraction:
        while True:
            col = self.entering()
            if col is None:
                break
            row = self.leaving(col)
            if row is None:
                # the phase-1 objective is bounded below by 0, so this cannot happen
                raise WitnessError("Unbounded phase-1 problem")
            self.pivot(row, col)

        return sum((self.rhs[i] for i in range(self.m) if self.basis[i] >= self.k), Fraction(0))

    def primal(self) -> Tuple[Fraction, ...]:
        s = [Fraction(0)] * self.k
        for i, var in enumerate(self.basis):
            if var < self.k:
                s[var] = self.rhs[i]
        return tuple(Fraction(1) + x for x in s)

    def farkas(self) -> Tuple[Fraction, ...]:
        # dual of the sign-normalised system is pi_i = 1 - reduced cost of artificial i
        return tuple(-self.signs[i] * (Fraction(1) - self.reduced[self.k + i]) for i in range(self.m))


def solve_cone_feasibility(M: RationalMatrix) -> ConeFeasibility:
    tableau = _Phase1Tableau(M)
    infeasibility = tableau.solve()

    if infeasibility == 0:
        z = tableau.primal()
        if not verify_cone_point(M, z):
            raise WitnessError(f"Phase-1 point {z} does not satisfy Mz = 0, z >= 1")
        logs.debug(f"Cone system {M.rows}x{M.cols} feasible after {tableau.pivots} pivots")
        return ConeFeasibility(FeasibilityWitness(z, slack_ok=all(x >= 1 for x in z)), None, tableau.pivots)

    u = tableau.farkas()
    if not verify_farkas(M, u):
        raise WitnessError(f"Farkas vector {u} does not certify infeasibility")
    logs.debug(f"Cone system {M.rows}x{M.cols} infeasible after {tableau.pivots} pivots")
    return ConeFeasibility(None, u, tableau.pivots)


def lp_feasible_cone(M: RationalMatrix) -> Optional[FeasibilityWitness]:
    return solve_cone_feasibility(M).witness
