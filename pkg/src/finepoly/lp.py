"""Exact rational linear programming.

``lp_minimize`` solves ``min c.y  s.t.  A y >= b`` with free variables ``y``.
Problems here have few variables and many constraints, so the solver runs a
two-phase tableau simplex (Bland's rule) on the dual

    max b.u  s.t.  A^T u = c,  u >= 0

whose tableau has only ``len(c)`` rows, and reads the primal optimum off the
final basis.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .arith import dot, solve_linear

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    optimum: Fraction | None = None
    witness: tuple[Fraction, ...] | None = None


class _Tableau:
    """Dense simplex tableau for ``min cost.u  s.t.  A u = b,  u >= 0``."""

    def __init__(self, A: list[list[Fraction]], b: list[Fraction]):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        rows = []
        for i, (row, rhs) in enumerate(zip(A, b)):
            if rhs < 0:
                row, rhs = [-x for x in row], -rhs
            art = [Fraction(int(i == k)) for k in range(self.m)]
            rows.append(list(row) + art + [rhs])
        self.rows = rows
        self.basis = [self.n + i for i in range(self.m)]
        self.allowed = self.n + self.m

    def _reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        width = self.n + self.m
        red = list(cost) + [Fraction(0)] * (width + 1 - len(cost))
        for row, bi in zip(self.rows, self.basis):
            cb = cost[bi] if bi < len(cost) else Fraction(0)
            if cb:
                red = [r - cb * x for r, x in zip(red, row)]
        return red

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        p = prow[c]
        prow = [x / p for x in prow]
        self.rows[r] = prow
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                self.rows[i] = [a - f * b for a, b in zip(row, prow)]
        self.basis[r] = c

    def run(self, cost: list[Fraction]) -> str:
        """Minimize ``cost``; columns at index >= ``self.allowed`` never enter."""
        while True:
            red = self._reduced_costs(cost)
            entering = next((j for j in range(self.allowed) if red[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)

    def value(self, cost: list[Fraction]) -> Fraction:
        return sum((cost[bi] * row[-1] for row, bi in zip(self.rows, self.basis)
                    if bi < len(cost)), Fraction(0))


def _solve_standard(A, b, cost):
    """Two-phase simplex; returns (status, tableau)."""
    tab = _Tableau(A, b)
    phase1 = [Fraction(0)] * tab.n + [Fraction(1)] * tab.m
    tab.run(phase1)
    if tab.value(phase1) > 0:
        return INFEASIBLE, tab
    # drive artificial variables out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= tab.n:
            row = tab.rows[i]
            j = next((j for j in range(tab.n) if row[j] != 0), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1
    tab.allowed = tab.n
    status = tab.run(list(cost))
    return status, tab


def lp_minimize(objective: Sequence, constraints: Sequence[tuple[Sequence, object]]) -> LPResult:
    """Minimize ``objective . y`` subject to ``coeffs . y >= rhs`` for each
    ``(coeffs, rhs)`` in ``constraints``; all variables are free.

    >>> lp_minimize([1], [([1], 1), ([-1], -3)])
    LPResult(status='optimal', optimum=Fraction(1, 1), witness=(Fraction(1, 1),))
    """
    c = [Fraction(x) for x in objective]
    n = len(c)
    rows = [([Fraction(x) for x in a], Fraction(r)) for a, r in constraints]
    m = len(rows)
    if m == 0:
        if any(c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n)))
    A_dual = [[rows[j][0][i] for j in range(m)] for i in range(n)]
    cost = [-r for _, r in rows]
    status, tab = _solve_standard(A_dual, c, cost)
    if status == UNBOUNDED:
        return LPResult(INFEASIBLE)
    if status == INFEASIBLE:
        if not any(c):
            return LPResult(INFEASIBLE)
        feasible = lp_minimize([0] * n, constraints)
        if feasible.status == OPTIMAL:
            return LPResult(UNBOUNDED)
        return LPResult(INFEASIBLE)
    basic = [j for j in tab.basis if j < m]
    y = solve_linear([rows[j][0] for j in basic], [rows[j][1] for j in basic]) if basic else None
    if y is None:
        y = [Fraction(0)] * n
    optimum = dot(c, y)
    # the final dual basis certifies primal feasibility and optimality
    assert all(dot(a, y) >= r for a, r in rows), "dual basis gave an infeasible primal point"
    assert optimum == -tab.value(cost), "primal and dual optima differ"
    return LPResult(OPTIMAL, optimum, tuple(y))


def lp_minimize_generated(objective: Sequence, constraints: Sequence[tuple[Sequence, object]],
                          seed: Sequence[int]) -> LPResult:
    """``lp_minimize`` over ``constraints``, solved by constraint generation.

    Starts from the rows indexed by ``seed`` and adds the most violated rows
    until the relaxed optimum satisfies every row; an optimum of a relaxation
    that is feasible for the full system is optimal for it.  Falls back to a
    full solve if a relaxation is not optimal.
    """
    rows = [([Fraction(x) for x in a], Fraction(r)) for a, r in constraints]
    # integer copies: each row scaled by the lcm of its denominators
    scaled = []
    for a, r in rows:
        L = 1
        for x in a + [r]:
            L = L * x.denominator // gcd(L, x.denominator)
        scaled.append(([int(x * L) for x in a], int(r * L), L))
    active = set(seed)
    step = max(1, 2 * len(objective))
    while True:
        res = lp_minimize(objective, [rows[i] for i in sorted(active)])
        if res.status != OPTIMAL:
            return lp_minimize(objective, rows)
        den = 1
        for x in res.witness:
            den = den * x.denominator // gcd(den, x.denominator)
        Y = [int(x * den) for x in res.witness]
        violated = []
        for i, (a, r, L) in enumerate(scaled):
            if i in active:
                continue
            s = sum(p * q for p, q in zip(a, Y)) - r * den
            if s < 0:
                violated.append((Fraction(s, L), i))
        if not violated:
            return res
        violated.sort()
        active.update(i for _, i in violated[:step])
