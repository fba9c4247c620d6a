"""Exact-pivot simplex for packing LPs: max sum(x) s.t. A x <= 1, x >= 0.

All arithmetic is over fractions.Fraction; Bland's rule guarantees
termination on degenerate instances.  The dual vector is read off the
optimal tableau from the slack columns, so the returned (x, y) pair
satisfies strong duality exactly.

PackingSimplex supports adding columns to an already solved program: the
old basis stays primal-feasible, so re-optimizing after a column arrives
takes only a handful of pivots.  This is the workhorse of the column
generation loop.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class PackingSimplex:
    """Incremental tableau for max sum(x) s.t. A x <= 1, x >= 0.

    Column layout: the ``n_rows`` slack columns come first, structural
    columns follow in insertion order, and the rightmost entry of each row
    is the constraint value.  The slack block of the tableau is the basis
    inverse, which is what lets new raw columns be reduced on arrival.
    """

    def __init__(self, n_rows: int):
        self.n_rows = n_rows
        self.n_cols = 0
        self.rows = [
            [ONE if k == i else ZERO for k in range(n_rows)] + [ONE]
            for i in range(n_rows)
        ]
        # Reduced costs per column plus the negated objective value.
        self.cost = [ZERO] * (n_rows + 1)
        self.basis = list(range(n_rows))

    def add_column(self, column: dict[int, int]) -> None:
        """Append a structural column with objective coefficient 1.

        ``column`` maps row index -> nonnegative coefficient.
        """
        for i in range(self.n_rows):
            row = self.rows[i]
            val = sum((row[k] * c for k, c in column.items() if c), ZERO)
            row.insert(len(row) - 1, val)
        # Reduced cost 1 - y . a, with y_k = -cost[slack_k].
        reduced = ONE + sum(
            (self.cost[k] * c for k, c in column.items() if c), ZERO
        )
        self.cost.insert(len(self.cost) - 1, reduced)
        self.n_cols += 1

    def solve(self) -> None:
        """Pivot to optimality (Bland's rule on the current column order)."""
        rows, cost, basis = self.rows, self.cost, self.basis
        width = self.n_rows + self.n_cols
        while True:
            enter = next((j for j in range(width) if cost[j] > 0), None)
            if enter is None:
                return
            # Bland: leaving variable of smallest index among tied min ratios.
            leave_row = None
            best_ratio = None
            for i in range(self.n_rows):
                a = rows[i][enter]
                if a > 0:
                    ratio = rows[i][-1] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leave_row])
                    ):
                        best_ratio = ratio
                        leave_row = i
            if leave_row is None:
                raise ArithmeticError("packing LP unbounded; column has no support")
            self._pivot(leave_row, enter)
            basis[leave_row] = enter

    def solution(self):
        """(value, x per structural column, y per row), all exact."""
        x = [ZERO] * self.n_cols
        for i, var in enumerate(self.basis):
            if var >= self.n_rows:
                x[var - self.n_rows] = self.rows[i][-1]
        y = [-self.cost[i] for i in range(self.n_rows)]
        return -self.cost[-1], x, y

    def _pivot(self, pr: int, pc: int) -> None:
        rows, cost = self.rows, self.cost
        piv = rows[pr][pc]
        pivot_row = [v / piv for v in rows[pr]]
        rows[pr] = pivot_row
        support = [j for j, v in enumerate(pivot_row) if v]
        for i in range(self.n_rows):
            if i == pr:
                continue
            f = rows[i][pc]
            if f:
                row = rows[i]
                for j in support:
                    row[j] -= f * pivot_row[j]
        f = cost[pc]
        if f:
            for j in support:
                cost[j] -= f * pivot_row[j]


def solve_packing_lp(columns: list[dict[int, int]], n_rows: int):
    """One-shot convenience wrapper around PackingSimplex.

    Returns (value, x, y) with x a list of Fractions per column and y a
    list of Fractions per row; both exact optima of the primal/dual pair.
    """
    lp = PackingSimplex(n_rows)
    for column in columns:
        lp.add_column(column)
    lp.solve()
    return lp.solution()
