"""
Exact two-phase simplex over the rationals.

Variables are nonnegative. Rows are `<=`, `>=` or `==`. Pivoting follows
Bland's rule, so the method terminates on degenerate programs.
"""

from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Union

from balancedgames.types.errors import InvalidInputError

Coefficients = Union[Sequence, Dict[int, object]]

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'

SENSES = ('<=', '>=', '==')


class LPResult(NamedTuple):
    status: str
    x: Optional[List[Fraction]] = None
    objective: Optional[Fraction] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL

    @property
    def is_feasible(self) -> bool:
        return self.status != INFEASIBLE


class LinearProgram:
    """
    min (or max) c.x  subject to  A x (<=|>=|==) b,  x >= 0

    >>> lp = LinearProgram(2, objective = [1, 1])
    >>> lp.add_constraint([1, 2], '>=', 2)
    >>> lp.solve().objective
    Fraction(1, 1)
    """

    def __init__(
        self,
        num_vars: int,
        objective: Optional[Coefficients] = None,
        maximize: bool = False,
    ):
        self.num_vars = num_vars
        self.maximize = maximize
        self.objective = self._dense(objective) if objective is not None else [Fraction(0)] * num_vars
        self.rows: List[List[Fraction]] = []
        self.senses: List[str] = []
        self.rhs: List[Fraction] = []

    def _dense(self, coeffs: Coefficients) -> List[Fraction]:
        if isinstance(coeffs, dict):
            dense = [Fraction(0)] * self.num_vars
            for j, value in coeffs.items():
                dense[j] = Fraction(value)
            return dense
        if len(coeffs) != self.num_vars:
            raise InvalidInputError(f"Expected {self.num_vars} coefficients, got {len(coeffs)}")
        return [Fraction(x) for x in coeffs]

    def add_constraint(self, coeffs: Coefficients, sense: str, rhs) -> None:
        if sense not in SENSES:
            raise InvalidInputError(f"Invalid constraint sense: {sense}")
        self.rows.append(self._dense(coeffs))
        self.senses.append(sense)
        self.rhs.append(Fraction(rhs))

    def solve(self) -> LPResult:
        return _Tableau(self).run()


class _Tableau:

    def __init__(self, program: LinearProgram):
        self.program = program
        nv = program.num_vars
        rows, senses, rhs = [], [], []
        for row, sense, b in zip(program.rows, program.senses, program.rhs):
            if b < 0:
                row = [-x for x in row]
                b = -b
                sense = {'<=': '>=', '>=': '<=', '==': '=='}[sense]
            rows.append(row)
            senses.append(sense)
            rhs.append(b)

        num_slack = sum(1 for s in senses if s != '==')
        num_art = sum(1 for s in senses if s != '<=')
        self.ncols = nv + num_slack + num_art
        self.art_start = nv + num_slack
        self.table: List[List[Fraction]] = []
        self.basis: List[int] = []
        zero = Fraction(0)
        slack_col, art_col = nv, self.art_start
        for row, sense, b in zip(rows, senses, rhs):
            line = row + [zero] * (self.ncols - nv) + [b]
            if sense == '<=':
                line[slack_col] = Fraction(1)
                self.basis.append(slack_col)
                slack_col += 1
            else:
                if sense == '>=':
                    line[slack_col] = Fraction(-1)
                    slack_col += 1
                line[art_col] = Fraction(1)
                self.basis.append(art_col)
                art_col += 1
            self.table.append(line)

    def _reduced_costs(self, costs: List[Fraction]) -> List[Fraction]:
        reduced = list(costs) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = costs[b]
            if cb == 0: continue
            row = self.table[i]
            reduced = [r - cb * a for r, a in zip(reduced, row)]
        return reduced

    def _pivot(self, r: int, c: int, z: List[Fraction]) -> List[Fraction]:
        row = self.table[r]
        lead = row[c]
        if lead != 1:
            row = [x / lead for x in row]
            self.table[r] = row
        for i, other in enumerate(self.table):
            if i != r and other[c] != 0:
                factor = other[c]
                self.table[i] = [a - factor * b for a, b in zip(other, row)]
        if z[c] != 0:
            factor = z[c]
            z = [a - factor * b for a, b in zip(z, row)]
        self.basis[r] = c
        return z

    def _iterate(self, z: List[Fraction], allowed: int) -> Optional[List[Fraction]]:
        """
        Runs Bland pivots over columns < allowed; returns None when unbounded.
        """
        while True:
            entering = next((j for j in range(allowed) if z[j] < 0), None)
            if entering is None: return z
            leaving, best = None, None
            for i, row in enumerate(self.table):
                a = row[entering]
                if a <= 0: continue
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leaving]):
                    leaving, best = i, ratio
            if leaving is None: return None
            z = self._pivot(leaving, entering, z)

    def run(self) -> LPResult:
        program = self.program
        if self.art_start < self.ncols:
            phase_one = [Fraction(0)] * self.art_start + [Fraction(1)] * (self.ncols - self.art_start)
            z = self._iterate(self._reduced_costs(phase_one), self.ncols)
            if -z[-1] > 0:
                return LPResult(INFEASIBLE)
            self._drive_out_artificials()

        costs = [-c for c in program.objective] if program.maximize else list(program.objective)
        costs += [Fraction(0)] * (self.ncols - program.num_vars)
        z = self._iterate(self._reduced_costs(costs), self.art_start)
        if z is None:
            return LPResult(UNBOUNDED)
        x = [Fraction(0)] * program.num_vars
        for i, b in enumerate(self.basis):
            if b < program.num_vars:
                x[b] = self.table[i][-1]
        value = sum((c * xi for c, xi in zip(program.objective, x)), Fraction(0))
        return LPResult(OPTIMAL, x, value)

    def _drive_out_artificials(self) -> None:
        r = 0
        while r < len(self.table):
            if self.basis[r] < self.art_start:
                r += 1
                continue
            row = self.table[r]
            col = next((j for j in range(self.art_start) if row[j] != 0), None)
            if col is None:
                # redundant equality
                del self.table[r]
                del self.basis[r]
                continue
            self._pivot(r, col, [Fraction(0)] * (self.ncols + 1))
            r += 1
