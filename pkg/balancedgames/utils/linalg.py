"""
Exact Gaussian elimination over the rationals.

Every routine takes rows as sequences of anything `Fraction` accepts and
never mutates its input.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Vector = List[Fraction]
Matrix = List[Vector]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def reduced_echelon(rows: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """
    Returns the reduced row echelon form (zero rows dropped) and the pivot columns.
    """
    m = to_fractions(rows)
    if not m: return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None: continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m): break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(reduced_echelon(rows)[1])


def nullity(rows: Sequence[Sequence], ncols: int) -> int:
    """
    Dimension of {x : A x = 0} for an A with `ncols` columns.
    """
    if not rows: return ncols
    return ncols - rank(rows)


def affine_rank(points: Sequence[Sequence]) -> int:
    """
    Affine dimension of the hull of `points`; -1 when there are none.
    """
    if not points: return -1
    base = [Fraction(x) for x in points[0]]
    diffs = [[Fraction(x) - b for x, b in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """
    Solves A x = b exactly.

    Returns the unique solution, or None when the system is inconsistent or
    underdetermined. Use `solve_any` when a particular solution suffices.
    """
    solution, unique = _solve(rows, rhs)
    return solution if unique else None


def solve_any(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """
    Returns one solution of A x = b (free variables set to 0), or None.
    """
    return _solve(rows, rhs)[0]


def _solve(rows: Sequence[Sequence], rhs: Sequence) -> Tuple[Optional[Vector], bool]:
    if not rows: return None, False
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = reduced_echelon(augmented)
    if ncols in pivots: return None, False
    x = [Fraction(0)] * ncols
    for row, c in zip(reduced, pivots):
        x[c] = row[-1]
    return x, len(pivots) == ncols


class EchelonBasis:
    """
    Incremental row basis supporting `add` and `pop`.

    Rows are reduced only against earlier rows, so removing the most recent
    row restores the previous state exactly.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: List[Tuple[int, Vector]] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Sequence) -> Vector:
        v = [Fraction(x) for x in vector]
        for c, row in self._rows:
            if v[c] != 0:
                factor = v[c]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def is_independent(self, vector: Sequence) -> bool:
        return any(x != 0 for x in self.reduce(vector))

    def add(self, vector: Sequence) -> bool:
        """
        Adds `vector` when it is independent of the basis; returns whether it was added.
        """
        v = self.reduce(vector)
        c = next((i for i, x in enumerate(v) if x != 0), None)
        if c is None: return False
        lead = v[c]
        self._rows.append((c, [x / lead for x in v]))
        return True

    def pop(self) -> None:
        self._rows.pop()
