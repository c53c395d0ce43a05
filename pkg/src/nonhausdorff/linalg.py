"""Sparse exact linear algebra over the rationals.

Everything downstream (Betti numbers, exactness checks, induced maps on
cohomology) reduces to ranks, nullspaces and membership in column spans, so
this module implements just those, via fraction-exact Gauss-Jordan
elimination on sparse rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Vec = dict[int, Fraction]


@dataclass(eq=False)
class Mat:
    """Sparse rational matrix; ``rows[r][c]`` holds the nonzero entries."""

    nrows: int
    ncols: int
    rows: list[Vec] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.rows:
            self.rows = [dict() for _ in range(self.nrows)]

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls(nrows, ncols)

    def add_to(self, r: int, c: int, v: Fraction | int) -> None:
        value = self.rows[r].get(c, Fraction(0)) + v
        if value:
            self.rows[r][c] = Fraction(value)
        else:
            self.rows[r].pop(c, None)

    def entry(self, r: int, c: int) -> Fraction:
        return self.rows[r].get(c, Fraction(0))

    def is_zero(self) -> bool:
        return all(not row for row in self.rows)

    def copy_rows(self) -> list[Vec]:
        return [dict(row) for row in self.rows]

    def matmul(self, other: "Mat") -> "Mat":
        """self @ other (self maps other's target onward)."""
        assert self.ncols == other.nrows
        out = Mat.zeros(self.nrows, other.ncols)
        for r in range(self.nrows):
            for k, a in self.rows[r].items():
                for c, b in other.rows[k].items():
                    out.add_to(r, c, a * b)
        return out

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for r in range(self.nrows):
            total = Fraction(0)
            row = self.rows[r]
            if len(row) < len(v):
                for c, a in row.items():
                    if c in v:
                        total += a * v[c]
            else:
                for c, x in v.items():
                    if c in row:
                        total += row[c] * x
            if total:
                out[r] = total
        return out

    def rank(self) -> int:
        return len(_eliminate(self.copy_rows())[0])

    def nullspace(self) -> list[Vec]:
        """Basis of ``{x : self @ x = 0}``, one vector per free column."""
        pivots, rows = _eliminate(self.copy_rows())
        pivot_cols = {c: r for r, c in pivots}
        basis: list[Vec] = []
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            vec: Vec = {free: Fraction(1)}
            for pc, r in pivot_cols.items():
                coeff = rows[r].get(free)
                if coeff:
                    vec[pc] = -coeff
            basis.append(vec)
        return basis


def _eliminate(rows: list[Vec]) -> tuple[list[tuple[int, int]], list[Vec]]:
    """Gauss-Jordan: returns (pivots as (row, col) pairs, reduced rows)."""
    pivots: list[tuple[int, int]] = []
    used: set[int] = set()
    # visit columns in the order they appear; deterministic ascending scan
    active_cols = sorted({c for row in rows for c in row})
    for col in active_cols:
        pivot_row = -1
        best = None
        for r, row in enumerate(rows):
            if r in used or col not in row:
                continue
            if best is None or len(row) < best:
                best = len(row)
                pivot_row = r
        if pivot_row < 0:
            continue
        used.add(pivot_row)
        pivots.append((pivot_row, col))
        prow = rows[pivot_row]
        inv = Fraction(1) / prow[col]
        if inv != 1:
            for c in list(prow):
                prow[c] *= inv
        for r, row in enumerate(rows):
            if r == pivot_row or col not in row:
                continue
            factor = row[col]
            for c, v in prow.items():
                value = row.get(c, Fraction(0)) - factor * v
                if value:
                    row[c] = value
                else:
                    row.pop(c, None)
    pivots.sort(key=lambda rc: rc[1])
    return pivots, rows


def solve_columns(columns: list[Vec], nrows: int, target: Vec) -> list[Fraction] | None:
    """Coefficients x with ``sum x_j * columns[j] == target``, or None."""
    k = len(columns)
    rows: list[Vec] = [dict() for _ in range(nrows)]
    for j, colvec in enumerate(columns):
        for r, v in colvec.items():
            rows[r][j] = v
    for r, v in target.items():
        if v:
            rows[r][k] = v
    pivots, reduced = _eliminate(rows)
    coeffs = [Fraction(0)] * k
    for r, c in pivots:
        if c == k:
            return None  # inconsistent
        coeffs[c] = reduced[r].get(k, Fraction(0))
    return coeffs


def independent_columns(columns: list[Vec], nrows: int) -> list[int]:
    """Indices of a maximal independent subset, scanned left to right."""
    chosen: list[int] = []
    rows: list[Vec] = [dict() for _ in range(nrows)]
    pivot_of_col: dict[int, int] = {}
    for j, colvec in enumerate(columns):
        vec = dict(colvec)
        # reduce against previously chosen pivots
        for pc, pr in sorted(pivot_of_col.items()):
            if pc in vec:
                factor = vec[pc]
                for c, v in rows[pr].items():
                    value = vec.get(c, Fraction(0)) - factor * v
                    if value:
                        vec[c] = value
                    else:
                        vec.pop(c, None)
        if not vec:
            continue
        # normalize on its first nonzero coordinate
        lead = min(vec)
        inv = Fraction(1) / vec[lead]
        if inv != 1:
            vec = {c: v * inv for c, v in vec.items()}
        rows[len(chosen)] = vec
        pivot_of_col[lead] = len(chosen)
        chosen.append(j)
    return chosen
