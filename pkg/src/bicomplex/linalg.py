"""Sparse exact linear algebra over Q(i).

Matrices are stored as dicts mapping (row, col) -> Scalar with no zero
entries.  All eliminations pick the leftmost pivot column and, within a
column, the smallest available row index, so every result is a
deterministic function of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Scalar, sc

Entry = tuple[int, int]


def _coerce(v: object) -> Scalar:
    if isinstance(v, Scalar):
        return v
    return sc(v)  # type: ignore[arg-type]


@dataclass
class Matrix:
    nrows: int
    ncols: int
    entries: dict[Entry, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[Entry, Scalar] = {}
        for (r, c), v in self.entries.items():
            if r < 0 or r >= self.nrows or c < 0 or c >= self.ncols:
                raise ValueError(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
            if v:
                clean[(r, c)] = v
        self.entries = clean

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(nrows: int, ncols: int) -> Matrix:
        return Matrix(nrows, ncols, {})

    @staticmethod
    def identity(n: int) -> Matrix:
        return Matrix(n, n, {(i, i): ONE for i in range(n)})

    @staticmethod
    def from_rows(rows: Sequence[Sequence[object]]) -> Matrix:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries: dict[Entry, Scalar] = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                s = _coerce(v)
                if s:
                    entries[(r, c)] = s
        return Matrix(nrows, ncols, entries)

    @staticmethod
    def column_vector(values: Sequence[object]) -> Matrix:
        return Matrix.from_rows([[v] for v in values])

    # -- access ----------------------------------------------------------

    def get(self, r: int, c: int) -> Scalar:
        return self.entries.get((r, c), ZERO)

    def to_rows(self) -> list[list[Scalar]]:
        rows = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def column(self, j: int) -> Matrix:
        return self.columns([j])

    def columns(self, js: Sequence[int]) -> Matrix:
        pos = {j: k for k, j in enumerate(js)}
        entries = {
            (r, pos[c]): v for (r, c), v in self.entries.items() if c in pos
        }
        return Matrix(self.nrows, len(js), entries)

    def rows(self, rs: Sequence[int]) -> Matrix:
        pos = {r: k for k, r in enumerate(rs)}
        entries = {
            (pos[r], c): v for (r, c), v in self.entries.items() if r in pos
        }
        return Matrix(len(rs), self.ncols, entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in addition")
        out = dict(self.entries)
        for k, v in other.entries.items():
            nv = out.get(k, ZERO) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return Matrix(self.nrows, self.ncols, out)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, {k: -v for k, v in self.entries.items()})

    def scale(self, s: Scalar) -> Matrix:
        if not s:
            return Matrix.zero(self.nrows, self.ncols)
        return Matrix(
            self.nrows, self.ncols, {k: s * v for k, v in self.entries.items()}
        )

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[Entry, Scalar] = {}
        for (r, k), va in self.entries.items():
            for c, vb in by_row.get(k, ()):
                key = (r, c)
                nv = out.get(key, ZERO) + va * vb
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return Matrix(self.nrows, other.ncols, out)

    def transpose(self) -> Matrix:
        return Matrix(
            self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def conjugate(self) -> Matrix:
        return Matrix(
            self.nrows,
            self.ncols,
            {k: v.conjugate() for k, v in self.entries.items()},
        )

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        rows = self.to_rows()
        return "\n".join("[" + "  ".join(str(v) for v in row) + "]" for row in rows)


def hstack(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("hstack of nothing")
    nrows = mats[0].nrows
    entries: dict[Entry, Scalar] = {}
    off = 0
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("row count mismatch in hstack")
        for (r, c), v in m.entries.items():
            entries[(r, c + off)] = v
        off += m.ncols
    return Matrix(nrows, off, entries)


def vstack(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    ncols = mats[0].ncols
    entries: dict[Entry, Scalar] = {}
    off = 0
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column count mismatch in vstack")
        for (r, c), v in m.entries.items():
            entries[(r + off, c)] = v
        off += m.nrows
    return Matrix(off, ncols, entries)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; index (i, j) of a pair maps to i * dim_b + j."""
    entries: dict[Entry, Scalar] = {}
    for (ra, ca), va in a.entries.items():
        for (rb, cb), vb in b.entries.items():
            entries[(ra * b.nrows + rb, ca * b.ncols + cb)] = va * vb
    return Matrix(a.nrows * b.nrows, a.ncols * b.ncols, entries)


def block_diag(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    nrows = sum(m.nrows for m in mats)
    ncols = sum(m.ncols for m in mats)
    entries: dict[Entry, Scalar] = {}
    ro = co = 0
    for m in mats:
        for (r, c), v in m.entries.items():
            entries[(r + ro, c + co)] = v
        ro += m.nrows
        co += m.ncols
    return Matrix(nrows, ncols, entries)


# -- elimination -----------------------------------------------------------


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns.

    Pivot selection is leftmost column first, then smallest row index,
    so the result (including the pivot list) is deterministic.
    """
    rows: list[dict[int, Scalar]] = [{} for _ in range(m.nrows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    pivots: list[int] = []
    top = 0
    for col in range(m.ncols):
        sel = -1
        for r in range(top, m.nrows):
            if col in rows[r]:
                sel = r
                break
        if sel < 0:
            continue
        rows[top], rows[sel] = rows[sel], rows[top]
        inv = rows[top][col].inverse()
        prow = {c2: inv * v for c2, v in rows[top].items()}
        prow[col] = ONE  # avoid any residue from the division
        rows[top] = prow
        for r in range(m.nrows):
            if r == top:
                continue
            f = rows[r].get(col)
            if f is None:
                continue
            row = rows[r]
            for c2, v2 in prow.items():
                nv = row.get(c2, ZERO) - f * v2
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
        pivots.append(col)
        top += 1
        if top == m.nrows:
            break
    entries: dict[Entry, Scalar] = {}
    for r, row in enumerate(rows):
        for c, v in row.items():
            entries[(r, c)] = v
    return Matrix(m.nrows, m.ncols, entries), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def rcef(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced column echelon form and the list of pivot rows."""
    r, pivots = rref(m.transpose())
    return r.transpose(), pivots


def kernel(m: Matrix) -> Matrix:
    """Columns form the canonical basis of the right null space.

    One basis vector per free column, in ascending free-column order,
    with a 1 in the free coordinate.
    """
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    entries: dict[Entry, Scalar] = {}
    for j, f in enumerate(free):
        entries[(f, j)] = ONE
        for i, p in enumerate(pivots):
            v = r.get(i, f)
            if v:
                entries[(p, j)] = -v
    return Matrix(m.ncols, len(free), entries)


def solve_right(a: Matrix, b: Matrix) -> Matrix | None:
    """A particular solution X of A @ X = B, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if a.nrows != b.nrows:
        raise ValueError("shape mismatch in solve")
    r, pivots = rref(hstack([a, b]))
    for p in pivots:
        if p >= a.ncols:
            return None
    entries: dict[Entry, Scalar] = {}
    for i, p in enumerate(pivots):
        for j in range(b.ncols):
            v = r.get(i, a.ncols + j)
            if v:
                entries[(p, j)] = v
    return Matrix(a.ncols, b.ncols, entries)


def inverse(a: Matrix) -> Matrix:
    if a.nrows != a.ncols:
        raise ValueError("inverse of a non-square matrix")
    x = solve_right(a, Matrix.identity(a.nrows))
    if x is None:
        raise ValueError("matrix is not invertible")
    return x
