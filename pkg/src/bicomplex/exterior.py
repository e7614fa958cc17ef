"""Exterior algebra over a finite set of degree-1 generators.

Generators are numbered 1..n.  The grade-p basis is the list of strictly
increasing p-tuples in lexicographic order (itertools.combinations order),
and a p-form is a coordinate column against that basis.

The main entry point is `exterior_complex`, which assembles the complex
(Lambda^*, d) from the 2-form differentials of the generators plus an
optional 1-form twist, optionally restricted to a sub-basis.  Restriction
must be d-stable; leakage outside the kept basis is an internal error
because callers only restrict along weight decompositions that are stable
by construction.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InternalError
from .linalg import Matrix
from .scalars import MINUS_ONE, ONE, Scalar, ZERO

Subset = tuple[int, ...]

# generator differentials: dgen[k] is the 2-form d(xi^k) as {(i, j): c}, i < j
TwoForms = dict[int, dict[tuple[int, int], Scalar]]


def grade_basis(n: int, p: int) -> list[Subset]:
    return [tuple(c) for c in combinations(range(1, n + 1), p)]


def merge_sign(a: Subset, b: Subset) -> tuple[Scalar, Subset] | None:
    """Sign and sorted union for xi^a wedge xi^b; None if they overlap."""
    if set(a) & set(b):
        return None
    inversions = sum(1 for x in a for y in b if x > y)
    sign = MINUS_ONE if inversions % 2 else ONE
    return sign, tuple(sorted(a + b))


def _index(n: int, p: int) -> dict[Subset, int]:
    return {s: i for i, s in enumerate(grade_basis(n, p))}


def d_matrix(n: int, dgen: TwoForms, p: int) -> Matrix:
    """The antiderivation extending the generator 2-forms, on grade p."""
    src = grade_basis(n, p)
    tgt_index = _index(n, p + 1)
    entries: dict[tuple[int, int], Scalar] = {}
    for col, s in enumerate(src):
        for t, gen in enumerate(s):
            rest = s[:t] + s[t + 1 :]
            pos_sign = MINUS_ONE if t % 2 else ONE
            for (i, j), coeff in dgen.get(gen, {}).items():
                ws = merge_sign((i, j), rest)
                if ws is None:
                    continue
                sign, merged = ws
                row = tgt_index[merged]
                key = (row, col)
                entries[key] = entries.get(key, ZERO) + pos_sign * sign * coeff
    return Matrix(len(tgt_index), len(src), entries)


def wedge_matrix(n: int, covector: dict[int, Scalar], p: int) -> Matrix:
    """Left wedge with the 1-form sum(covector[i] xi^i), on grade p."""
    src = grade_basis(n, p)
    tgt_index = _index(n, p + 1)
    entries: dict[tuple[int, int], Scalar] = {}
    for col, s in enumerate(src):
        for gen, coeff in covector.items():
            ws = merge_sign((gen,), s)
            if ws is None:
                continue
            sign, merged = ws
            key = (tgt_index[merged], col)
            entries[key] = entries.get(key, ZERO) + sign * coeff
    return Matrix(len(tgt_index), len(src), entries)


def contraction_matrix(n: int, vector: dict[int, Scalar], p: int) -> Matrix:
    """Interior product with sum(vector[i] X_i), on grade p."""
    src = grade_basis(n, p)
    tgt_index = _index(n, p - 1) if p >= 1 else {}
    entries: dict[tuple[int, int], Scalar] = {}
    for col, s in enumerate(src):
        for t, gen in enumerate(s):
            coeff = vector.get(gen)
            if not coeff:
                continue
            rest = s[:t] + s[t + 1 :]
            pos_sign = MINUS_ONE if t % 2 else ONE
            key = (tgt_index[rest], col)
            entries[key] = entries.get(key, ZERO) + pos_sign * coeff
    return Matrix(len(tgt_index), len(src), entries)


def exterior_complex(
    n: int,
    dgen: TwoForms,
    twist: dict[int, Scalar] | None = None,
    keep=None,
):
    """Build (Lambda^*, d + twist^) restricted to `keep`-selected subsets.

    Returns (SimpleComplex, bases) where bases[p] lists the kept subsets
    of grade p in lexicographic order.  `keep` is a predicate on subsets;
    the restriction must be stable under the differential, otherwise the
    caller passed a non-stable selection and we fail hard.
    """
    from .complexes import SimpleComplex

    bases: dict[int, list[Subset]] = {}
    for p in range(n + 1):
        full = grade_basis(n, p)
        kept = [s for s in full if keep is None or keep(s)]
        if kept:
            bases[p] = kept
    spaces = {p: len(b) for p, b in bases.items()}
    maps: dict[int, Matrix] = {}
    for p in bases:
        full_d = d_matrix(n, dgen, p)
        if twist:
            full_d = full_d + wedge_matrix(n, twist, p)
        src_full = grade_basis(n, p)
        tgt_full_index = _index(n, p + 1)
        kept_src = {i: j for j, i in enumerate(
            i for i, s in enumerate(src_full) if keep is None or keep(s))}
        tgt_sets = bases.get(p + 1, [])
        kept_tgt = {tgt_full_index[s]: r for r, s in enumerate(tgt_sets)}
        entries = {}
        for (r, c), v in full_d.entries.items():
            if c not in kept_src:
                continue
            if r not in kept_tgt:
                raise InternalError(
                    f"restriction not d-stable: grade {p} leaks to "
                    f"{grade_basis(n, p + 1)[r]}"
                )
            entries[(kept_tgt[r], kept_src[c])] = v
        if p + 1 in bases:
            maps[p] = Matrix(len(tgt_sets), len(kept_src), entries)
        elif entries:
            raise InternalError(f"restriction not d-stable at top grade {p}")
    sc = SimpleComplex.build(spaces, maps)
    return sc, bases
