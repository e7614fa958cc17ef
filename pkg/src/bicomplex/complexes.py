"""Bounded double complexes over Q(i) and their cohomology tables.

A double complex stores finite-dimensional spaces indexed by bidegree
(p, q) together with two anticommuting differentials: del of bidegree
(1, 0) and delbar of bidegree (0, 1).  Maps are matrices acting on
coordinate columns, so a map from (p, q) to (p+1, q) has shape
dim(p+1, q) x dim(p, q).

Normalization invariant: spaces holds only strictly positive dimensions,
and a differential is stored at (p, q) exactly when both its source and
its target are present (zero matrices are filled in).  `build` enforces
this; `validate` re-checks it and the three axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalError, ValidationError
from .linalg import Matrix, hstack, kernel, kron, rank, vstack
from .scalars import MINUS_ONE, ONE
from .subspaces import Subspace

Bidegree = tuple[int, int]


@dataclass
class DoubleComplex:
    spaces: dict[Bidegree, int]
    del_maps: dict[Bidegree, Matrix]
    delbar_maps: dict[Bidegree, Matrix]

    # -- construction ---------------------------------------------------

    @staticmethod
    def build(
        spaces: dict[Bidegree, int],
        del_maps: dict[Bidegree, Matrix] | None = None,
        delbar_maps: dict[Bidegree, Matrix] | None = None,
    ) -> DoubleComplex:
        """Normalize raw data into the storage invariant.

        Zero-dimensional spaces are dropped, missing differentials with
        both endpoints present become zero matrices, and any nonzero map
        attached to an absent endpoint raises ValidationError.
        """
        del_maps = del_maps or {}
        delbar_maps = delbar_maps or {}
        for (pq, d) in spaces.items():
            if d < 0:
                raise ValidationError(f"negative dimension at {pq}")
        sp = {pq: d for pq, d in spaces.items() if d > 0}

        def norm(maps: dict[Bidegree, Matrix], dp: int, dq: int, name: str):
            out: dict[Bidegree, Matrix] = {}
            for (p, q), m in maps.items():
                src = sp.get((p, q), 0)
                tgt = sp.get((p + dp, q + dq), 0)
                if src == 0 or tgt == 0:
                    if not m.is_zero:
                        raise ValidationError(
                            f"{name} map at ({p},{q}) touches an absent space"
                        )
                    continue
                if (m.nrows, m.ncols) != (tgt, src):
                    raise ValidationError(
                        f"{name} map at ({p},{q}) has shape "
                        f"{m.nrows}x{m.ncols}, expected {tgt}x{src}"
                    )
                out[(p, q)] = m
            for (p, q) in sp:
                if (p + dp, q + dq) in sp and (p, q) not in out:
                    out[(p, q)] = Matrix.zero(sp[(p + dp, q + dq)], sp[(p, q)])
            return out

        return DoubleComplex(
            spaces=sp,
            del_maps=norm(del_maps, 1, 0, "del"),
            delbar_maps=norm(delbar_maps, 0, 1, "delbar"),
        )

    # -- access ----------------------------------------------------------

    def dim(self, p: int, q: int) -> int:
        return self.spaces.get((p, q), 0)

    def bidegrees(self) -> list[Bidegree]:
        return sorted(self.spaces)

    def del_map(self, p: int, q: int) -> Matrix:
        m = self.del_maps.get((p, q))
        if m is None:
            m = Matrix.zero(self.dim(p + 1, q), self.dim(p, q))
        return m

    def delbar_map(self, p: int, q: int) -> Matrix:
        m = self.delbar_maps.get((p, q))
        if m is None:
            m = Matrix.zero(self.dim(p, q + 1), self.dim(p, q))
        return m

    def total_dim(self) -> int:
        return sum(self.spaces.values())

    # -- validation --------------------------------------------------------

    def validate(self) -> list[str]:
        """All invariant and axiom violations, as human-readable strings.

        Structural problems are prefixed "structure:", axiom failures
        "axiom:".  An empty list means the complex is valid.
        """
        problems: list[str] = []
        for pq, d in self.spaces.items():
            if d <= 0:
                problems.append(f"structure: non-positive dimension at {pq}")

        def check_maps(maps: dict[Bidegree, Matrix], dp: int, dq: int, name: str):
            for (p, q), m in maps.items():
                src = self.dim(p, q)
                tgt = self.dim(p + dp, q + dq)
                if src == 0 or tgt == 0:
                    problems.append(
                        f"structure: {name} map stored at ({p},{q}) "
                        "without both endpoints"
                    )
                elif (m.nrows, m.ncols) != (tgt, src):
                    problems.append(
                        f"structure: {name} map at ({p},{q}) has wrong shape"
                    )
            for (p, q) in self.spaces:
                if (p + dp, q + dq) in self.spaces and (p, q) not in maps:
                    problems.append(
                        f"structure: missing {name} map at ({p},{q})"
                    )

        check_maps(self.del_maps, 1, 0, "del")
        check_maps(self.delbar_maps, 0, 1, "delbar")
        if problems:
            return problems

        for (p, q) in self.bidegrees():
            dd = self.del_map(p + 1, q) @ self.del_map(p, q)
            if not dd.is_zero:
                problems.append(f"axiom: del^2 != 0 starting at ({p},{q})")
            bb = self.delbar_map(p, q + 1) @ self.delbar_map(p, q)
            if not bb.is_zero:
                problems.append(f"axiom: delbar^2 != 0 starting at ({p},{q})")
            anti = self.delbar_map(p + 1, q) @ self.del_map(p, q) + self.del_map(
                p, q + 1
            ) @ self.delbar_map(p, q)
            if not anti.is_zero:
                problems.append(
                    f"axiom: del delbar + delbar del != 0 starting at ({p},{q})"
                )
        return problems

    def check(self) -> DoubleComplex:
        problems = self.validate()
        if problems:
            raise ValidationError("; ".join(problems))
        return self


def transpose_complex(dc: DoubleComplex) -> DoubleComplex:
    """Swap the two directions: space (p, q) becomes space (q, p).

    The del maps of the result are the delbar maps of the input and
    vice versa, so the row filtration of dc is the column filtration of
    the transpose.
    """
    spaces = {(q, p): d for (p, q), d in dc.spaces.items()}
    del_maps = {(q, p): m for (p, q), m in dc.delbar_maps.items()}
    delbar_maps = {(q, p): m for (p, q), m in dc.del_maps.items()}
    return DoubleComplex(spaces, del_maps, delbar_maps)


def euler_characteristic(dc: DoubleComplex) -> int:
    return sum((-1) ** (p + q) * d for (p, q), d in dc.spaces.items())


# -- cohomology tables -------------------------------------------------------


def _drop_zeros(table: dict) -> dict:
    return {k: v for k, v in sorted(table.items()) if v}


def dolbeault_table(dc: DoubleComplex) -> dict[Bidegree, int]:
    """dim H^{p,q} of the delbar direction, zero entries omitted."""
    out = {}
    for (p, q) in dc.bidegrees():
        m = dc.delbar_map(p, q)
        out[(p, q)] = (m.ncols - rank(m)) - rank(dc.delbar_map(p, q - 1))
    return _drop_zeros(out)


def del_table(dc: DoubleComplex) -> dict[Bidegree, int]:
    """dim H^{p,q} of the del direction, zero entries omitted."""
    out = {}
    for (p, q) in dc.bidegrees():
        m = dc.del_map(p, q)
        out[(p, q)] = (m.ncols - rank(m)) - rank(dc.del_map(p - 1, q))
    return _drop_zeros(out)


def bott_chern_table(dc: DoubleComplex) -> dict[Bidegree, int]:
    """ker del  intersect  ker delbar, modulo the image of del delbar."""
    out = {}
    for (p, q) in dc.bidegrees():
        both = vstack([dc.del_map(p, q), dc.delbar_map(p, q)])
        numerator = both.ncols - rank(both)
        dd = dc.del_map(p - 1, q) @ dc.delbar_map(p - 1, q - 1)
        out[(p, q)] = numerator - rank(dd)
    return _drop_zeros(out)


def aeppli_table(dc: DoubleComplex) -> dict[Bidegree, int]:
    """ker(del delbar) out of (p, q), modulo im del + im delbar."""
    out = {}
    for (p, q) in dc.bidegrees():
        dd = dc.del_map(p, q + 1) @ dc.delbar_map(p, q)
        numerator = dd.ncols - rank(dd)
        into = hstack([dc.del_map(p - 1, q), dc.delbar_map(p, q - 1)])
        out[(p, q)] = numerator - rank(into)
    return _drop_zeros(out)


# -- total complex -------------------------------------------------------------


@dataclass
class TotalComplex:
    """The totalization Tot^k = direct sum of spaces with p + q = k.

    Within each degree the summands are ordered by ascending p; offsets
    give the starting coordinate of each bidegree.  The differential is
    del + delbar (no extra signs: the two differentials anticommute).
    """

    source: DoubleComplex
    degrees: list[int]
    parts: dict[int, list[Bidegree]]
    offsets: dict[Bidegree, int]
    dims: dict[int, int]
    _d_cache: dict[int, Matrix] = field(default_factory=dict)

    @staticmethod
    def of(dc: DoubleComplex) -> TotalComplex:
        parts: dict[int, list[Bidegree]] = {}
        for (p, q) in dc.bidegrees():
            parts.setdefault(p + q, []).append((p, q))
        degrees = sorted(parts)
        offsets: dict[Bidegree, int] = {}
        dims: dict[int, int] = {}
        for k in degrees:
            parts[k].sort()
            off = 0
            for pq in parts[k]:
                offsets[pq] = off
                off += dc.spaces[pq]
            dims[k] = off
        return TotalComplex(dc, degrees, parts, offsets, dims)

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    def d(self, k: int) -> Matrix:
        if k in self._d_cache:
            return self._d_cache[k]
        dc = self.source
        entries = {}
        for (p, q) in self.parts.get(k, []):
            src_off = self.offsets[(p, q)]
            for (tp, tq), m in (
                ((p + 1, q), dc.del_map(p, q)),
                ((p, q + 1), dc.delbar_map(p, q)),
            ):
                if (tp, tq) not in dc.spaces:
                    continue
                tgt_off = self.offsets[(tp, tq)]
                for (r, c), v in m.entries.items():
                    entries[(tgt_off + r, src_off + c)] = v
        result = Matrix(self.dim(k + 1), self.dim(k), entries)
        self._d_cache[k] = result
        return result

    def cocycles(self, k: int) -> Subspace:
        return Subspace.from_columns(self.dim(k), kernel(self.d(k)))

    def coboundaries(self, k: int) -> Subspace:
        if k - 1 not in self.dims:
            return Subspace.zero(self.dim(k))
        return Subspace.from_columns(self.dim(k), self.d(k - 1))


def de_rham_table(dc: DoubleComplex) -> dict[int, int]:
    tot = TotalComplex.of(dc)
    out = {}
    for k in tot.degrees:
        d = tot.d(k)
        out[k] = (d.ncols - rank(d)) - rank(tot.d(k - 1))
    return _drop_zeros(out)


def all_tables(dc: DoubleComplex) -> dict[str, dict]:
    return {
        "dolbeault": dolbeault_table(dc),
        "del": del_table(dc),
        "bott_chern": bott_chern_table(dc),
        "aeppli": aeppli_table(dc),
        "de_rham": de_rham_table(dc),
    }


# -- graded complexes and tensor products ------------------------------------


@dataclass
class SimpleComplex:
    """A bounded complex of finite-dimensional spaces with one degree-1 map."""

    spaces: dict[int, int]
    maps: dict[int, Matrix]

    @staticmethod
    def build(spaces: dict[int, int], maps: dict[int, Matrix] | None = None):
        maps = maps or {}
        sp = {p: d for p, d in spaces.items() if d > 0}
        out: dict[int, Matrix] = {}
        for p, m in maps.items():
            src = sp.get(p, 0)
            tgt = sp.get(p + 1, 0)
            if src == 0 or tgt == 0:
                if not m.is_zero:
                    raise ValidationError(f"map at {p} touches an absent space")
                continue
            if (m.nrows, m.ncols) != (tgt, src):
                raise ValidationError(f"map at {p} has wrong shape")
            out[p] = m
        for p in sp:
            if p + 1 in sp and p not in out:
                out[p] = Matrix.zero(sp[p + 1], sp[p])
        return SimpleComplex(sp, out)

    def dim(self, p: int) -> int:
        return self.spaces.get(p, 0)

    def map(self, p: int) -> Matrix:
        m = self.maps.get(p)
        if m is None:
            m = Matrix.zero(self.dim(p + 1), self.dim(p))
        return m

    def validate(self) -> list[str]:
        problems = []
        for p in sorted(self.spaces):
            m = self.map(p + 1) @ self.map(p)
            if not m.is_zero:
                problems.append(f"axiom: d^2 != 0 starting in degree {p}")
        return problems

    def check(self) -> SimpleComplex:
        problems = self.validate()
        if problems:
            raise ValidationError("; ".join(problems))
        return self

    def cohomology(self) -> dict[int, int]:
        out = {}
        for p in sorted(self.spaces):
            m = self.map(p)
            out[p] = (m.ncols - rank(m)) - rank(self.map(p - 1))
        return _drop_zeros(out)

    def conjugate(self) -> SimpleComplex:
        return SimpleComplex(
            dict(self.spaces), {p: m.conjugate() for p, m in self.maps.items()}
        )


def tensor_product(a: SimpleComplex, b: SimpleComplex) -> DoubleComplex:
    """Bicomplex A tensor B: del = d_A (x) id, delbar = (-1)^p id (x) d_B.

    Basis pairs (i, j) are flattened as i * dim(B^q) + j.  The sign on
    delbar makes the two differentials anticommute.
    """
    spaces: dict[Bidegree, int] = {}
    for p, da in a.spaces.items():
        for q, db in b.spaces.items():
            spaces[(p, q)] = da * db
    del_maps: dict[Bidegree, Matrix] = {}
    delbar_maps: dict[Bidegree, Matrix] = {}
    for (p, q) in spaces:
        if (p + 1, q) in spaces:
            del_maps[(p, q)] = kron(a.map(p), Matrix.identity(b.dim(q)))
        if (p, q + 1) in spaces:
            m = kron(Matrix.identity(a.dim(p)), b.map(q))
            if p % 2:
                m = -m
            delbar_maps[(p, q)] = m
    return DoubleComplex.build(spaces, del_maps, delbar_maps)


def direct_sum(
    summands: list[DoubleComplex],
) -> tuple[DoubleComplex, list[dict[Bidegree, int]]]:
    """Blockwise direct sum; also returns per-summand coordinate offsets.

    offsets[i][(p, q)] is the first coordinate of summand i inside the
    combined (p, q) space (present only when summand i is nonzero there).
    """
    spaces: dict[Bidegree, int] = {}
    offsets: list[dict[Bidegree, int]] = []
    for dc in summands:
        offs: dict[Bidegree, int] = {}
        for pq, d in dc.spaces.items():
            offs[pq] = spaces.get(pq, 0)
            spaces[pq] = spaces.get(pq, 0) + d
        offsets.append(offs)

    def assemble(which: str, dp: int, dq: int) -> dict[Bidegree, Matrix]:
        out: dict[Bidegree, dict] = {}
        for i, dc in enumerate(summands):
            maps = dc.del_maps if which == "del" else dc.delbar_maps
            for (p, q), m in maps.items():
                so = offsets[i][(p, q)]
                to = offsets[i][(p + dp, q + dq)]
                dst = out.setdefault((p, q), {})
                for (r, c), v in m.entries.items():
                    dst[(to + r, so + c)] = v
        return {
            (p, q): Matrix(
                spaces.get((p + dp, q + dq), 0), spaces[(p, q)], entries
            )
            for (p, q), entries in out.items()
        }

    dc = DoubleComplex.build(
        spaces, assemble("del", 1, 0), assemble("delbar", 0, 1)
    )
    return dc, offsets


# -- real structures ------------------------------------------------------------


@dataclass
class RealStructure:
    """An antilinear involution sigma with sigma(A^{p,q}) = A^{q,p}.

    sigma[(p, q)] is the matrix S with sigma(v) = S @ conj(v) in
    coordinates, mapping (p, q) coordinates to (q, p) coordinates.
    """

    sigma: dict[Bidegree, Matrix]


def check_real_structure(dc: DoubleComplex, rs: RealStructure) -> list[str]:
    """Involution and intertwining checks; empty list means valid.

    Conditions: S_{q,p} conj(S_{p,q}) = id, and sigma swaps the two
    differentials: S_{p+1,q} conj(del_{p,q}) = delbar_{q,p} S_{p,q} and
    the mirrored condition for delbar.
    """
    problems = []
    for pq in dc.bidegrees():
        if pq not in rs.sigma:
            problems.append(f"structure: sigma missing at {pq}")
    if problems:
        return problems
    for (p, q) in dc.bidegrees():
        s = rs.sigma[(p, q)]
        if (s.nrows, s.ncols) != (dc.dim(q, p), dc.dim(p, q)):
            problems.append(f"structure: sigma at ({p},{q}) has wrong shape")
            continue
        back = rs.sigma.get((q, p))
        if back is None:
            problems.append(f"structure: sigma missing at ({q},{p})")
            continue
        if back @ s.conjugate() != Matrix.identity(dc.dim(p, q)):
            problems.append(f"axiom: sigma^2 != id at ({p},{q})")
        if (p + 1, q) in dc.spaces:
            lhs = rs.sigma[(p + 1, q)] @ dc.del_map(p, q).conjugate()
            rhs = dc.delbar_map(q, p) @ s
            if lhs != rhs:
                problems.append(
                    f"axiom: sigma del != delbar sigma at ({p},{q})"
                )
        if (p, q + 1) in dc.spaces:
            lhs = rs.sigma[(p, q + 1)] @ dc.delbar_map(p, q).conjugate()
            rhs = dc.del_map(q, p) @ s
            if lhs != rhs:
                problems.append(
                    f"axiom: sigma delbar != del sigma at ({p},{q})"
                )
    return problems


def labeled_real_structure(
    dc: DoubleComplex,
    labels: dict[Bidegree, list],
    mapper,
) -> RealStructure:
    """Assemble sigma from an involution on basis labels.

    labels[(p, q)] lists hashable labels in coordinate order and
    mapper(p, q, label) names the (q, p)-label it is sent to.  Every
    entry carries the sign (-1)^{pq}; conjugation of coordinates is
    implicit in the RealStructure convention.
    """
    index = {
        pq: {lab: i for i, lab in enumerate(labs)} for pq, labs in labels.items()
    }
    sigma: dict[Bidegree, Matrix] = {}
    for (p, q) in dc.bidegrees():
        tgt_index = index.get((q, p), {})
        entries = {}
        for col, lab in enumerate(labels[(p, q)]):
            tlab = mapper(p, q, lab)
            row = tgt_index.get(tlab)
            if row is None:
                raise InternalError(
                    f"sigma target label missing at ({q},{p}): {tlab!r}"
                )
            sign = MINUS_ONE if (p * q) % 2 else ONE
            entries[(row, col)] = sign
        sigma[(p, q)] = Matrix(dc.dim(q, p), dc.dim(p, q), entries)
    return RealStructure(sigma)
