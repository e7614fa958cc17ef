"""Decomposition into squares and zigzags with a certified change of basis.

Phase A peels squares: at each anchor (p,q) in increasing (p+q, p),
generators are chosen behind a complement of ker(del delbar); the four
square vectors split off, and the remaining active subspaces need no
correction because every incoming image lies in ker(del delbar) and
every outgoing image of the new actives misses the square lines.

Phase B decomposes the remainder, where all compositions of del and
delbar vanish.  A zigzag then only ever alternates between two
adjacent total degrees, so the remainder splits into independent
"level pairs" (k, k+1), each an alternating-orientation A_n quiver
whose interval decomposition is computed by a left-to-right sweep:
sources allocate their images as string extensions, fresh sinks, or
new frontiers, and a source hitting several open strings triggers an
absorption that adds one string into another along their trailing
overlap.  The absorber choice (shortest sink-terminated hit if one
exists, else the longest source-terminated hit) is exactly the case
in which the vertex-wise addition preserves exactness on both ends.

Nothing here is trusted: the final change of basis is inverted per
bidegree and conjugation must reproduce the block model literally,
and all five cohomology tables of the model must match the input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complexes import Bidegree, DoubleComplex, all_tables, direct_sum
from .errors import InternalError, ValidationError
from .linalg import Matrix, hstack, inverse, kernel, rcef, rref, solve_right
from .scalars import MINUS_ONE, ONE, Scalar, sc


@dataclass(frozen=True)
class Square:
    p: int
    q: int


@dataclass(frozen=True)
class Zigzag:
    start: Bidegree
    steps: tuple[str, ...]  # "del" / "delbar", read from the start vertex


Shape = Square | Zigzag


@dataclass
class Decomposition:
    parts: list[tuple[Shape, int]]
    change_of_basis: dict[Bidegree, Matrix]
    model: DoubleComplex


@dataclass
class _RawPart:
    kind: str  # "square" | "zigzag"
    verts: list[tuple[Bidegree, Matrix]]  # original-coordinate column vectors


def _unit(n: int, i: int) -> Matrix:
    return Matrix(n, 1, {(i, 0): ONE})


def _restricted(tgt_basis: Matrix, m: Matrix, src_basis: Matrix) -> Matrix:
    img = m @ src_basis
    if img.is_zero:
        return Matrix.zero(tgt_basis.ncols, src_basis.ncols)
    if tgt_basis.ncols == 0:
        raise InternalError("differential leaks outside the active subspace")
    coeffs = solve_right(tgt_basis, img)
    if coeffs is None:
        raise InternalError("differential leaks outside the active subspace")
    return coeffs


def _unit_complement(cols: Matrix) -> Matrix:
    """Unit vectors spanning a complement of the column span."""
    _, pivot_rows = rcef(cols)
    taken = set(pivot_rows)
    free = [i for i in range(cols.nrows) if i not in taken]
    return Matrix(cols.nrows, len(free), {(i, j): ONE for j, i in enumerate(free)})


def _phase_a(dc: DoubleComplex, act: dict[Bidegree, Matrix]) -> list[_RawPart]:
    parts: list[_RawPart] = []
    for (p, q) in sorted(dc.bidegrees(), key=lambda pq: (pq[0] + pq[1], pq[0])):
        corners = [(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)]
        if any(c not in dc.spaces for c in corners):
            continue
        r00, r10, r01, r11 = (act[c] for c in corners)
        a2 = _restricted(r01, dc.delbar_map(p, q), r00)
        b1 = _restricted(r11, dc.delbar_map(p + 1, q), r10)
        b2 = _restricted(r11, dc.del_map(p, q + 1), r01)
        lam = b2 @ a2
        if lam.is_zero:
            continue
        _, piv = rref(lam)
        wmat = Matrix(lam.ncols, len(piv), {(c, j): ONE for j, c in enumerate(piv)})
        cmat = lam @ wmat
        c3 = _unit_complement(cmat)
        minv = inverse(hstack([cmat, c3]))
        pi_c = minv.rows(list(range(cmat.ncols)))
        k = kernel(lam)
        c1 = kernel(pi_c @ b1)
        c2 = kernel(pi_c @ b2)
        w_orig = r00 @ wmat
        a_orig = dc.del_map(p, q) @ w_orig
        b_orig = dc.delbar_map(p, q) @ w_orig
        c_orig = dc.del_map(p, q + 1) @ b_orig
        for j in range(len(piv)):
            parts.append(
                _RawPart(
                    "square",
                    [
                        ((p, q), w_orig.column(j)),
                        ((p + 1, q), a_orig.column(j)),
                        ((p, q + 1), b_orig.column(j)),
                        ((p + 1, q + 1), c_orig.column(j)),
                    ],
                )
            )
        act[(p, q)] = r00 @ k
        act[(p + 1, q)] = r10 @ c1
        act[(p, q + 1)] = r01 @ c2
        act[(p + 1, q + 1)] = r11 @ c3
    return parts


class _String:
    __slots__ = ("verts",)

    def __init__(self, verts):
        self.verts = verts  # [(bidegree, coords w.r.t. pair-start actives)]

    def sink_terminated(self, k: int) -> bool:
        p0, q0 = self.verts[0][0]
        return p0 + q0 == k + 1


class _Registry:
    """Per-sink bookkeeping during one level pair."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int):
        self.n = n
        self.entries = []  # [ {string, open, closer} ]; vector lives in the string

    def columns(self) -> list[Matrix]:
        return [e["string"].verts[e["vid"]][1] for e in self.entries]


def _phase_b(dc: DoubleComplex, act: dict[Bidegree, Matrix]) -> list[_RawPart]:
    parts: list[_RawPart] = []
    support = dc.bidegrees()
    if not support:
        return parts
    levels = sorted({p + q for (p, q) in support})
    pair_start = {pq: act[pq] for pq in support}
    for k in range(levels[0], levels[-1] + 1):
        sources = sorted(pq for pq in support if pq[0] + pq[1] == k)
        regs: dict[Bidegree, _Registry] = {}
        strings: list[_String] = []
        snapshot = {pq: act[pq] for pq in support}
        for (p, q) in sources:
            sbasis = snapshot[(p, q)]
            ns = sbasis.ncols
            if ns == 0:
                continue
            t_left = (p, q + 1)
            t_right = (p + 1, q)
            tl_basis = snapshot.get(t_left, Matrix.zero(0, 0))
            tr_basis = snapshot.get(t_right, Matrix.zero(0, 0))
            nl, nr = tl_basis.ncols, tr_basis.ncols
            lmat = _restricted(tl_basis, dc.delbar_map(p, q), sbasis)
            rmat = _restricted(tr_basis, dc.del_map(p, q), sbasis)
            reg_l = regs.setdefault(t_left, _Registry(nl)) if nl else None
            ker = kernel(rmat)
            _, piv = rref(rmat)
            candidates = [("ker", ker.column(j)) for j in range(ker.ncols)]
            candidates += [("piv", _unit(ns, c)) for c in piv]
            closers: dict[int, Matrix] = {}
            for kind, v in candidates:
                hit_string = None
                if reg_l is not None and reg_l.n:
                    cols = reg_l.columns()
                    compl = (
                        _unit_complement(hstack(cols))
                        if cols
                        else Matrix.identity(reg_l.n)
                    )
                    basis = hstack(cols + [compl]) if cols else compl
                    binv = inverse(basis)
                    coords = binv @ (lmat @ v)
                    for i, entry in enumerate(reg_l.entries):
                        mu = coords.get(i, 0)
                        if not entry["open"] and mu:
                            v = v - closers[i].scale(mu)
                    lv = lmat @ v
                    coords = binv @ lv
                    if any(
                        coords.get(i, 0)
                        for i, e in enumerate(reg_l.entries)
                        if not e["open"]
                    ):
                        raise InternalError(
                            f"closed component survives clearing at ({p},{q})"
                        )
                    residual = any(
                        coords.get(i, 0) for i in range(len(reg_l.entries), reg_l.n)
                    )
                    hits = [
                        (i, coords.get(i, 0))
                        for i, e in enumerate(reg_l.entries)
                        if e["open"] and coords.get(i, 0)
                    ]
                    if residual:
                        st = _String([(t_left, lv), ((p, q), v)])
                        strings.append(st)
                        reg_l.entries.append({"string": st, "vid": 0, "open": False})
                        closers[len(reg_l.entries) - 1] = v
                        hit_string = st
                    elif len(hits) == 1:
                        i, lam = hits[0]
                        v = v.scale(ONE / lam)
                        st = reg_l.entries[i]["string"]
                        st.verts.append(((p, q), v))
                        reg_l.entries[i]["open"] = False
                        closers[i] = v
                        hit_string = st
                    elif len(hits) >= 2:
                        hit_objs = [
                            (i, lam, reg_l.entries[i]["string"]) for i, lam in hits
                        ]
                        sinks = [
                            h for h in hit_objs if h[2].sink_terminated(k)
                        ]
                        if sinks:
                            ai, alam, a = min(
                                sinks, key=lambda h: (len(h[2].verts), h[0])
                            )
                        else:
                            ai, alam, a = min(
                                hit_objs, key=lambda h: (-len(h[2].verts), h[0])
                            )
                        for bi, blam, b in hit_objs:
                            if bi == ai:
                                continue
                            mu = blam / alam
                            span = min(len(a.verts), len(b.verts))
                            for i in range(1, span + 1):
                                (bid_a, va), (bid_b, vb) = a.verts[-i], b.verts[-i]
                                if bid_a != bid_b:
                                    raise InternalError(
                                        "absorption misaligned at "
                                        f"{bid_a} vs {bid_b}"
                                    )
                                a.verts[-i] = (bid_a, va + vb.scale(mu))
                        v = v.scale(ONE / alam)
                        a.verts.append(((p, q), v))
                        reg_l.entries[ai]["open"] = False
                        closers[ai] = v
                        hit_string = a
                if hit_string is None:
                    hit_string = _String([((p, q), v)])
                    strings.append(hit_string)
                if kind == "piv":
                    rv = rmat @ v
                    if rv.is_zero:
                        raise InternalError(
                            f"frontier collapsed at ({p},{q}) level {k}"
                        )
                    hit_string.verts.append((t_right, rv))
                    reg = regs.setdefault(t_right, _Registry(nr))
                    reg.entries.append(
                        {
                            "string": hit_string,
                            "vid": len(hit_string.verts) - 1,
                            "open": True,
                        }
                    )
        for (p, q) in sources:
            act[(p, q)] = Matrix.zero(dc.spaces[(p, q)], 0)
        for bid, reg in regs.items():
            cols = reg.columns()
            if not cols:
                continue
            compl = _unit_complement(hstack(cols))
            act[bid] = snapshot[bid] @ compl
        for st in strings:
            parts.append(
                _RawPart(
                    "zigzag",
                    [(bid, snapshot[bid] @ vec) for bid, vec in st.verts],
                )
            )
    for pq in support:
        if act[pq].ncols:
            raise InternalError(f"active space not exhausted at {pq}")
    return parts


def _zigzag_shape(verts: list[Bidegree]) -> Zigzag:
    seq = list(verts)
    if seq[-1] < seq[0]:
        seq.reverse()
    steps = tuple(
        "del" if abs(b[0] - a[0]) == 1 else "delbar"
        for a, b in zip(seq, seq[1:])
    )
    return Zigzag(seq[0], steps)


def _shape_of(part: _RawPart) -> Shape:
    if part.kind == "square":
        return Square(*part.verts[0][0])
    return _zigzag_shape([bid for bid, _ in part.verts])


def _sort_key(shape: Shape):
    if isinstance(shape, Square):
        return (0, shape.p, shape.q, ())
    return (1, shape.start[0], shape.start[1], shape.steps)


def decompose(dc: DoubleComplex) -> Decomposition:
    problems = dc.validate()
    if problems:
        raise ValidationError("decompose on invalid complex: " + "; ".join(problems))
    act = {pq: Matrix.identity(dc.spaces[pq]) for pq in dc.spaces}
    raw = _phase_a(dc, act) + _phase_b(dc, act)
    raw.sort(key=lambda part: _sort_key(_shape_of(part)))

    cols: dict[Bidegree, list[Matrix]] = {pq: [] for pq in dc.spaces}
    index: list[dict[Bidegree, int]] = []
    for part in raw:
        where = {}
        for bid, vec in part.verts:
            where[bid] = len(cols[bid])
            cols[bid].append(vec)
        index.append(where)

    model_del: dict[Bidegree, dict[tuple[int, int], Scalar]] = {}
    model_delbar: dict[Bidegree, dict[tuple[int, int], Scalar]] = {}

    def put(table, src, tgt, coeff, part_idx):
        where = index[part_idx]
        table.setdefault(src, {})[(where[tgt], where[src])] = coeff

    for i, part in enumerate(raw):
        if part.kind == "square":
            (p, q) = part.verts[0][0]
            put(model_del, (p, q), (p + 1, q), ONE, i)
            put(model_del, (p, q + 1), (p + 1, q + 1), ONE, i)
            put(model_delbar, (p, q), (p, q + 1), ONE, i)
            put(model_delbar, (p + 1, q), (p + 1, q + 1), MINUS_ONE, i)
        else:
            for (abid, _), (bbid, _) in zip(part.verts, part.verts[1:]):
                src, tgt = (abid, bbid) if sum(abid) < sum(bbid) else (bbid, abid)
                table = model_del if tgt[0] == src[0] + 1 else model_delbar
                put(table, src, tgt, ONE, i)

    change: dict[Bidegree, Matrix] = {}
    inv: dict[Bidegree, Matrix] = {}
    for pq, vs in cols.items():
        n = dc.spaces[pq]
        if len(vs) != n:
            raise InternalError(f"basis count {len(vs)} != dim {n} at {pq}")
        b = hstack(vs)
        try:
            inv[pq] = inverse(b)
        except ValueError:
            raise InternalError(f"adapted basis singular at {pq}") from None
        change[pq] = b

    del_mats: dict[Bidegree, Matrix] = {}
    delbar_mats: dict[Bidegree, Matrix] = {}
    for (p, q) in dc.spaces:
        for tgt, src_map, model, out in (
            ((p + 1, q), dc.del_map(p, q), model_del, del_mats),
            ((p, q + 1), dc.delbar_map(p, q), model_delbar, delbar_mats),
        ):
            if tgt not in dc.spaces:
                continue
            got = inv[tgt] @ src_map @ change[(p, q)]
            want = Matrix(
                dc.spaces[tgt], dc.spaces[(p, q)], model.get((p, q), {})
            )
            if got != want:
                raise InternalError(
                    f"conjugated differential is not block-diagonal at ({p},{q})"
                )
            out[(p, q)] = want

    model_dc = DoubleComplex.build(dict(dc.spaces), del_mats, delbar_mats)
    if all_tables(model_dc) != all_tables(dc):
        raise InternalError("block model changes a cohomology table")

    grouped: list[tuple[Shape, int]] = []
    for part in raw:
        shape = _shape_of(part)
        if grouped and grouped[-1][0] == shape:
            grouped[-1] = (shape, grouped[-1][1] + 1)
        else:
            grouped.append((shape, 1))
    return Decomposition(grouped, change, model_dc)


def page1_by_shape(d: Decomposition) -> bool:
    """Squares, dots and lines only; any longer zigzag breaks page 1."""
    return all(
        isinstance(shape, Square) or len(shape.steps) <= 1 for shape, _ in d.parts
    )


def report_lines(d: Decomposition) -> list[str]:
    out = []
    for shape, mult in d.parts:
        if isinstance(shape, Square):
            out.append(f"square {shape.p} {shape.q} {mult}")
        else:
            tail = "".join(f" {s}" for s in shape.steps)
            out.append(f"zigzag {mult} {shape.start[0]} {shape.start[1]}{tail}")
    return out


# -- random generators ---------------------------------------------------------


def _zigzag_vertices(rng: random.Random, nverts: int, span: int) -> list[Bidegree]:
    p = rng.randint(0, span)
    q = rng.randint(0, span)
    first_del = rng.random() < 0.5
    forward = rng.random() < 0.5
    verts = [(p, q)]
    for i in range(nverts - 1):
        is_del = first_del if i % 2 == 0 else not first_del
        step = (1, 0) if is_del else (0, 1)
        sign = 1 if (forward if i % 2 == 0 else not forward) else -1
        p, q = p + sign * step[0], q + sign * step[1]
        verts.append((p, q))
    dp = -min(p for p, _ in verts)
    dq = -min(q for _, q in verts)
    return [(p + max(dp, 0), q + max(dq, 0)) for p, q in verts]


def _part_complex(rng: random.Random, kind, span: int):
    one = Matrix(1, 1, {(0, 0): ONE})
    if kind == "square":
        p = rng.randint(0, span)
        q = rng.randint(0, span)
        dc = DoubleComplex.build(
            {(p, q): 1, (p + 1, q): 1, (p, q + 1): 1, (p + 1, q + 1): 1},
            {(p, q): one, (p, q + 1): one},
            {(p, q): one, (p + 1, q): Matrix(1, 1, {(0, 0): sc(-1)})},
        )
        return dc, Square(p, q)
    verts = _zigzag_vertices(rng, kind, span)
    spaces = {v: 1 for v in verts}
    dels: dict[Bidegree, Matrix] = {}
    delbars: dict[Bidegree, Matrix] = {}
    for a, b in zip(verts, verts[1:]):
        src, tgt = (a, b) if sum(a) < sum(b) else (b, a)
        (dels if tgt[0] == src[0] + 1 else delbars)[src] = one
    return DoubleComplex.build(spaces, dels, delbars), _zigzag_shape(verts)


def random_zigzag_sum(
    seed: int,
    shapes: tuple = (1, 2, 3, 4, 5, "square"),
    max_parts: int = 6,
    span: int = 3,
) -> tuple[DoubleComplex, list[Shape]]:
    """Deterministic direct sum of randomly placed shapes.

    Integer shapes are zigzag vertex counts; "square" is a square.
    Returns the sum and the multiset of canonical shapes that went in.
    """
    rng = random.Random(seed)
    nparts = rng.randint(1, max_parts)
    built = [_part_complex(rng, rng.choice(shapes), span) for _ in range(nparts)]
    dc, _ = direct_sum([b[0] for b in built])
    return dc, [b[1] for b in built]


def random_page1_complex(seed: int, max_parts: int = 6, span: int = 3) -> DoubleComplex:
    return random_zigzag_sum(seed, (1, 2, "square"), max_parts, span)[0]


def shuffle_basis(dc: DoubleComplex, seed: int) -> DoubleComplex:
    """Conjugate by random unimodular integer matrices, one per bidegree."""
    rng = random.Random(seed)
    u: dict[Bidegree, Matrix] = {}
    uinv: dict[Bidegree, Matrix] = {}
    for pq in dc.bidegrees():
        n = dc.spaces[pq]
        m = Matrix.identity(n)
        rows = m.to_rows()
        for _ in range(2 * n + 2):
            i = rng.randrange(n)
            j = rng.randrange(n)
            op = rng.random()
            if op < 0.6 and i != j:
                lam = sc(rng.choice([-2, -1, 1, 2]))
                rows[i] = [a + lam * b for a, b in zip(rows[i], rows[j])]
            elif op < 0.8:
                rows[i], rows[j] = rows[j], rows[i]
            else:
                rows[i] = [-a for a in rows[i]]
        u[pq] = Matrix.from_rows(rows)
        uinv[pq] = inverse(u[pq])
    dels = {}
    delbars = {}
    for (p, q) in dc.bidegrees():
        if (p + 1, q) in dc.spaces:
            dels[(p, q)] = uinv[(p + 1, q)] @ dc.del_map(p, q) @ u[(p, q)]
        if (p, q + 1) in dc.spaces:
            delbars[(p, q)] = uinv[(p, q + 1)] @ dc.delbar_map(p, q) @ u[(p, q)]
    return DoubleComplex.build(dict(dc.spaces), dels, delbars)
