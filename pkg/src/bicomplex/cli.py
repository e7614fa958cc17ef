"""Command-line interface.

Verbs: validate, cohomology, fss, classify, decompose, lie, solv,
splitting, ssmodel, selftest.  Inputs are file paths, `catalog:<name>`
designators for built-in complexes, algebra names (`abelian:<n>`,
`heisenberg3`, `sl2`), or solvable presets (`nakamura:identically`,
`nakamura:real`).

Exit codes: 0 success, 1 parse error (bad arguments, malformed files,
unknown names), 2 validation failure, 3 internal consistency failure
(route disagreement or a broken engine postcondition).

Output is deterministic.  `--format machine` emits only the grammar
lines documented in reports.py; `--format text` adds '#' comments, so
the machine report is exactly the text report with comments stripped.
Additional machine lines produced here: `valid <bool>`, `ce <k> <dim>`,
`semisimple <bool>`, `selftest_seeds <n>`, `selftest <bool>`.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from .catalog import catalog_complex, catalog_names
from .complexes import DoubleComplex, all_tables
from .errors import InternalError, ParseError, ValidationError
from .files import (
    parse_bicomplex,
    parse_lie,
    parse_solv,
    parse_splitting,
    write_bicomplex,
)
from .lie import (
    BettiVector,
    ce_complex,
    is_semisimple,
    lie_by_name,
    semisimple_e2_model,
    validate_lie,
)
from .reports import (
    grid_comment,
    h_lines,
    page_lines,
    provenance_lines,
    render,
    space_comment,
    verdict_lines,
)
from .solvable import build_C, nakamura_preset, random_solvable, validate_solv
from .spectral import classify, spectral_pages, degeneration_page
from .splitting import (
    build_splitting,
    nakamura_splitting_preset,
    validate_splitting,
)
from .zigzags import (
    decompose,
    page1_by_shape,
    random_zigzag_sum,
    report_lines,
    shuffle_basis,
)


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); our parse class is 1
        raise _ArgError(message)


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


# -- input resolution ----------------------------------------------------------


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None


def _load_bicomplex(spec: str):
    """Returns (complex, real structure or None, provenance payload)."""
    if spec.startswith("catalog:"):
        name = spec[len("catalog:") :]
        try:
            dc, rs = catalog_complex(name)
        except (KeyError, ValidationError):
            known = ", ".join(catalog_names())
            raise ParseError(f"unknown catalog entry {name!r} (have: {known})")
        return dc, rs, spec.encode()
    data = _read(spec)
    return parse_bicomplex(data.decode()), None, data


def _checked(dc: DoubleComplex) -> DoubleComplex:
    problems = dc.validate()
    if problems:
        raise ValidationError(problems[0])
    return dc


def _load_lie(spec: str):
    if spec.startswith("abelian:") or spec in ("heisenberg3", "sl2"):
        return lie_by_name(spec), spec.encode()
    data = _read(spec)
    return parse_lie(data.decode()), data


# -- shared report assembly ------------------------------------------------------


def _h_section(dc: DoubleComplex) -> list[str]:
    tables = all_tables(dc)
    lines = space_comment(dc)
    for name in ("dolbeault", "del", "bott_chern", "aeppli"):
        lines += grid_comment(name, tables[name])
    dr = " ".join(f"h^{k}={v}" for k, v in sorted(tables["de_rham"].items()))
    lines += [f"# de_rham: {dr or 'empty'}"]
    lines += h_lines(tables)
    return lines


def _classify_report(dc, rs, payload, max_page):
    verdict, col_pages, row_pages = classify(dc, rs)
    decomp = decompose(dc)
    verdict.page1_by_shape = page1_by_shape(decomp)
    if verdict.page1_by_shape != verdict.page1_by_definition:
        raise InternalError(
            "decomposition shape route disagrees with the degeneration route"
        )
    lines = provenance_lines(payload)
    lines += _h_section(dc)
    lines += ["# column filtration pages"]
    lines += page_lines(col_pages, "col", max_page)
    lines += ["# row filtration pages"]
    lines += page_lines(row_pages, "row", max_page)
    lines += verdict_lines(verdict)
    return lines


# -- verb handlers ---------------------------------------------------------------


def _cmd_validate(args):
    try:
        dc, _, payload = _load_bicomplex(args.input)
    except ValidationError as e:
        return 2, [f"# {e}", "valid false"]
    problems = dc.validate()
    lines = provenance_lines(payload)
    if problems:
        lines += [f"# {p}" for p in problems]
        lines.append("valid false")
        return 2, lines
    lines.append("valid true")
    return 0, lines


def _cmd_cohomology(args):
    dc, _, payload = _load_bicomplex(args.input)
    _checked(dc)
    return 0, provenance_lines(payload) + _h_section(dc)


def _cmd_fss(args):
    dc, _, payload = _load_bicomplex(args.input)
    _checked(dc)
    lines = provenance_lines(payload)
    if args.filtration in ("col", "both"):
        pages = spectral_pages(dc, "col")
        lines += ["# column filtration pages"]
        lines += page_lines(pages, "col", args.max_page)
        lines.append(f"degeneration_F {degeneration_page(pages)}")
    if args.filtration in ("row", "both"):
        pages = spectral_pages(dc, "row")
        lines += ["# row filtration pages"]
        lines += page_lines(pages, "row", args.max_page)
        lines.append(f"degeneration_Fbar {degeneration_page(pages)}")
    return 0, lines


def _cmd_classify(args):
    dc, rs, payload = _load_bicomplex(args.input)
    _checked(dc)
    return 0, _classify_report(dc, rs, payload, args.max_page)


def _cmd_decompose(args):
    dc, _, payload = _load_bicomplex(args.input)
    _checked(dc)
    decomp = decompose(dc)
    return 0, provenance_lines(payload) + report_lines(decomp)


def _cmd_lie(args):
    g, payload = _load_lie(args.input)
    problems = validate_lie(g)
    if problems:
        raise ValidationError(problems[0])
    lines = provenance_lines(payload)
    lines.append(f"dim {g.dim}")
    for k, d in sorted(ce_complex(g).cohomology().items()):
        lines.append(f"ce {k} {d}")
    lines.append(f"semisimple {_bool(is_semisimple(g))}")
    return 0, lines


def _solv_like(args, presets, parse, validate, build):
    spec = args.input
    if spec.startswith("nakamura:"):
        case = spec.split(":", 1)[1]
        if case not in ("identically", "real"):
            raise ParseError(f"unknown preset {spec!r}")
        data, payload = presets(case), spec.encode()
    else:
        raw = _read(spec)
        data, payload = parse(raw.decode()), raw
    problems = validate(data)
    if problems:
        raise ValidationError(problems[0])
    dc, rs = build(data)
    return 0, _classify_report(dc, rs, payload, args.max_page)


def _cmd_solv(args):
    return _solv_like(args, nakamura_preset, parse_solv, validate_solv, build_C)


def _cmd_splitting(args):
    return _solv_like(
        args,
        nakamura_splitting_preset,
        parse_splitting,
        validate_splitting,
        build_splitting,
    )


def _cmd_ssmodel(args):
    g, payload = _load_lie(args.algebra)
    problems = validate_lie(g)
    if problems:
        raise ValidationError(problems[0])
    try:
        numbers = tuple(int(t) for t in args.betti.split(","))
    except ValueError:
        raise ParseError(f"betti must be comma-separated integers: {args.betti!r}")
    betti = BettiVector(numbers)
    model = semisimple_e2_model(g, betti)
    lines = provenance_lines(payload + b" betti " + args.betti.encode())
    lines += grid_comment("E2 model", model.dims)
    for (p, q) in sorted(model.dims):
        lines.append(f"e2 {p} {q} {model.dims[(p, q)]}")
    for (p, q) in model.symmetry_failures:
        lines.append(f"asym {p} {q}")
    lines.append(f"page1_symmetry {_bool(model.page1)}")
    return 0, lines


def _dump_counterexample(dc: DoubleComplex, seed: int) -> str:
    path = Path.cwd() / f"selftest_counterexample_{seed}.bicomplex"
    path.write_text(write_bicomplex(dc))
    return str(path)


def _cmd_selftest(args):
    n = args.seeds
    base = args.seed
    lines = [f"# selftest over seeds {base}..{base + n - 1}"]
    for seed in range(base, base + n):
        dc, expected = random_zigzag_sum(seed)
        shuffled = shuffle_basis(dc, seed + 10**6)
        try:
            decomp = decompose(shuffled)
        except InternalError as e:
            lines.append(f"# seed {seed}: {e}")
            lines.append(f"# counterexample: {_dump_counterexample(shuffled, seed)}")
            lines.append("selftest false")
            return 3, lines
        got = Counter(s for s, m in decomp.parts for _ in range(m))
        verdict, _, _ = classify(shuffled)
        ok = (
            got == Counter(expected)
            and verdict.page1_by_definition
            == verdict.page1_by_dims
            == page1_by_shape(decomp)
        )
        if not ok:
            lines.append(f"# seed {seed}: route disagreement or multiset mismatch")
            lines.append(f"# counterexample: {_dump_counterexample(shuffled, seed)}")
            lines.append("selftest false")
            return 3, lines
    # negative control: one injected wedge must flip the verdict
    from .complexes import direct_sum

    dc, _ = random_zigzag_sum(base, (1, 2, "square"))
    wedged, _ = direct_sum([dc, catalog_complex("wedge")[0]])
    verdict, _, _ = classify(wedged)
    decomp = decompose(wedged)
    if verdict.page1_by_definition or page1_by_shape(decomp):
        lines.append("# negative control failed: wedge not detected")
        lines.append(f"# counterexample: {_dump_counterexample(wedged, base)}")
        lines.append("selftest false")
        return 3, lines
    lines.append("# negative control: injected wedge correctly breaks page-1")
    # solvable spot checks
    for seed in range(base, base + min(5, n)):
        sd = random_solvable(seed)
        dc, rs = build_C(sd)
        verdict, _, _ = classify(dc, rs)
        decomp = decompose(dc)
        if not (
            verdict.page1_by_definition
            and verdict.page1_by_dims
            and page1_by_shape(decomp)
        ):
            lines.append(f"# solvable seed {seed}: page-1 failed")
            lines.append(f"# counterexample: {_dump_counterexample(dc, seed)}")
            lines.append("selftest false")
            return 3, lines
    lines.append("# solvable spot checks passed")
    lines.append(f"selftest_seeds {n}")
    lines.append("selftest true")
    return 0, lines


# -- parser -----------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="bicomplex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=handler)
        p.add_argument("--format", choices=("text", "machine"), default="text")
        return p

    for name, handler in (
        ("validate", _cmd_validate),
        ("cohomology", _cmd_cohomology),
        ("decompose", _cmd_decompose),
    ):
        p = add(name, handler)
        p.add_argument("input", help="bicomplex file or catalog:<name>")

    p = add("fss", _cmd_fss)
    p.add_argument("input", help="bicomplex file or catalog:<name>")
    p.add_argument("--filtration", choices=("col", "row", "both"), default="col")
    p.add_argument("--max-page", type=int, default=None)

    p = add("classify", _cmd_classify)
    p.add_argument("input", help="bicomplex file or catalog:<name>")
    p.add_argument("--max-page", type=int, default=None)

    p = add("lie", _cmd_lie)
    p.add_argument("input", help="algebra file or abelian:<n>|heisenberg3|sl2")

    for name, handler in (("solv", _cmd_solv), ("splitting", _cmd_splitting)):
        p = add(name, handler)
        p.add_argument("input", help="data file or nakamura:<identically|real>")
        p.add_argument("--max-page", type=int, default=None)

    p = add("ssmodel", _cmd_ssmodel)
    p.add_argument("--algebra", required=True)
    p.add_argument("--betti", required=True, help="comma-separated, e.g. 1,2,2,1")

    p = add("selftest", _cmd_selftest)
    p.add_argument("--seeds", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, lines = args.func(args)
    except _ArgError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 1
    except ValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        return 2
    except InternalError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    sys.stdout.write(render(lines, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
