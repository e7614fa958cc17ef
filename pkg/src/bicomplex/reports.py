"""Report assembly: a machine-readable line grammar plus text decoration.

The machine grammar is the subset of lines that do not start with '#'.
Text output is the same list of lines with comment decoration mixed in,
so stripping comments from a text report recovers the machine report
byte for byte.

Machine lines, in emission order:

  tool_version <semver>
  input_sha256 <hex>
  h <dolbeault|del|bott_chern|aeppli> <p> <q> <dim>
  h de_rham <k> <dim>
  e <col|row> <r> <p> <q> <dim>
  d <col|row> <r> <p> <q> <rank>
  degeneration_F <r>          degeneration_Fbar <r>
  pure <k> <true|false>
  ddbar <b>  page1_def <b>  page1_dims <b>  page1_shape <true|false|na>
  square <p> <q> <mult>
  zigzag <mult> <p0> <q0> <step...>
  e2 <p> <q> <dim>
  asym <p> <q>
  page1_symmetry <b>

Zero dims and zero ranks are omitted everywhere.  Row-filtration pages
(`e row ...`, `d row ...`) are indexed in the transposed lattice: the
row sequence is computed on the transposed complex, so its (p, q) are
the input's (q, p).
"""

from __future__ import annotations

import hashlib

from .complexes import DoubleComplex
from .spectral import SpectralPage, Verdict

TOOL_VERSION = "0.1.0"

TABLE_ORDER = ("dolbeault", "del", "bott_chern", "aeppli")


def _b(flag: bool) -> str:
    return "true" if flag else "false"


def provenance_lines(payload: bytes) -> list[str]:
    return [
        f"tool_version {TOOL_VERSION}",
        f"input_sha256 {hashlib.sha256(payload).hexdigest()}",
    ]


def h_lines(tables: dict[str, dict]) -> list[str]:
    out = []
    for name in TABLE_ORDER:
        for (p, q) in sorted(tables[name]):
            out.append(f"h {name} {p} {q} {tables[name][(p, q)]}")
    for k in sorted(tables["de_rham"]):
        out.append(f"h de_rham {k} {tables['de_rham'][k]}")
    return out


def page_lines(
    pages: list[SpectralPage], which: str, max_page: int | None = None
) -> list[str]:
    out = []
    for page in pages:
        if max_page is not None and page.r > max_page:
            break
        for (p, q) in sorted(page.dims):
            if page.dims[(p, q)]:
                out.append(f"e {which} {page.r} {p} {q} {page.dims[(p, q)]}")
        for (p, q) in sorted(page.dr_ranks):
            if page.dr_ranks[(p, q)]:
                out.append(f"d {which} {page.r} {p} {q} {page.dr_ranks[(p, q)]}")
    return out


def verdict_lines(v: Verdict) -> list[str]:
    out = [
        f"degeneration_F {v.degeneration_page_F}",
        f"degeneration_Fbar {v.degeneration_page_Fbar}",
    ]
    for k in sorted(v.pure):
        out.append(f"pure {k} {_b(v.pure[k])}")
    out.append(f"ddbar {_b(v.ddbar_lemma)}")
    out.append(f"page1_def {_b(v.page1_by_definition)}")
    out.append(f"page1_dims {_b(v.page1_by_dims)}")
    shape = "na" if v.page1_by_shape is None else _b(v.page1_by_shape)
    out.append(f"page1_shape {shape}")
    return out


def grid_comment(label: str, table: dict[tuple[int, int], int]) -> list[str]:
    """Render a bidegree table as comments: p left-to-right, q bottom-up."""
    if not table:
        return [f"# {label}: empty"]
    ps = range(min(p for p, _ in table), max(p for p, _ in table) + 1)
    qs = range(min(q for _, q in table), max(q for _, q in table) + 1)
    width = max(len(str(v)) for v in table.values())
    width = max(width, *(len(str(p)) for p in ps))
    out = [f"# {label}"]
    for q in reversed(qs):
        cells = " ".join(
            str(table.get((p, q), ".")).rjust(width) for p in ps
        )
        out.append(f"#   q={q:<3} {cells}")
    out.append("#   " + " " * 6 + " ".join(f"{p}".rjust(width) for p in ps))
    return out


def space_comment(dc: DoubleComplex) -> list[str]:
    return grid_comment("space dimensions", dict(dc.spaces))


def machine_part(lines: list[str]) -> list[str]:
    return [line for line in lines if not line.startswith("#")]


def render(lines: list[str], fmt: str) -> str:
    if fmt == "machine":
        lines = machine_part(lines)
    return "".join(line + "\n" for line in lines)
