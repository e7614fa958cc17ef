import pytest

from bicomplex import (
    InternalError,
    all_tables,
    build_C,
    catalog_complex,
    classify,
    degeneration_page,
    hodge_pieces,
    invariant_bicomplex,
    lie_by_name,
    nakamura_preset,
    purity_check,
    spectral_pages,
)
from conftest import staircase


def test_first_page_is_dolbeault_everywhere():
    for name in ("dot", "hline", "square", "wedge", "vee", "heisenberg3-invariant"):
        dc, _ = catalog_complex(name)
        pages = spectral_pages(dc, "col")
        assert pages[0].r == 1
        assert pages[0].dims == all_tables(dc)["dolbeault"]


def test_last_page_sums_to_de_rham():
    for name in ("wedge", "vee", "s4", "heisenberg3-invariant"):
        dc = staircase(4) if name == "s4" else catalog_complex(name)[0]
        dr = all_tables(dc)["de_rham"]
        for which in ("col", "row"):
            last = spectral_pages(dc, which)[-1]
            sums = {}
            for (p, q), d in last.dims.items():
                sums[p + q] = sums.get(p + q, 0) + d
            assert sums == dr


def test_hline_pages():
    dc, _ = catalog_complex("hline")
    col = spectral_pages(dc, "col")
    assert col[0].dims == {(0, 0): 1, (1, 0): 1}
    assert col[0].dr_ranks == {(0, 0): 1}
    assert col[1].dims == {}
    assert degeneration_page(col) == 2
    # the del-cohomology vanishes, so the row side is already empty
    row = spectral_pages(dc, "row")
    assert row[0].dims == {}
    assert degeneration_page(row) == 1


def test_wedge_pages_stable_but_impure():
    dc, _ = catalog_complex("wedge")
    col = spectral_pages(dc, "col")
    assert all(pg.dims == {(1, 0): 1} for pg in col)
    assert degeneration_page(col) == 1
    assert purity_check(dc) == {0: True, 1: False}
    hp = hodge_pieces(dc)
    # both unit-square pieces are 1-dimensional yet H^1 is only 1-dimensional
    assert hp.dims == {(0, 1): 1, (1, 0): 1}


def test_row_pages_live_in_the_transposed_lattice():
    dc, _ = catalog_complex("hline")
    tdc, _ = catalog_complex("vline")
    row = spectral_pages(dc, "row")
    col_of_transpose = spectral_pages(tdc, "col")
    assert [pg.dims for pg in row] == [pg.dims for pg in col_of_transpose][: len(row)]


def test_staircase_degeneration_grows_with_length():
    # a longer staircase needs one more page before the ranks die out
    s4, s6 = staircase(4), staircase(6)
    assert degeneration_page(spectral_pages(s4, "col")) == 3
    assert degeneration_page(spectral_pages(s6, "col")) == 4
    assert degeneration_page(spectral_pages(s4, "row")) == 1
    assert degeneration_page(spectral_pages(s6, "row")) == 1
    col = spectral_pages(s4, "col")
    assert col[0].dims == {(0, 1): 1, (2, 0): 1}
    assert col[1].dr_ranks == {(0, 1): 1}  # the d_2 arrow


def test_classify_micro_verdicts():
    expected = {
        # name: (degF, degFbar, ddbar, page1)
        "dot": (1, 1, True, True),
        "hline": (2, 1, False, True),
        "vline": (1, 2, False, True),
        "square": (1, 1, True, True),
        "wedge": (1, 1, False, False),
        "vee": (1, 1, False, False),
    }
    for name, (df, dfb, ddbar, p1) in expected.items():
        dc, _ = catalog_complex(name)
        v, _, _ = classify(dc)
        assert (v.degeneration_page_F, v.degeneration_page_Fbar) == (df, dfb), name
        assert v.ddbar_lemma is ddbar, name
        assert v.page1_by_definition is p1, name
        assert v.page1_by_dims is p1, name
        assert v.page1_by_shape is None  # filled by the decomposition layer
        assert v.e1_degenerate is (df == 1 and dfb == 1)


def test_classify_wedge_fails_dimension_identity_at_zero():
    dc, _ = catalog_complex("wedge")
    t = all_tables(dc)
    lhs = sum(d for (p, q), d in t["aeppli"].items() if p + q == 0)
    lhs += sum(d for (p, q), d in t["bott_chern"].items() if p + q == 0)
    rhs = sum(d for (p, q), d in t["dolbeault"].items() if p + q == 0)
    rhs += sum(d for (p, q), d in t["del"].items() if p + q == 0)
    assert (lhs, rhs) == (1, 0)


def test_heisenberg_invariant_degenerates_at_exactly_two():
    dc, rs = catalog_complex("heisenberg3-invariant")
    v, col, row = classify(dc, rs)
    assert (v.degeneration_page_F, v.degeneration_page_Fbar) == (2, 2)
    assert v.page1_by_definition and v.page1_by_dims
    assert not v.ddbar_lemma
    assert all(v.pure.values())
    e1 = sum(d for (p, q), d in col[0].dims.items() if p + q == 1)
    e2 = sum(d for (p, q), d in col[1].dims.items() if p + q == 1)
    assert (e1, e2) == (5, 4)
    assert all_tables(dc)["de_rham"][1] == 4


def test_abelian_invariant_degenerates_at_one():
    for n in (1, 2, 3):
        dc, rs = catalog_complex(f"abelian:{n}-invariant")
        v, _, _ = classify(dc, rs)
        assert v.e1_degenerate and v.ddbar_lemma


def test_mirror_row_pages_match_honest_recomputation():
    for make in (
        lambda: catalog_complex("heisenberg3-invariant"),
        lambda: invariant_bicomplex(lie_by_name("sl2")),
        lambda: build_C(nakamura_preset("identically")),
    ):
        dc, rs = make()
        _, _, mirrored = classify(dc, rs)
        _, _, honest = classify(dc, rs, force_row=True)
        assert [pg.dims for pg in mirrored] == [pg.dims for pg in honest]
        assert degeneration_page(mirrored) == degeneration_page(honest)


def test_spectral_pages_rejects_unknown_filtration():
    dc, _ = catalog_complex("dot")
    with pytest.raises((ValueError, InternalError)):
        spectral_pages(dc, "diag")
