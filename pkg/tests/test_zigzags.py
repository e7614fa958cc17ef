import time
from collections import Counter

import pytest

from bicomplex import (
    Square,
    ValidationError,
    Zigzag,
    all_tables,
    catalog_complex,
    classify,
    decompose,
    inverse,
    page1_by_shape,
    random_page1_complex,
    random_zigzag_sum,
    report_lines,
    shuffle_basis,
)
from conftest import ONE_1x1, staircase
from bicomplex import DoubleComplex


MICRO_PARTS = {
    "dot": ["zigzag 1 0 0"],
    "hline": ["zigzag 1 0 0 del"],
    "vline": ["zigzag 1 0 0 delbar"],
    "square": ["square 0 0 1"],
    "wedge": ["zigzag 1 0 1 delbar del"],
    "vee": ["zigzag 1 0 1 del delbar"],
}


@pytest.mark.parametrize("name", sorted(MICRO_PARTS))
def test_micro_decompositions(name):
    dc, _ = catalog_complex(name)
    d = decompose(dc)
    assert report_lines(d) == MICRO_PARTS[name]
    assert page1_by_shape(d) is (name not in ("wedge", "vee"))


def test_staircase_decompositions():
    assert report_lines(decompose(staircase(4))) == ["zigzag 1 0 1 del delbar del"]
    assert report_lines(decompose(staircase(6))) == [
        "zigzag 1 0 2 del delbar del delbar del"
    ]
    assert not page1_by_shape(decompose(staircase(4)))


def test_zigzag_reported_from_lex_smaller_endpoint():
    # the same staircase shifted: canonical start is the smaller endpoint,
    # never an interior vertex
    d = decompose(staircase(4, start=(3, 5)))
    (shape, mult), = d.parts
    assert isinstance(shape, Zigzag)
    # helper normalizes q down to 0: vertices (3,1),(4,1),(4,0),(5,0)
    assert shape.start == (3, 1)
    assert shape.steps == ("del", "delbar", "del")


def test_decompose_rejects_invalid_complex():
    bad = DoubleComplex.build(
        {(0, 0): 1, (1, 0): 1, (2, 0): 1},
        {(0, 0): ONE_1x1, (1, 0): ONE_1x1},
        {},
    )
    with pytest.raises(ValidationError):
        decompose(bad)


def test_heisenberg_invariant_decomposition_census():
    dc, _ = catalog_complex("heisenberg3-invariant")
    d = decompose(dc)
    kinds = Counter()
    for shape, mult in d.parts:
        if isinstance(shape, Square):
            kinds["square"] += mult
        else:
            kinds[len(shape.steps)] += mult
    assert kinds == {"square": 1, 0: 36, 1: 12}
    assert page1_by_shape(d)
    # bookkeeping: every vertex of every part, with multiplicity, fills the space
    total = sum(
        (4 if isinstance(shape, Square) else len(shape.steps) + 1) * mult
        for shape, mult in d.parts
    )
    assert total == sum(dc.spaces.values()) == 64


def test_change_of_basis_conjugates_to_model():
    dc, _ = catalog_complex("wedge")
    d = decompose(dc)
    for (p, q), basis in d.change_of_basis.items():
        for which, tgt in (("del", (p + 1, q)), ("delbar", (p, q + 1))):
            if tgt not in dc.spaces:
                continue
            m = dc.del_map(p, q) if which == "del" else dc.delbar_map(p, q)
            model_m = (
                d.model.del_map(p, q) if which == "del" else d.model.delbar_map(p, q)
            )
            got = inverse(d.change_of_basis[tgt]) @ m @ basis
            assert got == model_m


def test_model_has_identical_tables():
    for name in ("wedge", "square", "heisenberg3-invariant"):
        dc, _ = catalog_complex(name)
        d = decompose(dc)
        assert all_tables(d.model) == all_tables(dc)


def test_shuffle_basis_is_a_true_isomorphism():
    dc, _ = catalog_complex("heisenberg3-invariant")
    shuffled = shuffle_basis(dc, 5)
    assert shuffled.validate() == []
    assert all_tables(shuffled) == all_tables(dc)
    # and not a no-op
    assert shuffled.del_maps != dc.del_maps


@pytest.mark.parametrize("seed", range(0, 40))
def test_random_sum_recovery(seed):
    dc, expected = random_zigzag_sum(seed)
    shuffled = shuffle_basis(dc, seed + 10**6)
    d = decompose(shuffled)
    got = Counter()
    for shape, mult in d.parts:
        got[shape] += mult
    assert got == Counter(expected)
    v, _, _ = classify(shuffled)
    assert v.page1_by_definition == v.page1_by_dims == page1_by_shape(d)


def test_random_page1_complexes_stay_page1():
    for seed in range(8):
        dc = random_page1_complex(seed)
        d = decompose(dc)
        assert page1_by_shape(d)
        v, _, _ = classify(dc)
        assert v.page1_by_definition


def test_recovery_timing_budget():
    t0 = time.time()
    for seed in range(200, 215):
        dc, expected = random_zigzag_sum(seed)
        d = decompose(shuffle_basis(dc, seed))
        got = Counter()
        for shape, mult in d.parts:
            got[shape] += mult
        assert got == Counter(expected)
    assert time.time() - t0 < 10.0
