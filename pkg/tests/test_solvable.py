import pytest

from bicomplex import (
    LieAlgebra,
    ONE,
    SolvData,
    ValidationError,
    all_tables,
    build_C,
    check_real_structure,
    classify,
    decompose,
    heisenberg3,
    invariant_bicomplex,
    nakamura_preset,
    page1_by_shape,
    random_solvable,
    sl2,
    validate_solv,
    ZERO,
)
from bicomplex.solvable import _zero_key, flagged_subsets, subset_key


def test_validate_rejects_nonsolvable():
    sd = SolvData(sl2(), [_zero_key(3)] * 3, frozenset())
    assert validate_solv(sd) == ["axiom: algebra is not solvable"]
    with pytest.raises(ValidationError):
        build_C(sd)


def test_validate_weight_shape():
    sd = SolvData(heisenberg3(), [_zero_key(3)] * 2, frozenset())
    assert any("weight covectors" in p for p in validate_solv(sd))


def test_validate_weight_compatibility():
    # a_2(X_2) != 0 contradicts X_2 being a weight direction
    bad = SolvData(
        LieAlgebra(2, {(1, 2): {2: ONE}}),
        [(ZERO, ZERO), (ZERO, ONE)],
        frozenset(),
    )
    problems = validate_solv(bad)
    assert "axiom: weight 2 does not kill [X_1,X_2]" in problems
    assert "axiom: weight 2 is nonzero on weighted direction 2" in problems


def test_validate_flag_closure():
    nk = nakamura_preset("identically")
    lopsided = SolvData(nk.algebra, nk.weights, frozenset({frozenset({2})}))
    problems = validate_solv(lopsided)
    assert any("character class" in p for p in problems)
    assert any("character inversion" in p for p in problems)


def test_nakamura_character_classes():
    sd = nakamura_preset("identically")
    zero = _zero_key(3)
    trivial = {s for s in flagged_subsets(sd)}
    assert trivial == {
        frozenset(),
        frozenset({1}),
        frozenset({2, 3}),
        frozenset({1, 2, 3}),
    }
    assert subset_key(sd, frozenset({2})) == (ONE, ZERO, ZERO)
    assert len(flagged_subsets(nakamura_preset("real"))) == 8


NAK_EXPECT = {
    # case: (total dim, h01, h10, ddbar)
    "identically": (48, 1, 3, False),
    "real": (104, 3, 3, False),
}


@pytest.mark.parametrize("case", sorted(NAK_EXPECT))
def test_nakamura_preset_classification(case):
    total, h01, h10, ddbar = NAK_EXPECT[case]
    dc, rs = build_C(nakamura_preset(case))
    assert sum(dc.spaces.values()) == total
    assert check_real_structure(dc, rs) == []
    t = all_tables(dc)
    assert t["dolbeault"].get((0, 1), 0) == h01
    assert t["dolbeault"].get((1, 0), 0) == h10
    v, _, _ = classify(dc, rs)
    assert v.page1_by_definition and v.page1_by_dims
    assert page1_by_shape(decompose(dc))
    assert all(v.pure.values())
    assert v.ddbar_lemma is ddbar


def test_lattice_dependence_is_monotone():
    d_id, _ = build_C(nakamura_preset("identically"))
    d_re, _ = build_C(nakamura_preset("real"))
    t_id, t_re = all_tables(d_id), all_tables(d_re)
    for key, d in t_id["dolbeault"].items():
        assert t_re["dolbeault"].get(key, 0) >= d
    # explicitly flagging every nontrivial class reproduces the full lattice
    nk = nakamura_preset("identically")
    mid = SolvData(
        nk.algebra,
        nk.weights,
        frozenset(
            {frozenset({2}), frozenset({3}), frozenset({1, 2}), frozenset({1, 3})}
        ),
    )
    assert validate_solv(mid) == []
    d_mid, _ = build_C(mid)
    assert all_tables(d_mid) == t_re


def test_zero_weights_reduce_to_invariant_bicomplex():
    g = heisenberg3()
    sd = SolvData(g, [_zero_key(3)] * 3, frozenset())
    assert validate_solv(sd) == []
    dc, _ = build_C(sd)
    ref, _ = invariant_bicomplex(g)
    assert dc.spaces == ref.spaces
    assert all_tables(dc) == all_tables(ref)


def test_nakamura_preset_rejects_unknown_case():
    with pytest.raises(ValidationError):
        nakamura_preset("sometimes")


@pytest.mark.parametrize("seed", range(6))
def test_random_solvable_classifies_page1(seed):
    sd = random_solvable(seed)
    assert validate_solv(sd) == []
    dc, rs = build_C(sd)
    v, _, _ = classify(dc, rs)
    assert v.page1_by_definition and v.page1_by_dims
    assert all(v.pure.values())


def test_random_solvable_rejects_oversize():
    with pytest.raises(ValidationError):
        random_solvable(0, n=7)
