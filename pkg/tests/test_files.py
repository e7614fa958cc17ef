import pytest

from bicomplex import (
    ParseError,
    all_tables,
    catalog_complex,
    catalog_names,
    heisenberg3,
    nakamura_preset,
    nakamura_splitting_preset,
    parse_bicomplex,
    parse_lie,
    parse_solv,
    parse_splitting,
    parse_subalgebra,
    sc,
    write_bicomplex,
)

NAK_SOLV_TEXT = """
# Nakamura-type solvable data
dim 3
bracket 1 2 2 1
bracket 1 3 3 -1
weight 2 1 1
weight 3 1 -1
gamma_trivial identically
"""


def test_bicomplex_round_trip_catalog():
    for name in catalog_names():
        dc, _ = catalog_complex(name)
        text = write_bicomplex(dc)
        again = parse_bicomplex(text)
        assert write_bicomplex(again) == text  # canonical writer, byte for byte
        assert all_tables(again) == all_tables(dc)


def test_bicomplex_parse_tolerates_comments_and_blanks():
    dc = parse_bicomplex("""
# a dot with decoration

space 0 0 1   # trailing comment
""")
    assert dc.spaces == {(0, 0): 1}


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("space 0 0 1\nspace 0 0 2\n", "duplicate space"),
        ("space 0 0 0\n", "dimension must be positive"),
        ("space 0 0 1\ndel 0 0 0 0 1\n", "undeclared space"),
        ("space 0 0 1\nspace 1 0 1\ndel 0 0 0 1 1\n", "out of range"),
        ("space 0 0 1\nspace 1 0 1\ndel 0 0 0 0 1\ndel 0 0 0 0 2\n", "duplicate del"),
        ("spae 0 0 1\n", "unknown record"),
        ("space 0 0 x\n", "expected integer"),
        ("space 0 0 1\nspace 1 0 1\ndel 0 0 0 0 1/0\n", "malformed scalar"),
        ("space 0 0 1\nspace 1 0 1\ndel 0 0 0 0 2+\n", "malformed scalar"),
        ("space 0 0\n", "takes 3 fields"),
    ],
)
def test_bicomplex_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_bicomplex(text)
    assert fragment in str(exc.value)


def test_parse_error_reports_line_number():
    with pytest.raises(ParseError) as exc:
        parse_bicomplex("space 0 0 1\nspace 0 1 1\nspace 0 0 9\n")
    assert str(exc.value).startswith("line 3:")


def test_parse_lie_matches_builtin():
    g = parse_lie("dim 3\nbracket 1 2 3 1\n")
    assert g == heisenberg3()
    # zero coefficients are dropped, dim can come later
    g2 = parse_lie("bracket 1 2 3 0\ndim 3\n")
    assert g2.brackets == {}


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("bracket 1 2 3 1\n", "missing dim"),
        ("dim 3\ndim 3\n", "duplicate dim"),
        ("dim -1\n", "negative dimension"),
        ("dim 2\nbracket 2 1 1 1\n", "out of range"),
        ("dim 3\nbracket 1 2 3 1\nbracket 1 2 3 1\n", "duplicate bracket"),
        ("dim 3\nweight 1 1 1\n", "unknown record"),
    ],
)
def test_parse_lie_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_lie(text)
    assert fragment in str(exc.value)


def test_parse_subalgebra():
    incl = parse_subalgebra("gen 1 0 i\ngen 0 1 0\n", 3)
    assert incl.nrows == 3 and incl.ncols == 2
    assert incl.get(2, 0) == sc(0, 1)
    with pytest.raises(ParseError):
        parse_subalgebra("gen 1 0\n", 3)


def test_parse_solv_matches_preset():
    sd = parse_solv(NAK_SOLV_TEXT)
    ref = nakamura_preset("identically")
    assert sd.algebra == ref.algebra
    assert sd.weights == ref.weights
    assert sd.flags == ref.flags == frozenset()


def test_parse_solv_flag_forms():
    base = "dim 2\nweight 2 1 1\nbracket 1 2 2 1\n"
    assert parse_solv(base + "gamma_trivial all\n").flags == "all"
    sd = parse_solv(base + "gamma_trivial { 2 }\ngamma_trivial { 1 2 }\n")
    assert sd.flags == frozenset({frozenset({2}), frozenset({1, 2})})
    with pytest.raises(ParseError):
        parse_solv(base + "gamma_trivial { 5 }\n")
    with pytest.raises(ParseError):
        parse_solv(base + "gamma_trivial { 1\n")
    with pytest.raises(ParseError):
        parse_solv(base + "weight 3 1 1\n")


NAK_SPLIT_TEXT = """
abelian 1
nilp_dim 2
phi 1 1 0
phi 2 -1 0
gamma_trivial identically
"""


def test_parse_splitting_matches_preset():
    sp = parse_splitting(NAK_SPLIT_TEXT)
    ref = nakamura_splitting_preset("identically")
    assert sp.n_abelian == ref.n_abelian
    assert sp.nilp == ref.nilp
    assert sp.phi == ref.phi
    assert sp.flags == ref.flags


def test_parse_splitting_errors():
    with pytest.raises(ParseError):
        parse_splitting("abelian 1\n")  # no nilp_dim
    with pytest.raises(ParseError):
        parse_splitting("abelian 1\nnilp_dim 1\nphi 1 1\n")  # phi arity
    with pytest.raises(ParseError):
        parse_splitting("abelian 1\nnilp_dim 1\nphi 2 1 0\n")
    with pytest.raises(ParseError):
        parse_splitting("abelian 1\nnilp_dim 2\ngamma_trivial { 1 } { 2 }\n")
    sp = parse_splitting("abelian 1\nnilp_dim 2\ngamma_trivial { 1 } ; { 2 }\n")
    assert sp.flags == frozenset({(frozenset({1}), frozenset({2}))})
