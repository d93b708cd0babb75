import pytest

import b0calc


def test_heisenberg_multipliers():
    h = b0calc.heisenberg(3)
    assert h.order() == 27
    assert b0calc.schur(h) == [3, 3]
    assert b0calc.bogomolov(h) == []
    assert b0calc.exterior_square(h) == [3, 3, 3]


def test_series_is_trivial():
    g = b0calc.series_g(2, 3, 1)
    assert g.order() == 729
    assert b0calc.bogomolov(g) == []


def test_parse_and_describe_roundtrip():
    text = """
    group H {
      prime 3;
      gens a b c;
      central c;
      order a 3; order b 3; order c 3;
      comm [b, a] = c;
    }
    """
    g = b0calc.parse(text)
    assert g.order() == 27
    assert g.hash() == b0calc.heisenberg(3).hash()
    again = b0calc.parse(g.describe("H"))
    assert again.hash() == g.hash()


def test_parse_errors():
    with pytest.raises(Exception) as err:
        b0calc.parse("group H { prime 3; gens a; }")
    assert "order" in str(err.value)


def test_oracle_agrees_on_small_groups():
    for g in [b0calc.abelian(3, [3, 3]), b0calc.heisenberg(3),
              b0calc.metacyclic_split(3, 1, 2, 1)]:
        assert b0calc.bogomolov_oracle(g) == b0calc.bogomolov(g)
        assert b0calc.schur_oracle(g) == b0calc.schur(g)


def test_validate_and_products():
    g = b0calc.direct_product(b0calc.heisenberg(3), b0calc.abelian(3, [3]))
    ok, detail = g.validate()
    assert ok, detail
    assert g.order() == 81
    assert b0calc.bogomolov(g) == []


def test_extraspecial_and_central_product():
    es = b0calc.extraspecial(3, 2, "p")
    assert es.order() == 243
    assert b0calc.bogomolov(es) == []
    c2 = b0calc.corollary_c2(3, 1, 2, 1, 1)
    assert c2.order() == 243
    assert b0calc.bogomolov(c2) == []
