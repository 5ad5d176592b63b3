import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qserre import algebras as A
from qserre.field import ONE, RatF
from qserre.pbw import (AlgebraSpec, Element, SpecDocumentError, SpecError, binomial_growth, dimension_count,
                        ore_data, spec_from_json, spec_to_json, validate_spec)

from strategies import elements

P = RatF.parse
U = A.build_u().spec


def test_defining_products():
    # rearranged by hand from X1X4 = r^2 X4X1 + X2 and X2X4 = s^2 X4X2 - s^2 X3
    assert U.parse("X4 X1") == U.parse("r^-2 X1 X4 - r^-2 X2")
    assert U.parse("X4 X2") == U.parse("s^-2 X2 X4 + X3")
    assert U.parse("X2 X1") == U.parse("s^-2 X1 X2")
    assert U.parse("X4 X3") == U.parse("r^-1 s^-1 X3 X4")
    assert str(U.parse("X4 X1")) == "(-1/r^2)*X2 + (1/r^2)*X1*X4"


def test_powers_and_degrees():
    x = U.parse("X4^2 X1")
    assert x.degree() == 3
    assert x.weight() == (1, 2)
    assert U.parse("(X1 + X4)^2") == U.parse("X1^2 + X1 X4 + X4 X1 + X4^2")


def test_confluence_of_u():
    rep = validate_spec(U)
    assert rep.confluent
    assert len(rep.checks) == 4
    assert [c.word for c in rep.triples()] == ["X4 X3 X2", "X4 X3 X1", "X4 X2 X1", "X3 X2 X1"]


def test_q41_change_breaks_confluence():
    bad = U.with_changes(q={(3, 0): P("r^-1")})
    rep = validate_spec(bad)
    assert not rep.confluent
    assert [c.word for c in rep.failures] == ["X4 X2 X1"]


@pytest.mark.parametrize("a", ["-r^-2", "-r^-1", "1", "r^3 s"])
def test_any_scalar_in_c41_is_confluent(a):
    # the overlaps do not see the scalar; only the defining relations pin it down
    alt = U.with_changes(c={(3, 0): U.parse(f"({a}) X2").terms})
    assert validate_spec(alt).confluent
    lemma = alt.parse("X1 X4 - r^2 X4 X1 - X2")
    assert (not lemma) == (a == "-r^-2")


def test_localized_chain_is_confluent():
    for alg in A.build_chain():
        assert validate_spec(alg.spec).confluent


def test_ore_data_values():
    od2, od3, od4 = (ore_data(U, j) for j in (2, 3, 4))
    assert od2.tau == {"X1": P("s^-2")}
    assert od3.tau == {"X1": P("r^-2 s^-2"), "X2": P("r^-1 s^-1")}
    assert od4.tau == {"X1": P("r^-2"), "X2": P("s^-2"), "X3": P("r^-1 s^-1")}
    assert od4.delta["X1"] == U.parse("-r^-2 X2")
    assert od4.delta["X2"] == U.gen("X3")
    assert not od4.delta["X3"] and not od2.delta["X1"]
    assert all(od.consistent for od in (od2, od3, od4))
    with pytest.raises(ValueError):
        ore_data(U, 1)


def test_dimension_count_matches_binomials():
    for n in range(9):
        assert dimension_count(U, n) == binomial_growth(4, n) == math.comb(n + 4, 4)


def test_laurent_inverses():
    b2 = A.build_chain()[2].spec
    x1, x2, x3, x4 = b2.gens()
    assert x1 * x1**-1 == 1 and x3**-1 * x3 == 1
    # X4 X3^-1 follows from X3 X4 = rs X4 X3
    assert x4 * x3**-1 == P("r s") * x3**-1 * x4
    with pytest.raises(ValueError):
        x4.inverse()
    with pytest.raises(ValueError):
        (x1 + x2).inverse()


def test_spec_structure_errors():
    with pytest.raises(SpecError):
        AlgebraSpec(("a", "a"))
    with pytest.raises(SpecError):
        AlgebraSpec(("a", "b"), q={(1, 0): 0})
    with pytest.raises(SpecError):
        AlgebraSpec(("a", "b", "c"), c={(2, 0): {(0, 2, 0): ONE}})
    with pytest.raises(SpecError):
        AlgebraSpec(("a", "b"), c={(1, 0): {(0, 0): ONE}}, invertible=(True, True))
    with pytest.raises(SpecError):
        AlgebraSpec(("a", "b", "c"), c={(2, 0): {(0, 1, 0): ONE}}, weights=[(1, 0), (1, 0), (0, 1)])


def test_json_round_trip():
    text = spec_to_json(U)
    assert spec_from_json(text) == U
    doc = json.loads(text)
    assert doc["c"]["(4,1)"] == "(-1/r^2)*X2"


def test_json_errors_report_position():
    with pytest.raises(SpecDocumentError, match=r":2:"):
        spec_from_json('{"vars": ["a"],\n  "q": }', "f.json")
    with pytest.raises(SpecDocumentError, match="q"):
        spec_from_json('{"vars": ["a", "b"], "q": {"(2,1)": "r +"}}', "f.json")
    with pytest.raises(SpecDocumentError, match="vars"):
        spec_from_json('{"q": {}}', "f.json")


@given(elements(U), elements(U), elements(U))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements(A.build_chain()[2].spec, 1, 3, window=1), elements(A.build_chain()[2].spec, 1, 3, window=1),
       elements(A.build_chain()[2].spec, 1, 3, window=1))
def test_associativity_with_inverses(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(st.tuples(*[st.integers(0, 2)] * 4), st.tuples(*[st.integers(0, 2)] * 4))
def test_weight_additivity(m1, m2):
    prod = U.monomial(m1) * U.monomial(m2)
    want = tuple(a + b for a, b in zip(U.weight_of(m1), U.weight_of(m2)))
    assert prod.weight() == want


@given(st.tuples(*[st.integers(-2, 2)] * 4))
def test_torus_monomials_are_units(m):
    q4 = A.build_q4().spec
    x = q4.monomial(m)
    inv = x.inverse()
    assert x * inv == 1 and inv * x == 1


def test_element_helpers():
    x = U.parse("2 X1 X4 + 3")
    assert x.coeff((0, 0, 0, 0)) == 3
    assert not x.is_scalar() and U.scalar(5).is_scalar()
    assert x.eval(1, 1) == {(1, 0, 0, 1): 2, (0, 0, 0, 0): 3}
    assert set(x.weight_components()) == {(0, 0), (1, 1)}
    assert isinstance(x * 2, Element) and (x / 2) * 2 == x
