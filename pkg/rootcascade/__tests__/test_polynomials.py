from fractions import Fraction

import pytest

from rootcascade.coadjoint import NilVector
from rootcascade.polynomials import (
    NilPolynomial,
    monomial_weight,
    monomials_of_degree,
    monomials_of_weight,
)
from rootcascade.rootsys import RootSystem


def test_variable_weight(a2: RootSystem):
    theta = NilPolynomial.variable(a2, (1, 1))
    assert theta.degree == 1
    assert theta.weight is not None
    assert theta.weight.coords == (1, 1)


def test_mixed_weights_have_no_weight(a2: RootSystem):
    mixed = NilPolynomial.variable(a2, (1, 0)) + NilPolynomial.variable(a2, (0, 1))
    assert mixed.weight is None
    assert mixed.is_homogeneous


def test_evaluate(b2: RootSystem):
    # c_α1 c_θ + c_{α1+α2}^2
    polynomial = NilPolynomial.from_terms(b2, {(1, 0, 0, 1): 1, (0, 0, 2, 0): 1})
    point = NilVector.build({(1, 0): 2, (1, 1): 3, (1, 2): -1})
    assert polynomial.evaluate(point) == Fraction(-2 + 9)


def test_diff(b2: RootSystem):
    polynomial = NilPolynomial.from_terms(b2, {(1, 0, 0, 1): 1, (0, 0, 2, 0): 1})
    assert polynomial.diff((1, 1)) == NilPolynomial.variable(b2, (1, 1)).scale(2)
    assert polynomial.diff((0, 1)).is_zero


def test_normalized_and_proportionality(a3: RootSystem):
    polynomial = NilPolynomial.from_terms(
        a3, {(0, 1, 0, 0, 0, 1): -3, (0, 0, 0, 1, 1, 0): 3}
    )
    normalized = polynomial.normalized()
    assert normalized.ordered_terms()[0] == ((0, 1, 0, 0, 0, 1), Fraction(1))
    assert polynomial.proportionality(normalized) == Fraction(-3)
    assert polynomial.proportionality(NilPolynomial.variable(a3, (1, 1, 1))) is None
    assert NilPolynomial.constant(a3, 0).proportionality(normalized) == 0


def test_arithmetic(a2: RootSystem):
    theta = NilPolynomial.variable(a2, (1, 1))
    assert (theta**2).terms == {(0, 0, 2): Fraction(1)}
    assert (theta * theta - theta**2).is_zero
    assert NilPolynomial.constant(a2).degree == 0


def test_terms_payload(b2: RootSystem):
    polynomial = NilPolynomial.from_terms(b2, {(1, 0, 0, 1): 1, (0, 0, 2, 0): -1})
    payload = [term.model_dump() for term in polynomial.to_terms_payload()]
    assert payload == [
        {"exps": {"1,0": 1, "1,2": 1}, "coeff": "1"},
        {"exps": {"1,1": 2}, "coeff": "-1"},
    ]


def test_monomial_weight(b2: RootSystem):
    assert monomial_weight(b2, (1, 0, 0, 1)) == (2, 2)


@pytest.mark.parametrize(
    "degree, weight, expected",
    [
        (1, (1, 1), [(0, 0, 1)]),
        (2, (1, 1), [(1, 1, 0)]),
        (3, (1, 1), []),
        (0, (0, 0), [(0, 0, 0)]),
    ],
)
def test_monomials_of_weight_a2(a2: RootSystem, degree, weight, expected):
    assert monomials_of_weight(a2, degree, weight) == expected


def test_monomials_of_weight_b2(b2: RootSystem):
    assert monomials_of_weight(b2, 2, (2, 2)) == [(1, 0, 0, 1), (0, 0, 2, 0)]
    assert monomials_of_weight(b2, 2, (-1, 0)) == []


def test_monomials_of_degree_matches_weight_search(a3: RootSystem):
    grouped = monomials_of_degree(a3, 3)
    assert sum(len(group) for group in grouped.values()) == 56
    for weight, monomials in grouped.items():
        assert monomials == monomials_of_weight(a3, 3, weight)
