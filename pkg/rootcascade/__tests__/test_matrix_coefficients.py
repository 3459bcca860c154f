from fractions import Fraction

import pytest

from rootcascade.cascade import compute_cascade
from rootcascade.irreps import build_irrep
from rootcascade.matrix_coefficients import (
    TOP_SYMBOL_CLAUSES,
    analyze_top_symbol,
    codegree,
    default_weights,
    dual_weight,
    lambda_plus_star,
    matrix_coefficient,
    pbw_sequence,
    top_symbol,
    verify_dominant_lattice,
    verify_top_symbol,
)
from rootcascade.polynomials import NilPolynomial
from rootcascade.reports import CheckStatus
from rootcascade.rootsys import RootSystem, build_root_system


@pytest.mark.parametrize(
    "label, fw, expected",
    [
        ("A2", (1, 0), (0, 1)),
        ("A3", (1, 0, 0), (0, 0, 1)),
        ("A3", (0, 1, 0), (0, 1, 0)),
        ("B2", (1, 1), (1, 1)),
    ],
)
def test_dual_weight(label: str, fw, expected):
    rs = build_root_system(label)
    assert rs.fw_coords(dual_weight(rs, rs.weight_from_fw(fw))) == expected


@pytest.mark.parametrize(
    "label, fw, total, coefficients",
    [
        ("A2", (1, 0), (1, 1), (1,)),
        ("B2", (1, 0), (2, 2), (1, 1)),
        ("B2", (0, 1), (1, 2), (1, 0)),
        ("A3", (1, 0, 0), (1, 1, 1), (1, 0)),
        ("A3", (0, 1, 0), (1, 2, 1), (1, 1)),
    ],
)
def test_lambda_plus_star(label: str, fw, total, coefficients):
    rs = build_root_system(label)
    weight, found = lambda_plus_star(rs, rs.weight_from_fw(fw), compute_cascade(rs))
    assert weight.coords == total
    assert found == coefficients


def test_pbw_sequence(b2: RootSystem):
    assert pbw_sequence(b2, (1, 0, 2, 0)) == [(1, 0), (1, 1), (1, 1)]


def test_matrix_coefficient_off_weight_is_zero(a2: RootSystem):
    module = build_irrep(a2, a2.fundamental_weight(0))
    assert matrix_coefficient(module, [(1, 0)]) == 0
    assert matrix_coefficient(module, [(1, 1)]) != 0


def test_matrix_coefficient_requires_positive_roots(a2: RootSystem):
    module = build_irrep(a2, a2.fundamental_weight(0))
    with pytest.raises(ValueError):
        matrix_coefficient(module, [(-1, -1)])


@pytest.mark.parametrize(
    "label, fw, expected",
    [
        ("A2", (1, 0), 1),
        ("A2", (1, 1), 2),
        ("A3", (1, 0, 0), 1),
        ("B2", (1, 0), 2),
        ("B2", (0, 1), 1),
        ("B2", (0, 0), 0),
    ],
)
def test_codegree(label: str, fw, expected: int):
    rs = build_root_system(label)
    assert codegree(build_irrep(rs, rs.weight_from_fw(fw))) == expected


def test_top_symbol_of_standard_module(a2: RootSystem):
    symbol = top_symbol(build_irrep(a2, a2.fundamental_weight(0)))
    ratio = symbol.proportionality(NilPolynomial.variable(a2, (1, 1)))
    assert ratio is not None and ratio != 0


def test_top_symbol_of_trivial_module(b2: RootSystem):
    symbol = top_symbol(build_irrep(b2, b2.weight_from_fw((0, 0))))
    assert symbol == NilPolynomial.constant(b2)


def test_top_symbol_below_codegree_vanishes(b2: RootSystem):
    module = build_irrep(b2, b2.fundamental_weight(0))
    assert top_symbol(module, 1).is_zero


@pytest.mark.parametrize(
    "label, fw",
    [
        ("A2", (1, 0)),
        ("A2", (0, 1)),
        ("A3", (1, 0, 0)),
        ("A3", (0, 1, 0)),
        ("B2", (1, 0)),
        ("B2", (0, 1)),
    ],
)
def test_analyze_top_symbol(label: str, fw):
    rs = build_root_system(label)
    analysis = analyze_top_symbol(rs, rs.weight_from_fw(fw))
    assert analysis.passed
    assert analysis.codegree == sum(analysis.cascade_coeffs)
    assert analysis.invariant is not None
    assert analysis.symbol.proportionality(analysis.invariant) == analysis.proportionality


def test_analysis_payload(b2: RootSystem):
    payload = analyze_top_symbol(b2, b2.fundamental_weight(0)).to_payload()
    dumped = payload.model_dump(by_alias=True)
    assert dumped["lambda_fw"] == [1, 0]
    assert dumped["lambda_star_fw"] == [1, 0]
    assert dumped["lambda_plus_star_fw"] == [2, 0]
    assert dumped["dimension"] == 5
    assert dumped["codegree"] == 2
    assert dumped["cascade_coeffs"] == [1, 1]
    assert dumped["pass"] is True
    assert Fraction(dumped["proportionality"]) != 0


def test_default_weights_respect_bound(g2: RootSystem):
    assert [g2.fw_coords(w) for w in default_weights(g2, bound=10)] == [(1, 0)]


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_verify_top_symbol(label: str):
    rs = build_root_system(label)
    result = verify_top_symbol(rs, seed=0, random_weights=5)
    assert result.status == CheckStatus.PASS, result.model_dump()
    assert result.clause("codegree[1,0]").status == CheckStatus.PASS


def test_verify_top_symbol_skips_large_modules(a2: RootSystem):
    result = verify_top_symbol(
        a2, weights=[a2.weight_from_fw((1, 1))], bound=4, random_weights=1
    )
    for name in TOP_SYMBOL_CLAUSES:
        assert result.clause(f"{name}[1,1]").status == CheckStatus.SKIPPED
    assert result.clause("lambda_plus_star_routes").status == CheckStatus.PASS
    assert result.passed


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_verify_dominant_lattice(label: str):
    result = verify_dominant_lattice(build_root_system(label))
    assert result.status == CheckStatus.PASS, result.model_dump()


def test_verify_dominant_lattice_skips_below_generator_degree(b2: RootSystem):
    result = verify_dominant_lattice(b2, max_degree=1)
    assert result.status != CheckStatus.FAIL, result.model_dump()
    generators = result.clause("generators")
    assert generators.status == CheckStatus.SKIPPED
    assert generators.detail is not None and "Only 1 of 2" in generators.detail
    for name in ("realized", "contained", "self_dual"):
        assert result.clause(name).status == CheckStatus.SKIPPED


@pytest.mark.integration_tests
@pytest.mark.parametrize("label", ["A3", "G2"])
def test_verify_top_symbol_larger(label: str):
    rs = build_root_system(label)
    result = verify_top_symbol(rs, seed=0, random_weights=5)
    assert result.status == CheckStatus.PASS, result.model_dump()
