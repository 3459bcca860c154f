from fractions import Fraction
from random import Random

import pytest

from rootcascade.cascade import Cascade, compute_cascade
from rootcascade.chevalley import LieElement
from rootcascade.coadjoint import (
    NilVector,
    TorusElement,
    TorusPoint,
    adjoint_torus,
    b_tangent_dimension,
    coadjoint_action,
    coadjoint_group_action,
    exponential_action,
    isotropy_algebra,
    orbit_dimension,
    project_p,
    random_nil_vector,
    torus_action,
    verify_isotropy,
    verify_open_orbit,
    verify_torus_equivariance,
)
from rootcascade.reports import CheckStatus
from rootcascade.rootsys import RootSystem, build_root_system

DESK_TYPES = ["A2", "A3", "B2", "C3", "G2"]


def test_nil_vector_drops_zeros():
    vector = NilVector.build({(1, 0): 0, (0, 1): 3})
    assert vector.coeffs == {(0, 1): Fraction(3)}
    assert (vector + vector.scale(-1)).is_zero


def test_nil_vector_sides_do_not_mix():
    with pytest.raises(ValueError):
        NilVector.build({(1, 0): 1}, side="n") + NilVector.build({(1, 0): 1})


def test_torus_point_rejects_zero():
    with pytest.raises(ValueError):
        TorusPoint({(1, 1): Fraction(0)})


def test_project_p(a2: RootSystem):
    x = LieElement(root_part={(1, 0): Fraction(1), (-1, -1): Fraction(2)})
    assert project_p(a2, x) == NilVector.build({(1, 1): 2})


def test_coadjoint_action_lowers_height(a2: RootSystem):
    # [e_α1, e_−θ] = N(α1, −θ) e_−α2
    basis = a2.chevalley_constants()
    image = coadjoint_action(
        a2, NilVector.build({(1, 0): 1}, side="n"), NilVector.build({(1, 1): 1})
    )
    assert image == NilVector.build({(0, 1): basis.constant((1, 0), (-1, -1))})


def test_coadjoint_action_requires_n(a2: RootSystem):
    with pytest.raises(ValueError):
        coadjoint_action(a2, NilVector.build({(1, 0): 1}), NilVector.build({(1, 1): 1}))


def test_isotropy_of_theta(a2: RootSystem):
    basis = isotropy_algebra(a2, NilVector.build({(1, 1): 1}))
    assert len(basis) == 1
    assert set(basis[0].coeffs) == {(1, 1)}
    assert orbit_dimension(a2, NilVector.build({(1, 1): 1})) == 2


def test_isotropy_of_b2_torus_point(b2: RootSystem, b2_cascade: Cascade):
    tau = TorusPoint({(1, 2): Fraction(3), (1, 0): Fraction(-2)}).to_nil_vector()
    basis = isotropy_algebra(b2, tau)
    support = {root for vector in basis for root in vector.coeffs}
    assert len(basis) == b2_cascade.m
    assert support == set(b2_cascade.roots)
    assert b_tangent_dimension(b2, tau) == len(b2.positive_roots)


def test_zero_has_full_isotropy(b2: RootSystem):
    assert orbit_dimension(b2, NilVector()) == 0


def test_exponential_action_is_invertible(b2: RootSystem):
    rng = Random(3)
    x = random_nil_vector(b2, rng, side="n", bound=2)
    v = random_nil_vector(b2, rng)
    moved = exponential_action(b2, x, v)
    assert exponential_action(b2, x.scale(-1), moved) == v


def test_group_action_composes(a3: RootSystem):
    rng = Random(5)
    x = random_nil_vector(a3, rng, side="n", bound=2)
    y = random_nil_vector(a3, rng, side="n", bound=2)
    v = random_nil_vector(a3, rng)
    assert coadjoint_group_action(a3, [x, y], v) == exponential_action(
        a3, x, exponential_action(a3, y, v)
    )


def test_torus_equivariance_identity(b2: RootSystem):
    torus = TorusElement((Fraction(2), Fraction(-1, 3)))
    x = NilVector.build({(0, 1): 1, (1, 1): -2}, side="n")
    v = NilVector.build({(1, 0): 1, (0, 1): 2, (1, 1): -1, (1, 2): 4})
    left = torus_action(torus, coadjoint_group_action(b2, [x], v))
    right = coadjoint_group_action(b2, [adjoint_torus(torus, x)], torus_action(torus, v))
    assert left == right


def test_torus_element_rejects_zero():
    with pytest.raises(ValueError):
        TorusElement((Fraction(1), Fraction(0)))


@pytest.mark.parametrize("label", DESK_TYPES)
def test_verify_isotropy(label: str):
    rs = build_root_system(label)
    result = verify_isotropy(rs, compute_cascade(rs), seed=0)
    assert result.status == CheckStatus.PASS, result.model_dump()


@pytest.mark.parametrize("label", DESK_TYPES)
def test_verify_open_orbit(label: str):
    rs = build_root_system(label)
    result = verify_open_orbit(rs, compute_cascade(rs), seed=0)
    assert result.status == CheckStatus.PASS, result.model_dump()


@pytest.mark.parametrize("label", DESK_TYPES)
def test_verify_torus_equivariance(label: str):
    rs = build_root_system(label)
    result = verify_torus_equivariance(rs, compute_cascade(rs), seed=0)
    assert result.status == CheckStatus.PASS, result.model_dump()
