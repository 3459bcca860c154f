import pytest

from rootcascade.cascade import (
    Cascade,
    NotLocallyHighError,
    NotPositiveRootError,
    cascade_reflection_product,
    cascade_weight,
    compute_cascade,
    is_locally_high,
    lattice_membership,
    max_strongly_orthogonal_cardinality,
    offspring,
    verify_cascade,
)
from rootcascade.reports import CheckStatus
from rootcascade.rootsys import RootSystem, build_root_system

RANK_EIGHT_TYPES = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(3, 9)]
    + [f"D{n}" for n in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


def test_b2_cascade(b2_cascade: Cascade):
    assert b2_cascade.roots == ((1, 2), (1, 0))
    assert [node.parent for node in b2_cascade.nodes] == [None, 0]


def test_a3_cascade(a3_cascade: Cascade):
    assert a3_cascade.roots == ((1, 1, 1), (0, 1, 0))
    assert a3_cascade.chain(1) == [(0, 1, 0), (1, 1, 1)]


def test_g2_cascade(g2_cascade: Cascade):
    assert g2_cascade.roots == ((3, 2), (1, 0))


@pytest.mark.parametrize(
    "label, m",
    [
        ("A1", 1),
        ("A2", 1),
        ("A5", 3),
        ("B3", 3),
        ("C4", 4),
        ("D4", 4),
        ("D5", 4),
        ("E6", 4),
        ("E7", 7),
        ("F4", 4),
        ("G2", 2),
        ("A1xA2", 2),
    ],
)
def test_cascade_size(label: str, m: int):
    assert compute_cascade(build_root_system(label)).m == m


def test_d4_offspring():
    d4 = build_root_system("D4")
    assert set(offspring(d4, (1, 2, 1, 1))) == {
        (1, 0, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    }


def test_offspring_requires_locally_high(b2: RootSystem):
    assert is_locally_high(b2, (1, 2))
    assert not is_locally_high(b2, (1, 1))
    with pytest.raises(NotLocallyHighError):
        offspring(b2, (1, 1))
    with pytest.raises(NotPositiveRootError):
        offspring(b2, (-1, 0))


def test_reverse_siblings_gives_same_roots():
    d6 = build_root_system("D6")
    forward = compute_cascade(d6)
    backward = compute_cascade(d6, reverse_siblings=True)
    assert set(forward.roots) == set(backward.roots)


@pytest.mark.parametrize("label", ["A3", "B2", "D4", "G2"])
def test_reflection_product_is_longest_element(label: str):
    rs = build_root_system(label)
    cascade = compute_cascade(rs)
    assert cascade_reflection_product(rs, cascade) == rs.longest_element()
    reversed_order = list(reversed(range(cascade.m)))
    assert cascade_reflection_product(rs, cascade, reversed_order) == rs.longest_element()


def test_lattice_membership(b2: RootSystem, b2_cascade: Cascade, a2: RootSystem, a2_cascade: Cascade):
    assert lattice_membership(b2, (2, 2), b2_cascade) == (1, 1)
    assert cascade_weight(b2, b2_cascade, (1, 1)) == (2, 2)
    assert lattice_membership(a2, (1, 0), a2_cascade) is None
    assert lattice_membership(a2, (2, 2), a2_cascade) == (2,)


@pytest.mark.parametrize("label, expected", [("A3", 2), ("B2", 2), ("C3", 3), ("G2", 2)])
def test_max_strongly_orthogonal_cardinality(label: str, expected: int):
    assert max_strongly_orthogonal_cardinality(build_root_system(label)) == expected


@pytest.mark.parametrize("label", ["A2", "A3", "B2", "C3", "D4", "G2"])
def test_verify_cascade(label: str):
    result = verify_cascade(build_root_system(label))
    assert result.status == CheckStatus.PASS, result.model_dump()


def test_verify_cascade_skips_cardinality_above_rank_four():
    result = verify_cascade(build_root_system("A5"))
    assert result.clause("maximum_cardinality").status == CheckStatus.SKIPPED
    assert result.passed


@pytest.mark.integration_tests
@pytest.mark.parametrize("label", RANK_EIGHT_TYPES)
def test_verify_cascade_all_types(label: str):
    result = verify_cascade(build_root_system(label))
    assert result.status == CheckStatus.PASS, result.model_dump()
