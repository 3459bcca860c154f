from fractions import Fraction

import pytest

from rootcascade.rootsys import (
    CartanType,
    InadmissibleCartanTypeError,
    NotDominantError,
    RootSystem,
    RootSystemMismatchError,
    build_root_system,
    parse_cartan_type,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("B3", (CartanType(family="B", rank=3),)),
        ("g2", (CartanType(family="G", rank=2),)),
        (
            "A1xA2",
            (CartanType(family="A", rank=1), CartanType(family="A", rank=2)),
        ),
    ],
)
def test_parse_cartan_type(text: str, expected: tuple[CartanType, ...]):
    assert parse_cartan_type(text) == expected


@pytest.mark.parametrize("text", ["Z9", "E5", "D3", "B1", "", "A"])
def test_parse_cartan_type_rejects(text: str):
    with pytest.raises(InadmissibleCartanTypeError):
        parse_cartan_type(text)


def test_b2_and_c2_both_admitted():
    assert build_root_system("B2").label == "B2"
    assert build_root_system("C2").label == "C2"


@pytest.mark.parametrize(
    "label, count",
    [
        ("A1", 1),
        ("A2", 3),
        ("A3", 6),
        ("B2", 4),
        ("B3", 9),
        ("C3", 9),
        ("D4", 12),
        ("G2", 6),
        ("F4", 24),
        ("E6", 36),
        ("A1xA1", 2),
    ],
)
def test_positive_root_count(label: str, count: int):
    assert len(build_root_system(label).positive_roots) == count


@pytest.mark.parametrize(
    "label, highest",
    [
        ("A3", (1, 1, 1)),
        ("B2", (1, 2)),
        ("B3", (1, 2, 2)),
        ("C3", (2, 2, 1)),
        ("D4", (1, 2, 1, 1)),
        ("G2", (3, 2)),
        ("F4", (2, 3, 4, 2)),
    ],
)
def test_highest_root(label: str, highest: tuple[int, ...]):
    rs = build_root_system(label)
    assert rs.highest_root(frozenset(range(rs.rank))) == highest
    assert rs.positive_roots[-1] == highest


def test_positive_root_order(b2: RootSystem):
    assert b2.positive_roots == ((1, 0), (0, 1), (1, 1), (1, 2))


def test_cartan_matrix(b2: RootSystem, g2: RootSystem):
    assert b2.cartan_matrix == ((2, -1), (-2, 2))
    assert g2.cartan_matrix == ((2, -3), (-1, 2))


def test_long_roots_have_norm_two(b2: RootSystem, g2: RootSystem):
    assert b2.norm((1, 0)) == 2
    assert b2.norm((0, 1)) == 1
    assert b2.norm((1, 2)) == 2
    assert g2.norm((3, 2)) == 2
    assert g2.norm((1, 0)) == Fraction(2, 3)


def test_fundamental_weights(a2: RootSystem):
    assert a2.fundamental_weight(0).coords == (Fraction(2, 3), Fraction(1, 3))
    assert a2.fw_coords(a2.fundamental_weight(1)) == (0, 1)
    assert a2.rho.coords == (1, 1)


def test_longest_element(a2: RootSystem, b2: RootSystem):
    assert a2.apply_matrix(a2.longest_element(), (1, 0)) == (0, -1)
    assert b2.longest_element() == ((-1, 0), (0, -1))


def test_longest_element_negates_positive_roots():
    rs = build_root_system("D5")
    longest = rs.longest_element()
    for root in rs.positive_roots:
        assert rs.is_positive(tuple(-c for c in rs.apply_matrix(longest, root)))


def test_strong_orthogonality(b2: RootSystem):
    assert b2.is_strongly_orthogonal((1, 0), (1, 2))
    assert not b2.is_strongly_orthogonal((1, 0), (0, 1))
    # orthogonal short roots whose sum is a root
    assert b2.inner_product((0, 1), (1, 1)) == 0
    assert not b2.is_strongly_orthogonal((0, 1), (1, 1))


def test_string_length(b2: RootSystem):
    assert b2.string_length((0, 1), (1, 2)) == 2
    assert b2.string_length((1, 0), (0, 1)) == 0


def test_reflection(b2: RootSystem):
    assert b2.reflect_root((0, 1), (1, 0)) == (1, 2)
    assert b2.reflect_root((1, 0), (0, 1)) == (1, 1)


def test_require_dominant(a2: RootSystem):
    with pytest.raises(NotDominantError):
        a2.require_dominant(a2.weight_from_fw([-1, 0]))
    assert a2.require_dominant(a2.weight_from_fw([1, 1])).coords == (1, 1)


def test_mismatched_weights(a2: RootSystem, b2: RootSystem):
    with pytest.raises(RootSystemMismatchError):
        a2.coords(b2.rho)
    with pytest.raises(RootSystemMismatchError):
        a2.coords((1, 2, 3))


def test_product_components():
    rs = build_root_system("A1xA2")
    assert rs.components == (frozenset({0}), frozenset({1, 2}))
    assert rs.inner_product((1, 0, 0), (0, 1, 0)) == 0
