"""
Polynomial functions on n_−.

The coordinate c_φ reads off the coefficient of e_{−φ}; as an element of S(n)
it is e_φ, so a monomial Π c_φ^{γ(φ)} has H-weight Σ γ(φ) φ. Polynomials are
sympy sparse polynomials over QQ with one generator per positive root, in
RootSystem order.

"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import TYPE_CHECKING, Iterator, Mapping, Sequence

from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from rootcascade.linalg import from_qq, to_qq
from rootcascade.rootsys import Root, RootSystem, Weight, format_root, subtract
from rootcascade.serialization import TermPayload

if TYPE_CHECKING:
    from rootcascade.coadjoint import NilVector

Exponents = tuple[int, ...]


@lru_cache(maxsize=None)
def coordinate_ring(size: int) -> PolyRing:
    polynomial_ring, *_ = ring(",".join(f"c{i}" for i in range(size)), QQ)
    return polynomial_ring


@dataclass(frozen=True, eq=False)
class NilPolynomial:
    """
    A polynomial in the coordinates c_φ, φ ∈ Δ₊.

    ```python {{sticky: True}}
    a2 = build_root_system("A2")
    theta = NilPolynomial.variable(a2, (1, 1))
    theta.weight            # θ
    theta.evaluate(tau)     # coefficient of e_{−θ} in tau
    ```
    """

    root_system: RootSystem
    poly: PolyElement

    @classmethod
    def ring_for(cls, root_system: RootSystem) -> PolyRing:
        return coordinate_ring(len(root_system.positive_roots))

    @classmethod
    def from_terms(
        cls, root_system: RootSystem, terms: Mapping[Exponents, Fraction | int]
    ) -> "NilPolynomial":
        polynomial_ring = cls.ring_for(root_system)
        return cls(
            root_system,
            polynomial_ring.from_dict(
                {monomial: to_qq(value) for monomial, value in terms.items() if value}
            ),
        )

    @classmethod
    def constant(cls, root_system: RootSystem, value: Fraction | int = 1) -> "NilPolynomial":
        return cls(root_system, cls.ring_for(root_system).ground_new(to_qq(value)))

    @classmethod
    def variable(cls, root_system: RootSystem, root: Root) -> "NilPolynomial":
        return cls(
            root_system, cls.ring_for(root_system).gens[root_system.positive_index[root]]
        )

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        return {monomial: from_qq(value) for monomial, value in self.poly.items()}

    def ordered_terms(self) -> list[tuple[Exponents, Fraction]]:
        """
        Terms from the lexicographically largest exponent vector down.

        """
        return [(monomial, from_qq(value)) for monomial, value in self.poly.terms()]

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def degree(self) -> int:
        return max((sum(monomial) for monomial in self.poly), default=0)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(monomial) for monomial in self.poly}) <= 1

    @property
    def weight(self) -> Weight | None:
        """
        The common H-weight of all monomials, or None if they disagree or the
        polynomial is zero.

        """
        weights = {monomial_weight(self.root_system, monomial) for monomial in self.poly}
        if len(weights) != 1:
            return None
        return self.root_system.weight(weights.pop())

    def evaluate(self, vector: "NilVector") -> Fraction:
        positive = self.root_system.positive_roots
        values = [vector.coefficient(phi) for phi in positive]
        total = Fraction(0)
        for monomial, coefficient in self.terms.items():
            term = coefficient
            for value, exponent in zip(values, monomial):
                if exponent:
                    term *= value**exponent
            total += term
        return total

    def diff(self, root: Root) -> "NilPolynomial":
        generator = self.poly.ring.gens[self.root_system.positive_index[root]]
        return NilPolynomial(self.root_system, self.poly.diff(generator))

    def normalized(self) -> "NilPolynomial":
        """
        Scaled so the lexicographically leading coefficient is 1.

        """
        if self.is_zero:
            return self
        return NilPolynomial(self.root_system, self.poly.monic())

    def proportionality(self, other: "NilPolynomial") -> Fraction | None:
        """
        The scalar c with self = c · other, or None if there is none.

        """
        if other.is_zero:
            return Fraction(0) if self.is_zero else None
        ratio = self.poly.LC / other.poly.LC
        if self.poly != other.poly.mul_ground(ratio):
            return None
        return from_qq(ratio)

    def scale(self, factor: Fraction | int) -> "NilPolynomial":
        return NilPolynomial(self.root_system, self.poly.mul_ground(to_qq(factor)))

    def __add__(self, other: "NilPolynomial") -> "NilPolynomial":
        return NilPolynomial(self.root_system, self.poly + other.poly)

    def __sub__(self, other: "NilPolynomial") -> "NilPolynomial":
        return NilPolynomial(self.root_system, self.poly - other.poly)

    def __mul__(self, other: "NilPolynomial") -> "NilPolynomial":
        return NilPolynomial(self.root_system, self.poly * other.poly)

    def __pow__(self, exponent: int) -> "NilPolynomial":
        return NilPolynomial(self.root_system, self.poly**exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NilPolynomial):
            return NotImplemented
        return (
            self.root_system.label == other.root_system.label and self.poly == other.poly
        )

    def to_terms_payload(self) -> list[TermPayload]:
        positive = self.root_system.positive_roots
        return [
            TermPayload(
                exps={
                    format_root(positive[index]): exponent
                    for index, exponent in enumerate(monomial)
                    if exponent
                },
                coeff=str(coefficient),
            )
            for monomial, coefficient in self.ordered_terms()
        ]

    def __repr__(self) -> str:
        return f"NilPolynomial({self.root_system.label}, {self.poly})"


def monomial_weight(root_system: RootSystem, monomial: Sequence[int]) -> Root:
    total = [0] * root_system.rank
    for exponent, root in zip(monomial, root_system.positive_roots):
        if exponent:
            for i, c in enumerate(root):
                total[i] += exponent * c
    return tuple(total)


def monomials_of_degree(root_system: RootSystem, degree: int) -> dict[Root, list[Exponents]]:
    """
    All degree-d monomials grouped by weight, weights in increasing order.

    """
    size = len(root_system.positive_roots)
    grouped: dict[Root, list[Exponents]] = {}
    for indices in combinations_with_replacement(range(size), degree):
        monomial = [0] * size
        for index in indices:
            monomial[index] += 1
        exponents = tuple(monomial)
        grouped.setdefault(monomial_weight(root_system, exponents), []).append(exponents)
    return {weight: sorted(grouped[weight], reverse=True) for weight in sorted(grouped)}


def monomials_of_weight(
    root_system: RootSystem, degree: int, weight: Sequence[int | Fraction]
) -> list[Exponents]:
    """
    Degree-d monomials of the given weight, lexicographically decreasing.

    """
    if any(Fraction(c).denominator != 1 or c < 0 for c in weight):
        return []
    target = tuple(int(c) for c in weight)
    positive = root_system.positive_roots
    tallest = max(root_system.height(root) for root in positive)

    def extend(remaining: int, rest: Root, start: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            if not any(rest):
                yield ()
            return
        for index in range(start, len(positive)):
            left = subtract(rest, positive[index])
            if any(c < 0 for c in left):
                continue
            height = sum(left)
            if height < remaining - 1 or height > (remaining - 1) * tallest:
                continue
            for tail in extend(remaining - 1, left, index):
                yield (index,) + tail

    monomials: list[Exponents] = []
    for indices in extend(degree, target, 0):
        monomial = [0] * len(positive)
        for index in indices:
            monomial[index] += 1
        monomials.append(tuple(monomial))
    return sorted(monomials, reverse=True)
