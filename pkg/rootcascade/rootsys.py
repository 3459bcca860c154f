"""
Finite crystallographic root systems, written over the basis of simple roots.

Roots are integer tuples of simple-root coefficients; weights are rational
tuples in the same basis, tagged with the label of the system they belong to.
Long roots have squared length 2 in every family.

"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from re import fullmatch as re_fullmatch, split as re_split
from typing import TYPE_CHECKING, Literal, Sequence

from pydantic import BaseModel, ValidationError, model_validator

from rootcascade.linalg import inverse, matmul
from rootcascade.logging import LOGGER, log_time_duration

if TYPE_CHECKING:
    from rootcascade.chevalley import ChevalleyBasis

Root = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]
Family = Literal["A", "B", "C", "D", "E", "F", "G"]

MINIMUM_RANK: dict[str, int] = {"A": 1, "B": 2, "C": 2, "D": 4}
EXACT_RANKS: dict[str, set[int]] = {"E": {6, 7, 8}, "F": {4}, "G": {2}}


class InadmissibleCartanTypeError(ValueError):
    pass


class RootSystemMismatchError(ValueError):
    pass


class NotDominantError(ValueError):
    pass


class CartanType(BaseModel):
    """
    One simple factor, labelled the Bourbaki way. B2 and C2 are both accepted;
    they describe the same algebra with the simple roots numbered differently.

    ```python {{sticky: True}}
    CartanType(family="B", rank=3).label  # "B3"
    CartanType(family="E", rank=5)        # rejected, E needs rank 6, 7 or 8
    ```
    """

    family: Family
    rank: int

    model_config = {
        "frozen": True,
    }

    @model_validator(mode="after")
    def check_admissible(self):
        if self.family in EXACT_RANKS:
            allowed = EXACT_RANKS[self.family]
            if self.rank not in allowed:
                raise ValueError(
                    f"Type {self.family} requires rank in {sorted(allowed)}, got {self.rank}"
                )
        elif self.rank < MINIMUM_RANK[self.family]:
            raise ValueError(
                f"Type {self.family} requires rank >= {MINIMUM_RANK[self.family]}, got {self.rank}"
            )
        return self

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"


def parse_cartan_type(text: str) -> tuple[CartanType, ...]:
    """
    Parse "B3", "g2" or products such as "A1xA1" into simple factors.

    """
    parts = [part for part in re_split(r"[xX×]", text.strip()) if part]
    if not parts:
        raise InadmissibleCartanTypeError(f"Empty Cartan type: {text!r}")

    factors: list[CartanType] = []
    for part in parts:
        match = re_fullmatch(r"([A-Ga-g])(\d+)", part.strip())
        if match is None:
            raise InadmissibleCartanTypeError(
                f"Cannot parse Cartan type {part!r}; expected a letter A-G followed by a rank"
            )
        try:
            factors.append(
                CartanType(family=match.group(1).upper(), rank=int(match.group(2)))  # type: ignore[arg-type]
            )
        except ValidationError as exc:
            raise InadmissibleCartanTypeError(
                f"Inadmissible Cartan type {part!r}: {exc.errors()[0]['msg']}"
            ) from exc
    return tuple(factors)


def _simple_lengths_and_edges(
    cartan_type: CartanType,
) -> tuple[list[Fraction], list[tuple[int, int]]]:
    n = cartan_type.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    two, one = Fraction(2), Fraction(1)

    match cartan_type.family:
        case "A":
            return [two] * n, chain
        case "B":
            return [two] * (n - 1) + [one], chain
        case "C":
            return [one] * (n - 1) + [two], chain
        case "D":
            return [two] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        case "E":
            edges = [(0, 2)] + [(i, i + 1) for i in range(2, n - 1)] + [(1, 3)]
            return [two] * n, edges
        case "F":
            return [two, two, one, one], chain
        case "G":
            return [Fraction(2, 3), two], chain
    raise InadmissibleCartanTypeError(cartan_type.label)


def _factor_gram(cartan_type: CartanType) -> list[list[Fraction]]:
    lengths, edges = _simple_lengths_and_edges(cartan_type)
    n = cartan_type.rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in edges:
        # single, double and triple bonds all give -(longer squared length)/2
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) / 2
    return gram


@dataclass(frozen=True)
class Weight:
    """
    An element of the weight space in simple-root coordinates.

    """

    label: str
    coords: tuple[Fraction, ...]

    def __add__(self, other: "Weight") -> "Weight":
        self._check_compatible(other)
        return Weight(self.label, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check_compatible(other)
        return Weight(self.label, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.label, tuple(-a for a in self.coords))

    def scale(self, factor: Fraction | int) -> "Weight":
        return Weight(self.label, tuple(factor * a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def as_root(self) -> Root | None:
        if any(a.denominator != 1 for a in self.coords):
            return None
        return tuple(int(a) for a in self.coords)

    def _check_compatible(self, other: "Weight"):
        if self.label != other.label:
            raise RootSystemMismatchError(
                f"Weights from {self.label} and {other.label} cannot be combined"
            )


WeightLike = Weight | Sequence[int] | Sequence[Fraction]


@dataclass(frozen=True)
class RootSystem:
    """
    A finite root system together with its symmetrized Cartan form. Build
    instances with build_root_system; everything else is derived lazily.

    ```python {{sticky: True}}
    b2 = build_root_system("B2")
    len(b2.positive_roots)           # 4
    b2.inner_product((1, 2), (1, 0))  # 0
    ```
    """

    label: str
    factors: tuple[CartanType, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Root, ...]

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def negative_roots(self) -> tuple[Root, ...]:
        return tuple(negate(root) for root in self.positive_roots)

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + self.negative_roots

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def positive_index(self) -> dict[Root, int]:
        return {root: i for i, root in enumerate(self.positive_roots)}

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(unit_root(self.rank, i) for i in range(self.rank))

    @cached_property
    def cartan_matrix(self) -> Matrix:
        """
        a[i][j] = <α_j, α_i∨>, so row i holds the simple-coroot pairings.

        """
        return tuple(
            tuple(
                int(2 * self.gram[i][j] / self.gram[i][i]) for j in range(self.rank)
            )
            for i in range(self.rank)
        )

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        return self.connected_components(frozenset(range(self.rank)))

    @cached_property
    def rho(self) -> Weight:
        total = [Fraction(0)] * self.rank
        for root in self.positive_roots:
            for i, c in enumerate(root):
                total[i] += c
        return Weight(self.label, tuple(c / 2 for c in total))

    def height(self, root: Root) -> int:
        return sum(root)

    def is_root(self, vector: Sequence[int]) -> bool:
        return tuple(vector) in self.root_set

    def is_positive(self, root: Root) -> bool:
        return root in self.positive_index

    def coords(self, value: WeightLike) -> tuple[Fraction, ...]:
        """
        Simple-root coordinates of a weight or root, after checking that it
        belongs to this system.

        """
        if isinstance(value, Weight):
            if value.label != self.label:
                raise RootSystemMismatchError(
                    f"Weight of {value.label} used with root system {self.label}"
                )
            coords = value.coords
        else:
            coords = tuple(Fraction(c) for c in value)
        if len(coords) != self.rank:
            raise RootSystemMismatchError(
                f"Vector of length {len(coords)} used with rank {self.rank} system {self.label}"
            )
        return coords

    def weight(self, value: WeightLike) -> Weight:
        return Weight(self.label, self.coords(value))

    def inner_product(self, mu: WeightLike, nu: WeightLike) -> Fraction:
        left, right = self.coords(mu), self.coords(nu)
        return sum(
            (
                left[i] * self.gram[i][j] * right[j]
                for i in range(self.rank)
                for j in range(self.rank)
                if left[i] and right[j]
            ),
            Fraction(0),
        )

    def norm(self, value: WeightLike) -> Fraction:
        return self.inner_product(value, value)

    def coroot_pairing(self, weight: WeightLike, root: WeightLike) -> Fraction:
        """
        <λ, β∨> = 2(λ, β)/(β, β). Integral whenever λ lies in the weight lattice.

        """
        return 2 * self.inner_product(weight, root) / self.norm(root)

    def reflect(self, root: Root, value: WeightLike) -> Weight:
        """
        s_β(μ) = μ − <μ, β∨> β.

        """
        coords = self.coords(value)
        pairing = self.coroot_pairing(coords, root)
        return Weight(
            self.label, tuple(c - pairing * r for c, r in zip(coords, root))
        )

    def reflect_root(self, root: Root, other: Root) -> Root:
        reflected = self.reflect(root, other).as_root()
        assert reflected is not None
        return reflected

    def reflection_matrix(self, root: Root) -> Matrix:
        """
        Matrix of s_β acting on simple-root coordinates; column j is s_β(α_j).

        """
        columns = [self.reflect_root(root, simple) for simple in self.simple_roots]
        return tuple(
            tuple(columns[j][i] for j in range(self.rank)) for i in range(self.rank)
        )

    def longest_element(self) -> Matrix:
        """
        The Weyl element sending Δ₊ to Δ₋, found by walking ρ down to the
        antidominant chamber one simple reflection at a time.

        """
        return self._longest_element

    @cached_property
    def _longest_element(self) -> Matrix:
        current = self.rho
        word: list[int] = []
        while True:
            descents = [
                i
                for i in range(self.rank)
                if self.coroot_pairing(current, self.simple_roots[i]) > 0
            ]
            if not descents:
                break
            current = self.reflect(self.simple_roots[descents[0]], current)
            word.append(descents[0])

        result: Matrix = identity_matrix(self.rank)
        for i in word:
            result = multiply_matrices(self.reflection_matrix(self.simple_roots[i]), result)

        LOGGER.debug(f"{self.label}: longest element has length {len(word)}")
        return result

    def apply_matrix(self, matrix: Matrix, value: Sequence[int]) -> Root:
        return tuple(
            sum(matrix[i][j] * value[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def weight_from_fw(self, fw_coords: Sequence[int | Fraction]) -> Weight:
        """
        Convert fundamental-weight coordinates (<λ, α_i∨> for each i) into
        simple-root coordinates.

        """
        if len(fw_coords) != self.rank:
            raise RootSystemMismatchError(
                f"Expected {self.rank} fundamental-weight coordinates, got {len(fw_coords)}"
            )
        inverse_cartan = self._inverse_cartan
        return Weight(
            self.label,
            tuple(
                sum(
                    (inverse_cartan[j][i] * Fraction(fw_coords[i]) for i in range(self.rank)),
                    Fraction(0),
                )
                for j in range(self.rank)
            ),
        )

    def fw_coords(self, value: WeightLike) -> tuple[Fraction, ...]:
        return tuple(
            self.coroot_pairing(value, simple) for simple in self.simple_roots
        )

    def fundamental_weight(self, index: int) -> Weight:
        return self.weight_from_fw([int(i == index) for i in range(self.rank)])

    @cached_property
    def _inverse_cartan(self) -> list[list[Fraction]]:
        return inverse([[Fraction(a) for a in row] for row in self.cartan_matrix])

    def is_dominant(self, value: WeightLike) -> bool:
        return all(c >= 0 for c in self.fw_coords(value))

    def is_integral(self, value: WeightLike) -> bool:
        return all(c.denominator == 1 for c in self.fw_coords(value))

    def require_dominant(self, value: WeightLike) -> Weight:
        weight = self.weight(value)
        if not (self.is_integral(weight) and self.is_dominant(weight)):
            raise NotDominantError(
                f"{format_fw(self.fw_coords(weight))} is not a dominant integral weight of {self.label}"
            )
        return weight

    def support(self, root: Root) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(root) if c != 0)

    def neighbors(self, index: int) -> frozenset[int]:
        return frozenset(
            j for j in range(self.rank) if j != index and self.gram[index][j] != 0
        )

    def connected_components(self, indices: frozenset[int]) -> tuple[frozenset[int], ...]:
        """
        Connected components of the Dynkin subdiagram on the given simple
        roots, ordered by their least index.

        """
        remaining = set(indices)
        components: list[frozenset[int]] = []
        while remaining:
            start = min(remaining)
            component = {start}
            frontier = [start]
            while frontier:
                current = frontier.pop()
                for neighbor in self.neighbors(current):
                    if neighbor in remaining and neighbor not in component:
                        component.add(neighbor)
                        frontier.append(neighbor)
            remaining -= component
            components.append(frozenset(component))
        return tuple(sorted(components, key=min))

    def subsystem_roots(self, indices: frozenset[int]) -> tuple[Root, ...]:
        return tuple(
            root for root in self.positive_roots if self.support(root) <= indices
        )

    def highest_root(self, indices: frozenset[int]) -> Root:
        """
        Highest root of the subsystem spanned by a connected set of simple
        roots, i.e. its unique root of maximal height.

        """
        if len(self.connected_components(indices)) != 1:
            raise ValueError(f"Simple roots {sorted(indices)} are not connected")
        candidates = self.subsystem_roots(indices)
        top = max(self.height(root) for root in candidates)
        highest = [root for root in candidates if self.height(root) == top]
        assert len(highest) == 1, f"Ambiguous highest root on {sorted(indices)}"
        return highest[0]

    def string_length(self, xi: Root, eta: Root) -> int:
        """
        Largest p >= 0 with η − pξ a root.

        """
        p = 0
        current = subtract(eta, xi)
        while self.is_root(current):
            p += 1
            current = subtract(current, xi)
        return p

    def is_strongly_orthogonal(self, phi: Root, psi: Root) -> bool:
        return (
            phi != psi
            and not self.is_root(add(phi, psi))
            and not self.is_root(subtract(phi, psi))
            and add(phi, psi) != zero_root(self.rank)
        )

    def chevalley_constants(self) -> "ChevalleyBasis":
        return self._chevalley

    @cached_property
    def _chevalley(self) -> "ChevalleyBasis":
        from rootcascade.chevalley import ChevalleyBasis

        with log_time_duration("Chevalley structure constants", root_system=self.label):
            return ChevalleyBasis.from_root_system(self)


def build_root_system(cartan_type: str | CartanType | Sequence[CartanType]) -> RootSystem:
    """
    Construct the root system of a (semi)simple type. Products are block
    diagonal; each factor keeps its own Bourbaki numbering, shifted by the
    ranks of the factors before it.

    """
    if isinstance(cartan_type, str):
        factors = parse_cartan_type(cartan_type)
    elif isinstance(cartan_type, CartanType):
        factors = (cartan_type,)
    else:
        factors = tuple(cartan_type)
    if not factors:
        raise InadmissibleCartanTypeError("At least one simple factor is required")

    rank = sum(factor.rank for factor in factors)
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    offset = 0
    for factor in factors:
        block = _factor_gram(factor)
        for i in range(factor.rank):
            for j in range(factor.rank):
                gram[offset + i][offset + j] = block[i][j]
        offset += factor.rank

    label = "x".join(factor.label for factor in factors)
    with log_time_duration("root generation", root_system=label):
        positive_roots = _generate_positive_roots(gram)

    return RootSystem(
        label=label,
        factors=factors,
        gram=tuple(tuple(row) for row in gram),
        positive_roots=positive_roots,
    )


def _generate_positive_roots(gram: list[list[Fraction]]) -> tuple[Root, ...]:
    rank = len(gram)
    simple = [unit_root(rank, i) for i in range(rank)]
    positive: set[Root] = set(simple)
    layer = list(simple)

    def pairing(root: Root, i: int) -> int:
        value = 2 * sum(root[j] * gram[j][i] for j in range(rank)) / gram[i][i]
        assert value.denominator == 1
        return int(value)

    # Layer h holds the roots of height h; every root of height h + 1 is a
    # root of height h plus a simple root, found by the α_i-string rule.
    while layer:
        next_layer: list[Root] = []
        for root in layer:
            for i in range(rank):
                p = 0
                lowered = subtract(root, simple[i])
                while lowered in positive:
                    p += 1
                    lowered = subtract(lowered, simple[i])
                if p - pairing(root, i) > 0:
                    raised = add(root, simple[i])
                    if raised not in positive:
                        positive.add(raised)
                        next_layer.append(raised)
        layer = next_layer

    return tuple(sorted(positive, key=root_order_key))


def root_order_key(root: Root) -> tuple[int, tuple[int, ...]]:
    """
    Height first, then lexicographically decreasing coordinates, so α_1 comes
    before α_2 among the simple roots.

    """
    return (sum(root), tuple(-c for c in root))


def unit_root(rank: int, index: int) -> Root:
    return tuple(int(i == index) for i in range(rank))


def zero_root(rank: int) -> Root:
    return (0,) * rank


def add(first: Sequence[int], second: Sequence[int]) -> Root:
    return tuple(a + b for a, b in zip(first, second))


def subtract(first: Sequence[int], second: Sequence[int]) -> Root:
    return tuple(a - b for a, b in zip(first, second))


def negate(root: Sequence[int]) -> Root:
    return tuple(-c for c in root)


def identity_matrix(size: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(size)) for i in range(size))


def multiply_matrices(left: Matrix, right: Matrix) -> Matrix:
    product = matmul(left, right)
    return tuple(tuple(int(value) for value in row) for row in product)


def format_root(root: Sequence[int]) -> str:
    return ",".join(str(c) for c in root)


def format_fw(coords: Sequence[Fraction | int]) -> str:
    return "(" + ", ".join(str(c) for c in coords) + ")"
