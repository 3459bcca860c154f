"""
The cascade of strongly orthogonal roots.

Start from the highest root of every simple component. A locally high root φ
passes to the simple roots of its support that are orthogonal to it; the
highest roots of the components of that subdiagram are its offspring. The
closure under taking offspring is the cascade.

"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING, Sequence, TypeVar

from rootcascade.logging import LOGGER
from rootcascade.reports import CheckResult, ClauseRecorder, ensure
from rootcascade.rootsys import (
    Matrix,
    Root,
    RootSystem,
    WeightLike,
    add,
    format_root,
    identity_matrix,
    multiply_matrices,
)

if TYPE_CHECKING:
    from rootcascade.serialization import CascadePayload

T = TypeVar("T")


class NotPositiveRootError(ValueError):
    pass


class NotLocallyHighError(ValueError):
    pass


@dataclass(frozen=True)
class CascadeNode:
    root: Root
    parent: int | None
    support: frozenset[int]
    orthogonal_support: frozenset[int]


@dataclass(frozen=True)
class Cascade:
    """
    Cascade roots β₁…β_m with parents listed before their children.

    """

    label: str
    nodes: tuple[CascadeNode, ...]

    @property
    def m(self) -> int:
        return len(self.nodes)

    @property
    def roots(self) -> tuple[Root, ...]:
        return tuple(node.root for node in self.nodes)

    def index(self, root: Root) -> int:
        return self.roots.index(root)

    def chain(self, index: int) -> list[Root]:
        """
        Roots from the index back to the highest root it descends from.

        """
        chain: list[Root] = []
        current: int | None = index
        while current is not None:
            chain.append(self.nodes[current].root)
            current = self.nodes[current].parent
        return chain

    def to_payload(self) -> "CascadePayload":
        from rootcascade.serialization import CascadePayload

        return CascadePayload(
            type=self.label,
            m=self.m,
            roots=[list(node.root) for node in self.nodes],
            parents=[node.parent for node in self.nodes],
        )


def support(root_system: RootSystem, root: Root) -> frozenset[int]:
    if not root_system.is_positive(root):
        raise NotPositiveRootError(
            f"{format_root(root)} is not a positive root of {root_system.label}"
        )
    indices = root_system.support(root)
    assert len(root_system.connected_components(indices)) == 1, (
        f"Support of {format_root(root)} is disconnected"
    )
    return indices


def is_locally_high(root_system: RootSystem, root: Root) -> bool:
    return root_system.highest_root(support(root_system, root)) == root


def orthogonal_support(root_system: RootSystem, root: Root) -> frozenset[int]:
    if not is_locally_high(root_system, root):
        raise NotLocallyHighError(
            f"{format_root(root)} is not the highest root of its support in {root_system.label}"
        )
    return frozenset(
        index
        for index in support(root_system, root)
        if root_system.inner_product(root_system.simple_roots[index], root) == 0
    )


def offspring(root_system: RootSystem, root: Root) -> tuple[Root, ...]:
    """
    Highest roots of the simple components of the orthogonal support, ordered
    by the least simple-root index of each component.

    """
    children = tuple(
        root_system.highest_root(component)
        for component in root_system.connected_components(
            orthogonal_support(root_system, root)
        )
    )
    for child in children:
        assert is_locally_high(root_system, child)
        assert root_system.is_strongly_orthogonal(root, child), (
            f"Offspring {format_root(child)} is not strongly orthogonal to {format_root(root)}"
        )
    return children


def compute_cascade(root_system: RootSystem, reverse_siblings: bool = False) -> Cascade:
    """
    Breadth-first closure from the highest roots of the simple components.
    Siblings are visited by least simple-root index, or in the opposite order
    when reverse_siblings is set; the resulting set does not depend on it.

    ```python {{sticky: True}}
    cascade = compute_cascade(build_root_system("B2"))
    cascade.roots  # ((1, 2), (1, 0))
    ```
    """

    def ordered(items: Sequence[T]) -> list[T]:
        return list(reversed(items)) if reverse_siblings else list(items)

    queue: deque[tuple[Root, int | None]] = deque(
        (root_system.highest_root(component), None)
        for component in ordered(root_system.components)
    )

    nodes: list[CascadeNode] = []
    while queue:
        root, parent = queue.popleft()
        node = CascadeNode(
            root=root,
            parent=parent,
            support=support(root_system, root),
            orthogonal_support=orthogonal_support(root_system, root),
        )
        nodes.append(node)
        for child in ordered(offspring(root_system, root)):
            queue.append((child, len(nodes) - 1))

    cascade = Cascade(label=root_system.label, nodes=tuple(nodes))
    LOGGER.debug(
        f"{root_system.label}: cascade of size {cascade.m}: "
        + "; ".join(format_root(root) for root in cascade.roots)
    )
    return cascade


def cascade_reflection_product(
    root_system: RootSystem,
    cascade: Cascade,
    order: Sequence[int] | None = None,
) -> Matrix:
    """
    s_{β_{i1}} ⋯ s_{β_{im}} as a matrix on simple-root coordinates.

    """
    indices = list(order) if order is not None else list(range(cascade.m))
    product = identity_matrix(root_system.rank)
    for index in indices:
        product = multiply_matrices(
            product, root_system.reflection_matrix(cascade.nodes[index].root)
        )
    return product


def lattice_membership(
    root_system: RootSystem, weight: WeightLike, cascade: Cascade
) -> tuple[int, ...] | None:
    """
    Coefficients b_β with ν = Σ b_β β, or None when ν is outside the integer
    span of the cascade. The cascade roots are mutually orthogonal, so
    b_β = (ν, β)/(β, β); the residual check rejects weights with a component
    orthogonal to every cascade root.

    """
    coords = root_system.coords(weight)
    coefficients: list[Fraction] = [
        root_system.inner_product(coords, beta) / root_system.norm(beta)
        for beta in cascade.roots
    ]
    if any(c.denominator != 1 for c in coefficients):
        return None

    residual = list(coords)
    for coefficient, beta in zip(coefficients, cascade.roots):
        for i, value in enumerate(beta):
            residual[i] -= coefficient * value
    if any(residual):
        return None
    return tuple(int(c) for c in coefficients)


def cascade_weight(
    root_system: RootSystem, cascade: Cascade, coefficients: Sequence[int]
) -> Root:
    total = (0,) * root_system.rank
    for coefficient, beta in zip(coefficients, cascade.roots):
        total = add(total, tuple(coefficient * c for c in beta))
    return total


def max_strongly_orthogonal_cardinality(root_system: RootSystem) -> int:
    """
    Size of the largest set of mutually strongly orthogonal positive roots,
    by exhaustive clique search.

    """
    positive = root_system.positive_roots
    compatible = {
        phi: frozenset(
            psi
            for psi in positive
            if psi != phi and root_system.is_strongly_orthogonal(phi, psi)
        )
        for phi in positive
    }

    best = 0

    def extend(size: int, candidates: list[Root]):
        nonlocal best
        best = max(best, size)
        for position, root in enumerate(candidates):
            remaining = [
                other for other in candidates[position + 1 :] if other in compatible[root]
            ]
            if size + 1 + len(remaining) > best:
                extend(size + 1, remaining)

    extend(0, list(positive))
    return best


def verify_cascade(
    root_system: RootSystem, cascade: Cascade | None = None
) -> CheckResult:
    """
    The cascade is a maximal set of strongly orthogonal roots and the product
    of its reflections is the longest Weyl element.

    """
    cascade = cascade or compute_cascade(root_system)
    recorder = ClauseRecorder(
        "t1", "Cascade is a maximal strongly orthogonal set and w0 is its reflection product"
    )

    with recorder.clause("strongly_orthogonal"):
        for phi, psi in combinations(cascade.roots, 2):
            ensure(
                root_system.is_strongly_orthogonal(phi, psi)
                and root_system.inner_product(phi, psi) == 0,
                "Cascade roots are not strongly orthogonal",
                pair=[list(phi), list(psi)],
            )

    with recorder.clause("node_structure"):
        for index, node in enumerate(cascade.nodes):
            ensure(
                node.orthogonal_support <= node.support,
                "Orthogonal support escapes the support",
                node=index,
            )
            if node.parent is not None:
                parent = cascade.nodes[node.parent]
                components = root_system.connected_components(parent.orthogonal_support)
                ensure(
                    any(root_system.highest_root(c) == node.root for c in components),
                    "Cascade root is not an offspring of its parent",
                    node=index,
                    parent=node.parent,
                )

    with recorder.clause("maximal"):
        for candidate in root_system.positive_roots:
            if candidate in cascade.roots:
                continue
            ensure(
                not all(
                    root_system.is_strongly_orthogonal(candidate, beta)
                    for beta in cascade.roots
                ),
                "A positive root outside the cascade is strongly orthogonal to all of it",
                root=list(candidate),
            )

    if root_system.rank <= 4:
        with recorder.clause("maximum_cardinality"):
            largest = max_strongly_orthogonal_cardinality(root_system)
            ensure(
                largest == cascade.m,
                "A strongly orthogonal set is larger than the cascade",
                largest=largest,
                m=cascade.m,
            )
    else:
        recorder.skip("maximum_cardinality", "exhaustive search only runs at rank <= 4")

    with recorder.clause("reflection_product"):
        longest = root_system.longest_element()
        for order in (list(range(cascade.m)), list(reversed(range(cascade.m)))):
            product = cascade_reflection_product(root_system, cascade, order)
            ensure(
                product == longest,
                "Product of cascade reflections differs from w0",
                order=order,
                product=product,
                longest=longest,
            )
        for root in root_system.positive_roots:
            ensure(
                not root_system.is_positive(root_system.apply_matrix(longest, root)),
                "w0 maps a positive root to a positive root",
                root=list(root),
            )

    with recorder.clause("sibling_order_independent"):
        reversed_cascade = compute_cascade(root_system, reverse_siblings=True)
        ensure(
            set(reversed_cascade.roots) == set(cascade.roots),
            "Cascade depends on the order siblings are visited",
            forward=[list(root) for root in cascade.roots],
            reversed=[list(root) for root in reversed_cascade.roots],
        )

    with recorder.clause("locally_high_roots"):
        locally_high = [
            root for root in root_system.positive_roots if is_locally_high(root_system, root)
        ]
        all_type_a = all(factor.family == "A" for factor in root_system.factors)
        ensure(
            (len(locally_high) == len(root_system.positive_roots)) == all_type_a,
            "Every positive root is locally high exactly in type A",
            locally_high=len(locally_high),
            positive=len(root_system.positive_roots),
        )

    with recorder.clause("lattice_basis"):
        for index, beta in enumerate(cascade.roots):
            expected = tuple(int(i == index) for i in range(cascade.m))
            ensure(
                lattice_membership(root_system, beta, cascade) == expected,
                "Cascade root does not have a unit coefficient vector",
                root=list(beta),
            )
        sample = [1 + (i % 3) for i in range(cascade.m)]
        ensure(
            lattice_membership(
                root_system, cascade_weight(root_system, cascade, sample), cascade
            )
            == tuple(sample),
            "Projection does not reconstruct a cascade lattice member",
            coefficients=sample,
        )

    return recorder.result()

