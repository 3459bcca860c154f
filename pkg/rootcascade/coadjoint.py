"""
Coadjoint geometry of the nilradical.

n_− is identified with the dual of n through (e_φ, e_{−φ}) = 1. The group N
and the Borel B act on n_− by Coad(u) v = P(Ad(u) v), where P is the
projection of g = n_− ⊕ b onto n_− along b.

"""

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Literal, Mapping, Sequence

from rootcascade.cascade import Cascade, compute_cascade
from rootcascade.chevalley import LieElement
from rootcascade.linalg import nullspace, rank, same_row_space
from rootcascade.reports import CheckResult, ClauseRecorder, ensure
from rootcascade.rootsys import Root, RootSystem, format_root, negate
from rootcascade.serialization import NilVectorPayload, root_keyed

Side = Literal["n", "n_minus"]


@dataclass(frozen=True)
class NilVector:
    """
    Σ c_φ e_{−φ} ∈ n_− (side "n_minus") or Σ c_φ e_φ ∈ n (side "n"), keyed by
    the positive root φ in both cases.

    """

    coeffs: Mapping[Root, Fraction] = field(default_factory=dict)
    side: Side = "n_minus"

    @classmethod
    def build(
        cls, coeffs: Mapping[Root, Fraction | int], side: Side = "n_minus"
    ) -> "NilVector":
        return cls(
            coeffs={root: Fraction(value) for root, value in coeffs.items() if value},
            side=side,
        )

    def __add__(self, other: "NilVector") -> "NilVector":
        if self.side != other.side:
            raise ValueError(f"Cannot add vectors of n and n_-: {self.side} + {other.side}")
        total = dict(self.coeffs)
        for root, value in other.coeffs.items():
            total[root] = total.get(root, Fraction(0)) + value
        return NilVector.build(total, self.side)

    def scale(self, factor: Fraction | int) -> "NilVector":
        return NilVector.build(
            {root: factor * value for root, value in self.coeffs.items()}, self.side
        )

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, root: Root) -> Fraction:
        return self.coeffs.get(root, Fraction(0))

    def to_lie(self) -> LieElement:
        if self.side == "n":
            return LieElement(root_part=dict(self.coeffs))
        return LieElement(
            root_part={negate(root): value for root, value in self.coeffs.items()}
        )

    def to_payload(self) -> NilVectorPayload:
        return NilVectorPayload(coeffs=root_keyed(dict(sorted(self.coeffs.items()))))


@dataclass(frozen=True)
class TorusPoint:
    """
    A point Σ a_β e_{−β} of r_− with every cascade coordinate nonzero.

    """

    a: Mapping[Root, Fraction]

    def __post_init__(self):
        zero = [format_root(root) for root, value in self.a.items() if value == 0]
        if zero:
            raise ValueError(f"Torus point has vanishing cascade coordinates: {zero}")

    def to_nil_vector(self) -> NilVector:
        return NilVector.build(self.a)

    @classmethod
    def from_nil_vector(cls, vector: NilVector, cascade: Cascade) -> "TorusPoint":
        outside = [root for root in vector.coeffs if root not in cascade.roots]
        if outside:
            raise ValueError(
                f"Vector has coordinates outside the cascade: {[format_root(r) for r in outside]}"
            )
        return cls({beta: vector.coefficient(beta) for beta in cascade.roots})


@dataclass(frozen=True)
class TorusElement:
    """
    An element of H, given by its values t_i on the simple roots. It acts on
    e_φ by Π t_i^{n_i(φ)}.

    """

    t: tuple[Fraction, ...]

    def __post_init__(self):
        if any(value == 0 for value in self.t):
            raise ValueError(f"Torus element has a zero entry: {[str(v) for v in self.t]}")

    def character(self, root: Sequence[int]) -> Fraction:
        value = Fraction(1)
        for t_i, n_i in zip(self.t, root):
            value *= t_i**n_i
        return value


def project_p(root_system: RootSystem, x: LieElement) -> NilVector:
    """
    The n_− component of x along b.

    """
    return NilVector.build(
        {
            negate(root): value
            for root, value in x.root_part.items()
            if not root_system.is_positive(root)
        }
    )


def coadjoint_action(
    root_system: RootSystem, x: LieElement | NilVector, v: NilVector
) -> NilVector:
    """
    P([x, v]) for x ∈ b, the infinitesimal coadjoint action on n_−.

    """
    if isinstance(x, NilVector):
        if x.side != "n":
            raise ValueError("The acting vector must lie in n")
        x = x.to_lie()
    basis = root_system.chevalley_constants()
    return project_p(root_system, basis.bracket(x, v.to_lie()))


def _action_matrix(
    root_system: RootSystem, tau: NilVector, include_cartan: bool
) -> list[list[Fraction]]:
    """
    Columns are P([x, τ]) for x running over e_φ (φ > 0) and, optionally, the
    simple coroots; rows are the n_− coordinates.

    """
    positive = root_system.positive_roots
    columns: list[NilVector] = [
        coadjoint_action(root_system, LieElement.root_vector(phi), tau) for phi in positive
    ]
    if include_cartan:
        for i in range(root_system.rank):
            coords = tuple(Fraction(int(i == j)) for j in range(root_system.rank))
            columns.append(coadjoint_action(root_system, LieElement.cartan(coords), tau))
    return [[column.coefficient(phi) for column in columns] for phi in positive]


def isotropy_algebra(root_system: RootSystem, tau: NilVector) -> list[NilVector]:
    """
    Basis of {x ∈ n : P([x, τ]) = 0}.

    ```python {{sticky: True}}
    a2 = build_root_system("A2")
    isotropy_algebra(a2, NilVector.build({(1, 1): 1}))  # [e_θ]
    ```
    """
    positive = root_system.positive_roots
    matrix = _action_matrix(root_system, tau, include_cartan=False)
    return [
        NilVector.build(dict(zip(positive, vector)), side="n")
        for vector in nullspace(matrix, len(positive))
    ]


def orbit_dimension(root_system: RootSystem, tau: NilVector) -> int:
    return len(root_system.positive_roots) - len(isotropy_algebra(root_system, tau))


def b_tangent_dimension(root_system: RootSystem, tau: NilVector) -> int:
    matrix = _action_matrix(root_system, tau, include_cartan=True)
    return rank(matrix, len(root_system.positive_roots) + root_system.rank)


def exponential_action(root_system: RootSystem, x: NilVector, v: NilVector) -> NilVector:
    """
    exp(coad x) v. The series stops because coad x raises height on n_−.

    """
    result = v
    term = v
    power = 0
    while True:
        power += 1
        # (coad x)^k v / k!
        term = coadjoint_action(root_system, x, term).scale(Fraction(1, power))
        if term.is_zero:
            return result
        result = result + term


def coadjoint_group_action(
    root_system: RootSystem, xs: Sequence[NilVector], v: NilVector
) -> NilVector:
    """
    Coad(exp(x₁)⋯exp(x_k)) v; the rightmost factor acts first.

    """
    for x in reversed(xs):
        v = exponential_action(root_system, x, v)
    return v


def torus_action(torus: TorusElement, v: NilVector) -> NilVector:
    """
    Coad(t) on n_−: the coordinate along e_{−φ} picks up the character of −φ.

    """
    return NilVector.build(
        {root: value / torus.character(root) for root, value in v.coeffs.items()},
        v.side,
    )


def adjoint_torus(torus: TorusElement, x: NilVector) -> NilVector:
    """
    Ad(t) on n.

    """
    return NilVector.build(
        {root: value * torus.character(root) for root, value in x.coeffs.items()},
        x.side,
    )


def random_nonzero(rng: Random, bound: int = 5) -> Fraction:
    value = rng.randint(1, bound)
    return Fraction(value if rng.random() < 0.5 else -value)


def random_torus_point(cascade: Cascade, rng: Random) -> TorusPoint:
    return TorusPoint({beta: random_nonzero(rng) for beta in cascade.roots})


def random_nil_vector(
    root_system: RootSystem, rng: Random, side: Side = "n_minus", bound: int = 5
) -> NilVector:
    return NilVector.build(
        {phi: rng.randint(-bound, bound) for phi in root_system.positive_roots}, side
    )


def random_torus_element(root_system: RootSystem, rng: Random) -> TorusElement:
    return TorusElement(
        tuple(
            random_nonzero(rng, 3) / rng.randint(1, 3) for _ in range(root_system.rank)
        )
    )


def cascade_span(root_system: RootSystem, cascade: Cascade) -> list[list[Fraction]]:
    positive = root_system.positive_roots
    return [
        [Fraction(int(phi == beta)) for phi in positive] for beta in cascade.roots
    ]


def verify_isotropy(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    seed: int = 0,
    samples: int = 5,
) -> CheckResult:
    """
    For τ ∈ r_−^× the isotropy algebra is exactly r, so every such orbit has
    dimension dim n − m, the largest orbit dimension in n_−.

    """
    cascade = cascade or compute_cascade(root_system)
    rng = Random(seed)
    dim_n = len(root_system.positive_roots)
    expected = cascade_span(root_system, cascade)
    recorder = ClauseRecorder("t2", "Isotropy of r_-^x points is r, orbits have dim n - m")
    points = [random_torus_point(cascade, rng) for _ in range(samples)]

    with recorder.clause("isotropy_equals_r"):
        for point in points:
            tau = point.to_nil_vector()
            basis = isotropy_algebra(root_system, tau)
            rows = [[vector.coefficient(phi) for phi in root_system.positive_roots] for vector in basis]
            ensure(
                same_row_space(rows, expected, dim_n),
                "Isotropy algebra of a torus point is not spanned by the cascade root vectors",
                tau=tau.to_payload().model_dump(),
                isotropy=[vector.to_payload().model_dump() for vector in basis],
            )

    with recorder.clause("orbit_dimension"):
        for point in points:
            tau = point.to_nil_vector()
            dimension = orbit_dimension(root_system, tau)
            ensure(
                dimension == dim_n - cascade.m,
                "Orbit dimension differs from dim n - m",
                tau=tau.to_payload().model_dump(),
                dimension=dimension,
                expected=dim_n - cascade.m,
            )

    with recorder.clause("maximal_orbit_dimension"):
        dimensions = [
            orbit_dimension(root_system, random_nil_vector(root_system, rng))
            for _ in range(samples)
        ]
        ensure(
            max(dimensions) == dim_n - cascade.m,
            "Orbit dimensions of random points do not peak at dim n - m",
            dimensions=dimensions,
            expected=dim_n - cascade.m,
        )

    return recorder.result()


def verify_torus_equivariance(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    seed: int = 0,
    samples: int = 20,
) -> CheckResult:
    """
    Coad(t) conjugates the N-action, so it carries the orbit of τ onto the
    orbit of t·τ and keeps r_−^× in place.

    """
    cascade = cascade or compute_cascade(root_system)
    rng = Random(seed)
    recorder = ClauseRecorder("t3", "Torus action intertwines the coadjoint N-action")

    with recorder.clause("equivariance"):
        for _ in range(samples):
            torus = random_torus_element(root_system, rng)
            x = random_nil_vector(root_system, rng, side="n", bound=2)
            v = random_nil_vector(root_system, rng)
            left = torus_action(torus, coadjoint_group_action(root_system, [x], v))
            right = coadjoint_group_action(
                root_system, [adjoint_torus(torus, x)], torus_action(torus, v)
            )
            ensure(
                left == right,
                "t . Coad(exp x) v differs from Coad(exp Ad(t) x) (t . v)",
                t=list(torus.t),
                x=x.to_payload().model_dump(),
                v=v.to_payload().model_dump(),
            )

    with recorder.clause("preserves_torus_points"):
        for _ in range(samples):
            torus = random_torus_element(root_system, rng)
            point = random_torus_point(cascade, rng)
            image = torus_action(torus, point.to_nil_vector())
            ensure(
                set(image.coeffs) == set(cascade.roots),
                "Torus action leaves r_-^x",
                t=list(torus.t),
                image=image.to_payload().model_dump(),
            )
            TorusPoint.from_nil_vector(image, cascade)

    return recorder.result()


def verify_open_orbit(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    seed: int = 0,
    samples: int = 5,
) -> CheckResult:
    """
    The B-orbit of τ ∈ r_−^× is open: the tangent map from b onto n_− is
    surjective, and the N-orbit directions P([n, τ]) complement r_−.

    """
    cascade = cascade or compute_cascade(root_system)
    rng = Random(seed)
    dim_n = len(root_system.positive_roots)
    recorder = ClauseRecorder("t4", "B-orbit through r_-^x is open")
    points = [random_torus_point(cascade, rng) for _ in range(samples)]

    with recorder.clause("b_tangent_surjective"):
        for point in points:
            tau = point.to_nil_vector()
            dimension = b_tangent_dimension(root_system, tau)
            ensure(
                dimension == dim_n,
                "Tangent map from b does not fill n_-",
                tau=tau.to_payload().model_dump(),
                dimension=dimension,
            )

    with recorder.clause("n_orbit_complements_r"):
        for point in points:
            tau = point.to_nil_vector()
            matrix = _action_matrix(root_system, tau, include_cartan=False)
            tangent = [list(column) for column in zip(*matrix)]
            tangent_rank = rank(tangent, dim_n)
            combined_rank = rank(tangent + cascade_span(root_system, cascade), dim_n)
            ensure(
                tangent_rank == dim_n - cascade.m and combined_rank == dim_n,
                "N-orbit tangent space and r_- are not complementary",
                tau=tau.to_payload().model_dump(),
                tangent_rank=tangent_rank,
                combined_rank=combined_rank,
            )

    return recorder.result()
