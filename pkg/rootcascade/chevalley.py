"""
Chevalley basis of the Lie algebra attached to a root system.

Signs follow the extraspecial-pair convention: for every non-simple positive
root ε, the pair (α, β) with α the earliest positive root (in RootSystem
order) such that ε − α is positive gets N(α, β) = p + 1. Every other
constant is forced by the Jacobi identity.

"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Mapping

from rootcascade.rootsys import Root, add, negate, subtract, zero_root

if TYPE_CHECKING:
    from rootcascade.rootsys import RootSystem


@dataclass(frozen=True, eq=False)
class LieElement:
    """
    x = Σ x_φ e_φ + Σ x_i h_i, with h_i = [e_{α_i}, e_{−α_i}] the simple coroots.

    """

    root_part: Mapping[Root, Fraction] = field(default_factory=dict)
    cartan_part: tuple[Fraction, ...] = ()

    @classmethod
    def root_vector(cls, root: Root, coefficient: Fraction | int = 1) -> "LieElement":
        return cls(root_part={root: Fraction(coefficient)})

    @classmethod
    def cartan(cls, coords: tuple[Fraction | int, ...]) -> "LieElement":
        return cls(cartan_part=tuple(Fraction(c) for c in coords))

    def __add__(self, other: "LieElement") -> "LieElement":
        root_part = dict(self.root_part)
        for root, value in other.root_part.items():
            root_part[root] = root_part.get(root, Fraction(0)) + value
        return LieElement(
            root_part={root: value for root, value in root_part.items() if value},
            cartan_part=_add_cartan(self.cartan_part, other.cartan_part),
        )

    def scale(self, factor: Fraction | int) -> "LieElement":
        if factor == 0:
            return LieElement()
        return LieElement(
            root_part={root: factor * value for root, value in self.root_part.items()},
            cartan_part=tuple(factor * c for c in self.cartan_part),
        )

    @property
    def is_zero(self) -> bool:
        return not any(self.root_part.values()) and not any(self.cartan_part)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return (self + other.scale(-1)).is_zero


def _add_cartan(
    first: tuple[Fraction, ...], second: tuple[Fraction, ...]
) -> tuple[Fraction, ...]:
    if not first:
        return second
    if not second:
        return first
    return tuple(a + b for a, b in zip(first, second))


class ChevalleyBasis:
    """
    Integral structure constants [e_φ, e_ψ] = N(φ, ψ) e_{φ+ψ} together with the
    coroots h_φ = [e_φ, e_{−φ}].

    ```python {{sticky: True}}
    basis = build_root_system("B2").chevalley_constants()
    basis.constant((0, 1), (1, 1))  # 2
    ```
    """

    def __init__(self, root_system: "RootSystem", constants: dict[tuple[Root, Root], int]):
        self.root_system = root_system
        self.constants = constants

    @classmethod
    def from_root_system(cls, root_system: "RootSystem") -> "ChevalleyBasis":
        solver = _ConstantSolver(root_system)
        constants: dict[tuple[Root, Root], int] = {}
        for phi in root_system.roots:
            for psi in root_system.roots:
                total = add(phi, psi)
                if root_system.is_root(total):
                    constants[(phi, psi)] = solver.constant(phi, psi)
        return cls(root_system, constants)

    def constant(self, phi: Root, psi: Root) -> int:
        return self.constants.get((phi, psi), 0)

    def coroot(self, root: Root) -> tuple[Fraction, ...]:
        """
        h_φ in the basis of simple coroots: φ∨ = Σ n_i(φ) (α_i, α_i)/(φ, φ) α_i∨.

        """
        norm = self.root_system.norm(root)
        gram = self.root_system.gram
        return tuple(
            Fraction(c) * gram[i][i] / norm for i, c in enumerate(root)
        )

    def root_eigenvalue(self, root: Root, cartan: tuple[Fraction, ...]) -> Fraction:
        """
        ψ(h) for h = Σ x_i h_i, so that [h, e_ψ] = ψ(h) e_ψ.

        """
        cartan_matrix = self.root_system.cartan_matrix
        return sum(
            (
                x * sum(cartan_matrix[i][j] * root[j] for j in range(len(root)))
                for i, x in enumerate(cartan)
                if x
            ),
            Fraction(0),
        )

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        rank = self.root_system.rank
        origin = zero_root(rank)
        root_part: dict[Root, Fraction] = {}
        cartan = [Fraction(0)] * rank

        def accumulate(root: Root, value: Fraction):
            root_part[root] = root_part.get(root, Fraction(0)) + value

        for phi, a in x.root_part.items():
            for psi, b in y.root_part.items():
                total = add(phi, psi)
                if total == origin:
                    for i, c in enumerate(self.coroot(phi)):
                        cartan[i] += a * b * c
                else:
                    n = self.constant(phi, psi)
                    if n:
                        accumulate(total, a * b * n)

        if x.cartan_part:
            for psi, b in y.root_part.items():
                accumulate(psi, b * self.root_eigenvalue(psi, x.cartan_part))
        if y.cartan_part:
            for phi, a in x.root_part.items():
                accumulate(phi, -a * self.root_eigenvalue(phi, y.cartan_part))

        return LieElement(
            root_part={root: value for root, value in root_part.items() if value},
            cartan_part=tuple(cartan) if any(cartan) else (),
        )


class _ConstantSolver:
    """
    Memoized evaluation of N(φ, ψ). Every recursive call refers to pairs whose
    sum has strictly smaller height, so the recursion terminates.

    """

    def __init__(self, root_system: "RootSystem"):
        self.root_system = root_system
        self.cache: dict[tuple[Root, Root], int] = {}
        self.extraspecial: dict[Root, tuple[Root, Root]] = {}

        positive = root_system.positive_roots
        for epsilon in positive:
            if root_system.height(epsilon) == 1:
                continue
            for alpha in positive:
                beta = subtract(epsilon, alpha)
                if root_system.is_positive(beta):
                    self.extraspecial[epsilon] = (alpha, beta)
                    break

    def constant(self, phi: Root, psi: Root) -> int:
        key = (phi, psi)
        if key not in self.cache:
            self.cache[key] = self._compute(phi, psi)
        return self.cache[key]

    def _norm(self, root: Root) -> Fraction:
        return self.root_system.norm(root)

    def _n(self, phi: Root, psi: Root) -> Fraction:
        if not self.root_system.is_root(add(phi, psi)):
            return Fraction(0)
        return Fraction(self.constant(phi, psi))

    def _compute(self, phi: Root, psi: Root) -> int:
        rs = self.root_system
        phi_positive, psi_positive = rs.is_positive(phi), rs.is_positive(psi)

        if not phi_positive and not psi_positive:
            return -self.constant(negate(phi), negate(psi))
        if not phi_positive:
            return -self.constant(psi, phi)

        if psi_positive:
            return self._positive_pair(phi, psi)

        # φ > 0 > ψ: use N(φ,ψ)/(ζ,ζ) = N(ψ,ζ)/(φ,φ) = N(ζ,φ)/(ψ,ψ) with ζ = −(φ+ψ)
        zeta = negate(add(phi, psi))
        if rs.is_positive(add(phi, psi)):
            value = (
                -self._norm(zeta)
                / self._norm(phi)
                * self.constant(negate(psi), negate(zeta))
            )
        else:
            value = self._norm(zeta) / self._norm(psi) * self.constant(zeta, phi)
        return _as_integer(value, phi, psi)

    def _positive_pair(self, xi: Root, eta: Root) -> int:
        rs = self.root_system
        epsilon = add(xi, eta)
        alpha, beta = self.extraspecial[epsilon]

        if (xi, eta) == (alpha, beta):
            return rs.string_length(alpha, beta) + 1
        if (xi, eta) == (beta, alpha):
            return -(rs.string_length(alpha, beta) + 1)

        minus_alpha, minus_beta = negate(alpha), negate(beta)
        total = Fraction(0)
        eta_minus_alpha = subtract(eta, alpha)
        if rs.is_root(eta_minus_alpha):
            total += (
                self._n(eta, minus_alpha)
                * self._n(xi, minus_beta)
                / self._norm(eta_minus_alpha)
            )
        xi_minus_alpha = subtract(xi, alpha)
        if rs.is_root(xi_minus_alpha):
            total += (
                self._n(minus_alpha, xi)
                * self._n(eta, minus_beta)
                / self._norm(xi_minus_alpha)
            )
        value = self._norm(epsilon) * total / self.constant(alpha, beta)
        return _as_integer(value, xi, eta)


def _as_integer(value: Fraction, phi: Root, psi: Root) -> int:
    if value.denominator != 1 or value == 0:
        raise ArithmeticError(
            f"Structure constant N({phi}, {psi}) evaluated to {value}, expected a nonzero integer"
        )
    return int(value)
