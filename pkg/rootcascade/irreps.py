"""
Finite-dimensional irreducible modules, built exactly.

V_λ is spanned level by level by lowering operators applied to the highest
weight vector. The contravariant form ⟨f_i x, y⟩ = ⟨x, e_i y⟩ is positive
definite on V_λ, so at each weight the candidate vectors f_i b are reduced to
a basis by picking an invertible principal block of their Gram matrix; every
candidate then has exact coordinates in that basis.

"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy.polys.matrices import DomainMatrix

from rootcascade.config import get_settings
from rootcascade.linalg import entry, from_entries, inverse, row_reduce, to_qq
from rootcascade.logging import LOGGER, log_time_duration
from rootcascade.reports import ensure
from rootcascade.rootsys import (
    Root,
    RootSystem,
    Weight,
    WeightLike,
    add,
    format_fw,
    negate,
    subtract,
)

Coords = tuple[Fraction, ...]
SparseVector = dict[int, Fraction]


class DimensionBoundExceededError(ValueError):
    def __init__(self, required: int, bound: int):
        super().__init__(
            f"Module has dimension {required}, above the bound {bound}; "
            f"set ROOTCASCADE_DIMENSION_BOUND={required} to build it"
        )
        self.required = required
        self.bound = bound


def weyl_dimension(root_system: RootSystem, weight: WeightLike) -> int:
    """
    Π_{φ>0} (λ+ρ, φ)/(ρ, φ).

    """
    highest = root_system.require_dominant(weight)
    shifted = highest + root_system.rho
    value = Fraction(1)
    for phi in root_system.positive_roots:
        value *= root_system.inner_product(shifted, phi) / root_system.inner_product(
            root_system.rho, phi
        )
    assert value.denominator == 1, f"Weyl dimension evaluated to {value}"
    return int(value)


@dataclass(frozen=True, eq=False)
class IrrepModule:
    """
    V_λ with its weight basis and the action of the Chevalley generators.
    Basis vector 0 is the highest weight vector; matrices act on columns.

    """

    root_system: RootSystem
    highest_weight: Weight
    weights: tuple[Coords, ...]
    raising: tuple[DomainMatrix, ...]
    lowering: tuple[DomainMatrix, ...]
    cartan: tuple[DomainMatrix, ...]
    root_vectors: dict[Root, DomainMatrix] = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    @property
    def highest_index(self) -> int:
        return 0

    @property
    def lowest_weight(self) -> Weight:
        longest = self.root_system.longest_element()
        coords = self.highest_weight.coords
        return self.root_system.weight(
            [
                sum((longest[i][j] * coords[j] for j in range(len(coords))), Fraction(0))
                for i in range(len(coords))
            ]
        )

    @property
    def lowest_index(self) -> int:
        indices = [
            index
            for index, coords in enumerate(self.weights)
            if coords == self.lowest_weight.coords
        ]
        assert len(indices) == 1, "Lowest weight space is not one-dimensional"
        return indices[0]

    def multiplicities(self) -> dict[Coords, int]:
        counts: dict[Coords, int] = {}
        for coords in self.weights:
            counts[coords] = counts.get(coords, 0) + 1
        return counts

    def basis_vector(self, index: int) -> DomainMatrix:
        return from_entries({(index, 0): 1}, self.dimension, 1)

    def coroot(self, root: Root) -> DomainMatrix:
        """
        Action of h_φ, a combination of the simple coroot actions.

        """
        coefficients = self.root_system.chevalley_constants().coroot(root)
        result = from_entries({}, self.dimension, self.dimension)
        for coefficient, matrix in zip(coefficients, self.cartan):
            if coefficient:
                result = result + matrix * to_qq(coefficient)
        return result

    def root_vector(self, root: Root) -> DomainMatrix:
        """
        Action of e_φ for any root φ. Non-simple root vectors come from
        e_{±(ψ+α_i)} = [e_{±α_i}, e_{±ψ}] / N(±α_i, ±ψ).

        """
        if root in self.root_vectors:
            return self.root_vectors[root]

        rs = self.root_system
        if not rs.is_root(root):
            raise ValueError(f"{root} is not a root of {rs.label}")
        positive = rs.is_positive(root)
        magnitude = root if positive else negate(root)

        if rs.height(magnitude) == 1:
            index = magnitude.index(1)
            matrix = self.raising[index] if positive else self.lowering[index]
        else:
            basis = rs.chevalley_constants()
            for index, simple in enumerate(rs.simple_roots):
                rest = subtract(magnitude, simple)
                if rs.is_positive(rest):
                    break
            sign = 1 if positive else -1
            simple_root = tuple(sign * c for c in rs.simple_roots[index])
            rest_root = tuple(sign * c for c in rest)
            left = self.root_vector(simple_root)
            right = self.root_vector(rest_root)
            n = basis.constant(simple_root, rest_root)
            matrix = commutator(left, right) * to_qq(Fraction(1, n))

        self.root_vectors[root] = matrix
        return matrix


def build_irrep(
    root_system: RootSystem, weight: WeightLike, bound: int | None = None
) -> IrrepModule:
    """
    Construct V_λ for a dominant integral λ.

    ```python {{sticky: True}}
    a2 = build_root_system("A2")
    module = build_irrep(a2, a2.fundamental_weight(0))
    module.dimension  # 3
    ```
    """
    highest = root_system.require_dominant(weight)
    bound = bound if bound is not None else get_settings().ROOTCASCADE_DIMENSION_BOUND
    required = weyl_dimension(root_system, highest)
    if required > bound:
        raise DimensionBoundExceededError(required, bound)

    with log_time_duration(
        f"module of highest weight {format_fw(root_system.fw_coords(highest))}",
        root_system=root_system.label,
    ):
        builder = _ModuleBuilder(root_system, highest)
        builder.run()

    module = builder.assemble()
    LOGGER.info(
        f"{root_system.label}: built module {format_fw(root_system.fw_coords(highest))} "
        f"of dimension {module.dimension}"
    )
    return module


class _ModuleBuilder:
    def __init__(self, root_system: RootSystem, highest: Weight):
        self.root_system = root_system
        self.highest = highest
        self.weights: list[Coords] = [highest.coords]
        self.by_weight: dict[Coords, list[int]] = {highest.coords: [0]}
        self.gram: dict[Coords, list[list[Fraction]]] = {highest.coords: [[Fraction(1)]]}
        self.raise_images: dict[tuple[int, int], SparseVector] = {}
        self.lower_images: dict[tuple[int, int], SparseVector] = {}

    def shift(self, coords: Coords, index: int, sign: int) -> Coords:
        return tuple(
            c + sign * int(i == index) for i, c in enumerate(coords)
        )

    def position(self, index: int) -> int:
        return self.by_weight[self.weights[index]].index(index)

    def run(self):
        rank = self.root_system.rank
        level = [0]
        while level:
            candidates: dict[Coords, list[tuple[int, int]]] = {}
            for index in level:
                for i in range(rank):
                    lowered = self.shift(self.weights[index], i, -1)
                    candidates.setdefault(lowered, []).append((i, index))

            next_level: list[int] = []
            for coords in sorted(candidates):
                next_level.extend(self._process_weight(coords, candidates[coords]))
            level = next_level

    def _raise_candidate(self, i: int, index: int, j: int) -> SparseVector:
        """
        e_j f_i b = f_i (e_j b) + δ_ij ⟨wt b, α_i∨⟩ b.

        """
        image: SparseVector = {}
        for source, value in self.raise_images.get((j, index), {}).items():
            for target, coefficient in self.lower_images[(i, source)].items():
                image[target] = image.get(target, Fraction(0)) + value * coefficient
        if i == j:
            pairing = self.root_system.coroot_pairing(
                self.weights[index], self.root_system.simple_roots[i]
            )
            if pairing:
                image[index] = image.get(index, Fraction(0)) + pairing
        return {target: value for target, value in image.items() if value}

    def _process_weight(
        self, coords: Coords, candidates: list[tuple[int, int]]
    ) -> list[int]:
        rank = self.root_system.rank
        images = [
            [self._raise_candidate(i, index, j) for j in range(rank)]
            for i, index in candidates
        ]

        size = len(candidates)
        gram = [[Fraction(0)] * size for _ in range(size)]
        for a, (i_a, index_a) in enumerate(candidates):
            row = self.gram[self.weights[index_a]][self.position(index_a)]
            for c in range(size):
                gram[a][c] = sum(
                    (
                        row[self.position(target)] * value
                        for target, value in images[c][i_a].items()
                    ),
                    Fraction(0),
                )

        _, pivots = row_reduce(gram, size)
        if not pivots:
            for i, index in candidates:
                self.lower_images[(i, index)] = {}
            return []

        chosen = list(pivots)
        block_inverse = inverse([[gram[a][c] for c in chosen] for a in chosen])
        new_indices = []
        for position in chosen:
            new_index = len(self.weights)
            self.weights.append(coords)
            self.by_weight.setdefault(coords, []).append(new_index)
            for j in range(rank):
                self.raise_images[(j, new_index)] = images[position][j]
            new_indices.append(new_index)
        self.gram[coords] = [[gram[a][c] for c in chosen] for a in chosen]

        for c, (i, index) in enumerate(candidates):
            column = [gram[a][c] for a in chosen]
            solution = [
                sum(
                    (block_inverse[r][s] * column[s] for s in range(len(chosen))),
                    Fraction(0),
                )
                for r in range(len(chosen))
            ]
            self.lower_images[(i, index)] = {
                new_indices[r]: value for r, value in enumerate(solution) if value
            }
        return new_indices

    def assemble(self) -> IrrepModule:
        rs = self.root_system
        size = len(self.weights)
        raising: list[DomainMatrix] = []
        lowering: list[DomainMatrix] = []
        cartan: list[DomainMatrix] = []
        for i in range(rs.rank):
            raising.append(
                from_entries(
                    {
                        (target, source): value
                        for source in range(size)
                        for target, value in self.raise_images.get((i, source), {}).items()
                    },
                    size,
                    size,
                )
            )
            lowering.append(
                from_entries(
                    {
                        (target, source): value
                        for source in range(size)
                        for target, value in self.lower_images.get((i, source), {}).items()
                    },
                    size,
                    size,
                )
            )
            cartan.append(
                from_entries(
                    {
                        (k, k): rs.coroot_pairing(self.weights[k], rs.simple_roots[i])
                        for k in range(size)
                    },
                    size,
                    size,
                )
            )
        return IrrepModule(
            root_system=rs,
            highest_weight=self.highest,
            weights=tuple(self.weights),
            raising=tuple(raising),
            lowering=tuple(lowering),
            cartan=tuple(cartan),
        )


def commutator(first: DomainMatrix, second: DomainMatrix) -> DomainMatrix:
    return first * second - second * first


def _agree(first: DomainMatrix, second: DomainMatrix) -> bool:
    return (first - second).is_zero_matrix


def check_module(module: IrrepModule):
    """
    Raise TheoremViolationError unless the module matches the Weyl dimension,
    satisfies the Chevalley–Serre relations, has lowest weight w₀λ with
    w₀-symmetric multiplicities, and realizes the structure constants.

    """
    rs = module.root_system
    label = list(rs.fw_coords(module.highest_weight))
    expected = weyl_dimension(rs, module.highest_weight)
    ensure(
        module.dimension == expected,
        "Module dimension differs from the Weyl dimension formula",
        lambda_fw=label,
        dimension=module.dimension,
        expected=expected,
    )

    for i in range(rs.rank):
        e_i, h_i = module.raising[i], module.cartan[i]
        for j in range(rs.rank):
            e_j, f_j = module.raising[j], module.lowering[j]
            ensure(
                _agree(commutator(h_i, e_j), e_j * to_qq(rs.cartan_matrix[i][j])),
                "[h_i, e_j] differs from <alpha_j, alpha_i coroot> e_j",
                lambda_fw=label,
                i=i,
                j=j,
            )
            bracket = commutator(e_i, f_j)
            ensure(
                _agree(bracket, h_i) if i == j else bracket.is_zero_matrix,
                "[e_i, f_j] differs from delta_ij h_i",
                lambda_fw=label,
                i=i,
                j=j,
            )
            if i != j:
                serre = e_j
                for _ in range(1 - rs.cartan_matrix[i][j]):
                    serre = commutator(e_i, serre)
                ensure(
                    serre.is_zero_matrix,
                    "Serre relation fails",
                    lambda_fw=label,
                    i=i,
                    j=j,
                )

    ensure(
        module.weights[module.lowest_index] == module.lowest_weight.coords,
        "Lowest weight differs from w0 lambda",
        lambda_fw=label,
    )
    longest = rs.longest_element()
    multiplicities = module.multiplicities()
    for coords, count in multiplicities.items():
        image = tuple(
            sum((longest[i][j] * coords[j] for j in range(rs.rank)), Fraction(0))
            for i in range(rs.rank)
        )
        ensure(
            multiplicities.get(image, 0) == count,
            "Weight multiplicities are not w0-symmetric",
            lambda_fw=label,
            weight=list(coords),
        )

    basis = rs.chevalley_constants()
    for phi in rs.positive_roots:
        ensure(
            _agree(
                commutator(module.root_vector(phi), module.root_vector(negate(phi))),
                module.coroot(phi),
            ),
            "[e_phi, e_-phi] differs from h_phi",
            lambda_fw=label,
            root=list(phi),
        )
        for psi in rs.positive_roots:
            total = add(phi, psi)
            if not rs.is_positive(total):
                continue
            ensure(
                _agree(
                    commutator(module.root_vector(phi), module.root_vector(psi)),
                    module.root_vector(total) * to_qq(basis.constant(phi, psi)),
                ),
                "Root vector brackets differ from the structure constants",
                lambda_fw=label,
                pair=[list(phi), list(psi)],
            )


def apply_sequence(
    module: IrrepModule, roots: Sequence[Root], vector: DomainMatrix
) -> DomainMatrix:
    """
    (e_{φ₁} ⋯ e_{φ_k}) v, the rightmost factor acting first.

    """
    for root in reversed(roots):
        vector = module.root_vector(root) * vector
        if vector.is_zero_matrix:
            break
    return vector


def coefficient_at(vector: DomainMatrix, index: int) -> Fraction:
    return entry(vector, index, 0)
