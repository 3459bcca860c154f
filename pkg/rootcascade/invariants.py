"""
The invariant ring S(n)^N, computed degree by degree.

A polynomial on n_− is N-invariant exactly when every simple root vector
annihilates it under the derivation action. That action preserves degree and
shifts H-weight by the root, so the kernel splits into small blocks of fixed
degree and weight that are solved independently over QQ.

"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product
from math import ceil
from random import Random
from typing import Sequence

from rootcascade.cascade import Cascade, compute_cascade, lattice_membership
from rootcascade.coadjoint import (
    TorusPoint,
    coadjoint_group_action,
    random_nil_vector,
)
from rootcascade.linalg import nullspace, rank, solve
from rootcascade.logging import LOGGER, log_time_duration
from rootcascade.polynomials import (
    Exponents,
    NilPolynomial,
    monomials_of_degree,
    monomials_of_weight,
)
from rootcascade.reports import (
    CheckResult,
    ClauseRecorder,
    TheoremViolationError,
    ensure,
)
from rootcascade.rootsys import (
    Root,
    RootSystem,
    Weight,
    WeightLike,
    add,
    format_fw,
    negate,
)
from rootcascade.serialization import GeneratorSetPayload, InvariantPayload, integral


class NotAnInvariantError(ValueError):
    pass


class OutsideGeneratorLatticeError(ValueError):
    pass


class GeneratorShortfallError(ValueError):
    def __init__(self, found: int, required: int, max_degree: int):
        super().__init__(
            f"Only {found} of {required} generators found up to degree {max_degree}; "
            "raise --max-degree"
        )
        self.found = found
        self.required = required
        self.max_degree = max_degree


@dataclass(frozen=True)
class InvariantBasis:
    degree: int
    weight: Weight | None
    basis: tuple[NilPolynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class SpectrumEntry:
    weight: Weight
    degree: int
    multiplicity: int
    invariant: NilPolynomial


@dataclass(frozen=True)
class Generator:
    weight: Weight
    degree: int
    polynomial: NilPolynomial
    cascade_coeffs: tuple[int, ...]

    def to_payload(self, root_system: RootSystem) -> InvariantPayload:
        return InvariantPayload(
            weight_fw=integral(root_system.fw_coords(self.weight)),
            degree=self.degree,
            cascade_coeffs=list(self.cascade_coeffs),
            terms=self.polynomial.to_terms_payload(),
        )


@dataclass(frozen=True)
class GeneratorSet:
    root_system: RootSystem
    cascade: Cascade
    max_degree: int
    generators: tuple[Generator, ...]
    spectrum: tuple[SpectrumEntry, ...]

    @property
    def weights(self) -> tuple[Weight, ...]:
        return tuple(generator.weight for generator in self.generators)

    def to_payload(self) -> GeneratorSetPayload:
        return GeneratorSetPayload(
            type=self.root_system.label,
            m=self.cascade.m,
            max_degree=self.max_degree,
            generators=[
                generator.to_payload(self.root_system) for generator in self.generators
            ],
        )


@dataclass(frozen=True)
class TorusRestriction:
    """
    c · Π a_β^{e_β}, the restriction of an invariant to r_−.

    """

    coefficient: Fraction
    exponents: tuple[int, ...]

    def evaluate(self, point: TorusPoint, cascade: Cascade) -> Fraction:
        value = self.coefficient
        for beta, exponent in zip(cascade.roots, self.exponents):
            value *= point.a[beta] ** exponent
        return value


def derivation_action(
    root_system: RootSystem, root: Root, polynomial: NilPolynomial
) -> NilPolynomial:
    """
    (e_χ · f)(v) = −df_v(P[e_χ, v]). With coordinates this reads
    e_χ · f = −Σ_φ N(χ, −(φ+χ)) c_{φ+χ} ∂f/∂c_φ.

    """
    if not root_system.is_positive(root):
        raise ValueError(f"Derivations are defined for positive roots, got {root}")
    basis = root_system.chevalley_constants()
    result = NilPolynomial.constant(root_system, 0)
    for phi in root_system.positive_roots:
        target = add(phi, root)
        if not root_system.is_positive(target):
            continue
        derivative = polynomial.diff(phi)
        if derivative.is_zero:
            continue
        n = basis.constant(root, negate(target))
        result = result - (NilPolynomial.variable(root_system, target) * derivative).scale(n)
    return result


def _derive_monomial(
    root_system: RootSystem, simple_index: int, monomial: Exponents
) -> dict[Exponents, Fraction]:
    """
    Derivation by e_{α_i} on a single monomial, as a sparse term map.

    """
    basis = root_system.chevalley_constants()
    positive = root_system.positive_roots
    alpha = root_system.simple_roots[simple_index]
    image: dict[Exponents, Fraction] = {}
    for index, exponent in enumerate(monomial):
        if not exponent:
            continue
        target = add(positive[index], alpha)
        if not root_system.is_positive(target):
            continue
        shifted = list(monomial)
        shifted[index] -= 1
        shifted[root_system.positive_index[target]] += 1
        key = tuple(shifted)
        image[key] = image.get(key, Fraction(0)) - exponent * basis.constant(
            alpha, negate(target)
        )
    return {key: value for key, value in image.items() if value}


@lru_cache(maxsize=None)
def _kernel_block(
    root_system: RootSystem, degree: int, weight: tuple[int, ...]
) -> tuple[NilPolynomial, ...]:
    monomials = monomials_of_weight(root_system, degree, weight)
    if not monomials:
        return ()

    row_index: dict[tuple[int, Exponents], int] = {}
    entries: dict[tuple[int, int], Fraction] = {}
    for column, monomial in enumerate(monomials):
        for i in range(root_system.rank):
            for image, value in _derive_monomial(root_system, i, monomial).items():
                row = row_index.setdefault((i, image), len(row_index))
                entries[(row, column)] = value

    matrix = [[Fraction(0)] * len(monomials) for _ in range(len(row_index))]
    for (row, column), value in entries.items():
        matrix[row][column] = value

    return tuple(
        NilPolynomial.from_terms(root_system, dict(zip(monomials, vector))).normalized()
        for vector in nullspace(matrix, len(monomials))
    )


def invariants_of_degree(
    root_system: RootSystem, degree: int, weight: WeightLike | None = None
) -> InvariantBasis:
    """
    Basis of the degree-d invariants, optionally restricted to one H-weight.

    ```python {{sticky: True}}
    a3 = build_root_system("A3")
    invariants_of_degree(a3, 2, (1, 2, 1)).basis  # [c_α2 c_θ − c_α12 c_α23]
    ```
    """
    if degree < 0:
        raise ValueError(f"Degree must be nonnegative, got {degree}")
    if weight is not None:
        coords = root_system.coords(weight)
        if any(c.denominator != 1 for c in coords):
            return InvariantBasis(degree, root_system.weight(coords), ())
        key = tuple(int(c) for c in coords)
        return InvariantBasis(
            degree, root_system.weight(coords), _kernel_block(root_system, degree, key)
        )

    basis: list[NilPolynomial] = []
    for block_weight in monomials_of_degree(root_system, degree):
        basis.extend(_kernel_block(root_system, degree, block_weight))
    return InvariantBasis(degree, None, tuple(basis))


def weight_spectrum(
    root_system: RootSystem,
    cascade: Cascade,
    max_degree: int,
    strict: bool = True,
) -> tuple[SpectrumEntry, ...]:
    """
    Every (weight, degree) block with a nonzero invariant, up to max_degree.
    With strict set, a block of dimension above one, a non-dominant weight, or
    a weight outside the nonnegative cascade cone raises TheoremViolationError.

    """
    if max_degree < 1:
        raise ValueError(f"max_degree must be at least 1, got {max_degree}")

    entries: list[SpectrumEntry] = []
    for degree in range(1, max_degree + 1):
        with log_time_duration(
            f"invariant kernels in degree {degree}", root_system=root_system.label
        ):
            for block_weight in monomials_of_degree(root_system, degree):
                basis = _kernel_block(root_system, degree, block_weight)
                if not basis:
                    continue
                entry = SpectrumEntry(
                    weight=root_system.weight(block_weight),
                    degree=degree,
                    multiplicity=len(basis),
                    invariant=basis[0],
                )
                if strict:
                    check_spectrum_entry(root_system, cascade, entry)
                entries.append(entry)

    LOGGER.info(
        f"{root_system.label}: {len(entries)} invariant weights up to degree {max_degree}"
    )
    return tuple(entries)


def check_spectrum_entry(root_system: RootSystem, cascade: Cascade, entry: SpectrumEntry):
    witness = {
        "weight_fw": root_system.fw_coords(entry.weight),
        "degree": entry.degree,
    }
    ensure(
        entry.multiplicity == 1,
        f"Invariant weight occurs with multiplicity {entry.multiplicity}",
        **witness,
    )
    ensure(
        root_system.is_dominant(entry.weight),
        "Invariant weight is not dominant",
        **witness,
    )
    coefficients = lattice_membership(root_system, entry.weight, cascade)
    ensure(
        coefficients is not None and all(c >= 0 for c in coefficients),
        "Invariant weight is not a nonnegative combination of cascade roots",
        coefficients=coefficients,
        **witness,
    )


def default_max_degree(root_system: RootSystem) -> int:
    degrees = []
    for factor in root_system.factors:
        match factor.family:
            case "A":
                degrees.append(ceil((factor.rank + 1) / 2))
            case "G":
                degrees.append(6)
            case _:
                degrees.append(4)
    return max(degrees)


def extract_generators(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    max_degree: int | None = None,
    strict: bool = True,
) -> GeneratorSet:
    """
    The prime invariants: those whose weight is not the sum of two nonzero
    invariant weights of lower degree. Multiplicity one makes this equivalent
    to the polynomial being irreducible among weight-vector invariants.

    """
    cascade = cascade or compute_cascade(root_system)
    max_degree = max_degree or default_max_degree(root_system)
    spectrum = weight_spectrum(root_system, cascade, max_degree, strict=strict)

    degree_of = {entry.weight.coords: entry.degree for entry in spectrum}
    generators: list[Generator] = []
    for entry in spectrum:
        decomposable = any(
            other.degree < entry.degree
            and (entry.weight - other.weight).coords in degree_of
            for other in spectrum
        )
        if decomposable:
            continue
        coefficients = lattice_membership(root_system, entry.weight, cascade)
        generators.append(
            Generator(
                weight=entry.weight,
                degree=entry.degree,
                polynomial=entry.invariant,
                cascade_coeffs=coefficients or (),
            )
        )

    if len(generators) < cascade.m:
        raise GeneratorShortfallError(len(generators), cascade.m, max_degree)

    generator_set = GeneratorSet(
        root_system=root_system,
        cascade=cascade,
        max_degree=max_degree,
        generators=tuple(generators),
        spectrum=spectrum,
    )
    if strict:
        check_generator_set(generator_set)
    return generator_set


def check_generator_set(generator_set: GeneratorSet):
    root_system = generator_set.root_system
    ensure(
        len(generator_set.generators) == generator_set.cascade.m,
        "Number of prime invariants differs from the cascade size",
        generators=len(generator_set.generators),
        m=generator_set.cascade.m,
    )
    ensure(
        rank([w.coords for w in generator_set.weights], root_system.rank)
        == generator_set.cascade.m,
        "Generator weights are linearly dependent",
        weights=[root_system.fw_coords(w) for w in generator_set.weights],
    )
    for entry in generator_set.spectrum:
        check_factorization(generator_set, entry)


def check_factorization(generator_set: GeneratorSet, entry: SpectrumEntry):
    root_system = generator_set.root_system
    witness = {"weight_fw": root_system.fw_coords(entry.weight), "degree": entry.degree}
    try:
        exponents = factorization_exponents(root_system, entry.weight, generator_set)
    except OutsideGeneratorLatticeError:
        raise TheoremViolationError(
            "Invariant weight lies outside the generator lattice", witness
        )
    ensure(
        all(e >= 0 for e in exponents),
        "Invariant weight needs a negative generator exponent",
        exponents=exponents,
        **witness,
    )
    monomial = generator_monomial(generator_set, exponents)
    ensure(
        entry.invariant.proportionality(monomial) not in (None, 0),
        "Invariant is not a monomial in the generators",
        exponents=exponents,
        **witness,
    )


def factorization_exponents(
    root_system: RootSystem, weight: WeightLike, generator_set: GeneratorSet
) -> tuple[int, ...]:
    """
    The integers e_i with ν = Σ e_i μ_i over the generator weights μ_i.

    """
    target = root_system.coords(weight)
    columns = [w.coords for w in generator_set.weights]
    solution = solve(columns, target)
    if solution is None or any(value.denominator != 1 for value in solution):
        raise OutsideGeneratorLatticeError(
            f"{format_fw(root_system.fw_coords(target))} is not an integer combination "
            "of the generator weights"
        )
    return tuple(int(value) for value in solution)


def generator_monomial(
    generator_set: GeneratorSet, exponents: Sequence[int]
) -> NilPolynomial:
    result = NilPolynomial.constant(generator_set.root_system)
    for generator, exponent in zip(generator_set.generators, exponents):
        if exponent < 0:
            raise ValueError("Negative exponents describe a ratio; use invariant_ratio")
        if exponent:
            result = result * generator.polynomial**exponent
    return result


def invariant_ratio(
    root_system: RootSystem, weight: WeightLike, generator_set: GeneratorSet
) -> tuple[NilPolynomial, NilPolynomial, tuple[int, ...]]:
    """
    A weight γ of the invariant field as a quotient ξ_ν / ξ_μ of coprime
    generator monomials with γ = ν − μ.

    """
    exponents = factorization_exponents(root_system, weight, generator_set)
    numerator = generator_monomial(generator_set, [max(e, 0) for e in exponents])
    denominator = generator_monomial(generator_set, [max(-e, 0) for e in exponents])
    return numerator, denominator, exponents


def restrict_to_torus(
    root_system: RootSystem, invariant: NilPolynomial, cascade: Cascade
) -> TorusRestriction:
    """
    Substitute c_φ = 0 off the cascade. An invariant of weight ν = Σ b_β β
    must restrict to a nonzero multiple of Π a_β^{b_β}, with Σ b_β its degree.

    """
    weight = invariant.weight
    if weight is None:
        raise ValueError("Torus restriction requires a weight vector")
    cascade_indices = [root_system.positive_index[beta] for beta in cascade.roots]
    off_cascade = [
        index
        for index in range(len(root_system.positive_roots))
        if index not in cascade_indices
    ]
    surviving = {
        monomial: coefficient
        for monomial, coefficient in invariant.terms.items()
        if not any(monomial[index] for index in off_cascade)
    }
    witness = {
        "weight_fw": root_system.fw_coords(weight),
        "degree": invariant.degree,
    }
    ensure(bool(surviving), "Invariant vanishes identically on r_-", **witness)
    ensure(
        len(surviving) == 1,
        "Torus restriction is not a monomial",
        terms=len(surviving),
        **witness,
    )

    monomial, coefficient = surviving.popitem()
    exponents = tuple(monomial[index] for index in cascade_indices)
    coefficients = lattice_membership(root_system, weight, cascade)
    ensure(
        coefficients == exponents,
        "Torus restriction exponents differ from the cascade coefficients",
        exponents=exponents,
        cascade_coeffs=coefficients,
        **witness,
    )
    ensure(
        sum(exponents) == invariant.degree,
        "Degree differs from the sum of cascade coefficients",
        exponents=exponents,
        **witness,
    )
    return TorusRestriction(coefficient=coefficient, exponents=exponents)


def highest_weight_vector_check(root_system: RootSystem, invariant: NilPolynomial) -> bool:
    for alpha in root_system.simple_roots:
        if not derivation_action(root_system, alpha, invariant).is_zero:
            raise NotAnInvariantError(f"{invariant!r} is not annihilated by e_{alpha}")
    weight = invariant.weight
    return (
        invariant.is_homogeneous
        and weight is not None
        and root_system.is_dominant(weight)
    )


def verify_multiplicity_one(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    max_degree: int | None = None,
    seed: int = 0,
    evaluations: int = 100,
) -> CheckResult:
    """
    Each invariant weight occurs once, is dominant, lies in the cascade cone,
    and its invariant really is constant along coadjoint N-orbits.

    """
    cascade = cascade or compute_cascade(root_system)
    max_degree = max_degree or default_max_degree(root_system)
    recorder = ClauseRecorder("t6", "Invariant weights occur with multiplicity one")
    spectrum = weight_spectrum(root_system, cascade, max_degree, strict=False)

    with recorder.clause("multiplicity_one", detail=f"{len(spectrum)} weights"):
        for entry in spectrum:
            ensure(
                entry.multiplicity == 1,
                "Invariant weight occurs more than once",
                weight_fw=root_system.fw_coords(entry.weight),
                degree=entry.degree,
                multiplicity=entry.multiplicity,
            )

    with recorder.clause("dominant_cascade_cone"):
        for entry in spectrum:
            check_spectrum_entry(
                root_system,
                cascade,
                SpectrumEntry(entry.weight, entry.degree, 1, entry.invariant),
            )

    with recorder.clause("highest_weight_vectors"):
        for entry in spectrum:
            ensure(
                highest_weight_vector_check(root_system, entry.invariant),
                "Invariant is not a highest weight vector",
                weight_fw=root_system.fw_coords(entry.weight),
            )

    with recorder.clause("coadjoint_invariance", detail=f"{evaluations} evaluations"):
        rng = Random(seed)
        for index in range(evaluations if spectrum else 0):
            entry = spectrum[index % len(spectrum)]
            factors = [
                random_nil_vector(root_system, rng, side="n", bound=2)
                for _ in range(rng.randint(1, 2))
            ]
            v = random_nil_vector(root_system, rng)
            moved = coadjoint_group_action(root_system, factors, v)
            ensure(
                entry.invariant.evaluate(moved) == entry.invariant.evaluate(v),
                "Invariant changes along a coadjoint orbit",
                weight_fw=root_system.fw_coords(entry.weight),
                v=v.to_payload().model_dump(),
                factors=[factor.to_payload().model_dump() for factor in factors],
            )

    return recorder.result()


def verify_generators(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    max_degree: int | None = None,
) -> CheckResult:
    """
    S(n)^N is a polynomial ring on m prime invariants whose weights span the
    cascade lattice.

    """
    cascade = cascade or compute_cascade(root_system)
    max_degree = max_degree or default_max_degree(root_system)
    recorder = ClauseRecorder("t7", "S(n)^N is a polynomial ring on m generators")

    generator_set: GeneratorSet | None = None
    try:
        generator_set = extract_generators(root_system, cascade, max_degree, strict=False)
    except GeneratorShortfallError as exc:
        # A bound below the top generator degree is infeasible
        recorder.skip("generator_count", str(exc))
    else:
        with recorder.clause("generator_count"):
            ensure(
                len(generator_set.generators) == cascade.m,
                "Number of prime invariants differs from the cascade size",
                generators=len(generator_set.generators),
                m=cascade.m,
            )

    dependent = (
        "weights_independent",
        "factorization",
        "spectrum_shape",
        "algebraically_independent",
        "cascade_lattice_generated",
    )
    if generator_set is None or len(generator_set.generators) != cascade.m:
        for name in dependent:
            recorder.skip(name, "generator extraction did not produce m generators")
        return recorder.result()

    weights = generator_set.weights
    with recorder.clause("weights_independent"):
        ensure(
            rank([w.coords for w in weights], root_system.rank) == cascade.m,
            "Generator weights are linearly dependent",
            weights=[root_system.fw_coords(w) for w in weights],
        )

    with recorder.clause("factorization"):
        for entry in generator_set.spectrum:
            check_factorization(generator_set, entry)

    with recorder.clause("spectrum_shape"):
        degrees = [generator.degree for generator in generator_set.generators]
        predicted: set[tuple[Fraction, ...]] = set()
        for exponents in iter_product(
            *(range(max_degree // degree + 1) for degree in degrees)
        ):
            total_degree = sum(e * d for e, d in zip(exponents, degrees))
            if 0 < total_degree <= max_degree:
                total = root_system.weight([0] * root_system.rank)
                for exponent, weight in zip(exponents, weights):
                    total = total + weight.scale(exponent)
                predicted.add(total.coords)
        found = {entry.weight.coords for entry in generator_set.spectrum}
        ensure(
            predicted == found,
            "Invariant weights differ from the monoid spanned by the generators",
            missing=[root_system.fw_coords(c) for c in sorted(predicted - found)],
            unexpected=[root_system.fw_coords(c) for c in sorted(found - predicted)],
        )

    with recorder.clause("algebraically_independent"):
        restrictions = [
            restrict_to_torus(root_system, generator.polynomial, cascade).exponents
            for generator in generator_set.generators
        ]
        ensure(
            rank(restrictions, cascade.m) == cascade.m,
            "Torus restrictions of the generators are dependent monomials",
            exponents=restrictions,
        )

    with recorder.clause("cascade_lattice_generated"):
        for beta in cascade.roots:
            try:
                numerator, denominator, exponents = invariant_ratio(
                    root_system, beta, generator_set
                )
            except OutsideGeneratorLatticeError:
                raise TheoremViolationError(
                    "Cascade root is not an integer combination of generator weights",
                    {"root": list(beta)},
                )
            ensure(
                numerator.weight is not None
                and denominator.weight is not None
                and (numerator.weight - denominator.weight).coords
                == root_system.coords(beta),
                "Quotient of invariants has the wrong weight",
                root=list(beta),
                exponents=exponents,
            )
        for generator in generator_set.generators:
            ensure(
                lattice_membership(root_system, generator.weight, cascade) is not None,
                "Generator weight lies outside the cascade lattice",
                weight_fw=root_system.fw_coords(generator.weight),
            )

    return recorder.result()


def verify_torus_restriction(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    max_degree: int | None = None,
) -> CheckResult:
    """
    Every invariant restricts to r_− as a nonzero monomial Π a_β^{b_β}, and its
    degree is Σ b_β.

    """
    cascade = cascade or compute_cascade(root_system)
    max_degree = max_degree or default_max_degree(root_system)
    recorder = ClauseRecorder("t8", "Invariants restrict to r_- as nonzero monomials")
    spectrum = weight_spectrum(root_system, cascade, max_degree, strict=False)

    with recorder.clause("nonzero_monomial", detail=f"{len(spectrum)} invariants"):
        for entry in spectrum:
            restrict_to_torus(root_system, entry.invariant, cascade)

    with recorder.clause("restriction_matches_evaluation"):
        rng = Random(len(spectrum))
        for entry in spectrum:
            restriction = restrict_to_torus(root_system, entry.invariant, cascade)
            point = TorusPoint(
                {beta: Fraction(rng.choice([-3, -2, -1, 1, 2, 3])) for beta in cascade.roots}
            )
            ensure(
                restriction.evaluate(point, cascade)
                == entry.invariant.evaluate(point.to_nil_vector()),
                "Restriction disagrees with evaluating the invariant on r_-",
                weight_fw=root_system.fw_coords(entry.weight),
            )

    return recorder.result()

