"""
Matrix coefficients f(u) = ⟨u v_λ, z_{λ*}⟩ of irreducible modules and their
top symbols.

The pairing with z_{λ*} reads off the coordinate of the lowest weight vector,
so f is nonzero only on elements of U(n_−) of weight −(λ+λ*). Its codegree k
is the shortest monomial length on which it does not vanish, and its degree-k
part, transported to S(n), is an N-invariant polynomial of weight λ+λ*.

"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product as iter_product
from math import factorial
from random import Random
from typing import Sequence

from rootcascade.cascade import Cascade, cascade_weight, compute_cascade, lattice_membership
from rootcascade.config import get_settings
from rootcascade.invariants import (
    GeneratorShortfallError,
    OutsideGeneratorLatticeError,
    derivation_action,
    extract_generators,
    factorization_exponents,
    generator_monomial,
    invariants_of_degree,
)
from rootcascade.irreps import (
    DimensionBoundExceededError,
    IrrepModule,
    apply_sequence,
    build_irrep,
    check_module,
    coefficient_at,
    weyl_dimension,
)
from rootcascade.logging import LOGGER, log_time_duration
from rootcascade.polynomials import Exponents, NilPolynomial, monomials_of_weight
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
    format_root,
    negate,
    zero_root,
)
from rootcascade.serialization import LipsmanWolfPayload, integral, rational


def dual_weight(root_system: RootSystem, weight: WeightLike) -> Weight:
    """
    λ* = −w₀λ, the highest weight of the dual module.

    """
    longest = root_system.longest_element()
    coords = root_system.coords(weight)
    rank = root_system.rank
    return root_system.weight(
        [
            -sum((longest[i][j] * coords[j] for j in range(rank)), Fraction(0))
            for i in range(rank)
        ]
    )


def lambda_plus_star(
    root_system: RootSystem, weight: WeightLike, cascade: Cascade
) -> tuple[Weight, tuple[int, ...]]:
    """
    λ + λ* = Σ_β ⟨λ, β∨⟩ β over the cascade, returned with the coefficients
    ⟨λ, β∨⟩. The sum is compared against λ − w₀λ computed from the longest
    Weyl element.

    ```python {{sticky: True}}
    b2 = build_root_system("B2")
    total, coefficients = lambda_plus_star(b2, b2.fundamental_weight(0), compute_cascade(b2))
    total.coords   # θ + α1 = (2, 2)
    coefficients   # (1, 1)
    ```
    """
    highest = root_system.require_dominant(weight)
    pairings = [root_system.coroot_pairing(highest, beta) for beta in cascade.roots]
    coefficients = tuple(integral(pairings))
    by_cascade = root_system.weight(cascade_weight(root_system, cascade, coefficients))
    by_longest = highest + dual_weight(root_system, highest)
    ensure(
        by_cascade.coords == by_longest.coords,
        "Cascade sum of coroot pairings differs from lambda - w0 lambda",
        lambda_fw=root_system.fw_coords(highest),
        cascade_sum=by_cascade.coords,
        longest_element_sum=by_longest.coords,
    )
    return by_cascade, coefficients


def _target_root(module: IrrepModule) -> Root:
    target = (module.highest_weight - module.lowest_weight).as_root()
    assert target is not None, "λ − w₀λ is not in the root lattice"
    return target


def pbw_sequence(root_system: RootSystem, monomial: Exponents) -> list[Root]:
    """
    The positive roots of an exponent vector, each repeated by its exponent,
    in positive-root order.

    """
    sequence: list[Root] = []
    for root, exponent in zip(root_system.positive_roots, monomial):
        sequence.extend([root] * exponent)
    return sequence


def matrix_coefficient(module: IrrepModule, roots: Sequence[Root]) -> Fraction:
    """
    f(e_{−φ₁} ⋯ e_{−φ_k}) for positive roots φ_j: the lowest weight coordinate
    of e_{−φ₁} ⋯ e_{−φ_k} v_λ, the rightmost factor acting first. Monomials of
    the wrong total weight pair to zero.

    """
    rs = module.root_system
    total = zero_root(rs.rank)
    for phi in roots:
        if not rs.is_positive(phi):
            raise ValueError(f"{format_root(phi)} is not a positive root of {rs.label}")
        total = add(total, phi)
    if total != _target_root(module):
        return Fraction(0)

    vector = apply_sequence(
        module,
        [negate(phi) for phi in roots],
        module.basis_vector(module.highest_index),
    )
    return coefficient_at(vector, module.lowest_index)


def codegree(module: IrrepModule) -> int:
    """
    Smallest length of a U(n_−) monomial with a nonzero matrix coefficient.
    PBW monomials in a fixed order span each filtration level, so searching
    them length by length is enough.

    """
    rs = module.root_system
    target = _target_root(module)
    for length in range(sum(target) + 1):
        for monomial in monomials_of_weight(rs, length, target):
            if matrix_coefficient(module, pbw_sequence(rs, monomial)):
                return length
    raise TheoremViolationError(
        "No monomial reaches the lowest weight vector",
        {"lambda_fw": rs.fw_coords(module.highest_weight)},
    )


def top_symbol(module: IrrepModule, degree: int | None = None) -> NilPolynomial:
    """
    f_(k) = Σ_γ f(e_{−φ}^γ) / Π γ(φ)! · Π c_φ^{γ(φ)} over exponent vectors γ of
    length k and weight λ+λ*, with c_φ the coordinate dual to e_{−φ}.

    """
    rs = module.root_system
    degree = codegree(module) if degree is None else degree
    terms: dict[Exponents, Fraction] = {}
    for monomial in monomials_of_weight(rs, degree, _target_root(module)):
        value = matrix_coefficient(module, pbw_sequence(rs, monomial))
        if value:
            symmetry = 1
            for exponent in monomial:
                symmetry *= factorial(exponent)
            terms[monomial] = value / symmetry
    return NilPolynomial.from_terms(rs, terms)


@dataclass(frozen=True)
class TopSymbolAnalysis:
    root_system: RootSystem
    highest_weight: Weight
    dual_weight: Weight
    lambda_plus_star: Weight
    cascade_coeffs: tuple[int, ...]
    dimension: int
    codegree: int
    symbol: NilPolynomial
    invariant: NilPolynomial | None
    proportionality: Fraction | None

    @property
    def passed(self) -> bool:
        return (
            self.codegree == sum(self.cascade_coeffs)
            and self.proportionality is not None
            and self.proportionality != 0
        )

    def to_payload(self) -> LipsmanWolfPayload:
        rs = self.root_system
        return LipsmanWolfPayload(
            type=rs.label,
            lambda_fw=integral(rs.fw_coords(self.highest_weight)),
            lambda_star_fw=integral(rs.fw_coords(self.dual_weight)),
            lambda_plus_star_fw=integral(rs.fw_coords(self.lambda_plus_star)),
            dimension=self.dimension,
            codegree=self.codegree,
            cascade_coeffs=list(self.cascade_coeffs),
            proportionality=(
                rational(self.proportionality) if self.proportionality is not None else None
            ),
            passed=self.passed,
        )


def invariant_of_weight(
    root_system: RootSystem, weight: WeightLike, degree: int
) -> NilPolynomial | None:
    basis = invariants_of_degree(root_system, degree, weight).basis
    return basis[0] if len(basis) == 1 else None


def analyze_top_symbol(
    root_system: RootSystem,
    weight: WeightLike,
    cascade: Cascade | None = None,
    bound: int | None = None,
) -> TopSymbolAnalysis:
    """
    Build V_λ, find the codegree and top symbol of its matrix coefficient, and
    compare the symbol with the invariant ξ_{λ+λ*} found by brute force.

    ```python {{sticky: True}}
    a2 = build_root_system("A2")
    analysis = analyze_top_symbol(a2, a2.fundamental_weight(0))
    analysis.codegree         # 1
    analysis.proportionality  # f_(1) = c · c_θ
    ```
    """
    cascade = cascade or compute_cascade(root_system)
    highest = root_system.require_dominant(weight)
    module = build_irrep(root_system, highest, bound)
    check_module(module)
    total, coefficients = lambda_plus_star(root_system, highest, cascade)

    with log_time_duration("top symbol", root_system=root_system.label):
        k = codegree(module)
        symbol = top_symbol(module, k)
    invariant = invariant_of_weight(root_system, total, sum(coefficients))
    proportionality = (
        symbol.proportionality(invariant) if invariant is not None else None
    )
    LOGGER.info(
        f"{root_system.label}: codegree {k}, expected {sum(coefficients)}, "
        f"proportionality {proportionality}"
    )
    return TopSymbolAnalysis(
        root_system=root_system,
        highest_weight=highest,
        dual_weight=dual_weight(root_system, highest),
        lambda_plus_star=total,
        cascade_coeffs=coefficients,
        dimension=module.dimension,
        codegree=k,
        symbol=symbol,
        invariant=invariant,
        proportionality=proportionality,
    )


def default_weights(root_system: RootSystem, bound: int | None = None) -> list[Weight]:
    """
    The fundamental weights whose modules fit the dimension bound.

    """
    bound = bound if bound is not None else get_settings().ROOTCASCADE_DIMENSION_BOUND
    return [
        root_system.fundamental_weight(index)
        for index in range(root_system.rank)
        if weyl_dimension(root_system, root_system.fundamental_weight(index)) <= bound
    ]


def random_dominant_weight(root_system: RootSystem, rng: Random, bound: int = 3) -> Weight:
    return root_system.weight_from_fw([rng.randint(0, bound) for _ in range(root_system.rank)])


def _orderings(
    sequence: list[Root], rng: Random, samples: int = 6
) -> list[list[Root]]:
    if len(sequence) <= 3:
        return [list(order) for order in sorted(set(permutations(sequence)))]
    orderings = []
    for _ in range(samples):
        shuffled = list(sequence)
        rng.shuffle(shuffled)
        orderings.append(shuffled)
    return orderings


TOP_SYMBOL_CLAUSES = (
    "dimension",
    "relations",
    "lambda_plus_star",
    "invariant_exists",
    "codegree",
    "vanishing_below_codegree",
    "permutation_invariance",
    "top_symbol_invariant",
    "proportional",
)


def verify_top_symbol(
    root_system: RootSystem,
    weights: Sequence[WeightLike] | None = None,
    cascade: Cascade | None = None,
    seed: int = 0,
    bound: int | None = None,
    random_weights: int = 20,
) -> CheckResult:
    """
    For each λ: V_λ is correct, the codegree of its matrix coefficient is
    Σ ⟨λ, β∨⟩, and the top symbol is a nonzero multiple of ξ_{λ+λ*}.

    """
    cascade = cascade or compute_cascade(root_system)
    recorder = ClauseRecorder("t9", "Top symbols of matrix coefficients are the invariants")
    rng = Random(seed)
    chosen = (
        [root_system.require_dominant(w) for w in weights]
        if weights is not None
        else default_weights(root_system, bound)
    )

    for highest in chosen:
        suffix = f"[{format_root(integral(root_system.fw_coords(highest)))}]"
        try:
            module = build_irrep(root_system, highest, bound)
        except DimensionBoundExceededError as exc:
            for name in TOP_SYMBOL_CLAUSES:
                recorder.skip(name + suffix, str(exc))
            continue
        _record_top_symbol(recorder, module, cascade, suffix, rng)

    with recorder.clause("lambda_plus_star_routes", detail=f"{random_weights} weights"):
        for _ in range(random_weights):
            lambda_plus_star(root_system, random_dominant_weight(root_system, rng), cascade)

    return recorder.result()


def _record_top_symbol(
    recorder: ClauseRecorder,
    module: IrrepModule,
    cascade: Cascade,
    suffix: str,
    rng: Random,
):
    rs = module.root_system
    highest = module.highest_weight
    witness = {"lambda_fw": rs.fw_coords(highest)}

    with recorder.clause("dimension" + suffix, detail=f"dimension {module.dimension}"):
        ensure(
            module.dimension == weyl_dimension(rs, highest),
            "Module dimension differs from the Weyl dimension formula",
            dimension=module.dimension,
            **witness,
        )

    with recorder.clause("relations" + suffix):
        check_module(module)

    total: Weight | None = None
    coefficients: tuple[int, ...] = ()
    with recorder.clause("lambda_plus_star" + suffix):
        total, coefficients = lambda_plus_star(rs, highest, cascade)
        ensure(
            rs.is_dominant(total)
            and lattice_membership(rs, total, cascade) == coefficients,
            "lambda + lambda* is not a dominant member of the cascade lattice",
            coefficients=coefficients,
            **witness,
        )
    if total is None:
        for name in TOP_SYMBOL_CLAUSES[3:]:
            recorder.skip(name + suffix, "lambda + lambda* unavailable")
        return

    expected = sum(coefficients)
    invariant: NilPolynomial | None = None
    with recorder.clause("invariant_exists" + suffix):
        invariant = invariant_of_weight(rs, total, expected)
        ensure(
            invariant is not None,
            "No unique invariant of weight lambda + lambda*",
            degree=expected,
            **witness,
        )

    k: int | None = None
    with recorder.clause("codegree" + suffix):
        k = codegree(module)
        ensure(
            k == expected,
            "Codegree differs from the sum of cascade coefficients",
            codegree=k,
            expected=expected,
            **witness,
        )
    if k is None:
        for name in TOP_SYMBOL_CLAUSES[5:]:
            recorder.skip(name + suffix, "codegree unavailable")
        return

    target = _target_root(module)
    with recorder.clause("vanishing_below_codegree" + suffix):
        for length in range(k):
            for monomial in monomials_of_weight(rs, length, target):
                sequence = pbw_sequence(rs, monomial)
                for order in (sequence, sequence[::-1]):
                    ensure(
                        matrix_coefficient(module, order) == 0,
                        "Matrix coefficient is nonzero below the codegree",
                        monomial=[list(root) for root in order],
                        **witness,
                    )

    with recorder.clause("permutation_invariance" + suffix):
        for monomial in monomials_of_weight(rs, k, target):
            sequence = pbw_sequence(rs, monomial)
            reference = matrix_coefficient(module, sequence)
            for order in _orderings(sequence, rng):
                ensure(
                    matrix_coefficient(module, order) == reference,
                    "Top-length matrix coefficient depends on the factor order",
                    monomial=[list(root) for root in order],
                    **witness,
                )

    symbol = top_symbol(module, k)
    with recorder.clause("top_symbol_invariant" + suffix):
        ensure(not symbol.is_zero, "Top symbol vanishes", **witness)
        ensure(
            symbol.weight is not None and symbol.weight.coords == total.coords,
            "Top symbol has the wrong weight",
            **witness,
        )
        for alpha in rs.simple_roots:
            ensure(
                derivation_action(rs, alpha, symbol).is_zero,
                "Top symbol is not annihilated by a simple root vector",
                root=list(alpha),
                **witness,
            )

    with recorder.clause("proportional" + suffix):
        ratio = symbol.proportionality(invariant) if invariant is not None else None
        ensure(
            ratio is not None and ratio != 0,
            "Top symbol is not a multiple of the invariant",
            **witness,
        )


def verify_dominant_lattice(
    root_system: RootSystem,
    cascade: Cascade | None = None,
    coeff_bound: int = 2,
    max_degree: int | None = None,
) -> CheckResult:
    """
    The dominant members of the cascade lattice are exactly the weights of
    S(n)^N: each Σ b_β β that is dominant carries an invariant of degree Σ b_β,
    and every invariant weight found lies in that set.

    """
    cascade = cascade or compute_cascade(root_system)
    recorder = ClauseRecorder(
        "joseph", "Invariant weights are the dominant members of the cascade lattice"
    )
    members = [
        (coefficients, cascade_weight(root_system, cascade, coefficients))
        for coefficients in iter_product(range(coeff_bound + 1), repeat=cascade.m)
    ]
    dominant = [(b, nu) for b, nu in members if any(b) and root_system.is_dominant(nu)]

    generator_set = None
    try:
        generator_set = extract_generators(root_system, cascade, max_degree, strict=False)
    except GeneratorShortfallError as exc:
        recorder.skip("generators", str(exc))
    else:
        with recorder.clause("generators", detail=f"{len(dominant)} dominant members"):
            ensure(
                len(generator_set.generators) == cascade.m,
                "Number of prime invariants differs from the cascade size",
                generators=len(generator_set.generators),
                m=cascade.m,
            )

    if generator_set is None:
        for name in ("realized", "contained", "self_dual"):
            recorder.skip(name, "generator extraction stopped short of m generators")
    else:
        with recorder.clause("realized"):
            for coefficients, nu in dominant:
                witness = {"coefficients": coefficients, "weight": nu}
                invariant = invariant_of_weight(root_system, nu, sum(coefficients))
                ensure(
                    invariant is not None,
                    "Dominant cascade lattice member has no invariant",
                    **witness,
                )
                try:
                    exponents = factorization_exponents(root_system, nu, generator_set)
                except OutsideGeneratorLatticeError:
                    raise TheoremViolationError(
                        "Dominant cascade lattice member is outside the generator lattice",
                        witness,
                    )
                ensure(
                    all(e >= 0 for e in exponents),
                    "Dominant cascade lattice member needs a negative exponent",
                    exponents=exponents,
                    **witness,
                )
                monomial = generator_monomial(generator_set, exponents)
                ensure(
                    invariant is not None
                    and monomial.proportionality(invariant) not in (None, 0),
                    "Invariant differs from the generator monomial",
                    exponents=exponents,
                    **witness,
                )

        with recorder.clause("contained", detail=f"{len(generator_set.spectrum)} weights"):
            for entry in generator_set.spectrum:
                ensure(
                    root_system.is_dominant(entry.weight)
                    and lattice_membership(root_system, entry.weight, cascade) is not None,
                    "Invariant weight is outside the dominant cascade lattice",
                    weight_fw=root_system.fw_coords(entry.weight),
                )

        with recorder.clause("self_dual"):
            for coefficients, nu in members:
                ensure(
                    dual_weight(root_system, nu).coords == root_system.coords(nu),
                    "w0 does not act as -1 on the cascade lattice",
                    coefficients=coefficients,
                )
            for coefficients, nu in dominant:
                try:
                    single = factorization_exponents(root_system, nu, generator_set)
                    double = factorization_exponents(
                        root_system, tuple(2 * c for c in nu), generator_set
                    )
                except OutsideGeneratorLatticeError:
                    raise TheoremViolationError(
                        "Cascade lattice member is outside the generator lattice",
                        {"coefficients": coefficients},
                    )
                ensure(
                    double == tuple(2 * e for e in single),
                    "Exponents of 2 nu are not twice those of nu",
                    coefficients=coefficients,
                )

    with recorder.clause("zero"):
        ensure(
            invariant_of_weight(root_system, zero_root(root_system.rank), 0)
            == NilPolynomial.constant(root_system),
            "Constants do not realize the zero weight",
        )

    return recorder.result()
