from .cascade import Cascade as Cascade, compute_cascade as compute_cascade
from .coadjoint import (
    NilVector as NilVector,
    TorusPoint as TorusPoint,
    coadjoint_action as coadjoint_action,
    isotropy_algebra as isotropy_algebra,
    orbit_dimension as orbit_dimension,
)
from .invariants import (
    extract_generators as extract_generators,
    invariants_of_degree as invariants_of_degree,
    weight_spectrum as weight_spectrum,
)
from .irreps import build_irrep as build_irrep, weyl_dimension as weyl_dimension
from .matrix_coefficients import (
    analyze_top_symbol as analyze_top_symbol,
    codegree as codegree,
    lambda_plus_star as lambda_plus_star,
    matrix_coefficient as matrix_coefficient,
    top_symbol as top_symbol,
)
from .polynomials import NilPolynomial as NilPolynomial
from .rootsys import (
    CartanType as CartanType,
    RootSystem as RootSystem,
    Weight as Weight,
    build_root_system as build_root_system,
)
