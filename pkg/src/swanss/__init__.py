"""Exact equivariant cohomology of Z/p actions on finite simplicial
complexes: module decomposition over F_p[Z/p], the Swan double complex
and its multiplicative spectral sequence, duality page conditions, and
congruence validators."""

__version__ = "0.1.0"

from .linalg import FieldP, PrimeFieldMatrix, Subquotient, subquotient_dim
from .gmodule import (
    CohomologyProfile,
    Decomposition,
    GModule,
    check_dual_pairing,
    chi_t,
    decompose,
    group_cohomology,
    is_nice,
    module_from_multiplicities,
    t_sum,
    trivial_module,
)
from .complexes import (
    EquivariantCochainComplex,
    SimplicialGComplex,
    barycentric_subdivision,
    betti_numbers,
    cochain_complex,
    cohomology_gmodules,
    cup_product,
    fixed_subcomplex,
    load_complex_json,
    quotient_complex,
    validate_and_regularize,
)
from .swan import SwanDoubleComplex, build, swan_product, total_cohomology_dims
from .pages import (
    PageClass,
    PageTower,
    check_odd_page_vanishing,
    check_zero_row,
    compute_pages,
    page_product,
)
from .duality import (
    check_odd_vanishing_terms,
    check_pd,
    check_sspd,
    check_wpd,
    duality_report,
    mod4_audit,
    pd_propagation_audit,
    tower_terms,
    verify_bryan,
    verify_chi_t,
    verify_sokolov,
    verify_t_inequality,
    verify_theorem_zp,
    verify_torus_congruence,
)
from .synthetic import SyntheticPage, load_synthetic_page
