"""starq: deformation-quantization toolkit.

Exact star products on polynomial phase-space symbols, a numerical
Weyl-Wigner correspondence in a truncated Hermite basis, kernel
families for the (1+1) Galilei and Newton-Hooke groups with the full
set of kernel axioms as runnable checks, and the Poisson-Lie
quantization of SL(2) into SL_q(2) with exact R-matrix verification.
"""

from .rationals import CRat
from .phasepoly import (
    PhasePoly,
    HbarSeries,
    ParseError,
    parse_expression,
    poisson_bracket,
    bidiff_power,
    moyal_star,
    star_commutator,
    moyal_bracket,
    compose_linear,
    is_symplectic,
    symplectic_equivariance_residual,
)
from .weylalgebra import WeylElement, weyl_symmetrize, weyl_homomorphism_check
from .grid import PhaseGrid, diff1_6, diff2_6, STENCIL_MARGIN
from .hermite import HermiteBasis, OperatorMatrix
from .weylnumeric import (
    grossmann_royer,
    weyl_map,
    weyl_inverse,
    wigner_from_state,
    smeared_trace_product,
    radial_window,
    windowed_poly_grid,
    cross_validate_star,
    round_trip_residual,
    trace_product_residual,
    average_identity_residual,
    required_quad_order,
)
from .galilei import (
    GalileiElement,
    GalileiOrbitPoint,
    LineState,
    galilei_compose,
    galilei_inverse,
    galilei_coadjoint,
    galilei_orbit_point,
    galilei_coadjoint_orbit,
    galilei_section,
    galilei_puir,
    galilei_puir_matrix,
    galilei_sw_kernel,
    galilei_kernel_matrix,
    galilei_covariance_residual,
    galilei_hermiticity_residual,
    galilei_windowed_trace,
    galilei_raw_traciality_functional,
    check_phase_constraints,
    square_wave_phase,
    observation_sandwich,
)
from .newtonhooke import (
    NHElement,
    NHOrbitPoint,
    CircleState,
    nh_compose,
    nh_inverse,
    nh_coadjoint,
    nh_orbit_point,
    nh_coadjoint_orbit,
    nh_section,
    nh_profile_coeffs,
    nh_default_profile,
    profile_constraint_residuals,
    nh_kernel_coeffs,
    nh_puir,
    nh_puir_matrix,
    nh_kernel_matrix,
    nh_sw_kernel,
    nh_generators,
    nh_generator_fd,
    nh_ansatz_matrix,
    nh_transported_kernel,
)
from .swaxioms import (
    OrbitQuadrature,
    KernelFamily,
    galilei_family,
    nh_family,
    covariance_residual,
    covariance_via_lemma31,
    projectivity_residual,
    traciality_residual,
    traciality_refinement,
    windowed_trace,
    sw_symbol,
    sw_dequantize,
    dequantize_round_trip,
    reproducing_kernel_residual,
    trikernel_raw,
    trikernel_star,
    trikernel_star_raw,
    star_average_residual,
)
from .sl2 import (
    Sl2Element,
    rhat,
    invariant_two_tensor,
    schouten_bracket_rep,
)
from .sklyanin import SklyaninPoly, sklyanin_bracket
from .slq2 import (
    QPoly,
    QRingRational,
    QRingSeries,
    nc_normalize,
    build_fhat,
    build_rq,
    explicit_rq,
    qybe_residual,
    rtt_residual,
    quantum_determinant_central,
    semiclassical_limit,
)

__version__ = "0.1.0"

__all__ = [
    "CRat",
    "PhasePoly",
    "HbarSeries",
    "ParseError",
    "parse_expression",
    "poisson_bracket",
    "bidiff_power",
    "moyal_star",
    "star_commutator",
    "moyal_bracket",
    "compose_linear",
    "is_symplectic",
    "symplectic_equivariance_residual",
    "WeylElement",
    "weyl_symmetrize",
    "weyl_homomorphism_check",
    "PhaseGrid",
    "diff1_6",
    "diff2_6",
    "STENCIL_MARGIN",
    "HermiteBasis",
    "OperatorMatrix",
    "grossmann_royer",
    "weyl_map",
    "weyl_inverse",
    "wigner_from_state",
    "smeared_trace_product",
    "radial_window",
    "windowed_poly_grid",
    "cross_validate_star",
    "round_trip_residual",
    "trace_product_residual",
    "average_identity_residual",
    "required_quad_order",
    "GalileiElement",
    "GalileiOrbitPoint",
    "LineState",
    "galilei_compose",
    "galilei_inverse",
    "galilei_coadjoint",
    "galilei_orbit_point",
    "galilei_coadjoint_orbit",
    "galilei_section",
    "galilei_puir",
    "galilei_puir_matrix",
    "galilei_sw_kernel",
    "galilei_kernel_matrix",
    "galilei_covariance_residual",
    "galilei_hermiticity_residual",
    "galilei_windowed_trace",
    "galilei_raw_traciality_functional",
    "check_phase_constraints",
    "square_wave_phase",
    "observation_sandwich",
    "NHElement",
    "NHOrbitPoint",
    "CircleState",
    "nh_compose",
    "nh_inverse",
    "nh_coadjoint",
    "nh_orbit_point",
    "nh_coadjoint_orbit",
    "nh_section",
    "nh_profile_coeffs",
    "nh_default_profile",
    "profile_constraint_residuals",
    "nh_kernel_coeffs",
    "nh_puir",
    "nh_puir_matrix",
    "nh_kernel_matrix",
    "nh_sw_kernel",
    "nh_generators",
    "nh_generator_fd",
    "nh_ansatz_matrix",
    "nh_transported_kernel",
    "OrbitQuadrature",
    "KernelFamily",
    "galilei_family",
    "nh_family",
    "covariance_residual",
    "covariance_via_lemma31",
    "projectivity_residual",
    "traciality_residual",
    "traciality_refinement",
    "windowed_trace",
    "sw_symbol",
    "sw_dequantize",
    "dequantize_round_trip",
    "reproducing_kernel_residual",
    "trikernel_raw",
    "trikernel_star",
    "trikernel_star_raw",
    "star_average_residual",
    "Sl2Element",
    "rhat",
    "invariant_two_tensor",
    "schouten_bracket_rep",
    "SklyaninPoly",
    "sklyanin_bracket",
    "QPoly",
    "QRingRational",
    "QRingSeries",
    "nc_normalize",
    "build_fhat",
    "build_rq",
    "explicit_rq",
    "qybe_residual",
    "rtt_residual",
    "quantum_determinant_central",
    "semiclassical_limit",
    "__version__",
]
