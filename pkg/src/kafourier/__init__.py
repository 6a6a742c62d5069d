"""Numerical toolkit for the (k,a)-generalised Fourier transform.

The transform is built spectrally from the deformed Dunkl oscillator
``|x|^{2-a} Delta_k - |x|^a`` on ``L^2(|x|^{2k+a-2} dx)``; on top of it sit
checks of the Paley, Hausdorff-Young(-Paley) and Hormander multiplier
inequalities, and Picard solvers for nonlinear heat and wave problems.
"""
from .exceptions import *  # noqa: F401,F403
from .params import AdmissibilityReport, Params, validate
from .measure import (
    GridFunction,
    QuadratureRule,
    build_quadrature,
    calibration_integral,
    lp_norm,
    paley_functional,
    superlevel_measure,
    weight_vka,
)
from .symbols import MultiplierSymbol, parse_symbol
from .dunkl import (
    BasisFunction,
    build_operator_matrix,
    delta_ka_apply,
    dunkl_apply,
    dunkl_laplacian_apply,
)
from .transform import (
    SpectralBasis,
    TransformOperator,
    build_basis,
    build_transform,
    forward,
    inverse,
    kernel_eval,
    kernel_sup_estimate,
    project,
    synthesize,
)
from .inequalities import (
    Exponents,
    default_suite,
    hormander_bound,
    hy_ratio,
    hyp_ratio,
    paley_ratio,
)
from .multiplier import (
    FourierMultiplier,
    apply_multiplier,
    empirical_opnorm,
    multiplier_matrix,
    verify_multiplier_theorem,
)
from .estimators import GeneralizedFourierTransform

__version__ = "0.1.0"
