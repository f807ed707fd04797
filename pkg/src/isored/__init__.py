"""Isospectral reduction of matrices with rational-function entries."""
from .errors import (
    ConsistencyError,
    DomainError,
    IsoredError,
    NumericError,
    ParseError,
    PoleError,
    ResonanceError,
    ResourceError,
    SingularityError,
)
from .field import (
    LAM,
    LIMITS,
    GaussianRational,
    Limits,
    Poly,
    RatFunc,
    is_w_pi,
    pi_degree,
    poly_gcd,
    poly_squarefree_factor,
    rf_add,
    rf_mul,
    rf_reduce,
)
from .io import format_matrix, format_ratfunc, parse_matrix_file, parse_matrix_text, parse_ratfunc
from .massspring import SpringNetwork, boundary_force, frequency_response, stiffness_matrix
from .numerics import opnorm, pseudo_witness, resolvent_norm, roots_numeric, singular_values
from .reduction import (
    isospectral_reduce,
    predicted_reduced_spectra,
    reduce_spectral_inverse,
    sequential_reduce,
)
from .regions import (
    GridSpec,
    RegionRaster,
    check_inclusion,
    gershgorin_member,
    gershgorin_raster,
    pseudoresonance_raster,
    pseudospectrum_raster,
    sigma_min_raster,
)
from .wmatrix import (
    RootMultiset,
    WMatrix,
    char_ratfunc,
    eval_at,
    inverse_spectrum,
    polynomial_extension,
    shifted_matvec,
    spectral_inverse,
    spectrum,
    submatrix,
)

__version__ = "0.1.0"
