"""Exact covers of sets of subsums in R and R^2, P-sum cuts, spectra and centers of distances."""

from .cover1d import (
    IntervalCover,
    center_of_distances,
    classify_gn,
    cover1d,
    exact_set1d,
    gaps,
    psum_cover,
    representation_collisions,
    validate_certificate,
)
from .cover2d import BoxCover, check_symmetry, cover2d, cut_outer, enumerate_points, project_axis
from .errors import *  # noqa: F401,F403
from .pcut import build_pcut_sequence, check_block_structure, make_params, psum_witness, verify_pcut_cut
from .scalar import Scalar, parse_scalar, sign_quadratic
from .series import (
    Abs,
    AxisInterleave,
    DiagonalSum,
    FiniteList,
    Geometric,
    LinearMap,
    Multigeometric,
    PairGenerator,
    PairList,
    Prefix,
    Prefix2,
    Scaled,
    classify_convergence,
    combine,
    spec_from_config,
    tail_bounds,
    term_at,
)
from .spectre import (
    GridSet,
    center_of_distances_grid,
    make_grid_shape,
    spectre_of_finite_set,
    spectre_of_grid,
    terms_in_spectre_report,
)

__version__ = "0.1.0"
