"""synlab: a desk-scale laboratory for synaptic algebras realized as
self-adjoint parts of direct sums of full real matrix algebras."""

from .antilattice import (
    AntilatticeReport,
    InfimumReason,
    InfimumStatus,
    InfimumVerdict,
    antilattice_suite,
    commuting_infimum_corollary_check,
    corner_descent,
    exchange_symmetry,
    existsk_construct,
    inf_zero_implies_product_zero_check,
    infimum_decide,
    witness_pipeline,
)
from .errors import SynlabError
from .linalg import (
    DEFAULT_TOL,
    EigenSystem,
    SubspaceBasis,
    Tolerances,
    apply_spectral_fn,
    eig_sym,
    range_basis,
    subspace_intersect,
    symmetrize,
)
from .order import (
    OrderVerdict,
    abs_and_parts,
    commutes,
    gen_infimum,
    inverse,
    jordan_product,
    loewner_cmp,
    orderunit_norm,
    quadratic_map,
    sqrt_psd,
)
from .projections import (
    Effect,
    PartialSymmetry,
    Projection,
    Symmetry,
    carrier,
    effect_proj_order_check,
    exchange,
    is_orthogonal,
    orthocomplement,
    proj_join,
    proj_meet,
    symmetry_projection_bijection,
)
from .spectral import (
    SpectralBounds,
    SpectralResolution,
    find_subprojection,
    q_lambda,
    spectral_bounds,
    spectral_resolution,
    spectrum,
)
from .structure import (
    AlgebraSpec,
    CornerAlgebra,
    Element,
    LinearSubspaceBasis,
    bicommutant,
    center,
    closure_check,
    commutant,
    corner,
    is_factor,
)

__version__ = "0.1.0"
