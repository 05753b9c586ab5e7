"""Exact lattice, Hodge and period-domain computations for eigenperiod problems.

The package is organised in layers: :mod:`.exact` (integer and rational
matrices), :mod:`.lattice` (integral lattices and discriminant forms),
:mod:`.k3` (the K3 lattice and its glue catalog), :mod:`.siegel` (the Siegel
half-plane and polarizations), :mod:`.hodge` (character Hodge structures),
:mod:`.dm` (hypergeometric weight systems) and :mod:`.cli`.
"""

__version__ = "0.1.0"

from .exact import (
    SignatureTriple,
    exact_determinant,
    exact_signature,
    invariant_factors,
    smith_normal_form,
)
from .lattice import (
    FiniteQuadraticForm,
    IntegralLattice,
    change_basis,
    direct_sum,
    discriminant_form,
    discriminant_group,
    fqf_isomorphic,
    is_isometry,
    is_p_elementary,
    rescale,
    root_vectors,
    standard_lattice,
    vectors_of_norm,
)
from .k3 import GluePair, GlueReport, catalog, cyclic_root_isometry, glue_report, k3_lattice, verify_catalog
from .siegel import (
    BoundaryCollapse,
    J_D,
    PolarizationType,
    cayley_from_bounded,
    cayley_to_bounded,
    dual_polarization_type,
    find_polarization,
    in_bounded_Ipq,
    in_bounded_siegel,
    is_positive_definite,
    is_siegel_point,
    is_symplectic,
    normalize_period,
    order4_structure,
    product_embed,
    riemann_frobenius,
    satake_embed,
    standard_J,
    symplectic_action,
    transitivity_witness,
)
from .dm import (
    Stability,
    StabilityVerdict,
    WeightError,
    WeightSystem,
    ball_dimension,
    cyclic_cover_genus,
    enumerate_weights,
    git_classify,
    is_int,
    is_sigma_int,
    parse_weights,
    validate_weights,
)
from .hodge import (
    CharacterHodgeStructure,
    DomainDescriptor,
    arrangement_eigendims,
    canonical_sigma,
    domain_classifier,
    eigenperiod_ball_dim,
    half_twist,
    sylvester_signature,
    validate_chs,
)
from .expr import LatticeExprError, canonical_form, parse_expr, parse_lattice_expr
