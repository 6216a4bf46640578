"""Exact symbolic verifier for the Neveu-Schwarz superalgebra, its
contact subalgebra, and their intermediate-series weight modules."""

__version__ = "0.1.0"

from .scalars import (
    B,
    LAMBDA,
    ONE,
    ParamPoly,
    PoleError,
    Rational,
    Scalar,
    ScalarError,
    ZERO,
    parse_rational,
    scalar_arith,
    scalar_normalize,
    scalar_substitute,
)
from .algebra import (
    AElement,
    AMonomial,
    AlgebraError,
    AlgebraMode,
    AMode,
    A_action_on_k,
    C,
    G,
    Gen,
    HalfInt,
    L,
    LieElement,
    XI,
    bracket,
    compatibility_residual,
    half,
    k_action_on_A,
)
from .enveloping import (
    SmashElement,
    SmashMode,
    TElementLabel,
    g_prime,
    gl_sum,
    l_prime,
    omega,
    smash_bracket,
    smash_product,
    verify_reconstruction,
)
from .modules import (
    BasisKey,
    ExclusionRole,
    Family,
    GammaModule,
    ModuleError,
    ModuleParams,
    ModuleVector,
    SignConvention,
    Window,
    act,
    gamma,
    gamma_minus,
    gamma_plus,
    gamma_prime,
    make_module,
    module_axiom_residual,
    parity_change,
    parse_module_descriptor,
    weight,
)
from .analysis import (
    AnnihilatorBoundError,
    CheckReport,
    EdgeRecord,
    IntertwinerWitness,
    Verdict,
    action_rep_reports,
    chain_reports,
    classification_table,
    compat_reports,
    find_intertwiner,
    jacobi_family_reports,
    minimal_annihilator,
    module_edges,
    psi_table_reports,
    reachability_closure,
    reconstruction_reports,
    centralizer_reports,
    simplicity_verdict,
    verify_identity_catalogue,
    verify_jacobi,
)
