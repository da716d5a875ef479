"""Numerical-radius toolkit.

Scalar quantities of dense complex matrices (numerical radius, Crawford
number, spectral radius, operator norm), a machine-checkable catalog of the
inequalities relating them, seeded matrix ensembles for property sweeps, and
a CLI for reproduction, spot checks and verification runs.
"""

from .ensembles import (
    FAMILIES,
    EnsembleSpec,
    canonical_nilpotent_pair,
    draw,
    draw_arity,
    trial_rng,
    worked_example,
)
from .inequalities import (
    BOUND_REPORT_SCHEMA,
    BoundReport,
    CatalogEntry,
    QuantityCache,
    catalog_entry,
    catalog_list,
    check_implication,
    evaluate,
    evaluate_entries,
    mu,
)
from .matcore import (
    HermEig,
    SVDResult,
    abs_parts,
    adjoint,
    as_matrix,
    block2,
    cartesian_parts,
    herm_eig,
    load_matrix,
    matrix_algebra,
    matrix_digest,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    power_psd,
    save_matrix,
    sqrt_psd,
    svd,
)
from .quantities import (
    QuantityResult,
    alpha_min_bound,
    crawford,
    crawford_hermitian,
    golden_section_min,
    numerical_radius,
    psd_product_routes,
    spectral_radius,
    spectral_radius_general,
    spectral_radius_psd_product,
    support_lambda_max,
)

__version__ = "0.1.0"
