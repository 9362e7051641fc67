"""核心演算法:符號推導、平方和問題與精確驗證"""

from .heat_calculus import (
    HeatCalculus,
    ddt_expr,
    ddt_moment,
    ddt_moment_raw,
    entropy_derivative,
    power_concavity_expr,
    reduce_raw_integral,
    renyi_from_tsallis,
)
from .identities import IdentityCase, IdentityCheck, identity_suite, verify_identities
from .gram_builder import (
    build_gram_problem,
    choose_free_parameters,
    concavity_gram_problem,
    default_gram_basis,
    default_slack_terms,
    numeric_residual,
    parse_slack_spec,
)
from .curve_fit import fit_parameter_table, fit_samples, round_to_denominator
from .minors import bareiss_determinant, principal_minors
from .sturm import isolate_roots, sturm_chain, sturm_root_count
from .assembly import assemble_matrix, resolve_parameters, slack_polynomials
from .known_certificates import KNOWN_CERTIFICATES, KnownCertificate, known_certificate, known_names
from .closed_forms import (
    concavity_closed_form,
    renyi2_closed_form,
    renyi3_case1_closed_form,
    renyi3_case1_window,
)
from .density import density, density_derivative, derivative_ratios, log_density
from .bounds import EntropyBounds, entropy_bounds, gaussian_renyi

__all__ = [
    "HeatCalculus",
    "ddt_expr",
    "ddt_moment",
    "ddt_moment_raw",
    "entropy_derivative",
    "power_concavity_expr",
    "reduce_raw_integral",
    "renyi_from_tsallis",
    "IdentityCase",
    "IdentityCheck",
    "identity_suite",
    "verify_identities",
    "build_gram_problem",
    "choose_free_parameters",
    "concavity_gram_problem",
    "default_gram_basis",
    "default_slack_terms",
    "numeric_residual",
    "parse_slack_spec",
    "fit_parameter_table",
    "fit_samples",
    "round_to_denominator",
    "bareiss_determinant",
    "principal_minors",
    "isolate_roots",
    "sturm_chain",
    "sturm_root_count",
    "assemble_matrix",
    "resolve_parameters",
    "slack_polynomials",
    "KNOWN_CERTIFICATES",
    "KnownCertificate",
    "known_certificate",
    "known_names",
    "concavity_closed_form",
    "renyi2_closed_form",
    "renyi3_case1_closed_form",
    "renyi3_case1_window",
    "density",
    "density_derivative",
    "derivative_ratios",
    "log_density",
    "EntropyBounds",
    "entropy_bounds",
    "gaussian_renyi",
]
