"""Image Milnor numbers and multiple point spaces of corank-1 multi-germs."""

from .family import analyze_family, excellence_verdict, semicontinuity_check
from .germ import Branch, MultiGerm, differential_rank, specialize, validate
from .germfile import load_germ_file, parse_germ_file, render_germ
from .invariants import (
    GermAnalysis,
    compute_report,
    d_of,
    icss_pages,
    mu_alt_k,
    mu_alt_top,
    mu_image,
    zero_stable_census,
)
from .localalg import Ideal, milnor_icis, quotient_vector_dimension, standard_basis
from .mps import build_components, divided_differences, finite_determinacy_check, stability_check
from .poly import Polynomial
from .ratfunc import RationalFunction

__all__ = [
    "Branch", "GermAnalysis", "Ideal", "MultiGerm", "Polynomial", "RationalFunction",
    "analyze_family", "build_components", "compute_report", "d_of", "differential_rank",
    "divided_differences", "excellence_verdict", "finite_determinacy_check", "icss_pages",
    "load_germ_file", "milnor_icis", "mu_alt_k", "mu_alt_top", "mu_image", "parse_germ_file",
    "quotient_vector_dimension", "render_germ", "semicontinuity_check", "specialize",
    "stability_check", "standard_basis", "validate", "zero_stable_census",
]
