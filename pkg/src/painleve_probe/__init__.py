"""Exact necessary-condition Painleve test for polynomial ODEs ``w^(n) = F(z, w, ..., w^(n-1))``."""

from ._version import __version__
from .checks import CheckResult, Verdict, full_verdict
from .combinatorics import PmaxQuery, dense_set, enumerate_resonance_sets, pmax, pmax_bruteforce
from .ode import PolynomialODE, bureau_number, evaluate_at, leading_terms, rescale
from .oracle import oracle_H, oracle_R
from .painleve import (
    determining_polynomial,
    expand_laurent,
    pole_families,
    resonance_polynomial,
    resonance_product,
    resonance_roots,
)
from .parser import parse_equation, render_canonical
from .scalars import GaussRational

__all__ = [
    "__version__",
    "CheckResult",
    "GaussRational",
    "PmaxQuery",
    "PolynomialODE",
    "Verdict",
    "bureau_number",
    "dense_set",
    "determining_polynomial",
    "enumerate_resonance_sets",
    "evaluate_at",
    "expand_laurent",
    "full_verdict",
    "leading_terms",
    "oracle_H",
    "oracle_R",
    "parse_equation",
    "pmax",
    "pmax_bruteforce",
    "pole_families",
    "render_canonical",
    "rescale",
    "resonance_polynomial",
    "resonance_product",
    "resonance_roots",
]
