"""Necessary conditions for the Painleve property, composed into a verdict.

Checks run in a fixed order and stop after the first stage that produces a
hard failure::

    bureau -> leading_derivative -> vanish -> families -> residue_identity
           -> sum_identities -> compatibility -> negative_resonance_theorem

The last check is diagnostic: it never changes the verdict.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional

from . import oracle
from . import poly as P
from .errors import CompatibilityFailure
from .ode import EvaluatedODE, PolynomialODE, choose_base_point, evaluate_at, leading_terms
from .painleve import (
    MAX_DEPTH,
    DeterminingPoly,
    PoleFamily,
    determining_polynomial,
    expand_laurent,
    pole_families,
    resonance_polynomial,
    tau,
)
from .roots import DEFAULT_PRECISION, to_mp
from .scalars import GaussRational, as_gauss

PASS, FAIL, INDETERMINATE, SKIPPED = "pass", "fail", "indeterminate", "skipped"

FAILS = "FailsPainleve"
PASSES = "PassesNecessary"
UNDECIDED = "Indeterminate"

SCOPE_NOTE = (
    "PassesNecessary covers poles of the typical order (the Bureau number) only; "
    "it does not establish the Painleve property."
)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    outcome: str
    detail: str
    family_index: Optional[int] = None
    severity: str = "hard"

    @property
    def is_hard_failure(self) -> bool:
        return self.outcome == FAIL and self.severity == "hard"


@dataclass(frozen=True)
class Verdict:
    status: str
    reasons: tuple

    @classmethod
    def from_checks(cls, checks) -> "Verdict":
        checks = tuple(checks)
        if any(c.is_hard_failure for c in checks):
            status = FAILS
        elif any(c.outcome == INDETERMINATE or (c.outcome == FAIL and c.severity == "internal") for c in checks):
            status = UNDECIDED
        else:
            status = PASSES
        return cls(status, checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.reasons if c.is_hard_failure), None)


def _is_numeric(x) -> bool:
    return not isinstance(x, (GaussRational, int, Fraction))


def _num_text(x) -> str:
    if _is_numeric(x):
        ctx = x.context
        re, im = ctx.nstr(x.real, 20), ctx.nstr(abs(x.imag), 20)
        return re if not x.imag else f"{re}{'-' if x.imag < 0 else '+'}{im}i"
    return str(x)


def _numeric_tolerance(x):
    return x.context.ldexp(1, -(x.context.prec // 2))


# -- structural checks -------------------------------------------------------


def check_bureau(eq: EvaluatedODE) -> CheckResult:
    b = eq.leading.bureau
    ok = b in (1, 2)
    return CheckResult("bureau", PASS if ok else FAIL, f"Bureau number B={b}" + ("" if ok else "; must be 1 or 2"))


def check_leading_derivative(eq: EvaluatedODE) -> CheckResult:
    n = eq.order
    slots = sorted({j for j in (n - 1, n - 2) if j >= 0})
    hits = [chi for chi in eq.leading.omega0 if any(chi[j] > 0 for j in slots)]
    names = ", ".join("w" if j == 0 else f"w[{j}]" for j in slots)
    if hits:
        return CheckResult("leading_derivative", PASS, f"leading term {tuple(hits[0])} contains {names}")
    return CheckResult("leading_derivative", FAIL, f"no leading term contains {names}")


def check_vanish(eq: EvaluatedODE, h: DeterminingPoly) -> CheckResult:
    d = eq.leading.top_degree
    detail = f"H/q = {P.format_poly(h.coeffs, 'q')}; m={h.m}, d-1={d - 1}"
    if h.m < d - 1:
        return CheckResult("vanish", FAIL, detail + "; the top-degree coefficient of H vanishes")
    return CheckResult("vanish", PASS, detail)


def check_families(families: list[PoleFamily]) -> list[CheckResult]:
    out = []
    for idx, fam in enumerate(families):
        problems = []
        undecided = False
        if fam.q.multiplicity > 1:
            problems.append(f"q is a root of multiplicity {fam.q.multiplicity}")
        if not fam.integral:
            if fam.resonances.certified:
                problems.append("non-integer resonances")
            else:
                undecided = True
        else:
            res = fam.resonances
            if len(set(res)) != len(res):
                problems.append(f"repeated resonances {list(res)}")
            if -1 not in res:
                problems.append("-1 is not a resonance")
            if 0 in res:
                problems.append("0 is a resonance")
        res_txt = list(fam.resonances) if fam.integral else f"integers {list(fam.resonances.integers)} only"
        detail = f"q={_num_text(fam.q.value)}: resonances {res_txt}"
        if problems:
            out.append(CheckResult("families", FAIL, detail + "; " + "; ".join(problems), idx))
        elif undecided:
            out.append(CheckResult("families", INDETERMINATE, detail + "; integrality not certified", idx))
        else:
            out.append(CheckResult("families", PASS, detail, idx))
    return out


# -- identities ------------------------------------------------------------------


def residue_sums(families: list[PoleFamily]):
    """``sum 1/Pr`` computed from the resonance products and from ``dH/dq``."""
    via_products = None
    if all(f.integral for f in families):
        via_products = sum((Fraction(1, _prod(f.resonances)) for f in families), Fraction(0))
    via_derivative = None
    prs = [f.product_Pr for f in families]
    if all(p is not None for p in prs):
        if all(not _is_numeric(p) for p in prs):
            via_derivative = sum((1 / as_gauss(p) for p in prs), GaussRational(0))
        else:
            via_derivative = sum(1 / p for p in prs)
    return via_products, via_derivative


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def check_residue_identity(families: list[PoleFamily], n: int, bureau: int) -> CheckResult:
    target = Fraction(-1, factorial(n + bureau - 1))
    via_products, via_derivative = residue_sums(families)
    if via_products is not None:
        value = via_products
        ok = value == target
        if via_derivative is not None and not _is_numeric(via_derivative) and via_derivative != value:
            return CheckResult(
                "residue_identity", FAIL, f"routes disagree: {value} vs {via_derivative}", severity="internal"
            )
    elif via_derivative is not None and not _is_numeric(via_derivative):
        value = via_derivative
        ok = value == target
    elif via_derivative is not None:
        tol = _numeric_tolerance(via_derivative)
        value = via_derivative
        ok = abs(via_derivative - float(target)) <= tol * max(1, abs(via_derivative))
    else:
        return CheckResult("residue_identity", INDETERMINATE, "resonance products unavailable")
    detail = f"sum 1/Pr = {_num_text(value)}, expected -1/{n + bureau - 1}! = {target}"
    return CheckResult("residue_identity", PASS if ok else FAIL, detail)


def derivative_contraction(eq: EvaluatedODE, q, j: int):
    """``sum_chi a_chi prod tau^chi q^(|chi|-1) chi_j / tau(s, j)`` over leading terms.

    With B=1 and j=n-1 this is ``A*q``; with B=2 and j=n-2 it is ``B*q`` (the
    coefficients of w*w^(n-1) and w*w^(n-2)) whenever those patterns exist.
    """
    s = int(eq.leading.bureau)
    if j < 0:
        return 0
    total = 0
    for chi in eq.leading.omega0:
        if not chi[j]:
            continue
        c = 1
        for i, e in enumerate(chi):
            if e:
                c *= tau(s, i) ** e
        a = eq.terms[chi]
        if _is_numeric(q):
            a = to_mp(q.context, a)
            total = total + a * c * chi[j] / tau(s, j) * q ** (chi.degree - 1)
        else:
            total = total + a * c * Fraction(chi[j], tau(s, j)) * q ** (chi.degree - 1)
    return total


def _same(a, b, ref) -> bool:
    if _is_numeric(a) or _is_numeric(b):
        diff = a - b
        return abs(diff) <= _numeric_tolerance(ref) * max(1, abs(a))
    return as_gauss(a) == as_gauss(b)


def _real_positive(x) -> Optional[bool]:
    if _is_numeric(x):
        tol = _numeric_tolerance(x)
        if abs(x.imag) > tol:
            return False
        if x.real > tol:
            return True
        if x.real < -tol:
            return False
        return None
    x = as_gauss(x)
    return x.is_real and x.re > 0


def check_sum_identities(families: list[PoleFamily], eq: EvaluatedODE) -> list[CheckResult]:
    n = eq.order
    s = int(eq.leading.bureau)
    base = [s + k for k in range(n)]
    out = []
    for idx, fam in enumerate(families):
        q = fam.q.value
        res = fam.resonances
        first = sum(res)
        shift1 = derivative_contraction(eq, q, n - 1)
        expect1 = sum(base) + shift1
        if s == 1:
            ok = _same(first, expect1, q)
            detail = (
                f"sum r = {first}, expected {sum(base)} + A*q = {_num_text(expect1)} "
                f"(A={eq.leading.coeff_A})"
            )
            out.append(CheckResult("sum_identities", PASS if ok else FAIL, detail, idx))
            continue
        second = sum(r * r for r in res)
        bq = derivative_contraction(eq, q, n - 2)
        expect2 = sum(b * b for b in base) + 2 * bq
        ok1 = _same(first, expect1, q)
        ok2 = _same(second, expect2, q)
        positive = True if not bq else _real_positive(bq)
        detail = (
            f"sum r = {first} (expected {_num_text(expect1)}), "
            f"sum r^2 = {second} (expected {sum(b * b for b in base)} + 2*Bq = {_num_text(expect2)}), "
            f"Bq = {_num_text(bq)} (B={eq.leading.coeff_B}); "
            "second-moment identity taken with coefficient 2 on Bq and resonance base 2..n+1"
        )
        if not (ok1 and ok2) or positive is False:
            if positive is False:
                detail += "; Bq is not a positive real number"
            out.append(CheckResult("sum_identities", FAIL, detail, idx))
        elif positive is None:
            out.append(CheckResult("sum_identities", INDETERMINATE, detail + "; sign of Bq not certified", idx))
        else:
            out.append(CheckResult("sum_identities", PASS, detail, idx))
    return out


# -- compatibility and the negative-resonance consequence -----------------------------


def _free_assignments(positives):
    yield {r: GaussRational(0) for r in positives}
    yield {r: GaussRational(Fraction(k + 2, 2 * k + 7)) for k, r in enumerate(positives)}


def check_compatibility(eq: EvaluatedODE, family: PoleFamily, index: int, depth: int = MAX_DEPTH) -> CheckResult:
    positives = family.positives
    if not positives:
        return CheckResult("compatibility", PASS, "no positive resonances", index)
    if not family.q.is_exact:
        return CheckResult(
            "compatibility", INDETERMINATE, "leading coefficient known only numerically", index
        )
    top = max(positives)
    if top > depth:
        return CheckResult(
            "compatibility", INDETERMINATE, f"resonance {top} exceeds the expansion depth {depth}", index
        )
    for free in _free_assignments(positives):
        try:
            expand_laurent(eq, family, top, free, max_depth=depth)
        except CompatibilityFailure as exc:
            return CheckResult(
                "compatibility",
                FAIL,
                f"Q_{exc.index} = {exc.residual} != 0 at resonance {exc.index} (free values {_free_text(free)})",
                index,
            )
    return CheckResult(
        "compatibility", PASS, f"Q_j = 0 at resonances {list(positives)} for two free-parameter choices", index
    )


def _free_text(free) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in sorted(free.items())) + "}"


def check_negative_resonance_theorem(families: list[PoleFamily], d: int, n: int) -> CheckResult:
    if d <= 2 or n <= 3:
        return CheckResult(
            "negative_resonance_theorem", SKIPPED, f"requires d > 2 and n > 3 (d={d}, n={n})", severity="diagnostic"
        )
    witnesses = [
        (idx, r) for idx, f in enumerate(families) if f.integral for r in f.resonances if r < -1
    ]
    if witnesses:
        idx, r = witnesses[0]
        return CheckResult(
            "negative_resonance_theorem",
            PASS,
            f"family {idx} has the nontrivial negative resonance {r}",
            severity="diagnostic",
        )
    return CheckResult(
        "negative_resonance_theorem",
        FAIL,
        "InconsistencyWithTheorem: every other check passed with d > 2 and n > 3, "
        "yet no family has a resonance below -1",
        severity="diagnostic",
    )


# -- composition --------------------------------------------------------------------------


@dataclass
class Analysis:
    """Everything computed for one equation."""

    ode: PolynomialODE
    z0: GaussRational
    eq: Optional[EvaluatedODE] = None
    h: Optional[DeterminingPoly] = None
    families: list = field(default_factory=list)
    verdict: Optional[Verdict] = None
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)


def self_check(eq: EvaluatedODE, h: DeterminingPoly, families: list[PoleFamily]) -> CheckResult:
    """Re-derive H and every exact R through the series oracle."""
    if oracle.oracle_H(eq) != h.full():
        return CheckResult("self_check", FAIL, "determining polynomial disagrees with the series oracle", severity="internal")
    for idx, fam in enumerate(families):
        if fam.q.is_exact and oracle.oracle_R(eq, fam.q.value) != resonance_polynomial(eq, fam.q).coeffs:
            return CheckResult(
                "self_check", FAIL, "resonance polynomial disagrees with the series oracle", idx, severity="internal"
            )
    return CheckResult("self_check", PASS, "H and R agree with the series oracle")


def full_verdict(
    ode: PolynomialODE,
    z0=None,
    precision: int = DEFAULT_PRECISION,
    depth: int = MAX_DEPTH,
    run_self_check: bool = False,
) -> Analysis:
    clock = time.perf_counter
    t0 = clock()
    leading_terms(ode)  # raises LinearEquation for linear input
    z0 = choose_base_point(ode) if z0 is None else as_gauss(z0)
    eq = evaluate_at(ode, z0)
    analysis = Analysis(ode=ode, z0=z0, eq=eq)
    checks: list[CheckResult] = []

    def stage(results, name):
        analysis.timings[name] = round((clock() - t0) * 1000, 3)
        results = results if isinstance(results, list) else [results]
        checks.extend(results)
        return not any(r.is_hard_failure for r in results)

    def finish():
        analysis.verdict = Verdict.from_checks(checks)
        if analysis.verdict.status == PASSES:
            analysis.notes.append(SCOPE_NOTE)
        return analysis

    if not stage(check_bureau(eq), "bureau"):
        return finish()
    if not stage(check_leading_derivative(eq), "leading_derivative"):
        return finish()
    h = determining_polynomial(eq)
    analysis.h = h
    if not stage(check_vanish(eq, h), "vanish"):
        return finish()
    families = pole_families(eq, h, precision)
    analysis.families = families
    if run_self_check:
        stage(self_check(eq, h, families), "self_check")
    if not stage(check_families(families), "families"):
        return finish()
    if any(c.outcome == INDETERMINATE for c in checks):
        return finish()
    n, s = eq.order, int(eq.leading.bureau)
    if not stage(check_residue_identity(families, n, s), "residue_identity"):
        return finish()
    if not stage(check_sum_identities(families, eq), "sum_identities"):
        return finish()
    compat = [check_compatibility(eq, f, i, depth) for i, f in enumerate(families)]
    if not stage(compat, "compatibility"):
        return finish()
    stage(check_negative_resonance_theorem(families, eq.leading.top_degree, n), "negative_resonance_theorem")
    return finish()
