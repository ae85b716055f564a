"""Serializable analysis reports (JSON and plain text)."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields

from . import poly as P
from .checks import Analysis
from .painleve import PoleFamily
from .scalars import GaussRational

from ._version import __version__


def _digits(precision: int) -> int:
    return max(15, int(precision * math.log10(2)))


def numeric_dict(x, error_bound, precision: int) -> dict:
    ctx = x.context
    digits = _digits(precision)
    return {
        "re": ctx.nstr(ctx.mpf(x.real), digits, min_fixed=-math.inf, max_fixed=math.inf),
        "im": ctx.nstr(ctx.mpf(x.imag), digits, min_fixed=-math.inf, max_fixed=math.inf),
        "error_bound": ctx.nstr(ctx.mpf(error_bound), 5),
    }


def _scalar(x, error_bound, precision):
    if isinstance(x, GaussRational):
        return str(x)
    return numeric_dict(x, error_bound, precision)


def _numeric_poly_text(coeffs, var: str, digits: int = 20) -> str:
    text = ""
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        ctx = c.context
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if c.imag:
            body, sign = f"({ctx.nstr(c, digits)})", "+"
        else:
            body, sign = ctx.nstr(abs(c.real), digits), "-" if c.real < 0 else "+"
            if mono and c.real in (1, -1):
                body = ""
        term = body + ("*" if body and mono else "") + mono
        if not text:
            text = ("-" if sign == "-" else "") + term
        else:
            text += f" {sign} {term}"
    return text or "0"


def _product_bound(analysis: Analysis, fam: PoleFamily):
    """Bound on ``|Pr - Pr_true|`` from the root enclosure: ``max |H''|`` on the disk times its radius."""
    q = fam.q.value
    ctx = q.context
    eb = ctx.mpf(fam.q.error_bound)
    h2 = P.derivative(P.derivative(analysis.h.full()))
    rad = abs(q) + eb
    bound = ctx.mpf(0)
    for k, c in enumerate(h2):
        bound += abs(complex(c)) * rad**k
    return bound * eb


def family_dict(analysis: Analysis, fam: PoleFamily, precision: int) -> dict:
    exact = fam.q.is_exact
    q = _scalar(fam.q.value, fam.q.error_bound, precision)
    if fam.res_poly.exact:
        rpoly = P.format_poly(fam.res_poly.coeffs, "r")
    else:
        rpoly = _numeric_poly_text(fam.res_poly.coeffs, "r")
    if fam.integral:
        resonances = list(fam.resonances)
    else:
        m = fam.resonances
        resonances = {
            "integers": list(m.integers),
            "non_integer": [
                numeric_dict(z, 0, 64) if not isinstance(z, GaussRational) else str(z) for z in m.approximations
            ],
            "certified": m.certified,
        }
    if fam.product_Pr is None:
        product = None
    elif exact:
        product = str(fam.product_Pr)
    else:
        product = numeric_dict(fam.product_Pr, _product_bound(analysis, fam), precision)
    return {
        "q": q,
        "q_exact": exact,
        "multiplicity": fam.q.multiplicity,
        "resonance_poly": rpoly,
        "resonances": resonances,
        "product": product,
        "negatives": list(fam.negatives),
    }


@dataclass
class AnalysisReport:
    """JSON-native view of one analysis; ``from_dict(to_dict())`` is the identity."""

    version: str
    input: str
    order: int
    bureau: str
    degree_d: int
    m: int | None
    z0: str
    families: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    verdict: str = ""
    notes: list = field(default_factory=list)
    canonical: str = ""
    timings: dict | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.timings is None:
            out.pop("timings")
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown report fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    @property
    def check_ids(self) -> list:
        return [c["id"] for c in self.checks]


def build_report(
    analysis: Analysis, input_text: str, precision: int, with_timings: bool = False
) -> AnalysisReport:
    from .parser import render_canonical

    eq = analysis.eq
    lead = eq.leading
    return AnalysisReport(
        version=__version__,
        input=input_text,
        order=eq.order,
        bureau=str(lead.bureau),
        degree_d=lead.top_degree,
        m=None if analysis.h is None else analysis.h.m,
        z0=str(analysis.z0),
        families=[family_dict(analysis, f, precision) for f in analysis.families],
        checks=[
            {"id": c.check_id, "outcome": c.outcome, "detail": c.detail, "family": c.family_index, "severity": c.severity}
            for c in analysis.verdict.reasons
        ],
        verdict=analysis.verdict.status,
        notes=list(analysis.notes),
        canonical=render_canonical(analysis.ode),
        timings=dict(analysis.timings) if with_timings else None,
    )


def _scalar_text(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, dict):
        return f"{v['re']} + {v['im']}*i (+/- {v['error_bound']})"
    return v


def render_text(report: AnalysisReport) -> str:
    lines = [
        f"painleve-probe {report.version}",
        f"input:     {report.input}",
        f"canonical: {report.canonical}",
        f"order n={report.order}  bureau={report.bureau}  d={report.degree_d}  "
        f"m={'n/a' if report.m is None else report.m}  z0={report.z0}",
    ]
    for i, fam in enumerate(report.families):
        res = fam["resonances"]
        if isinstance(res, dict):
            res = f"non-integer (integers found: {res['integers']})"
        lines.append(f"family {i}: q = {_scalar_text(fam['q'])}" + ("" if fam["q_exact"] else "  [numeric]"))
        lines.append(f"  R(r) = {fam['resonance_poly']}")
        lines.append(f"  resonances = {res}  Pr = {_scalar_text(fam['product'])}  negatives = {fam['negatives']}")
    lines.append("checks:")
    for c in report.checks:
        where = "" if c["family"] is None else f" [family {c['family']}]"
        tag = "" if c["severity"] == "hard" else f" ({c['severity']})"
        lines.append(f"  {c['id']:<28} {c['outcome']:<13}{where}{tag} {c['detail']}")
    for note in report.notes:
        lines.append(f"note: {note}")
    if report.timings:
        lines.append("timings (ms): " + ", ".join(f"{k}={v}" for k, v in report.timings.items()))
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"
