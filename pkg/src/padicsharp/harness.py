"""Verification engine: claim registry, randomized upper-bound tests, sweeps.

Each claim id names one sharp-constant statement:

* ``thm21`` -- fractional Hardy, weighted strong-to-weak bound (p1 > 1);
* ``thm22`` -- fractional Hardy, L^1 endpoint bound;
* ``cor31`` -- m-linear Hardy on weighted-type sup-norm spaces;
* ``cor32`` -- m-linear Hilbert series value and closed-form bound;
* ``cor41`` -- Hausdorff operator with the product indicator multiplier.

`verify_claim` builds the claim's extremal input, pushes it through the
operator, computes the norm ratio and compares with the closed form.
`random_upper_bound_test` replays the bound on random finite functions.
`sweep` runs a parameter grid and reports one record per point.
"""

from __future__ import annotations

import math
import random
import re
import time
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .constants import (HardyL1WeakParams, HardyLpWeakParams, branch_suprema,
                        extremal_hardy_lp, extremal_unit_ball, extremal_weighted,
                        hardy_l1_weak_constant, hardy_lp_weak_constant,
                        hardy_sup_constant, hausdorff_indicator_constant,
                        hausdorff_constant, hilbert_bound_region_sum,
                        hilbert_sup_bound, hilbert_sup_series)
from .context import Number, PadicContext
from .errors import ParameterError
from .norms import LebesgueParams, SupParams, WeakParams, lp_norm, sup_norm, weak_norm
from .operators import (AlphaVector, TruncationPolicy, fractional_hardy,
                        hausdorff_operator, indicator_max_ball_kernel,
                        multilinear_hardy, multilinear_hilbert)
from .shells import ShellFunction

CLAIMS = ("thm21", "thm22", "cor31", "cor32", "cor41")

DEFAULT_TOL = 1e-9
DEFAULT_TOL_TRUNCATED = 1e-6
DEFAULT_WINDOW = 64
RANDOM_SHELL_RANGE = (-12, 12)
UPPER_BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class ClaimParams:
    """Parameter bundle; which fields matter depends on the claim."""

    p: int = 2
    n: int = 1
    p1: Optional[Number] = None
    q: Optional[Number] = None
    beta: Optional[Number] = None
    gamma: Optional[Number] = None
    alpha: Optional[Number] = None
    alphas: Optional[Tuple[Number, ...]] = None
    m: Optional[int] = None

    def ctx(self) -> PadicContext:
        return PadicContext(self.p, self.n)

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"p": self.p, "n": self.n}
        for name in ("p1", "q", "beta", "gamma", "alpha"):
            v = getattr(self, name)
            if v is not None:
                out[name] = float(v)
        if self.alphas is not None:
            out["alphas"] = [float(a) for a in self.alphas]
        if self.m is not None:
            out["m"] = self.m
        return out


DEFAULT_PARAMS: Dict[str, ClaimParams] = {
    "thm21": ClaimParams(p=2, n=1, p1=2, beta=Fraction(1, 2), gamma=0, alpha=0),
    "thm22": ClaimParams(p=2, n=1, gamma=0, alpha=Fraction(1, 2)),
    "cor31": ClaimParams(p=2, n=1, m=2, alphas=(Fraction(1, 2), Fraction(1, 4))),
    "cor32": ClaimParams(p=2, n=1, m=2, alphas=(Fraction(1, 2), Fraction(1, 2))),
    "cor41": ClaimParams(p=2, n=1, m=2, alphas=(Fraction(-1, 2), -1)),
}


@dataclass
class VerificationReport:
    """One claim check.  passed means rel_error <= tolerance + tail_bound
    and every auxiliary identity of the claim held as well."""

    claim: str
    params: Dict[str, object]
    computed_ratio: Optional[float]
    closed_form: Optional[float]
    rel_error: Optional[float]
    tail_bound: float
    passed: bool
    runtime_ms: int
    tolerance: float
    reason: Optional[str] = None
    skipped: bool = False
    extra: Dict[str, object] = field(default_factory=dict)


def _finish(claim: str, params: ClaimParams, ratio: float, closed: float,
            tail: float, tol: float, started: float, extra_ok: bool = True,
            extra: Optional[Dict[str, object]] = None,
            reason: Optional[str] = None) -> VerificationReport:
    rel = abs(ratio - closed) / abs(closed) if closed != 0 else abs(ratio)
    passed = rel <= tol + tail and extra_ok
    return VerificationReport(
        claim=claim, params=params.to_dict(), computed_ratio=ratio,
        closed_form=closed, rel_error=rel, tail_bound=tail, passed=passed,
        runtime_ms=int((time.perf_counter() - started) * 1000), tolerance=tol,
        reason=reason, extra=extra or {})


def _require(params: ClaimParams, *names: str) -> None:
    for name in names:
        if getattr(params, name) is None:
            raise ParameterError(f"parameter '{name}' is required for this claim")


def _alphas(params: ClaimParams) -> AlphaVector:
    _require(params, "alphas")
    alphas = tuple(params.alphas)
    if params.m is not None and params.m != len(alphas):
        raise ParameterError(f"m={params.m} does not match {len(alphas)} alphas")
    return AlphaVector(alphas)


# ---------------------------------------------------------------------------
# per-claim verifiers


def _verify_thm21(params: ClaimParams, tol: float, window: int,
                  started: float) -> VerificationReport:
    _require(params, "p1", "beta", "gamma", "alpha")
    ctx = params.ctx()
    if params.q is None:
        spec = HardyLpWeakParams.with_derived_q(params.p1, params.beta,
                                                params.gamma, params.alpha, ctx)
    else:
        spec = HardyLpWeakParams(p1=params.p1, q=params.q, beta=params.beta,
                                 gamma=params.gamma, alpha=params.alpha, ctx=ctx)
    closed = hardy_lp_weak_constant(spec)
    f0 = extremal_hardy_lp(spec.beta, spec.p1, ctx)
    image = fractional_hardy(f0, spec.alpha, ctx)
    num = weak_norm(image, WeakParams(spec.q, spec.gamma), ctx).expect()
    den = lp_norm(f0, LebesgueParams(spec.p1, spec.beta), ctx).expect()
    ratio = num / den
    m1, m2 = branch_suprema(spec)
    branches_rel = abs(m1 - m2) / max(m1, m2)
    extra = {"branch_sup_outer": m1, "branch_sup_inner": m2,
             "branch_rel_error": branches_rel, "q": float(spec.q)}
    return _finish("thm21", params, ratio, closed, 0.0, tol, started,
                   extra_ok=branches_rel <= tol, extra=extra)


def _verify_thm22(params: ClaimParams, tol: float, window: int,
                  started: float) -> VerificationReport:
    _require(params, "gamma", "alpha")
    ctx = params.ctx()
    spec = HardyL1WeakParams(alpha=params.alpha, gamma=params.gamma, ctx=ctx)
    closed = hardy_l1_weak_constant(spec)
    f0 = extremal_unit_ball(ctx)
    image = fractional_hardy(f0, spec.alpha, ctx)
    num = weak_norm(image, WeakParams(spec.q, spec.gamma), ctx).expect()
    den = lp_norm(f0, LebesgueParams(1, 0), ctx).expect()
    return _finish("thm22", params, num / den, closed, 0.0, tol, started)


def _verify_cor31(params: ClaimParams, tol: float, window: int,
                  started: float) -> VerificationReport:
    ctx = params.ctx()
    alphas = _alphas(params)
    alphas.require_below_n(ctx)
    closed = hardy_sup_constant(alphas, ctx)
    fs = [extremal_weighted(a, ctx) for a in alphas.alphas]
    image = multilinear_hardy(fs, ctx)
    num = sup_norm(image, SupParams(alphas.alpha), ctx).expect()
    den = 1.0
    for a, f in zip(alphas.alphas, fs):
        den *= sup_norm(f, SupParams(a), ctx).expect()
    from .operators import hardy_region_sum
    region = hardy_region_sum(alphas, ctx)
    region_rel = abs(region - closed) / closed
    extra = {"region_sum": region, "region_rel_error": region_rel,
             "sup_norm_product": den}
    return _finish("cor31", params, num / den, closed, 0.0, tol, started,
                   extra_ok=region_rel <= tol, extra=extra)


def _verify_cor32(params: ClaimParams, tol: float, window: int,
                  started: float) -> VerificationReport:
    ctx = params.ctx()
    alphas = _alphas(params)
    trunc = TruncationPolicy(window=window, tol=DEFAULT_TOL_TRUNCATED)
    values = []
    widths = [max(4, window // 8), max(8, window // 4), max(16, window // 2), window]
    series = None
    for w in widths:
        series = hilbert_sup_series(alphas, ctx, truncation=trunc, window=w)
        values.append(series.value)
    monotone = all(values[i] <= values[i + 1] + 1e-15 for i in range(len(values) - 1))
    bound = hilbert_sup_bound(alphas, ctx)
    region = hilbert_bound_region_sum(alphas, ctx)
    region_rel = abs(region - bound) / bound
    slack = bound - series.value
    rel = max(0.0, -slack / bound)
    extra = {"series": series.value, "series_tail_bound": series.error_bound,
             "bound": bound, "bound_region_sum": region,
             "bound_region_rel_error": region_rel, "slack": slack,
             "window_values": values, "monotone_in_window": monotone}
    passed = (rel <= tol + series.error_bound / bound and monotone
              and series.error_bound < trunc.tol and region_rel <= 1e-12)
    return VerificationReport(
        claim="cor32", params=params.to_dict(), computed_ratio=series.value,
        closed_form=bound, rel_error=rel, tail_bound=series.error_bound,
        passed=passed, runtime_ms=int((time.perf_counter() - started) * 1000),
        tolerance=tol, extra=extra)


def _verify_cor41(params: ClaimParams, tol: float, window: int,
                  started: float) -> VerificationReport:
    ctx = params.ctx()
    alphas = _alphas(params)
    closed = hausdorff_indicator_constant(alphas, ctx)
    phi = indicator_max_ball_kernel(alphas.m, ctx,
                                    TruncationPolicy(window=window,
                                                     tol=DEFAULT_TOL_TRUNCATED))
    numeric = hausdorff_constant(phi, alphas, ctx)
    numeric_rel = abs(numeric.value - closed) / closed
    fs = [extremal_weighted(a, ctx) for a in alphas.alphas]
    image = hausdorff_operator(phi, fs, ctx)
    num = sup_norm(image, SupParams(alphas.alpha), ctx)
    den = 1.0
    for a, f in zip(alphas.alphas, fs):
        den *= sup_norm(f, SupParams(a), ctx).expect()
    ratio = num.value / den
    tail = (num.error_bound + numeric.error_bound) / closed
    extra = {"constant_numeric": numeric.value,
             "constant_numeric_rel_error": numeric_rel,
             "constant_tail_bound": numeric.error_bound,
             "operator_sup_error": num.error_bound}
    return _finish("cor41", params, ratio, closed, tail, tol, started,
                   extra_ok=numeric_rel <= 1e-8 + numeric.error_bound / closed,
                   extra=extra)


_VERIFIERS: Dict[str, Callable[[ClaimParams, float, int, float], VerificationReport]] = {
    "thm21": _verify_thm21,
    "thm22": _verify_thm22,
    "cor31": _verify_cor31,
    "cor32": _verify_cor32,
    "cor41": _verify_cor41,
}


def verify_claim(claim: str, params: Optional[ClaimParams] = None,
                 tol: Optional[float] = None,
                 window: int = DEFAULT_WINDOW) -> VerificationReport:
    """Run one sharpness check; precondition violations become failed
    reports carrying the violated constraint, never exceptions."""
    if claim not in CLAIMS:
        raise ParameterError(f"unknown claim '{claim}'; expected one of {CLAIMS}")
    params = params or DEFAULT_PARAMS[claim]
    if tol is None:
        tol = DEFAULT_TOL_TRUNCATED if claim in ("cor32", "cor41") else DEFAULT_TOL
    started = time.perf_counter()
    try:
        return _VERIFIERS[claim](params, tol, window, started)
    except ParameterError as exc:
        return VerificationReport(
            claim=claim, params=params.to_dict(), computed_ratio=None,
            closed_form=None, rel_error=None, tail_bound=0.0, passed=False,
            runtime_ms=int((time.perf_counter() - started) * 1000),
            tolerance=tol, reason=str(exc))


# ---------------------------------------------------------------------------
# randomized upper-bound tests


def random_shell_values(rng: random.Random,
                        shell_range: Tuple[int, int] = RANDOM_SHELL_RANGE,
                        max_shells: int = 6) -> Dict[int, float]:
    """Log-uniform values on a few random shells (finite support only, so
    every norm of the draw is exact)."""
    count = rng.randint(1, max_shells)
    shells = rng.sample(range(shell_range[0], shell_range[1] + 1), count)
    return {k: 10.0 ** rng.uniform(-3.0, 3.0) for k in shells}


def random_shell_function(rng: random.Random, ctx: PadicContext) -> ShellFunction:
    return ShellFunction.from_shell_values(random_shell_values(rng), ctx)


def _claim_ratio(claim: str, params: ClaimParams, ctx: PadicContext,
                 fs: Sequence[ShellFunction], window: int) -> float:
    """Norm ratio of the claim's bound at the given inputs (error bounds
    folded in upward so the check is conservative)."""
    if claim == "thm21":
        spec = HardyLpWeakParams.with_derived_q(params.p1, params.beta,
                                                params.gamma, params.alpha, ctx) \
            if params.q is None else \
            HardyLpWeakParams(p1=params.p1, q=params.q, beta=params.beta,
                              gamma=params.gamma, alpha=params.alpha, ctx=ctx)
        image = fractional_hardy(fs[0], spec.alpha, ctx)
        num = weak_norm(image, WeakParams(spec.q, spec.gamma), ctx)
        den = lp_norm(fs[0], LebesgueParams(spec.p1, spec.beta), ctx)
        return (num.expect() + num.error_bound) / den.expect()
    if claim == "thm22":
        spec = HardyL1WeakParams(alpha=params.alpha, gamma=params.gamma, ctx=ctx)
        image = fractional_hardy(fs[0], spec.alpha, ctx)
        num = weak_norm(image, WeakParams(spec.q, spec.gamma), ctx)
        den = lp_norm(fs[0], LebesgueParams(1, 0), ctx)
        return (num.expect() + num.error_bound) / den.expect()
    alphas = _alphas(params)
    den = 1.0
    for a, f in zip(alphas.alphas, fs):
        den *= sup_norm(f, SupParams(a), ctx).expect()
    if claim == "cor31":
        image = multilinear_hardy(fs, ctx)
        num = sup_norm(image, SupParams(alphas.alpha), ctx)
    elif claim == "cor32":
        img = multilinear_hilbert(fs, ctx, TruncationPolicy(window=window,
                                                            tol=DEFAULT_TOL_TRUNCATED))
        num = sup_norm(img, SupParams(alphas.alpha), ctx)
    elif claim == "cor41":
        phi = indicator_max_ball_kernel(alphas.m, ctx,
                                        TruncationPolicy(window=window,
                                                         tol=DEFAULT_TOL_TRUNCATED))
        img = hausdorff_operator(phi, fs, ctx)
        num = sup_norm(img, SupParams(alphas.alpha), ctx)
    else:
        raise ParameterError(f"unknown claim '{claim}'")
    return (num.expect() + num.error_bound) / den


def _claim_constant_and_arity(claim: str, params: ClaimParams,
                              ctx: PadicContext) -> Tuple[float, int]:
    if claim == "thm21":
        spec = HardyLpWeakParams.with_derived_q(params.p1, params.beta,
                                                params.gamma, params.alpha, ctx) \
            if params.q is None else \
            HardyLpWeakParams(p1=params.p1, q=params.q, beta=params.beta,
                              gamma=params.gamma, alpha=params.alpha, ctx=ctx)
        return hardy_lp_weak_constant(spec), 1
    if claim == "thm22":
        spec = HardyL1WeakParams(alpha=params.alpha, gamma=params.gamma, ctx=ctx)
        return hardy_l1_weak_constant(spec), 1
    alphas = _alphas(params)
    if claim == "cor31":
        return hardy_sup_constant(alphas, ctx), alphas.m
    if claim == "cor32":
        return hilbert_sup_series(alphas, ctx).value, alphas.m
    if claim == "cor41":
        return hausdorff_indicator_constant(alphas, ctx), alphas.m
    raise ParameterError(f"unknown claim '{claim}'")


def random_upper_bound_test(claim: str, params: Optional[ClaimParams] = None,
                            seed: int = 0, count: int = 100,
                            window: int = DEFAULT_WINDOW) -> VerificationReport:
    """Draw `count` random finite functions and check the bound on each.

    The report's computed_ratio is the maximum observed ratio; any
    violation serializes the offending function into extra["violations"].
    """
    if claim not in CLAIMS:
        raise ParameterError(f"unknown claim '{claim}'; expected one of {CLAIMS}")
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    params = params or DEFAULT_PARAMS[claim]
    started = time.perf_counter()
    ctx = params.ctx()
    constant, arity = _claim_constant_and_arity(claim, params, ctx)
    extremal = verify_claim(claim, params, window=window)
    rng = random.Random(seed)
    max_ratio = 0.0
    violations: List[Dict[str, object]] = []
    for i in range(count):
        draws = [random_shell_values(rng) for _ in range(arity)]
        fs = [ShellFunction.from_shell_values(v, ctx) for v in draws]
        ratio = _claim_ratio(claim, params, ctx, fs, window)
        max_ratio = max(max_ratio, ratio)
        ok_const = ratio <= constant * (1.0 + UPPER_BOUND_SLACK)
        ok_extremal = (extremal.computed_ratio is None
                       or ratio <= extremal.computed_ratio * (1.0 + UPPER_BOUND_SLACK))
        if not (ok_const and ok_extremal):
            violations.append({"index": i, "ratio": ratio,
                               "functions": [{str(k): v for k, v in d.items()}
                                             for d in draws]})
    passed = not violations
    rel = max(0.0, max_ratio / constant - 1.0)
    return VerificationReport(
        claim=claim, params=params.to_dict(), computed_ratio=max_ratio,
        closed_form=constant, rel_error=rel, tail_bound=0.0, passed=passed,
        runtime_ms=int((time.perf_counter() - started) * 1000),
        tolerance=UPPER_BOUND_SLACK,
        extra={"count": count, "seed": seed, "violations": violations,
               "extremal_ratio": extremal.computed_ratio})


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepSpec:
    """Cartesian sweep: claim, per-parameter grids, tolerance, truncation.

    Grid values may be numbers, fraction strings ("1/3"), or n-relative
    expressions ("n/4", "3n/4") resolved per point.
    """

    claim: str
    grids: Dict[str, list]
    tolerance: float = DEFAULT_TOL
    window: int = DEFAULT_WINDOW
    seed: int = 0

    def __post_init__(self) -> None:
        if self.claim not in CLAIMS:
            raise ParameterError(f"unknown claim '{self.claim}'")
        if not self.grids or any(not vs for vs in self.grids.values()):
            raise ParameterError("sweep grids must be nonempty")
        if not self.tolerance > 0:
            raise ParameterError("tolerance must be positive")


_N_RELATIVE = re.compile(r"^\s*(\d+)?\s*n\s*(?:/\s*(\d+))?\s*$")


def resolve_grid_value(value: Union[str, int, float], n: int) -> Number:
    """Parse a grid entry; "3n/4" style entries scale with the dimension."""
    if isinstance(value, (int, float, Fraction)):
        return value
    m = _N_RELATIVE.match(value)
    if m:
        num = int(m.group(1) or 1)
        den = int(m.group(2) or 1)
        return Fraction(num * n, den)
    try:
        return Fraction(value)
    except ValueError as exc:
        raise ParameterError(f"cannot parse grid value {value!r}") from exc


def _point_params(claim: str, assignment: Dict[str, object]) -> ClaimParams:
    n = int(assignment.get("n", DEFAULT_PARAMS[claim].n))
    base = DEFAULT_PARAMS[claim]
    fields: Dict[str, object] = {
        "p": int(assignment.get("p", base.p)), "n": n,
        "p1": base.p1, "q": None, "beta": base.beta, "gamma": base.gamma,
        "alpha": base.alpha, "alphas": base.alphas, "m": base.m,
    }
    for key, raw in assignment.items():
        if key in ("p", "n"):
            continue
        if key == "alphas":
            fields["alphas"] = tuple(resolve_grid_value(v, n) for v in raw)
        elif key == "m":
            fields["m"] = int(raw)
        else:
            fields[key] = resolve_grid_value(raw, n)
    return ClaimParams(**fields)


def sweep(spec: SweepSpec) -> List[VerificationReport]:
    """One report per grid point, sorted by parameter tuple; inadmissible
    points are reported as skipped with the violated constraint."""
    keys = sorted(spec.grids.keys())
    points: List[Dict[str, object]] = [{}]
    for key in keys:
        points = [dict(pt, **{key: v}) for pt in points for v in spec.grids[key]]
    points.sort(key=lambda pt: tuple(str(pt[k]) for k in keys))
    reports: List[VerificationReport] = []
    for pt in points:
        started = time.perf_counter()
        try:
            params = _point_params(spec.claim, pt)
            params.ctx()  # prime/dimension check
        except ParameterError as exc:
            reports.append(VerificationReport(
                claim=spec.claim, params={k: str(v) for k, v in pt.items()},
                computed_ratio=None, closed_form=None, rel_error=None,
                tail_bound=0.0, passed=True, skipped=True, reason=str(exc),
                runtime_ms=int((time.perf_counter() - started) * 1000),
                tolerance=spec.tolerance))
            continue
        report = verify_claim(spec.claim, params, tol=spec.tolerance,
                              window=spec.window)
        if not report.passed and report.reason is not None:
            # precondition violations at sweep points are skips, not failures
            report.skipped = True
            report.passed = True
        reports.append(report)
    return reports


# ---------------------------------------------------------------------------
# canonical serialization


def _format_number(v: float) -> str:
    if v != v:
        return "NaN"
    if v == math.inf:
        return "Infinity"
    if v == -math.inf:
        return "-Infinity"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _to_json(obj, parts: List[str]) -> None:
    if obj is None:
        parts.append("null")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif isinstance(obj, (int,)):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(_format_number(obj))
    elif isinstance(obj, str):
        import json as _json
        parts.append(_json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        first = True
        for key in sorted(obj.keys(), key=str):
            if not first:
                parts.append(",")
            first = False
            import json as _json
            parts.append(_json.dumps(str(key)))
            parts.append(":")
            _to_json(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _to_json(item, parts)
        parts.append("]")
    else:
        _to_json(float(obj), parts)


def report_to_dict(report: VerificationReport, include_runtime: bool = True) -> Dict[str, object]:
    out: Dict[str, object] = {
        "claim": report.claim,
        "params": report.params,
        "ratio": report.computed_ratio,
        "constant": report.closed_form,
        "rel_error": report.rel_error,
        "tail_bound": report.tail_bound,
        "pass": report.passed,
        "tolerance": report.tolerance,
    }
    if include_runtime:
        out["runtime_ms"] = report.runtime_ms
    if report.reason is not None:
        out["reason"] = report.reason
    if report.skipped:
        out["skipped"] = True
    if report.extra:
        out["extra"] = report.extra
    return out


def serialize_reports(reports: Sequence[VerificationReport],
                      include_runtime: bool = True) -> str:
    """Canonical JSON: sorted keys, floats with 17 significant digits."""
    payload = [report_to_dict(r, include_runtime=include_runtime) for r in reports]
    parts: List[str] = []
    _to_json(payload if len(payload) != 1 else payload[0], parts)
    return "".join(parts)


def reports_to_csv(reports: Sequence[VerificationReport]) -> str:
    """Flat CSV: one row per report, union of parameter columns."""
    param_keys = sorted({k for r in reports for k in r.params})
    header = ["claim"] + [f"param_{k}" for k in param_keys] + \
        ["ratio", "constant", "rel_error", "tail_bound", "pass", "runtime_ms", "reason"]
    lines = [",".join(header)]
    for r in reports:
        row = [r.claim]
        for k in param_keys:
            v = r.params.get(k, "")
            row.append(_format_number(v) if isinstance(v, float) else str(v))
        for v in (r.computed_ratio, r.closed_form, r.rel_error, r.tail_bound):
            row.append("" if v is None else _format_number(float(v)))
        row.append(str(r.passed).lower())
        row.append(str(r.runtime_ms))
        row.append("" if r.reason is None else '"%s"' % r.reason.replace('"', "'"))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
