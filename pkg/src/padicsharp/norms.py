"""Weighted strong, weak, and sup norms on radial functions.

Strong (L^p with weight |x|^beta) and sup (weighted-type) norms are the
honest discrete objects: shells have positive measure, so the essential
sup is the shell sup and every integral is a geometric sum.

The weak norm sup_{lam>0} lam * mu({f > lam})^(1/q) needs one convention
choice.  On Q_p^n the radius of a superlevel set only takes values p^k,
so the distribution function is a staircase; the closed-form sharp
constants in the literature evaluate the staircase's geometric sums *at
real-valued endpoints*, i.e. they interpolate the boundary shell's
contribution continuously instead of rounding the boundary to a whole
shell.  `weak_norm` implements exactly that scale-continuum convention:

* superlevel sets are unions of maximal integer runs of shells;
* a run boundary that crosses a power-law piece is placed at the real
  solution t of value(t) = lam and the geometric sum is evaluated at it
  (counting indices up to t-1, mirroring sum_{i<=T-1} p^(i e) with real T);
* boundaries against constant shells or the zero function stay exact.

On piecewise-constant functions (every boundary of the second kind) the
convention coincides with the exact discrete supremum, so the
level-enumeration oracle holds verbatim there.  On power-law tails it
reproduces the closed-form constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .context import NEG_INF, POS_INF, Number, PadicContext
from .errors import ParameterError
from .images import ShellImage
from .shells import (SCAN_WINDOW, Segment, ShellFunction, TailSum, geom_sum,
                     integrate_radial, superlevel_interval)

Radial = Union[ShellFunction, ShellImage]


@dataclass(frozen=True)
class LebesgueParams:
    """Exponent p1 >= 1 and power weight |x|^beta for the strong norm."""

    p1: Number
    beta: Number = 0

    def __post_init__(self) -> None:
        if not self.p1 >= 1:
            raise ParameterError(f"p1 must be >= 1, got {self.p1}")

    @property
    def p1_conjugate(self) -> float:
        """p1' with 1/p1 + 1/p1' = 1; +inf when p1 = 1."""
        if self.p1 == 1:
            return POS_INF
        return float(self.p1) / (float(self.p1) - 1.0)


@dataclass(frozen=True)
class WeakParams:
    """Exponent q >= 1 and power weight |x|^gamma for the weak norm."""

    q: Number
    gamma: Number = 0

    def __post_init__(self) -> None:
        if not self.q >= 1:
            raise ParameterError(f"q must be >= 1, got {self.q}")


@dataclass(frozen=True)
class SupParams:
    """Weight exponent alpha of the weighted-type sup norm."""

    alpha: Number = 0


# ---------------------------------------------------------------------------
# strong norm


def _power_segment_pieces(seg: Segment, p1: Number, p: int):
    """Pieces representing value(k)**p1 on the segment, plus an error bound
    carried as extra pieces of |correction| when the power of a multi-term
    sum is approximated by its dominant term on an infinite tail."""
    if len(seg.terms) == 1:
        c, e = seg.terms[0]
        yield (seg.lo, seg.hi, [(c ** float(p1), e * p1)], False)
        return
    # multi-term: exact per-shell on a finite window, dominant-term tails
    lo = seg.lo if seg.lo != NEG_INF else -SCAN_WINDOW
    hi = seg.hi if seg.hi != POS_INF else SCAN_WINDOW
    for k in range(int(lo), int(hi) + 1):
        v = seg.value_at(p, k)
        if v > 0.0:
            yield (k, k, [(v ** float(p1), 0)], False)
    for bound, clamp, direction in ((seg.lo, lo, -1), (seg.hi, hi, +1)):
        if bound == clamp:
            continue
        c_dom, e_dom = seg.dominant_term(direction)
        rng = (NEG_INF, int(lo) - 1) if direction < 0 else (int(hi) + 1, POS_INF)
        rest = math.fsum(abs(c) * math.pow(p, float(clamp) * float(e))
                         for c, e in seg.terms if e != e_dom)
        ratio = rest / (c_dom * math.pow(p, float(clamp) * float(e_dom)))
        if ratio >= 1.0:
            raise ParameterError("dominant-term tail approximation failed; widen SCAN_WINDOW")
        bulge = (1.0 + ratio) ** float(p1) - 1.0
        yield (rng[0], rng[1], [(c_dom ** float(p1), e_dom * p1)], False)
        yield (rng[0], rng[1], [(bulge * c_dom ** float(p1), e_dom * p1)], True)


def lp_norm(f: ShellFunction, params: LebesgueParams, ctx: PadicContext) -> TailSum:
    """(integral of f^p1 |x|^beta)^(1/p1); exact on single-term segments."""
    if not isinstance(f, ShellFunction):
        raise ParameterError("lp_norm expects a ShellFunction")
    total = 0.0
    err = 0.0
    for seg in f.segments:
        for lo, hi, terms, is_error in _power_segment_pieces(seg, params.p1, ctx.p):
            for c, e in terms:
                g = geom_sum(e + ctx.n + params.beta, lo, hi, ctx)
                if not g.converged:
                    return TailSum(POS_INF, converged=False,
                                   detail=f"norm diverges on segment [{seg.lo}, {seg.hi}]")
                if is_error:
                    err += ctx.sphere_unit * c * g.value
                else:
                    total += ctx.sphere_unit * c * g.value
    inv = 1.0 / float(params.p1)
    value = total ** inv
    return TailSum(value, error_bound=(total + err) ** inv - value)


# ---------------------------------------------------------------------------
# sup norm


def _sup_norm_image(img: ShellImage, params: SupParams, ctx: PadicContext) -> TailSum:
    alpha = params.alpha
    best = 0.0
    err = 0.0
    for k in img.shells():
        obj = ctx.pow(k * alpha) * img.value(k)
        if obj > best:
            best = obj
        e_obj = ctx.pow(k * alpha) * img.error(k)
        if e_obj > err:
            err = e_obj
    for tail, edge, direction in ((img.tail_lo, img.lo - 1, -1), (img.tail_hi, img.hi + 1, +1)):
        if tail is None:
            continue
        coeff, expo = tail
        rate = alpha + expo
        if (direction > 0 and rate > 0) or (direction < 0 and rate < 0):
            return TailSum(POS_INF, converged=False,
                           detail="sup-norm tail majorant does not decay")
        bound = coeff * ctx.pow(edge * rate)
        if bound > best:
            err = max(err, bound - best)
    return TailSum(best, error_bound=err)


def sup_norm(f: Radial, params: SupParams, ctx: PadicContext) -> TailSum:
    """ess sup |x|^alpha f(x) = sup over shells k of p^(k alpha) f(k)."""
    if isinstance(f, ShellImage):
        return _sup_norm_image(f, params, ctx)
    alpha = params.alpha
    best = 0.0
    for seg in f.segments:
        rates = [(c, alpha + e) for c, e in seg.terms]
        # infinite ends: diverge if some positive term grows in that direction
        if seg.lo == NEG_INF:
            if any(c > 0 and r < 0 for c, r in rates):
                return TailSum(POS_INF, converged=False,
                               detail=f"p^(k alpha) f(k) unbounded as k -> -inf on [{seg.lo}, {seg.hi}]")
            best = max(best, math.fsum(c for c, r in rates if r == 0))
        if seg.hi == POS_INF:
            if any(c > 0 and r > 0 for c, r in rates):
                return TailSum(POS_INF, converged=False,
                               detail=f"p^(k alpha) f(k) unbounded as k -> +inf on [{seg.lo}, {seg.hi}]")
            best = max(best, math.fsum(c for c, r in rates if r == 0))
        if len(seg.terms) == 1:
            # single term: the objective is one exponential, extremal at the ends
            for bound in (seg.lo, seg.hi):
                if bound not in (NEG_INF, POS_INF):
                    best = max(best, ctx.pow(bound * alpha) * seg.value_at(ctx.p, bound))
        else:
            lo = int(seg.lo) if seg.lo != NEG_INF else -SCAN_WINDOW
            hi = int(seg.hi) if seg.hi != POS_INF else SCAN_WINDOW
            for k in range(lo, hi + 1):
                best = max(best, ctx.pow(k * alpha) * seg.value_at(ctx.p, k))
            # beyond the scan the per-term bound is safe: each term's objective
            # is monotone, so it is dominated by its value at the window edge
            for edge, inf_end in ((lo, seg.lo == NEG_INF), (hi, seg.hi == POS_INF)):
                if inf_end:
                    best = max(best, math.fsum(max(c, 0.0) * ctx.pow(edge * r)
                                               for c, r in rates))
    return TailSum(best)


# ---------------------------------------------------------------------------
# weak norm: scale-continuum convention


def _solve_real(seg: Segment, lam: float, p: int) -> Optional[float]:
    """Real t with value(t) = lam on the segment's monotone extension."""
    terms = seg.terms
    ln_p = math.log(p)
    if len(terms) == 1:
        c, e = terms[0]
        if c <= 0 or lam <= 0:
            return None
        return (math.log(lam) - math.log(c)) / (float(e) * ln_p)
    nonconst = [(c, e) for c, e in terms if e != 0]
    csum = math.fsum(c for c, e in terms if e == 0)
    if len(nonconst) == 1:
        c, e = nonconst[0]
        arg = (lam - csum) / c
        if arg <= 0:
            return None
        return math.log(arg) / (float(e) * ln_p)
    # monotone bisection on real t
    a, b = -float(SCAN_WINDOW), float(SCAN_WINDOW)
    slope = seg.slope()
    f = lambda t: seg.value_at(p, t) - lam
    fa, fb = f(a), f(b)
    grow = 0
    while fa * fb > 0 and grow < 40:
        a *= 2.0
        b *= 2.0
        fa, fb = f(a), f(b)
        grow += 1
    if fa * fb > 0:
        return None
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (fb > 0):
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def _merge_runs(intervals: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    intervals.sort(key=lambda iv: iv[0])
    merged: List[Tuple[float, float]] = []
    for lo, hi in intervals:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


class _WeakEvaluator:
    """Evaluates lam * mu({f >= lam})^(1/q) under the continuum convention."""

    def __init__(self, f: ShellFunction, q: Number, gamma: Number, ctx: PadicContext):
        self.f = f
        self.ctx = ctx
        self.qf = float(q)
        self.e_w = ctx.n + gamma
        self.segs = f.segments

    def _segment_at(self, k: float) -> Optional[Segment]:
        for seg in self.segs:
            if seg.lo <= k <= seg.hi:
                return seg
        return None

    def _upper_index(self, run_hi: float, lam: float, is_top: bool) -> float:
        """Effective top summation index for a run ending at shell run_hi.

        The boundary crossing is placed at the real solution of a
        decreasing power-law form when one is available: the segment of
        the first shell outside the run, else the continuation of the
        segment that ends exactly at the run top, else (for the topmost
        run) the function's own infinite decreasing tail.  With no such
        form (constant or zero neighbours) the run is counted exactly.
        """
        if run_hi == POS_INF:
            return POS_INF
        out = self._segment_at(run_hi + 1)
        if out is not None and not out.is_constant and out.slope() < 0:
            t = _solve_real(out, lam, self.ctx.p)
            if t is not None:
                return min(max(t, run_hi), run_hi + 1) - 1.0
        inner = self._segment_at(run_hi)
        if (inner is not None and not inner.is_constant and inner.slope() < 0
                and inner.hi == run_hi):
            t = _solve_real(inner, lam, self.ctx.p)
            if t is not None:
                return min(max(t, run_hi), run_hi + 1) - 1.0
        if is_top:
            last = self.segs[-1]
            if last.hi == POS_INF and not last.is_constant and last.slope() < 0:
                t = _solve_real(last, lam, self.ctx.p)
                if t is not None:
                    return min(max(t, run_hi), run_hi + 1) - 1.0
        return run_hi

    def _lower_start(self, run_lo: float, lam: float, is_bottom: bool) -> float:
        """Effective bottom summation index (mirror of _upper_index)."""
        if run_lo == NEG_INF:
            return NEG_INF
        out = self._segment_at(run_lo - 1)
        if out is not None and not out.is_constant and out.slope() > 0:
            t = _solve_real(out, lam, self.ctx.p)
            if t is not None:
                return min(max(t, run_lo - 1), run_lo) + 1.0
        inner = self._segment_at(run_lo)
        if (inner is not None and not inner.is_constant and inner.slope() > 0
                and inner.lo == run_lo):
            t = _solve_real(inner, lam, self.ctx.p)
            if t is not None:
                return min(max(t, run_lo - 1), run_lo) + 1.0
        if is_bottom:
            first = self.segs[0]
            if first.lo == NEG_INF and not first.is_constant and first.slope() > 0:
                t = _solve_real(first, lam, self.ctx.p)
                if t is not None:
                    return min(max(t, run_lo - 1), run_lo) + 1.0
        return run_lo

    def measure(self, lam: float) -> TailSum:
        """Interpolated weighted measure of {f >= lam}."""
        ctx = self.ctx
        runs_raw: List[Tuple[float, float]] = []
        for seg in self.segs:
            iv = superlevel_interval(seg, lam, ctx.p, strict=False)
            if iv is not None:
                runs_raw.append((float(iv[0]), float(iv[1])))
        if not runs_raw:
            return TailSum(0.0)
        total = 0.0
        runs = _merge_runs(runs_raw)
        for i, (run_lo, run_hi) in enumerate(runs):
            top = self._upper_index(run_hi, lam, is_top=(i == len(runs) - 1))
            if top == POS_INF:
                return TailSum(POS_INF, converged=False,
                               detail="superlevel set has infinite measure")
            bottom = self._lower_start(run_lo, lam, is_bottom=(i == 0))
            upper = ctx.pow(top * self.e_w)
            lower = 0.0 if bottom == NEG_INF else ctx.pow((bottom - 1.0) * self.e_w)
            if upper > lower:
                total += (upper - lower) / (1.0 - ctx.pow(-self.e_w))
        return TailSum(ctx.sphere_unit * total)

    def objective(self, lam: float) -> TailSum:
        mu = self.measure(lam)
        if not mu.converged:
            return mu
        return TailSum(lam * mu.value ** (1.0 / self.qf))


def _weak_candidates(f: ShellFunction, ctx: PadicContext) -> List[float]:
    cands: List[float] = []
    for seg in f.segments:
        if seg.is_constant:
            cands.append(seg.const_value)
            continue
        for bound in (seg.lo, seg.hi):
            if bound not in (NEG_INF, POS_INF):
                cands.append(seg.value_at(ctx.p, bound))
    return sorted(set(c for c in cands if c > 0))


def _weak_limits(f: ShellFunction, q: Number, gamma: Number,
                 ctx: PadicContext) -> Tuple[Optional[TailSum], Optional[TailSum]]:
    """Objective limits as lam -> 0+ and lam -> +inf.

    In either regime the measure is a sum of moving boundary powers
    B * lam^(e_w / e_dom) plus a constant, so lam^q * mu behaves like a
    positive combination of powers of lam; the limit is read off the
    critical exponent.  Returns (lam->0 result, lam->inf result), where a
    non-converged TailSum marks a divergent weak norm.
    """
    qf = float(q)
    e_w = ctx.n + gamma
    unit = ctx.sphere_unit / (1.0 - ctx.pow(-e_w))

    # support components: maximal contiguous unions of segments
    comps: List[List[Segment]] = []
    for seg in f.segments:
        if comps and comps[-1][-1].hi + 1 == seg.lo:
            comps[-1].append(seg)
        else:
            comps.append([seg])

    zero_moving: List[Tuple[float, float]] = []  # (B, exponent of lam)
    inf_moving: List[Tuple[float, float]] = []
    c_tot = 0.0
    for comp in comps:
        lo, hi = comp[0].lo, comp[-1].hi
        if hi == POS_INF:
            last = comp[-1]
            c_dom, e_dom = last.dominant_term(+1)
            # value ~ c_dom p^(t e_dom) with e_dom < 0; solving = lam gives
            # p^(t e_w) = (lam/c_dom)^(e_w/e_dom)
            s = float(e_w) / float(e_dom)
            B = unit * ctx.pow(-e_w) * c_dom ** (-float(e_w) / float(e_dom))
            zero_moving.append((B, s))
            if lo != NEG_INF:
                c_tot -= unit * ctx.pow((lo - 1) * e_w)
        else:
            g = geom_sum(e_w, lo, hi, ctx)
            if not g.converged:
                return (TailSum(POS_INF, converged=False, detail=g.detail), None)
            c_tot += ctx.sphere_unit * g.value
        first = comp[0]
        if first.lo == NEG_INF and first.limit(ctx.p, -1) == POS_INF:
            c_dom, e_dom = first.dominant_term(-1)  # e_dom < 0, growth at -inf
            s = float(e_w) / float(e_dom)
            B = unit * ctx.pow(-e_w) * c_dom ** (-float(e_w) / float(e_dom))
            inf_moving.append((B, s))

    lim0: Optional[TailSum] = None
    exps = [(qf + s, B) for B, s in zero_moving] + ([(qf, c_tot)] if c_tot > 0 else [])
    if exps:
        min_exp = min(e for e, _ in exps)
        if min_exp < -1e-13:
            lim0 = TailSum(POS_INF, converged=False,
                           detail="objective diverges as lam -> 0 (superlevel tail)")
        elif abs(min_exp) <= 1e-13:
            lim0 = TailSum(math.fsum(B for e, B in exps if abs(e - min_exp) <= 1e-13)
                           ** (1.0 / qf))
    liminf: Optional[TailSum] = None
    if inf_moving:
        max_exp = max(qf + s for _, s in inf_moving)
        if max_exp > 1e-13:
            liminf = TailSum(POS_INF, converged=False,
                             detail="objective diverges as lam -> inf (unbounded values)")
        elif abs(max_exp) <= 1e-13:
            liminf = TailSum(math.fsum(B for B, s in inf_moving
                                       if abs(qf + s - max_exp) <= 1e-13) ** (1.0 / qf))
    return (lim0, liminf)


def _image_tail_superlevel(img: ShellImage, v: float, e_w: Number,
                           ctx: PadicContext) -> TailSum:
    """Upper bound on the measure the tails can add to {image >= v}."""
    extra = 0.0
    for tail, rng in ((img.tail_lo, (NEG_INF, img.lo - 1)),
                      (img.tail_hi, (img.hi + 1, POS_INF))):
        if tail is None:
            continue
        coeff, expo = tail
        if coeff <= 0:
            continue
        seg = Segment(rng[0], rng[1], ((coeff, expo),)) if expo != 0 else \
            Segment(rng[0], rng[1], ((coeff, 0),))
        iv = superlevel_interval(seg, v, ctx.p, strict=False)
        if iv is None:
            continue
        g = geom_sum(e_w, iv[0], iv[1], ctx)
        if not g.converged:
            return TailSum(POS_INF, converged=False, detail=g.detail)
        extra += ctx.sphere_unit * g.value
    return TailSum(extra)


def _weak_norm_image(img: ShellImage, params: WeakParams, ctx: PadicContext) -> TailSum:
    """Discrete weak norm of a windowed image.

    Candidate levels come from the evaluated shells; the tail majorants
    bound how much measure the un-evaluated shells could add, and that
    bracket is returned as error_bound.
    """
    e_w = ctx.n + params.gamma
    qf = float(params.q)
    shells = [(k, img.value(k), img.error(k)) for k in img.shells() if img.value(k) > 0]
    if not shells:
        return TailSum(0.0)
    best = 0.0
    best_hi = 0.0
    for _, v, _ in shells:
        mu = math.fsum(ctx.sphere_unit * ctx.pow(k * e_w)
                       for k, w, _ in shells if w >= v)
        extra = _image_tail_superlevel(img, v, e_w, ctx)
        if not extra.converged:
            return TailSum(POS_INF, converged=False, detail=extra.detail)
        mu_err = math.fsum(ctx.sphere_unit * ctx.pow(k * e_w)
                           for k, w, e in shells if w < v <= w + e)
        best = max(best, v * mu ** (1.0 / qf))
        best_hi = max(best_hi, v * (mu + mu_err + extra.value) ** (1.0 / qf))
    return TailSum(best, error_bound=max(0.0, best_hi - best))


def weak_norm(f: Radial, params: WeakParams, ctx: PadicContext) -> TailSum:
    """sup over lam of lam * mu_gamma({f > lam})^(1/q), continuum convention.

    Requires n + gamma > 0.  The supremum of the objective is attained
    either at a value taken by f on a segment endpoint (left limit of the
    staircase), or in the lam -> 0 / lam -> inf limit along a power-law
    tail; all three families are evaluated in closed form.
    """
    e_w = ctx.n + params.gamma
    if not e_w > 0:
        raise ParameterError("weak norm requires n + gamma > 0")
    if isinstance(f, ShellImage):
        return _weak_norm_image(f, params, ctx)
    if f.is_zero:
        return TailSum(0.0)
    for seg in f.segments:
        if seg.hi == POS_INF and seg.limit(ctx.p, +1) > 0:
            return TailSum(POS_INF, converged=False,
                           detail=f"f does not vanish as k -> +inf on [{seg.lo}, {seg.hi}]")
    ev = _WeakEvaluator(f, params.q, params.gamma, ctx)
    best = 0.0
    for lam in _weak_candidates(f, ctx):
        obj = ev.objective(lam)
        if not obj.converged:
            return obj
        best = max(best, obj.value)
    lim0, liminf = _weak_limits(f, params.q, params.gamma, ctx)
    for lim in (lim0, liminf):
        if lim is not None:
            if not lim.converged:
                return lim
            best = max(best, lim.value)
    return TailSum(best)
