"""Exact calculus over piecewise exponential-sum radial functions.

A `ShellFunction` stores a nonnegative radial function on Q_p^n as a
sorted list of disjoint `Segment`s of shell indices.  On a segment the
value at shell k is

    value(k) = sum_i  c_i * p^(k * e_i)

with finitely many terms.  This class of functions is closed under the
Hardy-type operators of this package (their images are again finite
exponential sums per segment), which is what makes every norm in the
package a closed-form geometric sum rather than a truncation.

Design rules enforced at construction:

* segments are sorted and disjoint, values are nonnegative;
* every segment is *monotone* in k.  Terms of mixed slope sign (one term
  increasing, another decreasing) are rejected: monotonicity is what
  makes superlevel sets intervals, so it is a construction invariant
  rather than something checked at use sites.  Operators that would
  produce a non-monotone piece split it into per-shell constants first.
* a single-shell segment is canonicalized to a constant, so that equal
  functions have equal representations regardless of how they were built.

Infinite sums are always reported through `TailSum`: a divergent series
never silently becomes a large number.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .context import NEG_INF, POS_INF, Number, PadicContext
from .errors import DivergenceError, ParameterError

Bound = Union[int, float]  # integer shell index, or +-inf

# Default window for per-shell scans; analytic tails are never dropped.
SCAN_WINDOW = 256

# Relative slack for floating-point nonnegativity checks at endpoints.
_NEG_TOL = 1e-9


@dataclass(frozen=True)
class TailSum:
    """Value of a series together with an explicit convergence verdict.

    ``converged=False`` means the value must not be consumed downstream;
    ``error_bound`` is 0 whenever the sum was evaluated in closed form.
    """

    value: float
    converged: bool = True
    error_bound: float = 0.0
    detail: Optional[str] = None

    def expect(self) -> float:
        """Return the value, raising if the sum did not converge."""
        if not self.converged:
            raise DivergenceError(self.detail or "divergent sum")
        return self.value


def _check_bound(b: Bound, name: str) -> None:
    if isinstance(b, int):
        return
    if isinstance(b, float) and (b == NEG_INF or b == POS_INF):
        return
    raise ParameterError(f"{name} must be an integer shell index or +-inf, got {b!r}")


def geom_sum(expo: Number, lo: Bound, hi: Bound, ctx: PadicContext) -> TailSum:
    """Closed form of sum_{k=lo..hi} p^(k*expo).

    Lower-infinite ranges need expo > 0, upper-infinite need expo < 0,
    doubly-infinite ranges diverge unless empty.  The sign tests use the
    exact exponent (int/Fraction untouched), never a rounded float.
    """
    _check_bound(lo, "lo")
    _check_bound(hi, "hi")
    if lo > hi:
        return TailSum(0.0)
    p = ctx.p
    lo_inf = lo == NEG_INF
    hi_inf = hi == POS_INF
    if expo == 0:
        if lo_inf or hi_inf:
            return TailSum(POS_INF, converged=False, detail="constant series over an infinite range")
        return TailSum(float(hi - lo + 1))
    if lo_inf and hi_inf:
        return TailSum(POS_INF, converged=False, detail="doubly-infinite geometric series")
    if lo_inf:
        if not expo > 0:
            return TailSum(POS_INF, converged=False,
                           detail=f"sum of p^(k*{expo}) over k -> -inf diverges")
        return TailSum(ctx.pow(hi * expo) / (1.0 - ctx.pow(-expo)))
    if hi_inf:
        if not expo < 0:
            return TailSum(POS_INF, converged=False,
                           detail=f"sum of p^(k*{expo}) over k -> +inf diverges")
        return TailSum(ctx.pow(lo * expo) / (1.0 - ctx.pow(expo)))
    # finite range: p^(lo*e) * (r^m - 1)/(r - 1) with r = p^e, m = hi-lo+1,
    # written with expm1 so small exponents stay accurate
    ln_r = float(expo) * math.log(p)
    m = hi - lo + 1
    return TailSum(ctx.pow(lo * expo) * math.expm1(m * ln_r) / math.expm1(ln_r))


def _term_slope(coeff: float, expo: Number) -> int:
    """Sign of d/dk [coeff * p^(k*expo)]: +1 increasing, -1 decreasing, 0 flat."""
    if coeff == 0 or expo == 0:
        return 0
    pos_c = coeff > 0
    pos_e = expo > 0
    return 1 if pos_c == pos_e else -1


@dataclass(frozen=True)
class Segment:
    """One contiguous shell-index range with an exponential-sum value.

    Use :func:`make_segment`, which normalizes and validates; the raw
    constructor trusts its input.
    """

    lo: Bound
    hi: Bound
    terms: tuple[tuple[float, Number], ...]

    # Segments are context-free; evaluation takes the prime explicitly.
    def value_at(self, p: int, k: Union[int, float]) -> float:
        return math.fsum(c * math.pow(p, float(k) * float(e)) for c, e in self.terms)

    def limit(self, p: int, direction: int) -> float:
        """Limit of the value as k -> +inf (direction=+1) or -inf (-1).

        Returns +inf for unbounded growth; the nonnegativity invariant
        rules out -inf on valid segments.
        """
        dominant: Optional[Number] = None
        for _, e in self.terms:
            if dominant is None:
                dominant = e
            elif (direction > 0 and e > dominant) or (direction < 0 and e < dominant):
                dominant = e
        if dominant is None:
            return 0.0
        csum = math.fsum(c for c, e in self.terms if e == dominant)
        if dominant == 0:
            return csum
        grows = (direction > 0) == (dominant > 0)
        if grows:
            return POS_INF if csum > 0 else NEG_INF
        # dominant term decays in this direction; next-order terms decay too
        return 0.0

    @property
    def is_constant(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 0

    @property
    def const_value(self) -> float:
        assert self.is_constant
        return self.terms[0][0]

    def slope(self) -> int:
        """Overall monotonicity: +1, -1 or 0 (valid segments are never mixed)."""
        signs = {_term_slope(c, e) for c, e in self.terms}
        signs.discard(0)
        if not signs:
            return 0
        return signs.pop()

    def dominant_term(self, direction: int) -> tuple[float, Number]:
        """The term governing the value as k -> direction * inf."""
        best = None
        for c, e in self.terms:
            if c == 0:
                continue
            if best is None or (direction > 0 and e > best[1]) or (direction < 0 and e < best[1]):
                best = (c, e)
        assert best is not None
        return best


def make_segment(lo: Bound, hi: Bound, terms: Iterable[tuple[float, Number]],
                 p: int) -> Optional[Segment]:
    """Normalize and validate a segment; returns None for the zero segment.

    Normalization merges equal exponents, drops zero coefficients and
    collapses single-shell segments to constants.  Validation enforces
    lo <= hi, monotonicity (no mixed slope signs) and nonnegative values
    at both endpoints (limits for infinite ends).
    """
    _check_bound(lo, "lo")
    _check_bound(hi, "hi")
    if lo > hi:
        raise ParameterError(f"segment bounds out of order: {lo} > {hi}")
    merged: dict[Number, float] = {}
    for c, e in terms:
        c = float(c)
        if c == 0.0:
            continue
        merged[e] = merged.get(e, 0.0) + c
    norm = tuple(sorted(((c, e) for e, c in merged.items() if c != 0.0),
                        key=lambda t: float(t[1])))
    if not norm:
        return None
    seg = Segment(lo, hi, norm)
    if lo == hi:  # single shell: canonicalize to a constant
        v = seg.value_at(p, lo)
        if v == 0.0:
            return None
        if v < 0.0:
            raise ParameterError(f"segment value negative at shell {lo}: {v}")
        return Segment(lo, hi, ((v, 0),))
    signs = {_term_slope(c, e) for c, e in norm}
    signs.discard(0)
    if len(signs) > 1:
        raise ParameterError(
            f"segment on [{lo}, {hi}] is not monotone (mixed term slopes); "
            "split it into per-shell constants first")
    scale = math.fsum(abs(c) for c, _ in norm)
    for bound, direction in ((lo, -1), (hi, +1)):
        if bound in (NEG_INF, POS_INF):
            v = seg.limit(p, direction)
        else:
            v = seg.value_at(p, bound)
        if v < -_NEG_TOL * scale:
            raise ParameterError(
                f"segment on [{lo}, {hi}] takes a negative value ({v}) at {bound}")
    return seg


@dataclass(frozen=True)
class ShellFunction:
    """A nonnegative radial function: sorted disjoint segments, 0 elsewhere."""

    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        prev_hi: Bound = NEG_INF
        first = True
        for seg in self.segments:
            if not first and seg.lo <= prev_hi:
                raise ParameterError(
                    f"segments overlap or are unsorted near shell {seg.lo}")
            prev_hi = seg.hi
            first = False

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def build(pieces: Iterable[tuple[Bound, Bound, Iterable[tuple[float, Number]]]],
              ctx: PadicContext) -> "ShellFunction":
        segs = []
        for lo, hi, terms in pieces:
            seg = make_segment(lo, hi, terms, ctx.p)
            if seg is not None:
                segs.append(seg)
        segs.sort(key=lambda s: float(s.lo))
        return ShellFunction(tuple(segs))

    @staticmethod
    def zero() -> "ShellFunction":
        return ShellFunction(())

    @staticmethod
    def constant(value: float, lo: Bound, hi: Bound, ctx: PadicContext) -> "ShellFunction":
        return ShellFunction.build([(lo, hi, [(value, 0)])], ctx)

    @staticmethod
    def power_law(coeff: float, expo: Number, lo: Bound, hi: Bound,
                  ctx: PadicContext) -> "ShellFunction":
        """coeff * |x|^expo restricted to shells lo..hi."""
        return ShellFunction.build([(lo, hi, [(coeff, expo)])], ctx)

    @staticmethod
    def indicator_ball(gamma: int, ctx: PadicContext, open_ball: bool = False) -> "ShellFunction":
        """Characteristic function of {|x| <= p^gamma} (or < with open_ball)."""
        return ShellFunction.constant(1.0, NEG_INF, gamma - 1 if open_ball else gamma, ctx)

    @staticmethod
    def from_shell_values(values: dict[int, float], ctx: PadicContext) -> "ShellFunction":
        return ShellFunction.build([(k, k, [(v, 0)]) for k, v in sorted(values.items())], ctx)

    # -- queries ---------------------------------------------------------------

    def value(self, k: int, ctx: PadicContext) -> float:
        starts = [float(s.lo) for s in self.segments]
        i = bisect_right(starts, float(k)) - 1
        if i >= 0 and k <= self.segments[i].hi:
            return self.segments[i].value_at(ctx.p, k)
        return 0.0

    @property
    def is_zero(self) -> bool:
        return not self.segments

    @property
    def is_finite(self) -> bool:
        return all(s.lo != NEG_INF and s.hi != POS_INF for s in self.segments)

    def support_bounds(self) -> tuple[Bound, Bound]:
        if not self.segments:
            return (POS_INF, NEG_INF)
        return (self.segments[0].lo, self.segments[-1].hi)

    def scaled(self, c: float) -> "ShellFunction":
        if c < 0:
            raise ParameterError("scale factor must be nonnegative")
        if c == 0:
            return ShellFunction.zero()
        return ShellFunction(tuple(
            Segment(s.lo, s.hi, tuple((c * coef, e) for coef, e in s.terms))
            for s in self.segments))


# -- integration ----------------------------------------------------------------


def integrate_radial(f: ShellFunction, weight: Number, ctx: PadicContext) -> TailSum:
    """Integral of f(x) |x|^weight over Q_p^n.

    Equals (1 - p^(-n)) * sum_k f(k) p^(k(n+weight)); every segment/term
    contributes one closed-form geometric sum.
    """
    total = 0.0
    for seg in f.segments:
        for c, e in seg.terms:
            g = geom_sum(e + ctx.n + weight, seg.lo, seg.hi, ctx)
            if not g.converged:
                return TailSum(POS_INF, converged=False,
                               detail=f"divergent on segment [{seg.lo}, {seg.hi}]: {g.detail}")
            total += c * g.value
    return TailSum(ctx.sphere_unit * total)


def _above(v: float, lam: float, strict: bool) -> bool:
    return v > lam if strict else v >= lam


def _first_index_above(seg: Segment, lam: float, p: int, strict: bool) -> int:
    """Smallest integer k in the segment with value(k) > lam (or >= lam).

    Only called on increasing segments.  Single exponential terms are
    solved analytically and then polished by direct comparison, so the
    answer agrees exactly with value_at(); multi-term segments use
    monotone bisection on integers.
    """
    lo, hi = seg.lo, seg.hi
    if len(seg.terms) == 1:
        c, e = seg.terms[0]
        # c * p^(k e) > lam  <=>  k e > log_p(lam/c)
        t = (math.log(lam) - math.log(c)) / (float(e) * math.log(p))
        k = math.floor(t)
        while k - 1 >= lo and _above(seg.value_at(p, k - 1), lam, strict):
            k -= 1
        while k <= hi and not _above(seg.value_at(p, k), lam, strict):
            k += 1
        return k
    a = int(lo) if lo != NEG_INF else -SCAN_WINDOW
    b = int(hi) if hi != POS_INF else SCAN_WINDOW
    while lo == NEG_INF and _above(seg.value_at(p, a), lam, strict):
        a *= 2
    while hi == POS_INF and not _above(seg.value_at(p, b), lam, strict):
        b *= 2
    # invariant: value(a) fails the test (or a = lo), value(b) passes it
    while a < b:
        mid = (a + b) // 2
        if _above(seg.value_at(p, mid), lam, strict):
            b = mid
        else:
            a = mid + 1
    return b


def superlevel_interval(seg: Segment, lam: float, p: int,
                        strict: bool = True) -> Optional[tuple[Bound, Bound]]:
    """Integer solution interval of {k in segment : value(k) > lam} (or >=)."""
    if seg.is_constant:
        return (seg.lo, seg.hi) if _above(seg.const_value, lam, strict) else None
    slope = seg.slope()
    v_lo = seg.limit(p, -1) if seg.lo == NEG_INF else seg.value_at(p, seg.lo)
    v_hi = seg.limit(p, +1) if seg.hi == POS_INF else seg.value_at(p, seg.hi)
    if slope > 0:
        # an infinite-end limit is approached, never attained
        hi_pass = v_hi > lam if seg.hi == POS_INF else _above(v_hi, lam, strict)
        if not hi_pass:
            return None
        if _above(v_lo, lam, strict) and seg.lo != NEG_INF:
            return (seg.lo, seg.hi)
        if seg.lo == NEG_INF and v_lo > lam:
            return (seg.lo, seg.hi)
        k = _first_index_above(seg, lam, p, strict)
        return (k, seg.hi)
    # decreasing: mirror of the increasing case
    lo_pass = v_lo > lam if seg.lo == NEG_INF else _above(v_lo, lam, strict)
    if not lo_pass:
        return None
    if _above(v_hi, lam, strict) and seg.hi != POS_INF:
        return (seg.lo, seg.hi)
    if seg.hi == POS_INF and v_hi > lam:
        return (seg.lo, seg.hi)
    mirrored = Segment(-seg.hi if seg.hi != POS_INF else NEG_INF,
                       -seg.lo if seg.lo != NEG_INF else POS_INF,
                       tuple((c, -e) for c, e in seg.terms))
    k = _first_index_above(mirrored, lam, p, strict)
    return (seg.lo, -k)


def superlevel_measure(f: ShellFunction, lam: float, gamma_weight: Number,
                       ctx: PadicContext) -> TailSum:
    """Weighted measure of the superlevel set {x : f(x) > lam}.

    The solution set in k is found exactly per segment (analytically for
    single-term values, monotone bisection otherwise) and measured via
    closed-form geometric sums with exponent n + gamma_weight.  An
    infinite measure is reported as converged=False, never as a number.
    """
    if not lam > 0:
        raise ParameterError("lambda must be positive")
    e_w = ctx.n + gamma_weight
    total = 0.0
    for seg in f.segments:
        iv = superlevel_interval(seg, lam, ctx.p)
        if iv is None:
            continue
        g = geom_sum(e_w, iv[0], iv[1], ctx)
        if not g.converged:
            return TailSum(POS_INF, converged=False,
                           detail=f"infinite superlevel measure from segment [{seg.lo}, {seg.hi}]")
        total += g.value
    return TailSum(ctx.sphere_unit * total)
