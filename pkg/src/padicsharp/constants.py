"""Closed-form sharp constants and the extremal functions attaining them.

The five constants:

* `hardy_lp_weak_constant` -- fractional Hardy operator from the weighted
  space L^{p1}(|x|^beta) to weak L^{q,inf}(|x|^gamma), p1 > 1, under the
  scaling relation (gamma+n)/q + alpha = (beta+n)/p1;
* `hardy_l1_weak_constant` -- the L^1 endpoint, target exponent
  q = (n+gamma)/(n-alpha);
* `hardy_sup_constant` -- the m-linear Hardy operator between weighted-type
  sup-norm spaces, the product formula (1-p^-n)^m / prod (1 - p^(alpha_j - n));
* `hilbert_sup_series` / `hilbert_sup_bound` -- the m-linear Hilbert
  operator's sharp value is an m-fold series; the bound is the closed form
  that dominates it (the series is reported with a tail bound, never as a
  single "sharp" number);
* `hausdorff_sup_constant` -- the Hausdorff operator's normalization
  integral, numeric with tails.

Extremal inputs are built by `extremal_hardy_lp`, `extremal_unit_ball`
and `extremal_weighted`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .context import NEG_INF, POS_INF, Number, PadicContext
from .errors import ParameterError
from .operators import (AlphaVector, KernelSpec, TruncationPolicy,
                        hausdorff_constant, hilbert_kernel, kernel_constant)
from .shells import ShellFunction, TailSum

_SCALING_TOL = 1e-12


@dataclass(frozen=True)
class HardyLpWeakParams:
    """Parameters of the strong-to-weak Hardy bound with p1 > 1.

    Hypotheses: beta < n(p1-1), n+gamma > 0, 0 <= alpha < beta/(p1-1) and
    the scaling relation (gamma+n)/q + alpha = (beta+n)/p1 (checked to
    1e-12).  `check=False` skips validation for boundary exploration.
    """

    p1: Number
    q: Number
    beta: Number
    gamma: Number
    alpha: Number
    ctx: PadicContext
    check: bool = True

    def __post_init__(self) -> None:
        if not self.check:
            return
        n = self.ctx.n
        if not self.p1 > 1:
            raise ParameterError(f"p1 > 1 violated: {self.p1}")
        if not self.q >= 1:
            raise ParameterError(f"q >= 1 violated: {self.q}")
        if not self.beta < n * (self.p1 - 1):
            raise ParameterError(f"beta < n(p1-1) violated: {self.beta}")
        if not n + self.gamma > 0:
            raise ParameterError(f"n + gamma > 0 violated: {self.gamma}")
        if not (0 <= self.alpha and self.alpha < self.beta / (self.p1 - 1)):
            raise ParameterError(
                f"0 <= alpha < beta/(p1-1) violated: alpha={self.alpha}")
        lhs = (self.gamma + n) / self.q + self.alpha
        rhs = (self.beta + n) / self.p1
        if abs(float(lhs) - float(rhs)) > _SCALING_TOL:
            raise ParameterError(
                f"scaling relation (gamma+n)/q + alpha = (beta+n)/p1 violated: "
                f"{float(lhs)} != {float(rhs)}")

    @staticmethod
    def with_derived_q(p1: Number, beta: Number, gamma: Number, alpha: Number,
                       ctx: PadicContext, check: bool = True) -> "HardyLpWeakParams":
        """Solve the scaling relation for q."""
        denom = (beta + ctx.n) / p1 - alpha
        if not denom > 0:
            raise ParameterError("scaling relation gives no positive q")
        return HardyLpWeakParams(p1=p1, q=(gamma + ctx.n) / denom, beta=beta,
                                 gamma=gamma, alpha=alpha, ctx=ctx, check=check)


@dataclass(frozen=True)
class HardyL1WeakParams:
    """Parameters of the L^1 endpoint bound: 0 < alpha < n, n + gamma > 0."""

    alpha: Number
    gamma: Number
    ctx: PadicContext
    check: bool = True

    def __post_init__(self) -> None:
        if not self.check:
            return
        n = self.ctx.n
        if not (0 < self.alpha and self.alpha < n):
            # the endpoint bound fails at alpha = 0
            raise ParameterError(f"0 < alpha < n violated: {self.alpha}")
        if not n + self.gamma > 0:
            raise ParameterError(f"n + gamma > 0 violated: {self.gamma}")

    @property
    def q(self) -> Number:
        return (self.ctx.n + self.gamma) / (self.ctx.n - self.alpha)


def _weak_prefactor(gamma: Number, ctx: PadicContext) -> float:
    """(1-p^-n) p^(-n-gamma) / (1 - p^(-n-gamma))."""
    e = ctx.n + gamma
    return ctx.sphere_unit * ctx.pow(-e) / (1.0 - ctx.pow(-e))


def source_norm_constant(p1: Number, beta: Number, ctx: PadicContext) -> float:
    """(1-p^-n) p^(beta/(p1-1)-n) / (1 - p^(beta/(p1-1)-n)), the constant
    whose powers give both the extremal's norm and the Hoelder factor."""
    if not p1 > 1:
        raise ParameterError("p1 > 1 required")
    b = beta / (p1 - 1) - ctx.n
    denom = 1.0 - ctx.pow(b)
    if not denom > 0:
        raise ParameterError(
            f"beta < n(p1-1) violated: closed form has a pole (beta={beta})")
    return ctx.sphere_unit * ctx.pow(b) / denom


def hardy_lp_weak_constant(params: HardyLpWeakParams) -> float:
    """Sharp constant of the fractional Hardy operator,
    L^{p1}(|x|^beta) -> L^{q,inf}(|x|^gamma)."""
    ctx = params.ctx
    pref = _weak_prefactor(params.gamma, ctx)
    src = source_norm_constant(params.p1, params.beta, ctx)
    p1c = float(params.p1) / (float(params.p1) - 1.0)
    return pref ** (1.0 / float(params.q)) * src ** (1.0 / p1c)


def hardy_l1_weak_constant(params: HardyL1WeakParams) -> float:
    """Sharp constant of the fractional Hardy operator,
    L^1 -> L^{(n+gamma)/(n-alpha),inf}(|x|^gamma)."""
    ctx = params.ctx
    e = ctx.n + params.gamma
    base = ctx.sphere_unit / ((1.0 - ctx.pow(-e)) * ctx.pow(e))
    return base ** (float(ctx.n - params.alpha) / float(e))


def branch_suprema(params: HardyLpWeakParams, grid: int = 12) -> tuple[float, float]:
    """The two branch suprema of the weak norm of the extremal image,
    computed from the superlevel geometry rather than the closed form.

    The image of f0 = |x|^(-beta/(p1-1)) chi(|x|<1) is C |x|^(alpha-b') on
    |x| <= 1 and C |x|^(alpha-n) on |x| > 1 with b' = beta/(p1-1).  For
    lam < C the superlevel set is the ball of radius (C/lam)^(1/(n-alpha))
    (outer branch); for lam >= C it is the ball of radius
    (C/lam)^(1/(b'-alpha)) (inner branch).  Each branch objective is
    maximized over a geometric grid of lam, with the branch endpoint
    lam = C included; both suprema land there.
    """
    ctx = params.ctx
    n = ctx.n
    qf = float(params.q)
    e_w = n + params.gamma
    c_const = source_norm_constant(params.p1, params.beta, ctx)
    bprime = params.beta / (params.p1 - 1)

    def ball_measure_interp(log_radius: float) -> float:
        # weighted measure of {|x| < p^t}: geometric sum through t-1
        return ctx.sphere_unit * ctx.pow((log_radius - 1.0) * e_w) / (1.0 - ctx.pow(-e_w))

    def objective(lam: float, slope: Number) -> float:
        t = math.log(c_const / lam) / (float(slope) * math.log(ctx.p))
        return lam * ball_measure_interp(t) ** (1.0 / qf)

    m_outer = 0.0
    m_inner = 0.0
    for i in range(grid + 1):
        lam_lo = c_const * ctx.pow(-i)       # lam <= C, outer branch
        m_outer = max(m_outer, objective(lam_lo, n - params.alpha))
        lam_hi = c_const * ctx.pow(i)        # lam >= C, inner branch
        m_inner = max(m_inner, objective(lam_hi, bprime - params.alpha))
    return m_outer, m_inner


def hardy_sup_constant(alphas: AlphaVector, ctx: PadicContext) -> float:
    """Sharp constant of the m-linear Hardy operator between weighted-type
    sup-norm spaces: (1-p^-n)^m / prod_j (1 - p^(alpha_j - n))."""
    alphas.require_below_n(ctx)
    value = ctx.sphere_unit ** alphas.m
    for a in alphas.alphas:
        value /= 1.0 - ctx.pow(a - ctx.n)
    return value


def hilbert_sup_series(alphas: AlphaVector, ctx: PadicContext,
                       truncation: Optional[TruncationPolicy] = None,
                       window: Optional[int] = None) -> TailSum:
    """The m-linear Hilbert operator's sharp value: the m-fold series
    (1-p^-n)^m sum_k prod p^(k_j(n-alpha_j)) / (1 + sum p^(k_j n))^m,
    truncated with a rigorous tail bound.  Needs alpha_j < n, alpha > 0.

    The default tolerance is the truncated-sum gate (1e-6); closed-form
    constants elsewhere keep the tighter default.
    """
    alphas.require_below_n(ctx)
    if not alphas.alpha > 0:
        raise ParameterError(f"alpha = sum(alpha_j) > 0 violated: {alphas.alpha}")
    kern = hilbert_kernel(alphas.m, ctx,
                          truncation or TruncationPolicy(tol=1e-6))
    return kernel_constant(kern, alphas, ctx, window=window)


def hilbert_sup_bound(alphas: AlphaVector, ctx: PadicContext) -> float:
    """Closed-form upper bound for the Hilbert series:
    (1-p^-n)^m (1-p^(-mn)) / ((1-p^(-alpha)) prod_j (1 - p^(alpha_j - n)))."""
    alphas.require_below_n(ctx)
    a = alphas.alpha
    if not a > 0:
        raise ParameterError(f"alpha = sum(alpha_j) > 0 violated: {a}")
    m = alphas.m
    value = ctx.sphere_unit ** m * (1.0 - ctx.pow(-m * ctx.n))
    value /= 1.0 - ctx.pow(-a)
    for aj in alphas.alphas:
        value /= 1.0 - ctx.pow(aj - ctx.n)
    return value


def hilbert_bound_region_sum(alphas: AlphaVector, ctx: PadicContext) -> float:
    """The Hilbert bound assembled from its region decomposition: the unit
    cube region plus one region per index that realizes the (large) max,
    each in closed form; the sum telescopes to `hilbert_sup_bound`."""
    alphas.require_below_n(ctx)
    a = alphas.alpha
    if not a > 0:
        raise ParameterError(f"alpha = sum(alpha_j) > 0 violated: {a}")
    m = alphas.m
    n = ctx.n
    unit = ctx.sphere_unit ** m
    j0 = unit
    for aj in alphas.alphas:
        j0 /= 1.0 - ctx.pow(aj - n)
    total = j0
    for i in range(1, m + 1):
        prefix = 1.0
        for j in range(1, i):
            prefix *= ctx.pow(alphas.alphas[j - 1] - n)
        denom = 1.0 - ctx.pow(-a)
        for k in range(1, m + 1):
            if k != i:
                denom *= 1.0 - ctx.pow(alphas.alphas[k - 1] - n)
        total += unit * ctx.pow(-a) * prefix / denom
    return total


def hausdorff_indicator_constant(alphas: AlphaVector, ctx: PadicContext) -> float:
    """Closed form of the Hausdorff constant for the product indicator
    multiplier prod_j chi(|y_j| <= 1): prod_j (1-p^-n)/(1-p^(alpha_j)),
    convergent exactly when every alpha_j < 0."""
    value = 1.0
    for j, a in enumerate(alphas.alphas):
        if not a < 0:
            raise ParameterError(
                f"alpha_{j + 1} < 0 violated: indicator multiplier needs "
                f"negative exponents, got {a}")
        value *= ctx.sphere_unit / (1.0 - ctx.pow(a))
    return value


# ---------------------------------------------------------------------------
# extremal functions


def extremal_hardy_lp(beta: Number, p1: Number, ctx: PadicContext) -> ShellFunction:
    """f0 = |x|^(-beta/(p1-1)) on the open unit ball, zero elsewhere."""
    if not p1 > 1:
        raise ParameterError("p1 > 1 required")
    if not beta / (p1 - 1) < ctx.n:
        raise ParameterError("beta < n(p1-1) required for an integrable extremal")
    return ShellFunction.power_law(1.0, -(beta / (p1 - 1)), NEG_INF, -1, ctx)


def extremal_unit_ball(ctx: PadicContext) -> ShellFunction:
    """f0 = characteristic function of the open unit ball {|x| < 1}."""
    return ShellFunction.constant(1.0, NEG_INF, -1, ctx)


def extremal_weighted(alpha_j: Number, ctx: PadicContext) -> ShellFunction:
    """f_j = |x|^(-alpha_j) on all of Q_p^n (unit weighted-type norm)."""
    return ShellFunction.power_law(1.0, -alpha_j if alpha_j != 0 else 0, NEG_INF,
                                   POS_INF, ctx)
