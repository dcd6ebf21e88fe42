"""Hardy, Hilbert, Hausdorff and generic homogeneous-kernel operators.

All operators act on radial functions and reduce to shell sums.  The two
Hardy-type operators have exact closed-form images (ShellFunctions); the
kernel-summation operators return windowed `ShellImage`s with explicit
tail majorants.

Shell bookkeeping for the scaled arguments: multiplying a vector by the
rational scalar |x|_p^(-1) = p^(-gamma) multiplies p-adic norms by
|p^(-gamma)|_p = p^(+gamma).  Hence f(|x|_p^(-1) y) with x on shell gamma
and y on shell k evaluates f on shell gamma + k, and the same offset
appears in the Hausdorff operator after its change of variables.  With
this convention T^p applied to the family |x|^(-alpha_j) has image
C^p * |x|^(-alpha), which is what makes the sup-norm constants sharp.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .context import NEG_INF, POS_INF, Number, PadicContext
from .errors import DivergenceError, ParameterError, RepresentationError
from .images import ShellImage
from .shells import (Bound, Segment, ShellFunction, TailSum, geom_sum,
                     integrate_radial)

# Widest range a non-monotone piece may be split into per-shell constants.
_SPLIT_CAP = 4096

# m-fold summation cost grows as window^m; warn past this.
_M_SOFT_CAP = 3


@dataclass(frozen=True)
class AlphaVector:
    """Weight exponents (alpha_1, ..., alpha_m); alpha is their sum."""

    alphas: tuple[Number, ...]

    def __post_init__(self) -> None:
        if not self.alphas:
            raise ParameterError("alphas must be nonempty")

    @property
    def m(self) -> int:
        return len(self.alphas)

    @property
    def alpha(self) -> Number:
        total: Number = 0
        for a in self.alphas:
            total = total + a
        return total

    def require_below_n(self, ctx: PadicContext) -> None:
        for j, a in enumerate(self.alphas):
            if not a < ctx.n:
                raise ParameterError(f"alpha_{j + 1} < n violated: {a} >= {ctx.n}")


@dataclass(frozen=True)
class TruncationPolicy:
    """Per-axis shell window [-window, window] and target tail tolerance."""

    window: int = 64
    tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ParameterError("truncation window must be nonempty")
        if not self.tol > 0:
            raise ParameterError("truncation tolerance must be positive")


@dataclass(frozen=True)
class KernelSpec:
    """A radial m-argument kernel evaluated on shell indices.

    ``eval`` takes an m-tuple of shell indices for (|y_1|,...,|y_m|) =
    (p^{k_1},...,p^{k_m}) and must be nonnegative.  ``support_hi`` marks a
    per-axis upper support bound (the kernel vanishes if any k_j exceeds
    it); ``tail_bound(alphas, ctx, window)`` must bound the mass the
    normalization integral omits outside [-window, window]^m.  ``kmax``
    bounds sup K on its support and feeds operator truncation errors.
    """

    m: int
    eval: Callable[[Tuple[int, ...]], float]
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)
    support_hi: Optional[int] = None
    tail_bound: Optional[Callable[[Sequence[Number], PadicContext, int], float]] = None
    grid_eval: Optional[Callable[[Sequence[np.ndarray]], np.ndarray]] = None
    kmax: float = 1.0
    decay_lo: Number = 0  # K <= kmax * prod p^(k_j * decay_lo) on the support
    name: str = "kernel"

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ParameterError("kernel multilinearity m must be >= 1")
        if self.m > _M_SOFT_CAP:
            warnings.warn(f"m = {self.m}: m-fold sums scale as window^m", stacklevel=3)


# ---------------------------------------------------------------------------
# closed-form Hardy operators


def _append_piece(pieces: List[Tuple[Bound, Bound, list]], lo: Bound, hi: Bound,
                  terms: List[Tuple[float, Number]], ctx: PadicContext) -> None:
    """Append a piece, splitting non-monotone finite pieces per shell."""
    if lo > hi:
        return
    merged: dict[Number, float] = {}
    for c, e in terms:
        if c != 0.0:
            merged[e] = merged.get(e, 0.0) + c
    norm = [(c, e) for e, c in merged.items() if c != 0.0]
    if not norm:
        return
    signs = set()
    for c, e in norm:
        if e != 0 and c != 0:
            signs.add(1 if (c > 0) == (e > 0) else -1)
    if len(signs) <= 1 or lo == hi:
        pieces.append((lo, hi, norm))
        return
    if lo == NEG_INF or hi == POS_INF or hi - lo > _SPLIT_CAP:
        raise RepresentationError(
            f"image is not monotone on [{lo}, {hi}] and the range cannot be "
            "split into per-shell constants")
    probe = Segment(lo, hi, tuple(norm))
    for k in range(int(lo), int(hi) + 1):
        v = probe.value_at(ctx.p, k)
        if v != 0.0:
            pieces.append((k, k, [(v, 0)]))


def fractional_hardy(f: ShellFunction, alpha: Number, ctx: PadicContext) -> ShellFunction:
    """Image of the fractional Hardy operator: the integral of f over the
    open ball {|y| < |x|} scaled by |x|^(alpha - n), assembled exactly.

    On shell gamma the value is p^(gamma(alpha-n)) * integral of f over
    shells k <= gamma - 1; each input segment contributes closed-form
    terms.  A divergent inner integral raises DivergenceError naming the
    offending segment.
    """
    n = ctx.n
    if not (0 <= alpha and alpha < n):
        raise ParameterError(f"fractional Hardy requires 0 <= alpha < n, got {alpha}")
    pieces: List[Tuple[Bound, Bound, list]] = []
    mass = 0.0            # integral of f over shells <= pos - 2
    pos: Bound = NEG_INF  # first output shell not yet covered
    for seg in f.segments:
        lo, hi = seg.lo, seg.hi
        if lo == NEG_INF:
            terms_out = []
            for c, e in seg.terms:
                eps = e + n
                if not eps > 0:
                    raise DivergenceError(
                        f"inner integral diverges: segment [{lo}, {hi}] has "
                        f"|y|^({e}) with {e} <= -n near 0")
                terms_out.append((ctx.sphere_unit * c * ctx.pow(-eps)
                                  / (1.0 - ctx.pow(-eps)), alpha + e))
            _append_piece(pieces, NEG_INF, hi + 1, terms_out, ctx)
            mass = ctx.sphere_unit * math.fsum(
                c * ctx.pow(hi * (e + n)) / (1.0 - ctx.pow(-(e + n)))
                for c, e in seg.terms)
            pos = hi + 2
            continue
        if mass > 0.0 and pos <= lo:
            _append_piece(pieces, pos, lo, [(mass, alpha - n)], ctx)
        if any(e + n == 0 for _, e in seg.terms):
            if hi == POS_INF:
                raise RepresentationError(
                    f"segment [{lo}, {hi}] with |y|^(-n) has a log-like image "
                    "that a finite exponential sum cannot represent")
            for gamma in range(int(lo) + 1, int(hi) + 2):
                part = ctx.sphere_unit * math.fsum(
                    c * geom_sum(e + n, lo, gamma - 1, ctx).value for c, e in seg.terms)
                v = ctx.pow(gamma * (alpha - n)) * (mass + part)
                _append_piece(pieces, gamma, gamma, [(v, 0)], ctx)
        else:
            terms_out = []
            const_coef = mass
            for c, e in seg.terms:
                eps = e + n
                r = ctx.pow(eps)
                terms_out.append((ctx.sphere_unit * c / (r - 1.0), alpha + e))
                const_coef -= ctx.sphere_unit * c * ctx.pow(lo * eps) / (r - 1.0)
            terms_out.append((const_coef, alpha - n))
            _append_piece(pieces, lo + 1, hi + 1 if hi != POS_INF else POS_INF,
                          terms_out, ctx)
        if hi == POS_INF:
            pos = POS_INF
        else:
            mass += integrate_radial(ShellFunction((seg,)), 0, ctx).expect()
            pos = hi + 2
    if pos != POS_INF and mass > 0.0:
        _append_piece(pieces, pos, POS_INF, [(mass, alpha - n)], ctx)
    return ShellFunction.build(pieces, ctx)


def _cumulative_pieces(f: ShellFunction, ctx: PadicContext):
    """Pieces (lo, hi, terms) of F(gamma) = integral of f over {|y| <= p^gamma},
    covering all of Z (zero mass = empty term list)."""
    n = ctx.n
    pieces: List[Tuple[Bound, Bound, list]] = []
    mass = 0.0
    pos: Bound = NEG_INF
    for seg in f.segments:
        lo, hi = seg.lo, seg.hi
        if lo == NEG_INF:
            terms = []
            for c, e in seg.terms:
                eps = e + n
                if not eps > 0:
                    raise DivergenceError(
                        f"ball integral diverges: segment [{lo}, {hi}] has "
                        f"|y|^({e}) with {e} <= -n near 0")
                terms.append((ctx.sphere_unit * c / (1.0 - ctx.pow(-eps)), eps))
            pieces.append((NEG_INF, hi, terms))
            mass = math.fsum(c * ctx.pow(hi * e) for c, e in terms)
            pos = hi + 1
            continue
        if pos <= lo - 1:
            pieces.append((pos, lo - 1, [(mass, 0)] if mass else []))
        if any(e + n == 0 for _, e in seg.terms):
            if hi == POS_INF:
                raise RepresentationError(
                    f"segment [{lo}, {hi}] with |y|^(-n) has a log-like ball "
                    "integral that a finite exponential sum cannot represent")
            for gamma in range(int(lo), int(hi) + 1):
                part = ctx.sphere_unit * math.fsum(
                    c * geom_sum(e + n, lo, gamma, ctx).value for c, e in seg.terms)
                pieces.append((gamma, gamma, [(mass + part, 0)]))
        else:
            terms = []
            const = mass
            for c, e in seg.terms:
                eps = e + n
                r = ctx.pow(eps)
                terms.append((ctx.sphere_unit * c * r / (r - 1.0), eps))
                const -= ctx.sphere_unit * c * ctx.pow(lo * eps) / (r - 1.0)
            if const:
                terms.append((const, 0))
            pieces.append((lo, hi, terms))
        if hi == POS_INF:
            pos = POS_INF
        else:
            mass += integrate_radial(ShellFunction((seg,)), 0, ctx).expect()
            pos = hi + 1
    if pos != POS_INF:
        pieces.append((pos, POS_INF, [(mass, 0)] if mass else []))
    return pieces


def _piece_terms(pieces, k):
    for plo, phi_, terms in pieces:
        if plo <= k <= phi_:
            return terms
    return []


def _cumulative_value(pieces, k: Number, ctx: PadicContext) -> float:
    return math.fsum(c * ctx.pow(k * e) for c, e in _piece_terms(pieces, k))


def multilinear_hardy(fs: Sequence[ShellFunction], ctx: PadicContext) -> ShellFunction:
    """m-linear Hardy image: p^(-gamma m n) * prod_j F_j(gamma), where
    F_j is the closed-ball integral of f_j, using the product
    factorization of the max-norm ball into per-coordinate balls."""
    if not fs:
        raise ParameterError("multilinear Hardy needs at least one function")
    m = len(fs)
    if m > _M_SOFT_CAP:
        warnings.warn(f"m = {m}: assembly cost grows with the piece count", stacklevel=2)
    cum = [_cumulative_pieces(f, ctx) for f in fs]
    cuts = sorted({c for pieces in cum for lo, hi, _ in pieces
                   for c in (lo, hi + 1 if hi != POS_INF else None)
                   if c is not None and c not in (NEG_INF, POS_INF)})
    bounds: List[Tuple[Bound, Bound]] = []
    prev: Bound = NEG_INF
    for c in cuts:
        if prev <= c - 1:
            bounds.append((prev, c - 1))
        prev = c
    bounds.append((prev, POS_INF))

    out: List[Tuple[Bound, Bound, list]] = []
    for lo, hi in bounds:
        probe = lo if lo != NEG_INF else (hi if hi != POS_INF else 0)
        term_lists = [_piece_terms(pieces, probe) for pieces in cum]
        if any(not terms for terms in term_lists):
            continue
        prod_terms: List[Tuple[float, Number]] = []
        for combo in itertools.product(*term_lists):
            coeff = 1.0
            expo: Number = -m * ctx.n
            for c, e in combo:
                coeff *= c
                expo = expo + e
            if coeff != 0.0:
                prod_terms.append((coeff, expo))
        _append_piece(out, lo, hi, prod_terms, ctx)
    return ShellFunction.build(out, ctx)


def hardy_region_sum(alphas: AlphaVector, ctx: PadicContext) -> float:
    """Normalization constant of the m-linear Hardy kernel via the ordered
    region decomposition of the unit max-ball (one region per index that
    realizes the maximum), summed term by term.

    Region i contributes
        (1-p^-n)^m * prod_{j<i} p^(alpha_j - n)
        / ((1 - p^(alpha - mn)) * prod_{k != i} (1 - p^(alpha_k - n))),
    and the sum telescopes to the product formula.
    """
    alphas.require_below_n(ctx)
    m = alphas.m
    n = ctx.n
    a = alphas.alpha
    total = 0.0
    for i in range(1, m + 1):
        prefix = 1.0
        for j in range(1, i):
            prefix *= ctx.pow(alphas.alphas[j - 1] - n)
        denom = 1.0 - ctx.pow(a - m * n)
        for k in range(1, m + 1):
            if k != i:
                denom *= 1.0 - ctx.pow(alphas.alphas[k - 1] - n)
        total += ctx.sphere_unit ** m * prefix / denom
    return total


# ---------------------------------------------------------------------------
# kernel factories


def indicator_max_ball_kernel(m: int, ctx: PadicContext,
                              truncation: Optional[TruncationPolicy] = None) -> KernelSpec:
    """K = characteristic function of the unit max-ball {max_j |y_j| <= 1}.

    This is at once the m-linear Hardy kernel and the product indicator
    prod_j chi(|y_j| <= 1) used with the Hausdorff operator.
    """
    trunc = truncation or TruncationPolicy()

    def _eval(ks: Tuple[int, ...]) -> float:
        return 1.0 if all(k <= 0 for k in ks) else 0.0

    def _grid(axes: Sequence[np.ndarray]) -> np.ndarray:
        grids = np.meshgrid(*axes, indexing="ij", sparse=True)
        out = np.ones(tuple(len(a) for a in axes))
        for g in grids:
            out = out * (g <= 0)
        return out

    def _tail(alphas: Sequence[Number], c: PadicContext, w: int) -> float:
        for j, a in enumerate(alphas):
            if not a < c.n:
                raise ParameterError(f"alpha_{j + 1} < n violated: {a} >= {c.n}")
        full = [1.0 / (1.0 - c.pow(a - c.n)) for a in alphas]
        total = 0.0
        for j, a in enumerate(alphas):
            tail_j = c.pow(-(w + 1) * (c.n - a)) / (1.0 - c.pow(a - c.n))
            others = 1.0
            for i, fi in enumerate(full):
                if i != j:
                    others *= fi
            total += tail_j * others
        return c.sphere_unit ** m * total

    return KernelSpec(m=m, eval=_eval, truncation=trunc, support_hi=0,
                      tail_bound=_tail, grid_eval=_grid, kmax=1.0,
                      name="max-ball indicator")


def hilbert_kernel(m: int, ctx: PadicContext,
                   truncation: Optional[TruncationPolicy] = None) -> KernelSpec:
    """K = (1 + |y_1|^n + ... + |y_m|^n)^(-m) on shell indices."""
    trunc = truncation or TruncationPolicy()
    n = ctx.n

    def _eval(ks: Tuple[int, ...]) -> float:
        return (1.0 + math.fsum(ctx.pow(k * n) for k in ks)) ** (-m)

    def _grid(axes: Sequence[np.ndarray]) -> np.ndarray:
        grids = np.meshgrid(*axes, indexing="ij", sparse=True)
        s = np.zeros(tuple(len(a) for a in axes))
        for g in grids:
            s = s + float(ctx.p) ** (g.astype(float) * n)
        return (1.0 + s) ** (-m)

    def _tail(alphas: Sequence[Number], c: PadicContext, w: int) -> float:
        """Omitted normalization mass outside [-w, w]^m, bounding the
        region where the largest index exceeds w through the kernel decay
        (1+sum)^(-m) <= p^(-t m n) at top index t, and the region where
        some index drops below -w through per-axis geometric tails."""
        a_tot: Number = 0
        for j, a in enumerate(alphas):
            if not a < c.n:
                raise ParameterError(f"alpha_{j + 1} < n violated: {a} >= {c.n}")
            a_tot = a_tot + a
        if not a_tot > 0:
            raise ParameterError(f"alpha = sum(alpha_j) must be positive, got {a_tot}")
        inv = [1.0 / (1.0 - c.pow(a - c.n)) for a in alphas]
        big_r = 0.0
        for j in range(m):
            prod = 1.0
            for i in range(m):
                if i != j:
                    prod *= inv[i]
            big_r += prod
        if m == 1:
            big_r = 1.0
        t_high = big_r * c.pow(-(w + 1) * a_tot) / (1.0 - c.pow(-a_tot))
        t_low = 0.0
        for j, a in enumerate(alphas):
            low_j = c.pow(-(w + 1) * (c.n - a)) / (1.0 - c.pow(a - c.n))
            if m == 1:
                m_j = 1.0
            else:
                b_j = (m - 1) * c.n - (a_tot - a)
                rprime = 0.0
                for i in range(m):
                    if i == j:
                        continue
                    prod = 1.0
                    for i2 in range(m):
                        if i2 not in (i, j):
                            prod *= inv[i2]
                    rprime += prod
                inner = 1.0 / (1.0 - c.pow(-b_j))
                inner += math.fsum(c.pow(t * (b_j - m * c.n)) for t in range(1, w + 1))
                m_j = rprime * inner
            t_low += low_j * m_j
        return c.sphere_unit ** m * (t_high + t_low)

    return KernelSpec(m=m, eval=_eval, truncation=trunc, support_hi=None,
                      tail_bound=_tail, grid_eval=_grid, kmax=1.0, name="Hilbert")


# ---------------------------------------------------------------------------
# kernel-summation engine


def _axis_ranges(K: KernelSpec, w: int) -> List[np.ndarray]:
    hi = K.support_hi if K.support_hi is not None else w
    return [np.arange(-w, min(hi, w) + 1) for _ in range(K.m)]


def _kernel_grid(K: KernelSpec, axes: Sequence[np.ndarray]) -> np.ndarray:
    if K.grid_eval is not None:
        return K.grid_eval(axes)
    shape = tuple(len(a) for a in axes)
    out = np.empty(shape)
    for idx in np.ndindex(shape):
        out[idx] = K.eval(tuple(int(axes[d][i]) for d, i in enumerate(idx)))
    return out


def kernel_constant(K: KernelSpec, alphas: AlphaVector, ctx: PadicContext,
                    window: Optional[int] = None) -> TailSum:
    """Normalization constant: integral of K(y) prod |y_j|^(-alpha_j).

    Evaluated as (1-p^-n)^m sum_k K(k) prod p^(k_j(n - alpha_j)) over the
    truncation window; the kernel's tail_bound certifies the remainder.
    Raises if the kernel cannot certify convergence, or if the bound
    exceeds the tolerance at the policy window.
    """
    if alphas.m != K.m:
        raise ParameterError(f"kernel expects {K.m} exponents, got {alphas.m}")
    if K.tail_bound is None:
        raise DivergenceError(
            f"kernel '{K.name}' has no tail bound; finiteness of the "
            "normalization integral cannot be checked")
    w = window if window is not None else K.truncation.window
    tail = K.tail_bound(alphas.alphas, ctx, w)
    if not math.isfinite(tail):
        raise DivergenceError(f"normalization integral of '{K.name}' diverges")
    if tail > K.truncation.tol and window is None:
        raise DivergenceError(
            f"tail bound {tail:g} exceeds tolerance {K.truncation.tol:g} "
            f"at window {w} for kernel '{K.name}'")
    axes = _axis_ranges(K, w)
    kgrid = _kernel_grid(K, axes)
    total = kgrid
    for d, (axis, a) in enumerate(zip(axes, alphas.alphas)):
        weight = float(ctx.p) ** (axis.astype(float) * float(ctx.n - a))
        shape = [1] * K.m
        shape[d] = len(axis)
        total = total * weight.reshape(shape)
    value = ctx.sphere_unit ** K.m * float(total.sum())
    return TailSum(value, error_bound=tail)


def _collapse_majorant(terms: List[Tuple[float, Number]], edge: int,
                       direction: int, ctx: PadicContext) -> Optional[Tuple[float, Number]]:
    """One-term bound C p^(gamma r) valid past `edge` in `direction` for a
    positive combination sum C_i p^(gamma r_i)."""
    terms = [(c, e) for c, e in terms if c > 0]
    if not terms:
        return None
    if direction > 0:
        r_star = max(e for _, e in terms)
    else:
        r_star = min(e for _, e in terms)
    coeff = math.fsum(c * ctx.pow(edge * (e - r_star)) for c, e in terms)
    return (coeff, r_star)


def _product_majorant(axis_terms: List[Optional[List[Tuple[float, Number]]]],
                      kmax: float, edge: int, direction: int,
                      ctx: PadicContext) -> Optional[Tuple[float, Number]]:
    """Collapse prod_j (sum_i C_i p^(gamma r_i)) * kmax to one term."""
    if any(t is None for t in axis_terms) or not math.isfinite(kmax):
        return None if any(t is None for t in axis_terms) else (POS_INF, 0)
    expanded: List[Tuple[float, Number]] = []
    for combo in itertools.product(*axis_terms):
        coeff = kmax
        expo: Number = 0
        for c, e in combo:
            coeff *= c
            expo = expo + e
        expanded.append((coeff, expo))
    return _collapse_majorant(expanded, edge, direction, ctx)


def kernel_operator(K: KernelSpec, fs: Sequence[ShellFunction], ctx: PadicContext,
                    gamma_window: Optional[Tuple[int, int]] = None) -> ShellImage:
    """T^p(f_1,...,f_m)(x) = integral of K(y) prod f_j(|x|^(-1) y_j):
    on shell gamma the sum over k of K(k) prod f_j(gamma + k_j) mu(S_{k_j}).

    The output is a windowed evaluator.  Truncation errors use the
    separable bound: each axis sum over all k <= support_hi equals
    p^(-gamma n) times the ball integral of f_j up to gamma + support_hi,
    so kmax times the mass difference bounds the omitted configurations.
    """
    m = K.m
    n = ctx.n
    if len(fs) != m:
        raise ParameterError(f"kernel expects {m} functions, got {len(fs)}")
    w = K.truncation.window
    axes = _axis_ranges(K, w)
    kgrid = _kernel_grid(K, axes)
    s_hi = K.support_hi
    cum = [_cumulative_pieces(f, ctx) for f in fs]

    def axis_full(j: int, gamma: int) -> float:
        # sum over all k <= s_hi of f_j(gamma+k) mu(S_k) = p^(-gamma n) F_j(gamma + s_hi)
        if s_hi is None:
            total = integrate_radial(fs[j], 0, ctx)
            if not total.converged:
                return POS_INF
            return ctx.pow(-gamma * n) * total.value
        return ctx.pow(-gamma * n) * _cumulative_value(cum[j], gamma + s_hi, ctx)

    if gamma_window is None:
        finite = [f for f in fs if f.is_finite and not f.is_zero]
        if len(finite) == len(fs) and finite:
            lo_edge = max(int(f.support_bounds()[0]) for f in finite) - (s_hi or 0)
            hi_edge = max(int(f.support_bounds()[1]) for f in finite) + w
            glo, ghi = lo_edge, min(hi_edge, lo_edge + 8 * w)
        else:
            glo, ghi = -w, w
    else:
        glo, ghi = gamma_window
    values: List[float] = []
    errors: List[float] = []
    for gamma in range(glo, ghi + 1):
        acc = kgrid
        win_prod = 1.0
        full_prod = 1.0
        for d, (axis, f) in enumerate(zip(axes, fs)):
            fv = np.array([f.value(gamma + int(k), ctx) for k in axis])
            mu = float(ctx.p) ** (axis.astype(float) * n) * ctx.sphere_unit
            vec = fv * mu
            win_prod *= float(vec.sum())
            full_prod *= axis_full(d, gamma)
            shape = [1] * m
            shape[d] = len(axis)
            acc = acc * vec.reshape(shape)
        values.append(float(acc.sum()))
        err = K.kmax * max(0.0, full_prod - win_prod)
        errors.append(err if math.isfinite(err) else POS_INF)

    # one-term tail majorants: per axis the sum is p^(-gamma n) F_j(gamma+s_hi),
    # whose asymptotic form comes from the cumulative pieces at the edges
    def axis_terms(j: int, direction: int) -> Optional[List[Tuple[float, Number]]]:
        if s_hi is None:
            total = integrate_radial(fs[j], 0, ctx)
            if not total.converged:
                return None
            return [(total.value, -n)] if total.value > 0 else []
        probe = (ghi + 1 + s_hi) if direction > 0 else (glo - 1 + s_hi)
        terms = _piece_terms(cum[j], probe)
        return [(c * ctx.pow(s_hi * e), e - n) for c, e in terms if c > 0]

    def side(direction: int) -> Optional[Tuple[float, Number]]:
        per_axis = [axis_terms(j, direction) for j in range(m)]
        if any(t == [] for t in per_axis):
            return None  # an axis is identically zero past the edge
        edge = ghi + 1 if direction > 0 else glo - 1
        return _product_majorant(per_axis, K.kmax, edge, direction, ctx)

    return ShellImage(glo, ghi, tuple(values), tuple(errors),
                      tail_lo=side(-1), tail_hi=side(+1))


def hausdorff_operator(phi: KernelSpec, fs: Sequence[ShellFunction],
                       ctx: PadicContext,
                       gamma_window: Optional[Tuple[int, int]] = None) -> ShellImage:
    """Hausdorff operator with radial multiplier phi.

    After the change of variables the value on shell gamma is
    sum_k phi(k) prod_j (1 - p^(-n)) f_j(gamma + k_j): the |y_j|^(-n)
    density cancels the shell measures.  Divergent plain tails (an f_j
    whose shell values are not summable where phi reaches) raise.
    """
    m = phi.m
    if len(fs) != m:
        raise ParameterError(f"multiplier expects {m} functions, got {len(fs)}")
    w = phi.truncation.window
    s_hi = phi.support_hi if phi.support_hi is not None else w
    d = phi.decay_lo
    axes = [np.arange(-w, min(s_hi, w) + 1) for _ in range(m)]
    pgrid = _kernel_grid(phi, axes)

    def weighted_cumulative(j: int, hi_shell: Number) -> TailSum:
        # (1-p^-n) * sum over shells s <= hi_shell of f_j(s) p^(s d)
        total = 0.0
        for seg in fs[j].segments:
            if seg.lo > hi_shell:
                break
            top = seg.hi if seg.hi <= hi_shell else math.floor(hi_shell)
            for c, e in seg.terms:
                g = geom_sum(e + d, seg.lo, top, ctx)
                if not g.converged:
                    return TailSum(POS_INF, converged=False, detail=g.detail)
                total += c * g.value
        return TailSum(ctx.sphere_unit * total)

    if gamma_window is None:
        finite = [f for f in fs if f.is_finite and not f.is_zero]
        if len(finite) == len(fs) and finite:
            glo = max(int(f.support_bounds()[0]) for f in finite) - max(s_hi, 0)
            ghi = max(int(f.support_bounds()[1]) for f in finite) + w
            ghi = min(ghi, glo + 8 * w)
        else:
            glo, ghi = -w, w
    else:
        glo, ghi = gamma_window
    values: List[float] = []
    errors: List[float] = []
    for gamma in range(glo, ghi + 1):
        acc = pgrid
        win_env = 1.0
        full_env = 1.0
        for dd, (axis, f) in enumerate(zip(axes, fs)):
            vec = np.array([ctx.sphere_unit * f.value(gamma + int(k), ctx) for k in axis])
            env = np.array([ctx.pow(int(k) * d) for k in axis])
            win_env *= float((vec * env).sum())
            full = weighted_cumulative(dd, gamma + s_hi)
            if not full.converged:
                raise DivergenceError(
                    f"Hausdorff sum diverges: f_{dd + 1} against the envelope "
                    f"p^(k*{d}) is not summable up to shell {gamma + s_hi} "
                    f"({full.detail})")
            full_env *= ctx.pow(-gamma * d) * full.value
            shape = [1] * m
            shape[dd] = len(axis)
            acc = acc * vec.reshape(shape)
        values.append(float(acc.sum()))
        errors.append(phi.kmax * max(0.0, full_env - win_env))

    def axis_terms(j: int, direction: int) -> Optional[List[Tuple[float, Number]]]:
        # asymptotic form of p^(-gamma d)(1-p^-n) sum_{s <= gamma+s_hi} f_j(s) p^(s d)
        f = fs[j]
        if not f.segments:
            return []
        if direction < 0:
            first = f.segments[0]
            if first.lo != NEG_INF:
                return []  # zero below the support
            out = []
            for c, e in first.terms:
                if not e + d > 0:
                    return None
                out.append((ctx.sphere_unit * c * ctx.pow(s_hi * (e + d))
                            / (1.0 - ctx.pow(-(e + d))), e))
            return out
        # direction > 0: bounded part decaying like p^(-gamma d) plus any
        # last-segment terms whose weighted sums keep growing
        last = f.segments[-1]
        terms: List[Tuple[float, Number]] = []
        prefix = weighted_cumulative(j, last.lo - 1) if last.lo != NEG_INF \
            else TailSum(0.0)
        if not prefix.converged:
            return None
        const = prefix.value
        if last.hi == POS_INF:
            for c, e in last.terms:
                if e + d > 0:
                    terms.append((ctx.sphere_unit * c * ctx.pow(s_hi * (e + d))
                                  / (1.0 - ctx.pow(-(e + d))), e))
                else:
                    g = geom_sum(e + d, last.lo, POS_INF, ctx)
                    if not g.converged:
                        return None
                    const += ctx.sphere_unit * c * g.value
        else:
            tot = weighted_cumulative(j, last.hi)
            if not tot.converged:
                return None
            const = tot.value
        if const > 0:
            terms.append((const, -d))
        return terms

    def side(direction: int) -> Optional[Tuple[float, Number]]:
        per_axis = [axis_terms(j, direction) for j in range(m)]
        if any(t == [] for t in per_axis):
            return None
        edge = ghi + 1 if direction > 0 else glo - 1
        return _product_majorant(per_axis, phi.kmax, edge, direction, ctx)

    return ShellImage(glo, ghi, tuple(values), tuple(errors),
                      tail_lo=side(-1), tail_hi=side(+1))


def hausdorff_constant(phi: KernelSpec, alphas: AlphaVector, ctx: PadicContext,
                       window: Optional[int] = None) -> TailSum:
    """Sharp-constant integral of the Hausdorff operator:
    integral of phi(y) prod |y_j|^(-n - alpha_j), evaluated with tails.

    Equals the kernel normalization of phi with every exponent shifted by
    n, so the indicator multiplier needs alpha_j < 0 to converge.
    """
    shifted = AlphaVector(tuple(a + ctx.n for a in alphas.alphas))
    return kernel_constant(phi, shifted, ctx, window=window)


def multilinear_hilbert(fs: Sequence[ShellFunction], ctx: PadicContext,
                        truncation: Optional[TruncationPolicy] = None,
                        gamma_window: Optional[Tuple[int, int]] = None) -> ShellImage:
    """m-linear Hilbert image: the m-fold shell sum of
    prod f_j(k_j) mu(S_{k_j}) / (p^(gamma n) + sum p^(k_j n))^m.

    Exact (zero error) for finitely supported inputs once the window
    covers their support; otherwise the omitted mass is bounded through
    the kernel majorant min(1, p^(-gamma n m)).
    """
    if not fs:
        raise ParameterError("multilinear Hilbert needs at least one function")
    m = len(fs)
    trunc = truncation or TruncationPolicy()
    if m > _M_SOFT_CAP:
        warnings.warn(f"m = {m}: m-fold sums scale as window^m", stacklevel=2)
    w = trunc.window
    axis_ranges = []
    exact = True
    for f in fs:
        if f.is_zero:
            lo_j, hi_j = 0, 0
        elif f.is_finite:
            lo_j, hi_j = int(f.support_bounds()[0]), int(f.support_bounds()[1])
            if lo_j < -w or hi_j > w:
                lo_j, hi_j = max(lo_j, -w), min(hi_j, w)
                exact = False
        else:
            lo_j, hi_j = -w, w
            exact = False
        axis_ranges.append(np.arange(lo_j, hi_j + 1))
    vecs = []
    masses_win = []
    masses_full = []
    for f, axis in zip(fs, axis_ranges):
        fv = np.array([f.value(int(k), ctx) for k in axis])
        mu = float(ctx.p) ** (axis.astype(float) * ctx.n) * ctx.sphere_unit
        vecs.append(fv * mu)
        masses_win.append(float((fv * mu).sum()))
        total = integrate_radial(f, 0, ctx)
        masses_full.append(total.value if total.converged else POS_INF)
    powers = [float(ctx.p) ** (axis.astype(float) * ctx.n) for axis in axis_ranges]
    ssum = np.zeros(tuple(len(a) for a in axis_ranges))
    prod = np.ones_like(ssum)
    for d, (pw, vec) in enumerate(zip(powers, vecs)):
        shape = [1] * m
        shape[d] = len(pw)
        ssum = ssum + pw.reshape(shape)
        prod = prod * vec.reshape(shape)
    if gamma_window is None:
        if all(f.is_finite for f in fs) and any(not f.is_zero for f in fs):
            centers = [b for f in fs if not f.is_zero for b in map(int, f.support_bounds())]
            glo, ghi = min(centers) - 32, max(centers) + 32
        else:
            glo, ghi = -w, w
    else:
        glo, ghi = gamma_window
    mass_gap = max(0.0, math.prod(masses_full) - math.prod(masses_win))
    values = []
    errors = []
    for gamma in range(glo, ghi + 1):
        denom = (ctx.pow(gamma * ctx.n) + ssum) ** m
        values.append(float((prod / denom).sum()))
        if exact:
            errors.append(0.0)
        else:
            errors.append(min(1.0, ctx.pow(-gamma * ctx.n * m)) * mass_gap)
    with np.errstate(divide="ignore"):
        c_minus = float((prod / ssum ** m).sum()) + mass_gap
    tail_hi_coeff = math.prod(masses_full)
    tail_hi = (tail_hi_coeff, -m * ctx.n) if math.isfinite(tail_hi_coeff) else None
    tail_lo = (c_minus, 0) if math.isfinite(c_minus) else None
    return ShellImage(glo, ghi, tuple(values), tuple(errors),
                      tail_lo=tail_lo, tail_hi=tail_hi)
