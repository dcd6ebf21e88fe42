"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints a [PASS]/[FAIL] line (run pytest with -s or -v to see
them); the assertions carry the same tolerances.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from padicsharp import (AlphaVector, ClaimParams, HardyL1WeakParams,
                        HardyLpWeakParams, LebesgueParams, PadicContext,
                        ShellFunction, SupParams, TruncationPolicy, WeakParams,
                        branch_suprema, extremal_hardy_lp, extremal_unit_ball,
                        extremal_weighted, fractional_hardy, geom_sum,
                        hardy_l1_weak_constant, hardy_lp_weak_constant,
                        hardy_region_sum, hardy_sup_constant,
                        hausdorff_constant, hausdorff_indicator_constant,
                        hausdorff_operator, hilbert_bound_region_sum,
                        hilbert_sup_bound, hilbert_sup_series,
                        indicator_max_ball_kernel, lp_norm, multilinear_hardy,
                        padic_norm, padic_valuation, random_upper_bound_test,
                        sup_norm, weak_norm)

NEG_INF = float("-inf")
POS_INF = float("inf")


def report(name: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))


def test_criterion_1_endpoint_sharpness_grid():
    """Endpoint Hardy bound: extremal weak/strong ratio equals the closed
    form within 1e-9 on the full (p, n, gamma, alpha) grid, under 1 s."""
    started = time.perf_counter()
    worst = 0.0
    count = 0
    for p in (2, 3, 5):
        for n in (1, 2):
            ctx = PadicContext(p, n)
            for gamma in (0, Fraction(1, 2), 1):
                for alpha in (Fraction(n, 4), Fraction(n, 2), Fraction(3 * n, 4)):
                    q = Fraction(n + gamma) / Fraction(n - alpha)
                    f0 = extremal_unit_ball(ctx)
                    image = fractional_hardy(f0, alpha, ctx)
                    num = weak_norm(image, WeakParams(q, gamma), ctx).expect()
                    den = lp_norm(f0, LebesgueParams(1, 0), ctx).expect()
                    closed = hardy_l1_weak_constant(
                        HardyL1WeakParams(alpha=alpha, gamma=gamma, ctx=ctx))
                    rel = abs(num / den - closed) / closed
                    worst = max(worst, rel)
                    count += 1
    elapsed = time.perf_counter() - started
    ok = worst <= 1e-9 and elapsed < 1.0
    report("criterion 1 (endpoint sharpness, 54-point grid)", ok,
           f"worst rel err {worst:.3e}, {elapsed * 1000:.0f} ms")
    assert count == 54
    assert worst <= 1e-9
    assert elapsed < 1.0


def test_criterion_2_strong_to_weak_sharpness():
    """p1 > 1 Hardy bound on >= 12 admissible tuples: extremal ratio equals
    the closed form within 1e-9; the two branch suprema agree within 1e-9."""
    worst_ratio = 0.0
    worst_branch = 0.0
    tuples = 0
    for p in (2, 3):
        n = 1
        ctx = PadicContext(p, n)
        for p1 in (2, 3):
            beta = Fraction(n * (p1 - 1), 2)
            for alpha in (0, beta / (2 * (p1 - 1))):
                for gamma in (0, Fraction(1, 2)):
                    spec = HardyLpWeakParams.with_derived_q(p1, beta, gamma,
                                                            alpha, ctx)
                    closed = hardy_lp_weak_constant(spec)
                    f0 = extremal_hardy_lp(beta, p1, ctx)
                    num = weak_norm(fractional_hardy(f0, alpha, ctx),
                                    WeakParams(spec.q, gamma), ctx).expect()
                    den = lp_norm(f0, LebesgueParams(p1, beta), ctx).expect()
                    worst_ratio = max(worst_ratio, abs(num / den - closed) / closed)
                    m1, m2 = branch_suprema(spec)
                    worst_branch = max(worst_branch, abs(m1 - m2) / max(m1, m2))
                    tuples += 1
    ok = tuples >= 12 and worst_ratio <= 1e-9 and worst_branch <= 1e-9
    report("criterion 2 (strong-to-weak sharpness)", ok,
           f"{tuples} tuples, worst ratio err {worst_ratio:.3e}, "
           f"worst branch gap {worst_branch:.3e}")
    assert tuples >= 12
    assert worst_ratio <= 1e-9
    assert worst_branch <= 1e-9


def test_criterion_3_multilinear_hardy_sup():
    """m-linear Hardy sup-norm constant: random admissible exponents, the
    operator ratio and the region-decomposition sum both match the product
    formula within 1e-10, in under 5 s."""
    started = time.perf_counter()
    rng = random.Random(2024)
    worst_ratio = 0.0
    worst_region = 0.0
    for m in (1, 2, 3):
        for _ in range(20):
            ctx = PadicContext(rng.choice((2, 3, 5)), rng.choice((1, 2)))
            alphas = AlphaVector(tuple(
                Fraction(rng.randint(-16, 8 * ctx.n - 1), 8) for _ in range(m)))
            closed = hardy_sup_constant(alphas, ctx)
            fs = [extremal_weighted(a, ctx) for a in alphas.alphas]
            image = multilinear_hardy(fs, ctx)
            num = sup_norm(image, SupParams(alphas.alpha), ctx).expect()
            den = 1.0
            for a, f in zip(alphas.alphas, fs):
                den *= sup_norm(f, SupParams(a), ctx).expect()
            worst_ratio = max(worst_ratio, abs(num / den - closed) / closed)
            region = hardy_region_sum(alphas, ctx)
            worst_region = max(worst_region, abs(region - closed) / closed)
    elapsed = time.perf_counter() - started
    ok = worst_ratio <= 1e-10 and worst_region <= 1e-10 and elapsed < 5.0
    report("criterion 3 (m-linear Hardy sup constant)", ok,
           f"worst ratio err {worst_ratio:.3e}, worst region err "
           f"{worst_region:.3e}, {elapsed:.2f} s")
    assert worst_ratio <= 1e-10
    assert worst_region <= 1e-10
    assert elapsed < 5.0


def test_criterion_4_hilbert_series_and_bound():
    """Hilbert series: monotone in window, tail < 1e-6, series <= bound,
    and the region telescoping reproduces the bound to 1e-12; < 30 s."""
    started = time.perf_counter()
    cases = [
        (PadicContext(2, 1), (Fraction(1, 2),)),
        (PadicContext(3, 1), (Fraction(3, 4),)),
        (PadicContext(2, 1), (Fraction(1, 2), Fraction(1, 2))),
        (PadicContext(3, 2), (Fraction(3, 4), Fraction(1, 2))),
    ]
    ok_all = True
    details = []
    for ctx, raw in cases:
        alphas = AlphaVector(raw)
        trunc = TruncationPolicy(window=64, tol=1e-6)
        values = [hilbert_sup_series(alphas, ctx, truncation=trunc, window=w).value
                  for w in (8, 16, 32, 64)]
        monotone = all(a <= b + 1e-15 for a, b in zip(values, values[1:]))
        series = hilbert_sup_series(alphas, ctx, truncation=trunc)
        bound = hilbert_sup_bound(alphas, ctx)
        region = hilbert_bound_region_sum(alphas, ctx)
        slack = bound - series.value
        tele = abs(region - bound) / bound
        ok = monotone and series.error_bound < 1e-6 and slack >= 0 and tele <= 1e-12
        ok_all = ok_all and ok
        details.append(f"m={alphas.m}: tail {series.error_bound:.1e}, "
                       f"slack {slack:.3g}, tele {tele:.1e}")
        assert monotone
        assert series.error_bound < 1e-6
        assert slack >= 0.0
        assert tele <= 1e-12
    elapsed = time.perf_counter() - started
    report("criterion 4 (Hilbert series vs bound)", ok_all and elapsed < 30.0,
           "; ".join(details) + f"; {elapsed:.2f} s")
    assert elapsed < 30.0


def test_criterion_5_hausdorff_indicator():
    """Hausdorff constant for the product indicator multiplier matches the
    per-axis closed form within 1e-8, and the operator sup ratio on the
    extremal family matches within 1e-6."""
    worst_const = 0.0
    worst_ratio = 0.0
    for ctx in (PadicContext(2, 1), PadicContext(3, 1)):
        for raw in ((Fraction(-1, 2),), (-1,), (Fraction(-1, 2), -1)):
            alphas = AlphaVector(raw)
            phi = indicator_max_ball_kernel(alphas.m, ctx,
                                            TruncationPolicy(window=64, tol=1e-6))
            closed = hausdorff_indicator_constant(alphas, ctx)
            numeric = hausdorff_constant(phi, alphas, ctx)
            worst_const = max(worst_const, abs(numeric.value - closed) / closed)
            fs = [extremal_weighted(a, ctx) for a in alphas.alphas]
            image = hausdorff_operator(phi, fs, ctx)
            num = sup_norm(image, SupParams(alphas.alpha), ctx).expect()
            den = 1.0
            for a, f in zip(alphas.alphas, fs):
                den *= sup_norm(f, SupParams(a), ctx).expect()
            worst_ratio = max(worst_ratio, abs(num / den - closed) / closed)
    ok = worst_const <= 1e-8 and worst_ratio <= 1e-6
    report("criterion 5 (Hausdorff indicator constant)", ok,
           f"worst constant err {worst_const:.3e}, worst sup-ratio err "
           f"{worst_ratio:.3e}")
    assert worst_const <= 1e-8
    assert worst_ratio <= 1e-6


def test_criterion_6_random_upper_bounds():
    """100 random finite functions per claim never exceed the closed-form
    constant by more than 1e-9 relative, nor the extremal ratio."""
    all_ok = True
    details = []
    for claim in ("thm21", "thm22", "cor31", "cor32", "cor41"):
        r = random_upper_bound_test(claim, seed=1, count=100)
        assert r.extra["count"] == 100
        assert r.passed, f"{claim}: {len(r.extra['violations'])} violations"
        margin = r.computed_ratio / r.closed_form - 1.0
        extremal = r.extra["extremal_ratio"]
        assert r.computed_ratio <= r.closed_form * (1 + 1e-9)
        assert r.computed_ratio <= extremal * (1 + 1e-9)
        all_ok = all_ok and r.passed
        details.append(f"{claim} max/const-1={margin:+.1e}")
    report("criterion 6 (random upper-bound suite)", all_ok, ", ".join(details))


def test_criterion_7_foundation_suite():
    """Ultrametric axioms on 1000 random rationals (exact), measure
    additivity (exact), geom_sum vs 200-term partial sums (1e-12), and the
    weak norm level-enumeration oracle on <= 12-shell functions."""
    rng = random.Random(77)

    # ultrametric axioms, exact integer valuation arithmetic
    checked = 0
    for _ in range(1000):
        p = rng.choice((2, 3, 5))
        x = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
        y = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
        if x == 0 or y == 0 or x + y == 0:
            continue
        assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)
        nx, ny, ns = padic_norm(x, p), padic_norm(y, p), padic_norm(x + y, p)
        assert ns <= max(nx, ny)
        if nx != ny:
            assert ns == max(nx, ny)
        checked += 1
    assert checked > 900

    # measure additivity: exact rational tail identity
    for p, n in ((2, 1), (3, 2), (5, 1)):
        unit = 1 - Fraction(p) ** (-n)
        for gamma, T in ((0, 5), (3, 2), (-4, 9)):
            ball = Fraction(p) ** (gamma * n)
            partial = sum(unit * Fraction(p) ** (k * n)
                          for k in range(gamma - T, gamma + 1))
            assert ball - partial == Fraction(p) ** ((gamma - T - 1) * n)

    # geom_sum against 200-term partial sums
    worst_geom = 0.0
    for _ in range(100):
        p = rng.choice((2, 3, 5))
        ctx = PadicContext(p, rng.choice((1, 2)))
        expo = Fraction(rng.randint(1, 8), 2)
        hi = rng.randint(-10, 10)
        got = geom_sum(expo, NEG_INF, hi, ctx).expect()
        oracle = math.fsum(float(p) ** (k * float(expo))
                           for k in range(hi, hi - 200, -1))
        worst_geom = max(worst_geom, abs(got - oracle) / oracle)
    assert worst_geom <= 1e-12

    # weak norm vs exhaustive level enumeration on finite functions
    ctx = PadicContext(2, 1)
    worst_weak = 0.0
    for _ in range(60):
        shells = rng.sample(range(-12, 13), rng.randint(1, 12))
        f = ShellFunction.from_shell_values(
            {k: 10 ** rng.uniform(-2, 2) for k in shells}, ctx)
        q, gamma = rng.choice([(1, 0), (2, 0), (2, Fraction(1, 2))])
        got = weak_norm(f, WeakParams(q, gamma), ctx).value
        unitw = 1 - 2.0 ** -ctx.n
        values = {k: f.value(k, ctx) for k in shells}
        best = 0.0
        for v in values.values():
            mu = sum(unitw * 2.0 ** (k * float(ctx.n + gamma))
                     for k, w in values.items() if w >= v)
            best = max(best, v * mu ** (1.0 / float(q)))
        worst_weak = max(worst_weak, abs(got - best) / best)
    assert worst_weak <= 1e-13

    report("criterion 7 (foundation suite)", True,
           f"{checked} rational draws, geom err {worst_geom:.1e}, "
           f"weak-oracle err {worst_weak:.1e}")
