"""Property-based checks of the arithmetic identities and inequalities."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padicsharp import (PadicContext, ShellFunction, LebesgueParams, WeakParams,
                        SupParams, geom_sum, integrate_radial, lp_norm,
                        padic_norm, padic_valuation, sup_norm,
                        superlevel_measure, weak_norm)

NEG_INF = float("-inf")
POS_INF = float("inf")

primes = st.sampled_from([2, 3, 5])
nonzero_rationals = st.builds(
    Fraction,
    st.integers(min_value=-10 ** 6, max_value=10 ** 6).filter(lambda x: x != 0),
    st.integers(min_value=1, max_value=10 ** 6))


@given(primes, nonzero_rationals, nonzero_rationals)
def test_norm_multiplicative(p, x, y):
    assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)


@given(primes, nonzero_rationals, nonzero_rationals)
def test_ultrametric_inequality(p, x, y):
    nx, ny = padic_norm(x, p), padic_norm(y, p)
    ns = padic_norm(x + y, p)
    assert ns <= max(nx, ny)
    if nx != ny:
        assert ns == max(nx, ny)


@given(primes, st.integers(min_value=1, max_value=3),
       st.fractions(min_value=Fraction(1, 8), max_value=3),
       st.integers(min_value=-20, max_value=20))
def test_geom_sum_matches_partial_sums(p, n, expo, hi):
    ctx = PadicContext(p, n)
    got = geom_sum(expo, NEG_INF, hi, ctx)
    # enough terms that the oracle's own truncation sits below 1e-12
    oracle = math.fsum(float(p) ** (k * float(expo))
                       for k in range(hi, hi - 600, -1))
    assert got.converged
    assert got.value == pytest.approx(oracle, rel=1e-12)


finite_functions = st.dictionaries(
    st.integers(min_value=-12, max_value=12),
    st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
    min_size=1, max_size=8)


@given(finite_functions, st.floats(min_value=0.1, max_value=10.0))
def test_norm_homogeneity(values, c):
    ctx = PadicContext(2, 1)
    f = ShellFunction.from_shell_values(values, ctx)
    g = f.scaled(c)
    assert lp_norm(g, LebesgueParams(2, 0), ctx).value == pytest.approx(
        c * lp_norm(f, LebesgueParams(2, 0), ctx).value, rel=1e-12)
    assert weak_norm(g, WeakParams(2, 0), ctx).value == pytest.approx(
        c * weak_norm(f, WeakParams(2, 0), ctx).value, rel=1e-12)
    assert sup_norm(g, SupParams(1), ctx).value == pytest.approx(
        c * sup_norm(f, SupParams(1), ctx).value, rel=1e-12)


@given(finite_functions, st.floats(min_value=0.01, max_value=100.0),
       st.floats(min_value=1.01, max_value=4.0))
def test_superlevel_monotone_nonincreasing(values, lam, factor):
    ctx = PadicContext(2, 1)
    f = ShellFunction.from_shell_values(values, ctx)
    lo = superlevel_measure(f, lam * factor, 0, ctx).value
    hi = superlevel_measure(f, lam, 0, ctx).value
    assert lo <= hi + 1e-15


@given(finite_functions)
def test_integral_dominates_smaller_function(values):
    ctx = PadicContext(2, 1)
    f = ShellFunction.from_shell_values(values, ctx)
    g = ShellFunction.from_shell_values(
        {k: v * 0.5 for k, v in values.items()}, ctx)
    assert integrate_radial(g, 0, ctx).value <= \
        integrate_radial(f, 0, ctx).value * (1 + 1e-12)


@given(finite_functions)
def test_weak_le_strong_same_indices(values):
    ctx = PadicContext(2, 1)
    f = ShellFunction.from_shell_values(values, ctx)
    q, gamma = 2, Fraction(1, 2)
    assert weak_norm(f, WeakParams(q, gamma), ctx).value <= \
        lp_norm(f, LebesgueParams(q, gamma), ctx).value * (1 + 1e-10)
