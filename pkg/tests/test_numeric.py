import cmath
import math

import numpy as np
import pytest

from localfourier import numeric
from localfourier.errors import DlogOfZero, OrderNotAvailable, TrivialCharacter
from localfourier.field import build_field
from localfourier.hyper import HypSpec
from localfourier.numeric import CharEval, TraceTable, ft_trace, gauss_sum
from localfourier.symbol import TRIVIAL_CHAR, tame_char


@pytest.fixture(scope="module")
def ev7():
    return CharEval(build_field(7, 1))


@pytest.fixture(scope="module")
def ev9():
    return CharEval(build_field(3, 2))


def test_psi_is_additive(ev9):
    ctx = ev9.ctx
    for x in range(ctx.q):
        for y in range(ctx.q):
            got = ev9.psi_table[ctx.add(x, y)]
            assert abs(got - ev9.psi_table[x] * ev9.psi_table[y]) < 1e-12


def test_psi_orthogonality(ev7, ev9):
    assert abs(ev7.psi_table.sum()) < 1e-12
    assert abs(ev9.psi_table.sum()) < 1e-12


def test_conjugate_evaluator(ev7):
    bar = ev7.conj()
    assert np.allclose(np.conj(ev7.psi_table), bar.psi_table)
    assert bar.conj() is ev7


def test_mult_table_is_multiplicative(ev7):
    chi = tame_char(3, 1)
    tab = ev7.mult_table(chi)
    assert tab[0] == 0
    ctx = ev7.ctx
    for x in range(1, 7):
        for y in range(1, 7):
            assert abs(tab[ctx.mul(x, y)] - tab[x] * tab[y]) < 1e-12


def test_mult_table_needs_compatible_order(ev7):
    with pytest.raises(OrderNotAvailable):
        ev7.mult_table(tame_char(4, 1))


def test_gauss_sum_magnitude_and_known_value(ev7):
    chi = tame_char(2, 1)
    g = gauss_sum(ev7, chi)
    assert abs(abs(g) - math.sqrt(7)) < 1e-12
    # p = 3 mod 4, so the quadratic Gauss sum is i*sqrt(p)
    assert abs(g - 1j * math.sqrt(7)) < 1e-12
    with pytest.raises(TrivialCharacter):
        gauss_sum(ev7, TRIVIAL_CHAR)


def test_kloosterman_matches_generic_sum(ev7):
    ctx = ev7.ctx
    for n in (2, 3):
        lams = [TRIVIAL_CHAR] * n
        spec = HypSpec(lams, [])
        for t in range(1, 7):
            kl = numeric.kloosterman(ev7, t, lams)
            hs = numeric.hyp_sum(ev7, t, spec)
            assert abs(kl - hs) < 1e-12
            # conj(Kl_n(t)) = Kl_n((-1)^n t); real for even n
            mirror = t if n % 2 == 0 else ctx.neg(t)
            assert abs(kl.conjugate() - numeric.kloosterman(ev7, mirror, lams)) < 1e-12


def test_kloosterman_guards(ev7):
    with pytest.raises(DlogOfZero):
        numeric.kloosterman(ev7, 0, [TRIVIAL_CHAR] * 2)
    with pytest.raises(ValueError):
        numeric.kloosterman(ev7, 1, [])


def test_weil_bound_small_field(ev7):
    pair = [TRIVIAL_CHAR] * 2
    for t in range(1, 7):
        assert abs(numeric.kloosterman(ev7, t, pair)) <= 2 * math.sqrt(7) + 1e-9


def test_hyp_sum_with_characters(ev7):
    # hand-rolled double loop as an oracle for n=1, m=1
    lam, rho = tame_char(2, 1), tame_char(3, 1)
    spec = HypSpec([lam], [rho])
    ctx = ev7.ctx
    ltab, rtab = ev7.mult_table(lam), ev7.mult_table(rho)
    for t in range(1, 7):
        want = 0
        for y in range(1, 7):
            x = ctx.mul(t, y)
            want += ev7.psi_table[ctx.sub(x, y)] * ltab[x] * np.conj(rtab[y])
        got = numeric.hyp_sum(ev7, t, spec)
        assert abs(got - want) < 1e-10


def test_trace_table_validation():
    ctx = build_field(7, 1)
    with pytest.raises(ValueError):
        TraceTable(ctx, np.zeros(6, dtype=complex))
    with pytest.raises(ValueError):
        TraceTable(ctx, np.array([np.nan] * 7, dtype=complex))


def test_ft_trace_linearity(ev7):
    rng = np.random.default_rng(5)
    a = rng.normal(size=7) + 1j * rng.normal(size=7)
    b = rng.normal(size=7) + 1j * rng.normal(size=7)
    ctx = ev7.ctx
    fa = ft_trace(ev7, TraceTable(ctx, a)).values
    fb = ft_trace(ev7, TraceTable(ctx, b)).values
    fab = ft_trace(ev7, TraceTable(ctx, a + 2 * b)).values
    assert np.allclose(fab, fa + 2 * fb, atol=1e-12)


def test_ft_trace_double_is_negation(ev7):
    rng = np.random.default_rng(6)
    vals = rng.normal(size=7) + 1j * rng.normal(size=7)
    twice = ft_trace(ev7, ft_trace(ev7, TraceTable(ev7.ctx, vals))).values
    ctx = ev7.ctx
    expect = np.array([ctx.q * vals[ctx.neg(x)] for x in range(ctx.q)])
    assert np.allclose(twice, expect, atol=1e-9)


def test_trace_recursion_signed_identity(ev7):
    lam = tame_char(2, 1)
    for spec in (
        HypSpec([TRIVIAL_CHAR, TRIVIAL_CHAR], []),
        HypSpec([lam], [tame_char(3, 1)]),
        HypSpec([lam, TRIVIAL_CHAR], [tame_char(6, 1)]),
    ):
        table = numeric.hyp_trace_recursive(ev7, spec)
        sign = (-1) ** (spec.n + spec.m)
        for t in range(1, 7):
            want = sign * numeric.hyp_sum(ev7, t, spec)
            assert abs(table[t] - want) < 1e-10


def test_trace_recursion_extension_field(ev9):
    spec = HypSpec([tame_char(4, 1)], [TRIVIAL_CHAR, tame_char(2, 1)])
    table = numeric.hyp_trace_recursive(ev9, spec)
    for t in range(1, 9):
        want = -numeric.hyp_sum(ev9, t, spec)
        assert abs(table[t] - want) < 1e-10


def test_gauss_sum_conjugation_symmetry(ev7):
    # g(chi-bar, psi-bar) = conj(g(chi, psi))
    chi = tame_char(3, 1)
    g = gauss_sum(ev7, chi)
    gbar = gauss_sum(ev7.conj(), chi)
    # chi itself is not conjugated here, so compose with chi.inverse()
    ginv = gauss_sum(ev7.conj(), chi.inverse())
    assert abs(ginv - np.conj(g)) < 1e-12
    assert abs(abs(gbar) - math.sqrt(7)) < 1e-12
