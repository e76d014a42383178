import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localfourier import series
from localfourier.errors import (
    BadValuation,
    DivisionByZero,
    InfiniteTail,
    PrecisionUnderflow,
)
from localfourier.field import build_field
from localfourier.series import INF, LaurentSeries

CTX = build_field(7, 1)


def poly(terms, prec=INF):
    return series.from_terms(CTX, terms, prec)


small_series = st.dictionaries(
    st.integers(-4, 6), st.integers(1, 6), max_size=5
).map(poly)


def test_constructors():
    assert series.zero(CTX).is_zero
    assert series.one(CTX).coeff(0) == 1
    m = series.monomial(CTX, 3, -2)
    assert m.val == -2 and m.coeff(-2) == 3 and m.is_exact


def test_coeff_outside_window_raises():
    f = poly({0: 1}, prec=4)
    assert f.coeff(3) == 0
    with pytest.raises(PrecisionUnderflow):
        f.coeff(4)


def test_terms_and_truncate():
    f = poly({-1: 2, 3: 5})
    assert f.terms() == {-1: 2, 3: 5}
    g = f.truncate(2)
    assert g.prec == 2 and g.terms() == {-1: 2}


def test_add_tracks_min_precision():
    f = poly({0: 1}, prec=3)
    g = poly({5: 1})  # exact
    assert (f + g).prec == 3
    assert (f + g).coeff(0) == 1


def test_mul_precision_window():
    f = poly({-1: 1}, prec=2)
    g = poly({1: 3}, prec=5)
    h = f * g
    assert h.coeff(0) == 3
    # window limited by val(g) + prec(f) = 3
    assert h.prec == 3


@settings(max_examples=50, deadline=None)
@given(small_series, small_series)
def test_mul_commutes(f, g):
    assert series.agree(f * g, g * f)


@settings(max_examples=50, deadline=None)
@given(small_series, small_series)
def test_derive_leibniz(f, g):
    lhs = series.derive(f * g)
    rhs = series.derive(f) * g + f * series.derive(g)
    assert series.agree(lhs, rhs)


def test_scale_and_shift():
    f = poly({1: 2})
    assert f.scale(3).coeff(1) == 6
    assert f.shift(4).val == 5


def test_invert_unit_window():
    f = poly({0: 2, 1: 3, 4: 1}).truncate(9)
    g = series.invert(f)
    assert series.agree(f * g, series.one(CTX), upto=9)


def test_invert_multiterm_exact_needs_truncation():
    f = poly({-2: 1, 0: 5})
    with pytest.raises(PrecisionUnderflow, match="truncate"):
        series.invert(f)
    g = series.invert(f.truncate(6))
    assert series.agree(f * g, series.one(CTX), upto=6 + f.val)


def test_invert_monomial_stays_exact():
    g = series.invert(series.monomial(CTX, 3, -4))
    assert g.is_exact and g.terms() == {4: CTX.inv(3)}


def test_invert_zero():
    with pytest.raises(DivisionByZero):
        series.invert(series.zero(CTX, prec=5))


def test_compose_and_reversion_round_trip():
    g = poly({1: 3, 2: 1, 5: 2}).truncate(8)
    w = series.reversion(g)
    assert series.agree(series.compose(g, w), series.monomial(CTX, 1, 1), upto=8)
    assert series.agree(series.compose(w, g), series.monomial(CTX, 1, 1), upto=8)


def test_reversion_needs_val_one():
    with pytest.raises(BadValuation):
        series.reversion(poly({2: 1}))


def test_compose_needs_positive_valuation():
    with pytest.raises(BadValuation):
        series.compose(poly({1: 1}), poly({0: 1, 1: 1}))


def test_compose_handles_polar_heads():
    # f has a pole: f(g) must still make sense through 1/g
    f = poly({-2: 3, 1: 1})
    g = poly({1: 2, 3: 4}).truncate(7)
    h = series.compose(f, g)
    direct = series.invert(g * g).scale(3) + g
    assert series.agree(h, direct)


def test_nth_root_series_round_trip():
    f = poly({-3: 6, -2: 1, 0: 4}).truncate(5)
    r = series.nth_root_series(f, 3)
    assert r.val == -1
    assert series.agree(r**3, f)
    # canonical leading root matches the field's canonical scalar root
    assert r.coeff(-1) == CTX.nth_root(6, 3)


def test_nth_root_rejects_bad_index():
    f = poly({-3: 6})
    with pytest.raises(ValueError):
        series.nth_root_series(f, 7)  # p | n
    with pytest.raises(BadValuation):
        series.nth_root_series(poly({-2: 1}), 3)


def test_newton_ops_reject_untruncated_multiterm_input():
    # exact inputs with several terms have no finite working window
    f = poly({1: 1, 2: 1})
    with pytest.raises(PrecisionUnderflow, match="truncate"):
        series.reversion(f)
    with pytest.raises(PrecisionUnderflow, match="truncate"):
        series.nth_root_series(poly({-3: 1, -1: 2}), 3)


def test_substitute_power():
    f = poly({-1: 2, 2: 3}, prec=4)
    g = series.substitute_power(f, 3)
    assert g.terms() == {-3: 2, 6: 3}
    assert g.prec == 12


def test_invert_variable():
    f = poly({-2: 1, 3: 4})
    g = series.invert_variable(f)
    assert g.terms() == {2: 1, -3: 4}
    with pytest.raises(InfiniteTail):
        series.invert_variable(poly({0: 1}, prec=5))


def test_polar_part():
    f = poly({-3: 1, -1: 2, 0: 5, 2: 1}, prec=4)
    assert series.polar_part(f).terms() == {-3: 1, -1: 2}
    with pytest.raises(PrecisionUnderflow):
        series.polar_part(poly({-1: 1}, prec=-1))


def test_agree_windows():
    f = poly({0: 1, 3: 2}, prec=5)
    g = poly({0: 1}, prec=2)
    assert series.agree(f, g)  # joint window is prec 2
    assert not series.agree(f, g + series.monomial(CTX, 1, 1))


def test_json_round_trip():
    f = poly({-1: 3, 2: 6}, prec=7)
    g = series.series_from_json(CTX, f.to_json())
    assert g.val == f.val and g.prec == f.prec and g.terms() == f.terms()
