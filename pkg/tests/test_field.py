import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localfourier.errors import (
    DivisionByZero,
    DlogOfZero,
    NoRootInField,
    NotPrime,
    OrderNotAvailable,
)
from localfourier.field import FieldCtx, build_field, multiplicative_order, suggest_degree


def test_prime_field_constants():
    ctx = build_field(3)
    assert (ctx.p, ctx.k, ctx.q) == (3, 1, 3)
    assert ctx.gen == 2
    assert build_field(7).gen == 3


def test_gf9_canonical_choices(gf9):
    # least irreducible monic x^2 + 1 over GF(3), then the least generator
    assert gf9.modulus == (1, 0, 1)
    assert gf9.element_order(gf9.gen) == 8
    assert gf9.gen == 4


def test_build_field_is_cached():
    assert build_field(7, 2) is build_field(7, 2)


def test_not_prime():
    with pytest.raises(NotPrime):
        build_field(6)


def test_coords_round_trip(gf49):
    for x in range(gf49.q):
        assert gf49.from_coords(gf49.coords(x)) == x


def test_from_int_reduces_mod_p(gf7):
    assert gf7.from_int(10) == 3
    assert gf7.from_int(-1) == 6
    ctx = build_field(5, 3)
    # constants embed as themselves regardless of the extension degree
    assert ctx.from_int(4) == 4
    assert ctx.coords(4) == (4, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 48), st.integers(0, 48), st.integers(0, 48))
def test_ring_laws(x, y, z):
    ctx = build_field(7, 2)
    assert ctx.add(x, y) == ctx.add(y, x)
    assert ctx.mul(x, y) == ctx.mul(y, x)
    assert ctx.add(ctx.add(x, y), z) == ctx.add(x, ctx.add(y, z))
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
    assert ctx.sub(x, y) == ctx.add(x, ctx.neg(y))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 48))
def test_inverse_and_dlog(x):
    ctx = build_field(7, 2)
    assert ctx.mul(x, ctx.inv(x)) == 1
    assert ctx.pow(ctx.gen, ctx.dlog(x)) == x


def test_division_by_zero(gf9):
    with pytest.raises(DivisionByZero):
        gf9.inv(0)
    with pytest.raises(DlogOfZero):
        gf9.dlog(0)


def test_pow_negative_exponent(gf7):
    assert gf7.pow(3, -1) == gf7.inv(3)
    assert gf7.pow(0, 0) == 1


def test_frobenius_and_pth_root(gf9):
    for x in range(gf9.q):
        assert gf9.pth_root(gf9.pow(x, 3)) == x


def test_nth_root_canonical_least(gf7):
    # both 2 and 5 square to 4; the canonical root is the smaller dlog
    r = gf7.nth_root(4, 2)
    assert gf7.pow(r, 2) == 4
    assert r == min(
        (x for x in range(1, 7) if gf7.pow(x, 2) == 4), key=gf7.dlog
    )


def test_nth_root_reports_missing_orders(gf7):
    # 5 generates the full group mod cubes; its cube root needs mu_18
    with pytest.raises(NoRootInField) as ei:
        gf7.nth_root(5, 3)
    assert ei.value.required_extra_orders == frozenset({18})
    big = build_field(7, suggest_degree(7, {18}))
    y = big.nth_root(big.from_int(5), 3)
    assert big.pow(y, 3) == big.from_int(5)


def test_root_of_unity(gf7):
    z = gf7.root_of_unity(6)
    assert gf7.element_order(z) == 6
    with pytest.raises(OrderNotAvailable):
        gf7.root_of_unity(4)


def test_trace_is_additive_to_prime_field(gf9):
    for x in range(gf9.q):
        for y in range(gf9.q):
            s = gf9.trace_abs(gf9.add(x, y))
            assert s == (gf9.trace_abs(x) + gf9.trace_abs(y)) % 3


def test_trace_of_constant(gf9):
    # Tr(c) = k*c for constants
    assert gf9.trace_abs(1) == 2
    assert gf9.trace_abs(2) == 1


def test_multiplicative_order():
    assert multiplicative_order(7, 12) == 2
    assert multiplicative_order(2, 7) == 3


def test_suggest_degree_frozen_values():
    assert suggest_degree(7, {60, 6}) == 4
    assert suggest_degree(11, {60}) == 2
    assert suggest_degree(13, {60}) == 4
    assert suggest_degree(7, set()) == 1


def test_suggest_degree_rejects_bad_orders():
    with pytest.raises(ValueError):
        suggest_degree(7, {14})


def test_field_json_round_trip(gf9):
    data = gf9.to_json()
    assert FieldCtx.from_json(data) is gf9
    assert gf9.element_from_json(gf9.element_to_json(5)) == 5
    with pytest.raises(ValueError):
        FieldCtx.from_json({"p": 3, "k": 2, "modulus": [2, 1, 1]})


def test_large_field_generic_mode():
    # beyond the Zech-table limit arithmetic falls back to generic mode
    ctx = build_field(3, 12)  # 531441 elements
    x = ctx.from_coords((1, 2, 0, 1) + (0,) * 8)
    assert ctx.mul(x, ctx.inv(x)) == 1
    assert ctx.pow(x, ctx.q - 1) == 1
