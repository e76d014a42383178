import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localfourier import series, symbol
from localfourier.errors import (
    DepthTooLarge,
    HypothesisViolation,
    NotDivisible,
    OrderNotAvailable,
)
from localfourier.field import build_field
from localfourier.symbol import (
    CHI2,
    TRIVIAL_CHAR,
    LocalSheaf,
    Point,
    Summand,
    TameChar,
    WildPart,
    as_reduce,
    canonicalize,
    descend,
    stabilizer,
    tame_char,
)

GF7 = build_field(7, 1)
GF9 = build_field(3, 2)


# -- tame characters --------------------------------------------------------


def test_tame_char_reduction():
    assert tame_char(6, 2) == TameChar(3, 1)
    assert tame_char(4, 0) == TRIVIAL_CHAR
    assert tame_char(5, 7) == TameChar(5, 2)


def test_tame_char_mul_and_inverse():
    a, b = tame_char(4, 1), tame_char(6, 1)
    ab = a * b
    assert ab == TameChar(12, 5)  # 1/4 + 1/6 = 5/12
    assert (ab * ab.inverse()).is_trivial
    assert CHI2 * CHI2 == TRIVIAL_CHAR


def test_chi2_is_the_quadratic_character():
    assert CHI2 == TameChar(2, 1)
    assert not CHI2.is_trivial


# -- wild parts --------------------------------------------------------------


def test_wild_part_normal_form():
    w = WildPart(GF7, {-3: 2, -1: 0})
    assert w.as_dict() == {-3: 2}
    assert w.depth == 3 and not w.is_tame
    assert WildPart(GF7, {}).is_tame


def test_wild_part_rejects_bad_terms():
    with pytest.raises(ValueError):
        WildPart(GF7, {1: 1})
    with pytest.raises(ValueError):
        WildPart(GF7, {-7: 1})  # divisible by p
    with pytest.raises(DepthTooLarge):
        WildPart(GF7, {-8: 1})
    with pytest.raises(ValueError):
        WildPart(GF7, {-1: 9})  # not an element index


def test_wild_part_exponent_maps():
    w = WildPart(GF7, {-2: 3, -1: 5})
    assert w.scale_exponents(3).exponents() == (-6, -3)
    assert w.scale_exponents(3).divide_exponents(3) == w
    with pytest.raises(NotDivisible):
        w.divide_exponents(2)


def test_wild_part_twist():
    w = WildPart(GF7, {-2: 3})
    # alpha(mu*u) multiplies the u^-2 coefficient by mu^-2
    t = w.twist(3)
    assert t.as_dict() == {-2: GF7.mul(3, GF7.pow(3, -2))}


def test_wild_part_add_cancels():
    a = WildPart(GF7, {-2: 3, -1: 1})
    b = WildPart(GF7, {-2: 4, -1: 1})  # 3 + 4 = 0 mod 7
    assert (a + b).as_dict() == {-1: 2}


# -- Artin-Schreier reduction ------------------------------------------------


def test_as_reduce_moves_p_divisible_exponents():
    alpha, witness = as_reduce(GF7, {-14: 2, -1: 3})
    assert alpha.as_dict() == {-2: 2, -1: 3}
    # gamma collects the transported term
    assert witness.terms() == {-2: 2}


def test_as_reduce_cascades(gf9):
    # -9 -> -3 -> -1 over p = 3
    alpha, witness = as_reduce(gf9, {-9: 5})
    assert alpha.exponents() == (-1,)
    assert gf9.pow(alpha.as_dict()[-1], 9) == 5


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(
        # raw exponents whose p-free part stays above -7
        st.sampled_from([-1, -2, -3, -4, -5, -6, -7, -14, -21, -28, -42, -49]),
        st.integers(1, 6),
        min_size=1,
        max_size=4,
    )
)
def test_as_reduce_witness_identity(raw):
    alpha, gamma = as_reduce(GF7, raw)
    lhs = gamma**7 - gamma
    rhs = series.from_terms(GF7, raw) - alpha.to_series()
    diff = lhs - rhs
    assert diff.is_zero or diff.val >= 0


def test_as_reduce_accepts_series_input():
    f = series.from_terms(GF7, {-7: 1, 0: 4, 2: 5}, prec=3)
    alpha, _ = as_reduce(GF7, f)
    assert alpha.as_dict() == {-1: 1}


# -- summands ----------------------------------------------------------------


def wild(d, r=1, chi=TRIVIAL_CHAR, unip=1, ctx=GF7, point=Point.ZERO):
    return Summand(point, r, WildPart(ctx, d), chi, unip)


def test_summand_rank_swan_slope():
    s = wild({-3: 1}, r=2, unip=2)
    assert s.rank == 4
    assert s.swan == 6
    assert s.slope == 1.5
    assert not s.is_tame


def test_summand_hypothesis_guards():
    with pytest.raises(HypothesisViolation):
        wild({-1: 1}, r=7)
    with pytest.raises(HypothesisViolation):
        wild({-1: 1}, chi=tame_char(7, 1))
    with pytest.raises(ValueError):
        wild({-1: 1}, unip=0)


def test_stabilizer_and_descend():
    s = wild({-6: 2, -3: 1}, r=3)
    assert stabilizer(s) == 3
    core = descend(s, 3)
    assert core.r == 1 and core.alpha.as_dict() == {-2: 2, -1: 1}
    with pytest.raises(NotDivisible):
        descend(s, 2)


def test_stabilizer_of_tame_is_r():
    t = wild({}, r=4, chi=tame_char(2, 1))
    assert stabilizer(t) == 4


def test_canonicalize_fixes_a_leading_coefficient():
    ctx = build_field(7, 1)  # r=2 only needs mu_2
    a = Summand(Point.ZERO, 2, WildPart(ctx, {-1: 3}), TRIVIAL_CHAR, 1)
    b = Summand(Point.ZERO, 2, WildPart(ctx, {-1: ctx.neg(3)}), TRIVIAL_CHAR, 1)
    # a and b differ by the mu_2 substitution u -> -u, so they canonicalize equal
    assert canonicalize(a) == canonicalize(b)
    assert canonicalize(a) == canonicalize(canonicalize(a))


def test_canonicalize_requires_roots_of_unity():
    s = wild({-1: 3}, r=4)  # mu_4 not inside GF(7)
    with pytest.raises(OrderNotAvailable):
        canonicalize(s)


def test_equal_ignores_branch_twists():
    ctx = build_field(7, 1)
    zeta = ctx.root_of_unity(3)
    a = Summand(Point.ZERO, 3, WildPart(ctx, {-1: 2}), TRIVIAL_CHAR, 1)
    twisted = Summand(
        Point.ZERO, 3, WildPart(ctx, {-1: ctx.mul(2, zeta)}), TRIVIAL_CHAR, 1
    )
    assert symbol.equal(
        LocalSheaf(Point.ZERO, [a]), LocalSheaf(Point.ZERO, [twisted])
    )


# -- sheaves -----------------------------------------------------------------


def test_sheaf_sorts_and_counts():
    a = wild({-1: 1}, r=1)
    b = wild({}, chi=tame_char(2, 1), unip=3)
    sheaf = LocalSheaf(Point.ZERO, [a, b])
    assert sheaf.rank == 1 + 3
    assert sheaf.swan == 1
    assert sheaf.slopes() == [0, 0, 0, 1.0]
    assert len(sheaf) == 2


def test_sheaf_rejects_misplaced_summand():
    s = wild({-1: 1}, point=Point.INFINITY)
    with pytest.raises(ValueError):
        LocalSheaf(Point.ZERO, [s])


def test_sheaf_json_round_trip_is_byte_identical():
    sheaf = LocalSheaf(
        Point.ZERO,
        [
            wild({-2: 3, -1: 5}, r=2, chi=tame_char(3, 2), unip=2),
            wild({}, chi=tame_char(2, 1)),
        ],
    )
    blob = json.dumps(sheaf.to_json(), sort_keys=True)
    back = LocalSheaf.from_json(GF7, sheaf.to_json())
    assert json.dumps(back.to_json(), sort_keys=True) == blob
