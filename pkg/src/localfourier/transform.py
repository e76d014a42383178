"""Local Fourier transforms of symbols between 0 and infinity.

Three kinds are supported, named by (source point, target point):

* ``ZERO_TO_INF`` -- source at 0, target at infinity;
* ``INF_TO_INF``  -- source at infinity, target at infinity (only the
  steep part, slope > 1, survives);
* ``INF_TO_ZERO`` -- source at infinity, target at 0 (only the shallow
  part, slope < 1, survives).

For a wild summand [r]_* (L(alpha) (x) K_chi (x) U(n)) with depth s the
image is [e]_* (L(beta) (x) K_chi' (x) U(n)) where e = r+s, s-r or r-s by
kind, and beta solves the stationary-phase system coupling alpha, the
kernel monomial and the new coordinate.  Writing everything in the source
local coordinate u, the system reduces to:

    (t')**e = S(u),     with  S = -alpha'(u) / (r * u**(r-1))   (from 0)
                               S = u**(r+1) * alpha'(u) / r     (from inf)

followed by one canonical e-th root t'(u), the local coordinate
u' = 1/t' (target at infinity) or u' = t' (target at 0), one reversion
u = m(u'), and the substitution

    beta(u') = alpha(m(u')) + m(u')**(+-r) * u'**(-+e).

The character transport is chi -> chi**(-1) * chi2**s for the two
direction-reversing kinds and chi -> chi * chi2**s for INF_TO_INF, with
chi2 the quadratic character; the unipotent block size never changes.

All arithmetic is exact, so every certified series slot is correct; the
solver starts with 2*(r+s) working slots and doubles (three attempts) if
the polar part of beta is not yet fully certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import series
from .errors import (
    HypothesisViolation,
    PrecisionUnderflow,
    UnsupportedTameTrivial,
)
from .series import LaurentSeries
from .symbol import (
    CHI2,
    LocalSheaf,
    Point,
    Summand,
    WildPart,
    as_reduce,
    canonicalize,
    descend,
    stabilizer,
)


class TransformKind(Enum):
    ZERO_TO_INF = "0toinf"
    INF_TO_INF = "inftoinf"
    INF_TO_ZERO = "infto0"

    @property
    def source(self) -> Point:
        return Point.ZERO if self is TransformKind.ZERO_TO_INF else Point.INFINITY

    @property
    def target(self) -> Point:
        return Point.ZERO if self is TransformKind.INF_TO_ZERO else Point.INFINITY


def output_degree(kind: TransformKind, r: int, s: int) -> int:
    if kind is TransformKind.ZERO_TO_INF:
        return r + s
    if kind is TransformKind.INF_TO_INF:
        return s - r
    return r - s


@dataclass(frozen=True)
class LegendreSolution:
    """The stationary-phase data of one wild transform.

    ``lam``          -- t' as a series in the source coordinate u;
    ``mu``           -- the source coordinate u as a series in the target
                        local coordinate u';
    ``beta``         -- the reduced polar part of beta(u');
    ``beta_raw``     -- the certified series for beta(u') itself, polar and
                        regular window alike, before any reduction;
    ``branch``       -- which e-th root branch of the kernel equation was
                        taken (0 is the canonical one);
    ``exponent_out`` -- the output pushforward degree e.
    """

    lam: LaurentSeries
    mu: LaurentSeries
    beta: WildPart
    beta_raw: LaurentSeries
    branch: int
    exponent_out: int


def _check_hypotheses(p: int, r: int, s: int, kind: TransformKind):
    checks = [
        ("p odd", p != 2),
        ("s >= 1 (wild input)", s >= 1),
        ("s < p", s < p),
        ("gcd(p, r) = 1", r % p != 0),
        ("gcd(p, s) = 1", s % p != 0),
    ]
    if kind is TransformKind.INF_TO_INF:
        checks.append(("s > r", s > r))
    if kind is TransformKind.INF_TO_ZERO:
        checks.append(("s < r", s < r))
    e = output_degree(kind, r, s)
    checks.append((f"gcd(p, output degree {e}) = 1", e % p != 0))
    for name, ok in checks:
        if not ok:
            raise HypothesisViolation(f"transform hypothesis failed: {name}")


def legendre(
    alpha: WildPart,
    r: int,
    kind: TransformKind,
    prec: int | None = None,
    branch: int = 0,
) -> LegendreSolution:
    """Solve the stationary-phase system for one wild summand.

    ``alpha`` is the wild part in the source local coordinate, ``r`` the
    source pushforward degree.  ``prec`` overrides the number of working
    slots (default ``2*(r+s)``); ``branch`` selects the e-th root branch.
    """
    ctx = alpha.ctx
    s = alpha.depth
    _check_hypotheses(ctx.p, r, s, kind)
    e = output_degree(kind, r, s)
    branch %= e
    slots = prec if prec is not None else 2 * (r + s)

    a = alpha.to_series()  # exact
    from_zero = kind is TransformKind.ZERO_TO_INF
    if from_zero:
        # S = -alpha'(u) / (r u**(r-1)), valuation -(r+s)
        S_exact = series.derive(a).scale(ctx.neg(ctx.inv(ctx.from_int(r)))) \
            .shift(-(r - 1))
    else:
        # S = u**(r+1) alpha'(u) / r, valuation r-s (to 0') or -(s-r) (to inf')
        S_exact = series.derive(a).scale(ctx.inv(ctx.from_int(r))).shift(r + 1)

    last_exc = None
    for _ in range(3):
        S = S_exact.truncate(S_exact.val + slots)
        tprime = series.nth_root_series(S, e)  # NoRootInField propagates
        if branch:
            omega = ctx.pow(ctx.root_of_unity(e), branch)
            tprime = tprime.scale(omega)
        if kind is TransformKind.INF_TO_ZERO:
            uprime = tprime
        else:
            uprime = series.invert(tprime)
        m = series.reversion(uprime)  # u as a series in u'
        comp = series.compose(a, m)
        if from_zero:
            kernel = m**r * series.monomial(ctx, 1, -e)
        elif kind is TransformKind.INF_TO_INF:
            kernel = series.invert(m) ** r * series.monomial(ctx, 1, -e)
        else:
            kernel = series.invert(m) ** r * series.monomial(ctx, 1, e)
        beta = comp + kernel
        if beta.prec >= 0:
            polar, _ = as_reduce(ctx, series.polar_part(beta))
            if polar.depth != s or (polar.exponents()[0] != -s):
                raise AssertionError(
                    "stationary-phase output has wrong depth"
                )  # pragma: no cover
            return LegendreSolution(tprime, m, polar, beta, branch, e)
        last_exc = PrecisionUnderflow(
            f"beta certified only below t^{beta.prec}; working slots {slots}"
        )
        slots *= 2
    raise last_exc


def _transform_wild(smd: Summand, kind: TransformKind) -> Summand | None:
    s = smd.alpha.depth
    r = smd.r
    if kind is TransformKind.INF_TO_INF and s <= r:
        return None
    if kind is TransformKind.INF_TO_ZERO and s >= r:
        return None
    _check_hypotheses(smd.ctx.p, r, s, kind)
    d = stabilizer(smd)
    core = descend(smd, d)
    sol = legendre(core.alpha, core.r, kind)
    beta = sol.beta.scale_exponents(d)
    r_out = output_degree(kind, r, s)
    if kind is TransformKind.INF_TO_INF:
        chi_out = smd.chi * CHI2**s
    else:
        chi_out = smd.chi.inverse() * CHI2**s
    return canonicalize(
        Summand(kind.target, r_out, beta, chi_out, smd.unip)
    )


def _transform_tame(smd: Summand, kind: TransformKind) -> Summand | None:
    if kind is TransformKind.INF_TO_INF:
        return None
    if smd.r != 1:
        raise HypothesisViolation(
            "transform hypothesis failed: tame summand with pushforward "
            f"degree {smd.r} > 1 is outside the supported table"
        )
    if smd.chi.is_trivial:
        raise UnsupportedTameTrivial(
            f"{kind.value} of a trivial tame summand is not part of the "
            "symbol calculus (its image is not a local symbol)"
        )
    return Summand(kind.target, 1, smd.alpha, smd.chi.inverse(), smd.unip)


def transform_summand(smd: Summand, kind: TransformKind) -> Summand | None:
    """Image of a single summand; None when it dies."""
    if smd.point != kind.source:
        raise ValueError(
            f"summand sits at {smd.point.value}, transform reads {kind.source.value}"
        )
    if smd.alpha.is_tame:
        return _transform_tame(smd, kind)
    return _transform_wild(smd, kind)


def lft(obj: LocalSheaf, kind: TransformKind) -> LocalSheaf:
    """Local Fourier transform of a symbol."""
    if obj.point != kind.source:
        raise ValueError(
            f"symbol sits at {obj.point.value}, transform reads {kind.source.value}"
        )
    out = []
    for smd in obj:
        image = transform_summand(smd, kind)
        if image is not None:
            out.append(image)
    return LocalSheaf(kind.target, out)


def rank_law_check(obj: LocalSheaf, out: LocalSheaf, kind: TransformKind) -> bool:
    """Verify the rank bookkeeping of a transform output.

    ZERO_TO_INF: rank(out) == rank(in) + swan(in).
    INF_TO_INF:  rank(out) == sum of (s - r) * n over steep summands.
    INF_TO_ZERO: rank(out) == sum of (r - s) * n over shallow wild
                 summands plus the tame rank.
    """
    if kind is TransformKind.ZERO_TO_INF:
        return out.rank == obj.rank + obj.swan
    if kind is TransformKind.INF_TO_INF:
        expect = sum(
            (s.alpha.depth - s.r) * s.unip
            for s in obj
            if s.alpha.depth > s.r
        )
        return out.rank == expect
    expect = sum(
        (s.r - s.alpha.depth) * s.unip
        for s in obj
        if not s.alpha.is_tame and s.alpha.depth < s.r
    ) + sum(s.rank for s in obj if s.alpha.is_tame)
    return out.rank == expect
