"""Local monodromy of hypergeometric sheaves.

Two independent constructions of the same data:

* ``hyp_local`` — the closed form.  At whichever of 0/infinity carries
  wild ramification there is a single slope-1/(n-m) block plus tame
  Kummer blocks for the characters on that side; when the two lists
  have equal length everything is tame and the point t = 1 acquires a
  one-dimensional tame quotient.

* ``hyp_local_recursive`` — rebuilds the data from scratch by structural
  recursion through the transform module (peel off the last upstairs
  character, Fourier-transform the inverted remainder, twist back).
  Agreement of the two is the main end-to-end exercise of the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import DisjointnessViolated, SmallCharacteristic
from .field import FieldCtx
from .symbol import (
    CHI2,
    TRIVIAL_CHAR,
    LocalSheaf,
    Point,
    Summand,
    TameChar,
    WildPart,
    equal,
)
from .transform import TransformKind, lft


@dataclass(frozen=True)
class HypSpec:
    """Input data: the two character lists (n upstairs, m downstairs)."""

    lambdas: tuple
    rhos: tuple

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        object.__setattr__(self, "rhos", tuple(self.rhos))
        if not self.lambdas and not self.rhos:
            raise ValueError("need at least one character on either side")
        for chi in self.lambdas + self.rhos:
            if not isinstance(chi, TameChar):
                raise TypeError(f"expected TameChar, got {chi!r}")
        common = set(self.lambdas) & set(self.rhos)
        if common:
            raise DisjointnessViolated(
                f"character lists must be disjoint; both contain {sorted(common)!r}"
            )

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def m(self) -> int:
        return len(self.rhos)


@dataclass(frozen=True)
class At1Data:
    """Tame local structure at t = 1 in the balanced case.

    The stalk contributes ``stalk_rank`` invariants; the one-dimensional
    quotient carries ``quotient_char``.
    """

    stalk_rank: int
    quotient_char: TameChar


@dataclass(frozen=True)
class HypLocalData:
    at0: LocalSheaf
    atInf: LocalSheaf
    at1: At1Data | None = None

    @property
    def rank(self) -> int:
        return self.at0.rank

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "at0": self.at0.to_json(),
            "atInf": self.atInf.to_json(),
            "at1": None
            if self.at1 is None
            else {
                "stalk_rank": self.at1.stalk_rank,
                "quotient_char": self.at1.quotient_char.to_json(),
            },
        }


def mult0(spec: HypSpec, chi: TameChar) -> int:
    """Multiplicity of chi in the upstairs list."""
    return spec.lambdas.count(chi)


def multInf(spec: HypSpec, chi: TameChar) -> int:
    """Multiplicity of chi in the downstairs list."""
    return spec.rhos.count(chi)


def local_data_equal(a: HypLocalData, b: HypLocalData) -> bool:
    return equal(a.at0, b.at0) and equal(a.atInf, b.atInf) and a.at1 == b.at1


def _check_characteristic(ctx: FieldCtx, spec: HypSpec):
    # Everything downstream divides by integers up to max(n, m), so the
    # characteristic has to clear them all.
    top = max(spec.n, spec.m)
    if 2 <= ctx.p <= top:
        raise SmallCharacteristic(
            f"characteristic {ctx.p} must exceed {top} for {spec.n}:{spec.m} input"
        )


def _char_product(chars) -> TameChar:
    return reduce(lambda a, b: a * b, chars, TRIVIAL_CHAR)


def _tame_blocks(ctx: FieldCtx, point: Point, chars) -> list:
    """One Kummer block per distinct character, unipotent part = multiplicity."""
    return [
        Summand(point, 1, WildPart(ctx, {}), chi, list(chars).count(chi))
        for chi in dict.fromkeys(chars)
    ]


def hyp_local(ctx: FieldCtx, spec: HypSpec) -> HypLocalData:
    """Closed-form local data at 0, infinity (and 1 when n = m)."""
    _check_characteristic(ctx, spec)
    n, m = spec.n, spec.m
    lam_blocks = _tame_blocks(ctx, Point.ZERO, spec.lambdas)
    rho_blocks = _tame_blocks(ctx, Point.INFINITY, spec.rhos)
    parity = CHI2 ** ((n + m - 1) % 2)

    if n > m:
        chi = _char_product(spec.lambdas) * _char_product(spec.rhos).inverse() * parity
        wild = Summand(
            Point.INFINITY, n - m, WildPart(ctx, {-1: (n - m) % ctx.p}), chi, 1
        )
        return HypLocalData(
            LocalSheaf(Point.ZERO, lam_blocks),
            LocalSheaf(Point.INFINITY, [wild] + rho_blocks),
        )
    if n < m:
        chi = _char_product(spec.lambdas).inverse() * _char_product(spec.rhos) * parity
        wild = Summand(
            Point.ZERO, m - n, WildPart(ctx, {-1: (-(m - n)) % ctx.p}), chi, 1
        )
        return HypLocalData(
            LocalSheaf(Point.ZERO, [wild] + lam_blocks),
            LocalSheaf(Point.INFINITY, rho_blocks),
        )
    # balanced: tame on both sides, extra structure at t = 1
    at1 = At1Data(n - 1, _char_product(spec.lambdas).inverse() * _char_product(spec.rhos))
    return HypLocalData(
        LocalSheaf(Point.ZERO, lam_blocks),
        LocalSheaf(Point.INFINITY, rho_blocks),
        at1,
    )


# ---------------------------------------------------------------------------
# recursive construction


def _inv_summand(smd: Summand) -> Summand:
    # Pullback along t -> 1/t swaps the two points; in local covering
    # coordinates the polar data is untouched while the Kummer label inverts.
    other = Point.INFINITY if smd.point is Point.ZERO else Point.ZERO
    return Summand(other, smd.r, smd.alpha, smd.chi.inverse(), smd.unip)


def _inv_local(h: HypLocalData) -> HypLocalData:
    assert h.at1 is None
    return HypLocalData(
        LocalSheaf(Point.ZERO, [_inv_summand(s) for s in h.atInf]),
        LocalSheaf(Point.INFINITY, [_inv_summand(s) for s in h.at0]),
    )


def _negate_wild(ctx: FieldCtx, h: HypLocalData) -> HypLocalData:
    """Swap the additive character for its inverse: negate wild coefficients."""
    minus_one = ctx.neg(1)

    def flip_sheaf(sheaf: LocalSheaf) -> LocalSheaf:
        return LocalSheaf(
            sheaf.point,
            [
                Summand(s.point, s.r, s.alpha.scaled(minus_one), s.chi, s.unip)
                for s in sheaf
            ],
        )

    assert h.at1 is None
    return HypLocalData(flip_sheaf(h.at0), flip_sheaf(h.atInf))


def _twist_sheaf(sheaf: LocalSheaf, mu: TameChar) -> LocalSheaf:
    # Tensoring with the Kummer sheaf of mu multiplies each block's
    # character by mu^r (the covering pulls mu back to its r-th power).
    return LocalSheaf(
        sheaf.point,
        [Summand(s.point, s.r, s.alpha, s.chi * mu**s.r, s.unip) for s in sheaf],
    )


def hyp_local_recursive(ctx: FieldCtx, spec: HypSpec) -> HypLocalData:
    """Rebuild the local data through the transform module.

    Must agree with ``hyp_local`` on every admissible input; any
    disagreement is a bug in one of the two pipelines.
    """
    _check_characteristic(ctx, spec)
    return _build(ctx, spec.lambdas, spec.rhos)


def _build(ctx: FieldCtx, lams: tuple, rhos: tuple) -> HypLocalData:
    n, m = len(lams), len(rhos)

    if (n, m) == (1, 0):
        # rank-one seed: Kummer block at 0, its additive-twisted mate at infinity
        lam = lams[0]
        return HypLocalData(
            LocalSheaf(Point.ZERO, [Summand(Point.ZERO, 1, WildPart(ctx, {}), lam, 1)]),
            LocalSheaf(
                Point.INFINITY,
                [Summand(Point.INFINITY, 1, WildPart(ctx, {-1: 1}), lam, 1)],
            ),
        )

    if n == 0 or (m >= 1 and n > m):
        # Exchange the two lists (inverting every character): the result is
        # the pullback under t -> 1/t taken with the conjugate additive
        # character, so undo both afterwards.
        inner = _build(
            ctx,
            tuple(chi.inverse() for chi in rhos),
            tuple(chi.inverse() for chi in lams),
        )
        return _inv_local(_negate_wild(ctx, inner))

    return _peel(ctx, lams, rhos)


def _peel(ctx: FieldCtx, lams: tuple, rhos: tuple) -> HypLocalData:
    """Drop the last upstairs character, recurse, transform, twist back."""
    n, m = len(lams), len(rhos)
    mu = lams[-1]
    mu_inv = mu.inverse()
    inner = _build(
        ctx,
        tuple(chi * mu_inv for chi in lams[:-1]),
        tuple(chi * mu_inv for chi in rhos),
    )
    star = _inv_local(inner)

    at1 = None
    if n == m:
        # Near t = 1 the transform behaves like an extra additive twist at
        # infinity: exactly one slope-one block cancels against it and
        # survives as a tame line; its character (inverted) is the quotient.
        pole = WildPart(ctx, {-1: 1})
        cancelled = [
            s for s in star.atInf if s.r == 1 and (s.alpha + pole).is_tame
        ]
        assert len(cancelled) == 1, "balanced case must cancel exactly one block"
        at1 = At1Data(n - 1, cancelled[0].chi.inverse())

    forward = list(lft(star.at0, TransformKind.ZERO_TO_INF)) + list(
        lft(star.atInf, TransformKind.INF_TO_INF)
    )
    at_inf = LocalSheaf(Point.INFINITY, forward)

    # The backward leg cannot see purely unipotent blocks; the invariants
    # bookkeeping routes each of them through unchanged and always deposits
    # one extra unipotent unit in the trivial block.
    passed = 0
    rest = []
    for s in star.atInf:
        if s.is_tame and s.chi.is_trivial:
            passed += s.unip
        else:
            rest.append(s)
    back = list(lft(LocalSheaf(Point.INFINITY, rest), TransformKind.INF_TO_ZERO))
    back.append(Summand(Point.ZERO, 1, WildPart(ctx, {}), TRIVIAL_CHAR, passed + 1))
    at0 = LocalSheaf(Point.ZERO, back)

    return HypLocalData(_twist_sheaf(at0, mu), _twist_sheaf(at_inf, mu), at1)
