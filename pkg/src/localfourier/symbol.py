"""Symbols for local monodromy data at 0 and at infinity.

A *summand* models one indecomposable piece

    [r]_* ( wild(alpha) (x) K_chi (x) U(n) )

in the source local coordinate u (u = t at the origin, u = 1/t at
infinity):

* ``r``     -- the pushforward degree (coprime to p);
* ``alpha`` -- a :class:`WildPart`: the polar part of an exact Laurent
  polynomial, recording the wild twist.  Empty means tame;
* ``chi``   -- a :class:`TameChar`: a character of the tame quotient,
  stored as (order, exponent) of a root-of-unity datum, independent of
  any particular field model;
* ``n``     -- the size of the unipotent Jordan block U(n).

Wild parts are kept in a normal form where no polar exponent is divisible
by p; :func:`as_reduce` brings raw polar data into this form and returns
the change-of-trivialization witness gamma, so callers can verify
``gamma**p - gamma`` accounts for the discarded terms exactly.

The canonical representative of a summand twists alpha through the r-th
roots of unity mu_r (the deck transformations of u -> u**r) and keeps the
lexicographically least coefficient-dlog sequence, read from the deepest
exponent upward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import series
from .errors import (
    DepthTooLarge,
    HypothesisViolation,
    NotDivisible,
    OrderNotAvailable,
)
from .field import FieldCtx


class Point(Enum):
    ZERO = "zero"
    INFINITY = "infinity"


# ---------------------------------------------------------------------------
# tame characters


@dataclass(frozen=True, order=True)
class TameChar:
    """A tame character datum chi with chi = (canonical generator)**exponent
    on mu_order.  Stored reduced: the order is the exact order of chi."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("character order must be positive")
        if not (0 <= self.exponent < self.order) or (
            self.order > 1 and math.gcd(self.exponent, self.order) != 1
        ):
            raise ValueError(
                "character datum must be reduced; build with tame_char()"
            )

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __mul__(self, other: "TameChar") -> "TameChar":
        m = math.lcm(self.order, other.order)
        a = self.exponent * (m // self.order) + other.exponent * (m // other.order)
        return tame_char(m, a)

    def inverse(self) -> "TameChar":
        return tame_char(self.order, -self.exponent)

    def __pow__(self, e: int) -> "TameChar":
        return tame_char(self.order, self.exponent * e)

    def to_json(self) -> dict:
        return {"order": self.order, "exp": self.exponent}

    @classmethod
    def from_json(cls, d) -> "TameChar":
        return tame_char(int(d["order"]), int(d["exp"]))


def tame_char(order: int, exponent: int) -> TameChar:
    """Reduce (order, exponent) so the stored order is the exact order."""
    if order < 1:
        raise ValueError("character order must be positive")
    exponent %= order
    g = math.gcd(exponent, order)
    if exponent == 0:
        return TameChar(1, 0)
    return TameChar(order // g, exponent // g)


TRIVIAL_CHAR = TameChar(1, 0)
CHI2 = TameChar(2, 1)  # the quadratic character


# ---------------------------------------------------------------------------
# wild parts


class WildPart:
    """The polar part sum(c_e * u**e), e < 0, in reduced normal form:
    every coefficient nonzero, no exponent divisible by p, depth < p."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms):
        terms = tuple(sorted((int(e), c) for e, c in dict(terms).items() if c))
        for e, c in terms:
            if e >= 0:
                raise ValueError(f"wild part exponent {e} is not negative")
            if e % ctx.p == 0:
                raise ValueError(
                    f"exponent {e} divisible by p={ctx.p}; reduce with as_reduce"
                )
            if not (0 < c < ctx.q):
                raise ValueError(f"coefficient {c} is not a field unit index")
        if terms and -terms[0][0] >= ctx.p:
            raise DepthTooLarge(
                f"pole order {-terms[0][0]} >= p = {ctx.p} cannot be modelled"
            )
        self.ctx = ctx
        self.terms = terms

    @property
    def depth(self) -> int:
        """The pole order s (0 for tame)."""
        return -self.terms[0][0] if self.terms else 0

    @property
    def is_tame(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def to_series(self) -> series.LaurentSeries:
        return series.from_terms(self.ctx, self.as_dict())

    def exponents(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def scale_exponents(self, d: int) -> "WildPart":
        """u -> u**... : multiply every exponent by d (d coprime to p)."""
        if d < 1 or d % self.ctx.p == 0:
            raise ValueError("exponent scale must be positive and coprime to p")
        return WildPart(self.ctx, {e * d: c for e, c in self.terms})

    def divide_exponents(self, d: int) -> "WildPart":
        if any(e % d for e, _ in self.terms):
            raise NotDivisible(f"an exponent is not divisible by {d}")
        return WildPart(self.ctx, {e // d: c for e, c in self.terms})

    def twist(self, mu: int) -> "WildPart":
        """alpha(u) -> alpha(mu * u) for a unit mu."""
        ctx = self.ctx
        return WildPart(
            ctx, {e: ctx.mul(c, ctx.pow(mu, e)) for e, c in self.terms}
        )

    def scaled(self, c: int) -> "WildPart":
        """Multiply every coefficient by a unit c."""
        ctx = self.ctx
        return WildPart(ctx, {e: ctx.mul(c, a) for e, a in self.terms})

    def __add__(self, other: "WildPart") -> "WildPart":
        ctx = self.ctx
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = ctx.add(out.get(e, 0), c)
        return WildPart(ctx, out)

    def __eq__(self, other):
        return isinstance(other, WildPart) and self.ctx == other.ctx \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.terms))

    def __repr__(self):
        if not self.terms:
            return "<tame>"
        body = " + ".join(f"{c}*u^{e}" for e, c in reversed(self.terms))
        return f"<{body}>"

    def to_json(self) -> list:
        ctx = self.ctx
        return [[e, ctx.element_to_json(c)] for e, c in self.terms]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "WildPart":
        return cls(ctx, {int(e): ctx.element_from_json(c) for e, c in data})


def as_reduce(ctx: FieldCtx, raw) -> tuple[WildPart, series.LaurentSeries]:
    """Reduce raw polar data modulo p-th powers of the variable.

    Every term c * u**(p*j) with p*j < 0 is replaced by
    pth_root(c) * u**j, which may cascade and may cancel existing terms.
    Returns ``(alpha, gamma)`` where alpha is the reduced wild part and
    gamma is the witness: an exact Laurent polynomial with

        (gamma**p - gamma) - (raw_polar - alpha)   regular (no polar part).

    Raises :class:`DepthTooLarge` if the reduced depth is still >= p.
    """
    if isinstance(raw, series.LaurentSeries):
        if not raw.is_exact:
            raw = series.polar_part(raw)
        terms = raw.terms()
    else:
        terms = dict(raw)
    p = ctx.p
    cur = {e: c for e, c in terms.items() if e < 0 and c}
    witness = {}
    while True:
        e = next((e for e in sorted(cur) if e % p == 0), None)
        if e is None:
            break
        c = cur.pop(e)
        root = ctx.pth_root(c)
        j = e // p
        cur[j] = ctx.add(cur.get(j, 0), root)
        witness[j] = ctx.add(witness.get(j, 0), root)
        if not cur[j]:
            del cur[j]
    alpha = WildPart(ctx, cur)  # DepthTooLarge may fire here
    return alpha, series.from_terms(ctx, witness)


# ---------------------------------------------------------------------------
# summands and sheaves


@dataclass(frozen=True)
class Summand:
    """[r]_* ( wild(alpha) (x) K_chi (x) U(unip) ) at the given point."""

    point: Point
    r: int
    alpha: WildPart
    chi: TameChar
    unip: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("pushforward degree must be >= 1")
        if self.r % self.alpha.ctx.p == 0:
            raise HypothesisViolation("pushforward degree must be coprime to p")
        if self.unip < 1:
            raise ValueError("unipotent block size must be >= 1")
        if self.chi.order % self.alpha.ctx.p == 0:
            raise HypothesisViolation("tame character order must be coprime to p")

    @property
    def ctx(self) -> FieldCtx:
        return self.alpha.ctx

    @property
    def rank(self) -> int:
        return self.r * self.unip

    @property
    def slope(self):
        return self.alpha.depth / self.r

    @property
    def swan(self) -> int:
        return self.unip * self.alpha.depth

    @property
    def is_tame(self) -> bool:
        return self.alpha.is_tame

    def sort_key(self):
        return (
            self.alpha.depth,
            self.r,
            self.unip,
            self.chi.order,
            self.chi.exponent,
            self.alpha.terms,
        )

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "alpha": self.alpha.to_json(),
            "chi": self.chi.to_json(),
            "unip": self.unip,
        }

    def __repr__(self):
        wild = "" if self.alpha.is_tame else f"L({self.alpha!r})"
        chi = "" if self.chi.is_trivial else f"K(chi {self.chi.order}:{self.chi.exponent})"
        body = "*".join(x for x in (wild, chi, f"U({self.unip})") if x)
        return f"[{self.r}]_*({body})@{self.point.value}"


def stabilizer(smd: Summand) -> int:
    """The order of the subgroup of mu_r fixing alpha: gcd(r, exponents)."""
    d = smd.r
    for e in smd.alpha.exponents():
        d = math.gcd(d, -e)
    return d


def descend(smd: Summand, d: int) -> Summand:
    """Divide the pushforward degree and every polar exponent by d."""
    if d < 1 or smd.r % d:
        raise NotDivisible(f"{d} does not divide the pushforward degree {smd.r}")
    return Summand(
        smd.point, smd.r // d, smd.alpha.divide_exponents(d), smd.chi, smd.unip
    )


def canonicalize(smd: Summand) -> Summand:
    """The least mu_r-twist of alpha.

    Twists alpha(u) through alpha(mu*u), mu in mu_r, and keeps the
    representative whose coefficient sequence -- compared by discrete log,
    deepest exponent first -- is lexicographically least.  Tame summands
    are already canonical.  Raises :class:`OrderNotAvailable` when mu_r is
    not contained in the model field.
    """
    if smd.alpha.is_tame or smd.r == 1:
        return smd
    ctx = smd.ctx
    zeta = ctx.root_of_unity(smd.r)  # OrderNotAvailable if mu_r missing
    exps = sorted(smd.alpha.exponents(), reverse=True)  # -1 downward

    def key(wp: WildPart) -> tuple:
        d = wp.as_dict()
        return tuple(ctx.dlog(d[e]) for e in exps)

    best = smd.alpha
    best_key = key(best)
    mu = zeta
    for _ in range(smd.r - 1):
        cand = smd.alpha.twist(mu)
        ck = key(cand)
        if ck < best_key:
            best, best_key = cand, ck
        mu = ctx.mul(mu, zeta)
    if best is smd.alpha:
        return smd
    return Summand(smd.point, smd.r, best, smd.chi, smd.unip)


def is_indecomposable(smd: Summand) -> bool:
    """True when the symbol cannot split further: trivial mu_r-stabilizer."""
    return stabilizer(smd) == 1


def is_irreducible(smd: Summand) -> bool:
    return stabilizer(smd) == 1 and smd.unip == 1


class LocalSheaf:
    """A multiset of summands at one point, kept canonically sorted."""

    __slots__ = ("point", "summands")

    def __init__(self, point: Point, summands=()):
        summands = tuple(sorted(summands, key=Summand.sort_key))
        for s in summands:
            if s.point != point:
                raise ValueError("summand attached to the wrong point")
        self.point = point
        self.summands = summands

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)

    @property
    def swan(self) -> int:
        return sum(s.swan for s in self.summands)

    def slopes(self) -> list:
        out = []
        for s in self.summands:
            out.extend([s.slope] * s.rank)
        return sorted(out)

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    def __repr__(self):
        inner = " + ".join(repr(s) for s in self.summands) or "0"
        return f"({inner})"

    def to_json(self) -> dict:
        return {
            "point": self.point.value,
            "summands": [s.to_json() for s in self.summands],
        }

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "LocalSheaf":
        point = Point(data["point"])
        summands = [
            Summand(
                point,
                int(s["r"]),
                WildPart.from_json(ctx, s.get("alpha", [])),
                TameChar.from_json(s.get("chi", {"order": 1, "exp": 0})),
                int(s.get("unip", 1)),
            )
            for s in data.get("summands", [])
        ]
        return cls(point, summands)


def equal(a: LocalSheaf, b: LocalSheaf) -> bool:
    """Equality of symbols: same point and the same canonicalized multiset."""
    if a.point != b.point or len(a) != len(b):
        return False
    ca = sorted((canonicalize(s) for s in a), key=Summand.sort_key)
    cb = sorted((canonicalize(s) for s in b), key=Summand.sort_key)
    return all(
        x.r == y.r and x.alpha == y.alpha and x.chi == y.chi and x.unip == y.unip
        for x, y in zip(ca, cb)
    )
