"""Truncated Laurent series over a finite-field context.

A series stores a dense window of coefficients::

    f  =  sum(coeffs[i] * t**(val + i))  +  O(t**prec)

``prec`` may be the float infinity, meaning the series is *exact*: it is
a genuine Laurent polynomial with no uncertainty past the stored window.
The zero polynomial is the empty window with ``val == prec``.  Stored
windows are normalized: the leading stored coefficient is nonzero (and,
for exact series, the trailing one too).

Precision bookkeeping follows the usual rules: addition keeps the worse
precision, multiplication keeps ``min(val_f + prec_g, val_g + prec_f)``,
differentiation loses one slot, and composition with ``g`` (val >= 1)
cannot be certified past ``prec_f * val(g)``.  Because coefficient
arithmetic is exact, a certified slot is correct, not approximate.
"""

from __future__ import annotations

from .errors import (
    BadValuation,
    DivisionByZero,
    InfiniteTail,
    PrecisionUnderflow,
)
from .field import FieldCtx

INF = float("inf")


class LaurentSeries:
    __slots__ = ("ctx", "val", "coeffs", "prec")

    def __init__(self, ctx, val, coeffs, prec):
        # normalizing constructor; accepts any dense window
        coeffs = list(coeffs)
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        if lo == len(coeffs):
            val, coeffs = prec, []
        else:
            val += lo
            coeffs = coeffs[lo:]
            if prec is INF or prec == INF:
                hi = len(coeffs)
                while hi and coeffs[hi - 1] == 0:
                    hi -= 1
                coeffs = coeffs[:hi]
            else:
                want = prec - val
                if len(coeffs) != want:
                    raise ValueError("coefficient window does not match prec")
        self.ctx = ctx
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- queries ---------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    @property
    def is_zero(self) -> bool:
        """True when no nonzero coefficient is certified."""
        return not self.coeffs

    def coeff(self, e: int) -> int:
        """Coefficient of t**e.  Certified zero outside the window."""
        if e >= self.prec:
            raise PrecisionUnderflow(f"coefficient of t^{e} is not certified")
        if not self.coeffs or e < self.val or e >= self.val + len(self.coeffs):
            return 0
        return self.coeffs[e - self.val]

    def terms(self) -> dict[int, int]:
        return {
            self.val + i: c for i, c in enumerate(self.coeffs) if c
        }

    # -- structural ops ----------------------------------------------------

    def truncate(self, prec) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        kept = {e: c for e, c in self.terms().items() if e < prec}
        return from_terms(self.ctx, kept, prec)

    def shift(self, e: int) -> "LaurentSeries":
        """Multiply by t**e."""
        if not self.coeffs:
            return LaurentSeries(self.ctx, self.prec + e, [], self.prec + e)
        return LaurentSeries(self.ctx, self.val + e, self.coeffs, self.prec + e)

    def scale(self, c: int) -> "LaurentSeries":
        if c == 0:
            return zero(self.ctx, self.prec)
        mul = self.ctx.mul
        return LaurentSeries(self.ctx, self.val,
                             [mul(c, a) for a in self.coeffs], self.prec)

    # -- ring ops ------------------------------------------------------------

    def __neg__(self):
        neg = self.ctx.neg
        return LaurentSeries(self.ctx, self.val,
                             [neg(a) for a in self.coeffs], self.prec)

    def __add__(self, other):
        f, g = self, other
        _same_ctx(f, g)
        prec = min(f.prec, g.prec)
        if not f.coeffs and not g.coeffs:
            return LaurentSeries(f.ctx, prec, [], prec)
        lo = min(x.val for x in (f, g) if x.coeffs)
        hi = prec if prec != INF else max(
            x.val + len(x.coeffs) for x in (f, g) if x.coeffs
        )
        n = hi - lo
        out = [0] * n
        add = f.ctx.add
        for x in (f, g):
            for i, c in enumerate(x.coeffs):
                j = x.val + i - lo
                if 0 <= j < n and c:
                    out[j] = add(out[j], c)
        return LaurentSeries(f.ctx, lo, out, prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f, g = self, other
        _same_ctx(f, g)
        prec = min(f.val + g.prec, g.val + f.prec)
        if not f.coeffs or not g.coeffs:
            return LaurentSeries(f.ctx, prec, [], prec)
        val = f.val + g.val
        n = (len(f.coeffs) + len(g.coeffs) - 1) if prec == INF else prec - val
        if n <= 0:
            return LaurentSeries(f.ctx, prec, [], prec)
        out = [0] * n
        ctx = f.ctx
        log, exp, zech = ctx._log, ctx._exp, ctx._zech
        fc, gc = f.coeffs, g.coeffs
        if log is not None:
            q1 = ctx.q - 1
            for i, a in enumerate(fc):
                if not a or i >= n:
                    continue
                la = log[a]
                jmax = min(len(gc), n - i)
                for j in range(jmax):
                    b = gc[j]
                    if not b:
                        continue
                    c = exp[la + log[b]]
                    o = out[i + j]
                    if o == 0:
                        out[i + j] = c
                    else:
                        lo_ = log[o]
                        d = log[c] - lo_
                        if d < 0:
                            d += q1
                        z = zech[d]
                        out[i + j] = 0 if z < 0 else exp[lo_ + z]
        else:
            mul, add = ctx.mul, ctx.add
            for i, a in enumerate(fc):
                if not a or i >= n:
                    continue
                jmax = min(len(gc), n - i)
                for j in range(jmax):
                    if gc[j]:
                        out[i + j] = add(out[i + j], mul(a, gc[j]))
        return LaurentSeries(f.ctx, val, out, prec)

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        result = one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- misc ---------------------------------------------------------------

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for i, c in enumerate(self.coeffs):
                if c:
                    parts.append(f"{c}*t^{self.val + i}")
            body = " + ".join(parts)
        tail = "" if self.prec == INF else f" + O(t^{self.prec})"
        return f"<{body}{tail} over {self.ctx!r}>"

    def to_json(self) -> dict:
        ctx = self.ctx
        return {
            "val": None if not self.coeffs and self.prec == INF else
                   (None if self.val == INF else self.val),
            "prec": None if self.prec == INF else self.prec,
            "coeffs": [ctx.element_to_json(c) for c in self.coeffs],
        }


def _same_ctx(f, g):
    if f.ctx is not g.ctx and f.ctx != g.ctx:
        raise ValueError("series live over different field contexts")


# -- constructors -------------------------------------------------------------


def zero(ctx: FieldCtx, prec=INF) -> LaurentSeries:
    return LaurentSeries(ctx, prec, [], prec)


def one(ctx: FieldCtx) -> LaurentSeries:
    return monomial(ctx, 1, 0)


def monomial(ctx: FieldCtx, c: int, e: int, prec=INF) -> LaurentSeries:
    if c == 0:
        return zero(ctx, prec)
    if prec != INF and e >= prec:
        return zero(ctx, prec)
    n = 1 if prec == INF else prec - e
    return LaurentSeries(ctx, e, [c] + [0] * (n - 1), prec)


def from_terms(ctx: FieldCtx, terms: dict, prec=INF) -> LaurentSeries:
    terms = {e: c for e, c in terms.items() if c and (prec == INF or e < prec)}
    if not terms:
        return zero(ctx, prec)
    lo = min(terms)
    hi = (max(terms) + 1) if prec == INF else prec
    out = [0] * (hi - lo)
    add = ctx.add
    for e, c in terms.items():
        out[e - lo] = add(out[e - lo], c)
    return LaurentSeries(ctx, lo, out, prec)


def series_from_json(ctx: FieldCtx, data: dict) -> LaurentSeries:
    prec = data.get("prec")
    prec = INF if prec is None else prec
    val = data.get("val")
    coeffs = [ctx.element_from_json(v) for v in data.get("coeffs", [])]
    if val is None:
        if any(coeffs):
            raise ValueError("series with coefficients needs a valuation")
        return zero(ctx, prec)
    if prec == INF:
        return LaurentSeries(ctx, val, coeffs, INF)
    window = coeffs + [0] * (prec - val - len(coeffs))
    return LaurentSeries(ctx, val, window, prec)


# -- calculus and composition ---------------------------------------------------


def derive(f: LaurentSeries) -> LaurentSeries:
    """Formal derivative d/dt.  Certified one slot less than the input."""
    ctx = f.ctx
    prec = f.prec - 1
    if not f.coeffs:
        return zero(ctx, prec)
    mul = ctx.mul
    out = [mul((f.val + i) % ctx.p, c) for i, c in enumerate(f.coeffs)]
    return LaurentSeries(ctx, f.val - 1, out, prec)


def _as_poly(f: LaurentSeries) -> LaurentSeries:
    """Reinterpret the stored window as an exact polynomial."""
    if not f.coeffs:
        return zero(f.ctx)
    return LaurentSeries(f.ctx, f.val, f.coeffs, INF)


def _cut(f: LaurentSeries, w) -> LaurentSeries:
    """Drop exponents >= w from an exact series, staying exact."""
    return from_terms(f.ctx, {e: c for e, c in f.terms().items() if e < w})


def _claim(f: LaurentSeries, prec) -> LaurentSeries:
    """Re-window an exact series as a truncated one certified below prec."""
    return from_terms(f.ctx, {e: c for e, c in f.terms().items() if e < prec},
                      prec)


def _compose_cut(f: LaurentSeries, g: LaurentSeries, w: int) -> LaurentSeries:
    """Horner composition of exact polynomials (val(f) >= 0, val(g) >= 1),
    truncating every intermediate below t**w.  Result is exact mod t**w."""
    ctx = f.ctx
    acc = zero(ctx)
    if not f.coeffs:
        return acc
    for e in range(f.val + len(f.coeffs) - 1, -1, -1):
        acc = _cut(acc * g, w)
        c = f.coeff(e) if e >= f.val else 0
        if c:
            acc = acc + from_terms(ctx, {0: c})
    return acc


def _inv_unit_poly(u: LaurentSeries, m: int) -> LaurentSeries:
    """Newton inverse mod t**m of an exact polynomial with u(0) != 0."""
    ctx = u.ctx
    g = monomial(ctx, ctx.inv(u.coeff(0)), 0)
    two = from_terms(ctx, {0: ctx.from_int(2)})
    w = 1
    while w < m:
        w = min(2 * w, m)
        g = _cut(g * (two - _cut(u, w) * g), w)
    return g


def invert(f: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse.  Certifies prec(f) - 2*val(f) exponents."""
    if f.is_zero:
        raise DivisionByZero("cannot invert a series that is zero to precision")
    ctx = f.ctx
    if f.is_exact and len(f.coeffs) == 1:
        return monomial(ctx, ctx.inv(f.coeffs[0]), -f.val)
    if f.is_exact:
        raise PrecisionUnderflow(
            "inverse of a multi-term exact series is an infinite series; "
            "truncate(prec) first to choose a working precision"
        )
    unit = _as_poly(f.shift(-f.val))
    m = f.prec - f.val  # certified slots of the unit part
    g = _inv_unit_poly(unit, m)
    return _claim(g, m).shift(-f.val)


def compose(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Substitute g into f.  Requires val(g) >= 1."""
    _same_ctx(f, g)
    ctx = f.ctx
    if g.coeffs and g.val < 1:
        raise BadValuation("composition needs val(g) >= 1")
    if not g.coeffs and g.prec <= 1:
        raise BadValuation("composition needs val(g) >= 1")
    g_val = g.val if g.coeffs else g.prec
    cap = INF if f.prec == INF else f.prec * max(g_val, 1)
    acc = zero(ctx)
    if f.coeffs:
        top = f.val + len(f.coeffs) - 1
        if top >= 0:
            # Horner on the non-negative exponents, highest first
            for e in range(top, -1, -1):
                acc = acc * g
                c = f.coeff(e) if e >= f.val else 0
                if c:
                    acc = acc + from_terms(ctx, {0: c})
                if cap < acc.prec:
                    acc = acc.truncate(cap)
        if f.val < 0:
            # Horner on the polar exponents, in powers of 1/g
            gi = invert(g)
            pacc = zero(ctx)
            for e in range(f.val, 0):
                pacc = (pacc + from_terms(ctx, {0: f.coeff(e)})) * gi
                if cap < pacc.prec:
                    pacc = pacc.truncate(cap)
            acc = acc + pacc
    return acc.truncate(cap) if cap < acc.prec else acc


def reversion(f: LaurentSeries) -> LaurentSeries:
    """Compositional inverse of a series with val(f) == 1."""
    ctx = f.ctx
    if not f.coeffs or f.val != 1:
        raise BadValuation("reversion needs valuation exactly 1")
    c1 = f.coeffs[0]
    if f.is_exact:
        if len(f.coeffs) == 1:
            return monomial(ctx, ctx.inv(c1), 1)
        raise PrecisionUnderflow(
            "reversion of a multi-term exact series is an infinite series; "
            "truncate(prec) first to choose a working precision"
        )
    target = f.prec
    t = monomial(ctx, 1, 1)
    fpoly = _as_poly(f)
    fppoly = _as_poly(derive(f))
    g = monomial(ctx, ctx.inv(c1), 1)
    w = 2
    while w < target:
        w = min(2 * w, target)
        num = _cut(_compose_cut(_cut(fpoly, w), g, w) - t, w)
        den = _compose_cut(_cut(fppoly, w), g, w)
        g = _cut(g - num * _inv_unit_poly(den, w), w)
    return _claim(g, target)


def nth_root_series(f: LaurentSeries, n: int) -> LaurentSeries:
    """Canonical n-th root of a series, for gcd(n, p) == 1 and n | val(f).

    The leading coefficient's root is chosen by ``FieldCtx.nth_root``;
    the rest of the expansion then lifts uniquely.
    """
    ctx = f.ctx
    if n < 1:
        raise ValueError("root index must be >= 1")
    if n % ctx.p == 0:
        raise ValueError("root index must be coprime to the characteristic")
    if f.is_zero:
        raise DivisionByZero("n-th root of a series that is zero to precision")
    if f.val % n:
        raise BadValuation(f"valuation {f.val} is not divisible by {n}")
    lead = ctx.nth_root(f.coeffs[0], n)  # may raise NoRootInField
    if n == 1:
        return f
    if f.is_exact and len(f.coeffs) == 1:
        return monomial(ctx, lead, f.val // n)
    if f.is_exact:
        raise PrecisionUnderflow(
            "n-th root of a multi-term exact series is an infinite series; "
            "truncate(prec) first to choose a working precision"
        )
    unit = _as_poly(f.shift(-f.val))
    m = f.prec - f.val
    invn = from_terms(ctx, {0: ctx.inv(ctx.from_int(n))})
    onec = one(ctx)
    z = monomial(ctx, ctx.inv(lead), 0)
    w = 1
    while w < m:
        w = min(2 * w, m)
        uw = _cut(unit, w)
        z = _cut(z + z * (onec - uw * z**n) * invn, w)
    root = _cut(unit * z ** (n - 1), m)
    return _claim(root, m).shift(f.val // n)


def substitute_power(f: LaurentSeries, d: int) -> LaurentSeries:
    """Replace t by t**d (d >= 1): exponents multiply by d."""
    if d < 1:
        raise ValueError("power must be >= 1")
    if d == 1:
        return f
    ctx = f.ctx
    prec = f.prec * d if f.prec != INF else INF
    if not f.coeffs:
        return zero(ctx, prec)
    out = [0] * ((len(f.coeffs) - 1) * d + 1)
    for i, c in enumerate(f.coeffs):
        out[i * d] = c
    if prec != INF:
        out += [0] * (prec - f.val * d - len(out))
    return LaurentSeries(ctx, f.val * d, out, prec)


def invert_variable(f: LaurentSeries) -> LaurentSeries:
    """Replace t by 1/t.  Defined for exact series only."""
    if not f.is_exact:
        raise InfiniteTail(
            "substituting 1/t into a truncated series would need its "
            "unknown tail; pass an exact series"
        )
    return from_terms(f.ctx, {-e: c for e, c in f.terms().items()})


def polar_part(f: LaurentSeries) -> LaurentSeries:
    """The exact sum of terms with negative exponent.

    Requires the negative range to be fully certified (prec >= 0).
    """
    if f.prec < 0:
        raise PrecisionUnderflow(
            "negative exponents are not fully certified; extend precision"
        )
    return from_terms(f.ctx, {e: c for e, c in f.terms().items() if e < 0})


def agree(f: LaurentSeries, g: LaurentSeries, upto=None) -> bool:
    """Coefficientwise equality on the jointly certified range."""
    _same_ctx(f, g)
    prec = min(f.prec, g.prec)
    if upto is not None:
        prec = min(prec, upto)
    if prec == INF:
        return f.terms() == g.terms()
    lo = min([x.val for x in (f, g) if x.coeffs] or [prec])
    for e in range(lo, prec):
        if f.coeff(e) != g.coeff(e):
            return False
    return True
