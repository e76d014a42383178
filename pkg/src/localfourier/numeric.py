"""Brute-force exponential sums and trace-function transforms over F_q.

Floating-point complex arithmetic driven by the exact tables in field.py.
These sums are the oracle the symbolic layers are tested against, so the
code favours literal, auditable loops over speed; the only vectorization
is the dlog-indexed grid in ``hyp_sum``.

Conventions:

* psi(x) = exp(2*pi*i * Tr(x) / p) with the absolute trace down to F_p.
* A character of order N with exponent a sends g^j to exp(2*pi*i*a*j/N),
  where g is the field's canonical generator.  Extension fields use their
  own canonical generator (this matches a norm pullback only up to the
  choice of generators; sums are always internally consistent per field).
* Multiplicative characters vanish at 0 (extension by zero).
* The trace-level Fourier transform carries a minus sign:
  (Ff)(t') = -sum_t f(t) psi(t t').
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DlogOfZero, OrderNotAvailable, TrivialCharacter
from .field import FieldCtx, build_field
from .hyper import HypSpec
from .symbol import TameChar

TWO_PI_I = 2j * cmath.pi


class CharEval:
    """Character tables over one field: psi values, dlogs, Kummer characters."""

    def __init__(self, ctx: FieldCtx, conjugate: bool = False):
        self.ctx = ctx
        self.conjugate = conjugate
        sign = -1.0 if conjugate else 1.0
        self.psi_table = np.array(
            [cmath.exp(TWO_PI_I * sign * ctx.trace_abs(x) / ctx.p) for x in range(ctx.q)]
        )
        dlogs = [-1] * ctx.q
        for j in range(ctx.q - 1):
            dlogs[ctx.pow(ctx.gen, j)] = j
        self.dlog_table = np.array(dlogs)
        # elements listed in ascending-dlog order (the fixed summation order)
        self.powers = [ctx.pow(ctx.gen, j) for j in range(ctx.q - 1)]
        self._mult_cache: dict = {}
        self._conj_partner = None

    def conj(self) -> "CharEval":
        """The same tables with the inverse additive character."""
        if self._conj_partner is None:
            self._conj_partner = CharEval(self.ctx, not self.conjugate)
            self._conj_partner._conj_partner = self
        return self._conj_partner

    def psi(self, x: int) -> complex:
        return complex(self.psi_table[x])

    def mult_table(self, chi: TameChar) -> np.ndarray:
        """chi on every field element, indexed by element; 0 at 0."""
        key = (chi.order, chi.exponent)
        table = self._mult_cache.get(key)
        if table is None:
            q1 = self.ctx.q - 1
            if q1 % chi.order:
                raise OrderNotAvailable(
                    f"character order {chi.order} does not divide {q1}",
                    order=chi.order,
                )
            table = np.zeros(self.ctx.q, dtype=complex)
            for j, x in enumerate(self.powers):
                table[x] = cmath.exp(TWO_PI_I * chi.exponent * j / chi.order)
            self._mult_cache[key] = table
        return table

    def mult_char(self, chi: TameChar, x: int) -> complex:
        if x == 0:
            return 0j
        return complex(self.mult_table(chi)[x])


def gauss_sum(ev: CharEval, chi: TameChar) -> complex:
    """sum over x != 0 of chi(x) psi(x); magnitude sqrt(q)."""
    if chi.is_trivial:
        raise TrivialCharacter("gauss sum of the trivial character is excluded")
    table = ev.mult_table(chi)
    total = 0j
    for x in ev.powers:
        total += complex(table[x]) * ev.psi(x)
    return total


def _at_extension(ev: CharEval, ext_degree: int) -> CharEval:
    if ext_degree == 1:
        return ev
    if ext_degree < 1:
        raise ValueError(f"extension degree must be positive, got {ext_degree}")
    ctx = build_field(ev.ctx.p, ev.ctx.k * ext_degree)
    return CharEval(ctx, ev.conjugate)


def kloosterman(ev: CharEval, t: int, lambdas, ext_degree: int = 1) -> complex:
    """sum of psi(x_1+...+x_n) lam_1(x_1)...lam_n(x_n) over x_1...x_n = t.

    Deliberately plain loops over all (q-1)^(n-1) dlog tuples in ascending
    order: this is the reference implementation.
    """
    ev = _at_extension(ev, ext_degree)
    ctx = ev.ctx
    lambdas = tuple(lambdas)
    if not lambdas:
        raise ValueError("need at least one variable")
    if t == 0:
        raise DlogOfZero("kloosterman sum needs t != 0")
    q1 = ctx.q - 1
    lt = ctx.dlog(t)
    total = 0j
    for js in itertools.product(range(q1), repeat=len(lambdas) - 1):
        j_last = (lt - sum(js)) % q1
        xs = [ctx.pow(ctx.gen, j) for j in (*js, j_last)]
        arg = 0
        for x in xs:
            arg = ctx.add(arg, x)
        term = ev.psi(arg)
        for lam, x in zip(lambdas, xs):
            term *= ev.mult_char(lam, x)
        total += term
    return total


def hyp_sum(ev: CharEval, t: int, spec: HypSpec, ext_degree: int = 1) -> complex:
    """sum of psi(sum x_i - sum y_j) prod lam_i(x_i) prod rho_j(1/y_j)
    over x_1...x_n = t y_1...y_m, all variables nonzero.

    Vectorized over the (q-1)^(n+m-1) free dlog tuples; the last variable
    on the longer side is solved from the constraint.
    """
    ev = _at_extension(ev, ext_degree)
    ctx = ev.ctx
    if t == 0:
        raise DlogOfZero("hypergeometric sum needs t != 0")
    n, m = spec.n, spec.m
    q1 = ctx.q - 1
    lt = ctx.dlog(t)
    pw = ev.powers
    inv_pw = [ctx.inv(x) for x in pw]
    psi_x = np.array([ev.psi(x) for x in pw])
    psi_y = np.array([ev.psi(ctx.neg(x)) for x in pw])

    # per-variable factor, indexed by the variable's dlog
    fx = [psi_x * ev.mult_table(lam)[pw] for lam in spec.lambdas]
    fy = [psi_y * ev.mult_table(rho)[inv_pw] for rho in spec.rhos]

    if n:
        forced, free_x, free_y, base = fx[-1], fx[:-1], fy, lt
    else:
        # product of the y's is 1/t
        forced, free_x, free_y, base = fy[-1], [], fy[:-1], -lt
    dims = len(free_x) + len(free_y)
    if dims == 0:
        return complex(forced[base % q1])

    ar = np.arange(q1)
    prod = np.ones((1,) * dims, dtype=complex)
    forced_j = np.full((1,) * dims, base)
    axis = 0
    for tab in free_x:
        a = ar.reshape((1,) * axis + (q1,) + (1,) * (dims - 1 - axis))
        prod = prod * tab[a]
        forced_j = forced_j - a
        axis += 1
    for tab in free_y:
        a = ar.reshape((1,) * axis + (q1,) + (1,) * (dims - 1 - axis))
        prod = prod * tab[a]
        # free y's raise the forced x's dlog but lower a forced y's
        forced_j = forced_j + a if n else forced_j - a
        axis += 1
    return complex((prod * forced[np.mod(forced_j, q1)]).sum())


@dataclass(frozen=True)
class TraceTable:
    """A complex value per field element (index = element encoding)."""

    ctx: FieldCtx
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.ctx.q,):
            raise ValueError(f"expected {self.ctx.q} values, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("trace table contains non-finite values")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, x: int) -> complex:
        return complex(self.values[x])


def ft_trace(ev: CharEval, table: TraceTable) -> TraceTable:
    """(Ff)(t') = -sum_t f(t) psi(t t').  Applying it twice gives q*f(-x)."""
    ctx = ev.ctx
    q1 = ctx.q - 1
    f = table.values
    pw = np.array(ev.powers)
    psi_pw = ev.psi_table[pw]
    # psi(g^a g^b) = psi_pw[(a+b) mod q1]; a doubled table avoids the mod
    doubled = np.concatenate([psi_pw, psi_pw])
    out = np.empty(ctx.q, dtype=complex)
    out[0] = -f.sum()
    f_nz = f[pw]
    for j in range(q1):
        out[pw[j]] = -(f[0] + (f_nz * doubled[j : j + q1]).sum())
    return TraceTable(ctx, out)


def hyp_trace_recursive(ev: CharEval, spec: HypSpec) -> TraceTable:
    """Trace of the hypergeometric object built by the same recursion the
    symbolic layer uses; must equal (-1)^(n+m) * hyp_sum pointwise on t != 0.
    """
    values = _trace_build(ev, spec.lambdas, spec.rhos)
    return TraceTable(ev.ctx, values)


def _pullback_inv(ctx: FieldCtx, values: np.ndarray) -> np.ndarray:
    """Values pulled back along t -> 1/t, extended by zero at 0."""
    out = np.zeros_like(values)
    for x in range(1, ctx.q):
        out[x] = values[ctx.inv(x)]
    return out


def _trace_build(ev: CharEval, lams: tuple, rhos: tuple) -> np.ndarray:
    ctx = ev.ctx
    n, m = len(lams), len(rhos)

    if (n, m) == (1, 0):
        # rank-one seed; the minus is the cohomological degree shift
        return -(ev.psi_table * ev.mult_table(lams[0]))

    if n == 0 or (m >= 1 and n > m):
        # exchange the lists: conjugate additive character, invert the
        # multiplicative ones, pull back along inversion
        inner = _trace_build(
            ev.conj(),
            tuple(chi.inverse() for chi in rhos),
            tuple(chi.inverse() for chi in lams),
        )
        return _pullback_inv(ctx, inner)

    # peel the last upstairs character
    mu = lams[-1]
    mu_inv = mu.inverse()
    inner = _trace_build(
        ev,
        tuple(chi * mu_inv for chi in lams[:-1]),
        tuple(chi * mu_inv for chi in rhos),
    )
    pulled = _pullback_inv(ctx, inner)
    transformed = ft_trace(ev, TraceTable(ctx, pulled))
    # pointwise Kummer twist; its zero at 0 restricts the result to t != 0
    return transformed.values * ev.mult_table(mu)
