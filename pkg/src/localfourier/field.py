"""Arithmetic in GF(p^k) with deterministic structure choices.

A :class:`FieldCtx` fixes one concrete model of GF(p^k):

* the modulus is the least monic irreducible polynomial of degree k over
  GF(p), where polynomials are compared through the integer encoding
  ``sum(c_i * p**i)`` of their non-leading coefficients;
* the generator is the least element (same integer encoding) whose
  multiplicative order is ``p**k - 1``.

Elements are plain ``int`` indices in ``range(p**k)``; the base-p digits
of the index are the coordinates with respect to the power basis
``1, x, ..., x**(k-1)``.  The prime subfield therefore occupies indices
``0..p-1``, and serialized coordinate vectors are just the digit lists.

For moderate fields (q up to 2**18) the context precomputes generator
power tables and a table of logarithms of successors, making
multiplication, inversion, discrete logs and root extraction O(1) lookups.
Larger fields fall back to polynomial arithmetic and baby-step/giant-step
logarithms, which stays practical up to q around 2**30.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import (
    DivisionByZero,
    DlogOfZero,
    NoRootInField,
    NotPrime,
    OrderNotAvailable,
)

_TABLE_LIMIT = 1 << 18


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# -- dense polynomial helpers over GF(p), coefficients low-to-high --------


def _poly_trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _poly_mulmod(a, b, mod, p):
    """a*b reduced by the monic polynomial ``mod``, over GF(p)."""
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    res[i + j] = (res[i + j] + ai * bj) % p
    deg = len(mod) - 1
    for i in range(len(res) - 1, deg - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(deg):
                res[i - deg + j] = (res[i - deg + j] - c * mod[j]) % p
    return _poly_trim(res)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = _poly_mulmod(a, [1], mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        monic_b = [(c * inv_lead) % p for c in b]
        r = list(a)
        while len(r) >= len(monic_b) and _poly_trim(r):
            r = _poly_trim(r)
            if len(r) < len(monic_b):
                break
            c = r[-1]
            shift = len(r) - len(monic_b)
            for j, mc in enumerate(monic_b):
                r[shift + j] = (r[shift + j] - c * mc) % p
            r = _poly_trim(r)
        a, b = monic_b, _poly_trim(r)
    return a


def _is_irreducible(mod, p, k):
    """Rabin's test for a monic degree-k polynomial over GF(p)."""
    if mod[0] == 0 and k > 1:
        return False  # divisible by x
    x = [0, 1]
    xp = x
    powers = {}
    for j in range(1, k + 1):
        xp = _poly_powmod(xp, p, mod, p)
        powers[j] = xp
    # x**(p**k) == x (mod f)
    if _poly_trim([(a - b) % p for a, b in _zip_pad(powers[k], x)]):
        return False
    for ell in _prime_factors(k):
        h = [(a - b) % p for a, b in _zip_pad(powers[k // ell], x)]
        g = _poly_gcd(h, mod, p)
        if len(g) != 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        coeffs = []
        m = n
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        mod = coeffs + [1]
        if _is_irreducible(mod, p, k):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """One concrete model of GF(p^k).  Build through :func:`build_field`."""

    __slots__ = ("p", "k", "q", "modulus", "gen", "_exp", "_log", "_zech")

    def __init__(self, p: int, k: int):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = _least_irreducible(p, k)
        self._exp = None
        self._log = None
        self._zech = None
        self.gen = self._find_generator()
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers ---------------------------------------------

    def _find_generator(self) -> int:
        q1 = self.q - 1
        factors = _prime_factors(q1)
        for cand in range(2, self.q):
            if all(self._pow_generic(cand, q1 // f) != 1 for f in factors):
                return cand
        if self.q == 2:
            return 1
        raise AssertionError("no generator found")  # pragma: no cover

    def _build_tables(self):
        q1 = self.q - 1
        exp = [0] * (2 * q1)
        cur = 1
        for i in range(q1):
            exp[i] = cur
            exp[i + q1] = cur
            cur = self._mul_generic(cur, self.gen)
        log = [-1] * self.q
        for i in range(q1):
            log[exp[i]] = i
        zech = [log[self._add_digits(exp[d], 1)] for d in range(q1)]
        self._exp = exp
        self._log = log
        self._zech = zech

    # -- coordinate views ---------------------------------------------------

    def coords(self, x: int) -> tuple[int, ...]:
        """Base-p digits of the index: coordinates in the power basis."""
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def from_coords(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.k:
            raise ValueError("coordinate vector longer than the degree")
        x = 0
        for c in reversed(cs):
            x = x * self.p + (c % self.p)
        return x

    def from_int(self, c: int) -> int:
        """Embed an integer as a prime-subfield constant."""
        return c % self.p

    # -- generic (table-free) arithmetic ------------------------------------

    def _add_digits(self, x: int, y: int) -> int:
        p = self.p
        out = 0
        mult = 1
        while x or y:
            out += ((x + y) % p) * mult
            x //= p
            y //= p
            mult *= p
        return out

    def _mul_generic(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        p = self.p
        a = self.coords(x)
        b = self.coords(y)
        res = [0] * (2 * self.k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        res[i + j] = (res[i + j] + ai * bj) % p
        mod = self.modulus
        k = self.k
        for i in range(len(res) - 1, k - 1, -1):
            c = res[i]
            if c:
                res[i] = 0
                for j in range(k):
                    res[i - k + j] = (res[i - k + j] - c * mod[j]) % p
        return self.from_coords(res[:k])

    def _pow_generic(self, x: int, e: int) -> int:
        result = 1
        base = x
        while e:
            if e & 1:
                result = self._mul_generic(result, base)
            base = self._mul_generic(base, base)
            e >>= 1
        return result

    # -- public arithmetic ---------------------------------------------------

    def add(self, x: int, y: int) -> int:
        zech = self._zech
        if zech is None:
            return self._add_digits(x, y)
        if x == 0:
            return y
        if y == 0:
            return x
        log = self._log
        lx = log[x]
        d = log[y] - lx
        if d < 0:
            d += self.q - 1
        t = zech[d]
        return 0 if t < 0 else self._exp[lx + t]

    def neg(self, x: int) -> int:
        p = self.p
        out = 0
        mult = 1
        while x:
            out += (-x % p) * mult
            x //= p
            mult *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        log = self._log
        if log is None:
            return self._mul_generic(x, y)
        if x == 0 or y == 0:
            return 0
        return self._exp[log[x] + log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("cannot invert zero")
        log = self._log
        if log is None:
            return self._pow_generic(x, self.q - 2)
        lx = log[x]
        return self._exp[(self.q - 1 - lx) % (self.q - 1)]

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise DivisionByZero("cannot raise zero to a negative power")
            return 1 if e == 0 else 0
        log = self._log
        if log is not None:
            return self._exp[(log[x] * e) % (self.q - 1)]
        if e < 0:
            return self._pow_generic(self.inv(x), -e)
        return self._pow_generic(x, e)

    # -- logarithms and roots -------------------------------------------------

    def dlog(self, x: int) -> int:
        """Index j with generator**j == x, in ``range(q - 1)``."""
        if x == 0:
            raise DlogOfZero("discrete log of zero")
        if self._log is not None:
            return self._log[x]
        q1 = self.q - 1
        m = math.isqrt(q1) + 1
        table = {}
        cur = 1
        for j in range(m):
            table.setdefault(cur, j)
            cur = self.mul(cur, self.gen)
        step = self.inv(cur)  # generator**(-m)
        gamma = x
        for i in range(m + 1):
            j = table.get(gamma)
            if j is not None:
                return (i * m + j) % q1
            gamma = self.mul(gamma, step)
        raise AssertionError("dlog search failed")  # pragma: no cover

    def element_order(self, x: int) -> int:
        if x == 0:
            raise DlogOfZero("zero has no multiplicative order")
        q1 = self.q - 1
        return q1 // math.gcd(self.dlog(x), q1)

    def pth_root(self, x: int) -> int:
        """The unique y with y**p == x (inverse of Frobenius)."""
        return self.pow(x, self.p ** (self.k - 1)) if x else 0

    def nth_root(self, x: int, n: int) -> int:
        """Canonical n-th root: generator**j' for the least j' solving the
        congruence n*j' == dlog(x) mod (q-1).

        Requires gcd(n, p) == 1.  Raises :class:`NoRootInField` carrying
        the multiplicative orders a bigger field needs when no root exists.
        """
        if n < 1:
            raise ValueError("root index must be >= 1")
        if n % self.p == 0:
            raise ValueError("root index must be coprime to the characteristic")
        if x == 0:
            return 0
        q1 = self.q - 1
        j = self.dlog(x)
        g = math.gcd(n, q1)
        if j % g:
            raise NoRootInField(
                f"{x} has no {n}-th root in GF({self.p}^{self.k})",
                required_extra_orders={n * self.element_order(x)},
            )
        jj = (j // g) * pow(n // g, -1, q1 // g) % (q1 // g)
        return self.pow(self.gen, jj)

    def root_of_unity(self, n: int) -> int:
        """The canonical primitive n-th root of unity, generator**((q-1)/n)."""
        if n < 1:
            raise ValueError("order must be >= 1")
        q1 = self.q - 1
        if q1 % n:
            raise OrderNotAvailable(
                f"mu_{n} is not contained in GF({self.p}^{self.k})", order=n
            )
        return self.pow(self.gen, q1 // n)

    def trace_abs(self, x: int) -> int:
        """Absolute trace down to GF(p), returned as an int in range(p)."""
        acc = 0
        y = x
        for _ in range(self.k):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        if acc >= self.p:  # pragma: no cover - trace always lands in GF(p)
            raise AssertionError("trace left the prime subfield")
        return acc

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldCtx":
        ctx = build_field(int(data["p"]), int(data["k"]))
        mod = data.get("modulus")
        if mod is not None and tuple(mod) != ctx.modulus:
            raise ValueError(
                "serialized modulus does not match the canonical modulus "
                f"{list(ctx.modulus)} for GF({ctx.p}^{ctx.k})"
            )
        return ctx

    def element_to_json(self, x: int) -> list[int]:
        return list(self.coords(x))

    def element_from_json(self, v) -> int:
        if isinstance(v, int):
            return self.from_int(v)
        return self.from_coords(v)

    # -- misc -------------------------------------------------------------------

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.k) == (other.p, other.k)
        )

    def __hash__(self):
        return hash((self.p, self.k))


@lru_cache(maxsize=None)
def build_field(p: int, k: int = 1) -> FieldCtx:
    """Build (and cache) the canonical model of GF(p^k)."""
    return FieldCtx(p, k)


def multiplicative_order(a: int, n: int) -> int:
    """Order of a modulo n, for gcd(a, n) == 1."""
    a %= n
    if math.gcd(a, n) != 1:
        raise ValueError("order undefined: arguments are not coprime")
    t, cur = 1, a
    while cur != 1:
        cur = cur * a % n
        t += 1
    return t


def suggest_degree(p: int, orders) -> int:
    """Least k such that GF(p^k) contains mu_N for every N in ``orders``.

    Equivalently, lcm over N of the multiplicative order of p mod N.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    k = 1
    for n in orders:
        n = int(n)
        if n < 1:
            raise ValueError("orders must be positive")
        if n == 1:
            continue
        if math.gcd(n, p) != 1:
            raise ValueError(f"order {n} is not coprime to the characteristic {p}")
        k = math.lcm(k, multiplicative_order(p, n))
    return k
