"""Self-verification suites.

One callable per acceptance criterion, each returning ``(ok, detail)``.
The CLI ``verify`` subcommand and the acceptance tests drive the exact
same code, so the package judges itself identically everywhere.

All randomness is seeded: reruns are bit-for-bit reproducible.
"""

from __future__ import annotations

import math
import random
import time
from itertools import combinations_with_replacement

import numpy as np

from . import hyper, numeric, series, symbol, transform
from .field import build_field, suggest_degree
from .symbol import CHI2, TRIVIAL_CHAR, LocalSheaf, Point, Summand, WildPart, tame_char
from .transform import TransformKind

_PRIMES = (7, 11, 13, 17)


# ---------------------------------------------------------------------------
# instance generators


def _random_char(rng, orders, nontrivial=False):
    pool = [d for d in orders if d > 1] if nontrivial else list(orders)
    order = rng.choice(pool)
    if order == 1:
        return TRIVIAL_CHAR
    exps = [a for a in range(1, order) if math.gcd(a, order) == 1]
    return tame_char(order, rng.choice(exps))


def _char_orders(ctx, top=6):
    return [d for d in range(1, top + 1) if (ctx.q - 1) % d == 0 and d % ctx.p]


def _rooted_leading_coeff(rng, ctx, r, s, e, sign):
    """A leading coefficient a with sign*(s/r)*a a perfect e-th power.

    Drawing a = sign*(r/s)*c**e for uniform c != 0 makes the canonical
    branch root c available in-field, so the pipeline never needs a
    further extension.
    """
    c = rng.randrange(1, ctx.q)
    a = ctx.mul(ctx.mul(ctx.from_int(r), ctx.inv(ctx.from_int(s))), ctx.pow(c, e))
    return ctx.neg(a) if sign < 0 else a


def _pad_lower_terms(rng, ctx, terms, s):
    """Sprinkle random admissible terms below the leading exponent."""
    for exp in range(-s + 1, 0):
        if exp % ctx.p and rng.random() < 0.4:
            terms[exp] = rng.randrange(1, ctx.q)
    return terms


def _draw_transform_instance(rng, kind, primes=_PRIMES, max_rs=6, all_branches=False):
    """(ctx, alpha, r) admissible for ``kind`` with an in-field branch root.

    The leading coefficient is drawn as sign*(r/s)*c**e, so its canonical
    e-th root lives in any field containing c and the prime field is big
    enough for a branch-0 solve.  ``all_branches`` sizes the field to hold
    mu_e instead, for callers that rotate through every root branch or
    canonicalize rank-e output summands.
    """
    while True:
        p = rng.choice(primes)
        r = rng.randint(1, max_rs)
        if kind is TransformKind.INF_TO_INF:
            s = rng.randint(r + 1, max(r + 1, max_rs + 1))
        elif kind is TransformKind.INF_TO_ZERO:
            if r < 2:
                continue
            s = rng.randint(1, r - 1)
        else:
            s = rng.randint(1, max_rs)
        e = transform.output_degree(kind, r, s)
        if r % p == 0 or s % p == 0 or s >= p or e % p == 0:
            continue
        ctx = build_field(p, suggest_degree(p, {e}) if all_branches else 1)
        sign = 1 if kind is TransformKind.ZERO_TO_INF else -1
        a = _rooted_leading_coeff(rng, ctx, r, s, e, sign)
        terms = _pad_lower_terms(rng, ctx, {-s: a}, s)
        return ctx, WildPart(ctx, terms), r


# ---------------------------------------------------------------------------
# criterion 1: closed form of the leading output coefficient


def _prime_pool(primes, default):
    if primes is None:
        return tuple(default)
    pool = tuple(p for p in default if p in primes)
    return pool or tuple(default)


def check_legendre_closed_form(count=50, seed=0xA11CE, primes=None):
    rng = random.Random(seed)
    pool = _prime_pool(primes, _PRIMES)
    # drawing instances builds (cached, one-off) field tables; keep that
    # setup outside the timed window, which covers the actual solves
    instances = [
        _draw_transform_instance(rng, TransformKind.ZERO_TO_INF, primes=pool)
        for _ in range(count)
    ]
    start = time.monotonic()
    for ctx, alpha, r in instances:
        s = alpha.depth
        e = r + s
        a = alpha.as_dict()[-s]
        sol = transform.legendre(alpha, r, TransformKind.ZERO_TO_INF)
        lam0 = ctx.nth_root(
            ctx.mul(ctx.mul(ctx.from_int(s), a), ctx.inv(ctx.from_int(r))), e
        )
        want = ctx.mul(
            ctx.mul(a, ctx.add(1, ctx.mul(ctx.from_int(s), ctx.inv(ctx.from_int(r))))),
            ctx.inv(ctx.pow(lam0, s)),
        )
        got = sol.beta.as_dict().get(-s)
        if got != want:
            return False, (
                f"leading coefficient mismatch over {ctx}: r={r} s={s} "
                f"a={a}: expected {want}, got {got}"
            )
    elapsed = time.monotonic() - start
    ok = elapsed < 1.0
    return ok, (
        f"{count} instances, leading coefficient exact; "
        f"{elapsed:.2f}s {'within' if ok else 'OVER'} the 1s budget"
    )


# ---------------------------------------------------------------------------
# criterion 2: the recursion reproduces the one-sided wild block


def check_kloosterman_recursion(seed=0xBEE, primes=None):
    rng = random.Random(seed)
    start = time.monotonic()
    tried = 0
    for p in _prime_pool(primes, (7, 11, 13)):
        ctx = build_field(p, suggest_degree(p, {60}))
        orders = _char_orders(ctx)
        for n in range(2, 6):
            char_lists = [tuple([TRIVIAL_CHAR] * n)]
            char_lists.append(tuple(_random_char(rng, orders) for _ in range(n)))
            for lams in char_lists:
                spec = hyper.HypSpec(lams, [])
                got = hyper.hyp_local_recursive(ctx, spec)
                chi = TRIVIAL_CHAR
                for lam in lams:
                    chi = chi * lam
                chi = chi * CHI2 ** ((n - 1) % 2)
                expect = LocalSheaf(
                    Point.INFINITY,
                    [Summand(Point.INFINITY, n, WildPart(ctx, {-1: n % p}), chi, 1)],
                )
                if not symbol.equal(got.atInf, expect):
                    return False, (
                        f"recursion vs one-sided closed form diverge at "
                        f"n={n}, p={p}, chars={lams}"
                    )
                closed = hyper.hyp_local(ctx, spec)
                if not hyper.local_data_equal(got, closed):
                    return False, f"recursion vs full closed form diverge at n={n}, p={p}"
                tried += 1
    elapsed = time.monotonic() - start
    ok = elapsed < 5.0
    return ok, (
        f"{tried} towers reproduced exactly; "
        f"{elapsed:.2f}s {'within' if ok else 'OVER'} the 5s budget"
    )


# ---------------------------------------------------------------------------
# criterion 3: slope windows that must die


def check_zero_cases(count=100, seed=0xDEAD, primes=None):
    rng = random.Random(seed)
    pool = _prime_pool(primes, (7, 11, 13))
    for i in range(count):
        p = rng.choice(pool)
        ctx = build_field(p, rng.choice((1, 2)))
        if i % 2 == 0:
            kind = TransformKind.INF_TO_INF
            r = rng.randint(1, 6)
            s = rng.randint(1, r)  # s <= r
        else:
            kind = TransformKind.INF_TO_ZERO
            r = rng.randint(1, 6)
            s = rng.randint(r, min(p - 1, r + 4))  # s >= r
        if r % p == 0 or s % p == 0:
            continue
        terms = _pad_lower_terms(rng, ctx, {-s: rng.randrange(1, ctx.q)}, s)
        smd = Summand(
            Point.INFINITY,
            r,
            WildPart(ctx, terms),
            _random_char(rng, _char_orders(ctx)),
            rng.randint(1, 3),
        )
        if transform.transform_summand(smd, kind) is not None:
            return False, f"summand with r={r}, s={s} survived {kind.value}"
        if len(transform.lft(LocalSheaf(Point.INFINITY, [smd]), kind)) != 0:
            return False, f"sheaf-level {kind.value} not empty for r={r}, s={s}"
    return True, f"{count} summands in the dead slope window all map to 0"


# ---------------------------------------------------------------------------
# criterion 4: the reversed stationary-phase system recovers the input


def reverse_legendre(sol, r):
    """Recover the source polar data from an output of the 0 -> infinity
    transform by solving the reversed critical system.

    Differentiating the critical identity kills the composed inner terms,
    leaving  m(u')**r = -u'**(e+1) beta'(u') / e  --  solve the r-th root,
    align the branch with the forward leading coefficient, revert, and
    substitute back.
    """
    beta = sol.beta_raw
    ctx = beta.ctx
    e = sol.exponent_out
    msr = series.derive(beta).shift(e + 1).scale(ctx.neg(ctx.inv(ctx.from_int(e))))
    m = series.nth_root_series(msr, r)
    lam0 = sol.lam.coeff(sol.lam.val)
    m = m.scale(ctx.mul(lam0, ctx.inv(m.coeff(m.val))))
    w = series.reversion(m)
    kernel = series.monomial(ctx, 1, r) * series.invert(w) ** e
    return series.compose(beta, w) - kernel


def check_involutivity(count=50, seed=0xF00D, primes=None):
    rng = random.Random(seed)
    pool = _prime_pool(primes, _PRIMES)
    for _ in range(count):
        ctx, alpha, r = _draw_transform_instance(
            rng, TransformKind.ZERO_TO_INF, primes=pool
        )
        sol = transform.legendre(alpha, r, TransformKind.ZERO_TO_INF)
        recovered = reverse_legendre(sol, r)
        target = alpha.to_series()
        if recovered.prec < 0:
            return False, f"reversed system underflowed (prec {recovered.prec})"
        if any(recovered.coeff(j) != target.coeff(j) for j in range(-alpha.depth, 0)):
            return False, (
                f"reversed system did not recover the polar part over {ctx}: "
                f"r={r}, alpha={alpha}"
            )
    return True, f"{count} round trips recovered the source polar part exactly"


# ---------------------------------------------------------------------------
# criterion 5: descent along the stabilizer commutes with the transform


def check_descent(count=30, seed=0x5EED, primes=None):
    rng = random.Random(seed)
    pool = _prime_pool(primes, (7, 11, 13))
    done = 0
    while done < count:
        p = rng.choice(pool)
        d = rng.choice((2, 3))
        r1 = rng.randint(1, 3)
        s1 = rng.randint(1, 3)
        r, s = d * r1, d * s1
        e = r + s
        if r % p == 0 or s % p == 0 or s >= p or e % p == 0:
            continue
        ctx = build_field(p, suggest_degree(p, {e}))
        a = _rooted_leading_coeff(rng, ctx, r, s, e, 1)
        # keep every exponent divisible by d so the stabilizer is >= d
        core_terms = {-s1: a}
        for exp in range(-s1 + 1, 0):
            if (exp * d) % p and rng.random() < 0.5:
                core_terms[exp] = rng.randrange(1, ctx.q)
        alpha = WildPart(ctx, {exp * d: c for exp, c in core_terms.items()})
        chi = _random_char(rng, _char_orders(ctx))
        smd = Summand(Point.ZERO, r, alpha, chi, rng.randint(1, 2))
        if symbol.stabilizer(smd) != d:
            continue

        direct = transform.legendre(alpha, r, TransformKind.ZERO_TO_INF)
        core = symbol.descend(smd, d)
        e0 = e // d
        # t'_direct(u)**d = zeta * t'_core(u**d) for some zeta in mu_{e0},
        # so exactly one core branch reproduces beta_direct = beta_core(u'**d)
        matched = None
        for b in range(e0):
            cand = transform.legendre(
                core.alpha, core.r, TransformKind.ZERO_TO_INF, branch=b
            )
            if series.agree(
                series.polar_part(direct.beta_raw),
                series.substitute_power(series.polar_part(cand.beta_raw), d),
                upto=0,
            ):
                matched = cand
                break
        if matched is None:
            return False, f"no core branch matches the direct solution (d={d}, r={r}, s={s})"

        via_descent = transform.transform_summand(smd, TransformKind.ZERO_TO_INF)
        direct_polar, _ = symbol.as_reduce(ctx, series.polar_part(direct.beta_raw))
        via_direct = symbol.canonicalize(
            Summand(Point.INFINITY, e, direct_polar, chi.inverse() * CHI2**s, smd.unip)
        )
        if via_descent != via_direct:
            return False, f"descend-then-transform differs from direct path (d={d}, r={r}, s={s})"
        if symbol.stabilizer(via_descent) != d:
            return False, (
                f"stabilizer not transported: input {d}, "
                f"output {symbol.stabilizer(via_descent)}"
            )
        done += 1
    return True, f"{count} instances: descent path == direct path, stabilizer preserved"


# ---------------------------------------------------------------------------
# criterion 6: rank and Swan accounting


def check_rank_laws(count=100, seed=0xCAFE, primes=None):
    rng = random.Random(seed)
    pool = _prime_pool(primes, _PRIMES)
    for i in range(count):
        kind = (
            TransformKind.ZERO_TO_INF,
            TransformKind.INF_TO_INF,
            TransformKind.INF_TO_ZERO,
        )[i % 3]
        if kind is TransformKind.ZERO_TO_INF:
            # mixed sheaf: a couple of wild blocks plus nontrivial tame ones
            ctx, alpha, r = _draw_transform_instance(
                rng, kind, primes=pool, all_branches=True
            )
            orders = _char_orders(ctx)
            summands = [
                Summand(Point.ZERO, r, alpha, _random_char(rng, orders), rng.randint(1, 2))
            ]
            for _ in range(rng.randint(0, 2)):
                summands.append(
                    Summand(
                        Point.ZERO,
                        1,
                        WildPart(ctx, {}),
                        _random_char(rng, orders, nontrivial=True),
                        rng.randint(1, 3),
                    )
                )
            sheaf = LocalSheaf(Point.ZERO, summands)
        else:
            ctx, alpha, r = _draw_transform_instance(
                rng, kind, primes=pool, all_branches=True
            )
            smd = Summand(
                Point.INFINITY,
                r,
                alpha,
                _random_char(rng, _char_orders(ctx)),
                rng.randint(1, 3),
            )
            sheaf = LocalSheaf(Point.INFINITY, [smd])
        out = transform.lft(sheaf, kind)
        if not transform.rank_law_check(sheaf, out, kind):
            return False, f"rank law broken for {kind.value}: in={sheaf!r} out={out!r}"
        if kind is not TransformKind.ZERO_TO_INF:
            expect_r = transform.output_degree(kind, r, alpha.depth)
            if [img.r for img in out] != [expect_r]:
                return False, f"per-summand output degree wrong for {kind.value}"
    return True, f"{count} sheaves satisfy the rank/Swan laws"


# ---------------------------------------------------------------------------
# criterion 7: numeric identity suite


def _trace_specs(chars, max_weight):
    for n in range(max_weight + 1):
        for m in range(max_weight + 1 - n):
            if n + m == 0:
                continue
            for lams in combinations_with_replacement(chars, n):
                for rhos in combinations_with_replacement(chars, m):
                    if set(lams) & set(rhos):
                        continue
                    yield hyper.HypSpec(lams, rhos)


def _check_trace_identity(ev, spec, tol=1e-6):
    table = numeric.hyp_trace_recursive(ev, spec)
    sign = (-1) ** (spec.n + spec.m)
    for t in range(1, ev.ctx.q):
        want = sign * numeric.hyp_sum(ev, t, spec)
        err = abs(table[t] - want) / max(1.0, abs(want))
        if err > tol:
            return err
    return None


def check_numeric_suite(seed=0xACC, primes=None):
    # the field list here is part of the contract; a prime filter is ignored
    start = time.monotonic()
    rng = random.Random(seed)

    # additive/multiplicative orthogonality and Gauss magnitude
    for p, k in ((3, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (7, 2)):
        ctx = build_field(p, k)
        ev = numeric.CharEval(ctx)
        if abs(ev.psi_table.sum()) > 1e-9:
            return False, f"psi does not sum to zero over {ctx}"
        for order in range(2, 9):
            if (ctx.q - 1) % order:
                continue
            g = numeric.gauss_sum(ev, tame_char(order, 1))
            if abs(abs(g) - math.sqrt(ctx.q)) > 1e-9:
                return False, f"|gauss| != sqrt(q) for order {order} over {ctx}"

    # double Fourier transform law
    for p, k in ((7, 1), (13, 1), (3, 2)):
        ctx = build_field(p, k)
        ev = numeric.CharEval(ctx)
        vals = np.array(
            [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(ctx.q)]
        )
        twice = numeric.ft_trace(ev, numeric.ft_trace(ev, numeric.TraceTable(ctx, vals)))
        expect = np.array([ctx.q * vals[ctx.neg(x)] for x in range(ctx.q)])
        if np.max(np.abs(twice.values - expect)) > 1e-9:
            return False, f"double transform law fails over {ctx}"

    # trace of the recursion vs the brute-force sum, exhaustive on the
    # small fields and deterministically sampled on the larger ones
    plans = [
        ((7, 1), None),  # exhaustive
        ((13, 1), None),  # exhaustive
        ((5, 2), 150),
        ((7, 2), 50),
    ]
    checked = 0
    for (p, k), budget in plans:
        ctx = build_field(p, k)
        ev = numeric.CharEval(ctx)
        orders = [d for d in range(1, 7) if (ctx.q - 1) % d == 0]
        chars = []
        for d in orders:
            chars.extend(
                tame_char(d, a) for a in range(d) if math.gcd(a, d) == 1 or d == 1
            )
        specs = list(_trace_specs(chars, 4))
        if budget is not None and len(specs) > budget:
            specs = rng.sample(specs, budget)
        for spec in specs:
            err = _check_trace_identity(ev, spec)
            if err is not None:
                return False, (
                    f"trace recursion off by {err:.2e} over {ctx} for "
                    f"{spec.lambdas} | {spec.rhos}"
                )
            checked += 1
    elapsed = time.monotonic() - start
    ok = elapsed < 30.0
    return ok, (
        f"orthogonality, Gauss magnitude, double-transform law, and "
        f"{checked} trace identities hold; "
        f"{elapsed:.1f}s {'within' if ok else 'OVER'} the 30s budget"
    )


# ---------------------------------------------------------------------------
# criterion 8: additive reduction soundness


def check_as_soundness(count=100, seed=0xA5, primes=None):
    # fixed field pair by contract; a prime filter is ignored
    rng = random.Random(seed)
    fields = [build_field(3, 2), build_field(7, 1)]
    for i in range(count):
        ctx = fields[i % 2]
        p = ctx.p
        raw = {}
        for exp in range(-(p - 1), 0):
            if rng.random() < 0.5:
                raw[exp] = rng.randrange(1, ctx.q)
        for j in range(1, 4):
            if rng.random() < 0.5:
                raw[-p * j] = rng.randrange(1, ctx.q)
        if not raw:
            raw = {-1: 1}
        alpha, witness = symbol.as_reduce(ctx, raw)
        raw_series = series.from_terms(ctx, raw)
        diff = (witness**p - witness) - (raw_series - alpha.to_series())
        if not (diff.is_zero or diff.val >= 0):
            return False, f"witness identity fails over {ctx} for raw={raw}"
        again, wit2 = symbol.as_reduce(ctx, alpha.as_dict())
        if again != alpha or not wit2.is_zero:
            return False, f"reduction not idempotent over {ctx} for raw={raw}"
    return True, f"{count} reductions: witness identity exact, idempotent"


# ---------------------------------------------------------------------------
# criterion 9: output does not depend on the root branch


def check_branch_independence(count=20, seed=0xB0B, primes=None):
    rng = random.Random(seed)
    pool = _prime_pool(primes, _PRIMES)
    done = 0
    while done < count:
        ctx, alpha, r = _draw_transform_instance(
            rng, TransformKind.ZERO_TO_INF, primes=pool, all_branches=True
        )
        s = alpha.depth
        e = r + s
        if e < 2:
            continue
        chi = _random_char(rng, _char_orders(ctx))
        chi_out = chi.inverse() * CHI2**s
        images = set()
        for b in range(e):
            sol = transform.legendre(alpha, r, TransformKind.ZERO_TO_INF, branch=b)
            images.add(
                symbol.canonicalize(Summand(Point.INFINITY, e, sol.beta, chi_out, 1))
            )
        if len(images) != 1:
            return False, f"{len(images)} distinct canonical outputs across branches (r={r}, s={s})"
        done += 1
    return True, f"{count} instances: all root branches canonicalize identically"


# ---------------------------------------------------------------------------
# suite runner


ALL_CHECKS = {
    "legendre-closed-form": check_legendre_closed_form,
    "kloosterman-recursion": check_kloosterman_recursion,
    "zero-cases": check_zero_cases,
    "involutivity": check_involutivity,
    "descent": check_descent,
    "rank-laws": check_rank_laws,
    "numeric": check_numeric_suite,
    "as-reduction": check_as_soundness,
    "branch-independence": check_branch_independence,
}


def resolve_suite(name: str) -> str:
    """Accept an exact suite name or a unique prefix of one."""
    if name in ALL_CHECKS:
        return name
    hits = [n for n in ALL_CHECKS if n.startswith(name)]
    if len(hits) != 1:
        raise KeyError(
            f"unknown suite {name!r}; choose from {', '.join(sorted(ALL_CHECKS))}"
        )
    return hits[0]


def run_suites(names=None, primes=None) -> dict:
    """Run the named suites (all by default); returns a JSON-ready report.

    ``primes`` restricts the instance generators of the suites that draw
    their prime at random; suites whose field list is pinned ignore it.
    """
    names = list(ALL_CHECKS) if names is None else [resolve_suite(n) for n in names]
    results = []
    for name in names:
        ok, detail = ALL_CHECKS[name](primes=primes)
        results.append({"suite": name, "ok": bool(ok), "detail": detail})
    return {"ok": all(r["ok"] for r in results), "results": results}
