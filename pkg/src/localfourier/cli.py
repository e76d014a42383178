"""Command-line front end.

Subcommands
-----------
lft       transform a whole local symbol between 0 and infinity
legendre  solve the stationary-phase system for a single wild part
hyp       local monodromy data of a hypergeometric system
sum       brute-force exponential sums over a concrete finite field
verify    run the self-verification suites

Results go to stdout as JSON; logs go to stderr.  Exit codes:
0 success, 2 violated hypothesis, 3 field extension needed,
4 verification failure, 64 usage error.
"""

from __future__ import annotations

import json
import logging
import sys

import click

from . import checks, hyper, numeric, transform
from .errors import (
    DepthTooLarge,
    DisjointnessViolated,
    EngineError,
    HypothesisViolation,
    NoRootInField,
    NotPrime,
    OrderNotAvailable,
    SmallCharacteristic,
    UnsupportedTameTrivial,
)
from .field import build_field, suggest_degree
from .symbol import LocalSheaf, WildPart, tame_char
from .transform import TransformKind

log = logging.getLogger("localfourier")

_KINDS = {k.value: k for k in TransformKind}

_HYPOTHESIS_ERRORS = (
    HypothesisViolation,
    UnsupportedTameTrivial,
    DepthTooLarge,
    SmallCharacteristic,
    DisjointnessViolated,
)
_EXTENSION_ERRORS = (NoRootInField, OrderNotAvailable)

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_EXTENSION = 3
EXIT_VERIFY = 4
EXIT_USAGE = 64


def _emit(doc: dict):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _load_doc(infile, inline):
    if (infile is None) == (inline is None):
        raise click.UsageError("provide exactly one of --in or --json")
    if inline is not None:
        text = inline
    elif infile == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(infile, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise click.UsageError(f"cannot read {infile}: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"input is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise click.UsageError("input JSON must be an object")
    return doc


def _alpha_entries(doc):
    """All [exponent, coefficient] pairs appearing in the document."""
    pairs = list(doc.get("alpha", []))
    for smd in doc.get("summands", []):
        pairs.extend(smd.get("alpha", []))
    return pairs


def _field_plan(p, k_opt, doc, demands):
    """Decide the starting degree and whether auto-resizing is allowed.

    Coefficients given as coordinate vectors pin the degree (their length);
    plain integers are prime-field constants and survive any resize.
    """
    lengths = {len(c) for _, c in _alpha_entries(doc) if isinstance(c, list)}
    if len(lengths) > 1:
        raise click.UsageError("coefficient coordinate vectors have mixed lengths")
    inferred = lengths.pop() if lengths else None
    if inferred is not None and k_opt is not None and inferred != k_opt:
        raise click.UsageError(
            f"--k {k_opt} contradicts coordinate vectors of length {inferred}"
        )
    fixed = k_opt if k_opt is not None else inferred
    orders = {int(d) for d in demands if d and int(d) > 0 and int(d) % p}
    if fixed is not None:
        return fixed, orders, False
    return suggest_degree(p, orders) if orders else 1, orders, True


def _with_field(p, k, orders, repairable, compute):
    """Run ``compute(ctx)``, growing the field on demand when allowed.

    A missing root or a missing root of unity reports which extra element
    orders the field must contain; fold them into the demand set and ask
    suggest_degree again.  Adding p**k - 1 keeps the previous field inside
    the new one, so the (prime-field) input means the same thing.
    """
    last = None
    for _ in range(7):
        ctx = build_field(p, k)
        try:
            return ctx, compute(ctx)
        except _EXTENSION_ERRORS as exc:
            if not repairable:
                raise
            if isinstance(exc, NoRootInField):
                need = {n for n in exc.required_extra_orders if n > 1 and n % p}
            else:
                order = getattr(exc, "order", None) or 0
                need = {order} if order > 1 and order % p else set()
            if not need:
                raise
            orders |= need
            orders.add(p**k - 1)
            new_k = suggest_degree(p, orders)
            if new_k <= k:
                raise
            log.info("growing GF(%d^%d) -> GF(%d^%d): %s", p, k, p, new_k, exc)
            k, last = new_k, exc
    raise last


def _field_meta(ctx, auto):
    return {
        "p": ctx.p,
        "k": ctx.k,
        "q": ctx.q,
        "modulus": list(ctx.modulus),
        "auto_k": bool(auto),
    }


_POINT_ALIASES = {"0": "zero", "zero": "zero", "inf": "infinity", "infinity": "infinity"}


def _parse_chars(doc, key):
    out = []
    for c in doc.get(key, []):
        out.append(tame_char(int(c["order"]), int(c["exp"])))
    return out


def _complex_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


# ---------------------------------------------------------------------------


@click.group(name="localfourier")
@click.option("-v", "--verbose", is_flag=True, help="chatty logs on stderr")
def cli(verbose):
    """Exact local Fourier transforms of wild inertia symbols over GF(p^k)."""
    log.setLevel(logging.DEBUG if verbose else logging.INFO)


_in_opt = click.option("--in", "infile", default=None, help="input JSON path, - for stdin")
_json_opt = click.option("--json", "inline", default=None, help="inline input JSON text")
_p_opt = click.option("--p", "p", type=int, required=True, help="field characteristic")
_k_opt = click.option(
    "--k", "k_opt", type=int, default=None, help="extension degree (default: sized automatically)"
)


@cli.command("lft")
@click.option("--kind", type=click.Choice(sorted(_KINDS)), required=True)
@_p_opt
@_k_opt
@_in_opt
@_json_opt
def cmd_lft(kind, p, k_opt, infile, inline):
    """Transform a local symbol: {"point": ..., "summands": [...]}"""
    kind = _KINDS[kind]
    doc = _load_doc(infile, inline)
    point = _POINT_ALIASES.get(str(doc.get("point", "")).lower())
    if point != kind.source.value:
        raise click.UsageError(
            f"kind {kind.value} consumes symbols at '{kind.source.value}', "
            f"input lives at {doc.get('point')!r}"
        )
    doc = dict(doc, point=point)
    demands = {2}
    for smd in doc.get("summands", []):
        r = int(smd.get("r", 1))
        demands.add(r)
        if "chi" in smd:
            demands.add(int(smd["chi"].get("order", 1)))
        depth = max((-int(e) for e, _ in smd.get("alpha", [])), default=0)
        if depth:
            e_out = transform.output_degree(kind, r, depth)
            if e_out > 0:
                demands.add(e_out)
    k0, orders, auto = _field_plan(p, k_opt, doc, demands)

    def compute(ctx):
        sheaf = LocalSheaf.from_json(ctx, doc)
        out = transform.lft(sheaf, kind)
        return {
            "input": sheaf.to_json(),
            "result": out.to_json(),
            "rank": out.rank,
            "swan": out.swan,
        }

    ctx, body = _with_field(p, k0, orders, auto, compute)
    _emit({"field": _field_meta(ctx, auto), "kind": kind.value, **body})


@cli.command("legendre")
@click.option("--kind", type=click.Choice(sorted(_KINDS)), required=True)
@_p_opt
@_k_opt
@click.option("--branch", type=int, default=0, help="which e-th root branch")
@click.option("--prec", type=int, default=None, help="working slots override")
@_in_opt
@_json_opt
def cmd_legendre(kind, p, k_opt, branch, prec, infile, inline):
    """Stationary-phase data for one wild part: {"r": ..., "alpha": [[e,c],...]}"""
    kind = _KINDS[kind]
    doc = _load_doc(infile, inline)
    r = int(doc.get("r", 1))
    depth = max((-int(e) for e, _ in doc.get("alpha", [])), default=0)
    demands = {2, r}
    e_out = transform.output_degree(kind, r, depth) if depth else 0
    if e_out > 0:
        demands.add(e_out)
    k0, orders, auto = _field_plan(p, k_opt, doc, demands)

    def compute(ctx):
        alpha = WildPart.from_json(ctx, doc.get("alpha", []))
        sol = transform.legendre(alpha, r, kind, prec=prec, branch=branch)
        return {
            "input": {"r": r, "alpha": alpha.to_json()},
            "result": {
                "lam": sol.lam.to_json(),
                "mu": sol.mu.to_json(),
                "beta": sol.beta.to_json(),
                "beta_raw": sol.beta_raw.to_json(),
                "branch": sol.branch,
                "exponent_out": sol.exponent_out,
            },
        }

    ctx, body = _with_field(p, k0, orders, auto, compute)
    _emit({"field": _field_meta(ctx, auto), "kind": kind.value, **body})


@cli.command("hyp")
@_p_opt
@_k_opt
@click.option(
    "--mode",
    type=click.Choice(["closed", "recursive"]),
    default="closed",
    show_default=True,
)
@_in_opt
@_json_opt
def cmd_hyp(p, k_opt, mode, infile, inline):
    """Local monodromy of a system: {"lambdas": [...], "rhos": [...]}"""
    doc = _load_doc(infile, inline)
    lams, rhos = _parse_chars(doc, "lambdas"), _parse_chars(doc, "rhos")
    spec = hyper.HypSpec(lams, rhos)
    top = max(spec.n, spec.m)
    demands = {2, *(c.order for c in lams + rhos), *range(1, top + 1)}
    k0, orders, auto = _field_plan(p, k_opt, doc, demands)

    def compute(ctx):
        fn = hyper.hyp_local if mode == "closed" else hyper.hyp_local_recursive
        data = fn(ctx, spec)
        return {
            "input": {
                "lambdas": [c.to_json() for c in spec.lambdas],
                "rhos": [c.to_json() for c in spec.rhos],
            },
            "mode": mode,
            "result": data.to_json(),
        }

    ctx, body = _with_field(p, k0, orders, auto, compute)
    _emit({"field": _field_meta(ctx, auto), **body})


@cli.command("sum")
@_p_opt
@_k_opt
@click.option("--t", "t_opt", type=int, default=None, help="element index; all of 1..q-1 if omitted")
@click.option(
    "--method",
    type=click.Choice(["brute", "recursive", "both"]),
    default="brute",
    show_default=True,
)
@_in_opt
@_json_opt
def cmd_sum(p, k_opt, t_opt, method, infile, inline):
    """Exponential sums of a system: {"lambdas": [...], "rhos": [...]}"""
    doc = _load_doc(infile, inline)
    lams, rhos = _parse_chars(doc, "lambdas"), _parse_chars(doc, "rhos")
    spec = hyper.HypSpec(lams, rhos)
    demands = {2, *(c.order for c in lams + rhos)}
    k0, orders, auto = _field_plan(p, k_opt, doc, demands)

    def compute(ctx):
        if t_opt is not None and not 1 <= t_opt < ctx.q:
            raise click.UsageError(f"--t must lie in 1..{ctx.q - 1} for GF({ctx.p}^{ctx.k})")
        ev = numeric.CharEval(ctx)
        ts = [t_opt] if t_opt is not None else list(range(1, ctx.q))
        sign = (-1) ** (spec.n + spec.m)
        rec = None
        if method in ("recursive", "both"):
            rec = numeric.hyp_trace_recursive(ev, spec)
        rows = []
        worst = 0.0
        for t in ts:
            row = {"t": t}
            if method in ("brute", "both"):
                row["brute"] = _complex_json(numeric.hyp_sum(ev, t, spec))
            if rec is not None:
                row["recursive"] = _complex_json(sign * rec[t])
            if method == "both":
                worst = max(
                    worst,
                    abs(complex(row["brute"]["re"], row["brute"]["im"])
                        - complex(row["recursive"]["re"], row["recursive"]["im"])),
                )
            rows.append(row)
        body = {
            "input": {
                "lambdas": [c.to_json() for c in spec.lambdas],
                "rhos": [c.to_json() for c in spec.rhos],
            },
            "method": method,
            "normalization": "plain exponential sum",
            "values": rows,
        }
        if method == "both":
            body["max_abs_diff"] = worst
        return body

    ctx, body = _with_field(p, k0, orders, auto, compute)
    _emit({"field": _field_meta(ctx, auto), **body})


@cli.command("verify")
@click.option("--suite", "suites", multiple=True, help="suite name or unique prefix; repeatable")
@click.option("--p", "p", type=int, default=None, help="restrict randomized suites to this prime")
def cmd_verify(suites, p):
    """Run the self-verification suites and report pass/fail."""
    try:
        names = [checks.resolve_suite(s) for s in suites] or None
    except KeyError as exc:
        raise click.UsageError(str(exc.args[0]))
    report = checks.run_suites(names, primes=(p,) if p else None)
    for row in report["results"]:
        log.info("%s %s: %s", "PASS" if row["ok"] else "FAIL", row["suite"], row["detail"])
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        rv = cli.main(args=argv, standalone_mode=False, prog_name="localfourier")
        return rv if isinstance(rv, int) else EXIT_OK
    except click.exceptions.Exit as exc:  # --help and friends
        return int(exc.exit_code)
    except click.UsageError as exc:
        message = exc.format_message()
        click.echo(f"error: {message}", err=True)
        _emit({"error": {"type": "usage", "message": message, "exit": EXIT_USAGE}})
        return EXIT_USAGE
    except click.ClickException as exc:
        _emit({"error": {"type": "usage", "message": exc.format_message(), "exit": EXIT_USAGE}})
        return EXIT_USAGE
    except EngineError as exc:
        if isinstance(exc, _HYPOTHESIS_ERRORS):
            code = EXIT_HYPOTHESIS
        elif isinstance(exc, _EXTENSION_ERRORS):
            code = EXIT_EXTENSION
        elif isinstance(exc, NotPrime):
            code = EXIT_USAGE
        else:
            code = 1
        payload = {"type": type(exc).__name__, "message": str(exc), "exit": code}
        if isinstance(exc, NoRootInField):
            payload["required_extra_orders"] = sorted(exc.required_extra_orders)
        if isinstance(exc, OrderNotAvailable) and getattr(exc, "order", None):
            payload["order"] = exc.order
        log.error("%s", exc)
        _emit({"error": payload})
        return code
    except (ValueError, KeyError, TypeError) as exc:
        message = f"invalid input: {exc}"
        log.error("%s", message)
        _emit({"error": {"type": "invalid-input", "message": message, "exit": EXIT_USAGE}})
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
