"""Command-line front end.

Subcommands: ``bounds`` (named finite/asymptotic bounds), ``verify``
(locality and distance of a code file), ``curve`` (CSV curve samples),
``sample`` (random ensembles, optionally batched).  Reports are JSON on
stdout and byte-stable for fixed inputs and seeds.  Exit codes: 0 ok,
2 usage, 3 domain, 4 resource cap.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__, gf
from . import bounds_asym as ba
from . import bounds_finite as bf
from .codes import code_from_generator, code_from_parity, min_distance
from .ensembles import EnsembleSpec, sample_double, sample_expander, sample_single
from .errors import DomainError, LrcError, ParseError, TooLarge
from .io_formats import (
    approx,
    build_report,
    curve_csv,
    dumps_report,
    exact,
    format_code_file,
    parse_code_file,
)
from .locality import locality_profile

FLOAT_TOL = 1e-9


def _need(args, names, bound):
    vals = []
    for name in names:
        v = getattr(args, name, None)
        if v is None:
            raise DomainError(f"bound '{bound}' needs --{name}")
        vals.append(v)
    return vals


def _oracle(args):
    name = args.oracle or "singleton"
    if name not in bf.ORACLES:
        raise DomainError(f"unknown oracle '{name}'; valid: {sorted(bf.ORACLES)}")
    return bf.ORACLES[name](args.q or 2)


def cmd_bounds(args) -> int:
    name = args.name
    results = {}
    if name == "singleton":
        n, k, r = _need(args, ["n", "k", "r"], name)
        results[name] = exact(bf.singleton_bound(n, k, r))
    elif name == "d2":
        n, k, r, t = _need(args, ["n", "k", "r", "t"], name)
        results[name] = exact(bf.distance_bound(n, k, r, t))
    elif name == "rate_t":
        r, t = _need(args, ["r", "t"], name)
        results[name] = exact(bf.rate_bound(r, t))
    elif name == "singleton_t":
        n, k, r, t = _need(args, ["n", "k", "r", "t"], name)
        results[name] = exact(bf.singleton_bound_t(n, k, r, t))
    elif name == "shortening":
        n, d, r, q = _need(args, ["n", "d", "r", "q"], name)
        results[name] = exact(bf.shortening_bound(n, d, r, q, _oracle(args)))
    elif name == "gv_finite":
        n, k, r, q = _need(args, ["n", "k", "r", "q"], name)
        results[name] = exact(bf.gv_distance(n, k, r, q))
    elif name == "gv_classic":
        n, k, r, q = _need(args, ["n", "k", "r", "q"], name)
        results[name] = exact(bf.gv_distance_classic(n, k, r, q))
    elif name == "envelope":
        r, t = _need(args, ["r", "t"], name)
        root, product = bf.rate_envelope(r, t)
        results["root_rate_bound"] = approx(root, FLOAT_TOL)
        results["product_rate_bound"] = exact(product)
    elif name == "gv_asym":
        q, r, delta = _need(args, ["q", "r", "delta"], name)
        point = ba.gv_rate(r, delta, q)
        results[name] = approx(point.value, FLOAT_TOL)
        results["s_star"] = approx(point.aux[0], FLOAT_TOL)
    elif name == "gv2_asym":
        q, r, delta = _need(args, ["q", "r", "delta"], name)
        point = ba.gv2_rate(r, delta, q)
        results[name] = approx(point.value, FLOAT_TOL)
        results["s_star"] = approx(point.aux[0], FLOAT_TOL)
    elif name == "singleton_asym":
        r, delta = _need(args, ["r", "delta"], name)
        results[name] = approx(ba.singleton_rate(r, delta), FLOAT_TOL)
    elif name == "plotkin_asym":
        r, delta, q = _need(args, ["r", "delta", "q"], name)
        results[name] = approx(ba.plotkin_rate(r, delta, q), FLOAT_TOL)
    elif name == "lp_asym":
        r, delta, q = _need(args, ["r", "delta", "q"], name)
        point = ba.lp_rate(r, delta, q)
        results[name] = approx(point.value, FLOAT_TOL)
        results["tau_star"] = approx(point.aux[0], FLOAT_TOL)
    elif name == "sa":
        r, t, delta = _need(args, ["r", "t", "delta"], name)
        results[name] = approx(ba.expansion_singleton_rate(r, t, delta), FLOAT_TOL)
    elif name == "at1":
        r, t, delta = _need(args, ["r", "t", "delta"], name)
        results[name] = approx(ba.generalized_singleton_rate(r, t, delta), FLOAT_TOL)
    elif name == "expander":
        r, t, rate = _need(args, ["r", "t", "rate"], name)
        point = ba.expander_distance(r, t, rate)
        results["delta"] = approx(point.delta, FLOAT_TOL)
        results["gamma"] = approx(point.aux[0], FLOAT_TOL)
        if point.flags:
            results["flags"] = {"kind": "exact", "value": list(point.flags)}
    else:
        raise DomainError(f"unknown bound '{name}'; valid: {sorted(BOUND_NAMES)}")
    params = {k: v for k, v in vars(args).items() if k in PARAM_KEYS and v is not None}
    report = build_report("bounds", params, results, version=__version__)
    print(dumps_report(report), end="")
    return 0


BOUND_NAMES = (
    "singleton",
    "d2",
    "rate_t",
    "singleton_t",
    "shortening",
    "gv_finite",
    "gv_classic",
    "envelope",
    "gv_asym",
    "gv2_asym",
    "singleton_asym",
    "plotkin_asym",
    "lp_asym",
    "sa",
    "at1",
    "expander",
)

PARAM_KEYS = ("name", "n", "k", "r", "t", "q", "d", "delta", "rate", "oracle")


def cmd_verify(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        code_file = parse_code_file(fh.read())
    f = gf.field(code_file.q)
    if code_file.kind == "G":
        code = code_from_generator(f, code_file.matrix)
    else:
        code = code_from_parity(f, code_file.matrix)
    n, k = code.n, code.k
    d = min_distance(code)
    profile = locality_profile(code, args.r, args.t)
    results = {
        "n": exact(n),
        "k": exact(k),
        "d": exact(d),
        "locality_ok": exact(profile.ok),
    }
    if profile.ok:
        certs = []
        for coord_certs in profile.certificates:
            certs.append(
                [
                    {
                        "coordinate": c.coordinate,
                        "set": sorted(c.members),
                        "witness": list(c.witness),
                        "witness_weight": c.witness_weight,
                    }
                    for c in coord_certs
                ]
            )
        results["certificates"] = {"kind": "exact", "value": certs}
    else:
        results["failed_coordinate"] = exact(profile.failed_coordinate)
    if 1 <= args.r <= k <= n:
        sb = bf.singleton_bound(n, k, args.r)
        results["singleton"] = exact(sb)
        results["meets_singleton"] = exact(d == sb)
    if k >= 1:
        d2 = bf.distance_bound(n, k, args.r, args.t)
        st = bf.singleton_bound_t(n, k, args.r, args.t)
        results["d2"] = exact(d2)
        results["meets_d2"] = exact(d == d2)
        results["singleton_t"] = exact(st)
        results["meets_singleton_t"] = exact(d == st)
    params = {"file": os.path.basename(args.file), "r": args.r, "t": args.t}
    print(dumps_report(build_report("verify", params, results, version=__version__)), end="")
    return 0


def _step_type(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < val <= 0.1:
        raise argparse.ArgumentTypeError("step must lie in (0, 0.1]")
    return val


def cmd_curve(args) -> int:
    bounds = [b.strip() for b in args.bounds.split(",") if b.strip()]
    if not bounds:
        raise DomainError("no bounds requested")
    rows = ba.curve_table(bounds, args.q or 2, args.r, args.t or 1, args.step)
    text = curve_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _worker_count() -> int:
    env = os.environ.get("LRC_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _one_sample(args, seed):
    spec = EnsembleSpec(
        kind=args.kind,
        n=args.n,
        k=args.k if args.k is not None else _default_k(args),
        r=args.r,
        q=args.q,
        t=args.t or (2 if args.kind in ("double", "expander") else 1),
        seed=seed,
    )
    if args.kind == "single":
        sample = sample_single(spec)
    elif args.kind == "double":
        sample = sample_double(spec)
    else:
        sample = sample_expander(spec)
    return spec, sample


def _default_k(args):
    # empty uniform part: as many message symbols as the structured rows allow
    if args.kind == "single":
        if args.n % (args.r + 1) != 0:
            raise DomainError("need (r+1) | n")
        return args.n - args.n // (args.r + 1)
    if args.kind == "double":
        width = (args.r + 2) * (args.r + 1) // 2
        if args.n % width != 0:
            raise DomainError("need C(r+2,2) | n")
        return args.n - (args.n // width) * (args.r + 1)
    raise DomainError("expander sampling needs an explicit --k")


def cmd_sample(args) -> int:
    batch = max(1, args.batch)
    seeds = [args.seed + i for i in range(batch)]
    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        outcomes = list(pool.map(lambda s: _one_sample(args, s), seeds))

    t_eff = args.t or (2 if args.kind in ("double", "expander") else 1)
    histogram = {}
    locality_pass = 0
    details = []
    for spec, sample in outcomes:
        if args.kind == "expander":
            d = sample.distance
            loc_ok = sample.profile.ok
            details.append(
                {
                    "seed": spec.seed,
                    "k_actual": sample.code.k,
                    "d": d,
                    "delta_target": sample.distance_target,
                    "distance_ok": sample.distance_ok,
                    "hall_ok": sample.hall_ok,
                    "locality_ok": loc_ok,
                    "graph_attempts": sample.graph_attempts,
                }
            )
        else:
            code = sample.code
            d = min_distance(code)
            loc_ok = locality_profile(code, args.r, t_eff).ok
            details.append(
                {"seed": spec.seed, "k_actual": code.k, "d": d, "locality_ok": loc_ok}
            )
        histogram[d] = histogram.get(d, 0) + 1
        locality_pass += bool(loc_ok)

    results = {
        "batch": exact(batch),
        "locality_pass": exact(locality_pass),
        "distance_histogram": {"kind": "exact", "value": {str(k): v for k, v in sorted(histogram.items())}},
        "samples": {"kind": "exact", "value": details},
    }
    if args.kind == "single":
        k_eff = args.k if args.k is not None else _default_k(args)
        if args.r < k_eff < args.r * args.n // (args.r + 1):
            gv = bf.gv_distance(args.n, k_eff, args.r, args.q)
            results["gv_finite"] = exact(gv)
            results["achieving_gv"] = exact(sum(1 for det in details if det["d"] >= gv))
    if args.kind == "expander":
        rmax = 1 - Fraction(t_eff, args.r + 1)
        results["rate_cap"] = exact(rmax)
        results["rate_ok"] = exact(
            all(Fraction(s.code.k, s.code.n) <= rmax for _, s in outcomes)
        )
        results["distance_target_fraction"] = approx(
            sum(1 for _, s in outcomes if s.distance_ok) / batch, 1e-12
        )
    if args.dump:
        _, first = outcomes[0]
        with open(args.dump, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_code_file("H", args.q, first.parity))
    params = {
        "kind": args.kind,
        "n": args.n,
        "k": args.k,
        "r": args.r,
        "t": t_eff,
        "q": args.q,
        "batch": batch,
    }
    print(
        dumps_report(build_report("sample", params, results, seed=args.seed, version=__version__)),
        end="",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrclab",
        description="Bounds, locality verification, and random ensembles for locally recoverable codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="evaluate a named bound")
    p_bounds.add_argument("--name", required=True, choices=sorted(BOUND_NAMES))
    for flag in ("n", "k", "r", "t", "q", "d"):
        p_bounds.add_argument(f"--{flag}", type=int)
    p_bounds.add_argument("--delta", type=float)
    p_bounds.add_argument("--rate", type=float)
    p_bounds.add_argument("--oracle", choices=sorted(bf.ORACLES))
    p_bounds.set_defaults(func=cmd_bounds)

    p_verify = sub.add_parser("verify", help="verify locality/distance of a code file")
    p_verify.add_argument("--file", required=True)
    p_verify.add_argument("--r", type=int, required=True)
    p_verify.add_argument("--t", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)

    p_curve = sub.add_parser("curve", help="emit asymptotic curve samples as CSV")
    p_curve.add_argument("--bounds", required=True, help="comma-separated bound names")
    p_curve.add_argument("--q", type=int, default=2)
    p_curve.add_argument("--r", type=int, required=True)
    p_curve.add_argument("--t", type=int)
    p_curve.add_argument("--step", type=_step_type, required=True)
    p_curve.add_argument("--out")
    p_curve.set_defaults(func=cmd_curve)

    p_sample = sub.add_parser("sample", help="draw random ensemble codes")
    p_sample.add_argument("--kind", required=True, choices=("single", "double", "expander"))
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--k", type=int)
    p_sample.add_argument("--r", type=int, required=True)
    p_sample.add_argument("--t", type=int)
    p_sample.add_argument("--q", type=int, default=2)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--batch", type=int, default=1)
    p_sample.add_argument("--dump", help="write the first sample's parity matrix here")
    p_sample.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except LrcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
