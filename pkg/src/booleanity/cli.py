"""Command-line front end.

Exit codes: 0 success or accept, 1 reject or invariant violation, 2 usage
or parse error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import hypercube as hc
from .errors import InvalidArgumentError, ParseError, ResourceLimitError
from .io import format_function, load_function, parse_config
from .lab import distinguishing_experiment, empirical_min_fraction, exhaustive_boolean_audit, sample_bk, sample_ck
from .oracle import DenseOracle, SparseOracle
from .reports import render
from .rng import default_seed, derive_seed
from .spectral import (
    check_closeness_theorem,
    check_entropy_uncertainty,
    check_support_uncertainty,
    far_from_set_bound,
    is_boolean_by_spectrum,
)
from .tester import test_booleanity, test_image_in_set
from .wht import forward_array, wht_forward, wht_inverse

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

BUILTIN_ORACLES = ("parity", "majority3", "intro-poly", "bk:<k>", "ck:<k>")


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _seed(args):
    return args.seed if args.seed is not None else default_seed()


def _emit(text, output=None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _as_dense(f, cap):
    if isinstance(f, hc.SparseFunction):
        return hc.to_dense(f, cap)
    hc.check_dimension(f.n, cap)
    return f


def cmd_transform(args):
    loaded = load_function(args.input, args.n_cap)
    f = _as_dense(loaded, args.n_cap)
    out = wht_forward(f) if args.direction == "forward" else wht_inverse(f)
    fmt = args.output_format
    if fmt is None:
        fmt = "sparse" if isinstance(loaded, hc.SparseFunction) else "dense"
    result = hc.dense_spectrum_to_sparse(out) if fmt == "sparse" else out
    _emit(format_function(result), args.output)
    return EXIT_OK


def analyze(f: hc.DenseFunction, eps=0.5, tol=hc.SUPPORT_TOL) -> dict:
    """Everything ``cmd_analyze`` prints, as a dict."""
    fhat = forward_array(f.values)
    k = int((abs(fhat) > tol).sum())
    report = {
        "n": f.n,
        "sparsity": k,
        "norm": hc.l2_norm(f),
        "boolean": is_boolean_by_spectrum(hc.DenseFunction(fhat)),
        "boolean_distance": hc.boolean_distance(f),
        "non_boolean_fraction": hc.non_boolean_fraction(f),
        "far_bound": far_from_set_bound(k, 2) if k else None,
    }
    if hc.l2_norm(f) > 0:
        report["entropy_uncertainty"] = check_entropy_uncertainty(f).to_dict()
        report["support_uncertainty"] = check_support_uncertainty(f, tol).to_dict()
        norm_sq = report["norm"] ** 2
        if abs(norm_sq - len(f)) <= 1e-6 * len(f):
            conv = forward_array(f.values * f.values)
            unit = conv / math.sqrt((conv * conv).sum())
            h = hc.entropy(hc.DenseFunction(unit))
            k_ent = max(2.0 ** (h / 2), 1.0 + 1e-9)
            report["closeness"] = check_closeness_theorem(f, k_ent, eps).to_dict()
    return report


def cmd_analyze(args):
    f = _as_dense(load_function(args.input, args.n_cap), args.n_cap)
    _emit(render(analyze(f, args.eps), args.format, title=f"analysis of {args.input}"), args.output)
    return EXIT_OK


def builtin_oracle(name, n=None, seed=0):
    """Named oracles: parity, majority3, intro-poly, bk:<k>, ck:<k>."""
    if name == "parity":
        n = 8 if n is None else n
        return SparseOracle(hc.SparseFunction(n, {(1 << n) - 1: 1.0}))
    if name == "majority3":
        n = 3 if n is None else n
        if n < 3:
            raise UsageError("majority3 needs n >= 3")
        return SparseOracle(hc.SparseFunction(n, {1: 0.5, 2: 0.5, 4: 0.5, 7: -0.5}))
    if name == "intro-poly":
        n = 3 if n is None else n
        if n < 3:
            raise UsageError("intro-poly needs n >= 3")
        return SparseOracle(hc.SparseFunction(n, {1: 1.0, 6: -2.0, 3: 3.5}))
    family, _, kk = name.partition(":")
    if family in ("bk", "ck") and kk:
        try:
            k = int(kk)
        except ValueError:
            raise UsageError(f"bad k in oracle name {name!r}") from None
        m = max(k.bit_length() - 1, 0)
        n = max(m, 10) if n is None else n
        sampler = sample_bk if family == "bk" else sample_ck
        return sampler(k, n, derive_seed(seed, 1))
    raise UsageError(f"unknown oracle {name!r}; choose from {', '.join(BUILTIN_ORACLES)}")


def cmd_test(args):
    seed = _seed(args)
    if (args.input is None) == (args.oracle is None):
        raise UsageError("give exactly one of --input or --oracle")
    if args.input is not None:
        f = load_function(args.input, args.n_cap)
        oracle = SparseOracle(f) if isinstance(f, hc.SparseFunction) else DenseOracle(f)
        source = str(args.input)
    else:
        oracle = builtin_oracle(args.oracle, args.n, seed)
        source = args.oracle
    if args.set is not None:
        verdict = test_image_in_set(oracle, args.k, args.set, args.eps, seed)
    else:
        verdict = test_booleanity(oracle, args.k, args.eps, seed)
    out = {"source": source, "n": oracle.n, "k": args.k, "eps": args.eps}
    if args.set is not None:
        out["set"] = sorted(args.set)
    out.update(verdict.to_dict())
    _emit(render(out, args.format, title="booleanity test"), args.output)
    return EXIT_OK if verdict.accepted else EXIT_REJECT


_CONFIG_KEYS = {"k": _int_list, "n": _int_list, "queries": _int_list, "trials": int, "seed": int,
                "samples": int, "law": str, "d": int, "eps": float}


def _apply_config(args):
    if not args.config:
        return
    config = parse_config(Path(args.config).read_text())
    for key, value in config.items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            try:
                setattr(args, key, _CONFIG_KEYS[key](value))
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"bad value for {key}: {exc}") from None


def cmd_experiment(args):
    _apply_config(args)
    seed = _seed(args)
    reports = []
    if args.kind == "distinguish":
        for k in args.k or [16]:
            n = max(k.bit_length() - 1, 1)
            dims = args.n or [max(n, 20)]
            for dim in dims:
                for q in args.queries or [k]:
                    reports.append(distinguishing_experiment(k, dim, q, args.trials or 10000, seed))
    elif args.kind == "minfraction":
        for n in args.n or [10]:
            for k in args.k or [4]:
                reports.append(empirical_min_fraction(n, k, args.samples or 10000, seed,
                                                      args.law or "uniform", args.d or 2))
    else:
        for n in args.n or [2]:
            reports.append(exhaustive_boolean_audit(n, args.eps or 0.1, seed))
    payload = {"kind": args.kind, "seed": seed, "passed": all(r.passed for r in reports),
               "reports": [r.to_dict() for r in reports]}
    if args.output:
        render_json = render(payload, "json")
        Path(args.output).write_text(render_json)
    if args.format == "json":
        sys.stdout.write(render(payload, "json"))
    else:
        for i, r in enumerate(reports):
            sys.stdout.write(render(r, args.format, title=f"{args.kind} #{i}"))
    return EXIT_OK if payload["passed"] else EXIT_REJECT


def _probability(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 1), got {text}")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="booleanity", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=True):
        sp.add_argument("--format", choices=("table", "json", "kv"), default="table")
        sp.add_argument("--n-cap", type=int, default=hc.DENSE_CAP, dest="n_cap")
        if output:
            sp.add_argument("--output")

    t = sub.add_parser("transform", help="forward or inverse Walsh-Hadamard transform of a file")
    t.add_argument("--input", required=True)
    t.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    t.add_argument("--output-format", choices=("dense", "sparse"), dest="output_format")
    common(t)
    t.set_defaults(func=cmd_transform)

    a = sub.add_parser("analyze", help="norms, distances, uncertainty and closeness reports")
    a.add_argument("--input", required=True)
    a.add_argument("--eps", type=float, default=0.5)
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("test", help="run the randomized Booleanity / image-in-set tester")
    s.add_argument("--input")
    s.add_argument("--oracle", help=f"built-in oracle: {', '.join(BUILTIN_ORACLES)}")
    s.add_argument("--n", type=int, help="dimension for built-in oracles")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--eps", type=_probability, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--set", type=_float_list, help='target set "v1,v2,..." (default -1,1)')
    common(s)
    s.set_defaults(func=cmd_test)

    e = sub.add_parser("experiment", help="distinguish | minfraction | audit")
    e.add_argument("kind", choices=("distinguish", "minfraction", "audit"))
    e.add_argument("--k", type=_int_list)
    e.add_argument("--n", type=_int_list)
    e.add_argument("--queries", type=_int_list)
    e.add_argument("--trials", type=int)
    e.add_argument("--samples", type=int)
    e.add_argument("--law")
    e.add_argument("--d", type=int)
    e.add_argument("--eps", type=float)
    e.add_argument("--seed", type=int)
    e.add_argument("--config", help="key=value file; flags take precedence")
    common(e)
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InvalidArgumentError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
