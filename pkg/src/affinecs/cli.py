"""``affinecs`` command line: coeffs, normal-order, act, transform, verify."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from affinecs import errata, verify
from affinecs.actions import AffineLabel, act_affine
from affinecs.config import RunConfig, load_file, parse_assignments
from affinecs.opcore import normal_order, stirling_table
from affinecs.opdsl import DSLError, lower, parse, print_normal_form
from affinecs.testfn import GaussPoly, l2_norm
from affinecs.xform import transform


class UsageError(ValueError):
    pass


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def parse_fspec(spec):
    """``gauss:c0,c1,...[;scale=s]`` -> GaussPoly sum c_k x^k e^{-s x^2/2}."""
    kind, _, body = spec.partition(":")
    if kind != "gauss" or not body:
        raise UsageError(f"function spec must look like 'gauss:c0,c1,...[;scale=s]', got {spec!r}")
    coeff_part, *opts = body.split(";")
    try:
        coeffs = [complex(c.strip().replace("i", "j")) for c in coeff_part.split(",")]
        scale = 1.0
        for opt in opts:
            key, _, val = opt.partition("=")
            if key.strip() != "scale":
                raise UsageError(f"unknown option {key!r} in function spec")
            scale = complex(val.strip().replace("i", "j"))
    except ValueError:
        raise UsageError(f"bad number in function spec {spec!r}") from None
    if scale.real <= 0:
        raise UsageError("scale must have positive real part")
    return GaussPoly(coeffs, scale=scale if scale.imag else scale.real)


def parse_grid(spec):
    """``a:b:n`` -> n evenly spaced points on [a, b]."""
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"grid must look like 'start:stop:count', got {spec!r}") from None
    if n < 1:
        raise UsageError("grid count must be positive")
    return np.linspace(a, b, n)


def parse_points(spec):
    try:
        return np.array([complex(s.strip().replace("i", "j")) for s in spec.split(",")])
    except ValueError:
        raise UsageError(f"bad complex point list {spec!r}") from None


# --- verbs ----------------------------------------------------------------------

def cmd_coeffs(args, cfg):
    table = stirling_table(args.max_n)
    if cfg.output == "json":
        text = table.to_json() + "\n"
    elif cfg.output == "csv":
        text = table.to_csv()
    else:
        text = "".join(", ".join(str(v) for v in table.row(n)) + "\n"
                       for n in range(1, args.max_n + 1))
    _write(text, args.out)
    return 0


def cmd_normal_order(args, cfg):
    try:
        nf = normal_order(lower(parse(args.expr), args.expr))
    except DSLError as exc:
        print(f"error: {exc.render()}", file=sys.stderr)
        return 2
    text = print_normal_form(nf)
    if cfg.output == "json":
        terms = [{"a": a, "b": b, "coeff": str(c)} for (a, b), c in nf.items()]
        text = json.dumps({"expr": args.expr, "normal_form": text, "terms": terms})
    _write(text + "\n", args.out)
    return 0


def cmd_act(args, cfg):
    f = parse_fspec(args.f)
    x = parse_grid(args.grid)
    g = act_affine(AffineLabel(args.p, args.q), f)
    vals = np.asarray(g(x), dtype=np.complex128)
    norm_in, norm_out = l2_norm(f), l2_norm(g)
    if cfg.output == "json":
        text = json.dumps({"p": args.p, "q": args.q, "norm_in": norm_in, "norm_out": norm_out,
                           "x": x.tolist(), "re": vals.real.tolist(), "im": vals.imag.tolist()}) + "\n"
    else:
        rows = [(repr(float(xi)), repr(float(v.real)), repr(float(v.imag)), repr(norm_out))
                for xi, v in zip(x, vals)]
        text = _csv(["x", "re", "im", "norm"], rows)
    _write(text, args.out)
    print(f"# L2 norm in {norm_in:.15g}, out {norm_out:.15g}", file=sys.stderr)
    return 0


def cmd_transform(args, cfg):
    f = parse_fspec(args.f)
    zs = parse_points(args.z)
    parity = args.parity
    if parity == "auto":
        parity = f.parity()
        if parity not in ("odd", "even"):
            raise UsageError("function has mixed or zero parity; pass --parity")
    vals = np.atleast_1d(transform(f, zs, parity))
    if cfg.output == "json":
        text = json.dumps([{"z": [float(z.real), float(z.imag)], "re": float(v.real), "im": float(v.imag)}
                           for z, v in zip(zs, vals)]) + "\n"
    else:
        rows = [(repr(float(z.real)), repr(float(z.imag)), repr(float(v.real)), repr(float(v.imag)))
                for z, v in zip(zs, vals)]
        text = _csv(["z_re", "z_im", "re", "im"], rows)
    _write(text, args.out)
    return 0


def _render_records(records, fmt):
    if fmt == "json":
        return json.dumps({"errata_version": errata.ERRATA_VERSION,
                           "records": [r.as_dict() for r in records]}, indent=1) + "\n"
    if fmt == "csv":
        rows = [(r.suite, r.check, "pass" if r.passed else "fail", repr(r.measured), repr(r.tolerance),
                 r.erratum or "", r.identity) for r in records]
        return _csv(["suite", "check", "status", "measured", "tolerance", "erratum", "identity"], rows)
    lines = []
    for r in records:
        tag = f" [erratum {r.erratum}]" if r.erratum else ""
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.suite:<12} {r.check:<14} "
                     f"defect={r.measured:.3e} tol={r.tolerance:.1e}  {r.identity}{tag}")
    failed = sum(not r.passed for r in records)
    lines.append(f"{len(records) - failed}/{len(records)} checks passed")
    return "\n".join(lines) + "\n"


def cmd_verify(args, cfg):
    records = verify.run(args.suite, cfg, jobs=args.jobs)
    _write(_render_records(records, cfg.output), args.out)
    return 0 if all(r.passed for r in records) else 1


# --- argument handling ------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default=None,
                        help="output format (default: text, or the config file's value)")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--config", metavar="PATH", help="TOML or JSON config file")
    common.add_argument("--sigma", type=float, help="half-width of the truncated region in Re z")
    common.add_argument("--gamma", type=float, help="Im z range of the truncated region is (1/gamma, gamma)")
    common.add_argument("--orders", action="append", metavar="NAME=N",
                        help="quadrature orders, e.g. b=128,t=128 (hermite, radial, angular, b, t)")
    common.add_argument("--tol", action="append", metavar="NAME=VAL", help="override a check tolerance")

    ap = argparse.ArgumentParser(prog="affinecs", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="table of normal-ordering coefficients a(n, r)")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("normal-order", parents=[common], help="normal-order an operator expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normal_order)

    p = sub.add_parser("act", parents=[common], help="apply U[p, q] to a test function on a grid")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--f", default="gauss:0,1", help="gauss:c0,c1,...[;scale=s]")
    p.add_argument("--grid", default="-3:3:25", help="start:stop:count")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("transform", parents=[common], help="evaluate A_o or A_e at points z")
    p.add_argument("--f", default="gauss:0,1", help="gauss:c0,c1,...[;scale=s]")
    p.add_argument("--z", default="1j", help="comma-separated complex points, e.g. 1j,1+2j")
    p.add_argument("--parity", choices=("odd", "even", "auto"), default="auto")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("suite", help="one of: " + ", ".join(verify.SUITES + ("all",)))
    p.add_argument("--jobs", type=int, default=1, help="run suites in parallel threads")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("errata", parents=[common], help="list printed values this package overrides")
    p.set_defaults(func=lambda a, c: _write(
        (json.dumps(errata.as_records(), indent=1) if c.output == "json" else errata.render_text()) + "\n",
        a.out) or 0)
    return ap


def make_config(args):
    cfg = RunConfig()
    if args.config:
        cfg.update(load_file(args.config))
    if args.sigma is not None:
        cfg.sigma = args.sigma
    if args.gamma is not None:
        cfg.gamma = args.gamma
    cfg.orders.update(parse_assignments(args.orders, int))
    cfg.tolerances.update(parse_assignments(args.tol, float))
    if args.format:
        cfg.output = args.format
    return cfg.validate()


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = make_config(args)
        if args.verb == "verify" and args.suite not in verify.SUITES + ("all",):
            raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES + ('all',))}")
        if args.verb == "coeffs" and args.max_n < 1:
            raise UsageError("--max-n must be at least 1")
        return args.func(args, cfg)
    except (ValueError, OSError) as exc:  # usage, config, parity and domain errors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
