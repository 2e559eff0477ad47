"""``qintertwine`` command line: ``normalize``, ``verify`` and ``eval``.

Exit codes: 0 success / all identities pass, 1 an identity or check fails
(or a series does not converge), 2 usage or configuration error.
"""

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from .config import ConfigError, RunConfig, parse_caps, parse_q, read_config_file
from .parser import ParseError, evaluate, needs_kernel, parse

__all__ = ["main", "build_parser", "cmd_normalize", "cmd_verify", "cmd_eval", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1
_QUOTIENTS = ("free", "cone", "hyperboloid")


# -- commands -------------------------------------------------------------------------------------

def normalize_expression(text, cfg, left="free", right="free"):
    """``(element, text rendering, json terms)`` of the normal form of ``text``."""
    from ..freealg import render, to_json
    from ..freealg.api import algebra, kernel_algebra
    from ..kernels import build
    node = parse(text)
    field = cfg.field()
    if needs_kernel(node):
        alg = kernel_algebra(cfg.n, left, right, field)

        def named(name):
            return build(name, cfg.n, left=left, right=right, field=field).value
    else:
        alg = algebra(cfg.n, left, field)
        named = None
    elem = evaluate(node, alg, field, cfg.n, named, text)
    return elem, render(elem), to_json(elem)["terms"]


def cmd_normalize(args, cfg):
    elem, txt, terms = normalize_expression(args.expr, cfg, args.left, args.right)
    payload = {"command": "normalize", "input": args.expr, "normal_form": txt, "terms": terms}
    return 0, payload, [{"I": t["I"], "J": t["J"], "Iprime": t["Iprime"], "Jprime": t["Jprime"],
                         "x": t["x"], "xi": t["xi"], "coeff": t["coeff"]} for t in terms], txt


def cmd_verify(args, cfg):
    from ..suites import run_suite
    recs = run_suite(args.suite, cfg, jobs=cfg.jobs)
    ok = all(r["status"] == "pass" for r in recs)
    payload = {"command": "verify", "suite": args.suite, "status": "pass" if ok else "fail",
               "identities": recs}
    rows = [{k: (json.dumps(v) if k == "detail" else v) for k, v in r.items()} for r in recs]
    text = "\n".join(f"{r['status'].upper():5} {r['id']}  ({r['runtime']} s)" for r in recs)
    return (0 if ok else 1), payload, rows, text


def _floats(text):
    return [float(Fraction(t)) for t in text.split(",") if t.strip()] if text else []


def cmd_eval(args, cfg):
    what = args.what
    q = cfg.numeric_q(0.5)
    if what == "phi":
        from ..qseries import PhiSpec, phi_eval
        if args.x is None:
            raise ConfigError("eval phi needs --x")
        spec = PhiSpec(tuple(_floats(args.num)), tuple(_floats(args.den)),
                       float(Fraction(args.base)) if args.base else q * q, args.x,
                       max_terms=args.max_terms)
        try:
            v = phi_eval(spec)
        except ArithmeticError as exc:
            res = {"status": "no-convergence", "message": str(exc), "max_terms": args.max_terms}
            return 1, {"command": "eval", "what": what, "result": res}, [res], str(exc)
        res = {"value": v.value, "terms": v.terms, "tail": v.tail, "status": "ok"}
        return 0, {"command": "eval", "what": what, "result": res}, [res], repr(v.value)

    if what == "spherical":
        from ..qseries import pfaff_sides, spherical_zonal
        x = 0.3 if args.x is None else args.x
        if args.pfaff_check:
            lhs, rhs = pfaff_sides(args.l, x, q)
            err = abs(lhs - rhs) / abs(rhs)
            ok = err <= 1e-12
            res = {"l": args.l, "x": x, "q": q, "phi21": rhs, "phi22": lhs, "relative_error": err,
                   "status": "pass" if ok else "fail"}
            return (0 if ok else 1), {"command": "eval", "what": what, "result": res}, [res], \
                f"phi21={rhs!r} phi22={lhs!r} rel.err={err:.3g}"
        v = spherical_zonal(args.l, x, q)
        res = {"l": args.l, "x": x, "q": q, "value": v, "terms": args.l + 1, "status": "ok"}
        return 0, {"command": "eval", "what": what, "result": res}, [res], repr(v)

    if what == "poisson-power":
        import mpmath
        from ..qseries import PoissonPowerSeries, f000000_closed_form
        from ..scalar import FloatField
        lam = args.lam if args.lam is not None else 0.5
        x1 = 0.3 if args.x is None else args.x
        xn, y = (x1, 1.0) if cfg.n == 1 else (args.xn or x1, args.y)  # n = 1: x_n = x_1, xi_1 = 1
        with mpmath.workdps(40):
            mq = mpmath.mpf(q)
            I = cfg.caps["I"]
            S = PoissonPowerSeries(cfg.n, (0, I), field=FloatField(mq))
            pt = S.point(mpmath.mpf(x1), mpmath.mpf(xn), mpmath.mpf(y))
            v = S.eval_middle(S.slot(0, 0), mpmath.mpf(lam), pt, mq)
            c = f000000_closed_form(mpmath.mpf(lam), mpmath.mpf(x1), mpmath.mpf(xn), mpmath.mpf(y),
                                    cfg.n, mq)
            err = float(abs(v - c) / abs(c))
        res = {"lambda": lam, "n": cfg.n, "x1": x1, "slot_f000000": float(v), "closed_form": float(c),
               "relative_error": err, "truncation_I": I, "status": "ok"}
        return 0, {"command": "eval", "what": what, "result": res}, [res], f"{float(v)!r} (closed form {float(c)!r})"

    if what == "radon":
        from ..radon import RadonSetup, _extract_all, reconstruction_error, resummation_error
        lam = args.lam if args.lam is not None else 0.5
        W = cfg.caps["W"]
        beta = cfg.beta if cfg.beta else Fraction(1, 3)
        st = RadonSetup(n=1, q=q, beta=beta, caps=(0, cfg.caps["I"]), M=4, window=(-W, W))
        ext = _extract_all(st, st.S.kernel())
        res = {"lambda": lam, "q": q, "beta": str(beta), "window": [-W, W], "truncation_I": cfg.caps["I"],
               "box_points": len(st.box()), "keys": len(ext),
               "resummation_error": resummation_error(st, [lam], ext)}
        ok = res["resummation_error"] <= 1e-12
        if args.reconstruct:
            res["reconstruction_error"] = reconstruction_error(st, lam, range(-W - st.M, W + st.M + 1), ext)
            ok = ok and res["reconstruction_error"] <= cfg.caps["tol"]
        res["status"] = "pass" if ok else "fail"
        txt = ", ".join(f"{k}={v}" for k, v in res.items())
        return (0 if ok else 1), {"command": "eval", "what": what, "result": res}, [res], txt
    raise ConfigError(f"unknown eval target {what!r}")


# -- argument handling ------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank n (default 1)")
    common.add_argument("--N", type=int, help="number of copies (default 1)")
    common.add_argument("--beta", help='beta as a rational "p/q" in [0, 1)')
    common.add_argument("--q", help='"symbolic" (default), a rational "p/q" or a float such as 0.5')
    common.add_argument("--caps", help="comma list of M=,L=,I=,W=,tol=,deg=,trials=")
    common.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
    common.add_argument("--out", help="write the report to FILE instead of stdout")
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--seed", type=int, help="seed for randomized identities")
    common.add_argument("--jobs", type=int, help="parallel workers for verify")
    common.add_argument("--text", action="store_true", help="also print a human-readable summary to stderr")

    p = argparse.ArgumentParser(prog="qintertwine", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    pn = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    pn.add_argument("expr")
    pn.add_argument("--left", choices=_QUOTIENTS, default="free", help="first factor / algebra")
    pn.add_argument("--right", choices=_QUOTIENTS, default="free", help="second kernel factor")

    from ..suites import suite_names
    pv = sub.add_parser("verify", parents=[common], help="run an identity suite")
    pv.add_argument("suite", choices=suite_names())

    pe = sub.add_parser("eval", parents=[common], help="evaluate a series")
    pe.add_argument("what", choices=("phi", "spherical", "poisson-power", "radon"))
    pe.add_argument("--l", type=int, default=0)
    pe.add_argument("--x", type=float)
    pe.add_argument("--xn", type=float)
    pe.add_argument("--y", type=float, default=0.5)
    pe.add_argument("--lambda", dest="lam", type=float)
    pe.add_argument("--num", help="numerator parameters, comma separated")
    pe.add_argument("--den", help="denominator parameters, comma separated")
    pe.add_argument("--base", help="base of the series (default q^2)")
    pe.add_argument("--max-terms", type=int, default=2000)
    pe.add_argument("--pfaff-check", action="store_true")
    pe.add_argument("--reconstruct", action="store_true")
    return p


def make_config(args):
    file_vals = read_config_file(args.config) if args.config else {}

    def pick(name, default, conv=lambda v: v):
        v = getattr(args, name, None)
        if v is None:
            v = file_vals.get(name)
        return default if v is None else conv(v)

    try:
        beta = pick("beta", Fraction(0), Fraction)
    except (ValueError, ZeroDivisionError):
        raise ConfigError("bad --beta") from None
    mode, q = parse_q(pick("q", None))
    caps_text = args.caps if args.caps is not None else file_vals.get("caps")
    return RunConfig(n=pick("n", 1, int), N=pick("N", 1, int), beta=beta, q_mode=mode, q=q,
                     caps=parse_caps(caps_text), format=pick("format", "json"), out=pick("out", None),
                     seed=pick("seed", 0, int), jobs=pick("jobs", 1, int))


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    try:
        return float(o)
    except (TypeError, ValueError):
        return str(o)


def _emit(cfg, payload, rows):
    if cfg.format == "json":
        out = json.dumps(payload, indent=2, default=_json_default, sort_keys=False) + "\n"
    else:
        buf = io.StringIO()
        keys = []
        for r in rows:
            keys += [k for k in r if k not in keys]
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v, default=_json_default) if isinstance(v, (list, dict)) else v)
                        for k, v in r.items()})
        out = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        cfg = make_config(args)
        code, payload, rows, text = {"normalize": cmd_normalize, "verify": cmd_verify,
                                     "eval": cmd_eval}[args.command](args, cfg)
    except ParseError as exc:
        print(exc.pretty(), file=sys.stderr)
        return 2
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"schema": SCHEMA_VERSION, **payload, "config": cfg.as_dict()}
    if args.command == "verify":
        # only verify reports timings, so other output is bit-identical between runs
        payload["runtime"] = round(time.time() - t0, 3)
    _emit(cfg, payload, rows)
    if args.text:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
