"""Command-line entry point: ``hyperradon {eval,verify,radon}``."""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from . import config as cfg
from . import geometry as geo
from . import radon as rd
from . import specfun as sf
from . import spectral as sp

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_NONCONVERGENCE = 3
EXIT_IO = 4

EPILOG = """\
exit codes:
  0  success
  1  verify: at least one check failed
  2  bad parameters, unknown function or suite, invalid config file
  3  numerical non-convergence (quadrature tail, truncation, fit)
  4  output file could not be written

environment:
  HYPERRADON_THREADS  worker threads for grid evaluation (default 1);
                      output does not depend on it

config file (--config): key = value lines overriding tolerances; keys:
  """ + ", ".join(sorted(cfg.TOLERANCE_TARGETS))


class BadParameters(ValueError):
    pass


def _fmt(v: float) -> str:
    return "%.12e" % v


def _grid(args) -> np.ndarray:
    if args.n < 2:
        raise BadParameters("--n must be at least 2")
    if not args.xmax > args.xmin:
        raise BadParameters("--xmax must exceed --xmin")
    return np.linspace(args.xmin, args.xmax, args.n)


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    """Ordered map; results are identical for any thread count."""
    if threads <= 1:
        return [fn(v) for v in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise BadParameters(f"--{n.replace('_', '-')} is required for {args.function}")


# --- eval ------------------------------------------------------------------------------------

def _eval_besselK(args, x):
    _require(args, "kappa")
    if np.any(x <= 0):
        raise BadParameters("besselK needs x > 0")
    v, e = sf.bessel_K_imag_array(args.kappa, x)
    return {"kappa": args.kappa}, v, e


def _eval_besselJ(args, x):
    _require(args, "nu")
    if np.any(x <= 0):
        raise BadParameters("besselJ needs x > 0")
    nu = complex(args.nu, args.nu_imag)
    v, e, _ = sf.bessel_J_array(nu, x)
    part = v.imag if args.part == "im" else v.real
    return {"nu": args.nu, "nu_imag": args.nu_imag, "part": args.part}, part, e


def _eval_conical(args, x):
    _require(args, "kappa", "m")
    if args.variable == "rho":
        if np.any(x < 0):
            raise BadParameters("rho must be non-negative")
        arg = np.cosh(x)
    else:
        if np.any(x < 1):
            raise BadParameters("conical needs x >= 1")
        arg = x
    v, e = sf.conical_P_array(args.kappa, args.m, arg)
    return {"kappa": args.kappa, "m": args.m, "variable": args.variable}, v, e


def _eval_EO(args, x, part):
    _require(args, "k", "nu")
    d = sf.modified_conical_EO_array(args.k, args.nu, x)
    return {"k": args.k, "nu": args.nu}, d[part], d[part + "_err"]


def _eval_scattering(args, x):
    _require(args, "kappa")
    ext = sp.LiouvilleExtension(args.theta)
    v = sp.liouville_scattering_array(ext, args.kappa, x)
    d = sf.fgz_arrays(1j * args.kappa, np.exp(x))
    err = sp.liouville_norm(args.theta, args.kappa) * (d["F_err"] + d["G_err"])
    return {"kappa": args.kappa, "theta": args.theta}, v, err


def _eval_bound(args, x):
    _require(args, "n_state")
    ext = sp.LiouvilleExtension(args.theta)
    nu = ext.bound_order(args.n_state)
    v = sp.liouville_bound_array(ext, args.n_state, x)
    err = math.sqrt(2 * nu) * sf.bessel_J_array(nu, np.exp(x))[1]
    return {"n": args.n_state, "theta": args.theta, "order": nu}, v, err


EVAL_FUNCTIONS: dict[str, tuple[Callable, str]] = {
    "besselK": (_eval_besselK, "K_{i kappa}(x)"),
    "besselJ": (_eval_besselJ, "J_{nu + i nu_imag}(x)"),
    "conical": (_eval_conical, "P^m_{i kappa - 1/2}(cosh rho) or of x"),
    "E": (lambda a, x: _eval_EO(a, x, "E"), "E^k_nu(xi)"),
    "O": (lambda a, x: _eval_EO(a, x, "O"), "O^k_nu(xi)"),
    "scattering": (_eval_scattering, "Liouville scattering state at extension angle theta"),
    "bound": (_eval_bound, "Liouville bound state n at extension angle theta"),
}


def write_table(out: io.TextIOBase, title: str, params: dict, columns: list[str], rows: np.ndarray, extra: Sequence[str] = ()):
    head = ",".join([title] + [f"{k}={v}" for k, v in params.items()])
    out.write(f"# {head}\n")
    out.write(",".join(columns) + "\n")
    for r in rows:
        out.write(",".join(_fmt(float(v)) for v in r) + "\n")
    for line in extra:
        out.write(f"# {line}\n")


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    if args.function not in EVAL_FUNCTIONS:
        raise BadParameters(f"unknown function {args.function!r}; choose from {', '.join(EVAL_FUNCTIONS)}")
    x = _grid(args)
    params, v, e = EVAL_FUNCTIONS[args.function][0](args, x)
    buf = io.StringIO()
    write_table(buf, args.function, params, ["x", "value", "err"], np.column_stack([x, v, e]))
    _emit(args, buf.getvalue())
    if args.plot:
        from .plotting import line_plot

        label = ", ".join(f"{k}={v}" for k, v in params.items())
        line_plot(x, {args.function: v}, args.plot, title=f"{args.function} ({label})", xlabel=args.variable if args.function == "conical" else "x")
    return EXIT_OK


# --- verify ----------------------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise BadParameters(f"unknown suite {args.suite!r}")
    checks = run_suite(args.suite, args.theta)
    passed = all(c.passed for c in checks)
    report = {
        "schema": 1,
        "suite": args.suite,
        "theta": args.theta,
        "passed": passed,
        "tolerances": cfg.default_tolerances(),
        "checks": [c.as_dict() for c in checks],
    }
    _emit(args, json.dumps(report, indent=2, sort_keys=True) + "\n")
    for c in checks:
        if not c.passed:
            print(f"FAIL {c.name}: {c.measured:.3e} > {c.tolerance:.1e}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


# --- radon -----------------------------------------------------------------------------------

def cmd_radon(args) -> int:
    x = _grid(args)
    threads = cfg.thread_count()
    if args.model == "disc":
        if args.k != int(args.k):
            raise BadParameters("disc modes need integer k")
        k = int(args.k)
        mode = sp.PolarMode(k, args.nu)

        def one(xi):
            s = rd.radon_disc_mode(mode, args.theta, xi)
            row = [xi, s.value.real, s.value.imag, s.quadrature_error]
            cf = rd.radon_disc_closed_form(k, args.nu, xi, args.theta)
            row += [cf.real, cf.imag, abs(s.value - cf) / abs(cf) if abs(cf) > 0 else abs(s.value)]
            if args.antipodal_check:
                a = rd.radon_disc_mode(mode, args.theta + math.pi, -xi)
                row.append(abs(a.value - s.value))
            return row

        params = {"model": "disc", "k": k, "nu": args.nu, "theta": args.theta}
    else:
        if args.k == 0:
            raise BadParameters("half-plane modes need k != 0")
        if args.xmin <= 0:
            raise BadParameters("half-plane grid is over eta > 0")
        if args.antipodal_check:
            raise BadParameters("--antipodal-check applies to the disc model")
        mode = sp.HalfPlaneMode(args.k, args.nu)

        def one(eta):
            s = rd.radon_halfplane_mode(mode, args.t, eta)
            cf = rd.radon_halfplane_closed_form(args.k, args.nu, eta, args.t)
            return [eta, s.value.real, s.value.imag, s.quadrature_error, cf.real, cf.imag, abs(s.value - cf) / abs(cf)]

        params = {"model": "halfplane", "k": args.k, "nu": args.nu, "t": args.t}

    rows = np.array(_pmap(one, list(x), threads))
    cols = ["x", "re_quadrature", "im_quadrature", "quad_err", "re_closed_form", "im_closed_form", "rel_diff"]
    if args.antipodal_check:
        cols.append("antipodal_dev")
    extra = []
    if args.fit_theta:
        if args.model != "halfplane":
            raise BadParameters("--fit-theta applies to the half-plane model")
        lo, hi = args.fit_window if args.fit_window else (30.0 / abs(args.k), 60.0 / abs(args.k))
        th = rd.extract_theta(args.k, args.nu, (lo, hi))
        extra.append(f"theta_fit={_fmt(th)},three_pi_over_4={_fmt(0.75 * math.pi)}")
        print(f"fitted extension angle theta = {th:.10f} (3pi/4 = {0.75 * math.pi:.10f})", file=sys.stderr)
    buf = io.StringIO()
    write_table(buf, "radon", params, cols, rows, extra)
    _emit(args, buf.getvalue())
    if args.plot:
        from .plotting import line_plot

        line_plot(x, {"quadrature (Re)": rows[:, 1], "closed form (Re)": rows[:, 4]}, args.plot,
                  title=f"Radon transform, {params['model']} k={params['k']} nu={args.nu}",
                  xlabel="xi" if args.model == "disc" else "eta")
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hyperradon",
        description="Special functions, spectral checks and geodesic Radon transforms on the hyperbolic plane.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--config", help="key=value file of tolerance overrides")
    sub = p.add_subparsers(dest="command", required=True)

    def grid_opts(q, xmin, xmax, n):
        q.add_argument("--xmin", type=float, default=xmin)
        q.add_argument("--xmax", type=float, default=xmax)
        q.add_argument("--n", type=int, default=n, help="grid points (default %(default)s)")
        q.add_argument("--out", help="CSV path (default stdout)")
        q.add_argument("--plot", help="also draw the curve to this .svg or .png file")

    e = sub.add_parser("eval", help="tabulate a special function on a grid",
                       description="Functions: " + "; ".join(f"{k}: {v[1]}" for k, v in EVAL_FUNCTIONS.items()),
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    e.add_argument("function")
    e.add_argument("--kappa", type=float)
    e.add_argument("--nu", type=float)
    e.add_argument("--nu-imag", type=float, default=0.0)
    e.add_argument("--part", choices=("re", "im"), default="re")
    e.add_argument("--m", type=int)
    e.add_argument("--k", type=int)
    e.add_argument("--theta", type=float, default=0.75 * math.pi, help="extension angle (default 3pi/4)")
    e.add_argument("--n-state", type=int, help="bound-state index")
    e.add_argument("--variable", choices=("rho", "x"), default="rho", help="conical: grid in rho or in x = cosh rho")
    grid_opts(e, 0.1, 10.0, 200)
    e.set_defaults(handler=cmd_eval)

    v = sub.add_parser("verify", help="run an invariant suite and write a JSON report",
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    v.add_argument("suite", help="geometry, group, specfun, spectral, radon or all")
    v.add_argument("--theta", type=float, help="extension angle for the spectral suite")
    v.add_argument("--out", help="JSON path (default stdout)")
    v.set_defaults(handler=cmd_verify)

    r = sub.add_parser("radon", help="tabulate the Radon transform of a mode against its closed form",
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    r.add_argument("--model", choices=("disc", "halfplane"), required=True)
    r.add_argument("--k", type=float, required=True)
    r.add_argument("--nu", type=float, required=True)
    r.add_argument("--theta", type=float, default=0.0, help="disc: rotation angle of the geodesics")
    r.add_argument("--t", type=float, default=0.0, help="half-plane: centre of the geodesics")
    r.add_argument("--fit-theta", action="store_true", help="half-plane: fit the extension angle from large-eta data")
    r.add_argument("--fit-window", type=float, nargs=2, metavar=("ETA_MIN", "ETA_MAX"))
    r.add_argument("--antipodal-check", action="store_true", help="disc: add |R(theta+pi,-xi) - R(theta,xi)|")
    grid_opts(r, -2.0, 2.0, 41)
    r.set_defaults(handler=cmd_radon)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        overrides = cfg.load_config(args.config) if args.config else {}
        if getattr(args, "plot", None):
            from .plotting import plot_format

            plot_format(args.plot)
        cfg.thread_count()
        run = cfg.RunConfig(
            command=args.command,
            parameters={k: v for k, v in vars(args).items() if k not in ("handler", "command", "config")},
            tolerances=overrides,
            output_path=getattr(args, "out", None),
            format="json" if args.command == "verify" else "csv",
        )
        with cfg.applied_tolerances(run.tolerances):
            return args.handler(args)
    except (BadParameters, cfg.ConfigError, sf.PoleError, geo.DomainError, rd.FitConditioningError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except (sf.ConvergenceError, ArithmeticError) as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
