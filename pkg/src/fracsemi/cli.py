"""Command-line front end.

Exit codes: 0 when every executed check passes, 1 on a failed check or a
numerical failure, 2 on a usage error.
"""
import csv
import io
import json
import math
import os
import sys

import click
import numpy as np

from . import __version__
from .discrete import Grid1D, assemble_dirichlet, solve_exterior_dirichlet, spectrum
from .errors import DomainError, FracSemiError
from .fraclap import convergence_to_laplacian, gaussian_field
from .kernel import KernelQuery, fourier_profile, poisson_kernel_closed, subordinated_profile
from .specfun import FractionalOrder
from .verify import CHECK_NAMES, DEFAULT_SEED, run_checks

# config-file keys that differ from parameter names
_ALIASES = {"lambda": "lam", "N": "dim", "out_path": "out", "format": "fmt", "s_list": "s_list"}

_OPEN_UNIT = click.FloatRange(0.0, 1.0, min_open=True, max_open=True)
_POSITIVE = click.FloatRange(0.0, min_open=True)


class FloatList(click.ParamType):
    """Comma-separated floats, e.g. ``-1,1`` or ``0.1,1,10``."""

    name = "floats"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return tuple(float(v) for v in value)
        if isinstance(value, (int, float)):
            return (float(value),)
        try:
            return tuple(float(v) for v in str(value).split(",") if v.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of numbers", param, ctx)


FLOATS = FloatList()


def _threads():
    raw = os.environ.get("FRACSEMI_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise click.UsageError(f"FRACSEMI_THREADS must be an integer, got {raw!r}")
    return os.cpu_count() or 1


def _fmt(value):
    return "%.17g" % value


def _write_csv(header, rows, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    _emit(buf.getvalue(), out)


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)


def _format_for(fmt, out):
    if fmt:
        return fmt
    if out and out.lower().endswith(".json"):
        return "json"
    return "csv"


def _load_config(ctx, param, path):
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.BadParameter(f"cannot read config: {exc}", ctx=ctx, param=param)
    if not isinstance(raw, dict):
        raise click.BadParameter("config must be a JSON object", ctx=ctx, param=param)
    values = {}
    for key, val in raw.items():
        key = key.replace("-", "_")
        values[_ALIASES.get(key, key)] = val
    # flags given on the command line override these defaults
    ctx.default_map = {name: dict(values) for name in ("kernel", "spectrum", "solve", "convergence", "verify")}
    return path


@click.group()
@click.version_option(__version__, prog_name="fracsemi")
@click.option("--config", type=click.Path(dir_okay=False), callback=_load_config, is_eager=True,
              expose_value=False, help="JSON file of default parameters; flags override it.")
def cli():
    """Fractional heat kernels, Dirichlet fractional Laplacians and estimate checks."""


def _order(s, dim):
    return FractionalOrder(s, dim)


@cli.command()
@click.option("--s", type=_OPEN_UNIT, required=True, help="Exponent in (0, 1).")
@click.option("--N", "dim", type=click.IntRange(1, 3), default=1, show_default=True)
@click.option("--t", type=FLOATS, required=True, help="Time(s), comma separated.")
@click.option("--t-imag", type=float, default=0.0, help="Imaginary part of the time (fourier only).")
@click.option("--r", type=FLOATS, default="0", help="Distance(s), comma separated.")
@click.option("--method", type=click.Choice(["subordinated", "fourier", "closed"]), default="subordinated",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
def kernel(s, dim, t, t_imag, r, method, out, fmt):
    """Evaluate the fractional heat kernel P_s(t, r)."""
    if any(v <= 0.0 for v in t):
        raise click.BadParameter("times must be positive", param_hint="--t")
    if any(v < 0.0 for v in r):
        raise click.BadParameter("distances must be >= 0", param_hint="--r")
    if method == "closed" and s != 0.5:
        raise click.BadParameter("the closed form exists only for s = 0.5", param_hint="--method")
    if method == "fourier" and dim != 1:
        raise click.BadParameter("the fourier route is one-dimensional", param_hint="--N")
    if t_imag and method != "fourier":
        raise click.BadParameter("complex times need --method fourier", param_hint="--t-imag")
    order = _order(s, dim)
    rows = []
    for tv in t:
        if method == "closed":
            vals = poisson_kernel_closed(tv, np.asarray(r), dim)
        elif method == "fourier":
            KernelQuery(complex(tv, t_imag), 0.0, order)
            vals = fourier_profile(complex(tv, t_imag), r, s)
            vals = vals.real if t_imag == 0.0 else vals
        else:
            vals = subordinated_profile(tv, r, order)
        for rv, val in zip(r, np.atleast_1d(vals)):
            rows.append((tv, rv, s, dim, method, val))
    if out is None and fmt is None and len(rows) == 1:
        val = rows[0][-1]
        click.echo("%.7g" % val if not isinstance(val, complex) else f"{val.real:.7g}{val.imag:+.7g}j")
        return
    if any(isinstance(row[-1], (complex, np.complexfloating)) for row in rows):
        rows = [row[:-1] + (float(row[-1].real), float(row[-1].imag)) for row in rows]
        header = ["t", "r", "s", "N", "method", "value_real", "value_imag"]
    else:
        rows = [row[:-1] + (float(row[-1]),) for row in rows]
        header = ["t", "r", "s", "N", "method", "value"]
    if _format_for(fmt, out) == "json":
        _emit(json.dumps({"version": __version__, "columns": header, "rows": rows}, indent=2) + "\n", out)
    else:
        _write_csv(header, [(float(a), float(b), float(c), d, *rest) for a, b, c, d, *rest in rows], out)


def _grid(a, b, n):
    if not a < b:
        raise click.BadParameter(f"need a < b, got a={a}, b={b}", param_hint="--a/--b")
    return Grid1D(a, b, n)


@cli.command("spectrum")
@click.option("--s", type=_OPEN_UNIT, required=True)
@click.option("--a", type=float, default=-1.0, show_default=True)
@click.option("--b", type=float, default=1.0, show_default=True)
@click.option("--n", type=click.IntRange(8, 1024), default=256, show_default=True)
@click.option("--k", type=click.IntRange(1), default=None, help="Number of eigenvalues to write.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
def spectrum_cmd(s, a, b, n, k, out, fmt):
    """Eigenvalues of the discrete Dirichlet operator (ascending)."""
    grid = _grid(a, b, n)
    spec = spectrum(assemble_dirichlet(grid, _order(s, 1)), k)
    lam = spec.eigenvalues[: k or n]
    if _format_for(fmt, out) == "json":
        _emit(json.dumps({"version": __version__, "eigenvalues": [float(v) for v in lam]}, indent=2) + "\n", out)
    else:
        _write_csv(["index", "eigenvalue"], [(i + 1, float(v)) for i, v in enumerate(lam)], out)


def _rhs(name, x):
    if name == "one":
        return np.ones_like(x)
    if name == "gaussian":
        return np.exp(-x * x)
    # bump: cos^2 window on the middle half of the interval
    mid = 0.5 * (x[0] + x[-1])
    half = 0.25 * (x[-1] - x[0])
    y = (x - mid) / half
    return np.where(np.abs(y) < 1.0, np.cos(0.5 * math.pi * y) ** 2, 0.0)


@cli.command()
@click.option("--s", type=_OPEN_UNIT, required=True)
@click.option("--a", type=float, default=-1.0, show_default=True)
@click.option("--b", type=float, default=1.0, show_default=True)
@click.option("--n", type=click.IntRange(8, 4096), default=256, show_default=True)
@click.option("--lambda", "lam", type=click.FloatRange(0.0), default=0.0, show_default=True)
@click.option("--f", "rhs", type=click.Choice(["one", "gaussian", "bump"]), default="one", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
def solve(s, a, b, n, lam, rhs, out, fmt):
    """Solve (-Delta)^s u + lambda u = f in (a, b) with u = 0 outside."""
    grid = _grid(a, b, n)
    x = grid.nodes
    u = solve_exterior_dirichlet(assemble_dirichlet(grid, _order(s, 1)), lam, _rhs(rhs, x))
    if _format_for(fmt, out) == "json":
        _emit(json.dumps({"version": __version__, "x": x.tolist(), "u": u.tolist()}, indent=2) + "\n", out)
    else:
        _write_csv(["x", "u"], [(float(xi), float(ui)) for xi, ui in zip(x, u)], out)


@cli.command()
@click.option("--s-list", type=FLOATS, default="0.9,0.99,0.999", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
def convergence(s_list, out, fmt):
    """Gap between the nonlocal and local forms of the unit Gaussian as s -> 1."""
    if any(not 0.0 < v < 1.0 for v in s_list):
        raise click.BadParameter("every s must lie in (0, 1)", param_hint="--s-list")
    g = gaussian_field()
    rows = convergence_to_laplacian(g, g, s_list)
    if _format_for(fmt, out) == "json":
        payload = [dict(zip(("s", "lhs", "rhs", "gap"), row)) for row in rows]
        _emit(json.dumps({"version": __version__, "rows": payload}, indent=2) + "\n", out)
    else:
        _write_csv(["s", "lhs", "rhs", "gap"], rows, out)


@cli.command()
@click.argument("checks", nargs=-1)
@click.option("--s", type=_OPEN_UNIT, default=0.5, show_default=True)
@click.option("--omega", type=FLOATS, default="-1,1", show_default=True, help="Interval a,b.")
@click.option("--n", type=click.IntRange(16, 1024), default=256, show_default=True)
@click.option("--epsilon", type=click.FloatRange(0.0, 1.0, min_open=True), default=0.5, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
def verify(checks, s, omega, n, epsilon, seed, out, fmt):
    """Run estimate checks: 'all' or any of the check names."""
    names = list(checks) or ["all"]
    if "all" in names:
        names = list(CHECK_NAMES)
    unknown = [c for c in names if c not in CHECK_NAMES]
    if unknown:
        raise click.BadParameter(f"unknown check(s) {', '.join(unknown)}; choose from all, "
                                 + ", ".join(CHECK_NAMES), param_hint="CHECKS")
    if len(omega) != 2 or not omega[0] < omega[1]:
        raise click.BadParameter("expected a,b with a < b", param_hint="--omega")
    if 4 * n > 1024 and ("eigenvalues" in names):
        raise click.BadParameter("the eigenvalue check needs 4n <= 1024", param_hint="--n")
    reports = run_checks(names, s=s, a=omega[0], b=omega[1], n=n, eps=epsilon, seed=seed, workers=_threads())
    config = {"s": s, "omega": list(omega), "n": n, "epsilon": epsilon, "seed": seed, "checks": names}
    if _format_for(fmt, out) == "json":
        doc = {"version": __version__, "config": config, "checks": [r.as_dict() for r in reports]}
        _emit(json.dumps(doc, indent=2) + "\n", out)
    else:
        _write_csv(["name", "pass", "max_violation", "tolerance", "samples", "seed"],
                   [(r.name, str(r.passed).lower(), float(r.max_violation), float(r.tolerance), r.samples,
                     "" if r.seed is None else r.seed) for r in reports], out)
    for r in reports:
        click.echo(f"{'PASS' if r.passed else 'FAIL'} {r.name} max_violation={r.max_violation:.3g}", err=True)
    if not all(r.passed for r in reports):
        sys.exit(1)


def main(argv=None):
    """Console entry point."""
    try:
        cli.main(args=argv, prog_name="fracsemi", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except DomainError as exc:
        click.echo(f"usage error: {exc}", err=True)
        sys.exit(2)
    except FracSemiError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(1)
    sys.exit(0)


if __name__ == "__main__":
    main()
