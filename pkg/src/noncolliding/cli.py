"""Command-line front end.

    noncolliding kernel     tabulate a kernel over a space-time grid (CSV)
    noncolliding correlate  correlation functions / Fredholm generating functions (JSON)
    noncolliding sample     weighted Monte Carlo run (JSON summary, JSON-lines ensemble)
    noncolliding study      relaxation or invariance-principle sweeps (CSV)

Exit codes: 0 success, 2 configuration error, 3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from fractions import Fraction

from . import continuum, finite_kernel, infinite_system, mc_engine
from .lattice_walk import DEFAULT_ENUMERATION_CAP, EnumerationCapError, is_supported
from .martingales import InvalidConfigurationError, SiteConfiguration

EXIT_CONFIG = 2
EXIT_CAP = 3
THREADS_ENV = "NONCOLLIDING_THREADS"


class ConfigError(Exception):
    pass


def fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def parse_number(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return Fraction(tok) if "/" in tok else float(tok)
    except ValueError:
        raise ConfigError(f"not a number: {tok!r}") from None


def parse_values(text: str) -> list:
    """'3', '-3..3', '1,2,5', '0..8:2' (step) -> list of numbers."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            rng, _, step = part.partition(":")
            lo, hi = rng.split("..")
            lo, hi, st = int(lo), int(hi), int(step) if step else 1
            out.extend(range(lo, hi + 1, st))
        else:
            out.append(parse_number(part))
    return out


def parse_grid(text: str) -> dict[str, list]:
    """'s=1,t=1,x=-3..3,y=-3..3' -> {'s': [1], 't': [1], 'x': [...], 'y': [...]}."""
    grid: dict[str, list] = {}
    key = None
    for tok in text.split(","):
        if "=" in tok:
            key, _, val = tok.partition("=")
            key = key.strip()
            grid[key] = parse_values(val)
        elif key is None:
            raise ConfigError(f"grid token {tok!r} has no key")
        else:
            grid[key].extend(parse_values(tok))
    missing = {"s", "t", "x", "y"} - set(grid)
    if missing:
        raise ConfigError(f"grid is missing {sorted(missing)}")
    return grid


def parse_sites(text: str) -> SiteConfiguration:
    try:
        return SiteConfiguration(tuple(int(v) for v in text.split(",")))
    except InvalidConfigurationError as exc:
        raise ConfigError(f"invalid site configuration: {exc}") from None
    except ValueError:
        raise ConfigError(f"sites must be integers: {text!r}") from None


def parse_equidistant(text: str) -> infinite_system.EquidistantConfig:
    val = text.split("=", 1)[1] if "=" in text else text
    try:
        return infinite_system.EquidistantConfig(int(val))
    except ValueError as exc:
        raise ConfigError(f"invalid equidistant configuration: {exc}") from None


def parse_point(text: str) -> tuple[int, int]:
    try:
        t, x = text.split(":")
        return int(t), int(x)
    except ValueError:
        raise ConfigError(f"point must be t:x, got {text!r}") from None


def group_points(points: list[tuple[int, int]]) -> tuple[list[int], list[list[int]]]:
    times = sorted({t for t, _ in points})
    return times, [[x for t, x in points if t == tm] for tm in times]


@contextmanager
def open_out(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# --------------------------------------------------------------------- kernel

KERNEL_HEADER = ["s", "x", "t", "y", "value", "mode"]


def cmd_kernel(args) -> None:
    rows = []
    if args.sine:
        if not args.equidistant:
            raise ConfigError("--sine needs --equidistant")
        cfg = parse_equidistant(args.equidistant)
        for dt, dx in itertools.product(parse_values(args.dt), parse_values(args.dx)):
            rows.append((0, 0, dt, dx, lambda dt=dt, dx=dx: infinite_system.sine_kernel_discrete(cfg.rho, dt, dx, args.nodes), "quadrature"))
    else:
        if not args.grid:
            raise ConfigError("--grid is required unless --sine is given")
        grid = parse_grid(args.grid)
        pts = list(itertools.product(grid["s"], grid["x"], grid["t"], grid["y"]))
        if args.dyson:
            if args.equidistant:
                a = parse_equidistant(args.equidistant).a
                fn = lambda s, x, t, y: continuum.dyson_kernel_equidistant(a, s, x, t, y, args.nodes)  # noqa: E731
            elif args.sites:
                xi = parse_sites(args.sites)
                fn = lambda s, x, t, y: continuum.dyson_kernel_finite(xi, s, x, t, y)  # noqa: E731
            else:
                raise ConfigError("--dyson needs --sites or --equidistant")
            if any(s <= 0 or t <= 0 for s, _, t, _ in pts):
                raise ConfigError("continuum kernel times must be positive")
            mode = "float"
        elif args.equidistant:
            cfg = parse_equidistant(args.equidistant)
            fn = lambda s, x, t, y: infinite_system.kernel_inf(cfg, int(s), int(x), int(t), int(y), args.nodes)  # noqa: E731
            mode = "float"
        elif args.sites:
            xi = parse_sites(args.sites)
            mode = args.mode
            fn = lambda s, x, t, y: finite_kernel.kernel_value(xi, int(s), int(x), int(t), int(y), mode)  # noqa: E731
        else:
            raise ConfigError("give --sites or --equidistant")
        if not args.dyson and any(int(v) != v or v < 0 for s, _, t, _ in pts for v in (s, t)):
            raise ConfigError("lattice kernel times must be non-negative integers")
        for s, x, t, y in pts:
            rows.append((s, x, t, y, lambda s=s, x=x, t=t, y=y: fn(s, x, t, y), mode))

    workers = args.workers or default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda r: r[4](), rows))
    else:
        values = [r[4]() for r in rows]
    with open_out(args.output) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(KERNEL_HEADER)
        for (s, x, t, y, _, mode), v in zip(rows, values):
            w.writerow([fmt(s), fmt(x), fmt(t), fmt(y), fmt(v), mode])


# ----------------------------------------------------------------- correlate

def cmd_correlate(args) -> None:
    xi = parse_sites(args.sites)
    result: dict = {}
    if args.chi:
        chi_pts = []
        for text in args.chi:
            try:
                t, x, c = text.split(":")
                chi_pts.append((int(t), int(x), parse_number(c)))
            except ValueError:
                raise ConfigError(f"chi entry must be t:x:value, got {text!r}") from None
        times = sorted({t for t, _, _ in chi_pts})
        chi = [{x: c for t, x, c in chi_pts if t == tm} for tm in times]
        value = finite_kernel.fredholm_gf(xi, times, chi, args.mode)
        result = {"points": [[t, x, fmt(c)] for t, x, c in chi_pts], "value": fmt(value), "method": "fredholm"}
        if args.oracle:
            exact = mc_engine.exact_generating_function(
                xi.sites, times, [{x: Fraction(c) for x, c in cm.items()} for cm in chi], args.cap)
            result["oracle"] = fmt(exact)
            result["equal"] = bool(Fraction(value) == exact) if args.mode == "exact" else abs(float(value) - float(exact)) < 1e-10
    else:
        if not args.point:
            raise ConfigError("give at least one --point t:x or --chi t:x:value")
        pts = [parse_point(p) for p in args.point]
        times, grouped = group_points(pts)
        value = finite_kernel.correlation(xi, times, grouped, args.mode)
        result = {"points": [list(p) for p in pts], "value": fmt(value), "method": "determinant"}
        if not all(is_supported(t, x) for t, x in pts):
            result["annotation"] = "parity"
        if args.oracle:
            exact = mc_engine.exact_correlation(xi.sites, times, grouped, args.cap)
            result["oracle"] = fmt(exact)
            result["equal"] = bool(Fraction(value) == exact) if args.mode == "exact" else abs(float(value) - float(exact)) < 1e-10
    with open_out(args.output) as fh:
        json.dump(result, fh, indent=2)
        fh.write("\n")


# -------------------------------------------------------------------- sample

def cmd_sample(args) -> None:
    xi = parse_sites(args.sites)
    pts = [parse_point(p) for p in (args.point or [])]
    times, grouped = group_points(pts)
    if pts and max(times) > args.horizon:
        raise ConfigError("observation time beyond --horizon")
    summary: dict = {"sites": list(xi.sites), "horizon": args.horizon, "points": [list(p) for p in pts]}

    if args.exact:
        from .lattice_walk import PathEnumerator

        paths, prob = PathEnumerator(args.cap).all_paths(xi.sites, args.horizon)
        num = mc_engine.survival_and_h(paths)
        den = mc_engine.vandermonde(xi.sites)
        ens = mc_engine.WeightedEnsemble(paths, num, den, seed=0, n_streams=1)
        summary["method"] = "enumeration"
        summary["probability_per_path"] = fmt(prob)
        summary["mean_weight"] = fmt(sum((Fraction(int(n), den) for n in num), Fraction(0)) * prob)
        if pts:
            summary["estimate"] = fmt(mc_engine.exact_correlation(xi.sites, times, grouped, args.cap))
            summary["std_error"] = "0"
            summary["exact_if_available"] = summary["estimate"]
    else:
        ens = mc_engine.sample_weighted(xi.sites, args.horizon, args.samples, args.seed,
                                        args.streams, args.workers or default_workers())
        mean, se = ens.mean_weight()
        summary.update(method="monte_carlo", samples=args.samples, seed=args.seed, streams=args.streams,
                       mean_weight=mean, mean_weight_std_error=se)
        if pts:
            est, est_se = mc_engine.estimate_correlation(ens, times, grouped)
            summary["estimate"] = est
            summary["std_error"] = est_se
            exact = None
            if len(xi) * max(times) <= args.cap:
                exact = fmt(finite_kernel.correlation(xi, times, grouped))
            summary["exact_if_available"] = exact
    if args.ensemble:
        with open(args.ensemble, "w") as fh:
            ens.dump_jsonl(fh)
    with open_out(args.output) as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")


# --------------------------------------------------------------------- study

def cmd_study(args) -> None:
    ns = parse_values(args.n)
    with open_out(args.output) as fh:
        w = csv.writer(fh, lineterminator="\n")
        if args.kind == "relaxation":
            cfg = parse_equidistant(args.equidistant or "a=2")
            w.writerow(["n", "gap"])
            for n in ns:
                w.writerow([n, repr(infinite_system.relaxation_gap(cfg, args.s, args.t, args.x, args.y, int(n), args.nodes))])
        else:
            xi = parse_sites(args.sites or "0,2,4")
            w.writerow(["n", "clt_gap", "martingale_gap"])
            for n in ns:
                try:
                    clt, mg = continuum.convergence_gap(xi, int(n), args.s, args.x, args.t, args.y)
                except ValueError as exc:
                    raise ConfigError(str(exc)) from None
                w.writerow([n, repr(clt), repr(mg)])


# ---------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noncolliding", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-o", "--output", help="output file (default stdout)")
        sp.add_argument("--nodes", type=int, default=infinite_system.DEFAULT_NODES,
                        help="Gauss-Legendre nodes for quadrature-based kernels")
        sp.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                        help="max walkers x steps for exact enumeration")
        sp.add_argument("--workers", type=int, default=None,
                        help=f"worker threads (default ${THREADS_ENV} or 1)")

    k = sub.add_parser("kernel", help="tabulate kernel values")
    common(k)
    k.add_argument("--sites", help="finite configuration, e.g. 0,2,4")
    k.add_argument("--equidistant", help="infinite configuration 2aZ, e.g. a=2")
    k.add_argument("--grid", help="s=..,t=..,x=..,y=.. with lists or lo..hi ranges")
    k.add_argument("--sine", action="store_true", help="equilibrium discrete sine kernel over --dt/--dx")
    k.add_argument("--dyson", action="store_true", help="continuum (Dyson model) kernel")
    k.add_argument("--dt", default="0")
    k.add_argument("--dx", default="0")
    k.add_argument("--mode", choices=["exact", "float"], default="exact")
    k.set_defaults(func=cmd_kernel)

    c = sub.add_parser("correlate", help="correlation functions or Fredholm generating functions")
    common(c)
    c.add_argument("--sites", required=True)
    c.add_argument("--point", action="append", help="t:x, repeatable")
    c.add_argument("--chi", action="append", help="t:x:value entry of chi = e^f - 1, repeatable")
    c.add_argument("--mode", choices=["exact", "float"], default="exact")
    c.add_argument("--oracle", action="store_true", help="also compute the enumeration value")
    c.set_defaults(func=cmd_correlate)

    s = sub.add_parser("sample", help="weighted Monte Carlo ensemble")
    common(s)
    s.add_argument("--sites", required=True)
    s.add_argument("--horizon", type=int, required=True)
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--streams", type=int, default=1)
    s.add_argument("--point", action="append", help="t:x, repeatable")
    s.add_argument("--ensemble", help="write the ensemble as JSON lines here")
    s.add_argument("--exact", action="store_true", help="enumerate every path instead of sampling")
    s.set_defaults(func=cmd_sample)

    st = sub.add_parser("study", help="relaxation or invariance-principle sweep")
    common(st)
    st.add_argument("kind", choices=["relaxation", "convergence"])
    st.add_argument("--equidistant", help="a=2 (relaxation)")
    st.add_argument("--sites", help="finite configuration (convergence)")
    st.add_argument("--n", default="4,16,64,256")
    st.add_argument("--s", type=parse_number, default=0)
    st.add_argument("--t", type=parse_number, default=0)
    st.add_argument("--x", type=parse_number, default=0)
    st.add_argument("--y", type=parse_number, default=0)
    st.set_defaults(func=cmd_study)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, InvalidConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    return 0


if __name__ == "__main__":
    sys.exit(main())
