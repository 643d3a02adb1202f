"""Command-line interface.

Subcommands: ``analytic`` (closed forms at one point), ``simulate``
(Monte Carlo at one point), ``optimize`` (best pool size under the hit or
energy objective), ``sweep`` (figure presets and custom sweeps, CSV/SVG
output).  Exit codes: 0 success, 1 usage or validation error, 2 runtime or
I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, analytic
from .caching import CacheStrategy
from .experiments import (
    FORMATS,
    OBJECTIVES,
    POINT_STRATEGIES,
    PRESETS,
    QUANTITIES,
    SWEPT_VARS,
    Config,
    parse_config,
    run_sweep,
)
from .montecarlo import SimConfig, simulate
from .optimize import optimize_energy, optimize_hit
from .spatial import DISK, TORUS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors (default would be 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("run options")
    g.add_argument("--config", metavar="FILE", help="flat key = value configuration file")
    g.add_argument("--seed", type=int, help="master random seed (default 1)")
    g.add_argument("--region", choices=[TORUS, DISK], help="simulation region (default torus)")
    g.add_argument("--trials", type=int, help="Monte Carlo deployments (default 100)")
    g.add_argument("--requests-per-trial", type=int, dest="requests_per_trial",
                   help="request redraws per deployment (default 1)")
    g.add_argument("--out", metavar="DIR", default="out", help="output directory (default ./out)")
    g.add_argument("--format", choices=list(FORMATS), help="sweep output format (default csv)")
    g.add_argument("--workers", type=int, default=1, help="worker pool size (default 1)")
    m = parser.add_argument_group("model parameters (defaults in --help epilog)")
    m.add_argument("--gamma", type=float, help="Zipf popularity exponent")
    m.add_argument("--files", type=int, help="library size")
    m.add_argument("--omega-cache", type=int, dest="omega_cache", help="per-head cache capacity")
    m.add_argument("--omega-ec", type=float, dest="omega_ec", help="D2D/cellular energy factor")
    m.add_argument("--heads", type=int, help="cluster-head count")
    m.add_argument("--members", type=int, help="cluster-member count")
    m.add_argument("--cell-radius", type=float, dest="cell_radius", help="cell radius (m)")
    m.add_argument("--d2d-radius", type=float, dest="d2d_radius", help="D2D radius (m)")


_EPILOG = (
    "configuration file keys (same names, '=' separated, '#' comments): "
    "gamma files omega_cache omega_ec heads members cell_radius d2d_radius "
    "seed trials requests_per_trial region format preset swept grid "
    "strategies quantity m_o strategy objective. "
    "Defaults: gamma=1.0 files=500 omega_cache=10 omega_ec=0.1 heads=100 "
    "members=250 cell_radius=200 d2d_radius=50."
)


def build_parser() -> _Parser:
    root = _Parser(
        prog="d2dcache",
        description="Cache-enabled multicast D2D network model and simulator.",
        epilog=_EPILOG,
    )
    root.add_argument("--version", action="version", version=f"d2dcache {__version__}")
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analytic", help="closed-form report at one pool size", epilog=_EPILOG)
    _add_common(p)
    p.add_argument("--m-o", type=int, dest="m_o",
                   help="cached-pool size (default: whole library)")

    p = sub.add_parser("simulate", help="Monte Carlo estimates at one point", epilog=_EPILOG)
    _add_common(p)
    p.add_argument("--m-o", type=int, dest="m_o", help="pool size for the top strategy")
    p.add_argument("--strategy", choices=list(POINT_STRATEGIES),
                   help="cache strategy (default top; lhp/lec simulate at the optimized pool)")

    p = sub.add_parser("optimize", help="best pool size under an objective", epilog=_EPILOG)
    _add_common(p)
    p.add_argument("--strategy", choices=["lhp", "lec"],
                   help="lhp: maximize hit probability; lec: minimize energy ratio")
    p.add_argument("--objective", choices=list(OBJECTIVES),
                   help="search direction for lec (default min)")

    p = sub.add_parser("sweep", help="figure presets and custom sweeps", epilog=_EPILOG)
    _add_common(p)
    p.add_argument("--preset", choices=list(PRESETS), help="sweep preset")
    p.add_argument("--swept", choices=list(SWEPT_VARS), help="custom sweep variable")
    p.add_argument("--grid", help="custom sweep grid, comma separated")
    p.add_argument("--strategies", help="custom curves: lhp,lec,mpc,eprc,top:<pool>")
    p.add_argument("--quantity", choices=list(QUANTITIES), help="custom sweep quantity")
    return root


_CONFIG_FLAGS = (
    "seed", "region", "trials", "requests_per_trial", "format",
    "gamma", "files", "omega_cache", "omega_ec", "heads", "members",
    "cell_radius", "d2d_radius",
    "m_o", "strategy", "objective", "preset", "swept", "grid",
    "strategies", "quantity",
)


def _resolve(args: argparse.Namespace) -> Config:
    overrides = {k: getattr(args, k) for k in _CONFIG_FLAGS if hasattr(args, k)}
    return parse_config(args.config, overrides)


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def _cmd_analytic(args) -> int:
    cfg = _resolve(args)
    params, catalog = cfg.network_params(), cfg.catalog()
    report = analytic.analytic_report(params, catalog, cfg.pool_or_library())
    print(f"pool_size        {report.pool_size}")
    print(f"hit_prob         {_fmt(report.hit_prob)}")
    print(f"d2d_service_prob {_fmt(report.d2d_service_prob)}")
    print(f"active_heads     {_fmt(report.active_heads)}")
    print(f"ec_ratio         {_fmt(report.ec_ratio)}")
    return EXIT_OK


def _point_strategy(cfg, params, catalog) -> CacheStrategy:
    if cfg.strategy == "mpc":
        return CacheStrategy.mpc()
    if cfg.strategy == "eprc":
        return CacheStrategy.eprc()
    if cfg.strategy == "lhp":
        return CacheStrategy.top(optimize_hit(params, catalog).pool_size)
    if cfg.strategy == "lec":
        return CacheStrategy.top(optimize_energy(params, catalog, cfg.objective).pool_size)
    return CacheStrategy.top(cfg.pool_or_library())


def _cmd_simulate(args) -> int:
    cfg = _resolve(args)
    params, catalog = cfg.network_params(), cfg.catalog()
    strategy = _point_strategy(cfg, params, catalog)
    sim_cfg = SimConfig(
        trials=cfg.trials,
        seed=cfg.seed,
        strategy=strategy,
        requests_per_trial=cfg.requests_per_trial,
        region_mode=cfg.region,
    )
    result = simulate(params, catalog, sim_cfg, workers=args.workers)
    print(f"strategy      {strategy.label()}")
    print(f"region        {cfg.region}")
    print(f"samples       {result.samples}")
    print(f"hit_rate      {_fmt(result.hit_rate.value)} +- {_fmt(result.hit_rate.halfwidth)}")
    print(f"active_heads  {_fmt(result.active_heads.value)} +- {_fmt(result.active_heads.halfwidth)}")
    print(f"ec_ratio      {_fmt(result.ec_ratio.value)} +- {_fmt(result.ec_ratio.halfwidth)}")
    return EXIT_OK


def _cmd_optimize(args) -> int:
    cfg = _resolve(args)
    if cfg.strategy not in ("lhp", "lec"):
        raise ValueError("optimize requires strategy lhp or lec (--strategy or config key)")
    params, catalog = cfg.network_params(), cfg.catalog()
    if cfg.strategy == "lhp":
        result = optimize_hit(params, catalog)
        direction = "max"
    else:
        result = optimize_energy(params, catalog, cfg.objective)
        direction = cfg.objective
    print(f"strategy        {cfg.strategy}")
    print(f"objective       {result.objective} ({direction})")
    print(f"pool_size       {result.pool_size}")
    print(f"objective_value {_fmt(result.objective_value)}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _resolve(args)
    summary = run_sweep(cfg, args.out, workers=args.workers)
    print(f"preset   {summary['preset']}")
    print(f"rows     {summary['rows']}")
    print(f"csv      {summary['csv']}")
    print(f"manifest {summary['manifest']}")
    if summary["svg"]:
        print(f"svg      {summary['svg']}")
    return EXIT_OK


_COMMANDS = {
    "analytic": _cmd_analytic,
    "simulate": _cmd_simulate,
    "optimize": _cmd_optimize,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"d2dcache: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"d2dcache: i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
