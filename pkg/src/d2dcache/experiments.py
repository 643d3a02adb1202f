"""Sweep harness: configuration resolution, figure presets, CSV/SVG emission.

A sweep evaluates one quantity (hit probability, energy ratio, or optimal
pool size) over a grid of one swept variable (pool size, Zipf exponent, or
member count) for a set of strategy curves, writing one CSV per preset plus
a flat-text manifest that reproduces the run byte-for-byte when passed back
through ``--config``.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, analytic, optimize
from .caching import CacheStrategy
from .montecarlo import SimConfig, simulate
from .popularity import ZipfCatalog
from .spatial import DISK, TORUS, NetworkParams

PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6", "custom")
SWEPT_VARS = ("m_o", "gamma", "phi")
QUANTITIES = ("hit_prob", "ec_ratio", "pool_size")
POINT_STRATEGIES = ("top", "mpc", "eprc", "lhp", "lec")
OBJECTIVES = ("min", "max")
FORMATS = ("csv", "csv+svg")

#: Default model parameters (reference simulation setup).
DEFAULTS = {
    "gamma": 1.0,
    "files": 500,
    "omega_cache": 10,
    "omega_ec": 0.1,
    "heads": 100,
    "members": 250,
    "cell_radius": 200.0,
    "d2d_radius": 50.0,
}


@dataclass(frozen=True)
class Config:
    """Fully resolved run configuration: model, execution and sweep keys.

    Key names double as the flat config-file keys and (dashed) CLI flags.
    """

    gamma: float = DEFAULTS["gamma"]
    files: int = DEFAULTS["files"]
    omega_cache: int = DEFAULTS["omega_cache"]
    omega_ec: float = DEFAULTS["omega_ec"]
    heads: int = DEFAULTS["heads"]
    members: int = DEFAULTS["members"]
    cell_radius: float = DEFAULTS["cell_radius"]
    d2d_radius: float = DEFAULTS["d2d_radius"]
    seed: int = 1
    trials: int = 100
    requests_per_trial: int = 1
    region: str = TORUS
    format: str = "csv"
    preset: str | None = None
    swept: str | None = None
    grid: tuple | None = None
    strategies: tuple[str, ...] | None = None
    quantity: str = "hit_prob"
    m_o: int | None = None
    strategy: str = "top"
    objective: str = "min"

    def network_params(self) -> NetworkParams:
        return NetworkParams(
            cell_radius=self.cell_radius,
            d2d_radius=self.d2d_radius,
            num_heads=self.heads,
            num_members=self.members,
            cache_capacity=self.omega_cache,
            energy_factor=self.omega_ec,
        )

    def catalog(self) -> ZipfCatalog:
        return ZipfCatalog(self.files, self.gamma)

    def pool_or_library(self) -> int:
        return self.files if self.m_o is None else self.m_o


_INT_KEYS = ("files", "omega_cache", "heads", "members", "seed", "trials",
             "requests_per_trial", "m_o")
_FLOAT_KEYS = ("gamma", "omega_ec", "cell_radius", "d2d_radius")
_CHOICE_KEYS = {
    "region": (TORUS, DISK),
    "format": FORMATS,
    "preset": PRESETS,
    "swept": SWEPT_VARS,
    "quantity": QUANTITIES,
    "strategy": POINT_STRATEGIES,
    "objective": OBJECTIVES,
}
_LIST_KEYS = ("grid", "strategies")
ALL_KEYS = _INT_KEYS + _FLOAT_KEYS + tuple(_CHOICE_KEYS) + _LIST_KEYS


def _parse_number(token: str):
    """int when the token looks integral, else float."""
    try:
        return int(token)
    except ValueError:
        return float(token)


def _coerce(key: str, value):
    """Convert a raw string (or already-typed value) for ``key``."""
    if not isinstance(value, str):
        return value
    value = value.strip()
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
        if key == "grid":
            return tuple(_parse_number(tok) for tok in value.split(",") if tok.strip())
        if key == "strategies":
            return tuple(tok.strip() for tok in value.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"invalid value for '{key}': {value!r}") from None
    return value


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` file ('#' starts a comment line)."""
    values: dict = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in ALL_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown configuration key '{key}'")
        values[key] = _coerce(key, value)
    return values


def _strategy_token_ok(token: str) -> bool:
    if token in ("lhp", "lec", "mpc", "eprc", "top"):
        return True
    if token.startswith("top:"):
        try:
            int(token.split(":", 1)[1])
            return True
        except ValueError:
            return False
    return False


def validate_config(cfg: Config) -> None:
    """Range and consistency checks, naming the offending key."""
    if cfg.gamma < 0:
        raise ValueError(f"gamma ({cfg.gamma}) must be >= 0")
    if cfg.files < 1:
        raise ValueError(f"files ({cfg.files}) must be >= 1")
    if cfg.omega_cache < 1:
        raise ValueError(f"omega_cache ({cfg.omega_cache}) must be >= 1")
    if cfg.omega_cache > cfg.files:
        raise ValueError(
            f"omega_cache ({cfg.omega_cache}) must not exceed files ({cfg.files})"
        )
    if cfg.omega_ec < 0:
        raise ValueError(f"omega_ec ({cfg.omega_ec}) must be >= 0")
    if cfg.heads < 0:
        raise ValueError(f"heads ({cfg.heads}) must be >= 0")
    if cfg.members < 0:
        raise ValueError(f"members ({cfg.members}) must be >= 0")
    if cfg.cell_radius <= 0:
        raise ValueError(f"cell_radius ({cfg.cell_radius}) must be > 0")
    if not 0 < cfg.d2d_radius <= cfg.cell_radius:
        raise ValueError(
            f"d2d_radius ({cfg.d2d_radius}) must lie in (0, cell_radius={cfg.cell_radius}]"
        )
    if cfg.seed < 0:
        raise ValueError(f"seed ({cfg.seed}) must be >= 0")
    if cfg.trials < 1:
        raise ValueError(f"trials ({cfg.trials}) must be >= 1")
    if cfg.requests_per_trial < 1:
        raise ValueError(f"requests_per_trial ({cfg.requests_per_trial}) must be >= 1")
    for key, choices in _CHOICE_KEYS.items():
        value = getattr(cfg, key)
        if value is not None and value not in choices:
            raise ValueError(f"{key} ({value!r}) must be one of {'|'.join(choices)}")
    if cfg.m_o is not None and not cfg.omega_cache <= cfg.m_o <= cfg.files:
        raise ValueError(
            f"m_o ({cfg.m_o}) must lie in [omega_cache={cfg.omega_cache}, files={cfg.files}]"
        )
    if cfg.strategies is not None:
        for token in cfg.strategies:
            if not _strategy_token_ok(token):
                raise ValueError(
                    f"strategies token {token!r} must be lhp|lec|mpc|eprc|top:<pool>"
                )
    if cfg.grid is not None and len(cfg.grid) == 0:
        raise ValueError("grid must contain at least one value")


def parse_config(config_file=None, overrides: dict | None = None) -> Config:
    """Resolve a configuration: defaults, then file values, then overrides.

    ``overrides`` holds already-typed values from CLI flags (None entries
    are ignored).  Raises ValueError naming the offending key on any
    unknown key or out-of-range value.
    """
    values: dict = {}
    if config_file is not None:
        values.update(read_config_file(config_file))
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in ALL_KEYS:
            raise ValueError(f"unknown configuration key '{key}'")
        values[key] = _coerce(key, value)
    cfg = Config(**values)
    validate_config(cfg)
    return cfg


# --------------------------------------------------------------------------
# sweep specification


@dataclass(frozen=True)
class Curve:
    """One line of a figure: a strategy token plus parameter overrides."""

    label: str
    token: str  # lhp | lec | mpc | eprc | top | top:<pool>
    overrides: tuple = ()  # ((key, value), ...)


@dataclass(frozen=True)
class SweepSpec:
    """Resolved sweep: swept variable, grid, curves and emitted quantity."""

    name: str
    swept: str
    grid: tuple
    curves: tuple[Curve, ...]
    quantity: str
    with_sim: bool


_DEFAULT_GAMMA_GRID = tuple(i / 10 for i in range(5, 21))  # 0.5 .. 2.0
_FIG6_PHI_GRID = tuple(range(50, 501, 50))


def build_sweep_spec(cfg: Config) -> SweepSpec:
    """Expand ``cfg.preset`` into a concrete sweep specification."""
    preset = cfg.preset
    if preset is None:
        raise ValueError("preset is required for a sweep (fig2..fig6 or custom)")
    if preset == "fig2":
        grid = tuple(range(cfg.omega_cache, cfg.files + 1))
        curves = tuple(
            Curve(f"top gamma={g:g}", "top", (("gamma", g),))
            for g in (0.8, 1.0, 1.2, 1.4)
        )
        return SweepSpec("fig2", "m_o", grid, curves, "hit_prob", False)
    if preset == "fig3":
        curves = tuple(
            Curve(f"{tok} heads={h}", tok, (("heads", h),))
            for h in (100, 150)
            for tok in ("lhp", "mpc", "eprc")
        )
        return SweepSpec("fig3", "gamma", _DEFAULT_GAMMA_GRID, curves, "hit_prob", True)
    if preset == "fig4":
        curves = tuple(
            Curve(f"{tok} heads={h}", tok, (("heads", h),))
            for h in (100, 150)
            for tok in ("lec", "lhp", "mpc", "eprc")
        )
        return SweepSpec("fig4", "gamma", _DEFAULT_GAMMA_GRID, curves, "ec_ratio", True)
    if preset == "fig5":
        curves = tuple(
            Curve(f"{tok} heads={h}", tok, (("heads", h),))
            for h in (100, 150)
            for tok in ("lhp", "lec")
        )
        return SweepSpec("fig5", "gamma", _DEFAULT_GAMMA_GRID, curves, "pool_size", False)
    if preset == "fig6":
        curves = tuple(
            Curve(f"{tok} gamma={g:g}", tok, (("gamma", g),))
            for g in (1.0, 1.4)
            for tok in ("lec", "lhp", "eprc")
        )
        return SweepSpec("fig6", "phi", _FIG6_PHI_GRID, curves, "ec_ratio", True)
    # custom
    if cfg.swept is None:
        raise ValueError("custom sweep requires 'swept' (m_o|gamma|phi)")
    if cfg.grid is None or len(cfg.grid) == 0:
        raise ValueError("custom sweep requires a non-empty 'grid'")
    grid = _validated_grid(cfg)
    tokens = cfg.strategies or ("lhp",)
    curves = tuple(Curve(tok, tok) for tok in tokens)
    with_sim = cfg.quantity != "pool_size"
    return SweepSpec("custom", cfg.swept, grid, curves, cfg.quantity, with_sim)


def _validated_grid(cfg: Config) -> tuple:
    grid = cfg.grid
    if any(grid[i] >= grid[i + 1] for i in range(len(grid) - 1)):
        raise ValueError("grid values must be strictly increasing")
    if cfg.swept in ("m_o", "phi"):
        bad = [v for v in grid if not float(v).is_integer()]
        if bad:
            raise ValueError(f"grid for swept={cfg.swept} must be integers, got {bad}")
        grid = tuple(int(v) for v in grid)
        if cfg.swept == "m_o":
            out_of_range = [v for v in grid if not cfg.omega_cache <= v <= cfg.files]
            if out_of_range:
                raise ValueError(
                    f"grid m_o values {out_of_range} outside "
                    f"[omega_cache={cfg.omega_cache}, files={cfg.files}]"
                )
        if cfg.swept == "phi" and any(v < 1 for v in grid):
            raise ValueError("grid phi values must be >= 1")
    else:
        if any(v < 0 for v in grid):
            raise ValueError("grid gamma values must be >= 0")
        grid = tuple(float(v) for v in grid)
    return grid


# --------------------------------------------------------------------------
# point evaluation


@dataclass(frozen=True)
class SweepRow:
    swept_value: object
    strategy: str
    analytic_value: float
    mc_value: float | None
    mc_halfwidth: float | None
    seed: int | None


def _point_config(cfg: Config, spec: SweepSpec, curve: Curve, swept_value) -> Config:
    changes: dict = dict(curve.overrides)
    if spec.swept == "gamma":
        changes["gamma"] = float(swept_value)
    elif spec.swept == "phi":
        changes["members"] = int(swept_value)
    return dataclasses.replace(cfg, **changes)


def _resolve_pool(token: str, params, catalog, cfg: Config, spec: SweepSpec, swept_value) -> int:
    if token == "lhp":
        return optimize.optimize_hit(params, catalog).pool_size
    if token == "lec":
        return optimize.optimize_energy(params, catalog, cfg.objective).pool_size
    if token == "mpc":
        return params.cache_capacity
    if token == "eprc":
        return catalog.size
    if token == "top":
        if spec.swept != "m_o":
            raise ValueError("bare 'top' strategy is only valid when sweeping m_o")
        return int(swept_value)
    return int(token.split(":", 1)[1])  # top:<pool>


def _point_strategy(token: str, pool: int) -> CacheStrategy:
    if token == "mpc":
        return CacheStrategy.mpc()
    if token == "eprc":
        return CacheStrategy.eprc()
    return CacheStrategy.top(pool)


def _child_seed(master_seed: int, index: int) -> int:
    """Stable per-point seed, independent of evaluation order."""
    return int(np.random.SeedSequence((master_seed, index)).generate_state(1, np.uint64)[0])


def _evaluate_row(cfg: Config, spec: SweepSpec, curve: Curve, swept_value, index: int) -> SweepRow:
    point_cfg = _point_config(cfg, spec, curve, swept_value)
    params = point_cfg.network_params()
    catalog = point_cfg.catalog()
    pool = _resolve_pool(curve.token, params, catalog, cfg, spec, swept_value)

    if spec.quantity == "hit_prob":
        value = analytic.hit_prob(params, catalog, pool)
    elif spec.quantity == "ec_ratio":
        value = analytic.ec_ratio(params, catalog, pool)
    else:
        value = float(pool)

    mc_value = mc_halfwidth = seed = None
    if spec.with_sim:
        seed = _child_seed(cfg.seed, index)
        sim_cfg = SimConfig(
            trials=cfg.trials,
            seed=seed,
            strategy=_point_strategy(curve.token, pool),
            requests_per_trial=cfg.requests_per_trial,
            region_mode=cfg.region,
        )
        result = simulate(params, catalog, sim_cfg)
        est = result.hit_rate if spec.quantity == "hit_prob" else result.ec_ratio
        mc_value, mc_halfwidth = est.value, est.halfwidth
    return SweepRow(swept_value, curve.label, float(value), mc_value, mc_halfwidth, seed)


# --------------------------------------------------------------------------
# output emission


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".9g")


CSV_HEADER = "swept_value,strategy,analytic_value,mc_value,mc_halfwidth,seed"


def write_csv(rows, path: Path) -> None:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    _fmt(r.swept_value),
                    r.strategy,
                    _fmt(r.analytic_value),
                    _fmt(r.mc_value),
                    _fmt(r.mc_halfwidth),
                    _fmt(r.seed),
                ]
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="")


def write_manifest(cfg: Config, path: Path) -> None:
    """Emit the resolved configuration as a re-runnable flat config file."""
    lines = [
        f"# d2dcache {__version__} sweep manifest",
        "# rerun with: d2dcache sweep --config <this file> --out <dir>",
    ]
    for field in dataclasses.fields(Config):
        value = getattr(cfg, field.name)
        if value is None:
            continue
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        lines.append(f"{field.name} = {value}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="")


def write_svg(rows, spec: SweepSpec, path: Path) -> None:
    """Line plot of the analytic curves with Monte Carlo error bars."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    labels = sorted({r.strategy for r in rows})
    for label in labels:
        pts = [r for r in rows if r.strategy == label]
        xs = [r.swept_value for r in pts]
        ys = [r.analytic_value for r in pts]
        (line,) = ax.plot(xs, ys, label=label)
        if any(r.mc_value is not None for r in pts):
            ax.errorbar(
                xs,
                [r.mc_value for r in pts],
                yerr=[r.mc_halfwidth for r in pts],
                fmt="o",
                ms=3,
                color=line.get_color(),
                alpha=0.6,
                linestyle="none",
            )
    ax.set_xlabel(spec.swept)
    ax.set_ylabel(spec.quantity)
    ax.set_title(spec.name)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def run_sweep(cfg: Config, out_dir, workers: int = 1) -> dict:
    """Run the sweep described by ``cfg`` and write its outputs.

    Returns a summary dict with the emitted paths.  Output is byte-stable:
    rows are evaluated with per-row seeds derived from (cfg.seed, row
    index after sorting), so neither the worker count nor the evaluation
    order can change the CSV.
    """
    spec = build_sweep_spec(cfg)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    points = [(v, c) for v in spec.grid for c in spec.curves]
    points.sort(key=lambda vc: (vc[0], vc[1].label))

    rows: list = [None] * len(points)

    def work(i: int) -> None:
        value, curve = points[i]
        rows[i] = _evaluate_row(cfg, spec, curve, value, i)

    if workers <= 1:
        for i in range(len(points)):
            work(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, range(len(points))))

    csv_path = out_dir / f"{spec.name}.csv"
    write_csv(rows, csv_path)
    manifest_path = out_dir / f"{spec.name}_manifest.txt"
    write_manifest(cfg, manifest_path)
    svg_path = None
    if cfg.format == "csv+svg":
        svg_path = out_dir / f"{spec.name}.svg"
        write_svg(rows, spec, svg_path)
    return {
        "preset": spec.name,
        "rows": len(rows),
        "csv": str(csv_path),
        "manifest": str(manifest_path),
        "svg": None if svg_path is None else str(svg_path),
    }
