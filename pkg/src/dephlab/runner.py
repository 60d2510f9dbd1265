"""Configuration-driven sweeps: CSV time series for every computed quantity.

Configuration is a flat ``key = value`` text file with dotted keys
(``bath.beta = 1.0``); command-line flags of the same names override it.
Sweep output is a deterministic CSV with one row per time-grid point and
numbers rendered to 12 significant digits.
"""

import concurrent.futures
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import bath, correlations, teleport
from .bath import BathParams, QuadratureSpec, QuadratureError
from .channel import ChannelVariant, VariantKind, channel_state
from .teleport import NoisePlacement

CSV_COLUMNS = (
    "t", "gamma_s", "zeta", "gamma_ic", "kappa_re", "kappa_im",
    "negativity_paper", "negativity_ppt", "discord_closed", "discord_oracle",
    "fav_closed", "fav_oracle",
)

OUTPUT_GROUPS = {
    "decoherence_functions": ("gamma_s", "zeta", "gamma_ic", "kappa_re", "kappa_im"),
    "negativity": ("negativity_paper", "negativity_ppt"),
    "discord": ("discord_closed", "discord_oracle"),
    "fidelity": ("fav_closed", "fav_oracle"),
}


class ConfigError(ValueError):
    """Malformed configuration file or override."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one sweep needs."""

    bath: BathParams = BathParams()
    quadrature: QuadratureSpec = QuadratureSpec()
    variant: ChannelVariant = ChannelVariant()
    placement: NoisePlacement = NoisePlacement.CHANNEL
    t_min: float = 0.0
    t_max: float = 80.0
    n_points: int = 81
    outputs: frozenset = frozenset(OUTPUT_GROUPS)
    output_path: str = "sweep.csv"
    jobs: int = 1

    def __post_init__(self):
        if self.t_min < 0:
            raise ConfigError(f"t_min must be >= 0, got {self.t_min}")
        if self.t_max <= self.t_min:
            raise ConfigError(f"t_max must exceed t_min, got {self.t_max}")
        if self.n_points < 2:
            raise ConfigError(f"n_points must be >= 2, got {self.n_points}")
        if not self.outputs:
            raise ConfigError("outputs must be nonempty")
        unknown = set(self.outputs) - set(OUTPUT_GROUPS)
        if unknown:
            raise ConfigError(f"unknown outputs: {sorted(unknown)}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")

    def t_grid(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_points)


def parse_config_text(text: str, base: dict | None = None) -> dict:
    """Parse flat ``key = value`` lines into a string-valued dict."""
    values = dict(base or {})
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


_FLOAT_KEYS = {
    "bath.coupling_a", "bath.beta", "bath.omega0", "bath.s", "bath.alpha",
    "quadrature.omega_max", "quadrature.abs_tol", "grid.t_min", "grid.t_max",
    "markov_rate",
}
_INT_KEYS = {"quadrature.panels_per_period", "grid.n_points", "jobs"}
_STR_KEYS = {"variant", "placement", "outputs", "output_path"}


def config_from_values(values: dict) -> RunConfig:
    """Build a RunConfig from string key/value pairs, with full validation."""
    unknown = set(values) - _FLOAT_KEYS - _INT_KEYS - _STR_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")

    def get(key, cast, default):
        if key not in values:
            return default
        if key == "markov_rate" and values[key] == "":
            return default
        try:
            return cast(values[key])
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {values[key]!r}") from exc

    try:
        bath_params = BathParams(
            coupling_a=get("bath.coupling_a", float, 1.0),
            beta=get("bath.beta", float, 1.0),
            omega0=get("bath.omega0", float, 1.0),
            s=get("bath.s", float, 1.0),
            alpha=get("bath.alpha", float, 0.5),
        )
        quad = QuadratureSpec(
            omega_max=get("quadrature.omega_max", float, 6.5),
            panels_per_period=get("quadrature.panels_per_period", int, 8),
            abs_tol=get("quadrature.abs_tol", float, 1e-12),
        )
        kind_name = get("variant", str, "correlated")
        try:
            kind = VariantKind(kind_name)
        except ValueError:
            raise ConfigError(f"unknown variant {kind_name!r}") from None
        variant = ChannelVariant(kind=kind, markov_rate=get("markov_rate", float, None))
        placement_name = get("placement", str, "channel")
        try:
            placement = NoisePlacement(placement_name)
        except ValueError:
            raise ConfigError(f"unknown placement {placement_name!r}") from None
        outputs_raw = get("outputs", str, ",".join(sorted(OUTPUT_GROUPS)))
        outputs = frozenset(x.strip() for x in outputs_raw.split(",") if x.strip())
        return RunConfig(
            bath=bath_params,
            quadrature=quad,
            variant=variant,
            placement=placement,
            t_min=get("grid.t_min", float, 0.0),
            t_max=get("grid.t_max", float, 80.0),
            n_points=get("grid.n_points", int, 81),
            outputs=outputs,
            output_path=get("output_path", str, "sweep.csv"),
            jobs=get("jobs", int, 1),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | None, overrides: dict) -> RunConfig:
    values = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values = parse_config_text(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    values.update(overrides)
    return config_from_values(values)


def _format_cell(value) -> str:
    if value is None:
        return ""
    v = float(value) + 0.0  # normalise -0.0
    return f"{v:.12g}"


def compute_row(cfg: RunConfig, t: float) -> dict:
    """All selected quantities at one time point.

    Raises QuadratureError upward; the sweep driver turns that into a
    flagged row.
    """
    p, q = cfg.bath, cfg.quadrature
    row = {"t": t}
    state = channel_state(p, q, cfg.variant, t)
    k = state.kappa_eff
    if "decoherence_functions" in cfg.outputs:
        row["gamma_s"] = bath.gamma_s(p, q, t)
        row["zeta"] = bath.zeta(p, q, t)
        row["gamma_ic"] = bath.gamma_ic(p, q, t)
        row["kappa_re"] = k.real
        row["kappa_im"] = k.imag
    if "negativity" in cfg.outputs:
        row["negativity_paper"] = correlations.negativity_paper(p.alpha, k)
        row["negativity_ppt"] = correlations.negativity_ppt(state.rho)
    if "discord" in cfg.outputs:
        row["discord_closed"] = correlations.discord_closed(state)
        row["discord_oracle"] = correlations.discord_oracle(state.rho)
    if "fidelity" in cfg.outputs:
        if cfg.placement is NoisePlacement.INPUT_QUBIT:
            d = bath.decoherence_state(p, q, t)
            row["fav_closed"] = teleport.fav_closed(cfg.placement, p, d)
            row["fav_oracle"] = teleport.input_dephasing_oracle(p, q, t)
        else:
            # symmetric-channel closed form; for the correlated variant this
            # is exactly 2/3 + cos(2 zeta) e^{-gamma_s} / 3
            row["fav_closed"] = 2.0 / 3.0 + k.real / 3.0
            row["fav_oracle"] = teleport.average_fidelity_oracle(state)
    return row


def _row_worker(args):
    cfg, t = args
    try:
        return compute_row(cfg, t), None
    except QuadratureError as exc:
        return {"t": t}, str(exc)


def run_sweep(cfg: RunConfig, stream=None) -> int:
    """Write the sweep CSV; returns the exit code (0 ok, 3 non-convergence)."""
    grid = cfg.t_grid()
    tasks = [(cfg, float(t)) for t in grid]
    if cfg.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_row_worker, tasks))
    else:
        results = [_row_worker(task) for task in tasks]

    failures = 0
    lines = [",".join(CSV_COLUMNS)]
    selected = {"t"} | {c for g in cfg.outputs for c in OUTPUT_GROUPS[g]}
    for row, err in results:
        if err is not None:
            failures += 1
            print(f"warning: t={row['t']:g}: {err}", file=stream or sys.stderr)
            cells = [_format_cell(row["t"])] + [
                "nan" if c in selected else "" for c in CSV_COLUMNS[1:]
            ]
        else:
            cells = [_format_cell(row.get(c)) for c in CSV_COLUMNS]
        lines.append(",".join(cells))
    with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return 3 if failures else 0


FIGURE_PANELS = ("fig1a", "fig1b", "fig1c", "fig1d", "fig2a", "fig2b", "fig2c", "fig2d")


def _series_for_panel(panel: str, cfg: RunConfig):
    """(label, column, config) triples describing one figure panel."""
    beta = 1.0 if panel in ("fig1a", "fig1c", "fig2a", "fig2c") else 0.05
    base = replace(cfg, bath=replace(cfg.bath, beta=beta))
    if panel in ("fig1a", "fig1b"):
        c = replace(base, outputs=frozenset({"negativity", "discord"}))
        return [("negativity", "negativity_paper", c), ("discord", "discord_closed", c)]
    if panel in ("fig1c", "fig1d"):
        out = []
        for kind in VariantKind:
            c = replace(base, variant=ChannelVariant(kind=kind),
                        outputs=frozenset({"negativity", "discord"}))
            out.append((f"negativity[{kind.value}]", "negativity_paper", c))
            out.append((f"discord[{kind.value}]", "discord_closed", c))
        return out
    if panel in ("fig2a", "fig2b"):
        out = []
        for s in (0.5, 1.0, 2.0, 5.0):
            c = replace(base, bath=replace(base.bath, s=s),
                        outputs=frozenset({"fidelity"}))
            out.append((f"fav[s={s:g}]", "fav_closed", c))
        return out
    if panel in ("fig2c", "fig2d"):
        c = replace(base, outputs=frozenset({"negativity", "discord", "fidelity"}))
        return [("fav", "fav_closed", c), ("negativity", "negativity_paper", c),
                ("discord", "discord_closed", c)]
    raise ConfigError(f"unknown figure panel {panel!r}")


def run_figure(panel: str, cfg: RunConfig, base_path: str | None = None, stream=None) -> int:
    """Compute one figure panel; writes <base>.csv and <base>.svg."""
    from .svgplot import plot_lines

    if panel not in FIGURE_PANELS:
        raise ConfigError(f"unknown figure panel {panel!r}; choose from {FIGURE_PANELS}")
    base = base_path or panel
    series_spec = _series_for_panel(panel, cfg)
    grid = cfg.t_grid()

    exit_code = 0
    series = []
    cache = {}
    for label, column, scfg in series_spec:
        ys = []
        for t in grid:
            key = (scfg, float(t))
            if key not in cache:
                cache[key] = _row_worker(key)
            row, err = cache[key]
            if err is not None:
                exit_code = 3
                print(f"warning: {label} t={t:g}: {err}", file=stream or sys.stderr)
                ys.append(math.nan)
            else:
                ys.append(row[column])
        series.append((label, list(map(float, grid)), ys))

    lines = [",".join(["t"] + [label for label, _, _ in series])]
    for i, t in enumerate(grid):
        cells = [_format_cell(t)] + [_format_cell(s[2][i]) for s in series]
        lines.append(",".join(cells))
    with open(base + ".csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

    plot_lines(base + ".svg", series, title=panel, xlabel="t", ylabel="value")
    return exit_code
