"""Command-line interface: sweep, figure, verify.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical non-convergence.
"""

import sys

from .bath import QuadratureError
from .runner import ConfigError, FIGURE_PANELS, load_config, run_figure, run_sweep
from .verify import run_verification

_USAGE = """\
usage: dephlab <command> [options]

commands:
  sweep   --config <path> [--<key> <value> ...]   write a CSV time series
  figure  <panel> [--config <path>] [--<key> <value> ...]
          panels: {panels}                        write CSV + SVG for a panel
  verify  [--report <path>]                       run the oracle-adjudication suite

configuration keys (file lines `key = value`, flags `--key value`):
  bath.coupling_a bath.beta bath.omega0 bath.s bath.alpha
  quadrature.omega_max quadrature.panels_per_period quadrature.abs_tol
  variant (correlated|uncorrelated|markovian)  markov_rate
  placement (channel|alice|input)
  grid.t_min grid.t_max grid.n_points
  outputs (comma list of negativity,discord,fidelity,decoherence_functions)
  output_path  jobs
""".format(panels=",".join(FIGURE_PANELS))


def _parse_flags(argv):
    """Split `--key value` (or `--key=value`) pairs into a dict."""
    flags = {}
    i = 0
    while i < len(argv):
        arg = argv[i]
        if not arg.startswith("--"):
            raise ConfigError(f"unexpected argument {arg!r}")
        key = arg[2:]
        if "=" in key:
            key, _, value = key.partition("=")
        else:
            if i + 1 >= len(argv):
                raise ConfigError(f"flag --{key} needs a value")
            i += 1
            value = argv[i]
        flags[key] = value
        i += 1
    return flags


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help", "help"):
        print(_USAGE)
        return 0
    command, rest = argv[0], argv[1:]
    try:
        if command == "sweep":
            flags = _parse_flags(rest)
            config_path = flags.pop("config", None)
            cfg = load_config(config_path, flags)
            return run_sweep(cfg)
        if command == "figure":
            if not rest or rest[0].startswith("--"):
                raise ConfigError("figure needs a panel id")
            panel, flags = rest[0], _parse_flags(rest[1:])
            config_path = flags.pop("config", None)
            out = flags.pop("output_path", None)
            cfg = load_config(config_path, flags)
            return run_figure(panel, cfg, base_path=out)
        if command == "verify":
            flags = _parse_flags(rest)
            report = flags.pop("report", "verify_report.txt")
            if flags:
                raise ConfigError(f"unknown verify flags: {sorted(flags)}")
            return run_verification(report_path=report, stream=sys.stdout)
        raise ConfigError(f"unknown command {command!r}")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
