"""Command-line entry point.

Usage::

    eavesim <analyze|sweep|diagram|verify> --config <path>
            [--output <path>] [--format csv|json] [--seed <int>]
            [--no-plot] [--inject-fault swapped-cnot]

Exit codes: 0 success, 1 usage or configuration error, 2 verification
failure.  Output files are byte-identical across runs for identical config
and seed; numbers are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import AnalysisReport, analyze
from .attack import symmetric_scenario
from .config import ConfigError, RunConfig, parse_config
from .verify import run_verification

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the CLI contract wants 1
    def error(self, message: str):  # noqa: D102
        self.print_usage(sys.stderr)
        raise SystemExit(f"eavesim: error: {message}")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _build_parser() -> _Parser:
    parser = _Parser(prog="eavesim", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"eavesim {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode, needs_config in (("analyze", True), ("sweep", True),
                               ("diagram", True), ("verify", False)):
        p = sub.add_parser(mode)
        p.add_argument("--config", required=needs_config,
                       help="path to the run configuration file")
        p.add_argument("--output", help="output file path")
        p.add_argument("--format", choices=("csv", "json"),
                       help="output format (mode-dependent default)")
        p.add_argument("--seed", type=int, help="seed for randomized checks")
        if mode in ("sweep", "diagram"):
            p.add_argument("--no-plot", action="store_true",
                           help="skip rendering the companion figure")
        if mode == "verify":
            p.add_argument("--inject-fault", choices=("swapped-cnot",),
                           help="negative control: miswire every gate and "
                                "expect the verification to fail")
    return parser


def _report_payload(report: AnalysisReport) -> dict:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "eavesim", "version": __version__},
    }
    payload.update(report.to_dict())
    return payload


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def _run_analyze(config: RunConfig) -> int:
    if (config.output_format or "json") != "json":
        raise ConfigError("analyze emits JSON reports; use --format json")
    report = analyze(config.scenario)
    _write_text(config.output, json.dumps(_report_payload(report), indent=2) + "\n")
    return 0


def _sweep_rows(config: RunConfig) -> list[dict]:
    assert config.sweep is not None and config.symmetric_d is not None
    rows = []
    for value in config.sweep.values():
        d = list(config.symmetric_d)
        d[config.sweep.eve - 1] = value
        report = analyze(symmetric_scenario(tuple(d),
                                            config.scenario.signal_basis))
        row = {"d_var": value, "d_b": report.error_rate}
        for eve in report.eves:
            row[f"g_{eve.index}"] = eve.gain
            row[f"i_ae_{eve.index}"] = eve.mutual_information
        row["d_b_xy"] = report.error_rate_xy
        row["d_b_uv"] = report.error_rate_uv
        row["i_ab"] = report.receiver_information
        row["i_opt"] = report.optimal_information
        rows.append(row)
    return rows


def _render_companion_figure(config: RunConfig, rows: list[dict]) -> None:
    # imported lazily: matplotlib is only needed when a figure is rendered
    from .plotting import render_diagram

    render_diagram(rows, config.scenario.n, config.output,
                   title=f"{config.scenario.n} attacker(s), varying "
                         f"attacker {config.sweep.eve}")


def _run_diagram(config: RunConfig, plot: bool) -> int:
    if (config.output_format or "csv") != "csv":
        raise ConfigError("diagram emits CSV data; use --format csv")
    if config.output is None:
        raise ConfigError("diagram mode needs an output path "
                          "(--output or 'output' in the config)")
    rows = _sweep_rows(config)
    n = config.scenario.n
    header = ["d_var", "d_b"] + [f"i_ae_{j}" for j in range(1, n + 1)]
    header += ["i_ab", "i_opt"]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(row[col]) for col in header))
    _write_text(config.output, "\n".join(lines) + "\n")
    if plot:
        _render_companion_figure(config, rows)
    return 0


def _run_sweep(config: RunConfig, plot: bool) -> int:
    fmt = config.output_format or "csv"
    if config.output is None:
        raise ConfigError("sweep mode needs an output path "
                          "(--output or 'output' in the config)")
    rows = _sweep_rows(config)
    n = config.scenario.n
    columns = ["d_var"]
    for j in range(1, n + 1):
        columns += [f"g_{j}", f"i_ae_{j}"]
    columns += ["d_b_xy", "d_b_uv", "d_b", "i_ab", "i_opt"]
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt(row[col]) for col in columns))
        _write_text(config.output, "\n".join(lines) + "\n")
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "tool": {"name": "eavesim", "version": __version__},
            "rows": rows,
        }
        _write_text(config.output, json.dumps(payload, indent=2) + "\n")
    if plot:
        _render_companion_figure(config, rows)
    return 0


def _run_verify(seed: int, miswire: bool) -> int:
    results = run_verification(seed=seed, miswire=miswire)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"verification FAILED: {len(failed)}/{len(results)} families")
        return 2
    print(f"verification passed: {len(results)} families")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        return 0 if exc.code in (0, None) else 1

    try:
        if args.mode == "verify":
            seed = args.seed
            if seed is None and args.config:
                seed = parse_config(args.config, "verify").seed
            return _run_verify(seed if seed is not None else 0,
                               miswire=args.inject_fault == "swapped-cnot")

        config = parse_config(args.config, args.mode)
        if args.output is not None:
            config.output = args.output
        if args.format is not None:
            config.output_format = args.format
        if args.seed is not None:
            config.seed = args.seed

        if args.mode == "analyze":
            return _run_analyze(config)
        if args.mode == "diagram":
            return _run_diagram(config, plot=not args.no_plot)
        return _run_sweep(config, plot=not args.no_plot)
    except ConfigError as exc:
        print(f"eavesim: config error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"eavesim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
