"""Command-line front end.

``mzsim run`` evaluates one sweep and writes CSV or JSON; ``mzsim report``
additionally renders the intensity/visibility/spectra figures next to the
delimited output.  Exit codes: 0 success, 2 usage error, 1 computation or
I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .experiments import ExperimentConfig, SweepResult, default_alphas, default_phis, sweep
from .output import emit_sweep_csv, emit_sweep_json, emit_visibility_table

_VARIANT_FLAGS = {
    "open": "open",
    "closed": "closed",
    "wheeler": "wheeler",
    "quantum-delayed": "quantum_delayed",
}
_MODE_FLAGS = {"ideal": "ideal_gate", "pulse": "pulse_sequence"}


@dataclass(frozen=True)
class CliRequest:
    command: str
    config: ExperimentConfig
    fmt: str = "csv"
    out: str | None = None
    out_dir: str | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzsim",
        description="Density-matrix simulation of Mach-Zehnder interferometer experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one sweep and write CSV or JSON")
    _add_common_flags(run)
    run.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="output format (default csv)")
    run.add_argument("--out", default=None, help="output path (default stdout)")

    report = sub.add_parser(
        "report", help="run one sweep and write CSV tables plus PNG figures"
    )
    _add_common_flags(report)
    report.add_argument("--out-dir", required=True, help="directory for the report files")
    return parser


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--variant", required=True, choices=sorted(_VARIANT_FLAGS),
                        help="experiment variant")
    parser.add_argument("--mode", choices=sorted(_MODE_FLAGS), default="ideal",
                        help="gate realization (default ideal)")
    parser.add_argument("--phi-steps", type=int, default=21,
                        help="number of phases, linearly spaced over [0, 2*pi] (default 21)")
    parser.add_argument("--alphas", default=None,
                        help="comma-separated ancilla angles (quantum-delayed only; "
                             "default 5 values over [0, pi/2])")
    parser.add_argument("--noise-p", type=float, default=0.0,
                        help="depolarizing strength in [0, 1] (default 0)")
    parser.add_argument("--purity", type=float, default=1.0,
                        help="pseudopure purity in (0, 1] (default 1)")
    parser.add_argument("--seed", type=int, default=0,
                        help="rng seed for the wheeler variant (default 0)")
    parser.add_argument("--shots", type=int, default=10000,
                        help="shots per wheeler grid point (default 10000)")
    parser.add_argument("--degrees", action="store_true",
                        help="interpret --alphas in degrees instead of radians")


def _parse_alphas(parser: argparse.ArgumentParser, raw: str, degrees: bool) -> tuple[float, ...]:
    values = []
    for token in raw.split(","):
        token = token.strip()
        try:
            value = float(token)
        except ValueError:
            parser.error(f"--alphas: {token!r} is not a number")
        if not math.isfinite(value):
            parser.error(f"--alphas: {token!r} is not finite")
        values.append(math.radians(value) if degrees else value)
    return tuple(values)


def parse_args(argv) -> CliRequest:
    """Validate flags and assemble the experiment config.  Any out-of-range
    value is a usage error naming the offending flag (exit code 2)."""
    parser = build_parser()
    ns = parser.parse_args(argv)

    if ns.phi_steps < 1:
        parser.error(f"--phi-steps must be at least 1, got {ns.phi_steps}")
    if not 0.0 <= ns.noise_p <= 1.0:
        parser.error(f"--noise-p must lie in [0, 1], got {ns.noise_p}")
    if not 0.0 < ns.purity <= 1.0:
        parser.error(f"--purity must lie in (0, 1], got {ns.purity}")
    if ns.shots < 1:
        parser.error(f"--shots must be at least 1, got {ns.shots}")

    variant = _VARIANT_FLAGS[ns.variant]
    if ns.alphas is not None and variant != "quantum_delayed":
        parser.error("--alphas only applies to --variant quantum-delayed")
    if variant == "quantum_delayed":
        alphas = _parse_alphas(parser, ns.alphas, ns.degrees) if ns.alphas else default_alphas()
    else:
        alphas = ()

    config = ExperimentConfig(
        variant=variant,
        mode=_MODE_FLAGS[ns.mode],
        alphas=alphas,
        phis=default_phis(ns.phi_steps),
        noise_p=ns.noise_p,
        purity=ns.purity,
        rng_seed=ns.seed,
        n_shots=ns.shots,
    )
    return CliRequest(
        command=ns.command,
        config=config,
        fmt=getattr(ns, "format", "csv"),
        out=getattr(ns, "out", None),
        out_dir=getattr(ns, "out_dir", None),
    )


def config_argv(config: ExperimentConfig, command: str = "run") -> list[str]:
    """Canonical flag list that reproduces ``config`` through parse_args.
    Floats are echoed with repr so the round trip is lossless."""
    argv = [
        command,
        "--variant", config.variant.replace("_", "-"),
        "--mode", "ideal" if config.mode == "ideal_gate" else "pulse",
        "--phi-steps", str(len(config.phis)),
        "--noise-p", repr(float(config.noise_p)),
        "--purity", repr(float(config.purity)),
        "--seed", str(config.rng_seed),
        "--shots", str(config.n_shots),
    ]
    if config.variant == "quantum_delayed":
        argv += ["--alphas", ",".join(repr(float(a)) for a in config.alphas)]
    return argv


def _emit_run(request: CliRequest, result: SweepResult) -> None:
    def emit(stream):
        if request.fmt == "json":
            emit_sweep_json(result, stream, argv=config_argv(result.config))
        else:
            emit_sweep_csv(result, stream)

    if request.out is None:
        emit(sys.stdout)
    else:
        with open(request.out, "w", encoding="utf-8", newline="") as handle:
            emit(handle)


def write_report(result: SweepResult, out_dir: str | Path) -> list[Path]:
    """Write the delimited tables and PNG figures for one sweep; returns the
    paths written."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from .plots import intensity_figure, spectra_figure, visibility_figure

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    sweep_csv = out / "sweep.csv"
    with open(sweep_csv, "w", encoding="utf-8", newline="") as handle:
        emit_sweep_csv(result, handle)
    written.append(sweep_csv)

    fig = intensity_figure(result)
    path = out / "intensity.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    if result.config.variant != "wheeler":
        vis_csv = out / "visibility.csv"
        with open(vis_csv, "w", encoding="utf-8", newline="") as handle:
            emit_visibility_table(result, handle)
        written.append(vis_csv)

        fig = visibility_figure(result)
        path = out / "visibility.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    if result.config.variant == "quantum_delayed":
        fig = spectra_figure(result)
        path = out / "spectra.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    return written


def main(argv=None) -> int:
    request = parse_args(sys.argv[1:] if argv is None else argv)
    try:
        result = sweep(request.config)
        if request.command == "run":
            _emit_run(request, result)
        else:
            for path in write_report(result, request.out_dir):
                print(path)
    except Exception as exc:  # computation or I/O failure -> exit code 1
        print(f"mzsim: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
