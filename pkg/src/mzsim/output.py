"""CSV and JSON emission of sweep results.

Row order is deterministic (the sweep's own grid order), numbers are
rendered with 12 significant digits, and reruns with an identical config
and seed produce byte-identical files.
"""

from __future__ import annotations

import json
import math

from .experiments import ExperimentConfig, SweepResult

SWEEP_CSV_HEADER = (
    "variant,mode,alpha,phi,s0,s1,theory_s0,"
    "line_t_low,line_t_high,line_a_low,line_a_high"
)

VISIBILITY_CSV_HEADER = "alpha,visibility,theory_visibility"


def _num(value) -> str:
    if value is None:
        return ""
    return format(float(value), ".12g")


def _write(stream, text: str) -> int:
    stream.write(text)
    return len(text.encode("utf-8"))


def emit_sweep_csv(result: SweepResult, stream) -> int:
    """Write one row per grid point; returns the number of bytes written."""
    cfg = result.config
    count = _write(stream, SWEEP_CSV_HEADER + "\n")
    for p in result.points:
        t, a = p.target_lines, p.ancilla_lines
        row = ",".join(
            [
                cfg.variant,
                cfg.mode,
                _num(p.alpha),
                _num(p.phi),
                _num(p.s0),
                _num(p.s1),
                _num(p.theory_s0),
                _num(t.line_low if t else None),
                _num(t.line_high if t else None),
                _num(a.line_low if a else None),
                _num(a.line_high if a else None),
            ]
        )
        count += _write(stream, row + "\n")
    return count


def _effective_alpha(variant: str, alpha: float | None) -> float:
    if alpha is not None:
        return alpha
    return 0.0 if variant == "open" else math.pi / 2.0


def emit_visibility_table(result: SweepResult, stream) -> int:
    """Write the per-alpha visibility table with the sin(alpha)^2 reference.

    Open and closed runs are the alpha = 0 and alpha = pi/2 limits; the
    shot-sampled random-delayed-choice variant has no such reference and is
    rejected.
    """
    cfg = result.config
    if cfg.variant == "wheeler":
        raise ValueError("the visibility table is not defined for the wheeler variant")
    count = _write(stream, VISIBILITY_CSV_HEADER + "\n")
    for alpha, nu in result.visibility_by_alpha:
        theory = math.sin(_effective_alpha(cfg.variant, alpha)) ** 2
        row = ",".join([_num(alpha), _num(nu), _num(theory)])
        count += _write(stream, row + "\n")
    return count


def config_to_dict(cfg: ExperimentConfig) -> dict:
    return {
        "variant": cfg.variant,
        "mode": cfg.mode,
        "alphas": [float(a) for a in cfg.alphas],
        "phis": [float(p) for p in cfg.phis],
        "noise_p": float(cfg.noise_p),
        "purity": float(cfg.purity),
        "spin_system": {
            "offset_target": float(cfg.sys.offset_target),
            "offset_ancilla": float(cfg.sys.offset_ancilla),
            "j_coupling": float(cfg.sys.j_coupling),
            "epsilon": float(cfg.sys.epsilon),
            "epsilon_prime": float(cfg.sys.epsilon_prime),
        },
        "rng_seed": int(cfg.rng_seed),
        "n_shots": int(cfg.n_shots),
    }


def emit_sweep_json(result: SweepResult, stream, *, argv: list[str] | None = None) -> int:
    """JSON mirror of the CSV content: a metadata header (config, seed, tool
    version, optionally the flag string that reproduces the run) plus one
    object per grid point."""
    from . import __version__

    cfg = result.config
    metadata = {
        "tool": "mzsim",
        "version": __version__,
        "seed": int(cfg.rng_seed),
        "config": config_to_dict(cfg),
    }
    if argv is not None:
        metadata["argv"] = list(argv)

    def point_obj(p):
        obj = {
            "alpha": None if p.alpha is None else float(p.alpha),
            "phi": float(p.phi),
            "s0": float(p.s0),
            "s1": float(p.s1),
            "theory_s0": float(p.theory_s0),
        }
        if p.target_lines is not None:
            obj["line_t_low"] = float(p.target_lines.line_low)
            obj["line_t_high"] = float(p.target_lines.line_high)
            obj["line_a_low"] = float(p.ancilla_lines.line_low)
            obj["line_a_high"] = float(p.ancilla_lines.line_high)
            obj["line_reference"] = float(p.target_lines.normalization)
        return obj

    payload = {
        "metadata": metadata,
        "points": [point_obj(p) for p in result.points],
        "visibility_by_alpha": [
            {"alpha": None if a is None else float(a), "visibility": float(nu)}
            for a, nu in result.visibility_by_alpha
        ],
        "max_abs_error_vs_theory": float(result.max_abs_error_vs_theory),
    }
    return _write(stream, json.dumps(payload, indent=2) + "\n")
