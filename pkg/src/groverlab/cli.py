"""Command-line experiment runner.

Subcommands reproduce the library's headline numbers as CSV: probability
traces, torus sweeps over the two phase parameters, spectral tables,
rotation-manifold point clouds, asymptotic comparison tables, and a seeded
self-check of the library invariants.

Exit status: 0 success, 1 usage error, 2 numerical/invariant failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, fields
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .algebra import adjoint, dft_matrix
from .errors import DivergentPeriodError, GroverLabError, ResourceLimitError
from .evolution import (
    EvolutionTrace,
    InitialState,
    amplitude_closed_form,
    amplitude_iterative,
    full_space_trace,
    probability_trace,
    uniform_initial,
)
from .kernel import (
    FullSpaceConfig,
    GroverPhases,
    extended_reduced_kernel,
    full_kernel,
    momentum_projector,
    reduced_kernel,
)
from .spectral import (
    delta_omega_asymptotic,
    eigensystem,
    kernel_manifold_points,
    optimal_steps_asymptotic,
    optimal_steps_exact,
    stability_expansion,
)

__all__ = ["ExperimentConfig", "main"]

MAX_GRID_POINTS = 10**6
DIAGONAL_TOL = 1e-12
TAU = 2 * math.pi


class UsageError(Exception):
    """Bad flags, bad config values, or an unusable parameter combination."""


@dataclass
class ExperimentConfig:
    """One experiment invocation: a command plus every tunable knob.

    Field names mirror the command-line flags.  ``a``/``b`` are the
    initial-state coefficients (None means uniform), ``k0`` selects the
    second reflection's direction, ``alpha1`` switches the reduced kernel
    to the general-superposition form.
    """

    command: str = "trace"
    n: int = 1000
    beta_phase: float = 0.0
    delta_phase: float = 0.0
    m_max: int = 1000
    a: Optional[float] = None
    b: Optional[float] = None
    k0: str = "uniform"
    alpha1: Optional[float] = None
    grid: Optional[str] = None
    out: Optional[str] = None
    seed: int = 0
    tolerance: Optional[float] = None

    def to_file(self, path: str) -> None:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            lines.append(f"{f.name}={v!r}" if isinstance(v, float) else f"{f.name}={v}")
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")

    @staticmethod
    def read_file(path: str) -> dict:
        """Parse a flat key=value file into typed values, keyed by field name."""
        casts = {"command": str, "n": int, "beta_phase": float, "delta_phase": float,
                 "m_max": int, "a": float, "b": float, "k0": str, "alpha1": float,
                 "grid": str, "out": str, "seed": int, "tolerance": float}
        values = {}
        with open(path) as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, val = line.partition("=")
                key, val = key.strip(), val.strip()
                if not sep or key not in casts:
                    raise UsageError(f"unknown config line: {line!r}")
                try:
                    values[key] = casts[key](val)
                except ValueError as exc:
                    raise UsageError(f"bad value for {key}: {val!r}") from exc
        return values

    @classmethod
    def from_file(cls, path: str) -> "ExperimentConfig":
        cfg = cls()
        for key, val in cls.read_file(path).items():
            setattr(cfg, key, val)
        return cfg


def wrap_angle(t: float) -> float:
    """Principal value in (-pi, pi]."""
    w = math.remainder(t, TAU)
    return w if w > -math.pi else w + TAU


def fmt(x: float) -> str:
    """17 significant digits: round-trip exact for doubles."""
    return f"{x:.17g}"


def _parse_grid(text: str) -> Tuple[int, int]:
    parts = text.lower().split("x")
    try:
        if len(parts) == 1:
            return int(parts[0]), 1
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise UsageError(f"grid must look like <p> or <p>x<q>, got {text!r}")


def _write_csv(cfg: ExperimentConfig, header: str, rows: List[List[str]],
               summary: Optional[str] = None) -> None:
    body = header + "\n" + "".join(",".join(r) + "\n" for r in rows)
    if cfg.out in (None, "-"):
        sys.stdout.write(body)
        if summary:
            print(summary, file=sys.stderr)
    else:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(body)
        if summary:
            print(summary)


def _initial_state(cfg: ExperimentConfig) -> InitialState:
    if cfg.a is None and cfg.b is None:
        return uniform_initial(cfg.n)
    if cfg.a is not None and cfg.b is None:
        return InitialState.complete(cfg.a, cfg.n)
    if cfg.a is None:
        rem = cfg.n - cfg.b**2 * (cfg.n - 1)
        if rem < 0:
            raise UsageError(f"--b {cfg.b} is too large to normalize at n={cfg.n}")
        return InitialState(math.sqrt(rem), cfg.b, cfg.n)
    norm = (cfg.a**2 + cfg.b**2 * (cfg.n - 1)) / cfg.n
    if abs(norm - 1.0) > 1e-6:
        raise UsageError(
            f"--a/--b give squared norm {norm:.6g}; expected 1 within 1e-6")
    scale = 1 / math.sqrt(norm)
    return InitialState(cfg.a * scale, cfg.b * scale, cfg.n)


def _k0_vector(cfg: ExperimentConfig) -> np.ndarray:
    selector = cfg.k0
    if selector == "uniform":
        return np.full(cfg.n, 1 / math.sqrt(cfg.n), dtype=complex)
    if selector.startswith("momentum:"):
        try:
            y0 = int(selector.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad momentum index in --k0 {selector!r}")
        if not 0 <= y0 < cfg.n:
            raise UsageError(f"momentum index {y0} outside [0, {cfg.n})")
        x = np.arange(cfg.n)
        return np.exp(2j * np.pi * x * y0 / cfg.n) / math.sqrt(cfg.n)
    if selector.startswith("file:"):
        path = selector.split(":", 1)[1]
        try:
            rows = np.loadtxt(path, dtype=float, ndmin=2)
        except ValueError as exc:
            raise UsageError(f"cannot parse k0 file {path!r}: {exc}")
        if rows.shape[1] == 1:
            v = rows[:, 0].astype(complex)
        elif rows.shape[1] == 2:
            v = rows[:, 0] + 1j * rows[:, 1]
        else:
            raise UsageError(f"k0 file must have 1 or 2 columns, got {rows.shape[1]}")
        if v.shape[0] != cfg.n:
            raise UsageError(f"k0 file has {v.shape[0]} amplitudes, expected {cfg.n}")
        nrm = np.linalg.norm(v)
        if abs(nrm - 1.0) > 1e-6:
            raise UsageError(f"k0 file norm is {nrm:.6g}; expected 1 within 1e-6")
        return v / nrm
    raise UsageError(f"--k0 must be uniform, momentum:<y0> or file:<path>, got {selector!r}")


def _embed_reduced(s: InitialState, marked: int) -> np.ndarray:
    """Lift reduced coefficients to the full basis (uniform over unmarked)."""
    v = np.full(s.size, s.b / math.sqrt(s.size), dtype=complex)
    v[marked] = s.a / math.sqrt(s.size)
    return v


def _summary_line(trace: EvolutionTrace) -> str:
    thr = "none" if trace.threshold_step is None else str(trace.threshold_step)
    return (f"peak_prob={fmt(trace.peak_prob)} peak_step={trace.peak_step} "
            f"maxima_count={trace.maxima_count} threshold_step={thr}")


def cmd_trace(cfg: ExperimentConfig) -> int:
    phases = GroverPhases.from_angles(cfg.beta_phase, cfg.delta_phase)
    if cfg.alpha1 is not None:
        rk = extended_reduced_kernel(phases.beta, phases.delta, cfg.alpha1)
        start = np.array([cfg.alpha1, math.sqrt(1 - cfg.alpha1**2)], dtype=complex)
        trace = probability_trace(rk, start, cfg.m_max)
    elif cfg.k0 == "uniform":
        rk = reduced_kernel(phases.beta, phases.delta, cfg.n)
        trace = probability_trace(rk, _initial_state(cfg), cfg.m_max)
    else:
        vec = _k0_vector(cfg)
        fcfg = FullSpaceConfig(cfg.n, 0, vec, phases)
        if cfg.a is None and cfg.b is None:
            x_in = vec
        else:
            x_in = _embed_reduced(_initial_state(cfg), 0)
        trace = full_space_trace(fcfg, x_in, cfg.m_max)
    rows = [[str(int(m)), fmt(p)] for m, p in zip(trace.steps, trace.probs)]
    _write_csv(cfg, "m,prob", rows, _summary_line(trace))
    return 0


def cmd_sweep(cfg: ExperimentConfig) -> int:
    if cfg.grid is None:
        raise UsageError("sweep requires --grid <p>x<q>")
    p, q = _parse_grid(cfg.grid)
    if p < 2 or q < 2:
        raise UsageError(f"sweep grid sizes must be >= 2, got {p}x{q}")
    if p * q > MAX_GRID_POINTS:
        raise ResourceLimitError(f"sweep grid has {p * q} points (limit {MAX_GRID_POINTS})")
    state = _initial_state(cfg)
    rows = []
    for i in range(p):
        bp = wrap_angle(cfg.beta_phase + TAU * i / p)
        for j in range(q):
            dp = wrap_angle(cfg.delta_phase + TAU * j / q)
            phases = GroverPhases.from_angles(bp, dp)
            trace = probability_trace(
                reduced_kernel(phases.beta, phases.delta, cfg.n), state, cfg.m_max)
            g_abs = abs(phases.beta - phases.delta)
            pred = ""
            if g_abs <= DIAGONAL_TOL:
                try:
                    pred = str(optimal_steps_asymptotic(phases.phi, cfg.n, cfg.alpha1))
                except (DivergentPeriodError, GroverLabError):
                    pred = ""
            rows.append([fmt(bp), fmt(dp), fmt(g_abs),
                         fmt(trace.peak_prob), str(trace.peak_step), pred])
    _write_csv(cfg, "beta_phase,delta_phase,g_abs,peak_prob,peak_step,pred_M", rows)
    return 0


def _phase_pairs(cfg: ExperimentConfig) -> List[Tuple[float, float]]:
    """Rows for spectrum/asymptotics: one config point, or a diagonal sweep."""
    if cfg.grid is None:
        return [(cfg.beta_phase, cfg.delta_phase)]
    p, q = _parse_grid(cfg.grid)
    if q != 1:
        raise UsageError("this command sweeps one angle; use --grid <p> or <p>x1")
    if p < 2:
        raise UsageError(f"sweep needs at least 2 points, got {p}")
    return [(t, t) for t in np.linspace(-math.pi, math.pi, p)]


def cmd_spectrum(cfg: ExperimentConfig) -> int:
    rows = []
    for bp, dp in _phase_pairs(cfg):
        phases = GroverPhases.from_angles(bp, dp)
        spec = eigensystem(reduced_kernel(phases.beta, phases.delta, cfg.n))
        diagonal = abs(phases.beta - phases.delta) <= DIAGONAL_TOL
        m_exact = "" if spec.degenerate else str(optimal_steps_exact(spec))
        m_asym = ""
        m_stab = ""
        if diagonal:
            try:
                m_asym = str(optimal_steps_asymptotic(phases.phi, cfg.n, cfg.alpha1))
            except GroverLabError:
                pass
            if abs(phases.phi) <= 0.5:
                m_stab = fmt(stability_expansion(phases.phi, cfg.n))
        rows.append([
            fmt(wrap_angle(bp)), fmt(wrap_angle(dp)),
            fmt(spec.det.real), fmt(spec.det.imag),
            fmt(spec.trace.real), fmt(spec.trace.imag),
            fmt(spec.eigphase1), fmt(spec.eigphase2), fmt(spec.phase_gap),
            fmt(spec.diag_gap.real), fmt(spec.diag_gap.imag),
            m_exact, m_asym, m_stab,
            "1" if spec.degenerate else "0",
        ])
    _write_csv(cfg, "beta_phase,delta_phase,det_re,det_im,trace_re,trace_im,"
                    "eigphase1,eigphase2,phase_gap,diag_gap_re,diag_gap_im,"
                    "m_exact,m_asymptotic,m_stability,degenerate", rows)
    return 0


def cmd_asymptotics(cfg: ExperimentConfig) -> int:
    rows = []
    for _, dp in _phase_pairs(cfg):
        phi = wrap_angle(dp)
        gap = ""
        m_asym = ""
        try:
            gap = fmt(delta_omega_asymptotic(complex(math.cos(phi), math.sin(phi)), cfg.n))
            m_asym = str(optimal_steps_asymptotic(phi, cfg.n, cfg.alpha1))
        except GroverLabError:
            pass
        rows.append([fmt(phi), str(cfg.n),
                     fmt(cfg.alpha1) if cfg.alpha1 is not None else "",
                     gap, m_asym])
    _write_csv(cfg, "phi,n,alpha1,gap_asymptotic,m_asymptotic", rows)
    return 0


def cmd_manifold(cfg: ExperimentConfig) -> int:
    p, q = _parse_grid(cfg.grid or "50x50")
    if p < 1 or q < 1:
        raise UsageError(f"manifold grid sizes must be >= 1, got {p}x{q}")
    if p * q > MAX_GRID_POINTS:
        raise ResourceLimitError(f"manifold grid has {p * q} points (limit {MAX_GRID_POINTS})")
    # Anchor both grids at pi/2 so the original kernel is always on-grid.
    grid1 = [(math.pi / 2 + TAU * i / p) % TAU for i in range(p)]
    grid2 = [(math.pi / 2 + TAU * j / q) % TAU for j in range(q)]
    rows = []
    for pt in kernel_manifold_points(grid1, grid2, cfg.n):
        aa = pt.decomposition
        axis = ["", "", ""] if aa.axis is None else [fmt(c) for c in aa.axis]
        grover = (abs(pt.angle1 - math.pi / 2) <= 1e-9
                  and abs(pt.angle2 - math.pi / 2) <= 1e-9)
        equal = abs(wrap_angle(pt.angle1 - pt.angle2)) <= 1e-9
        rows.append([fmt(pt.angle1), fmt(pt.angle2), fmt(aa.angle),
                     *axis, fmt(aa.global_phase),
                     "1" if grover else "0", "1" if equal else "0"])
    _write_csv(cfg, "angle1,angle2,kernel_angle,axis_x,axis_y,axis_z,"
                    "global_phase,grover_point,equal_angles", rows)
    return 0


def _verify_unitarity(rng: np.random.Generator, tol: float) -> Tuple[bool, float]:
    worst = 0.0
    for n in (2, 4, 8, 16, 64, 256):
        for _ in range(4):
            beta = np.exp(1j * rng.uniform(-math.pi, math.pi))
            delta = np.exp(1j * rng.uniform(-math.pi, math.pi))
            for mat in (
                reduced_kernel(beta, delta, n).matrix,
                extended_reduced_kernel(beta, delta, rng.uniform(0.05, 0.95)).matrix,
            ):
                resid = np.max(np.abs(mat.conj().T @ mat - np.eye(2)))
                worst = max(worst, float(resid))
        if n <= 64:
            phases = GroverPhases(np.exp(1j * rng.uniform(-math.pi, math.pi)),
                                  np.exp(1j * rng.uniform(-math.pi, math.pi)))
            k0 = np.full(n, 1 / math.sqrt(n), dtype=complex)
            m = full_kernel(FullSpaceConfig(n, int(rng.integers(n)), k0, phases))
            resid = np.max(np.abs(m.conj().T @ m - np.eye(n)))
            worst = max(worst, float(resid))
    return worst <= tol, worst


def _verify_dft_identity(tol: float) -> Tuple[bool, float]:
    worst = 0.0
    for n in (2, 4, 8, 16, 64):
        u = dft_matrix(n)
        p0 = np.zeros((n, n), dtype=complex)
        p0[0, 0] = 1.0
        resid = np.max(np.abs(adjoint(u) @ momentum_projector(0, n) @ u - p0))
        worst = max(worst, float(resid))
    return worst <= tol, worst


def _verify_reduced_vs_full(rng: np.random.Generator, tol: float) -> Tuple[bool, float]:
    worst = 0.0
    for n in (2, 8, 64):
        for balanced in (True, False):
            dp = rng.uniform(-math.pi, math.pi)
            bp = dp if balanced else rng.uniform(-math.pi, math.pi)
            phases = GroverPhases.from_angles(bp, dp)
            rk = reduced_kernel(phases.beta, phases.delta, n)
            reduced = probability_trace(rk, uniform_initial(n), 100)
            k0 = np.full(n, 1 / math.sqrt(n), dtype=complex)
            full = full_space_trace(
                FullSpaceConfig(n, 0, k0, phases), k0, 100)
            worst = max(worst, float(np.max(np.abs(reduced.probs - full.probs))))
    return worst <= tol, worst


def _verify_closed_form(rng: np.random.Generator, tol: float) -> Tuple[bool, float]:
    worst = 0.0
    for _ in range(40):
        n = int(rng.integers(2, 1025))
        dp = rng.uniform(-math.pi, math.pi)
        bp = dp if rng.random() < 0.5 else rng.uniform(-math.pi, math.pi)
        phases = GroverPhases.from_angles(bp, dp)
        rk = reduced_kernel(phases.beta, phases.delta, n)
        spec = eigensystem(rk)
        state = uniform_initial(n)
        m = int(rng.integers(0, 501))
        diff = abs(amplitude_closed_form(spec, state, m)
                   - amplitude_iterative(rk, state, m))
        worst = max(worst, float(diff))
    return worst <= tol, worst


def cmd_verify(cfg: ExperimentConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    exact_tol = cfg.tolerance if cfg.tolerance is not None else 1e-12
    pipe_tol = cfg.tolerance if cfg.tolerance is not None else 1e-10
    closed_tol = cfg.tolerance if cfg.tolerance is not None else 1e-9
    suites = [
        ("unitarity", *_verify_unitarity(rng, exact_tol), exact_tol),
        ("dft-identity", *_verify_dft_identity(exact_tol), exact_tol),
        ("reduced-vs-full", *_verify_reduced_vs_full(rng, pipe_tol), pipe_tol),
        ("closed-vs-iterative", *_verify_closed_form(rng, closed_tol), closed_tol),
    ]
    all_ok = True
    for name, ok, worst, tol in suites:
        print(f"{name}: {'PASS' if ok else 'FAIL'} "
              f"(worst residual {worst:.3e}, tolerance {tol:.3e})")
        all_ok = all_ok and ok
    return 0 if all_ok else 2


DISPATCH = {
    "trace": cmd_trace,
    "sweep": cmd_sweep,
    "spectrum": cmd_spectrum,
    "asymptotics": cmd_asymptotics,
    "manifold": cmd_manifold,
    "verify": cmd_verify,
}

FLAG_FIELDS = ("n", "beta_phase", "delta_phase", "m_max", "a", "b", "k0",
               "alpha1", "grid", "out", "seed", "tolerance")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--n", type=int, help="list size N")
    shared.add_argument("--beta-phase", type=float, dest="beta_phase",
                        help="phase angle of beta in radians")
    shared.add_argument("--delta-phase", type=float, dest="delta_phase",
                        help="phase angle of delta in radians")
    shared.add_argument("--m-max", type=int, dest="m_max", help="trace length")
    shared.add_argument("--a", type=float, help="marked-state coefficient")
    shared.add_argument("--b", type=float, help="orthogonal coefficient")
    shared.add_argument("--k0", help="uniform | momentum:<y0> | file:<path>")
    shared.add_argument("--alpha1", type=float,
                        help="marked-state overlap of a general superposition")
    shared.add_argument("--grid", help="grid sizes <p>x<q>")
    shared.add_argument("--out", help="output CSV path (default stdout)")
    shared.add_argument("--seed", type=int, help="seed for randomized checks")
    shared.add_argument("--tolerance", type=float,
                        help="override verify tolerances (fault injection)")
    shared.add_argument("--config", help="flat key=value config file")

    parser = _Parser(prog="groverlab",
                     description="Numerical laboratory for Grover-type search kernels")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "trace": "success probability P(m) for one kernel",
        "sweep": "peak statistics over a (beta, delta) phase grid",
        "spectrum": "eigenphases, gaps and step predictions",
        "manifold": "axis-angle point cloud of the two-rotation family",
        "asymptotics": "large-N gap and step-count formulas",
        "verify": "run the seeded invariant suites",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[shared], help=text)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> ExperimentConfig:
    ns = build_parser().parse_args(argv)
    provided = set()
    cfg = ExperimentConfig(command=ns.command)
    if ns.config is not None:
        for key, val in ExperimentConfig.read_file(ns.config).items():
            if key != "command":
                setattr(cfg, key, val)
                provided.add(key)
    for name in FLAG_FIELDS:
        val = getattr(ns, name)
        if val is not None:
            setattr(cfg, name, val)
            provided.add(name)
    if cfg.command == "manifold" and "n" not in provided:
        cfg.n = 10
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
        return DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GroverLabError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
