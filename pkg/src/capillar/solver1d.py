"""First-order finite-volume solver for the one-dimensional ten-equation system.

The conservative sub-block (rho, rho*y, rho*u) is updated with a Rusanov
(local Lax-Friedrichs) flux using the face wave speed max(|u| + c_eff) of
the two adjacent cells; the remaining variables (alpha, a_i, w, n, s, s1,
s2) are pure transport and use velocity-upwind differencing with
face-averaged u. Relaxation/oscillator sources act on (alpha, a_i, w, n)
only and are integrated per cell with an explicit midpoint (RK2) rule,
optionally subcycled; time marching is Strang split: half source, full
hyperbolic step, half source.

Fraction floors are identical to the mixture module's; every post-step
clamp increments a diagnostics counter so silent saturation cannot corrupt
a study.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .errors import CflViolation, SolverAbort, StateInvalid, SubcycleLimit
from .mixture import A_MIN, EPS_FRAC
from .model import ModelParams, PrimCell, evaluate_cells, source_terms

TRANSPORTED = ("alpha", "a_i", "w", "n", "s", "s1", "s2")
SOURCE_INTEGRATORS = ("rk2", "subcycled_rk2", "none")
BCS = ("periodic", "transmissive")

_MAX_SUBSTEPS = 10**6


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D mesh."""

    x0: float
    x1: float
    n_cells: int
    bc: str = "periodic"   # "periodic" | "transmissive"

    def __post_init__(self):
        if not self.x1 > self.x0:
            raise ValueError("x1 must exceed x0")
        if self.n_cells <= 1:
            raise ValueError("n_cells must be > 1")
        if self.bc not in BCS:
            raise ValueError(f"bc must be one of {BCS}")

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.n_cells

    def centers(self) -> np.ndarray:
        return self.x0 + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass(frozen=True)
class SolverConfig:
    """Scheme controls for a time-marching run."""

    cfl: float
    t_end: float
    source_integrator: str = "rk2"   # "rk2" | "subcycled_rk2" | "none"
    subcycle_max_dt_fraction: float = 0.1
    output_every: int = 10           # monitor cadence in steps

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl}")
        if not self.t_end > 0.0:
            raise ValueError(f"t_end must be > 0, got {self.t_end}")
        if self.source_integrator not in SOURCE_INTEGRATORS:
            raise ValueError(
                f"source_integrator must be one of {SOURCE_INTEGRATORS}"
            )
        if not self.subcycle_max_dt_fraction > 0.0:
            raise ValueError("subcycle_max_dt_fraction must be > 0")
        if self.output_every < 1:
            raise ValueError("output_every must be >= 1")


@dataclass(frozen=True)
class Monitors:
    """Domain integrals and per-scalar bounds used as conservation diagnostics."""

    total_mass: float
    total_y_mass: float
    total_momentum: float
    total_energy: float
    interfacial_entropy_integral: float   # integral of a_i*s_i dx
    scalar_min_max: dict[str, tuple[float, float]]


@dataclass
class SimulationResult:
    """Trajectory summary: final fields, monitor series and snapshots."""

    final: PrimCell
    t: float
    steps: int
    clamp_count: int
    monitor_rows: list[tuple[float, Monitors, int]] = field(default_factory=list)
    snapshots: list[tuple[int, float, PrimCell]] = field(default_factory=list)


def _pad(arr: np.ndarray, bc: str) -> np.ndarray:
    mode = "wrap" if bc == "periodic" else "edge"
    if arr.ndim == 1:
        return np.pad(arr, 1, mode=mode)
    return np.pad(arr, ((0, 0), (1, 1)), mode=mode)


def _clamped(values: np.ndarray, lo: float, hi: float) -> tuple[np.ndarray, int]:
    out = np.clip(values, lo, hi)
    return out, int(np.count_nonzero(out != values))


def _validated(cells: PrimCell) -> tuple[PrimCell, int]:
    """Check finiteness/positivity, apply fraction floors, count clamps."""
    for name in ("rho", "u", "y", "alpha", "a_i", "w", "n", "s", "s1", "s2"):
        v = getattr(cells, name)
        if not np.all(np.isfinite(v)):
            raise StateInvalid(f"{name} became non-finite")
    if np.any(cells.rho <= 0.0):
        raise StateInvalid("rho became non-positive")
    y, c1 = _clamped(cells.y, EPS_FRAC, 1.0 - EPS_FRAC)
    alpha, c2 = _clamped(cells.alpha, EPS_FRAC, 1.0 - EPS_FRAC)
    a_i = np.maximum(cells.a_i, A_MIN)
    c3 = int(np.count_nonzero(a_i != cells.a_i))
    out = dataclasses.replace(cells, y=y, alpha=alpha, a_i=a_i)
    return out, c1 + c2 + c3


def max_wave_speed(cells: PrimCell, params: ModelParams) -> float:
    """max(|u| + c_eff) over the cells, for CFL control."""
    ev = evaluate_cells(cells, params)
    return float(np.max(np.abs(cells.u) + ev.c_eff))


def hyperbolic_step(
    cells: PrimCell,
    grid: Grid1D,
    params: ModelParams,
    dt: float,
    cfl: float = 1.0,
) -> tuple[PrimCell, int]:
    """One sourceless finite-volume step; returns (new fields, clamp count)."""
    ev = evaluate_cells(cells, params)
    sig = np.abs(cells.u) + ev.c_eff
    smax = float(np.max(sig))
    if dt > cfl * grid.dx / smax * (1.0 + 1e-12):
        raise CflViolation(
            f"dt={dt:.3e} exceeds cfl*dx/max|lambda|={cfl * grid.dx / smax:.3e}"
        )

    rho, u, y = cells.rho, cells.u, cells.y
    U = np.stack([rho, rho * y, rho * u])
    F = np.stack([rho * u, rho * y * u, rho * u**2 + ev.p_hat])
    Up = _pad(U, grid.bc)
    Fp = _pad(F, grid.bc)
    sigp = _pad(sig, grid.bc)
    a_face = np.maximum(sigp[:-1], sigp[1:])
    flux = 0.5 * (Fp[:, :-1] + Fp[:, 1:]) - 0.5 * a_face * (Up[:, 1:] - Up[:, :-1])
    U_new = U - dt / grid.dx * (flux[:, 1:] - flux[:, :-1])

    up = _pad(u, grid.bc)
    u_face = 0.5 * (up[:-1] + up[1:])
    u_plus = np.maximum(u_face[:-1], 0.0)
    u_minus = np.minimum(u_face[1:], 0.0)
    updates = {}
    for name in TRANSPORTED:
        qp = _pad(getattr(cells, name), grid.bc)
        q = qp[1:-1]
        updates[name] = q - dt / grid.dx * (
            u_plus * (q - qp[:-2]) + u_minus * (qp[2:] - q)
        )

    rho_new = U_new[0]
    new = dataclasses.replace(
        cells,
        rho=rho_new,
        y=U_new[1] / rho_new,
        u=U_new[2] / rho_new,
        **updates,
    )
    return _validated(new)


def rk2_substep(q: tuple, rhs, dt: float) -> tuple:
    """One explicit midpoint step for a tuple-valued ODE state."""
    k1 = rhs(*q)
    mid = tuple(v + 0.5 * dt * k for v, k in zip(q, k1))
    k2 = rhs(*mid)
    return tuple(v + dt * k for v, k in zip(q, k2))


def _source_rhs(cells: PrimCell, params: ModelParams):
    def rhs(alpha, a_i, w, n):
        trial = dataclasses.replace(
            cells,
            alpha=np.clip(alpha, 0.0, 1.0),
            a_i=np.maximum(a_i, A_MIN),
            w=w,
            n=n,
        )
        r = source_terms(trial, params)
        return r.d_alpha, r.d_a_i, r.d_w, r.d_n

    return rhs


def _stiffness_rate(cells: PrimCell, params: ModelParams) -> float:
    """Crude largest rate of the source subsystem (damping plus oscillator)."""
    rate = max(params.lambda_w, params.lambda_n)
    d = 1e-6
    lo = evaluate_cells(
        dataclasses.replace(cells, alpha=np.clip(cells.alpha - d, 0.0, 1.0)), params
    )
    hi = evaluate_cells(
        dataclasses.replace(cells, alpha=np.clip(cells.alpha + d, 0.0, 1.0)), params
    )
    dpd_alpha = np.max(np.abs((hi.p1 - hi.p2) - (lo.p1 - lo.p2))) / (2.0 * d)
    rate = max(rate, float(np.sqrt(dpd_alpha / params.m)))
    lo_g = evaluate_cells(
        dataclasses.replace(cells, a_i=np.maximum(cells.a_i * (1.0 - d), A_MIN)),
        params,
    )
    hi_g = evaluate_cells(dataclasses.replace(cells, a_i=cells.a_i * (1.0 + d)), params)
    dgam = np.max(
        np.abs(hi_g.gamma_i - lo_g.gamma_i) / (2.0 * d * np.abs(cells.a_i))
    )
    rate = max(rate, float(np.sqrt(dgam / params.nu)))
    return rate


def source_step(
    cells: PrimCell,
    params: ModelParams,
    dt: float,
    integrator: str = "rk2",
    max_dt_fraction: float = 0.1,
) -> tuple[PrimCell, int]:
    """Per-cell ODE update of (alpha, a_i, w, n); other fields untouched."""
    if integrator == "none":
        return cells, 0
    if integrator not in SOURCE_INTEGRATORS:
        raise ValueError(f"unknown source integrator {integrator!r}")
    n_sub = 1
    if integrator == "subcycled_rk2":
        rate = _stiffness_rate(cells, params)
        if rate > 0.0:
            n_sub = max(1, int(np.ceil(dt * rate / max_dt_fraction)))
        if n_sub > _MAX_SUBSTEPS:
            raise SubcycleLimit(
                f"stiff sources would need {n_sub} substeps (> {_MAX_SUBSTEPS})"
            )
    rhs = _source_rhs(cells, params)
    q = (cells.alpha, cells.a_i, cells.w, cells.n)
    h = dt / n_sub
    for _ in range(n_sub):
        q = rk2_substep(q, rhs, h)
    new = dataclasses.replace(cells, alpha=q[0], a_i=q[1], w=q[2], n=q[3])
    return _validated(new)


def compute_monitors(cells: PrimCell, grid: Grid1D, params: ModelParams) -> Monitors:
    """Midpoint-rule domain integrals and per-scalar bounds."""
    ev = evaluate_cells(cells, params)
    dx = grid.dx
    bounds = {
        name: (float(np.min(getattr(cells, name))), float(np.max(getattr(cells, name))))
        for name in TRANSPORTED
    }
    return Monitors(
        total_mass=float(np.sum(cells.rho) * dx),
        total_y_mass=float(np.sum(cells.rho * cells.y) * dx),
        total_momentum=float(np.sum(cells.rho * cells.u) * dx),
        total_energy=float(np.sum(ev.E) * dx),
        interfacial_entropy_integral=float(np.sum(cells.a_i * ev.s_i) * dx),
        scalar_min_max=bounds,
    )


def advance(
    cells: PrimCell,
    grid: Grid1D,
    params: ModelParams,
    config: SolverConfig,
    snapshot_every: int = 0,
) -> SimulationResult:
    """March to t_end with Strang splitting; deterministic for fixed inputs.

    Monitors are recorded at step 0, every `config.output_every` steps and
    at the final step; snapshots likewise with `snapshot_every` (0 keeps
    only the initial and final fields). Numerical failures abort with a
    SolverAbort carrying a diagnostics dict.
    """
    t, step, clamps = 0.0, 0, 0
    result = SimulationResult(final=cells, t=t, steps=0, clamp_count=0)
    result.monitor_rows.append((t, compute_monitors(cells, grid, params), clamps))
    result.snapshots.append((0, t, cells))

    use_sources = config.source_integrator != "none"
    while t < config.t_end * (1.0 - 1e-14):
        # 1e-4 margin keeps the step admissible when the leading half
        # source step nudges the wave speeds the flux will see.
        dt = config.cfl * grid.dx / max_wave_speed(cells, params) * (1.0 - 1e-4)
        dt = min(dt, config.t_end - t)
        try:
            if use_sources:
                cells, c = source_step(
                    cells, params, 0.5 * dt, config.source_integrator,
                    config.subcycle_max_dt_fraction,
                )
                clamps += c
            cells, c = hyperbolic_step(cells, grid, params, dt, config.cfl)
            clamps += c
            if use_sources:
                cells, c = source_step(
                    cells, params, 0.5 * dt, config.source_integrator,
                    config.subcycle_max_dt_fraction,
                )
                clamps += c
        except (StateInvalid, CflViolation, SubcycleLimit) as exc:
            raise SolverAbort(
                f"run aborted at step {step + 1}, t={t:.6e}: {exc}",
                diagnostics={
                    "step": step + 1,
                    "t": t,
                    "error": type(exc).__name__,
                    "message": str(exc),
                },
            ) from exc
        t += dt
        step += 1
        if step % config.output_every == 0 or t >= config.t_end * (1.0 - 1e-14):
            result.monitor_rows.append(
                (t, compute_monitors(cells, grid, params), clamps)
            )
        if snapshot_every and step % snapshot_every == 0:
            result.snapshots.append((step, t, cells))

    if not result.snapshots or result.snapshots[-1][0] != step:
        result.snapshots.append((step, t, cells))
    result.final = cells
    result.t = t
    result.steps = step
    result.clamp_count = clamps
    return result
