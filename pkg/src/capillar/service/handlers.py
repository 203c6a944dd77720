"""Request handlers shared by the FastAPI app and the in-process CLI client."""

from __future__ import annotations

import numpy as np

from .. import io
from ..equilibrium import solve_equilibrium, young_laplace_radius
from ..errors import CapillarError, DegenerateInterfaceEos
from ..mixture import phasic_view
from ..model import (
    PrimCell,
    assemble_quasilinear,
    eigen_analytic,
    eigen_numeric,
)
from ..solver1d import advance
from ..thermo import (
    eval_interface,
    eval_phase,
    verify_gibbs_interface,
    verify_gibbs_phase,
)
from . import schemas


def handle_health(version: str) -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=version)


def _phase_sweep(eos, h: float) -> schemas.PhaseSweepReport:
    taus = np.logspace(-3.0, 1.0, 10)
    entropies = np.logspace(1.0, np.log10(5000.0), 10)
    worst_tau, worst_s = 0.0, 0.0
    for tau in taus:
        for s in entropies:
            r_tau, r_s = verify_gibbs_phase(eos, float(tau), float(s), h)
            worst_tau = max(worst_tau, r_tau)
            worst_s = max(worst_s, r_s)
    return schemas.PhaseSweepReport(
        max_residual_dtau=worst_tau, max_residual_ds=worst_s
    )


def _interface_sweep(ieos, h: float) -> schemas.InterfaceSweepReport:
    worst_gd, worst_T = 0.0, 0.0
    for s_i in np.linspace(-5.0, 5.0, 101):
        r_gd, r_T = verify_gibbs_interface(ieos, float(s_i), h)
        worst_gd = max(worst_gd, r_gd)
        worst_T = max(worst_T, r_T)
    return schemas.InterfaceSweepReport(
        max_residual_gibbs_duhem=worst_gd, max_residual_temperature=worst_T
    )


def handle_check_thermo(cfg: schemas.CheckThermoConfig) -> schemas.ThermoReport:
    """Gibbs/Gibbs-Duhem residual sweeps with pass/fail at the configured tolerances."""
    check = cfg.check
    phase1 = _phase_sweep(cfg.eos1.build(), check.h)
    phase2 = _phase_sweep(cfg.eos2.build(), check.h)
    try:
        interface = _interface_sweep(cfg.interface.build(), check.h)
        error = None
    except DegenerateInterfaceEos as exc:
        interface = None
        error = f"DegenerateInterfaceEos: {exc}"
    phase_ok = all(
        v < check.tol_phase
        for rep in (phase1, phase2)
        for v in (rep.max_residual_dtau, rep.max_residual_ds)
    )
    iface_ok = interface is not None and max(
        interface.max_residual_gibbs_duhem, interface.max_residual_temperature
    ) < check.tol_interface
    return schemas.ThermoReport(
        h=check.h,
        tol_phase=check.tol_phase,
        tol_interface=check.tol_interface,
        phase1=phase1,
        phase2=phase2,
        interface=interface,
        passed=phase_ok and iface_ok,
        error=error,
    )


def handle_equilibrium(cfg: schemas.EquilibriumConfig) -> schemas.EquilibriumReport:
    """Solve the configured equilibrium problem; solver errors propagate."""
    eos1, eos2, ieos = cfg.eos1.build(), cfg.eos2.build(), cfg.interface.build()
    problem = cfg.problem.build()
    guess = cfg.build_guess()
    sol = solve_equilibrium(problem, guess, eos1, eos2, ieos)
    state = sol.state
    view = phasic_view(state)
    ph1 = eval_phase(eos1, view.tau1, state.s1)
    ph2 = eval_phase(eos2, view.tau2, state.s2)
    gamma_i = float(eval_interface(ieos, view.s_i).gamma_i)
    R = young_laplace_radius(state)
    delta_p = float(ph1.p - ph2.p)
    laplace = 2.0 * gamma_i / R
    return schemas.EquilibriumReport(
        converged=True,
        state=schemas.ThermoStateReport(
            rho=float(state.rho), s=float(state.s), s1=float(state.s1),
            s2=float(state.s2), a_i=float(state.a_i), y=float(state.y),
            alpha=float(state.alpha), tau1=float(view.tau1),
            tau2=float(view.tau2), s_i=float(view.s_i),
        ),
        residuals=sol.report,
        residual_norm=sol.residual_norm,
        iterations=sol.iterations,
        R=R,
        p1=float(ph1.p),
        p2=float(ph2.p),
        gamma_i=gamma_i,
        delta_p=delta_p,
        laplace_pressure=laplace,
        young_laplace_residual=delta_p - laplace,
    )


def handle_eigen(cfg: schemas.EigenConfig) -> schemas.EigenReport:
    """Analytic and numeric spectra of the assembled quasilinear matrix."""
    eos1, eos2, ieos = cfg.eos1.build(), cfg.eos2.build(), cfg.interface.build()
    params = cfg.params.build(eos1, eos2, ieos)
    cell = cfg.cell.build()
    ana = eigen_analytic(cell, params)
    qs = assemble_quasilinear(cell, params)
    num = eigen_numeric(qs.C)
    if num.converged and ana.hyperbolic:
        scale = abs(ana.u) + float(np.sqrt(ana.c_eff_sq))
        dev = float(
            np.max(np.abs(np.sort(num.eigenvalues.real) - np.sort(ana.eigenvalues.real)))
            / scale
        )
    else:
        dev = float("nan")
    c_eff = float(np.sqrt(ana.c_eff_sq)) if ana.hyperbolic else float("nan")
    paper_dev = float(
        abs(ana.paper_pair[1] - (ana.u + c_eff)) / (abs(ana.u) + c_eff)
    ) if ana.hyperbolic else float("nan")
    return schemas.EigenReport(
        u=ana.u,
        c_eff=c_eff,
        hyperbolic=ana.hyperbolic and num.real_spectrum,
        analytic_eigenvalues=[float(v) for v in np.sort(ana.eigenvalues.real)],
        numeric_eigenvalues_real=[float(v) for v in np.sort(num.eigenvalues.real)],
        numeric_eigenvalues_imag=[
            float(v) for v in num.eigenvalues.imag[np.argsort(num.eigenvalues.real)]
        ],
        paper_formula_pair=[float(ana.paper_pair[0]), float(ana.paper_pair[1])],
        max_rel_deviation=dev,
        paper_formula_deviation=paper_dev,
        complete_basis=num.complete_basis,
        basis_condition=num.basis_condition,
        eigensolver_converged=num.converged,
    )


def build_initial_cells(ic: schemas.ICBlock, grid) -> PrimCell:
    """Materialize the configured initial condition on the grid."""
    x = grid.centers()
    names = ("rho", "u", "y", "alpha", "a_i", "w", "n", "s", "s1", "s2")
    if ic.kind == "uniform":
        vals = {k: np.full(grid.n_cells, getattr(ic.state, k)) for k in names}
    elif ic.kind == "two_state":
        vals = {
            k: np.where(x < ic.x_split, getattr(ic.left, k), getattr(ic.right, k))
            for k in names
        }
    else:  # smooth_sine
        vals = {k: np.full(grid.n_cells, getattr(ic.base, k)) for k in names}
        bump = ic.amplitude * np.sin(2.0 * np.pi * (x - grid.x0) / (grid.x1 - grid.x0))
        vals[ic.field] = vals[ic.field] + bump
    return PrimCell(**vals)


def _monitor_dict(mon) -> dict:
    return {
        "mass": mon.total_mass,
        "y_mass": mon.total_y_mass,
        "momentum": mon.total_momentum,
        "energy": mon.total_energy,
        "ai_si": mon.interfacial_entropy_integral,
        "scalar_min_max": {k: list(v) for k, v in mon.scalar_min_max.items()},
    }


def handle_run(cfg: schemas.RunConfig) -> schemas.RunArtifacts:
    """Execute a run and render all output files as strings.

    SolverAbort (and any other CapillarError) propagates to the caller,
    which maps it to an error payload / exit code.
    """
    eos1, eos2, ieos = cfg.eos1.build(), cfg.eos2.build(), cfg.interface.build()
    params = cfg.params.build(eos1, eos2, ieos)
    grid = cfg.grid.build()
    solver_cfg = cfg.time.build()
    cells = build_initial_cells(cfg.ic, grid)
    result = advance(cells, grid, params, solver_cfg,
                     snapshot_every=cfg.output.every)

    prefix = cfg.output.prefix
    snapshots = [
        schemas.SnapshotFile(
            filename=f"{prefix}_snap_{step:06d}.csv",
            content=io.snapshot_csv(fields, grid, params),
        )
        for step, _, fields in result.snapshots
    ]
    first = result.monitor_rows[0][1]
    last = result.monitor_rows[-1][1]
    drift = {
        "mass": last.total_mass - first.total_mass,
        "y_mass": last.total_y_mass - first.total_y_mass,
        "momentum": last.total_momentum - first.total_momentum,
        "energy": last.total_energy - first.total_energy,
        "ai_si": (last.interfacial_entropy_integral
                  - first.interfacial_entropy_integral),
    }
    summary = {
        "config": cfg.model_dump(),
        "steps": result.steps,
        "t_final": result.t,
        "clamp_count": result.clamp_count,
        "energy_flux_convention": "(E + p_hat) * u",
        "build_constants": dict(schemas.BUILD_CONSTANTS),
        "initial_monitors": _monitor_dict(first),
        "final_monitors": _monitor_dict(last),
        "drift": drift,
    }
    return schemas.RunArtifacts(
        summary=summary,
        summary_filename=f"{prefix}_summary.json",
        monitors_csv=io.monitors_csv(result.monitor_rows),
        monitors_filename=f"{prefix}_monitors.csv",
        snapshots=snapshots,
    )


def error_payload(exc: CapillarError) -> schemas.ErrorPayload:
    return schemas.ErrorPayload(
        error=type(exc).__name__,
        message=str(exc),
        diagnostics=getattr(exc, "diagnostics", {}) or {},
    )
