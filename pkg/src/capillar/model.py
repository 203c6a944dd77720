"""Ten-variable dynamic model: cell state, effective pressure, energy, sources,
quasilinear matrix assembly and eigenstructure.

Variable ordering everywhere in this module is

    (rho, u, y, alpha, a_i, w, n, s, s1, s2)

where w and n are the small-scale momentum unknowns of the volume fraction
and the interfacial area density:

    D_t alpha = rho*y*w/sqrt(m),      D_t a_i = rho*y*n/sqrt(nu).

Two pressures appear. The momentum-flux pressure is

    p_hat = p + (m/2)*(rho*y*w)**2 + (nu/2)*(rho*y*n)**2

with p the full mixture pressure (including the -a_i*gamma_i term). The
quasilinear analysis instead uses the pressure without the interfacial
term,

    p_quasi = alpha*p1 + (1-alpha)*p2 + (m/2)*(rho*y*w)**2 + (nu/2)*(rho*y*n)**2,

whose partial derivatives fill row 2 of the quasilinear matrix; its density
derivative is the squared acoustic speed c_eff^2. The numerically
diagonalized assembled matrix is the ground truth for the spectrum; a
published closed-form eigenvalue expression of the form
u +/- rho*sqrt(y*c1^2 + (1-y)*c2^2 + m*(y*w)^2 + nu*(y*n)^2) is reported
side by side but not used (it is dimensionally inconsistent with the
matrix).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import mixture
from .errors import ConvergenceFailure
from .mixture import MixtureState
from .thermo import (
    ArrayLike,
    InterfaceEos,
    PhaseEos,
    eval_phase,
    phase_pressure_derivs,
)

VARS = ("rho", "u", "y", "alpha", "a_i", "w", "n", "s", "s1", "s2")

SOURCE_SIGNS = ("paper", "derived")


@dataclass(frozen=True)
class ModelParams:
    """Model constants: small-scale inertias, EoS set, damping, sign convention.

    source_sign selects the sign of the gamma_i source of n: "paper"
    reproduces the printed system (+gamma_i), "derived" uses the
    energy-consistent sign (-gamma_i) obtained by differentiating the
    mixture energy.
    """

    m: float               # small-scale inertia for alpha [kg/m], > 0
    nu: float              # small-scale inertia for a_i [kg m], > 0
    eos1: PhaseEos
    eos2: PhaseEos
    ieos: InterfaceEos
    lambda_w: float = 0.0  # damping rate on w [1/s], >= 0
    lambda_n: float = 0.0  # damping rate on n [1/s], >= 0
    source_sign: str = "paper"

    def __post_init__(self):
        if not self.m > 0.0:
            raise ValueError(f"m must be > 0, got {self.m}")
        if not self.nu > 0.0:
            raise ValueError(f"nu must be > 0, got {self.nu}")
        if self.lambda_w < 0.0 or self.lambda_n < 0.0:
            raise ValueError("damping rates must be >= 0")
        if self.source_sign not in SOURCE_SIGNS:
            raise ValueError(f"source_sign must be one of {SOURCE_SIGNS}")

    @property
    def sigma(self) -> float:
        """Sign applied to the gamma_i source of n."""
        return 1.0 if self.source_sign == "paper" else -1.0


@dataclass(frozen=True)
class PrimCell:
    """Full per-cell dynamic state; fields are scalars or same-shape arrays."""

    rho: ArrayLike
    u: ArrayLike
    y: ArrayLike
    alpha: ArrayLike
    a_i: ArrayLike
    w: ArrayLike
    n: ArrayLike
    s: ArrayLike
    s1: ArrayLike
    s2: ArrayLike

    def thermo_state(self) -> MixtureState:
        return MixtureState(
            rho=self.rho, s=self.s, s1=self.s1, s2=self.s2,
            a_i=self.a_i, y=self.y, alpha=self.alpha,
        )


@dataclass(frozen=True)
class QuasiSystem:
    """Assembled quasilinear matrix C (10x10) and source vector R (10,)."""

    C: np.ndarray
    R: np.ndarray


@dataclass(frozen=True)
class CellEval:
    """Per-cell quantities the flux, source and monitor routines consume."""

    p: ArrayLike        # mixture pressure (with -a_i*gamma_i term) [Pa]
    p_hat: ArrayLike    # momentum-flux pressure [Pa]
    c_eff: ArrayLike    # acoustic speed sqrt(d p_quasi / d rho) [m/s]
    p1: ArrayLike
    p2: ArrayLike
    gamma_i: ArrayLike
    s_i: ArrayLike
    e: ArrayLike        # mixture specific energy [J/kg]
    E: ArrayLike        # total energy density [J/m^3]


def evaluate_cells(cell: PrimCell, params: ModelParams) -> CellEval:
    """Evaluate pressures, acoustic speed and energies of one or many cells."""
    ev = mixture._evaluate(cell.thermo_state(), params.eos1, params.eos2, params.ieos)
    st, view, ph1, ph2, ipot = ev.st, ev.view, ev.ph1, ev.ph2, ev.ipot
    rho, y = st.rho, st.y
    kin_w = cell.rho * y * cell.w
    kin_n = cell.rho * y * cell.n
    p = st.alpha * ph1.p + (1.0 - st.alpha) * ph2.p - st.a_i * ipot.gamma_i
    p_hat = p + 0.5 * params.m * kin_w**2 + 0.5 * params.nu * kin_n**2
    c_eff_sq = (
        y * ph1.c2 + (1.0 - y) * ph2.c2
        + cell.rho * y**2 * (params.m * cell.w**2 + params.nu * cell.n**2)
    )
    e = y * ph1.e + (1.0 - y) * ph2.e + st.a_i / rho * ipot.e_i
    E = 0.5 * cell.rho * cell.u**2 + 0.5 * kin_w**2 + 0.5 * kin_n**2 + cell.rho * e
    return CellEval(
        p=p, p_hat=p_hat, c_eff=np.sqrt(c_eff_sq),
        p1=ph1.p, p2=ph2.p, gamma_i=ipot.gamma_i, s_i=view.s_i, e=e, E=E,
    )


def p_hat(cell: PrimCell, params: ModelParams) -> ArrayLike:
    """Effective pressure entering the momentum flux."""
    return evaluate_cells(cell, params).p_hat


def total_energy_density(cell: PrimCell, params: ModelParams) -> ArrayLike:
    """E = 0.5*rho*u^2 + 0.5*(rho*y*w)^2 + 0.5*(rho*y*n)^2 + rho*e."""
    return evaluate_cells(cell, params).E


@dataclass(frozen=True)
class SourceRates:
    """Instantaneous rates of the (alpha, a_i, w, n) source subsystem."""

    d_alpha: ArrayLike
    d_a_i: ArrayLike
    d_w: ArrayLike
    d_n: ArrayLike


def source_terms(cell: PrimCell, params: ModelParams) -> SourceRates:
    """Relaxation/oscillator rates for (alpha, a_i, w, n).

    d alpha/dt = rho*y*w/sqrt(m)
    d a_i/dt   = rho*y*n/sqrt(nu)
    d w/dt     = (p1 - p2)/(sqrt(m)*rho*y)        - lambda_w*w
    d n/dt     = sigma*gamma_i/(sqrt(nu)*rho*y)   - lambda_n*n
    """
    ev = evaluate_cells(cell, params)
    y = np.clip(cell.y, mixture.EPS_FRAC, 1.0 - mixture.EPS_FRAC)
    rho_y = cell.rho * y
    sqm = np.sqrt(params.m)
    sqnu = np.sqrt(params.nu)
    return SourceRates(
        d_alpha=rho_y * cell.w / sqm,
        d_a_i=rho_y * cell.n / sqnu,
        d_w=(ev.p1 - ev.p2) / (sqm * rho_y) - params.lambda_w * cell.w,
        d_n=params.sigma * ev.gamma_i / (sqnu * rho_y) - params.lambda_n * cell.n,
    )


def _p_quasi_partials(cell: PrimCell, params: ModelParams) -> dict[str, float]:
    """Analytic partials of the quasilinear pressure w.r.t. every variable."""
    st = mixture.floored(cell.thermo_state())
    view = mixture.phasic_view(st)
    p1, dp1_dtau, dp1_ds = phase_pressure_derivs(params.eos1, view.tau1, st.s1)
    p2, dp2_dtau, dp2_ds = phase_pressure_derivs(params.eos2, view.tau2, st.s2)
    rho, y, alpha = st.rho, st.y, st.alpha
    m, nu, w, n = params.m, params.nu, cell.w, cell.n
    kin = m * w**2 + nu * n**2
    return {
        "rho": -(alpha * view.tau1 * dp1_dtau
                 + (1.0 - alpha) * view.tau2 * dp2_dtau) / rho + rho * y**2 * kin,
        "u": 0.0,
        "y": -(alpha / y) * view.tau1 * dp1_dtau
             + ((1.0 - alpha) / (1.0 - y)) * view.tau2 * dp2_dtau
             + rho**2 * y * kin,
        "alpha": (p1 - p2) + view.tau1 * dp1_dtau - view.tau2 * dp2_dtau,
        "a_i": 0.0,
        "w": m * rho**2 * y**2 * w,
        "n": nu * rho**2 * y**2 * n,
        "s": 0.0,
        "s1": alpha * dp1_ds,
        "s2": (1.0 - alpha) * dp2_ds,
    }


def p_quasi(cell: PrimCell, params: ModelParams) -> ArrayLike:
    """Quasilinear pressure: p_hat without the -a_i*gamma_i contribution."""
    st = mixture.floored(cell.thermo_state())
    view = mixture.phasic_view(st)
    p1, _, _ = phase_pressure_derivs(params.eos1, view.tau1, st.s1)
    p2, _, _ = phase_pressure_derivs(params.eos2, view.tau2, st.s2)
    kin_w = cell.rho * st.y * cell.w
    kin_n = cell.rho * st.y * cell.n
    return (st.alpha * p1 + (1.0 - st.alpha) * p2
            + 0.5 * params.m * kin_w**2 + 0.5 * params.nu * kin_n**2)


def assemble_quasilinear(cell: PrimCell, params: ModelParams) -> QuasiSystem:
    """Assemble the 10x10 quasilinear matrix C and the source vector R.

    Row 1 is the continuity equation, row 2 the primitive-variable momentum
    equation with entries (1/rho)*d(p_quasi)/d(var); rows 3..10 are pure
    transport (u on the diagonal). R carries the reversible sources only,
    with the configured source_sign applied to the gamma_i entry.
    """
    ev = evaluate_cells(cell, params)
    dp = _p_quasi_partials(cell, params)
    rho, u = float(cell.rho), float(cell.u)
    C = np.zeros((10, 10))
    C[0, 0] = u
    C[0, 1] = rho
    C[1, 1] = u
    for j, name in enumerate(VARS):
        if name == "u":
            continue
        C[1, j] = dp[name] / rho
    for j in range(2, 10):
        C[j, j] = u
    y = float(np.clip(cell.y, mixture.EPS_FRAC, 1.0 - mixture.EPS_FRAC))
    sqm, sqnu = np.sqrt(params.m), np.sqrt(params.nu)
    R = np.zeros(10)
    R[3] = rho * y * cell.w / sqm
    R[4] = rho * y * cell.n / sqnu
    R[5] = (ev.p1 - ev.p2) / (sqm * rho * y)
    R[6] = params.sigma * ev.gamma_i / (sqnu * rho * y)
    return QuasiSystem(C=C, R=R)


@dataclass(frozen=True)
class AnalyticSpectrum:
    """Spectrum of the assembled block-triangular matrix, in closed form."""

    u: float
    c_eff_sq: float          # d p_quasi / d rho at fixed (y..s2)
    eigenvalues: np.ndarray  # u (x8) and u +/- c_eff; complex if c_eff_sq < 0
    paper_pair: tuple[float, float]  # published closed-form acoustic pair
    hyperbolic: bool         # False flags complex acoustic eigenvalues


def eigen_analytic(cell: PrimCell, params: ModelParams) -> AnalyticSpectrum:
    """Exact spectrum {u x8, u +/- c_eff} of the assembled matrix."""
    dp = _p_quasi_partials(cell, params)
    u = float(cell.u)
    c2 = float(dp["rho"])
    st = mixture.floored(cell.thermo_state())
    view = mixture.phasic_view(st)
    ph1 = eval_phase(params.eos1, view.tau1, st.s1)
    ph2 = eval_phase(params.eos2, view.tau2, st.s2)
    y = float(st.y)
    paper_rad = (
        y * float(ph1.c2) + (1.0 - y) * float(ph2.c2)
        + params.m * (y * float(cell.w)) ** 2 + params.nu * (y * float(cell.n)) ** 2
    )
    paper_half = float(cell.rho) * np.sqrt(paper_rad)
    hyperbolic = c2 > 0.0
    if hyperbolic:
        c = np.sqrt(c2)
        eig = np.array([u - c] + [u] * 8 + [u + c])
    else:
        c = np.sqrt(complex(c2))
        eig = np.array([u - c] + [u + 0j] * 8 + [u + c])
    return AnalyticSpectrum(
        u=u, c_eff_sq=c2, eigenvalues=eig,
        paper_pair=(u - paper_half, u + paper_half), hyperbolic=hyperbolic,
    )


@dataclass(frozen=True)
class NumericSpectrum:
    """Dense-eigensolver oracle output with basis diagnostics."""

    eigenvalues: np.ndarray       # complex, unsorted
    basis_condition: float        # condition number of the right-eigenvector matrix
    complete_basis: bool          # condition below 1e12
    converged: bool               # False when the eigensolver failed

    @property
    def real_spectrum(self) -> bool:
        return bool(np.all(np.abs(self.eigenvalues.imag) == 0.0))


def eigen_numeric(C: np.ndarray) -> NumericSpectrum:
    """Full spectrum and eigenvector-basis diagnostics of an arbitrary matrix.

    Eigensolver failure is reported through `converged`, not raised, so a
    caller assembling many states is never aborted; ConvergenceFailure is
    available for callers that prefer an exception.
    """
    C = np.asarray(C, dtype=float)
    if not np.all(np.isfinite(C)):
        raise ValueError("matrix entries must be finite")
    try:
        vals, vecs = np.linalg.eig(C)
    except np.linalg.LinAlgError:
        n = C.shape[0]
        return NumericSpectrum(
            eigenvalues=np.full(n, np.nan + 0j), basis_condition=np.inf,
            complete_basis=False, converged=False,
        )
    cond = float(np.linalg.cond(vecs))
    return NumericSpectrum(
        eigenvalues=vals, basis_condition=cond,
        complete_basis=bool(np.isfinite(cond) and cond < 1e12), converged=True,
    )


def raise_on_failure(spec: NumericSpectrum) -> NumericSpectrum:
    """Turn a failed numeric spectrum into a ConvergenceFailure exception."""
    if not spec.converged:
        raise ConvergenceFailure("dense eigensolver did not converge")
    return spec
