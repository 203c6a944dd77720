"""Pydantic request/response models for the service and the config files.

The request models double as the on-disk JSON config schema used by the
CLI; unknown keys are rejected everywhere and validation messages name the
offending key.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..equilibrium import EquilibriumProblem, GeometricClosure
from ..mixture import A_MIN, EPS_FRAC, MixtureState
from ..model import ModelParams, PrimCell
from ..solver1d import Grid1D, SolverConfig
from ..thermo import InterfaceEos, PhaseEos


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------- requests

class EosBlock(StrictModel):
    """Stiffened-gas parameters of one bulk phase."""

    gamma: float = Field(gt=1.0)
    c_v: float = Field(gt=0.0)
    p_inf: float = Field(default=0.0, ge=0.0)
    q: float = 0.0
    tau_ref: float = Field(default=1.0, gt=0.0)
    T_ref: float = Field(default=300.0, gt=0.0)
    s_ref: float = 0.0

    def build(self) -> PhaseEos:
        return PhaseEos(**self.model_dump())


class InterfaceBlock(StrictModel):
    """Quadratic interfacial energy parameters."""

    gamma0: float = Field(ge=0.0)
    T_ref_i: float = Field(default=373.0, gt=0.0)
    theta: float = Field(default=1e-4, ge=0.0)

    def build(self) -> InterfaceEos:
        return InterfaceEos(**self.model_dump())


class ParamsBlock(StrictModel):
    """Small-scale inertias, damping rates and the n-source sign convention."""

    m: float = Field(gt=0.0)
    nu: float = Field(gt=0.0)
    lambda_w: float = Field(default=0.0, ge=0.0)
    lambda_n: float = Field(default=0.0, ge=0.0)
    source_sign: Literal["paper", "derived"] = "paper"

    def build(self, eos1: PhaseEos, eos2: PhaseEos, ieos: InterfaceEos) -> ModelParams:
        return ModelParams(eos1=eos1, eos2=eos2, ieos=ieos, **self.model_dump())


class GridBlock(StrictModel):
    x0: float
    x1: float
    n_cells: int = Field(gt=1)
    bc: Literal["periodic", "transmissive"] = "periodic"

    def build(self) -> Grid1D:
        return Grid1D(**self.model_dump())


class TimeBlock(StrictModel):
    cfl: float = Field(gt=0.0, le=1.0)
    t_end: float = Field(gt=0.0)
    source_integrator: Literal["rk2", "subcycled_rk2", "none"] = "rk2"
    subcycle_max_dt_fraction: float = Field(default=0.1, gt=0.0)
    output_every: int = Field(default=10, ge=1)

    def build(self) -> SolverConfig:
        return SolverConfig(**self.model_dump())


class OutputBlock(StrictModel):
    directory: str = "."
    prefix: str = "run"
    every: int = Field(default=0, ge=0)   # snapshot cadence; 0 = first/last only


class CellBlock(StrictModel):
    """Full per-cell state (also the thermodynamic subvector for reports)."""

    rho: float = Field(gt=0.0)
    u: float = 0.0
    y: float = Field(ge=0.0, le=1.0)
    alpha: float = Field(ge=0.0, le=1.0)
    a_i: float = Field(gt=0.0)
    w: float = 0.0
    n: float = 0.0
    s: float
    s1: float
    s2: float

    def build(self) -> PrimCell:
        return PrimCell(**self.model_dump())


class ICBlock(StrictModel):
    """Initial condition: uniform, two-state or a single-field sine bump."""

    kind: Literal["uniform", "two_state", "smooth_sine"]
    state: Optional[CellBlock] = None       # uniform
    x_split: Optional[float] = None         # two_state
    left: Optional[CellBlock] = None
    right: Optional[CellBlock] = None
    base: Optional[CellBlock] = None        # smooth_sine
    amplitude: Optional[float] = None
    field: Optional[Literal[
        "rho", "u", "y", "alpha", "a_i", "w", "n", "s", "s1", "s2"
    ]] = None

    @model_validator(mode="after")
    def _check_kind(self):
        need = {
            "uniform": ("state",),
            "two_state": ("x_split", "left", "right"),
            "smooth_sine": ("base", "amplitude", "field"),
        }[self.kind]
        for name in need:
            if getattr(self, name) is None:
                raise ValueError(f"ic.{name} is required for kind={self.kind!r}")
        return self


class RunConfig(StrictModel):
    """Full configuration of a time-marching run."""

    eos1: EosBlock
    eos2: EosBlock
    interface: InterfaceBlock
    params: ParamsBlock
    grid: GridBlock
    ic: ICBlock
    time: TimeBlock
    output: OutputBlock = OutputBlock()


class CheckBlock(StrictModel):
    h: float = Field(default=1e-6, gt=0.0)          # relative FD step
    tol_phase: float = Field(default=1e-6, gt=0.0)
    tol_interface: float = Field(default=1e-8, gt=0.0)


class CheckThermoConfig(StrictModel):
    eos1: EosBlock
    eos2: EosBlock
    interface: InterfaceBlock
    check: CheckBlock = CheckBlock()


class ClosureBlock(StrictModel):
    kind: Literal["spherical", "planar"]
    n_b: Optional[float] = Field(default=None, gt=0.0)

    def build(self) -> GeometricClosure:
        return GeometricClosure(kind=self.kind, n_b=self.n_b)


class ProblemBlock(StrictModel):
    tau: float = Field(gt=0.0)
    s: float
    closure: ClosureBlock
    mode: Literal["full", "frozen_y"] = "full"
    y: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    tol: float = Field(default=1e-10, gt=0.0)
    max_iter: int = Field(default=100, ge=1)

    @model_validator(mode="after")
    def _check_mode(self):
        if self.mode == "frozen_y" and self.y is None:
            raise ValueError("problem.y is required for mode='frozen_y'")
        return self

    def build(self) -> EquilibriumProblem:
        return EquilibriumProblem(
            tau=self.tau, s=self.s, closure=self.closure.build(),
            mode=self.mode, y=self.y, tol=self.tol, max_iter=self.max_iter,
        )


class GuessBlock(StrictModel):
    """Starting point of the Newton iteration."""

    alpha: float = Field(gt=0.0, lt=1.0)
    s1: float
    s_i: float = 0.0
    y: Optional[float] = Field(default=None, gt=0.0, lt=1.0)  # full mode
    a_i: Optional[float] = Field(default=None, gt=0.0)        # planar closure


class EquilibriumConfig(StrictModel):
    eos1: EosBlock
    eos2: EosBlock
    interface: InterfaceBlock
    problem: ProblemBlock
    guess: GuessBlock

    @model_validator(mode="after")
    def _check_guess(self):
        if self.problem.mode == "full" and self.guess.y is None:
            raise ValueError("guess.y is required for mode='full'")
        if self.problem.closure.kind == "planar" and self.guess.a_i is None:
            raise ValueError("guess.a_i is required for the planar closure")
        return self

    def build_guess(self) -> MixtureState:
        problem = self.problem.build()
        rho = 1.0 / problem.tau
        y = problem.y if problem.mode == "frozen_y" else self.guess.y
        a_i = problem.closure.area_density(self.guess.alpha)
        if a_i is None:
            a_i = self.guess.a_i
        s2 = (problem.s - y * self.guess.s1 - (a_i / rho) * self.guess.s_i) / (1.0 - y)
        return MixtureState(
            rho=rho, s=problem.s, s1=self.guess.s1, s2=s2,
            a_i=float(a_i), y=y, alpha=self.guess.alpha,
        )


class EigenConfig(StrictModel):
    eos1: EosBlock
    eos2: EosBlock
    interface: InterfaceBlock
    params: ParamsBlock
    cell: CellBlock


# --------------------------------------------------------------- responses

class HealthResponse(StrictModel):
    status: str
    version: str


class PhaseSweepReport(StrictModel):
    max_residual_dtau: float
    max_residual_ds: float


class InterfaceSweepReport(StrictModel):
    max_residual_gibbs_duhem: float
    max_residual_temperature: float


class ThermoReport(StrictModel):
    h: float
    tol_phase: float
    tol_interface: float
    phase1: Optional[PhaseSweepReport] = None
    phase2: Optional[PhaseSweepReport] = None
    interface: Optional[InterfaceSweepReport] = None
    passed: bool
    error: Optional[str] = None


class ThermoStateReport(StrictModel):
    rho: float
    s: float
    s1: float
    s2: float
    a_i: float
    y: float
    alpha: float
    tau1: float
    tau2: float
    s_i: float


class EquilibriumReport(StrictModel):
    converged: bool
    state: ThermoStateReport
    residuals: dict[str, float]
    residual_norm: float
    iterations: int
    R: float
    p1: float
    p2: float
    gamma_i: float
    delta_p: float              # p1 - p2
    laplace_pressure: float     # 2*gamma_i/R
    young_laplace_residual: float


class EigenReport(StrictModel):
    u: float
    c_eff: float
    hyperbolic: bool
    analytic_eigenvalues: list[float]
    numeric_eigenvalues_real: list[float]
    numeric_eigenvalues_imag: list[float]
    paper_formula_pair: list[float]
    max_rel_deviation: float    # numeric oracle vs analytic spectrum
    paper_formula_deviation: float
    complete_basis: bool
    basis_condition: float
    eigensolver_converged: bool


class SnapshotFile(StrictModel):
    filename: str
    content: str


class RunArtifacts(StrictModel):
    summary: dict
    summary_filename: str
    monitors_csv: str
    monitors_filename: str
    snapshots: list[SnapshotFile]


class ErrorPayload(StrictModel):
    error: str
    message: str
    diagnostics: dict = {}


# Defaults echoed into run summaries for provenance.
BUILD_CONSTANTS = {
    "eps_frac": EPS_FRAC,
    "a_min": A_MIN,
    "newton_jacobian_step": 1e-7,
    "gibbs_check_step": 1e-6,
}
