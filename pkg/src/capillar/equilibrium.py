"""Thermodynamic-equilibrium solving under a geometric closure.

Equilibrium of the fluid-interface system at fixed total (tau, s) requires

    T1 = T2 = T_i,   mu1 = mu2,   p1 - p2 = gamma_i * a_i'(alpha),

where the last (mechanical) condition is the pointwise form of the
differential relation gamma_i*d(a_i) - (p1 - p2)*d(alpha) = 0 once a
closure a_i(alpha) is chosen. Two closures are provided:

* spherical -- monodisperse bubbles of number density n_b:
  a_i(alpha) = (36*pi*n_b)**(1/3) * alpha**(2/3), so a_i'(alpha) = 2/R with
  R = 3*alpha/a_i and the mechanical condition is the Young-Laplace law
  p1 - p2 = 2*gamma_i/R;
* planar -- a_i is a free constant, a_i'(alpha) = 0, and mechanical
  equilibrium is pressure saturation p1 = p2.

The solver is a damped Newton iteration on the nondimensional residual
vector with unknowns (alpha, s1, s_i) at frozen mass fraction, or
(y, alpha, s1, s_i) in full mode; s2 follows from the total-entropy
constraint s = y*s1 + (1-y)*s2 + (a_i/rho)*s_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClosureInconsistent,
    InfeasibleRegion,
    MaxIterExceeded,
    SingularJacobian,
)
from .mixture import EPS_FRAC, MixtureState, phasic_view
from .thermo import InterfaceEos, PhaseEos, eval_interface, eval_phase

CLOSURE_KINDS = ("spherical", "planar")
MODES = ("full", "frozen_y")

_JAC_STEP = 1e-7      # relative finite-difference step for the Jacobian
_MAX_HALVINGS = 30    # damping halvings per Newton step


@dataclass(frozen=True)
class GeometricClosure:
    """Link between interfacial area density and volume fraction."""

    kind: str                 # "spherical" | "planar"
    n_b: float | None = None  # bubble number density [1/m^3] (spherical only)

    def __post_init__(self):
        if self.kind not in CLOSURE_KINDS:
            raise ValueError(f"closure kind must be one of {CLOSURE_KINDS}")
        if self.kind == "spherical" and not (self.n_b and self.n_b > 0.0):
            raise ValueError("spherical closure needs n_b > 0")

    def area_density(self, alpha):
        """a_i(alpha); undefined (None) for the planar closure."""
        if self.kind == "planar":
            return None
        return (36.0 * np.pi * self.n_b) ** (1.0 / 3.0) * alpha ** (2.0 / 3.0)

    def d_area_density(self, alpha, a_i):
        """a_i'(alpha) evaluated at a state on the closure."""
        if self.kind == "planar":
            return 0.0
        return (2.0 / 3.0) * a_i / alpha


@dataclass(frozen=True)
class EquilibriumProblem:
    """Equilibrium problem at fixed total specific volume and entropy."""

    tau: float                 # total specific volume [m^3/kg], > 0
    s: float                   # total specific entropy [J/(kg K)]
    closure: GeometricClosure
    mode: str = "full"         # "full" | "frozen_y"
    y: float | None = None     # fixed mass fraction (frozen_y mode)
    tol: float = 1e-10         # infinity-norm residual tolerance (nondimensional)
    max_iter: int = 100

    def __post_init__(self):
        if not self.tau > 0.0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "frozen_y" and self.y is None:
            raise ValueError("frozen_y mode needs a mass fraction y")


@dataclass(frozen=True)
class EquilibriumSolution:
    """Converged state plus the per-condition residual report."""

    state: MixtureState
    residual_norm: float
    iterations: int
    report: dict[str, float] = field(default_factory=dict)


def young_laplace_radius(state: MixtureState) -> float:
    """Bubble radius of the spherical interpretation, R = 3*alpha/a_i."""
    return float(3.0 * state.alpha / state.a_i)


def _scales(ph1, ph2, ipot, eos1: PhaseEos, eos2: PhaseEos):
    T_bar = max(float(ph1.T), float(ph2.T), float(ipot.T_i))
    p_bar = max(abs(float(ph1.p)), abs(float(ph2.p)), eos1.p_inf, eos2.p_inf, 1.0)
    mu_bar = max(abs(float(ph1.mu)), abs(float(ph2.mu)), 1.0)
    return T_bar, p_bar, mu_bar


def equilibrium_residual(
    state: MixtureState,
    closure: GeometricClosure,
    eos1: PhaseEos,
    eos2: PhaseEos,
    ieos: InterfaceEos,
    frozen_y: bool = False,
) -> np.ndarray:
    """Nondimensional equilibrium residual of a state.

    Components: [(T1-T2)/T_bar, (T1-T_i)/T_bar, (mu1-mu2)/mu_bar,
    (p1-p2-gamma_i*a_i'(alpha))/p_bar]; the chemical component is omitted
    in frozen_y mode. Raises ClosureInconsistent if a spherical state's
    a_i disagrees with the closure by more than 1e-10 relative.
    """
    closure_ai = closure.area_density(state.alpha)
    if closure_ai is not None:
        if abs(float(state.a_i) - float(closure_ai)) > 1e-10 * float(closure_ai):
            raise ClosureInconsistent(
                f"state a_i={state.a_i} vs closure a_i={closure_ai}"
            )
    view = phasic_view(state)
    ph1 = eval_phase(eos1, view.tau1, state.s1)
    ph2 = eval_phase(eos2, view.tau2, state.s2)
    ipot = eval_interface(ieos, view.s_i)
    T_bar, p_bar, mu_bar = _scales(ph1, ph2, ipot, eos1, eos2)
    da = closure.d_area_density(state.alpha, state.a_i)
    mech = (ph1.p - ph2.p - ipot.gamma_i * da) / p_bar
    parts = [
        (ph1.T - ph2.T) / T_bar,
        (ph1.T - ipot.T_i) / T_bar,
    ]
    if not frozen_y:
        parts.append((ph1.mu - ph2.mu) / mu_bar)
    parts.append(mech)
    return np.array([float(v) for v in parts])


def _build_state(problem: EquilibriumProblem, y, alpha, s1, s_i,
                 planar_ai: float) -> MixtureState:
    rho = 1.0 / problem.tau
    a_i = problem.closure.area_density(alpha)
    if a_i is None:
        a_i = planar_ai
    s2 = (problem.s - y * s1 - (a_i / rho) * s_i) / (1.0 - y)
    return MixtureState(
        rho=rho, s=problem.s, s1=s1, s2=s2, a_i=float(a_i), y=y, alpha=alpha,
    )


def solve_equilibrium(
    problem: EquilibriumProblem,
    guess: MixtureState,
    eos1: PhaseEos,
    eos2: PhaseEos,
    ieos: InterfaceEos,
) -> EquilibriumSolution:
    """Damped Newton solve of the equilibrium conditions.

    Unknowns are (alpha, s1, s_i) in frozen_y mode and (y, alpha, s1, s_i)
    in full mode; the returned state satisfies the closure exactly. The
    Jacobian is a forward finite difference with relative step 1e-7 and
    each step is halved until the residual norm decreases.

    Raises:
        MaxIterExceeded: no convergence within problem.max_iter.
        SingularJacobian: Newton system unsolvable; try another guess.
        InfeasibleRegion: iterates pinned at fraction floors or gamma_i < 0.
    """
    frozen = problem.mode == "frozen_y"
    y_fixed = problem.y if frozen else None
    planar_ai = float(guess.a_i)

    guess_view = phasic_view(guess)
    x = np.array(
        ([] if frozen else [float(guess.y)])
        + [float(guess.alpha), float(guess.s1), float(guess_view.s_i)]
    )

    def unpack(xv):
        if frozen:
            return y_fixed, xv[0], xv[1], xv[2]
        return xv[0], xv[1], xv[2], xv[3]

    def admissible(xv):
        y, alpha, _, _ = unpack(xv)
        return (EPS_FRAC <= alpha <= 1.0 - EPS_FRAC
                and EPS_FRAC <= y <= 1.0 - EPS_FRAC)

    def residual(xv):
        y, alpha, s1, s_i = unpack(xv)
        state = _build_state(problem, y, alpha, s1, s_i, planar_ai)
        r = equilibrium_residual(state, problem.closure, eos1, eos2, ieos,
                                 frozen_y=frozen)
        gamma_i = float(eval_interface(ieos, s_i).gamma_i)
        return r, state, gamma_i

    if not admissible(x):
        raise InfeasibleRegion("initial guess outside fraction floors")
    r, state, gamma_i = residual(x)
    if gamma_i < 0.0:
        raise InfeasibleRegion("initial guess has gamma_i < 0")
    norm = float(np.max(np.abs(r)))

    for it in range(1, problem.max_iter + 1):
        if norm <= problem.tol:
            return _solution(state, r, norm, it - 1, frozen)
        n = x.size
        J = np.empty((r.size, n))
        for j in range(n):
            h = _JAC_STEP * (abs(x[j]) + 1.0)
            xp = x.copy()
            xp[j] += h
            try:
                rp = residual(xp)[0]
            except Exception as exc:
                raise SingularJacobian(
                    f"residual evaluation failed while forming the Jacobian: {exc}"
                ) from exc
            J[:, j] = (rp - r) / h
        try:
            dx = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(
                "singular Newton Jacobian; try a different guess"
            ) from exc
        if not np.all(np.isfinite(dx)):
            raise SingularJacobian("non-finite Newton step; try a different guess")

        step = 1.0
        accepted = False
        floored_trials = 0
        for _ in range(_MAX_HALVINGS + 1):
            xt = x + step * dx
            if not admissible(xt):
                floored_trials += 1
                step *= 0.5
                continue
            try:
                rt, state_t, gamma_t = residual(xt)
            except Exception:
                step *= 0.5
                continue
            if gamma_t < 0.0:
                floored_trials += 1
                step *= 0.5
                continue
            norm_t = float(np.max(np.abs(rt)))
            if norm_t < norm or norm_t <= problem.tol:
                x, r, state, norm = xt, rt, state_t, norm_t
                accepted = True
                break
            step *= 0.5
        if not accepted:
            if floored_trials > _MAX_HALVINGS / 2:
                raise InfeasibleRegion(
                    "iterates pinned at fraction floors or gamma_i < 0"
                )
            raise MaxIterExceeded(
                f"line search stalled at iteration {it} (residual {norm:.3e})"
            )

    if norm <= problem.tol:
        return _solution(state, r, norm, problem.max_iter, frozen)
    raise MaxIterExceeded(
        f"no convergence in {problem.max_iter} iterations (residual {norm:.3e})"
    )


def _solution(state, r, norm, iterations, frozen) -> EquilibriumSolution:
    if frozen:
        keys = ("thermal", "thermal_interface", "mechanical")
    else:
        keys = ("thermal", "thermal_interface", "chemical", "mechanical")
    report = {k: float(v) for k, v in zip(keys, r)}
    return EquilibriumSolution(
        state=state, residual_norm=norm, iterations=iterations, report=report,
    )
