"""Closed-form equations of state for the two bulk phases and the massless interface.

Each bulk phase follows a stiffened-gas law written in entropic variables
(tau, s), so temperature, pressure, chemical potential and sound speed all
come out in closed form:

    T(tau, s) = T_ref * (tau_ref/tau)**(gamma - 1) * exp((s - s_ref)/c_v)
    e(tau, s) = c_v*T + p_inf*tau + q
    p(tau, s) = (gamma - 1)*c_v*T/tau - p_inf
    mu        = e - T*s + p*tau
    c^2       = gamma*(p + p_inf)*tau

The interface carries an energy per unit area e_i(s_i) that is quadratic in
the interfacial entropy per area, the minimal model with an invertible
temperature map T_i(s_i):

    e_i(s_i)    = gamma0 + T_ref_i*s_i + (theta/2)*s_i**2
    T_i(s_i)    = T_ref_i + theta*s_i
    gamma_i     = e_i - T_i*s_i = gamma0 - (theta/2)*s_i**2

so gamma_i as a function of T_i satisfies d(gamma_i)/d(T_i) = -s_i exactly.

All evaluation routines accept Python floats or numpy arrays (broadcast
elementwise) and are pure functions of immutable inputs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateInterfaceEos,
    NegativeSurfaceTension,
    NonPositiveTemperature,
    NonPositiveVolume,
)

ArrayLike = float | np.ndarray


@dataclass(frozen=True)
class PhaseEos:
    """Stiffened-gas equation of state of one bulk phase, entropic form."""

    gamma: float           # adiabatic exponent, > 1
    c_v: float             # specific heat [J/(kg K)], > 0
    p_inf: float = 0.0     # stiffening pressure [Pa], >= 0
    q: float = 0.0         # energy offset [J/kg]
    tau_ref: float = 1.0   # reference specific volume [m^3/kg], > 0
    T_ref: float = 300.0   # reference temperature [K], > 0
    s_ref: float = 0.0     # reference specific entropy [J/(kg K)]

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must be > 1, got {self.gamma}")
        if not self.c_v > 0.0:
            raise ValueError(f"c_v must be > 0, got {self.c_v}")
        if self.p_inf < 0.0:
            raise ValueError(f"p_inf must be >= 0, got {self.p_inf}")
        if not self.tau_ref > 0.0:
            raise ValueError(f"tau_ref must be > 0, got {self.tau_ref}")
        if not self.T_ref > 0.0:
            raise ValueError(f"T_ref must be > 0, got {self.T_ref}")


@dataclass(frozen=True)
class InterfaceEos:
    """Quadratic interfacial energy-per-area model.

    gamma0 = 0 and theta = 0 are accepted as degenerate limits (needed for
    gamma_i-free configurations and for exercising the degenerate-model
    error path); theta = 0 makes gamma_i(T_i) undefined and is rejected by
    :func:`verify_gibbs_interface`.
    """

    gamma0: float          # surface tension at zero interfacial entropy [N/m], >= 0
    T_ref_i: float = 373.0  # reference interfacial temperature [K], > 0
    theta: float = 1e-4    # entropy stiffness: T_i = T_ref_i + theta*s_i, >= 0

    def __post_init__(self):
        if self.gamma0 < 0.0:
            raise ValueError(f"gamma0 must be >= 0, got {self.gamma0}")
        if not self.T_ref_i > 0.0:
            raise ValueError(f"T_ref_i must be > 0, got {self.T_ref_i}")
        if self.theta < 0.0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")


@dataclass(frozen=True)
class PhasePotentials:
    """First-derivative potentials of one phase at a given (tau, s)."""

    e: ArrayLike    # specific internal energy [J/kg]
    p: ArrayLike    # pressure [Pa]
    T: ArrayLike    # temperature [K]
    mu: ArrayLike   # chemical potential e - T*s + p*tau [J/kg]
    c2: ArrayLike   # squared sound speed gamma*(p + p_inf)*tau [m^2/s^2]


@dataclass(frozen=True)
class InterfacePotentials:
    """Interfacial potentials at a given entropy per area s_i."""

    e_i: ArrayLike      # energy per area [J/m^2]
    T_i: ArrayLike      # interfacial temperature e_i'(s_i) [K]
    gamma_i: ArrayLike  # surface tension e_i - T_i*s_i [N/m]


def phase_temperature(eos: PhaseEos, tau: ArrayLike, s: ArrayLike) -> ArrayLike:
    """Temperature of the stiffened gas at (tau, s); raises if non-positive."""
    if np.any(np.asarray(tau) <= 0.0):
        raise NonPositiveVolume(f"tau must be > 0, got {tau}")
    T = eos.T_ref * (eos.tau_ref / tau) ** (eos.gamma - 1.0) * np.exp(
        (s - eos.s_ref) / eos.c_v
    )
    if np.any(~np.isfinite(T)) or np.any(T <= 0.0):
        raise NonPositiveTemperature(
            f"temperature underflowed or overflowed at tau={tau}, s={s}"
        )
    return T


def eval_phase(eos: PhaseEos, tau: ArrayLike, s: ArrayLike) -> PhasePotentials:
    """Evaluate all first-derivative potentials of a phase.

    Args:
        eos: phase equation of state
        tau: specific volume [m^3/kg], > 0
        s:   specific entropy [J/(kg K)]

    Returns:
        PhasePotentials with e, p, T, mu and c2.
    """
    T = phase_temperature(eos, tau, s)
    p = (eos.gamma - 1.0) * eos.c_v * T / tau - eos.p_inf
    e = eos.c_v * T + eos.p_inf * tau + eos.q
    mu = e - T * s + p * tau
    c2 = eos.gamma * (p + eos.p_inf) * tau
    return PhasePotentials(e=e, p=p, T=T, mu=mu, c2=c2)


def phase_pressure_derivs(
    eos: PhaseEos, tau: ArrayLike, s: ArrayLike
) -> tuple[ArrayLike, ArrayLike, ArrayLike]:
    """Pressure and its analytic partials (p, dp/dtau, dp/ds) at fixed entropy/volume."""
    T = phase_temperature(eos, tau, s)
    p = (eos.gamma - 1.0) * eos.c_v * T / tau - eos.p_inf
    dp_dtau = -eos.gamma * (p + eos.p_inf) / tau
    dp_ds = (eos.gamma - 1.0) * T / tau
    return p, dp_dtau, dp_ds


def eval_interface(ieos: InterfaceEos, s_i: ArrayLike) -> InterfacePotentials:
    """Evaluate the interfacial potentials at entropy per area s_i.

    Emits a NegativeSurfaceTension warning (not an error) when gamma_i < 0;
    dynamics may transiently visit such states.
    """
    T_i = ieos.T_ref_i + ieos.theta * s_i
    if np.any(np.asarray(T_i) <= 0.0):
        raise NonPositiveTemperature(f"interfacial temperature <= 0 at s_i={s_i}")
    e_i = ieos.gamma0 + ieos.T_ref_i * s_i + 0.5 * ieos.theta * s_i**2
    gamma_i = ieos.gamma0 - 0.5 * ieos.theta * s_i**2
    if np.any(np.asarray(gamma_i) < 0.0):
        warnings.warn(
            "surface tension gamma_i < 0", NegativeSurfaceTension, stacklevel=2
        )
    return InterfacePotentials(e_i=e_i, T_i=T_i, gamma_i=gamma_i)


def verify_gibbs_phase(
    eos: PhaseEos, tau: float, s: float, h: float = 1e-6
) -> tuple[float, float]:
    """Central-difference check of de = T ds - p dtau for one phase.

    Steps are relative: h*|tau| in tau and h*(|s| + 1) in s.

    Returns:
        (|p + de/dtau| / (|p| + 1), |T - de/ds| / (|T| + 1))
    """
    if tau <= 0.0:
        raise NonPositiveVolume(f"tau must be > 0, got {tau}")
    if h <= 0.0:
        raise ValueError(f"step h must be > 0, got {h}")
    pot = eval_phase(eos, tau, s)
    h_tau = h * abs(tau)
    h_s = h * (abs(s) + 1.0)
    de_dtau = (eval_phase(eos, tau + h_tau, s).e - eval_phase(eos, tau - h_tau, s).e) / (
        2.0 * h_tau
    )
    de_ds = (eval_phase(eos, tau, s + h_s).e - eval_phase(eos, tau, s - h_s).e) / (
        2.0 * h_s
    )
    res_p = abs(pot.p + de_dtau) / (abs(pot.p) + 1.0)
    res_T = abs(pot.T - de_ds) / (abs(pot.T) + 1.0)
    return float(res_p), float(res_T)


def verify_gibbs_interface(
    ieos: InterfaceEos, s_i: float, h: float = 1e-6
) -> tuple[float, float]:
    """Check the interfacial Gibbs-Duhem relation and the temperature map.

    The first residual differentiates gamma_i through the map
    T_i -> s_i = (T_i - T_ref_i)/theta -> gamma_i and compares against -s_i;
    the second compares a central difference of e_i against T_i.

    Returns:
        (|d(gamma_i)/d(T_i) + s_i| / (|s_i| + 1), |e_i'(s_i) - T_i| / T_i)
    """
    if ieos.theta == 0.0:
        raise DegenerateInterfaceEos(
            "theta = 0: gamma_i is not a function of T_i (constant s_i model)"
        )
    pot = eval_interface(ieos, s_i)
    h_T = h * (abs(pot.T_i) + 1.0)
    s_hi = (pot.T_i + h_T - ieos.T_ref_i) / ieos.theta
    s_lo = (pot.T_i - h_T - ieos.T_ref_i) / ieos.theta
    dgam_dT = (
        (ieos.gamma0 - 0.5 * ieos.theta * s_hi**2)
        - (ieos.gamma0 - 0.5 * ieos.theta * s_lo**2)
    ) / (2.0 * h_T)
    res_gd = abs(dgam_dT + s_i) / (abs(s_i) + 1.0)

    h_s = h * (abs(s_i) + 1.0)
    de_ds = (
        eval_interface(ieos, s_i + h_s).e_i - eval_interface(ieos, s_i - h_s).e_i
    ) / (2.0 * h_s)
    res_T = abs(de_ds - pot.T_i) / pot.T_i
    return float(res_gd), float(res_T)
