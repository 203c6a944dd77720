"""Intensive fluid-interface mixture state, its energy and its potentials.

The thermodynamic state of one material point is

    {rho, s, s1, s2, a_i, y, alpha}

with y and alpha the mass and volume fraction of phase 1 (phase 2 uses the
complements). Specific volumes, the interfacial entropy per area and the
entropy fractions follow from the kinematic constraints

    tau1 = alpha/(y*rho),     tau2 = (1 - alpha)/((1 - y)*rho)
    s_i  = (s - y*s1 - (1 - y)*s2) * rho / a_i
    z1   = y*s1/s,  z2 = (1 - y)*s2/s,  z_i = a_i*s_i/(rho*s)

and the mixture energy per mass is

    e = y*e1(tau1, s1) + (1 - y)*e2(tau2, s2) + (a_i/rho)*e_i(s_i).

Fractions are floored to EPS_FRAC and a_i to A_MIN before any EoS
evaluation: tau_k and s_i are singular where a phase (or the interface)
vanishes, and pure-phase limits are outside the model's domain.

Everything here is a pure function of immutable value types; fields may be
scalars or numpy arrays of a common shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .errors import StateInvalid, ZeroMixtureEntropy
from .thermo import (
    ArrayLike,
    InterfaceEos,
    PhaseEos,
    eval_interface,
    eval_phase,
)

EPS_FRAC = 1e-9   # floor/ceiling distance for y and alpha
A_MIN = 1e-12     # floor for the interfacial area density [1/m]


@dataclass(frozen=True)
class MixtureState:
    """Intensive thermodynamic state of the fluid-interface mixture."""

    rho: ArrayLike    # mixture density [kg/m^3], > 0
    s: ArrayLike      # mixture specific entropy [J/(kg K)]
    s1: ArrayLike     # phase-1 specific entropy [J/(kg K)]
    s2: ArrayLike     # phase-2 specific entropy [J/(kg K)]
    a_i: ArrayLike    # interfacial area density [1/m], > 0
    y: ArrayLike      # phase-1 mass fraction, in [0, 1]
    alpha: ArrayLike  # phase-1 volume fraction, in [0, 1]

    def __post_init__(self):
        for name in ("rho", "s", "s1", "s2", "a_i", "y", "alpha"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise StateInvalid(f"{name} is not finite")
        if np.any(np.asarray(self.rho) <= 0.0):
            raise StateInvalid("rho must be > 0")
        if np.any(np.asarray(self.a_i) <= 0.0):
            raise StateInvalid("a_i must be > 0")
        for name in ("y", "alpha"):
            v = np.asarray(getattr(self, name))
            if np.any(v < 0.0) or np.any(v > 1.0):
                raise StateInvalid(f"{name} must lie in [0, 1]")


def floored(state: MixtureState) -> MixtureState:
    """Return the state with fraction floors applied (EPS_FRAC, A_MIN)."""
    return MixtureState(
        rho=state.rho,
        s=state.s,
        s1=state.s1,
        s2=state.s2,
        a_i=np.maximum(state.a_i, A_MIN),
        y=np.clip(state.y, EPS_FRAC, 1.0 - EPS_FRAC),
        alpha=np.clip(state.alpha, EPS_FRAC, 1.0 - EPS_FRAC),
    )


class PhasicView:
    """Per-phase/per-interface view derived from a mixture state.

    The entropy fractions z1, z2, z_i are only defined for s != 0 and raise
    ZeroMixtureEntropy on access otherwise.
    """

    __slots__ = ("tau1", "tau2", "s_i", "_zfrac")

    def __init__(self, tau1, tau2, s_i, zfrac):
        self.tau1 = tau1
        self.tau2 = tau2
        self.s_i = s_i
        self._zfrac = zfrac

    def _z(self, k):
        if self._zfrac is None:
            raise ZeroMixtureEntropy("entropy fractions undefined at s = 0")
        return self._zfrac[k]

    @property
    def z1(self):
        return self._z(0)

    @property
    def z2(self):
        return self._z(1)

    @property
    def z_i(self):
        return self._z(2)


class MixturePotentials:
    """Mixture potentials; T is entropy-fraction weighted and needs s != 0."""

    __slots__ = ("e", "p", "mu", "omega", "_T")

    def __init__(self, e, p, mu, omega, T):
        self.e = e          # mixture specific energy [J/kg]
        self.p = p          # mixture pressure [Pa]
        self.mu = mu        # mixture chemical potential [J/kg]
        self.omega = omega  # grand potential per volume [Pa]
        self._T = T

    @property
    def T(self):
        if self._T is None:
            raise ZeroMixtureEntropy("mixture temperature undefined at s = 0")
        return self._T


def phasic_view(state: MixtureState) -> PhasicView:
    """Specific volumes, interfacial entropy per area and entropy fractions."""
    st = floored(state)
    tau1 = st.alpha / (st.y * st.rho)
    tau2 = (1.0 - st.alpha) / ((1.0 - st.y) * st.rho)
    s_i = (st.s - st.y * st.s1 - (1.0 - st.y) * st.s2) * st.rho / st.a_i
    if np.any(np.asarray(st.s) == 0.0):
        zfrac = None
    else:
        zfrac = (
            st.y * st.s1 / st.s,
            (1.0 - st.y) * st.s2 / st.s,
            st.a_i * s_i / (st.rho * st.s),
        )
    return PhasicView(tau1=tau1, tau2=tau2, s_i=s_i, zfrac=zfrac)


def _evaluate(state: MixtureState, eos1: PhaseEos, eos2: PhaseEos,
              ieos: InterfaceEos) -> SimpleNamespace:
    """Floored state, phasic view and raw per-phase potentials in one pass."""
    st = floored(state)
    view = phasic_view(st)
    return SimpleNamespace(
        st=st,
        view=view,
        ph1=eval_phase(eos1, view.tau1, st.s1),
        ph2=eval_phase(eos2, view.tau2, st.s2),
        ipot=eval_interface(ieos, view.s_i),
    )


def eval_mixture(state: MixtureState, eos1: PhaseEos, eos2: PhaseEos,
                 ieos: InterfaceEos) -> MixturePotentials:
    """Mixture energy, temperature, pressure, chemical and grand potential.

    T is the entropy-fraction weighted mean z1*T1 + z2*T2 + z_i*T_i and is
    deferred (raises ZeroMixtureEntropy on access) when s = 0; the other
    potentials are always returned.
    """
    ev = _evaluate(state, eos1, eos2, ieos)
    st, view, ph1, ph2, ipot = ev.st, ev.view, ev.ph1, ev.ph2, ev.ipot
    e = st.y * ph1.e + (1.0 - st.y) * ph2.e + st.a_i / st.rho * ipot.e_i
    p = st.alpha * ph1.p + (1.0 - st.alpha) * ph2.p - st.a_i * ipot.gamma_i
    mu = st.y * ph1.mu + (1.0 - st.y) * ph2.mu
    omega = -st.alpha * ph1.p - (1.0 - st.alpha) * ph2.p + st.a_i * ipot.gamma_i
    if view._zfrac is None:
        T = None
    else:
        T = view.z1 * ph1.T + view.z2 * ph2.T + view.z_i * ipot.T_i
    return MixturePotentials(e=e, p=p, mu=mu, omega=omega, T=T)


def grand_potential_terms(state: MixtureState, eos1: PhaseEos, eos2: PhaseEos,
                          ieos: InterfaceEos) -> tuple[ArrayLike, ArrayLike, ArrayLike]:
    """Volumic free energies (omega1, omega2, omega_i), each via its Legendre form.

    omega_k = (e_k - T_k*s_k - mu_k)/tau_k and omega_i = e_i - T_i*s_i; the
    alpha/a_i-weighted sum equals the omega of :func:`eval_mixture`.
    """
    ev = _evaluate(state, eos1, eos2, ieos)
    view, ph1, ph2, ipot = ev.view, ev.ph1, ev.ph2, ev.ipot
    omega1 = (ph1.e - ph1.T * ev.st.s1 - ph1.mu) / view.tau1
    omega2 = (ph2.e - ph2.T * ev.st.s2 - ph2.mu) / view.tau2
    omega_i = ipot.e_i - ipot.T_i * view.s_i
    return omega1, omega2, omega_i


def d_energy_d_alpha_ai(state: MixtureState, eos1: PhaseEos, eos2: PhaseEos,
                        ieos: InterfaceEos) -> tuple[ArrayLike, ArrayLike]:
    """Analytic partials of the volumic energy rho*e at fixed {rho, s, s1, s2, y}.

    d(rho*e)/d(alpha) = -(p1 - p2) and d(rho*e)/d(a_i) = +gamma_i; the a_i
    sign is the energy-consistent one that the `derived` source convention
    uses (it is opposite to the sign the dynamic model carries by default).
    """
    ev = _evaluate(state, eos1, eos2, ieos)
    return -(ev.ph1.p - ev.ph2.p), ev.ipot.gamma_i
