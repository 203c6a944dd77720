"""Fluid-interface two-phase flow: thermodynamics, equilibrium and 1D dynamics.

Subpackages and modules:

* thermo      -- phasic and interfacial equations of state
* mixture     -- intensive mixture state, energy and potentials
* equilibrium -- Newton equilibrium solving under geometric closures
* model       -- ten-variable dynamic model, sources and eigenstructure
* solver1d    -- first-order finite-volume solver with Strang splitting
* service     -- FastAPI service plus the pydantic config/report schemas
* cli         -- thin command-line client over the service handlers
"""

__version__ = "0.1.0"
