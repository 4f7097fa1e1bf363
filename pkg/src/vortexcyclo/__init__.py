"""Spectral simulation of electron vortex wavepackets in a uniform magnetic field."""

from .core import Grid2D, PhysicsParams, WaveField, inner_product, integrate, make_grid, make_params
from .hamiltonian import apply_h, apply_h_scaled, coefficient_fields, spectral_bounds
from .observables import (
    canonical_lz,
    centroid,
    classical_orbit,
    current_density,
    density,
    kinetic_lz,
    landau_expectations,
    ledger,
)
from .propagator import evolve, plan_step, step
from .states import LandauSpec, build_component, landau_radial, superpose

__version__ = "0.1.0"
