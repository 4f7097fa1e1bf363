"""Initial wavefunctions: Landau envelopes carrying a vortex phase and a
transverse-momentum plane wave, and weighted superpositions of them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import HBAR, Grid2D, PhysicsParams, WaveField
from .errors import EmptySuperposition, TruncatedState, UnderResolved
from .specfun import laguerre, log_factorial

NORM_TOLERANCE = 1e-3


@dataclass(frozen=True)
class LandauSpec:
    """One vortex component: radial index ``n``, charge ``ell``, momentum
    ``p_c`` along +x and a complex superposition ``weight``."""

    n: int
    ell: int
    p_c: float = 0.0
    weight: complex = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"radial index n must be a non-negative integer, got {self.n!r}")
        if int(self.ell) != self.ell:
            raise ValueError(f"ell must be an integer, got {self.ell!r}")
        w = complex(self.weight)
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise ValueError("weight must be finite")
        if not math.isfinite(self.p_c):
            raise ValueError("p_c must be finite")


def landau_radial(n: int, ell_abs: int, rho, params: PhysicsParams):
    """Radial Landau function u_{n,|l|}(rho), normalized so that
    int u^2 2 pi rho drho = 1."""
    rb = params.rho_b
    rho = np.asarray(rho, dtype=float)
    log_norm = 0.5 * (math.log(2.0) + log_factorial(n) - math.log(math.pi) - log_factorial(n + ell_abs))
    s = rho / rb
    u = (math.exp(log_norm) / rb) * (math.sqrt(2.0) * s) ** ell_abs * np.exp(-s * s) * laguerre(n, ell_abs, 2.0 * s * s)
    return u if u.ndim else float(u)


def check_resolution(spec: LandauSpec, grid: Grid2D, params: PhysicsParams) -> None:
    limit = params.rho_b / 8.0
    if grid.dx > limit or grid.dy > limit:
        raise UnderResolved(f"grid spacing ({grid.dx:g}, {grid.dy:g}) exceeds rho_B/8 = {limit:g}")
    if spec.p_c != 0.0:
        limit = math.pi * HBAR / (4.0 * abs(spec.p_c))
        if grid.dx > limit:
            raise UnderResolved(f"dx = {grid.dx:g} exceeds a quarter wavelength of p_c ({limit:g})")


def build_component(spec: LandauSpec, grid: Grid2D, params: PhysicsParams, force: bool = False) -> WaveField:
    """Sample ``u(rho) exp(i(ell phi + p_c x))`` and renormalize it.

    ``force`` skips the resolution precondition (not the norm check).
    """
    if not force:
        check_resolution(spec, grid, params)
    envelope = landau_radial(spec.n, abs(spec.ell), grid.rho, params)
    X, _ = grid.mesh
    phase = spec.ell * grid.phi + (spec.p_c / HBAR) * X
    values = envelope * np.exp(1j * phase)
    if spec.ell != 0:
        # phi is undefined at the origin; the envelope vanishes there anyway
        values[grid.rho == 0.0] = 0.0
    psi = WaveField(grid, values)
    norm = psi.norm_sq()
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise TruncatedState(f"sampled norm {norm:.6g} deviates from 1 by more than {NORM_TOLERANCE:g}")
    return psi.normalize()


def superpose(components: Sequence[LandauSpec], grid: Grid2D, params: PhysicsParams, force: bool = False) -> WaveField:
    """Weighted sum of unit-norm components, renormalized."""
    if not components:
        raise EmptySuperposition("need at least one component")
    if all(complex(c.weight) == 0 for c in components):
        raise EmptySuperposition("all component weights are zero")
    total = np.zeros(grid.shape, dtype=np.complex128)
    for c in components:
        total += complex(c.weight) * build_component(c, grid, params, force=force).values
    psi = WaveField(grid, total)
    if psi.norm_sq() == 0.0:
        raise EmptySuperposition("components cancel exactly")
    return psi.normalize()
