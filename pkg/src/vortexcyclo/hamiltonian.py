"""Grid Hamiltonian in the symmetric gauge and its spectral range.

The operator has the form

    H = s2 (d_xx + d_yy) + i s1x d_x + i s1y d_y + s0

with derivatives taken in Fourier space. In the symmetric gauge s1x depends
on y only and s1y on x only, so every x-derivative term can be applied with
one pair of 1-D transforms along x, and likewise for y. That is the same
discrete operator as transforming in 2-D and applying each term separately,
at about half the cost.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft

from .core import CHARGE, HBAR, MASS, Grid2D, PhysicsParams, WaveField
from .errors import GridMismatch, NonFinite


@dataclass(frozen=True, eq=False)
class HamiltonianFields:
    grid: Grid2D
    s2: float
    s1x: np.ndarray = field(repr=False)
    s1y: np.ndarray = field(repr=False)
    s0: np.ndarray = field(repr=False)
    params: PhysicsParams | None = None
    mult_x: np.ndarray = field(init=False, repr=False)
    mult_y: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        shape = self.grid.shape
        for name in ("s1x", "s1y", "s0"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != shape:
                raise GridMismatch(f"{name} has shape {arr.shape}, grid is {shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        # per-axis application needs s1x = s1x(y) and s1y = s1y(x)
        if np.any(self.s1x != self.s1x[:, :1]):
            raise ValueError("s1x must be independent of x")
        if np.any(self.s1y != self.s1y[:1, :]):
            raise ValueError("s1y must be independent of y")
        kx = self.grid.kx[None, :]
        ky = self.grid.ky[:, None]
        # s2*(-k^2) + i*s1*(i k) for each axis
        object.__setattr__(self, "mult_x", -self.s2 * kx**2 - self.s1x[:, :1] * kx)
        object.__setattr__(self, "mult_y", -self.s2 * ky**2 - self.s1y[:1, :] * ky)


@dataclass(frozen=True)
class SpectralBounds:
    e_max: float
    e_min: float

    def __post_init__(self):
        if not self.e_max > self.e_min:
            raise ValueError(f"degenerate spectral range [{self.e_min}, {self.e_max}]")

    @property
    def a(self) -> float:
        return (self.e_max - self.e_min) / 2.0

    @property
    def b(self) -> float:
        return (self.e_max + self.e_min) / 2.0


def coefficient_fields(grid: Grid2D, params: PhysicsParams) -> HamiltonianFields:
    X, Y = grid.mesh
    e, B = CHARGE, params.b_field
    return HamiltonianFields(
        grid=grid,
        s2=-(HBAR**2) / (2.0 * MASS),
        s1x=-HBAR * e * B * Y / (2.0 * MASS),
        s1y=HBAR * e * B * X / (2.0 * MASS),
        s0=e**2 * B**2 * (X**2 + Y**2) / (8.0 * MASS),
        params=params,
    )


def operator_arrays(ham: HamiltonianFields, scale: float = 1.0, shift: float = 0.0):
    """Complex multiplier arrays for ``scale * (H - shift)``.

    Complex dtype throughout: mixing real and complex operands costs an
    extra conversion pass per product.
    """
    return (
        (scale * ham.mult_x).astype(np.complex128),
        (scale * ham.mult_y).astype(np.complex128),
        (scale * (ham.s0 - shift)).astype(np.complex128),
    )


def _apply(values: np.ndarray, ops) -> np.ndarray:
    mult_x, mult_y, diag = ops
    f = sfft.fft(values, axis=1)
    f *= mult_x
    out = sfft.ifft(f, axis=1, overwrite_x=True)
    f = sfft.fft(values, axis=0)
    f *= mult_y
    out += sfft.ifft(f, axis=0, overwrite_x=True)
    out += diag * values
    return out


def apply_h(psi: WaveField, ham: HamiltonianFields) -> WaveField:
    if psi.grid != ham.grid:
        raise GridMismatch("wavefield and Hamiltonian live on different grids")
    out = _apply(psi.values, operator_arrays(ham))
    if not np.all(np.isfinite(out)):
        raise NonFinite("H psi contains NaN or Inf")
    return WaveField(psi.grid, out)


def spectral_bounds(ham: HamiltonianFields, grid: Grid2D) -> SpectralBounds:
    """Energy range representable on the grid.

    The first-order coefficients take both signs, so their largest
    magnitude is used; this keeps the scaled spectrum inside [-1, 1].
    """
    kx, ky = grid.kx_max, grid.ky_max
    drift = float(np.max(np.abs(ham.s1x))) * kx + float(np.max(np.abs(ham.s1y))) * ky
    e_max = -ham.s2 * (kx**2 + ky**2) + drift + float(np.max(ham.s0))
    e_min = -drift + float(np.min(ham.s0))
    return SpectralBounds(e_max=e_max, e_min=e_min)


def apply_h_scaled(psi: WaveField, ham: HamiltonianFields, bounds: SpectralBounds) -> WaveField:
    if psi.grid != ham.grid:
        raise GridMismatch("wavefield and Hamiltonian live on different grids")
    out = _apply(psi.values, operator_arrays(ham, 1.0 / bounds.a, bounds.b))
    if not np.all(np.isfinite(out)):
        raise NonFinite("scaled H psi contains NaN or Inf")
    return WaveField(psi.grid, out)
