"""Natural-unit parameters, the periodic grid and quadrature.

Units are hbar = m = |e| = 1 throughout. The electron charge is e = -1, so
the cyclotron frequency omega_c = -e*B/m equals the signed field strength.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BadGrid, GridMismatch, NonFinite, ZeroField

HBAR = 1.0
MASS = 1.0
CHARGE = -1.0

MIN_POINTS = 16


@dataclass(frozen=True)
class PhysicsParams:
    """Signed field strength plus the scales derived from it."""

    b_field: float

    def __post_init__(self):
        if not math.isfinite(self.b_field) or self.b_field == 0.0:
            raise ZeroField(f"b_field must be finite and nonzero, got {self.b_field!r}")

    @property
    def charge(self) -> float:
        return CHARGE

    @property
    def rho_b(self) -> float:
        """Magnetic length sqrt(4 hbar / |e B|), the Landau Gaussian width."""
        return math.sqrt(4.0 * HBAR / abs(CHARGE * self.b_field))

    @property
    def omega_c(self) -> float:
        return -CHARGE * self.b_field / MASS

    @property
    def omega_l(self) -> float:
        return self.omega_c / 2.0

    @property
    def period(self) -> float:
        """One cyclotron period 2*pi/|omega_c|."""
        return 2.0 * math.pi / abs(self.omega_c)


def make_params(b_field: float) -> PhysicsParams:
    return PhysicsParams(float(b_field))


def _wavenumbers(n: int, length: float) -> np.ndarray:
    # integer DFT indices 0..n/2-1, -n/2..-1; the Nyquist index lands on the negative side
    idx = np.fft.fftfreq(n, d=1.0 / n)
    return 2.0 * math.pi * idx / length


@dataclass(frozen=True)
class Grid2D:
    """Uniform periodic grid centred on the origin.

    Arrays are laid out ``[iy, ix]`` (y varies slowest). Constructing a
    ``Grid2D`` directly only requires even point counts; :func:`make_grid`
    additionally enforces the minimum size used for simulations.
    """

    nx: int
    ny: int
    lx: float
    ly: float

    def __post_init__(self):
        for name in ("nx", "ny"):
            n = getattr(self, name)
            if int(n) != n or n < 2 or n % 2:
                raise BadGrid(f"{name} must be a positive even integer, got {n!r}")
        for name in ("lx", "ly"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise BadGrid(f"{name} must be positive, got {v!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dy(self) -> float:
        return self.ly / self.ny

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @cached_property
    def x(self) -> np.ndarray:
        return -self.lx / 2 + self.dx * np.arange(self.nx)

    @cached_property
    def y(self) -> np.ndarray:
        return -self.ly / 2 + self.dy * np.arange(self.ny)

    @cached_property
    def kx(self) -> np.ndarray:
        return _wavenumbers(self.nx, self.lx)

    @cached_property
    def ky(self) -> np.ndarray:
        return _wavenumbers(self.ny, self.ly)

    @property
    def kx_max(self) -> float:
        return math.pi * self.nx / self.lx

    @property
    def ky_max(self) -> float:
        return math.pi * self.ny / self.ly

    @cached_property
    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Broadcast coordinate arrays ``(X, Y)`` of shape ``(ny, nx)``."""
        X, Y = np.meshgrid(self.x, self.y, indexing="xy")
        X.flags.writeable = False
        Y.flags.writeable = False
        return X, Y

    @cached_property
    def rho(self) -> np.ndarray:
        X, Y = self.mesh
        r = np.hypot(X, Y)
        r.flags.writeable = False
        return r

    @cached_property
    def phi(self) -> np.ndarray:
        X, Y = self.mesh
        p = np.arctan2(Y, X)
        p.flags.writeable = False
        return p


def make_grid(nx: int, ny: int, lx: float, ly: float) -> Grid2D:
    if int(nx) != nx or int(ny) != ny or nx < MIN_POINTS or ny < MIN_POINTS:
        raise BadGrid(f"point counts must be even and >= {MIN_POINTS}, got {nx}x{ny}")
    return Grid2D(int(nx), int(ny), float(lx), float(ly))


@dataclass
class WaveField:
    """Complex amplitudes on a grid.

    ``values`` is owned by this object; a single writer may update it in
    place, everything else should treat it as read-only.
    """

    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != self.grid.shape:
            raise GridMismatch(f"values shape {v.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise NonFinite("wavefield contains NaN or Inf")
        self.values = v

    def copy(self) -> WaveField:
        return WaveField(self.grid, self.values.copy())

    def norm_sq(self) -> float:
        return integrate(np.abs(self.values) ** 2, self.grid)

    def normalize(self) -> WaveField:
        """Return a unit-norm copy."""
        n = math.sqrt(self.norm_sq())
        if n == 0.0:
            raise ValueError("cannot normalize a zero wavefield")
        return WaveField(self.grid, self.values / n)


def integrate(f: np.ndarray, grid: Grid2D) -> float:
    """Periodic trapezoid rule, which on a uniform grid is a plain sum."""
    s = float(np.sum(f)) * grid.cell_area
    if not math.isfinite(s):
        raise NonFinite("integrand contains NaN or Inf")
    return s


def inner_product(a: WaveField, b: WaveField) -> complex:
    if a.grid != b.grid:
        raise GridMismatch("inner product of fields on different grids")
    s = complex(np.vdot(a.values, b.values)) * a.grid.cell_area
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise NonFinite("inner product is not finite")
    return s
