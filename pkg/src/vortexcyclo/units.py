"""SI <-> natural-unit conversion for the cyclotron quantities.

Natural units take hbar = m = |e| = 1 and measure the field in units of the
given |B|, so that B_natural = +-1. The unit of length is then
sqrt(hbar / (|e| |B|)) = rho_B / 2, momentum is hbar / length, and time is
m / (|e| |B|) = 1 / |omega_c|.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import NonPositiveInput

HBAR_SI = 1.054571817e-34
H_SI = 6.62607015e-34
E_SI = 1.602176634e-19
M_E_SI = 9.1093837015e-31


@dataclass(frozen=True)
class NaturalScales:
    length: float
    momentum: float
    time: float
    energy: float


def natural_scales(b_tesla: float) -> NaturalScales:
    if not b_tesla > 0:
        raise NonPositiveInput(f"field magnitude must be positive, got {b_tesla!r}")
    length = math.sqrt(HBAR_SI / (E_SI * b_tesla))
    return NaturalScales(
        length=length,
        momentum=HBAR_SI / length,
        time=M_E_SI / (E_SI * b_tesla),
        energy=HBAR_SI * E_SI * b_tesla / M_E_SI,
    )


@dataclass(frozen=True)
class SiReport:
    b_tesla: float
    p_c_si: float
    grating_m: float | None
    sigma_m: float
    l_cyclo_hbar: float
    kinetic_energy_mev: float
    rho_b_m: float
    p_c_natural: float
    sigma_natural: float
    rho_b_natural: float
    p_c_over_hbar_per_rho_b: float

    def as_dict(self) -> dict:
        return asdict(self)


def si_convert(b_tesla: float, grating_m: float | None = None, p_c_si: float | None = None) -> SiReport:
    """Cyclotron radius, angular momentum and energy for a transverse momentum
    given directly or as the first diffraction order p_c = h / d of a grating."""
    if (grating_m is None) == (p_c_si is None):
        raise ValueError("give exactly one of grating_m or p_c_si")
    if not b_tesla > 0:
        raise NonPositiveInput(f"--b must be positive, got {b_tesla!r}")
    if grating_m is not None:
        if not grating_m > 0:
            raise NonPositiveInput(f"--grating must be positive, got {grating_m!r}")
        p_c_si = H_SI / grating_m
    elif not p_c_si > 0:
        raise NonPositiveInput(f"--pc must be positive, got {p_c_si!r}")

    sigma = p_c_si / (E_SI * b_tesla)
    rho_b = math.sqrt(4.0 * HBAR_SI / (E_SI * b_tesla))
    scales = natural_scales(b_tesla)
    return SiReport(
        b_tesla=b_tesla,
        p_c_si=p_c_si,
        grating_m=grating_m,
        sigma_m=sigma,
        l_cyclo_hbar=E_SI * b_tesla * sigma**2 / HBAR_SI,
        kinetic_energy_mev=p_c_si**2 / (2.0 * M_E_SI) / E_SI * 1e3,
        rho_b_m=rho_b,
        p_c_natural=p_c_si / scales.momentum,
        sigma_natural=sigma / scales.length,
        rho_b_natural=rho_b / scales.length,
        p_c_over_hbar_per_rho_b=p_c_si * rho_b / HBAR_SI,
    )


def si_from_natural(b_tesla: float, p_c_natural: float) -> tuple[float, float]:
    """Inverse mapping: (p_c in kg m/s, grating period in m)."""
    p_c_si = p_c_natural * natural_scales(b_tesla).momentum
    return p_c_si, H_SI / p_c_si
