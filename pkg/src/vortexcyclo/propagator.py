"""Chebyshev propagation of the time-dependent Schrödinger equation.

One step applies exp(-i H dt / hbar) as

    exp(-i b dt / hbar) * sum_q alpha_q T_q(H~) psi,   H~ = (H - b) / a,

with alpha_0 = J_0(a dt / hbar), alpha_q = 2 (-i)^q J_q(a dt / hbar), and
T_q(H~) psi built by the three-term Chebyshev recurrence.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import HBAR, WaveField
from .errors import BoundaryLeak, GridMismatch, NonFinite, NormDrift, OrderCapExceeded
from .hamiltonian import HamiltonianFields, SpectralBounds, _apply, operator_arrays, spectral_bounds
from .observables import ObservableRecord, ledger
from .specfun import bessel_j_sequence

log = logging.getLogger(__name__)

DELTA = 40
ORDER_GROWTH = 8
TAIL_TOLERANCE = 1e-15
NAN_CHECK_EVERY = 16

LEAK_TOLERANCE = 1e-6
NORM_TOLERANCE = 1e-9
RING_WIDTH = 2


@dataclass(frozen=True)
class ChebyshevPlan:
    dt: float
    bounds: SpectralBounds
    m_order: int
    alphas: np.ndarray = field(repr=False)
    phase: complex = 1.0

    @property
    def argument(self) -> float:
        return self.bounds.a * self.dt / HBAR


def _alphas(jq: np.ndarray) -> np.ndarray:
    q = np.arange(len(jq))
    alphas = 2.0 * ((-1j) ** (q % 4)) * jq
    alphas[0] = jq[0]
    return alphas


def plan_step(bounds: SpectralBounds, dt: float) -> ChebyshevPlan:
    """Choose the truncation order and coefficients for one step of ``dt``.

    Starts at M = ceil(e a dt / 2 hbar) + 40 and grows in steps of 8 until
    the last two coefficients are below 1e-15.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    arg = bounds.a * dt / HBAR
    m0 = math.ceil(math.e * arg / 2.0) + DELTA
    cap = 10 * m0
    m = m0
    while True:
        jq = bessel_j_sequence(m, arg).values
        alphas = _alphas(jq)
        if abs(alphas[m]) < TAIL_TOLERANCE and abs(alphas[m - 1]) < TAIL_TOLERANCE:
            break
        m += ORDER_GROWTH
        if m > cap:
            raise OrderCapExceeded(f"truncation order exceeded cap {cap} for a*dt/hbar = {arg:g}")
    alphas.flags.writeable = False
    return ChebyshevPlan(dt=float(dt), bounds=bounds, m_order=m, alphas=alphas, phase=cmath.exp(-1j * bounds.b * dt / HBAR))


def step(psi: WaveField, plan: ChebyshevPlan, ham: HamiltonianFields) -> WaveField:
    """Advance ``psi`` by ``plan.dt``. ``psi`` itself is left untouched."""
    if psi.grid != ham.grid:
        raise GridMismatch("wavefield and Hamiltonian live on different grids")
    a, b = plan.bounds.a, plan.bounds.b
    alphas = plan.alphas
    scaled = operator_arrays(ham, 1.0 / a, b)
    doubled = operator_arrays(ham, 2.0 / a, b)
    # three field buffers plus the accumulator
    t_prev = psi.values
    t_cur = _apply(t_prev, scaled)
    acc = alphas[0] * t_prev
    acc += alphas[1] * t_cur
    for q in range(2, plan.m_order + 1):
        t_next = _apply(t_cur, doubled)
        t_next -= t_prev
        acc += alphas[q] * t_next
        t_prev, t_cur = t_cur, t_next
        if q % NAN_CHECK_EVERY == 0 and not np.isfinite(acc).all():
            raise NonFinite(f"NaN/Inf in Chebyshev recurrence at order {q}")
    acc *= plan.phase
    if not np.isfinite(acc).all():
        raise NonFinite("NaN/Inf in propagated state")
    return WaveField(psi.grid, acc)


def boundary_leak(psi: WaveField, width: int = RING_WIDTH) -> float:
    """max |psi| on the outer ``width``-cell ring, relative to max |psi|."""
    amp = np.abs(psi.values)
    peak = float(amp.max())
    if peak == 0.0:
        return 0.0
    ring = max(
        amp[:width, :].max(),
        amp[-width:, :].max(),
        amp[:, :width].max(),
        amp[:, -width:].max(),
    )
    return float(ring) / peak


@dataclass
class EvolutionReport:
    records: list[ObservableRecord] = field(default_factory=list)
    boundary_leak_max: float = 0.0
    norm_drift_max: float = 0.0
    plan: ChebyshevPlan | None = None
    final: WaveField | None = None


def evolve(
    psi0: WaveField,
    ham: HamiltonianFields,
    dt: float,
    n_steps: int,
    observe_every: int = 1,
    callback: Callable[[int, float, WaveField], None] | None = None,
    plan: ChebyshevPlan | None = None,
) -> EvolutionReport:
    """Propagate ``n_steps`` steps, recording the observable ledger at t = 0,
    every ``observe_every`` steps, and at the end.

    ``callback(step_index, t, psi)`` is invoked at t = 0 and after every
    step, e.g. for writing snapshots. Raises :class:`BoundaryLeak` or :class:`NormDrift`
    (carrying the partial report) when a health check fails.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if observe_every < 1:
        raise ValueError("observe_every must be >= 1")
    if ham.params is None:
        raise ValueError("evolve needs a Hamiltonian built with physics parameters")
    if plan is None:
        plan = plan_step(spectral_bounds(ham, ham.grid), dt)
    log.info("Chebyshev order M = %d for a*dt/hbar = %.4g", plan.m_order, plan.argument)
    report = EvolutionReport(plan=plan)

    def observe(k, psi):
        t = k * dt
        rec = ledger(psi, ham.params, t)
        rec.boundary_leak = boundary_leak(psi)
        report.records.append(rec)
        report.boundary_leak_max = max(report.boundary_leak_max, rec.boundary_leak)
        report.norm_drift_max = max(report.norm_drift_max, abs(rec.norm - 1.0))
        report.final = psi
        if rec.boundary_leak > LEAK_TOLERANCE:
            raise BoundaryLeak(f"t = {t:.6g}: boundary amplitude {rec.boundary_leak:.3g} of peak exceeds {LEAK_TOLERANCE:g}", report)
        if abs(rec.norm - 1.0) > NORM_TOLERANCE:
            raise NormDrift(f"t = {t:.6g}: norm {rec.norm:.15g} drifted by more than {NORM_TOLERANCE:g}", report)

    psi = psi0
    if callback is not None:
        callback(0, 0.0, psi)
    observe(0, psi)
    for k in range(1, n_steps + 1):
        psi = step(psi, plan, ham)
        if callback is not None:
            callback(k, k * dt, psi)
        if k % observe_every == 0 or k == n_steps:
            observe(k, psi)
    report.final = psi
    return report
