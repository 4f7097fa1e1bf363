"""Run a parsed scenario and write its outputs."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from .config import Scenario
from .core import make_grid
from .errors import HealthAbort
from .formats import write_ledger_csv, write_pgm, write_snapshot
from .hamiltonian import coefficient_fields
from .observables import classical_orbit, density, ehrenfest_orbit
from .propagator import EvolutionReport, evolve
from .states import superpose

log = logging.getLogger(__name__)


@dataclass
class RunResult:
    scenario: Scenario
    report: EvolutionReport
    out_dir: Path
    ledger_path: Path
    snapshots: list[Path] = field(default_factory=list)
    images: list[Path] = field(default_factory=list)
    error: HealthAbort | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def analytic_rows(scenario: Scenario, records) -> list[dict]:
    """Ledger rows extended with the closed-form centroid oracle.

    A single component follows the textbook orbit launched from the origin.
    A superposition uses the conserved orbit centre and initial centroid
    measured on the t = 0 state.
    """
    params = scenario.params
    rows = []
    if len(scenario.components) == 1:
        orbit = classical_orbit(scenario.components[0].p_c, params)

        def where(t):
            return orbit.position(t)
    else:
        rec0 = records[0]

        def where(t):
            return ehrenfest_orbit(rec0, params, t)

    for rec in records:
        xa, ya = (float(v) for v in where(rec.t))
        row = rec.as_dict()
        row.update(x_analytic=xa, y_analytic=ya, rho0_analytic=math.hypot(xa, ya))
        rows.append(row)
    return rows


def run_scenario(scenario: Scenario, out_dir=None, force_grid: bool = False, callback=None) -> RunResult:
    """Evolve ``scenario`` and write ``ledger.csv`` plus optional snapshots.

    Health aborts do not raise: the partial ledger is written and the abort
    is returned in :attr:`RunResult.error`. ``callback(k, t, psi)`` is passed
    through to :func:`evolve`.
    """
    params = scenario.params
    grid = make_grid(scenario.grid.n, scenario.grid.n, scenario.grid.length, scenario.grid.length)
    psi0 = superpose(scenario.components, grid, params, force=force_grid)
    ham = coefficient_fields(grid, params)

    out = Path(out_dir if out_dir is not None else scenario.output.dir)
    out.mkdir(parents=True, exist_ok=True)
    tcfg, ocfg = scenario.time, scenario.output
    snapshots: list[Path] = []
    images: list[Path] = []

    def on_step(k, t, psi):
        if callback is not None:
            callback(k, t, psi)
        if not (ocfg.write_snapshots or ocfg.write_images):
            return
        due = k == 0 or k == tcfg.steps or (tcfg.snapshot_every and k % tcfg.snapshot_every == 0)
        if not due:
            return
        if ocfg.write_snapshots:
            snapshots.append(write_snapshot(out / f"snapshot_{k:06d}.wvf", psi, t, params.b_field))
        if ocfg.write_images:
            images.append(write_pgm(out / f"density_{k:06d}.pgm", density(psi)))

    error = None
    try:
        report = evolve(psi0, ham, tcfg.dt, tcfg.steps, tcfg.observe_every, callback=on_step)
    except HealthAbort as exc:
        error = exc
        report = exc.report
        log.error("%s: %s", type(exc).__name__, exc)

    ledger_path = write_ledger_csv(out / "ledger.csv", analytic_rows(scenario, report.records))
    return RunResult(scenario, report, out, ledger_path, snapshots, images, error)
