"""Command-line front end.

Exit codes: 0 ok, 2 invalid input, 3 numerical-health abort, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import load_config
from .core import make_params
from .errors import HealthAbort, NonFinite, OrderCapExceeded, VortexError
from .formats import read_snapshot, write_arrows, write_pgm
from .observables import classical_orbit, current_density, density
from .runner import run_scenario
from .units import si_convert

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

log = logging.getLogger("vortexcyclo")


def _say(args, text):
    if not args.quiet:
        print(text)


def cmd_simulate(args) -> int:
    scenario = load_config(args.config)
    out_dir = args.out_dir if args.out_dir is not None else scenario.output.dir
    _say(args, f"running {scenario.name}: {scenario.grid.n}^2 grid, {scenario.time.steps} steps of dt = {scenario.time.dt:.6g}")
    result = run_scenario(scenario, out_dir=out_dir, force_grid=args.force_grid)
    if not result.ok:
        print(f"abort: {type(result.error).__name__}: {result.error}", file=sys.stderr)
        return EXIT_NUMERICAL
    rep = result.report
    _say(args, f"wrote {result.ledger_path} ({len(rep.records)} records, M = {rep.plan.m_order}, "
               f"max leak {rep.boundary_leak_max:.2e}, max norm drift {rep.norm_drift_max:.2e})")
    return EXIT_OK


def cmd_si_convert(args) -> int:
    rep = si_convert(args.b, grating_m=args.grating, p_c_si=args.pc)
    lines = [
        f"p_c                 = {rep.p_c_si:.6e} kg m/s",
        f"cyclotron radius    = {rep.sigma_m * 1e9:.4f} nm",
        f"cyclotron L_z       = {rep.l_cyclo_hbar:.4f} hbar",
        f"kinetic energy      = {rep.kinetic_energy_mev:.4f} meV",
        f"rho_B               = {rep.rho_b_m * 1e9:.4f} nm",
        f"p_c (natural units) = {rep.p_c_natural:.12g}   (B = 1, rho_B = 2)",
        f"p_c / (hbar/rho_B)  = {rep.p_c_over_hbar_per_rho_b:.12g}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def cmd_render(args) -> int:
    snap = read_snapshot(args.snapshot)
    out = Path(args.out) if args.out else Path(args.snapshot).with_suffix(".pgm")
    write_pgm(out, density(snap.psi))
    _say(args, f"wrote {out}")
    if args.arrows:
        j = current_density(snap.psi, make_params(snap.b_field))
        write_arrows(args.arrows, snap.psi.grid, j, stride=args.stride)
        _say(args, f"wrote {args.arrows}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    params = make_params(args.b)
    orbit = classical_orbit(args.pc, params)
    x, y = orbit.position(args.t)
    print(f"sigma           = {orbit.sigma:.17g}")
    print(f"y0              = {orbit.y0:.17g}")
    print(f"omega_c         = {orbit.omega_c:.17g}")
    print(f"x(t)            = {float(x):.17g}")
    print(f"y(t)            = {float(y):.17g}")
    print(f"rho0(t)         = {float(orbit.rho0_analytic(args.t)):.17g}")
    print(f"L_cyclo lab(t)  = {float(orbit.l_cyclo_lab(args.t)):.17g}")
    print(f"L_cyclo centred = {orbit.l_cyclo_centred:.17g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress progress output")

    parser = argparse.ArgumentParser(prog="vortexcyclo", description="Chebyshev simulator for electron vortices in a uniform magnetic field.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="run a scenario file")
    p.add_argument("config")
    p.add_argument("--out-dir", default=None, help="override output.dir from the scenario")
    p.add_argument("--force-grid", action="store_true", help="skip the grid resolution preconditions")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("si-convert", parents=[common], help="cyclotron quantities in SI units")
    p.add_argument("--b", type=float, required=True, help="field in tesla")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--grating", type=float, help="grating period in metres (p_c = h/d)")
    g.add_argument("--pc", type=float, help="transverse momentum in kg m/s")
    p.set_defaults(func=cmd_si_convert)

    p = sub.add_parser("render", parents=[common], help="density image from a WVF1 snapshot")
    p.add_argument("snapshot")
    p.add_argument("--out", default=None, help="PGM path (default: snapshot name with .pgm)")
    p.add_argument("--arrows", default=None, help="also write decimated current samples here")
    p.add_argument("--stride", type=int, default=8)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", parents=[common], help="closed-form cyclotron orbit values")
    p.add_argument("--pc", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (HealthAbort, NonFinite, OrderCapExceeded) as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (VortexError, ValueError) as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
