"""Command line entry point: ``spdc-oam <command> --config FILE``.

Every command writes deterministic CSV files: a ``#`` line carrying the
config digest, a column header, then rows with 17 significant digits.
Exit codes: 0 success, 2 configuration error, 3 numeric degeneracy.
"""

import argparse
import csv
import logging
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .config import load_config, parse_config
from .exceptions import ConfigError, DegeneracyError, DomainError
from .grid import PolarGrid
from .joint import reexpand_pair, verify_reexpansion
from .measurement import Branch, MaskConfig, charge_scan, gaussian_envelope
from .phasematching import TransverseVec, pm_azimuthal_profile
from .spectrum import extrinsic_oam_spectrum, parseval_relative_error, resolve_workers

log = logging.getLogger("spdc_oam")

EXIT_OK, EXIT_CONFIG, EXIT_DEGENERATE = 0, 2, 3


def _num(x):
    return format(float(x), ".17g")


def _tag(x):
    return format(float(x), "g")


def write_csv(path, command, cfg, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# spdc-oam {command} config_sha256={cfg.digest()}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_num(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


def cmd_pm_profile(cfg, out):
    """One CSV of ``(phi, W / l_c)`` per requested ``(p-, l_c)``."""
    written = []
    for l_c in cfg.profile_lengths:
        crystal = cfg.crystal.replace(l_c=l_c)
        for p in cfg.profile.p_minus:
            phi, values = pm_azimuthal_profile(crystal, p, cfg.profile.n_phi)
            order = np.argsort(phi, kind="stable")
            rows = [(float(phi[j]), float(values[j])) for j in order]
            name = f"pm_profile_lc{_tag(l_c)}_p{_tag(p)}.csv"
            written.append(write_csv(out / name, "pm-profile", cfg, ["phi_minus", "W_over_lc"], rows))
    return written


def cmd_oam_spectrum(cfg, out, n_jobs=None):
    """OAM probabilities, angular coefficients, and a per-length summary."""
    grid = cfg.grid.build()
    workers = resolve_workers(n_jobs)
    written, summary = [], []
    for l_c in cfg.spectrum_lengths:
        crystal = cfg.crystal.replace(l_c=l_c)
        angular, spectrum = extrinsic_oam_spectrum(
            crystal, cfg.spectral, grid, cfg.spectrum.m_max, cfg.spectrum.radial_measure, n_jobs=workers
        )
        rows = [(m, float(spectrum[m])) for m in spectrum.orders]
        written.append(write_csv(out / f"oam_spectrum_lc{_tag(l_c)}.csv", "oam-spectrum", cfg,
                                 ["m", "probability"], rows))
        coeff_rows = [
            (float(p), int(m), float(angular[m][k].real), float(angular[m][k].imag))
            for k, p in enumerate(angular.radial_nodes)
            for m in angular.orders
        ]
        written.append(write_csv(out / f"angular_spectrum_lc{_tag(l_c)}.csv", "oam-spectrum", cfg,
                                 ["p_minus", "m", "re", "im"], coeff_rows))
        summary.append((float(l_c), float(spectrum[0]), spectrum.off_axis_weight(),
                        parseval_relative_error(angular, grid, cfg.spectrum.radial_measure)))
        log.info("l_c=%g um: P(0)=%.6f", l_c, spectrum[0])
    written.append(write_csv(out / "oam_summary.csv", "oam-spectrum", cfg,
                             ["l_c", "p_zero", "p_nonzero", "parseval_rel_error"], summary))
    return written


def measurement_rows(cfg):
    m = cfg.measurement
    p0 = TransverseVec.from_polar(m.p0, m.phi0)
    grid = PolarGrid.gauss_legendre(m.n_radial, 6.0 * m.collection_waist, m.n_phi)
    envelope = gaussian_envelope(m.envelope_width)
    charges = list(range(m.charge_min, m.charge_max + 1))
    signal = MaskConfig(p0, m.signal_charge, m.collection_waist)
    opposed = MaskConfig(-p0, 0, m.collection_waist)
    same = MaskConfig(p0, 0, m.collection_waist)

    rows = []
    intrinsic = np.abs(charge_scan(Branch.INTRINSIC, m.total_charge, signal, opposed, charges, envelope, grid))
    conjugate = np.abs(charge_scan(Branch.INTRINSIC, -m.total_charge, signal.with_charge(-m.signal_charge),
                                   opposed, [-q for q in charges], envelope, grid))
    peak = intrinsic.max()
    for q, a in zip(charges, intrinsic):
        rows.append(("intrinsic", "opposed", m.total_charge, m.signal_charge, q, float(a), float(a / peak)))
    for q, a in zip(charges, conjugate):
        rows.append(("intrinsic", "opposed_conjugate", -m.total_charge, -m.signal_charge, -q,
                     float(a), float(a / peak)))

    ext_opposed = np.abs(charge_scan(Branch.EXTRINSIC, m.extrinsic_charge, signal, opposed, charges, envelope, grid))
    ext_same = np.abs(charge_scan(Branch.EXTRINSIC, m.extrinsic_charge, signal, same, charges, envelope, grid))
    reference = ext_same.max()
    for geometry, values in (("same_side", ext_same), ("opposed", ext_opposed)):
        for q, a in zip(charges, values):
            rows.append(("extrinsic", geometry, m.extrinsic_charge, m.signal_charge, q,
                         float(a), float(a / reference)))
    return rows


def cmd_measurement(cfg, out):
    header = ["branch", "geometry", "total_charge", "signal_charge", "idler_charge", "abs_amplitude", "relative"]
    return [write_csv(out / "measurement.csv", "measurement", cfg, header, measurement_rows(cfg))]


def reexpansion_rows(cfg):
    r = cfg.reexpansion
    rng = np.random.default_rng(r.seed)
    grid = PolarGrid.gauss_legendre(r.n_radial, r.p_max, r.n_phi)
    rows = []
    for l_s in range(r.max_charge + 1):
        for l_i in range(r.max_charge + 1):
            a_s, a_i = rng.uniform(0.3, 2.0, size=2)
            c_s, c_i = rng.uniform(0.5, 1.5, size=2)
            terms = reexpand_pair(l_s, l_i)
            rule = all(t.l_plus + t.l_minus == l_s + l_i for t in terms)
            err = verify_reexpansion(
                l_s, l_i,
                lambda p, a=a_s, c=c_s: c * np.exp(-a * p**2),
                lambda p, a=a_i, c=c_i: c * np.exp(-a * p**2),
                grid, grid,
            )
            rows.append((l_s, l_i, len(terms), int(rule), float(err)))
    return rows


def cmd_reexpansion_check(cfg, out):
    header = ["l_s", "l_i", "n_terms", "sum_rule_holds", "max_abs_error"]
    return [write_csv(out / "reexpansion_check.csv", "reexpansion-check", cfg, header, reexpansion_rows(cfg))]


COMMANDS = {
    "pm-profile": cmd_pm_profile,
    "oam-spectrum": cmd_oam_spectrum,
    "measurement": cmd_measurement,
    "reexpansion-check": cmd_reexpansion_check,
}


def default_config_text():
    return resources.files("spdc_oam").joinpath("data/kwiat95.cfg").read_text(encoding="utf-8")


def build_parser():
    parser = argparse.ArgumentParser(prog="spdc-oam", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", type=Path, help="key-value config file (default: bundled kwiat95)")
    parser.add_argument("--out", type=Path, help="output directory (overrides output_dir)")
    parser.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                        help="override one config key; repeatable")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.config is None:
            cfg = parse_config(default_config_text(), args.override)
        else:
            cfg = load_config(args.config, args.override)
        out = args.out if args.out is not None else Path(cfg.output_dir)
        for path in COMMANDS[args.command](cfg, out):
            print(path)
    except (ConfigError, DomainError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegeneracyError as exc:
        print(f"numeric degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
