"""Command-line entry point: ``truncosc {fig1,fig2,fig3,surfaces,verify,custom}``."""

import argparse
import configparser
import logging
import sys

from truncosc import experiments, verify
from truncosc.errors import DomainError
from truncosc.experiments import ConfigError, SweepConfig

log = logging.getLogger("truncosc")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_CONFIG = 0, 1, 2

# keys accepted in the [sweep] section of a config file, mapped to flag dests
CONFIG_KEYS = {
    "s": "s", "z": "z", "z_grid": "z_grid", "r1_grid": "r1_grid", "r2_grid": "r2_grid",
    "out": "out", "jobs": "jobs", "z_weak": "z_weak", "z_strong": "z_strong",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="truncosc", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def sweep_parser(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--s", help="comma-separated list of 2s values")
        p.add_argument("--z", help="excitation, real or 're,im'")
        p.add_argument("--r1-grid", dest="r1_grid", help="R1 = r1^2 grid as a:b:step")
        p.add_argument("--r2-grid", dest="r2_grid", help="R2 = r2^2 grid as a:b:step")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--config", help="INI file with a [sweep] section")
        p.add_argument("--jobs", type=int, help="worker processes")
        return p

    sweep_parser("fig1", "single splitter, S versus R for several s")
    p2 = sweep_parser("fig2", "single 50:50 splitter, S versus s")
    p2.add_argument("--z-weak", dest="z_weak", help="comma-separated weak excitations")
    p2.add_argument("--z-strong", dest="z_strong", help="comma-separated strong excitations")
    p3 = sweep_parser("fig3", "single 50:50 splitter, S versus z")
    p3.add_argument("--z-grid", dest="z_grid", help="z grid as a:b:step")
    sweep_parser("surfaces", "two splitters, S1/S2/S3/total/concurrence over (R1, R2)")
    sweep_parser("custom", "user-defined sweep; two splitters when --r2-grid is given")
    sub.add_parser("verify", help="run every invariant and oracle check")
    return parser


def _merge_config(args) -> dict:
    """Config-file values overlaid by explicit flags."""
    values = {}
    if getattr(args, "config", None):
        cp = configparser.ConfigParser()
        try:
            with open(args.config) as fh:
                cp.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        section = cp["sweep"] if cp.has_section("sweep") else cp[cp.default_section]
        for key, value in section.items():
            if key not in CONFIG_KEYS:
                raise ConfigError(f"unknown config key {key!r} in {args.config}")
            values[CONFIG_KEYS[key]] = value
    for dest in CONFIG_KEYS.values():
        flag = getattr(args, dest, None)
        if flag is not None:
            values[dest] = flag
    return values


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _jobs(values) -> int:
    try:
        jobs = int(values.get("jobs", 1))
    except (TypeError, ValueError):
        raise ConfigError(f"jobs must be an integer, got {values.get('jobs')!r}") from None
    if jobs < 1:
        raise ConfigError("jobs must be >= 1")
    return jobs


def make_config(command: str, values: dict) -> SweepConfig:
    defaults = {
        "fig1": dict(scenario="fig1", r1_grid=experiments.grid(0, 1, 0.01)),
        "fig2": dict(scenario="fig2a", s_range=list(range(1, 31)), z_range=[0.5, 1.0]),
        "fig3": dict(scenario="fig3", z_range=experiments.grid(0, 10, 0.1)),
        "surfaces": dict(scenario="fig7", s_range=[2], r1_grid=experiments.grid(0, 1, 0.02),
                         r2_grid=experiments.grid(0, 1, 0.02)),
        "custom": dict(scenario="custom"),
    }[command]
    cfg = SweepConfig(**defaults)
    if "s" in values:
        cfg.s_range = experiments.parse_two_s_list(values["s"])
    if "z" in values:
        cfg.z_range = [experiments.parse_z(values["z"])]
    if "z_grid" in values:
        cfg.z_range = experiments.parse_grid(values["z_grid"])
    if "r1_grid" in values:
        cfg.r1_grid = experiments.parse_grid(values["r1_grid"])
    if "r2_grid" in values:
        cfg.r2_grid = experiments.parse_grid(values["r2_grid"])
    cfg.output_path = values.get("out")
    cfg.jobs = _jobs(values)
    cfg.validate()
    return cfg


def run_sweep(command: str, values: dict):
    cfg = make_config(command, values)
    if command == "fig1":
        return experiments.run_fig1(cfg.s_range, cfg.z_range[0], cfg.r1_grid, cfg.jobs), cfg
    if command == "fig2":
        weak = _floats(values["z_weak"]) if "z_weak" in values else [z.real for z in cfg.z_range]
        strong = _floats(values["z_strong"]) if "z_strong" in values else [10.0]
        return experiments.run_fig2(weak, strong, cfg.s_range, cfg.jobs), cfg
    if command == "fig3":
        return experiments.run_fig3(cfg.s_range, cfg.z_range, cfg.jobs), cfg
    if command == "surfaces":
        rows = []
        for ts in cfg.s_range:
            for z in cfg.z_range:
                rows += experiments.run_fig4to7(ts, z, cfg.r1_grid, cfg.r2_grid, cfg.jobs)
        return rows, cfg
    return experiments.run_custom(cfg), cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "verify":
        checks = verify.run_verify()
        print(verify.format_report(checks))
        return verify.exit_status(checks)
    try:
        rows, cfg = run_sweep(args.command, _merge_config(args))
    except (ConfigError, DomainError) as exc:
        print(f"truncosc: bad configuration: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    if cfg.output_path:
        path = experiments.write_csv(rows, cfg.output_path)
        log.info("wrote %d rows to %s", len(rows), path)
    else:
        sys.stdout.write(experiments.rows_to_csv(rows))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
