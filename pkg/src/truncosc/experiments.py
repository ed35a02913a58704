"""Parameter sweeps behind the entropy figures, written out as CSV.

All reflectivity axes are R = r^2.  Truncations are given as 2s.
"""

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from truncosc.algebra import Truncation
from truncosc.coherent import CoherentParams
from truncosc.entanglement import entanglement_report, linear_entropy, partial_trace
from truncosc.errors import DomainError, NumericalError
from truncosc.multimode import (
    NetworkSpec,
    apply_network,
    coherent_input,
    single_bs_coherent_output,
    two_bs_coherent_output,
)

SCENARIOS = ("fig1", "fig2a", "fig2b", "fig3", "fig4", "fig5", "fig6", "fig7", "custom")
FIG1_TWO_S = (2, 4, 6, 30)
ORACLE_TOL = 1e-8


class ConfigError(ValueError):
    pass


def grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, rounded to 12 decimals so endpoints are exact."""
    if step <= 0:
        raise ConfigError(f"grid step must be positive, got {step}")
    count = int(round((stop - start) / step))
    if count < 0:
        raise ConfigError(f"empty grid {start}:{stop}:{step}")
    return [round(start + i * step, 12) for i in range(count + 1)]


def parse_grid(text: str) -> list[float]:
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ConfigError(f"grid must look like a:b:step, got {text!r}") from None
    return grid(a, b, step)


def parse_z(text: str) -> complex:
    """``"5"`` or ``"re,im"``."""
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad z value {text!r}") from None
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise ConfigError(f"bad z value {text!r}")


def parse_two_s_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ConfigError(f"2s list must be comma-separated integers, got {text!r}") from None
    if not values or min(values) < 1:
        raise ConfigError(f"2s values must be positive integers, got {text!r}")
    return values


def angle(reflectivity: float) -> float:
    """Splitter angle theta with sin^2(theta/2) = R."""
    if not 0.0 <= reflectivity <= 1.0:
        raise DomainError(f"reflectivity R must lie in [0, 1], got {reflectivity}")
    return 2.0 * math.asin(math.sqrt(reflectivity))


@dataclass
class SweepConfig:
    scenario: str = "custom"
    s_range: list = field(default_factory=lambda: list(FIG1_TWO_S))
    z_range: list = field(default_factory=lambda: [5.0])
    r1_grid: list = field(default_factory=lambda: grid(0, 1, 0.01))
    r2_grid: list | None = None
    output_path: str | None = None
    jobs: int = 1

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if not self.s_range or min(self.s_range) < 1:
            raise ConfigError("s range must be a non-empty list of positive 2s values")
        if not self.z_range:
            raise ConfigError("z range must be non-empty")
        for name in ("r1_grid", "r2_grid"):
            values = getattr(self, name)
            if values is None:
                continue
            if not values or min(values) < 0 or max(values) > 1:
                raise ConfigError(f"{name} must be non-empty with values in [0, 1]")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")


@dataclass(frozen=True)
class SweepRow:
    scenario: str
    two_s: int
    z: complex
    R1: float | None = None
    R2: float | None = None
    S: float | None = None
    S1: float | None = None
    S2: float | None = None
    S3: float | None = None
    concurrence: float | None = None

    def sort_key(self):
        return (
            self.scenario, self.two_s, self.z.real, self.z.imag,
            -1.0 if self.R1 is None else self.R1,
            -1.0 if self.R2 is None else self.R2,
        )


CSV_FIELDS = [f.name for f in fields(SweepRow)]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, complex):
        if value.imag == 0:
            return f"{value.real:.11e}"
        return f"{value.real:.11e}{value.imag:+.11e}j"
    return f"{float(value):.11e}"


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in sorted(rows, key=SweepRow.sort_key):
        writer.writerow([_fmt(getattr(row, name)) for name in CSV_FIELDS])
    return buf.getvalue()


def write_csv(rows, path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(rows_to_csv(rows))
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc}") from exc
    return path


def single_bs_entropy(two_s: int, z: complex, reflectivity: float) -> float:
    """Mode-1 linear entropy after one splitter, via the exact output and a partial trace."""
    p = CoherentParams(Truncation(two_s), z)
    out = single_bs_coherent_output(p, angle(reflectivity))
    return linear_entropy(partial_trace(out, 0))


def surface_point(two_s: int, z: complex, r1: float, r2: float):
    p = CoherentParams(Truncation(two_s), z)
    return entanglement_report(two_bs_coherent_output(p, angle(r1), angle(r2)), p.t)


def _single_row(args):
    scenario, two_s, z, reflectivity = args
    return SweepRow(scenario, two_s, z, R1=reflectivity, S=single_bs_entropy(two_s, z, reflectivity))


def _surface_row(args):
    scenario, two_s, z, r1, r2 = args
    rep = surface_point(two_s, z, r1, r2)
    return SweepRow(scenario, two_s, z, R1=r1, R2=r2, S=rep.total,
                    S1=rep.s1, S2=rep.s2, S3=rep.s3, concurrence=rep.concurrence)


def _map(fn, jobs_list, jobs: int):
    if jobs <= 1 or len(jobs_list) < 2:
        return [fn(j) for j in jobs_list]
    chunk = max(1, len(jobs_list) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, jobs_list, chunksize=chunk))


def _sorted(rows):
    return sorted(rows, key=SweepRow.sort_key)


def run_fig1(s_list=FIG1_TWO_S, z=5.0, r_grid=None, jobs=1, scenario="fig1"):
    r_grid = grid(0, 1, 0.01) if r_grid is None else r_grid
    work = [(scenario, ts, complex(z), r) for ts in s_list for r in r_grid]
    return _sorted(_map(_single_row, work, jobs))


def run_fig2(z_weak=(0.5, 1.0), z_strong=(10.0,), s_range=range(1, 31), jobs=1):
    work = [("fig2a", ts, complex(z), 0.5) for z in z_weak for ts in s_range]
    work += [("fig2b", ts, complex(z), 0.5) for z in z_strong for ts in s_range]
    return _sorted(_map(_single_row, work, jobs))


def run_fig3(s_list=FIG1_TWO_S, z_grid=None, jobs=1):
    z_grid = grid(0, 10, 0.1) if z_grid is None else z_grid
    work = [("fig3", ts, complex(z), 0.5) for ts in s_list for z in z_grid]
    return _sorted(_map(_single_row, work, jobs))


def oracle_subgrid(values, points: int = 5) -> list[float]:
    idx = np.unique(np.linspace(0, len(values) - 1, min(points, len(values))).round().astype(int))
    return [values[i] for i in idx]


def check_surface_oracle(two_s, z, r1_grid, r2_grid, points: int = 5) -> float:
    """Recompute a points x points subgrid by direct network application.

    Returns the largest entropy deviation; raises if it exceeds 1e-8.
    """
    p = CoherentParams(Truncation(two_s), z)
    worst = 0.0
    for r1 in oracle_subgrid(r1_grid, points):
        for r2 in oracle_subgrid(r2_grid, points):
            direct = apply_network(coherent_input(p, 3), NetworkSpec.chain([angle(r1), angle(r2)]))
            a = entanglement_report(direct, p.t)
            b = surface_point(two_s, z, r1, r2)
            worst = max(worst, abs(a.s1 - b.s1), abs(a.s2 - b.s2), abs(a.s3 - b.s3))
    if worst > ORACLE_TOL:
        raise NumericalError("closed-form surface disagrees with network application",
                             two_s=two_s, z=z, deviation=worst)
    return worst


def run_fig4to7(two_s=2, z=5.0, r1_grid=None, r2_grid=None, jobs=1, scenario="fig7", oracle=True):
    r1_grid = grid(0, 1, 0.02) if r1_grid is None else r1_grid
    r2_grid = grid(0, 1, 0.02) if r2_grid is None else r2_grid
    if oracle:
        check_surface_oracle(two_s, complex(z), r1_grid, r2_grid)
    work = [(scenario, two_s, complex(z), a, b) for a in r1_grid for b in r2_grid]
    return _sorted(_map(_surface_row, work, jobs))


def run_custom(cfg: SweepConfig):
    if cfg.r2_grid is None:
        rows = []
        for z in cfg.z_range:
            rows += run_fig1(cfg.s_range, z, cfg.r1_grid, cfg.jobs, scenario="custom")
        return _sorted(rows)
    rows = []
    for ts in cfg.s_range:
        for z in cfg.z_range:
            rows += run_fig4to7(ts, z, cfg.r1_grid, cfg.r2_grid, cfg.jobs, scenario="custom")
    return _sorted(rows)


def curve(rows, key="S", **match) -> tuple[np.ndarray, np.ndarray]:
    """Pick (R1, key) pairs from rows whose attributes equal ``match``."""
    picked = [r for r in rows if all(getattr(r, k) == v for k, v in match.items())]
    return np.array([r.R1 for r in picked]), np.array([getattr(r, key) for r in picked])
