"""Presets and fidelity-vs-duration experiments.

Two presets ship with the package:

* mini  - dimensionless double well with separation D = 16 and ~8 quanta
          of depth per well.  Reproduces every qualitative phenomenon of
          the ion-trap setting (level ordering, avoided-crossing
          bottleneck, FAQUAD-vs-linear separation, superposition
          protocol) in CI-scale runtimes.
* beryllium - the 9.012 u ion trap (alpha0 = -4.7 pN/m, beta0 = 0.052 N/m^3,
          bias and switch constants to match), stored in SI and converted
          at load.  Scans here run for minutes, not seconds; the test
          suite gates them behind TRAPMORPH_FULL_SCALE=1.

A scan designs one schedule shape per method (FAQUAD/LA profiles are
t_f-independent) and propagates the target eigenstate - optionally also
the ground state, for the superposition protocol - across a list of
durations, recording fidelities against the final-trap eigenstates.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .eigen import eigensolve
from .errors import TrapMorphError, UsageError
from .grid import SpatialGrid
from .potential import DeformationPath, path_for_target
from .propagate import Wavefunction, fidelity, propagate, superposition_fidelity
from .schedule import Schedule, invert_profile, linear_schedule
from .cache import cached_profile
from .units import UnitSystem, beryllium_units

METHODS = ("faquad", "la", "linear")


@dataclass(frozen=True)
class Preset:
    """A ready-to-run configuration: path, grid, stepping and scan window."""

    name: str
    units: Optional[UnitSystem]  # None = dimensionless
    path: DeformationPath
    grid: SpatialGrid
    dt: float
    k: int
    tf_window: tuple  # (lo, hi) in internal units

    @property
    def n_target(self) -> int:
        return self.path.n_target

    def with_target(self, n: int) -> "Preset":
        if n < 1:
            raise UsageError("target level must be >= 1")
        path = path_for_target(self.path.A0, self.path.B0, self.path.kappa,
                               self.path.eps, n)
        return replace(self, path=path, k=n + 3)

    @property
    def time_to_SI(self) -> float:
        """Seconds per internal time unit (1.0 for dimensionless presets)."""
        return self.units.time_unit if self.units is not None else 1.0


def mini_preset(n_target: int = 2) -> Preset:
    """Dimensionless desk-scale preset.

    B0 = 0.5/256 makes the well separation exactly D = 16 and the relative
    well depth A0^2/(4 B0) = 8 quanta; the n = 2 bias is then exactly
    C = 1.5/16 = 0.09375.  The logistic switch constant follows the
    kappa = 100/(A0 - Af) convention of the reference trap.
    """
    A0, Af = -0.25, 0.5
    B0 = 0.5 / 256.0
    path = path_for_target(A0, B0, kappa=100.0 / (A0 - Af), eps=0.05,
                           n_target=n_target)
    return Preset(
        name="mini",
        units=None,
        path=path,
        grid=SpatialGrid(-20.0, 20.0, 512),
        dt=0.005,
        k=n_target + 3,
        tf_window=(10.0, 2000.0),
    )


def beryllium_preset(n_target: int = 4) -> Preset:
    """SI ion-trap preset, converted to internal units at load.

    alpha0 = -4.7 pN/m and M = 9.012 u give omega_ref/2pi ~ 5.64 MHz and a
    well separation D0 ~ 13.45 um (~953 internal lengths); the switch
    center eps = 1 pN/m and steepness kappa = -7.092 m/pN convert to
    ~0.0532 and ~-133.3.  Durations are internal; one unit is ~28.2 ns.
    """
    units = beryllium_units()
    A0 = units.alpha_to_dim(units.alpha0_SI)  # -0.25 up to rounding
    B0 = units.beta_to_dim(0.052)
    eps = units.alpha_to_dim(1.0e-12)
    # kappa multiplies an alpha-difference, so it converts inversely
    kappa = -7.092e12 / units.alpha_to_dim(1.0)
    path = path_for_target(A0, B0, kappa=kappa, eps=eps, n_target=n_target)
    window = (20e-6 / units.time_unit, 200e-6 / units.time_unit)
    return Preset(
        name="beryllium",
        units=units,
        path=path,
        grid=SpatialGrid(-1100.0, 1100.0, 16384),
        dt=0.2,
        k=n_target + 3,
        tf_window=window,
    )


PRESETS: dict = {"mini": mini_preset, "beryllium": beryllium_preset}


def get_preset(name: str, n_target: Optional[int] = None) -> Preset:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise UsageError("unknown preset %r (have: %s)"
                         % (name, ", ".join(sorted(PRESETS)))) from None
    return factory() if n_target is None else factory(n_target)


def default_tf_grid(preset: Preset, npoints: int = 16) -> np.ndarray:
    """Log-spaced scan durations over the preset's window."""
    lo, hi = preset.tf_window
    return np.geomspace(lo, hi, npoints)


@dataclass(frozen=True)
class ScanRow:
    t_f: float
    F_n: float = math.nan
    F_0: float = math.nan
    F_avg: float = math.nan
    c: float = math.nan
    error: Optional[str] = None


@dataclass(frozen=True)
class ScanResult:
    preset_name: str
    method: str
    n_target: int
    rows: tuple
    t_unit: str  # 's' for SI presets, 'dimensionless' otherwise
    t_scale: float  # multiply internal t_f by this when emitting

    def best_row(self) -> ScanRow:
        ok = [r for r in self.rows if r.error is None]
        if not ok:
            raise TrapMorphError("scan produced no successful rows")
        return max(ok, key=lambda r: r.F_n)

    def threshold_tf(self, level: float = 0.9) -> float:
        """Smallest scanned t_f with F_n >= level (nan if never reached)."""
        for r in self.rows:
            if r.error is None and r.F_n >= level:
                return r.t_f
        return math.nan


def _endpoint_states(preset: Preset, include_ground: bool):
    eig0 = eigensolve(preset.path.initial, preset.grid, preset.k, refine=False)
    eigf = eigensolve(preset.path.final, preset.grid, preset.k, refine=False)
    n = preset.n_target
    pairs = {"n": (Wavefunction.from_eigenstate(eig0, n),
                   Wavefunction.from_eigenstate(eigf, n))}
    if include_ground:
        pairs["0"] = (Wavefunction.from_eigenstate(eig0, 0),
                      Wavefunction.from_eigenstate(eigf, 0))
    return pairs


def _schedule_factory(preset: Preset, method: str,
                      cache_dir: Optional[str] = None) -> Callable[[float], Schedule]:
    if method == "linear":
        return lambda tf: linear_schedule(preset.path, tf)
    if method in ("faquad", "la"):
        profile = cached_profile(preset.path, preset.grid, preset.n_target,
                                 method=method, directory=cache_dir)
        return lambda tf: invert_profile(profile, preset.path, tf)
    raise UsageError("unknown method %r (have: %s)" % (method, ", ".join(METHODS)))


def run_scan(preset: Preset, method: str, t_f_list: Sequence[float],
             include_ground: bool = False, jobs: int = 1,
             cache_dir: Optional[str] = None,
             progress: Optional[Callable[[ScanRow], None]] = None) -> ScanResult:
    """Fidelity of the target (and optionally ground) state vs duration.

    Rows are computed independently (thread pool when jobs > 1) and
    reported in ascending t_f order regardless of completion order.
    Per-row failures are recorded on the row; the scan continues.
    """
    tfs = sorted(float(t) for t in t_f_list)
    if not tfs or tfs[0] <= 0.0:
        raise UsageError("t_f list must be non-empty and positive")
    make_schedule = _schedule_factory(preset, method, cache_dir)
    pairs = _endpoint_states(preset, include_ground)

    def one(tf: float) -> ScanRow:
        try:
            sched = make_schedule(tf)
            psi0, target = pairs["n"]
            rep = propagate(psi0, sched, preset.dt, target=target)
            Fn = fidelity(rep.final_state, target)
            row = ScanRow(t_f=tf, F_n=Fn,
                          c=math.nan if sched.c is None else sched.c)
            if include_ground:
                g0, gf = pairs["0"]
                rep0 = propagate(g0, sched, preset.dt, target=gf)
                F0 = fidelity(rep0.final_state, gf)
                row = replace(row, F_0=F0,
                              F_avg=superposition_fidelity(F0, Fn))
            return row
        except TrapMorphError as exc:
            return ScanRow(t_f=tf, error=str(exc))

    rows = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            iterator = pool.map(one, tfs)
            for row in iterator:  # ascending t_f, streamed as available
                if progress is not None:
                    progress(row)
                rows.append(row)
    else:
        for tf in tfs:
            row = one(tf)
            if progress is not None:
                progress(row)
            rows.append(row)
    return ScanResult(
        preset_name=preset.name, method=method, n_target=preset.n_target,
        rows=tuple(rows),
        t_unit="s" if preset.units is not None else "dimensionless",
        t_scale=preset.time_to_SI,
    )


def run_superposition(preset: Preset, method: str, t_f_list: Sequence[float],
                      **kw) -> ScanResult:
    """Scan propagating both |n> and |0> under the SAME schedule, recording
    F_n, F_0 and the superposition fidelity (F_0 + F_n)/2."""
    return run_scan(preset, method, t_f_list, include_ground=True, **kw)


def run_demultiplexing(preset: Preset, method: str, t_f: float,
                       cache_dir: Optional[str] = None):
    """(F_forward, F_backward): morph double well -> harmonic with |n>,
    then harmonic -> double well under the reversed schedule."""
    sched = _schedule_factory(preset, method, cache_dir)(float(t_f))
    eig0 = eigensolve(preset.path.initial, preset.grid, preset.k, refine=False)
    eigf = eigensolve(preset.path.final, preset.grid, preset.k, refine=False)
    n = preset.n_target
    fwd0 = Wavefunction.from_eigenstate(eig0, n)
    fwdT = Wavefunction.from_eigenstate(eigf, n)
    rep = propagate(fwd0, sched, preset.dt, target=fwdT)
    F_fwd = fidelity(rep.final_state, fwdT)
    rsched = sched.reversed()
    rep_b = propagate(fwdT, rsched, preset.dt, target=fwd0)
    F_bwd = fidelity(rep_b.final_state, fwd0)
    return F_fwd, F_bwd


CSV_HEADER = "t_f,F_n,F_0,F_avg,c"


def _fmt(v: float) -> str:
    return "" if (isinstance(v, float) and math.isnan(v)) else "%.12g" % v


def csv_preamble(preset_name: str, method: str, n_target: int,
                 t_unit: str) -> str:
    return ("# trapmorph scan: preset=%s method=%s n=%d t_f_unit=%s\n"
            % (preset_name, method, n_target, t_unit)) + CSV_HEADER + "\n"


def csv_row_line(row: ScanRow, t_scale: float) -> str:
    """One CSV line (or '#' comment for a failed row), newline-terminated."""
    if row.error is not None:
        return "# t_f=%.12g failed: %s\n" % (row.t_f * t_scale, row.error)
    return ",".join([
        _fmt(row.t_f * t_scale), _fmt(row.F_n), _fmt(row.F_0),
        _fmt(row.F_avg), _fmt(row.c),
    ]) + "\n"


def emit_csv(result: ScanResult, fp) -> None:
    """Write a scan as CSV: fixed column order, 12 significant digits,
    SI presets emit t_f in seconds (unit recorded in the comment line).
    Failed rows become '#' comment lines so the data columns stay clean."""
    fp.write(csv_preamble(result.preset_name, result.method, result.n_target,
                          result.t_unit))
    for r in result.rows:
        fp.write(csv_row_line(r, result.t_scale))


def read_csv(fp):
    """Parse emit_csv output back into (header_meta, list of row tuples)."""
    meta = None
    rows = []
    for line in fp:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if meta is None:
                meta = line[1:].strip()
            continue
        if line == CSV_HEADER:
            continue
        vals = [float(v) if v else math.nan for v in line.split(",")]
        rows.append(tuple(vals))
    return meta, rows


def emit_plot_script(csv_path: str, fp, title: str = "fidelity vs t_f") -> None:
    """gnuplot command file rendering F_n (and F_0 when present)."""
    fp.write("set datafile separator ','\n")
    fp.write("set logscale x\n")
    fp.write("set xlabel 't_f'\nset ylabel 'fidelity'\n")
    fp.write("set title '%s'\n" % title)
    fp.write("set yrange [0:1.05]\n")
    fp.write("plot '%s' using 1:2 with linespoints title 'F_n', \\\n"
             "     '%s' using 1:3 with linespoints title 'F_0'\n"
             % (csv_path, csv_path))
