"""Design of the time course A(t) for the trap deformation.

Three ramp designs over the same deformation path:

* FAQUAD - hold the multilevel adiabaticity parameter

      c = hbar Adot(t) * sum_m |<n|dH/dA|m>| / (E_n - E_m)^2

  constant along the whole ramp (sum over the four nearest neighbors
  m in {n-2, n-1, n+1, n+2}).  Writing g(A) for the sum, constancy means
  t(A) = (1/c) integral_{A0}^{A} g dA' with c fixed by t(Af) = t_f, so the
  ramp crawls through avoided crossings (large g) and sprints where the
  spectrum is stiff.

* Local Adiabatic - same construction with every matrix element replaced
  by 1: g_LA(A) = sum_m (E_n - E_m)^{-2}.  Gap-only heuristic.

* linear - A(t) = A0 + (Af - A0) t/t_f, the do-nothing baseline.

All designs produce the same Schedule type: monotone (t, A) samples plus a
monotone-cubic interpolant.  FAQUAD/LA profiles are t_f-independent; a
profile is computed once and inverted for each requested duration.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import FlatDirectionError, ScheduleError
from .eigen import couplings, eigensolve
from .grid import SpatialGrid
from .potential import DeformationPath

PROFILE_NODES_DEFAULT = 1024
PROFILE_NODES_MIN = 128
QUADRATURE_REFINE_TOL = 0.01  # refine lambda grid until discrete c is flat to 1%
ENDPOINT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class AdiabaticityProfile:
    """g(A) sampled on an ascending A-grid, plus its running integral."""

    lambda_grid: np.ndarray
    g: np.ndarray
    method: str  # 'faquad' | 'la'
    cumulative: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        lam, g = self.lambda_grid, self.g
        if len(lam) != len(g) or len(lam) < 2:
            raise ScheduleError("profile arrays malformed")
        if np.any(np.diff(lam) <= 0.0):
            raise ScheduleError("lambda grid must be strictly ascending")
        if np.any(~np.isfinite(g)):
            raise FlatDirectionError("non-finite adiabaticity integrand")
        if np.any(g <= 0.0):
            raise FlatDirectionError(
                "adiabaticity integrand vanishes at A=%g; design ill-posed"
                % lam[int(np.argmin(g))]
            )
        cum = np.concatenate(
            ([0.0], np.cumsum(0.5 * (g[1:] + g[:-1]) * np.diff(lam)))
        )
        object.__setattr__(self, "cumulative", cum)

    @property
    def integral(self) -> float:
        return float(self.cumulative[-1])

    @property
    def peak_lambda(self) -> float:
        return float(self.lambda_grid[int(np.argmax(self.g))])


def _g_values(path: DeformationPath, grid: SpatialGrid, n: int,
              lam: np.ndarray, k: int) -> np.ndarray:
    g = np.empty(len(lam))
    for i, a in enumerate(lam):
        eig = eigensolve(path.params_at(a), grid, k, refine=False)
        nc = couplings(eig, path, n)
        g[i] = float(np.sum(nc.couplings / nc.gaps**2))
    return g


def _g_values_la(path: DeformationPath, grid: SpatialGrid, n: int,
                 lam: np.ndarray, k: int) -> np.ndarray:
    g = np.empty(len(lam))
    for i, a in enumerate(lam):
        eig = eigensolve(path.params_at(a), grid, k, refine=False)
        nc = couplings(eig, path, n)
        g[i] = float(np.sum(1.0 / nc.gaps**2))
    return g


def build_profile(path: DeformationPath, grid: SpatialGrid, n: int,
                  method: str = "faquad",
                  nodes: int = PROFILE_NODES_DEFAULT,
                  max_nodes: int = 64 * PROFILE_NODES_DEFAULT) -> AdiabaticityProfile:
    """Sample the adiabaticity integrand over [A0, Af].

    The A-grid is uniform with `nodes` points and midpoint-doubled until
    the per-interval discrete adiabaticity (slope times midpoint g) agrees
    with the trapezoid mean to 1% everywhere, i.e. until a schedule built
    from the samples realizes a genuinely flat c.  An under-resolved
    avoided-crossing peak therefore cannot silently skew the design.
    """
    if nodes < PROFILE_NODES_MIN:
        raise ScheduleError("profile needs >= %d nodes" % PROFILE_NODES_MIN)
    if method not in ("faquad", "la"):
        raise ScheduleError("unknown design method %r" % method)
    k = n + 3
    evaluate = _g_values if method == "faquad" else _g_values_la

    lam = np.linspace(path.A0, path.Af, nodes)
    g = evaluate(path, grid, n, lam, k)
    while True:
        mid = 0.5 * (lam[:-1] + lam[1:])
        g_mid = evaluate(path, grid, n, mid, k)
        # On an inverted schedule dt_j = dA_j * (g_j + g_{j+1})/2 / c, so
        # c_j/c = g(midpoint) / pair mean; flat to tolerance <=> converged.
        dev = float(np.max(np.abs(g_mid / (0.5 * (g[1:] + g[:-1])) - 1.0)))
        # merge so every computed node is reused at the next level
        lam2 = np.empty(2 * len(lam) - 1)
        lam2[::2] = lam
        lam2[1::2] = mid
        g2 = np.empty_like(lam2)
        g2[::2] = g
        g2[1::2] = g_mid
        lam, g = lam2, g2
        if dev <= QUADRATURE_REFINE_TOL:
            break
        if 2 * len(lam) - 1 > max_nodes:
            raise ScheduleError(
                "adiabaticity profile still varies by %.2g%% per interval at "
                "%d nodes; peak too sharp for the node cap" % (100 * dev, len(lam))
            )
    return AdiabaticityProfile(lam, g, method)


@dataclass(frozen=True, eq=False)
class Schedule:
    """Monotone sampled map t -> A over [0, t_f] together with its path.

    `c` is the realized adiabaticity constant (None for linear ramps).
    Evaluation between samples uses monotone piecewise-cubic interpolation,
    which cannot overshoot [A0, Af].
    """

    path: DeformationPath
    t_f: float
    times: np.ndarray
    A_values: np.ndarray
    method: str
    c: Optional[float] = None
    _forward: Optional["Schedule"] = field(default=None, repr=False, compare=False)
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        t, A = self.times, self.A_values
        if len(t) != len(A) or len(t) < 2:
            raise ScheduleError("sample arrays malformed")
        if self.t_f <= 0.0:
            raise ScheduleError("t_f must be positive")
        if np.any(np.diff(t) <= 0.0):
            raise ScheduleError("sample times must be strictly increasing")
        dA = np.diff(A)
        if not (np.all(dA > 0.0) or np.all(dA < 0.0)):
            raise ScheduleError("A samples must be strictly monotone")
        if abs(t[0]) > ENDPOINT_TOL or abs(t[-1] - self.t_f) > ENDPOINT_TOL:
            raise ScheduleError("sample times must span [0, t_f] exactly")
        object.__setattr__(self, "_interp", PchipInterpolator(t, A))

    def A_of_t(self, t):
        """Interpolated control value(s); clamped to the sampled range."""
        tt = np.clip(np.asarray(t, dtype=float), 0.0, self.t_f)
        return self._interp(tt)

    def reversed(self) -> "Schedule":
        """Time-mirrored schedule (demultiplexing direction).

        Reversing twice returns the original object, so the involution
        holds sample-for-sample despite floating-point subtraction.
        """
        if self._forward is not None:
            return self._forward
        return Schedule(
            path=self.path,
            t_f=self.t_f,
            times=(self.t_f - self.times)[::-1].copy(),
            A_values=self.A_values[::-1].copy(),
            method="reversed(%s)" % self.method,
            c=self.c,
            _forward=self,
        )

    # --- serialization -------------------------------------------------

    def to_text(self) -> str:
        buf = io.StringIO()
        p = self.path
        buf.write("# trapmorph schedule v1\n")
        buf.write("# method = %s\n" % self.method)
        buf.write("# t_f = %.17g\n" % self.t_f)
        buf.write("# c = %s\n" % ("none" if self.c is None else "%.17g" % self.c))
        buf.write(
            "# path: A0 = %.17g, Af = %.17g, B0 = %.17g, kappa = %.17g, "
            "eps = %.17g, C = %.17g, n_target = %d\n"
            % (p.A0, p.Af, p.B0, p.kappa, p.eps, p.C, p.n_target)
        )
        buf.write("# columns: t A\n")
        for t, a in zip(self.times, self.A_values):
            buf.write("%.17g %.17g\n" % (t, a))
        return buf.getvalue()

    @classmethod
    def from_text(cls, text: str) -> "Schedule":
        meta = {}
        ts, As = [], []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("path:"):
                    for part in body[5:].split(","):
                        key, _, val = part.partition("=")
                        meta[key.strip()] = val.strip()
                elif "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                continue
            t, a = line.split()
            ts.append(float(t))
            As.append(float(a))
        try:
            path = DeformationPath(
                A0=float(meta["A0"]), Af=float(meta["Af"]), B0=float(meta["B0"]),
                kappa=float(meta["kappa"]), eps=float(meta["eps"]),
                C=float(meta["C"]), n_target=int(meta["n_target"]),
            )
            c = None if meta.get("c", "none") == "none" else float(meta["c"])
            return cls(path=path, t_f=float(meta["t_f"]), times=np.array(ts),
                       A_values=np.array(As), method=meta.get("method", "?"), c=c)
        except (KeyError, ValueError) as exc:
            raise ScheduleError("unparseable schedule text: %s" % exc) from exc


def invert_profile(profile: AdiabaticityProfile, path: DeformationPath,
                   t_f: float) -> Schedule:
    """Constant-c schedule from a profile: t(A) = (1/c) int_A0^A g dA'.

    c = (int g dA) / t_f is returned on the schedule; doubling t_f halves
    c and stretches the same shape (self-similarity is exact here by
    construction, the samples are shared up to the time scaling).
    """
    if t_f <= 0.0:
        raise ScheduleError("t_f must be positive")
    c = profile.integral / t_f
    times = profile.cumulative / c
    times[-1] = t_f  # guard the endpoint against quadrature round-off
    return Schedule(path=path, t_f=t_f, times=times,
                    A_values=profile.lambda_grid.copy(),
                    method=profile.method, c=c)


def linear_schedule(path: DeformationPath, t_f: float,
                    n_samples: int = 513) -> Schedule:
    if t_f <= 0.0:
        raise ScheduleError("t_f must be positive")
    s = np.linspace(0.0, 1.0, n_samples)
    return Schedule(path=path, t_f=t_f, times=s * t_f,
                    A_values=path.A0 + (path.Af - path.A0) * s,
                    method="linear", c=None)


def discrete_adiabaticity(schedule: Schedule, g_midpoints: np.ndarray) -> np.ndarray:
    """Per-interval c_j = |dA/dt| * g at interval midpoints.

    `g_midpoints` must hold the integrand evaluated at the A midpoint of
    each consecutive sample pair; constancy of the result (to ~1%) is the
    defining property of a FAQUAD/LA schedule.
    """
    dA = np.diff(schedule.A_values)
    dt = np.diff(schedule.times)
    return np.abs(dA / dt) * g_midpoints
