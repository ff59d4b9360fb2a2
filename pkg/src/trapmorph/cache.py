"""On-disk cache of adiabaticity profiles.

Designing a schedule costs ~10^3 eigensolves; the result is a pair of
small arrays that depend only on (path, grid, target index, method).  This
module stores them in a versioned little-endian binary format keyed by a
hash of those inputs, so repeated CLI scans skip straight to propagation.

Cache directory resolution: explicit argument, else $TRAPMORPH_CACHE_DIR,
else ~/.cache/trapmorph.  Corrupt or stale-format entries raise CacheError
from the low-level reader; the high-level entry point treats that as a
miss and recomputes.
"""

from __future__ import annotations

import hashlib
import os
import struct
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import CacheError
from .grid import SpatialGrid
from .potential import DeformationPath
from .schedule import PROFILE_NODES_DEFAULT, AdiabaticityProfile, build_profile

MAGIC = b"TMPROF"
VERSION = 1
_METHOD_CODES = {"faquad": 0, "la": 1}
_HEADER = struct.Struct("<6sHddddddIIddIIQ")
# magic, version, A0, Af, B0, kappa, eps, C, n_target, method,
# x_min, x_max, grid_n, target_n, nodes


def cache_dir(explicit: Optional[str] = None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get("TRAPMORPH_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "trapmorph"


def profile_key(path: DeformationPath, grid: SpatialGrid, n: int,
                method: str, nodes: int) -> str:
    parts = [
        "%.17g" % v
        for v in (path.A0, path.Af, path.B0, path.kappa, path.eps, path.C,
                  grid.x_min, grid.x_max)
    ]
    parts += [str(path.n_target), str(grid.n), str(n), method, str(nodes)]
    digest = hashlib.sha256("|".join(parts).encode()).hexdigest()[:24]
    return "profile-%s.bin" % digest


def write_profile(fp, profile: AdiabaticityProfile, path: DeformationPath,
                  grid: SpatialGrid, n: int, nodes: int) -> None:
    header = _HEADER.pack(
        MAGIC, VERSION, path.A0, path.Af, path.B0, path.kappa, path.eps,
        path.C, path.n_target, _METHOD_CODES[profile.method],
        grid.x_min, grid.x_max, grid.n, n, nodes,
    )
    fp.write(header)
    fp.write(struct.pack("<Q", len(profile.lambda_grid)))
    fp.write(np.ascontiguousarray(profile.lambda_grid, "<f8").tobytes())
    fp.write(np.ascontiguousarray(profile.g, "<f8").tobytes())


def read_profile(fp, path: DeformationPath, grid: SpatialGrid, n: int,
                 method: str, nodes: int) -> AdiabaticityProfile:
    raw = fp.read(_HEADER.size)
    if len(raw) != _HEADER.size:
        raise CacheError("truncated cache header")
    fields = _HEADER.unpack(raw)
    if fields[0] != MAGIC or fields[1] != VERSION:
        raise CacheError("cache magic/version mismatch")
    expect = (path.A0, path.Af, path.B0, path.kappa, path.eps, path.C,
              path.n_target, _METHOD_CODES[method],
              grid.x_min, grid.x_max, grid.n, n, nodes)
    if fields[2:] != expect:
        raise CacheError("cache entry was written for different parameters")
    (count,) = struct.unpack("<Q", fp.read(8))
    if count < 2 or count > 10**8:
        raise CacheError("implausible node count %d" % count)
    body = fp.read(2 * 8 * count)
    if len(body) != 2 * 8 * count:
        raise CacheError("truncated cache body")
    lam = np.frombuffer(body[: 8 * count], "<f8").copy()
    g = np.frombuffer(body[8 * count:], "<f8").copy()
    return AdiabaticityProfile(lam, g, method)


def cached_profile(path: DeformationPath, grid: SpatialGrid, n: int,
                   method: str = "faquad",
                   nodes: int = PROFILE_NODES_DEFAULT,
                   directory: Optional[str] = None,
                   refresh: bool = False) -> AdiabaticityProfile:
    """build_profile with a read-through disk cache."""
    d = cache_dir(directory)
    key = profile_key(path, grid, n, method, nodes)
    entry = d / key
    if not refresh and entry.exists():
        try:
            with open(entry, "rb") as fp:
                return read_profile(fp, path, grid, n, method, nodes)
        except (CacheError, OSError):
            pass  # recompute below and overwrite
    profile = build_profile(path, grid, n, method=method, nodes=nodes)
    try:
        d.mkdir(parents=True, exist_ok=True)
        tmp = entry.with_suffix(".tmp.%d" % os.getpid())
        with open(tmp, "wb") as fp:
            write_profile(fp, profile, path, grid, n, nodes)
        os.replace(tmp, entry)
    except OSError:
        pass  # cache is best-effort; the computed profile is still good
    return profile
