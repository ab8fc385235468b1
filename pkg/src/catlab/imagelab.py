"""Screen configurations under the cat map: bulk iteration, exact recurrence, dispersion.

A configuration is an ``n x n`` uint8 grid indexed ``[y, x]``.  Iterating moves
the value at ``p`` to ``map(p)``.
"""

from __future__ import annotations

import os
import shutil
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .errors import DomainError
from .mapcore import CANONICAL, check_modulus, exact_period, matrix_pow_mod
from .period import dyson_falk_bound

__all__ = [
    "Configuration",
    "CycleDecomposition",
    "DispersionSample",
    "RecurrenceReport",
    "configuration_recurrence",
    "cycle_decomposition",
    "dispersion_curve",
    "iterate_configuration",
    "lattice_permutation",
    "snapshot_name",
    "toroidal_l1",
    "write_snapshots",
]


class Configuration:
    """Immutable ``n x n`` grid of 8-bit cell values."""

    __slots__ = ("_cells",)

    def __init__(self, cells):
        arr = np.array(cells, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DomainError(f"configuration must be a non-empty square grid, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise DomainError("cell values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        self._cells = arr

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "Configuration":
        return cls(np.full((check_modulus(n), n), value, dtype=np.uint8))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Configuration":
        return cls(rng.integers(0, 256, size=(check_modulus(n), n), dtype=np.uint8))

    @property
    def n(self) -> int:
        return self._cells.shape[0]

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    def __getitem__(self, point):
        x, y = point
        return int(self._cells[y, x])

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self._cells.shape == other._cells.shape and bool(np.array_equal(self._cells, other._cells))

    def __hash__(self):
        return hash((self.n, self._cells.tobytes()))

    def __repr__(self):
        return f"Configuration(n={self.n})"


def _images(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Column and row of map**k applied to every lattice point, as (n, n) arrays indexed [y, x]."""
    (a, b), (c, d) = matrix_pow_mod(CANONICAL, k, n)
    y, x = np.indices((n, n), dtype=np.int64)
    return (a * x + b * y) % n, (c * x + d * y) % n


def lattice_permutation(n: int, k: int = 1) -> np.ndarray:
    """Flat permutation ``perm[i] = j`` where point ``i = y*n + x`` is sent to ``j`` by map**k."""
    xs, ys = _images(check_modulus(n), k)
    return (ys * n + xs).ravel()


def iterate_configuration(c: Configuration, k: int) -> Configuration:
    if k < 0:
        raise DomainError(f"step count must be >= 0, got {k}")
    n = c.n
    xs, ys = _images(n, k)
    out = np.empty_like(c.cells)
    out[ys, xs] = c.cells
    return Configuration(out)


@dataclass(frozen=True)
class CycleDecomposition:
    """Cycles of the lattice permutation, each a list of flat indices ``y*n + x`` in map order."""

    n: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def cycle_lengths(self) -> Counter:
        return Counter(len(cyc) for cyc in self.cycles)

    def points(self, i: int) -> list[tuple[int, int]]:
        return [(j % self.n, j // self.n) for j in self.cycles[i]]

    def lcm_of_lengths(self) -> int:
        return lcm(*self.cycle_lengths)


def cycle_decomposition(n: int) -> CycleDecomposition:
    perm = lattice_permutation(n).tolist()
    seen = bytearray(len(perm))
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = 1
            cyc.append(j)
            j = perm[j]
        cycles.append(tuple(cyc))
    return CycleDecomposition(n, tuple(cycles))


def _divisors(k: int) -> list[int]:
    small = [d for d in range(1, int(k**0.5) + 1) if k % d == 0]
    return sorted(set(small + [k // d for d in small]))


def _minimal_shift(values: np.ndarray) -> int:
    length = len(values)
    for d in _divisors(length):
        if np.array_equal(values, np.roll(values, -d)):
            return d
    return length  # unreachable: d = length always matches


@dataclass(frozen=True)
class RecurrenceReport:
    n: int
    recurrence_time: int
    period: int
    bound: int | None
    # (cycle length, per-cycle restoring count) -> number of cycles
    cycle_summary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "recurrence": self.recurrence_time,
            "period": self.period,
            "bound": self.bound,
            "cycles": [
                {"length": length, "restore": d, "count": count}
                for (length, d), count in sorted(self.cycle_summary.items())
            ],
        }


def configuration_recurrence(c: Configuration, decomposition: CycleDecomposition | None = None) -> RecurrenceReport:
    """Smallest ``m >= 1`` with ``iterate_configuration(c, m) == c``, found cycle by cycle."""
    n = c.n
    if decomposition is None:
        decomposition = cycle_decomposition(n)
    elif decomposition.n != n:
        raise DomainError(f"decomposition is for n={decomposition.n}, configuration has n={n}")
    flat = c.cells.ravel()
    summary: Counter = Counter()
    restore = 1
    for cyc in decomposition.cycles:
        d = _minimal_shift(flat[list(cyc)])
        summary[(len(cyc), d)] += 1
        restore = lcm(restore, d)
    bound = dyson_falk_bound(n) if n >= 2 else None
    return RecurrenceReport(n, restore, exact_period(n), bound, dict(summary))


def toroidal_l1(dx, dy, n: int):
    dx = np.abs(dx) % n
    dy = np.abs(dy) % n
    return np.minimum(dx, n - dx) + np.minimum(dy, n - dy)


@dataclass(frozen=True)
class DispersionSample:
    step: int
    mean_distance: float


# above this many pairs the lattice is stride-subsampled
_MAX_PAIRS = 256 * 256


def dispersion_curve(n: int, k_max: int) -> list[DispersionSample]:
    """Mean toroidal L1 distance between images of horizontally adjacent pixels, k = 0..k_max."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"dispersion needs n >= 2, got {n!r}")
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max}")
    idx = np.arange(n * n, dtype=np.int64)
    if idx.size > _MAX_PAIRS:
        idx = idx[:: -(-idx.size // _MAX_PAIRS)]
    x1, y1 = idx % n, idx // n
    x2, y2 = (x1 + 1) % n, y1.copy()
    samples = []
    for k in range(k_max + 1):
        dist = toroidal_l1(x2 - x1, y2 - y1, n)
        samples.append(DispersionSample(k, float(dist.mean())))
        x1, y1 = (x1 + y1) % n, (x1 + 2 * y1) % n
        x2, y2 = (x2 + y2) % n, (x2 + 2 * y2) % n
    return samples


def snapshot_name(step: int) -> str:
    return f"step_{step:04d}.pgm"


def write_snapshots(c: Configuration, steps: int, every: int, outdir) -> list[str]:
    """Write ``c`` and every ``every``-th iterate up to ``steps`` as PGM files.

    Files are staged in a scratch directory and moved into ``outdir`` only once
    all of them have been produced, so a failure leaves ``outdir`` untouched.
    """
    from .pgm import save_pgm

    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    if every < 1:
        raise DomainError(f"every must be >= 1, got {every}")
    outdir = os.fspath(outdir)
    parent = os.path.dirname(os.path.abspath(outdir))
    os.makedirs(parent, exist_ok=True)
    staging = tempfile.mkdtemp(prefix=".snapshots-", dir=parent)
    try:
        names = []
        current, at = c, 0
        indices = list(range(0, steps + 1, every))
        for i in indices:
            current = iterate_configuration(current, i - at)
            at = i
            name = snapshot_name(i)
            with open(os.path.join(staging, name), "wb") as fh:
                fh.write(save_pgm(current))
            names.append(name)
        os.makedirs(outdir, exist_ok=True)
        for name in names:
            os.replace(os.path.join(staging, name), os.path.join(outdir, name))
        return [os.path.join(outdir, name) for name in names]
    finally:
        shutil.rmtree(staging, ignore_errors=True)
