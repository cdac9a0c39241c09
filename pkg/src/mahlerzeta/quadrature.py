"""Torus quadrature with chunked, deterministic reduction.

Uniform tensor grids on [0, 2*pi)^d, midpoint-shifted by default.  For smooth
periodic integrands the periodic trapezoid/midpoint rule converges
geometrically, so refinement doubles the per-axis node count.  Grid sums are
accumulated block by block in a fixed order with ``math.fsum``, which makes
every result bit-reproducible and independent of the worker thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuadratureSpec",
    "RefineResult",
    "grid_mean",
    "refine_to_tol",
    "det_stack",
    "set_thread_count",
    "get_thread_count",
]

_threads = 1


def set_thread_count(n: int) -> None:
    """Set the worker-thread count used for grid evaluation.

    Chunk boundaries and reduction order are fixed, so the computed values do
    not depend on this setting.
    """
    global _threads
    n = int(n)
    if n < 1:
        raise ValueError(f"thread count must be >= 1, got {n}")
    _threads = n


def get_thread_count() -> int:
    return _threads


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid resolution, node placement and convergence policy for torus integrals.

    Nodes along each axis sit at ``2*pi*(k + node_shift)/M`` for
    ``k = 0..M-1``; the default half-node shift keeps grids away from
    lattice-point zeros.  ``points_per_dim`` is the first full grid; the
    refinement ladder starts one halving below it and doubles M until two
    successive values differ by less than ``tol`` or ``max_refinements``
    doublings have been spent.
    """

    points_per_dim: int = 32
    node_shift: float = 0.5
    tol: float = 1e-10
    max_refinements: int = 7

    def __post_init__(self):
        if self.points_per_dim < 2:
            raise ValueError(f"points_per_dim must be >= 2, got {self.points_per_dim}")
        if not 0.0 <= self.node_shift < 1.0:
            raise ValueError(f"node_shift must lie in [0, 1), got {self.node_shift}")
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_refinements < 0:
            raise ValueError(f"max_refinements must be >= 0, got {self.max_refinements}")


def _angle_block(d: int, points: int, shift: float, i0: int, i1: int) -> np.ndarray:
    """Rows i0..i1 of the flattened M^d tensor grid, as an (n, d) angle array."""
    idx = np.arange(i0, i1, dtype=np.int64)
    out = np.empty((i1 - i0, d), dtype=np.float64)
    scale = 2.0 * math.pi / points
    for j in range(d):
        div = points ** (d - 1 - j)
        out[:, j] = ((idx // div) % points + shift) * scale
    return out


def grid_mean(fn, d: int, points: int, shift: float, *, max_block: int | None = None,
              threads: int | None = None) -> tuple[complex, float | None]:
    """Average ``fn`` over the tensor grid with M = ``points`` nodes per axis.

    ``fn`` receives an (n, d) block of angles and returns ``(values, stat)``
    where ``values`` is a 1-D array (real or complex) and ``stat`` is a float
    minimum statistic or None.  Returns ``(mean, min_stat)``.
    """
    if max_block is None:
        max_block = 1 << 20
    total = points ** d
    ranges = [(i, min(i + max_block, total)) for i in range(0, total, max_block)]

    def work(rng):
        i0, i1 = rng
        values, stat = fn(_angle_block(d, points, shift, i0, i1))
        s = complex(np.sum(values))
        return s.real, s.imag, stat

    nthreads = threads if threads is not None else _threads
    if nthreads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            parts = list(pool.map(work, ranges))
    else:
        parts = [work(rng) for rng in ranges]

    mean = complex(math.fsum(p[0] for p in parts) / total,
                   math.fsum(p[1] for p in parts) / total)
    stats = [p[2] for p in parts if p[2] is not None]
    return mean, (min(stats) if stats else None)


@dataclass(frozen=True)
class RefineResult:
    value: complex
    previous: complex
    delta: float
    converged: bool
    points_per_dim: int
    evaluations: int


def refine_to_tol(eval_at, spec: QuadratureSpec) -> RefineResult:
    """Run the doubling ladder: M/2, M, 2M, ... until |delta| < spec.tol."""
    points = spec.points_per_dim
    prev = eval_at(max(1, points // 2))
    value = eval_at(points)
    delta = abs(value - prev)
    evals = 2
    while delta >= spec.tol and evals - 2 < spec.max_refinements:
        points *= 2
        prev, value = value, eval_at(points)
        delta = abs(value - prev)
        evals += 1
    return RefineResult(value, prev, delta, delta < spec.tol, points, evals)


def det_stack(mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of square matrices (..., n, n).

    Closed forms for n in {1, 2}, cofactor expansion for n = 4 (the sizes that
    dominate quadrature inner loops), LU with partial pivoting otherwise.
    """
    n = mats.shape[-1]
    if n == 1:
        return mats[..., 0, 0]
    if n == 2:
        return (mats[..., 0, 0] * mats[..., 1, 1]
                - mats[..., 0, 1] * mats[..., 1, 0])
    if n == 4:
        m = mats
        s0 = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
        s1 = m[..., 0, 0] * m[..., 1, 2] - m[..., 0, 2] * m[..., 1, 0]
        s2 = m[..., 0, 0] * m[..., 1, 3] - m[..., 0, 3] * m[..., 1, 0]
        s3 = m[..., 0, 1] * m[..., 1, 2] - m[..., 0, 2] * m[..., 1, 1]
        s4 = m[..., 0, 1] * m[..., 1, 3] - m[..., 0, 3] * m[..., 1, 1]
        s5 = m[..., 0, 2] * m[..., 1, 3] - m[..., 0, 3] * m[..., 1, 2]
        c5 = m[..., 2, 2] * m[..., 3, 3] - m[..., 2, 3] * m[..., 3, 2]
        c4 = m[..., 2, 1] * m[..., 3, 3] - m[..., 2, 3] * m[..., 3, 1]
        c3 = m[..., 2, 1] * m[..., 3, 2] - m[..., 2, 2] * m[..., 3, 1]
        c2 = m[..., 2, 0] * m[..., 3, 3] - m[..., 2, 3] * m[..., 3, 0]
        c1 = m[..., 2, 0] * m[..., 3, 2] - m[..., 2, 2] * m[..., 3, 0]
        c0 = m[..., 2, 0] * m[..., 3, 1] - m[..., 2, 1] * m[..., 3, 0]
        return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
    return np.linalg.det(mats)
