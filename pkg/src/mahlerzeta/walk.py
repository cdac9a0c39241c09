"""State evolution on the torus and matrix weights on Z^d.

The walk state is a field of 2d-component complex vectors over the N^d torus.
One step sends component 2j-1 (1-based) one site in the -x_j direction and
component 2j one site in the +x_j direction, after the coin has mixed the
components at every site.  Sites are enumerated with x_1 varying fastest
wherever an ordering is exposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .coins import CoinMatrix
from .errors import ComputationError

__all__ = [
    "MomentumPoint",
    "WalkState",
    "MatrixWeight",
    "delta_state",
    "uniform_state",
    "momentum_matrix",
    "evolve",
    "total_measure",
    "matrix_weight_origin",
    "matrix_weight_traces",
]

_TWO_PI = 2.0 * math.pi
_MAX_WEIGHT_BYTES = 512 * 1024 * 1024


@dataclass(frozen=True)
class MomentumPoint:
    """A point of momentum space: d angles, each in [0, 2*pi)."""

    angles: tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        if len(angles) < 1:
            raise ValueError("momentum point needs at least one angle")
        for a in angles:
            if not 0.0 <= a < _TWO_PI:
                raise ValueError(f"angle {a} outside [0, 2*pi)")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def from_indices(cls, side_N: int, indices: Iterable[int]) -> "MomentumPoint":
        """Finite-torus momentum 2*pi*k_j/N for integer indices k_j."""
        if side_N < 1:
            raise ValueError(f"side_N must be >= 1, got {side_N}")
        return cls(tuple(_TWO_PI * (k % side_N) / side_N for k in indices))


@dataclass(frozen=True, eq=False)
class WalkState:
    """A 2d-component complex field over the N^d torus at a given time."""

    dim_d: int
    side_N: int
    field: np.ndarray
    time: int = 0

    def __post_init__(self):
        if self.dim_d < 1 or self.side_N < 1:
            raise ValueError("dim_d and side_N must be positive")
        if self.time < 0:
            raise ValueError("time must be non-negative")
        expected = (self.side_N,) * self.dim_d + (2 * self.dim_d,)
        field = np.array(self.field, dtype=np.complex128)
        if field.shape != expected:
            raise ValueError(f"field must have shape {expected}, got {field.shape}")
        field.setflags(write=False)
        object.__setattr__(self, "field", field)

    def __repr__(self):
        return (f"WalkState(d={self.dim_d}, N={self.side_N}, time={self.time})")


def delta_state(dim_d: int, side_N: int, amplitudes: Sequence[complex] | None = None) -> WalkState:
    """State concentrated at the origin; default internal vector is e_1."""
    field = np.zeros((side_N,) * dim_d + (2 * dim_d,), dtype=np.complex128)
    if amplitudes is None:
        vec = np.zeros(2 * dim_d, dtype=np.complex128)
        vec[0] = 1.0
    else:
        vec = np.asarray(amplitudes, dtype=np.complex128)
        if vec.shape != (2 * dim_d,):
            raise ValueError(f"amplitudes must have length {2 * dim_d}")
    field[(0,) * dim_d] = vec
    return WalkState(dim_d, side_N, field, 0)


def uniform_state(dim_d: int, side_N: int) -> WalkState:
    """Flat probability state: every component of every site carries equal mass.

    The 1-norm total measure is exactly 1, making this the stationary input
    for random-walk coins.
    """
    sites = side_N ** dim_d
    value = 1.0 / (sites * 2 * dim_d)
    field = np.full((side_N,) * dim_d + (2 * dim_d,), value, dtype=np.complex128)
    return WalkState(dim_d, side_N, field, 0)


def _phases(coin: CoinMatrix, angles: np.ndarray) -> np.ndarray:
    p = np.empty(2 * coin.dim_d, dtype=np.complex128)
    p[0::2] = np.exp(1j * angles)
    p[1::2] = np.exp(-1j * angles)
    return p


def momentum_matrix(coin: CoinMatrix, k) -> np.ndarray:
    """The momentum-space transfer matrix of the walk at momentum k.

    Row 2j-1 (1-based) of the coin is scaled by exp(+i k_j) and row 2j by
    exp(-i k_j); multiplying Fourier modes by this matrix advances the walk
    one step.
    """
    angles = np.asarray(k.angles if isinstance(k, MomentumPoint) else list(k), dtype=np.float64)
    if angles.shape != (coin.dim_d,):
        raise ValueError(f"momentum must have {coin.dim_d} components, got {angles.shape}")
    return _phases(coin, angles)[:, None] * coin.entries


def evolve(state: WalkState, coin: CoinMatrix, steps: int) -> WalkState:
    """Advance the state ``steps`` steps with periodic wraparound."""
    if coin.dim_d != state.dim_d:
        raise ValueError(f"coin dimension {coin.dim_d} != state dimension {state.dim_d}")
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    field = state.field
    entries_t = coin.entries.T
    for _ in range(steps):
        mixed = field @ entries_t
        nxt = np.empty_like(mixed)
        for j in range(state.dim_d):
            nxt[..., 2 * j] = np.roll(mixed[..., 2 * j], -1, axis=j)
            nxt[..., 2 * j + 1] = np.roll(mixed[..., 2 * j + 1], 1, axis=j)
        field = nxt
    return WalkState(state.dim_d, state.side_N, field, state.time + steps)


def total_measure(state: WalkState, p: float) -> float:
    """Sum of |component|^p over all sites and components."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return float(np.sum(np.abs(state.field) ** p))


@dataclass(frozen=True, eq=False)
class MatrixWeight:
    """The 2d x 2d return weight of the infinite-lattice walk at a given step."""

    dim_d: int
    step: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.complex128)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)


def _check_window(dim_d: int, r: int) -> None:
    side = 2 * r + 1
    need = 2 * (side ** dim_d) * (2 * dim_d) ** 2 * 16
    if need > _MAX_WEIGHT_BYTES:
        raise ComputationError(
            f"step count {r} needs a {side}^{dim_d} window "
            f"({need / 2 ** 20:.0f} MiB > {_MAX_WEIGHT_BYTES / 2 ** 20:.0f} MiB budget)"
        )


def _step_window(entries: np.ndarray, window: np.ndarray, dim_d: int) -> np.ndarray:
    """One step of the weight recursion on a zero-boundary window."""
    mixed = np.matmul(entries, window)
    out = np.zeros_like(window)
    n = window.shape[0]
    for j in range(dim_d):
        for comp, step in ((2 * j, 1), (2 * j + 1, -1)):
            dst = [slice(None)] * window.ndim
            src = [slice(None)] * window.ndim
            if step == 1:
                dst[j], src[j] = slice(0, n - 1), slice(1, n)
            else:
                dst[j], src[j] = slice(1, n), slice(0, n - 1)
            dst[dim_d], src[dim_d] = comp, comp
            out[tuple(dst)] = mixed[tuple(src)]
    return out


def matrix_weight_origin(coin: CoinMatrix, r: int) -> MatrixWeight:
    """Return weight at the origin after r steps of the walk on Z^d.

    Computed by forward dynamic programming over the window [-r, r]^d with
    zero boundary; at r = 0 the weight is the identity.
    """
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    d = coin.dim_d
    _check_window(d, r)
    side = 2 * r + 1
    window = np.zeros((side,) * d + (2 * d, 2 * d), dtype=np.complex128)
    center = (r,) * d
    window[center] = np.eye(2 * d)
    for _ in range(r):
        window = _step_window(coin.entries, window, d)
    return MatrixWeight(d, r, window[center])


def matrix_weight_traces(coin: CoinMatrix, r_max: int) -> list[complex]:
    """Traces of the origin return weights for r = 0..r_max in one pass."""
    if r_max < 0:
        raise ValueError(f"r_max must be non-negative, got {r_max}")
    d = coin.dim_d
    _check_window(d, r_max)
    side = 2 * r_max + 1
    window = np.zeros((side,) * d + (2 * d, 2 * d), dtype=np.complex128)
    center = (r_max,) * d
    window[center] = np.eye(2 * d)
    traces = [complex(2 * d)]
    for _ in range(r_max):
        window = _step_window(coin.entries, window, d)
        traces.append(complex(np.trace(window[center])))
    return traces
