"""Walk-type zeta functions and their series coefficients.

For a coin A on the N^d torus the walk-type zeta function is

    zeta(A, N, u) = det(I - u M_A)^(-1/N^d),

where M_A is the one-step operator of the walk.  The determinant factorizes
over momentum space, which gives the practical evaluation route

    zeta(A, N, u) = exp( -(1/N^d) * sum_k log det(I - u M_hat(k)) )

with M_hat the 2d x 2d momentum-space matrix.  Its N -> infinity companion is
the logarithmic zeta function

    L(A, u) = integral over [0, 2*pi)^d of log det(I - u M_hat(Theta)),

with the uniform measure, and the coefficients C_r of
log zeta = sum_r C_r u^r / r are averaged traces of powers of M_hat, equal to
the trace of the step-r return weight on Z^d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coins import CoinMatrix, F_TYPE, HADAMARD, M_TYPE
from .errors import ComputationError
from .quadrature import QuadratureSpec, det_stack, grid_mean, refine_to_tol
from .walk import matrix_weight_origin, matrix_weight_traces

__all__ = [
    "SeriesCoefficients",
    "zeta_finite",
    "zeta_finite_log_mean",
    "zeta_finite_dense",
    "dense_walk_matrix",
    "cr_finite",
    "cr_limit",
    "cr_limit_pathsum",
    "cr_closed_1d_qw",
    "log_zeta",
    "log_zeta_refined",
    "log_zeta_series",
    "compute_series",
]

_DENSE_CAP = 4096
_GRID_CAP = 1 << 26


@dataclass(frozen=True)
class SeriesCoefficients:
    """C_r values for one coin, tagged with the route that produced them."""

    coin: str
    values: tuple[tuple[int, float], ...]
    method: str

    def __post_init__(self):
        rs = [r for r, _ in self.values]
        if any(b <= a for a, b in zip(rs, rs[1:])) or any(r < 1 for r in rs):
            raise ValueError("r values must be strictly increasing positive integers")


def _matrix_block_cap(d: int) -> int:
    # keep per-block matrix stacks around a few tens of MiB
    return max(4096, (1 << 22) // ((2 * d) ** 2))


def _momentum_stack(coin: CoinMatrix, nodes: np.ndarray) -> np.ndarray:
    """Momentum matrices for a block of nodes, shape (n, 2d, 2d)."""
    phases = np.empty((nodes.shape[0], 2 * coin.dim_d), dtype=np.complex128)
    phases[:, 0::2] = np.exp(1j * nodes)
    phases[:, 1::2] = np.conj(phases[:, 0::2])
    return phases[:, :, None] * coin.entries[None, :, :]


def _log_det_block(coin: CoinMatrix, u: float, eye: np.ndarray, require_positive: bool):
    def fn(nodes):
        mats = eye - u * _momentum_stack(coin, nodes)
        dets = det_stack(mats)
        if require_positive:
            bad = dets.real <= 0.0
            if bad.any():
                where = int(np.argmax(bad))
                raise ComputationError(
                    "integrand determinant has non-positive real part at "
                    f"Theta={tuple(float(a) for a in nodes[where])} (u={u})"
                )
        else:
            tiny = np.abs(dets) < 1e-13
            if tiny.any():
                where = int(np.argmax(tiny))
                raise ComputationError(
                    f"singular factor: det(I - u M_hat) vanishes at "
                    f"k={tuple(float(a) for a in nodes[where])} (u={u})"
                )
        return np.log(dets), None

    return fn


def zeta_finite_log_mean(coin: CoinMatrix, N: int, u: float) -> complex:
    """Grid mean of log det(I - u M_hat(k)) over the N^d momentum lattice.

    The imaginary part is the residual left after conjugate momenta cancel;
    callers requiring a real zeta value must check it.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    d = coin.dim_d
    if 2 * d * N ** d > _GRID_CAP:
        raise ComputationError(f"momentum grid 2d*N^d = {2 * d * N ** d} exceeds cap {_GRID_CAP}")
    eye = np.eye(2 * d, dtype=np.complex128)
    fn = _log_det_block(coin, u, eye, require_positive=False)
    mean, _ = grid_mean(fn, d, N, 0.0, max_block=_matrix_block_cap(d))
    return mean


def zeta_finite(coin: CoinMatrix, N: int, u: float) -> float:
    """Walk-type zeta function on the N^d torus via the momentum factorization."""
    mean = zeta_finite_log_mean(coin, N, u)
    if abs(mean.imag) >= 1e-10:
        raise ComputationError(
            f"imaginary residual {abs(mean.imag):.3e} of the log-determinant sum exceeds 1e-10"
        )
    return math.exp(-mean.real)


def _site_coords(N: int, d: int):
    # x_1 varies fastest
    for flat in range(N ** d):
        yield tuple((flat // N ** j) % N for j in range(d))


def dense_walk_matrix(coin: CoinMatrix, N: int) -> np.ndarray:
    """The full 2d*N^d one-step matrix of the walk on the N^d torus."""
    d = coin.dim_d
    size = 2 * d * N ** d
    if size > _DENSE_CAP:
        raise ComputationError(f"dense operator size {size} exceeds cap {_DENSE_CAP}")
    a = coin.entries
    mat = np.zeros((size, size), dtype=np.complex128)
    for coords in _site_coords(N, d):
        s = sum(coords[j] * N ** j for j in range(d))
        for j in range(d):
            up = list(coords)
            up[j] = (up[j] + 1) % N
            dn = list(coords)
            dn[j] = (dn[j] - 1) % N
            s_up = sum(up[jj] * N ** jj for jj in range(d))
            s_dn = sum(dn[jj] * N ** jj for jj in range(d))
            # component 2j (0-based) reads from x + e_j, component 2j+1 from x - e_j
            mat[2 * d * s + 2 * j, 2 * d * s_up: 2 * d * s_up + 2 * d] = a[2 * j]
            mat[2 * d * s + 2 * j + 1, 2 * d * s_dn: 2 * d * s_dn + 2 * d] = a[2 * j + 1]
    return mat


def zeta_finite_dense(coin: CoinMatrix, N: int, u: float) -> float:
    """Walk-type zeta function from the assembled dense operator (oracle route)."""
    d = coin.dim_d
    mat = dense_walk_matrix(coin, N)
    sign, logabs = np.linalg.slogdet(np.eye(mat.shape[0]) - u * mat)
    if sign == 0:
        raise ComputationError(f"det(I - u M) vanishes for u={u}, N={N}")
    arg = abs(np.angle(sign))
    if arg >= 1e-8:
        raise ComputationError(f"determinant is not positive real (arg {arg:.3e})")
    return math.exp(-logabs / N ** d)


def _trace_power_block(coin: CoinMatrix, r: int):
    def fn(nodes):
        mats = _momentum_stack(coin, nodes)
        power = mats
        for _ in range(r - 1):
            power = power @ mats
        return np.einsum("...ii->...", power), None

    return fn


def cr_finite(coin: CoinMatrix, N: int, r: int) -> float:
    """C_r on the finite torus: the grid average of Tr(M_hat(k)^r)."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    d = coin.dim_d
    mean, _ = grid_mean(_trace_power_block(coin, r), d, N, 0.0,
                        max_block=_matrix_block_cap(d))
    if abs(mean.imag) >= 1e-10:
        raise ComputationError(f"imaginary residual {abs(mean.imag):.3e} exceeds 1e-10")
    return mean.real


def cr_limit(coin: CoinMatrix, r: int, quad: QuadratureSpec | None = None) -> float:
    """Infinite-lattice C_r by torus quadrature of Tr(M_hat(Theta)^r).

    The integrand is a trigonometric polynomial of per-axis degree r, so the
    periodic rule is exact once the grid exceeds r points per axis.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    spec = quad or QuadratureSpec(points_per_dim=max(32, 2 * r + 2), max_refinements=4)
    d = coin.dim_d
    fn = _trace_power_block(coin, r)

    def eval_at(points):
        mean, _ = grid_mean(fn, d, points, spec.node_shift,
                            max_block=_matrix_block_cap(d))
        return mean

    res = refine_to_tol(eval_at, spec)
    if not res.converged:
        raise ComputationError(
            f"C_{r} quadrature did not converge after {spec.max_refinements} refinements "
            f"(last delta {res.delta:.3e})"
        )
    if abs(res.value.imag) >= 1e-9:
        raise ComputationError(f"imaginary residual {abs(res.value.imag):.3e} exceeds 1e-9")
    return res.value.real


def cr_limit_pathsum(coin: CoinMatrix, r: int) -> float:
    """Infinite-lattice C_r as the trace of the step-r return weight."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    tr = complex(np.trace(matrix_weight_origin(coin, r).matrix))
    if abs(tr.imag) >= 1e-12:
        raise ComputationError(f"imaginary residual {abs(tr.imag):.3e} exceeds 1e-12")
    return tr.real


def cr_closed_1d_qw(xi: float, l: int, shift_type: str) -> float:
    """Closed form for C_{2l} of the one-dimensional two-state walk.

    For the moving-shift model,

        C_{2l} = 2l (-cos^2 xi)^l * sum_{m=1}^{l} (1/m) C(l-1, m-1)^2 (-tan^2 xi)^m,

    and for the flip-flop model the same sum with (-cot^2 xi)^m scaled by
    2l (sin xi)^{2l}.  Valid for xi strictly inside (0, pi/2); the odd
    coefficients vanish identically.
    """
    if not 0.0 < xi < math.pi / 2:
        raise ValueError(f"xi must lie strictly inside (0, pi/2), got {xi}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if shift_type not in (M_TYPE, F_TYPE):
        raise ValueError(f"shift_type must be {M_TYPE!r} or {F_TYPE!r}")
    cos2 = math.cos(xi) ** 2
    sin2 = math.sin(xi) ** 2
    if shift_type == M_TYPE:
        y = -sin2 / cos2
        scale = 2 * l * (-cos2) ** l
    else:
        y = -cos2 / sin2
        scale = 2 * l * sin2 ** l
    total = 0.0
    for m in range(1, l + 1):
        total += (1.0 / m) * math.comb(l - 1, m - 1) ** 2 * y ** m
    return scale * total


def log_zeta_refined(coin: CoinMatrix, u: float, quad: QuadratureSpec | None = None):
    """Like ``log_zeta`` but returning the full refinement record."""
    spec = quad or QuadratureSpec()
    d = coin.dim_d
    eye = np.eye(2 * d, dtype=np.complex128)
    fn = _log_det_block(coin, u, eye, require_positive=True)

    def eval_at(points):
        mean, _ = grid_mean(fn, d, points, spec.node_shift,
                            max_block=_matrix_block_cap(d))
        return mean

    res = refine_to_tol(eval_at, spec)
    if not res.converged:
        raise ComputationError(
            f"log-zeta quadrature did not converge after {spec.max_refinements} refinements "
            f"(last delta {res.delta:.3e})"
        )
    if abs(res.value.imag) >= 1e-9:
        raise ComputationError(f"imaginary residual {abs(res.value.imag):.3e} exceeds 1e-9")
    return res


def log_zeta(coin: CoinMatrix, u: float, quad: QuadratureSpec | None = None) -> float:
    """Logarithmic zeta function: the torus integral of log det(I - u M_hat).

    Uses the principal complex log; the integrand determinant must keep a
    positive real part on the grid (true for the supported models on their
    validity ranges), and the symmetric grid cancels the imaginary part, which
    is asserted below 1e-9.
    """
    return log_zeta_refined(coin, u, quad).value.real


def log_zeta_series(coin: CoinMatrix, u: float, r_max: int) -> tuple[float, float]:
    """Logarithmic zeta via -sum_{r<=r_max} C_r u^r / r with a geometric tail bound.

    C_r comes from the return-weight route; the tail bound
    2d |u|^(r_max+1) / ((r_max+1)(1-|u|)) uses |Tr(M_hat^r)| <= 2d, valid for
    unitary and stochastic coins.
    """
    if r_max < 1:
        raise ValueError(f"r_max must be >= 1, got {r_max}")
    if abs(u) >= 1.0:
        raise ValueError(f"|u| must be below 1 for the series route, got u={u}")
    traces = matrix_weight_traces(coin, r_max)
    total = 0.0
    for r in range(1, r_max + 1):
        c_r = traces[r]
        if abs(c_r.imag) >= 1e-12:
            raise ComputationError(f"imaginary residual {abs(c_r.imag):.3e} in C_{r}")
        total -= c_r.real * u ** r / r
    tail = 2 * coin.dim_d * abs(u) ** (r_max + 1) / ((r_max + 1) * (1.0 - abs(u)))
    return total, tail


_METHODS = ("trace_finite", "quad_limit", "path_sum", "closed_form")


def compute_series(coin: CoinMatrix, r_max: int, method: str,
                   N: int | None = None,
                   quad: QuadratureSpec | None = None) -> SeriesCoefficients:
    """C_r for r = 1..r_max by the requested route."""
    if method not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}, got {method!r}")
    if r_max < 1:
        raise ValueError(f"r_max must be >= 1, got {r_max}")
    values: list[tuple[int, float]] = []
    if method == "trace_finite":
        if N is None:
            raise ValueError("trace_finite needs the torus size N")
        values = [(r, cr_finite(coin, N, r)) for r in range(1, r_max + 1)]
    elif method == "quad_limit":
        values = [(r, cr_limit(coin, r, quad)) for r in range(1, r_max + 1)]
    elif method == "path_sum":
        traces = matrix_weight_traces(coin, r_max)
        values = [(r, traces[r].real) for r in range(1, r_max + 1)]
    else:
        if coin.kind != HADAMARD or coin.xi is None:
            raise ValueError("closed_form is available for the hadamard family only")
        for r in range(1, r_max + 1):
            val = 0.0 if r % 2 else cr_closed_1d_qw(coin.xi, r // 2, coin.shift_type)
            values.append((r, val))
    return SeriesCoefficients(repr(coin), tuple(values), method)
