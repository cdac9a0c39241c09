"""Mahler measures, hypergeometric series, and the special constants they hit.

The logarithmic Mahler measure of a nonzero Laurent polynomial f is the
average of log|f| over the unit torus,

    m(f) = integral over [0, 2*pi)^n of log|f(e^{i th_1}, ..., e^{i th_n})|

with the uniform measure.  Routes implemented here: midpoint torus quadrature
(any n), Jensen's formula through polynomial roots (n = 1), closed forms for
the families X -+ X^-1 + c, and the four-variable-free hypergeometric form of
m(X1 + X1^-1 + X2 + X2^-1 + c) for c > 4.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coins import F_TYPE, M_TYPE
from .errors import ComputationError
from .laurent import LaurentPolynomial, eval_on_nodes
from .quadrature import QuadratureSpec, grid_mean, refine_to_tol

__all__ = [
    "MahlerResult",
    "mahler_quadrature",
    "mahler_univariate",
    "mahler_closed_mtype",
    "mahler_closed_ftype",
    "mahler_walk_1d",
    "mahler_square_lattice",
    "hyper_pfq",
    "special_constants",
    "zeta_mahler",
    "log_cos_identity",
]

_SINGULAR_MIN = 1e-6


@dataclass(frozen=True)
class MahlerResult:
    """A Mahler measure value with its route tag and error bookkeeping.

    ``singular_on_torus`` is set when the minimum of |f| over the sampling
    grid drops below 1e-6 (quadrature) or a root sits that close to the unit
    circle (Jensen).
    """

    value: float
    method: str
    error_estimate: float
    singular_on_torus: bool


def _default_spec(n_vars: int) -> QuadratureSpec:
    # singular multivariate integrands converge algebraically, hence the
    # looser tolerances in higher dimension
    if n_vars == 1:
        return QuadratureSpec(512, 0.5, 1e-10, 10)
    if n_vars == 2:
        return QuadratureSpec(256, 0.5, 1e-8, 4)
    if n_vars == 3:
        return QuadratureSpec(64, 0.5, 1e-6, 2)
    return QuadratureSpec(16, 0.5, 1e-4, 2)


def _log_abs_block(poly: LaurentPolynomial):
    def fn(nodes):
        mags = np.abs(eval_on_nodes(poly, nodes))
        with np.errstate(divide="ignore"):
            return np.log(mags), float(mags.min()) if mags.size else None

    return fn


def mahler_quadrature(poly: LaurentPolynomial, quad: QuadratureSpec | None = None) -> MahlerResult:
    """Logarithmic Mahler measure by midpoint torus quadrature.

    Midpoint nodes keep the grid off lattice-aligned zeros; when |f| vanishes
    on the torus the log singularity is integrable but drops the convergence
    rate to algebraic, so univariate singular runs are Richardson-extrapolated
    against the observed 1/M error model.  Non-convergence is reported through
    ``error_estimate`` (it stays above the requested tolerance) rather than an
    exception.
    """
    spec = quad or _default_spec(poly.n_vars)
    fn = _log_abs_block(poly)
    d = poly.n_vars

    values: list[float] = []
    min_stat = math.inf
    points = max(1, spec.points_per_dim // 2)

    def evaluate(p):
        nonlocal min_stat
        mean, stat = grid_mean(fn, d, p, spec.node_shift)
        if stat is not None:
            min_stat = min(min_stat, stat)
        return mean.real

    values.append(evaluate(points))
    delta = math.inf
    for level in range(spec.max_refinements + 1):
        points *= 2
        values.append(evaluate(points))
        singular = min_stat < _SINGULAR_MIN
        if d == 1 and singular and len(values) >= 3:
            ext_now = 2.0 * values[-1] - values[-2]
            ext_prev = 2.0 * values[-2] - values[-3]
            delta = abs(ext_now - ext_prev)
        else:
            delta = abs(values[-1] - values[-2])
        if delta < spec.tol:
            break

    singular = min_stat < _SINGULAR_MIN
    if d == 1 and singular and len(values) >= 2:
        value = 2.0 * values[-1] - values[-2]
    else:
        value = values[-1]
    return MahlerResult(value, "quadrature", delta, singular)


def mahler_univariate(poly: LaurentPolynomial) -> MahlerResult:
    """Univariate Mahler measure through Jensen's formula.

    Multiplying by a power of X clears negative exponents without changing
    the measure; the roots of the resulting polynomial come from the balanced
    companion-matrix eigenvalue solve, and

        m(f) = log|leading coefficient| + sum_k log max(|root_k|, 1).
    """
    if poly.n_vars != 1:
        raise ValueError(f"jensen route needs one variable, got {poly.n_vars}")
    terms = poly.terms
    exps = sorted(e[0] for e in terms)
    low, high = exps[0], exps[-1]
    degree = high - low
    if degree == 0:
        only = abs(terms[(high,)])
        return MahlerResult(math.log(only), "jensen", 0.0, abs(only - 1.0) < _SINGULAR_MIN)
    coeffs = np.zeros(degree + 1, dtype=np.complex128)
    for (e,), c in terms.items():
        coeffs[high - e] = c
    try:
        roots = np.roots(coeffs)
    except np.linalg.LinAlgError as exc:
        raise ComputationError(f"root finding failed: {exc}") from exc
    moduli = np.abs(roots)
    near = np.abs(moduli - 1.0)
    if np.any(near < 1e-3):
        warnings.warn(
            f"{int(np.sum(near < 1e-3))} root(s) within 1e-3 of the unit circle; "
            "max(|root|, 1) is numerically delicate there",
            stacklevel=2,
        )
    value = math.log(abs(coeffs[0])) + float(np.sum(np.log(np.maximum(moduli, 1.0))))
    return MahlerResult(value, "jensen", degree * 5e-15, bool(np.any(near < _SINGULAR_MIN)))


def mahler_closed_mtype(c: float) -> float:
    """m(X - X^-1 + c) = log((|c| + sqrt(c^2 + 4)) / 2) for real c."""
    if not math.isfinite(c):
        raise ValueError(f"c must be finite, got {c}")
    return math.log((abs(c) + math.sqrt(c * c + 4.0)) / 2.0)


def mahler_closed_ftype(c: float) -> float:
    """m(X + X^-1 + c) = log((|c| + sqrt(c^2 - 4)) / 2) for real |c| >= 2."""
    if not math.isfinite(c) or abs(c) < 2.0:
        raise ValueError(f"the closed form needs |c| >= 2, got c={c}")
    return math.log((abs(c) + math.sqrt(c * c - 4.0)) / 2.0)


def mahler_walk_1d(xi: float, u: float, shift_type: str) -> float:
    """Mahler measure of the one-dimensional walk polynomial at parameter u.

    Substitutes c_m = sec(xi) (u - 1/u) into the m-type closed form (for
    -1 < u < 0), or c_f = -cosec(xi) (u + 1/u) into the f-type one (u < 0),
    and returns the simplified expression

        log( (u - 1/u + sqrt(u^2 + 2 cos 2xi + u^-2)) / (2 cos xi) )   [m]
        log( (-(u + 1/u) + sqrt(u^2 + 2 cos 2xi + u^-2)) / (2 sin xi) ) [f]

    asserting agreement with the direct closed form to 1e-12.
    """
    if not 0.0 < xi < math.pi / 2:
        raise ValueError(f"xi must lie strictly inside (0, pi/2), got {xi}")
    root = math.sqrt(u * u + 2.0 * math.cos(2.0 * xi) + u ** -2)
    if shift_type == M_TYPE:
        if not -1.0 < u < 0.0:
            raise ValueError(f"m-type needs -1 < u < 0, got u={u}")
        value = math.log((u - 1.0 / u + root) / (2.0 * math.cos(xi)))
        direct = mahler_closed_mtype((u - 1.0 / u) / math.cos(xi))
    elif shift_type == F_TYPE:
        if not u < 0.0:
            raise ValueError(f"f-type needs u < 0, got u={u}")
        value = math.log((-(u + 1.0 / u) + root) / (2.0 * math.sin(xi)))
        direct = mahler_closed_ftype(-(u + 1.0 / u) / math.sin(xi))
    else:
        raise ValueError(f"shift_type must be {M_TYPE!r} or {F_TYPE!r}")
    if abs(value - direct) >= 1e-12:
        raise ComputationError(
            f"substituted and direct closed forms disagree by {abs(value - direct):.3e}"
        )
    return value


def mahler_square_lattice(c: float) -> float:
    """m(X1 + X1^-1 + X2 + X2^-1 + c) for c > 4.

    Equals log c - (2/c^2) 4F3(3/2, 3/2, 1, 1; 2, 2, 2; 16/c^2).
    """
    if not c > 4.0:
        raise ValueError(f"the hypergeometric form needs c > 4, got c={c}")
    x = 16.0 / (c * c)
    return math.log(c) - (2.0 / (c * c)) * hyper_pfq([1.5, 1.5, 1.0, 1.0], [2.0, 2.0, 2.0], x)


_MAX_PFQ_TERMS = 500_000


def _nonpositive_int(a: float) -> bool:
    return a <= 0.0 and a == round(a)


def hyper_pfq(a: list[float], b: list[float], x: float) -> float:
    """Generalized hypergeometric series pFq(a; b; x).

    Terms follow the ratio t_{n+1}/t_n = x * prod(a_i + n) / (prod(b_j + n)
    (n + 1)); summation stops at relative term size 1e-16 or exactly when an
    upper parameter is a nonpositive integer (terminating polynomial case).
    """
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    x = float(x)
    terminating = any(_nonpositive_int(v) for v in a)
    if x != 0.0 and not terminating:
        if len(a) == len(b) + 1 and abs(x) >= 1.0:
            raise ValueError(f"series diverges: p = q+1 needs |x| < 1, got x={x}")
        if len(a) > len(b) + 1:
            raise ValueError("series diverges: p > q+1 with nonzero argument")
    term = 1.0
    total = 1.0
    n = 0
    while True:
        num = math.prod(v + n for v in a)
        if num == 0.0:
            break
        den = math.prod(v + n for v in b) * (n + 1)
        if den == 0.0:
            raise ValueError(f"lower parameter hits a nonpositive integer at n={n + 1}")
        term *= x * num / den
        total += term
        if abs(term) < 1e-16 * (abs(total) + 1e-300):
            break
        n += 1
        if n > _MAX_PFQ_TERMS:
            raise ComputationError(f"series did not converge within {_MAX_PFQ_TERMS} terms")
    return total


@lru_cache(maxsize=1)
def _constants() -> dict[str, float]:
    k = np.arange(100_000, dtype=np.float64)

    # L(chi_-3, 2): pair n = 3k+1 (+) with n = 3k+2 (-), Euler-Maclaurin tail
    pair = (3 * k + 1) ** -2 - (3 * k + 2) ** -2
    kk = float(len(k))
    tail = ((1.0 / (3 * kk + 1) - 1.0 / (3 * kk + 2)) / 3.0
            + ((3 * kk + 1) ** -2 - (3 * kk + 2) ** -2) / 2.0
            - (-6.0 * (3 * kk + 1) ** -3 + 6.0 * (3 * kk + 2) ** -3) / 12.0)
    l_chi3 = float(pair.sum()) + tail

    # zeta(3): direct series plus tail corrections from n = N+1
    n = np.arange(1, 100_001, dtype=np.float64)
    aa = float(len(n)) + 1.0
    tail = 1.0 / (2 * aa ** 2) + 1.0 / (2 * aa ** 3) + 1.0 / (4 * aa ** 4)
    zeta3 = float((n ** -3).sum()) + tail

    # Catalan constant: pair n = 2k (+) with n = 2k+1 (-)
    pair = (4 * k + 1) ** -2 - (4 * k + 3) ** -2
    tail = ((1.0 / (4 * kk + 1) - 1.0 / (4 * kk + 3)) / 4.0
            + ((4 * kk + 1) ** -2 - (4 * kk + 3) ** -2) / 2.0
            - (-8.0 * (4 * kk + 1) ** -3 + 8.0 * (4 * kk + 3) ** -3) / 12.0)
    catalan = float(pair.sum()) + tail

    return {"L_chi3_2": l_chi3, "zeta3": zeta3, "catalan_G": catalan}


def special_constants() -> dict[str, float]:
    """L(chi_-3, 2), zeta(3) and the Catalan constant, each to |error| < 1e-14.

    All three come from their defining series: the alternating ones summed in
    sign-paired couples, the tails closed with Euler-Maclaurin corrections.
    """
    return dict(_constants())


def zeta_mahler(poly: LaurentPolynomial, s: float, quad: QuadratureSpec | None = None) -> float:
    """Torus average of |f|^s (the zeta Mahler measure at real s)."""
    spec = quad or _default_spec(poly.n_vars)
    d = poly.n_vars

    def fn(nodes):
        return np.abs(eval_on_nodes(poly, nodes)) ** s, None

    def eval_at(points):
        mean, _ = grid_mean(fn, d, points, spec.node_shift)
        return mean.real

    res = refine_to_tol(eval_at, spec)
    if not res.converged:
        raise ComputationError(
            f"|f|^s quadrature did not converge (last delta {res.delta:.3e}); "
            f"s={s} may be too negative for the zero set of f"
        )
    return float(res.value)


def log_cos_identity(r: float) -> float:
    """Average of log(1 - r cos theta) over the circle: log((1 + sqrt(1 - r^2))/2).

    Valid for |r| <= 1; serves as the exact oracle for one-dimensional
    quadrature tests.
    """
    if abs(r) > 1.0:
        raise ValueError(f"|r| must be <= 1, got {r}")
    return math.log((1.0 + math.sqrt(1.0 - r * r)) / 2.0)
