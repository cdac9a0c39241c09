"""Cross-checks between walk zeta functions and Mahler measures.

Every verifier compares two computation paths that share no code beyond
complex arithmetic (a determinant quadrature against a Mahler decomposition,
a hypergeometric form against a torus integral, a finite-difference derivative
against an exact path-count series), so agreement at the stated tolerance is
evidence rather than tautology.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coins import F_TYPE, M_TYPE, SIMPLE_RW, build_coin, flip_flop
from .errors import ComputationError
from .laurent import LaurentPolynomial
from .mahler import (
    hyper_pfq,
    mahler_walk_1d,
    mahler_quadrature,
    special_constants,
)
from .quadrature import QuadratureSpec, grid_mean, refine_to_tol
from .walk import matrix_weight_traces
from .zeta import log_zeta, log_zeta_series

__all__ = [
    "CorrespondenceReport",
    "TransienceProbe",
    "verify_1d_qw",
    "verify_grover",
    "verify_rw",
    "stgf",
    "spanning_tree_constant",
    "transience_probe",
    "closed_walk_count",
    "return_probability",
    "central_binomial_weight",
    "green_series_estimate",
    "run_suite",
    "DEFAULT_TOLERANCES",
    "qw_validity_interval",
]


@dataclass(frozen=True)
class CorrespondenceReport:
    """Outcome of one identity check: both sides, their gap, and diagnostics."""

    identity_name: str
    lhs: float
    rhs: float
    abs_diff: float
    tolerance: float
    passed: bool
    inputs: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


def _report(name: str, lhs: float, rhs: float, tol: float,
            inputs: dict, diagnostics: dict) -> CorrespondenceReport:
    diff = abs(lhs - rhs)
    passed = math.isfinite(lhs) and math.isfinite(rhs) and diff <= tol
    return CorrespondenceReport(name, lhs, rhs, diff, tol, passed, inputs, diagnostics)


def qw_validity_interval(xi: float, shift_type: str) -> tuple[float, float]:
    """Open u-interval on which the one-dimensional walk identities hold."""
    if not 0.0 < xi < math.pi / 2:
        raise ValueError(f"xi must lie strictly inside (0, pi/2), got {xi}")
    if shift_type == M_TYPE:
        return (math.cos(xi) - math.sqrt(math.cos(xi) ** 2 + 1.0), 0.0)
    if shift_type == F_TYPE:
        return (-math.inf, 0.0)
    raise ValueError(f"shift_type must be {M_TYPE!r} or {F_TYPE!r}")


def _check_open_interval(u: float, lo: float, hi: float, label: str) -> None:
    if not lo < u < hi:
        raise ValueError(f"u={u} outside the open validity interval ({lo}, {hi}) for {label}")
    if min(u - lo, hi - u) < 1e-8:
        warnings.warn(f"u={u} within 1e-8 of the validity boundary; conditioning degrades",
                      stacklevel=3)


def _qw_closed_form(xi: float, u: float, shift_type: str) -> float:
    root = math.sqrt(1.0 + 2.0 * math.cos(2.0 * xi) * u * u + u ** 4)
    if shift_type == M_TYPE:
        return math.log((1.0 - u * u + root) / 2.0)
    return math.log((1.0 + u * u + root) / 2.0)


def verify_1d_qw(xi: float, u: float, shift_type: str,
                 quad: QuadratureSpec | None = None,
                 tol: float = 1e-9) -> CorrespondenceReport:
    """One-dimensional walk: determinant quadrature vs Mahler decomposition.

    lhs is the logarithmic zeta function computed by quadrature of the
    momentum determinant; rhs is log(-cos(xi) u) + m(X - X^-1 + c_m) for the
    moving shift (resp. the sin/f-type pair), with the Mahler measure from its
    own closed form.  The direct closed form of the zeta function rides along
    in the diagnostics.
    """
    lo, hi = qw_validity_interval(xi, shift_type)
    _check_open_interval(u, lo, hi, f"{shift_type}-type 1d walk")
    coin = build_coin("hadamard", 1, xi)
    if shift_type == F_TYPE:
        coin = flip_flop(coin)
    spec = quad or QuadratureSpec(4096, 0.5, 1e-12, 0)
    lhs = log_zeta(coin, u, spec)
    mahler = mahler_walk_1d(xi, u, shift_type)
    prefactor = -math.cos(xi) * u if shift_type == M_TYPE else -math.sin(xi) * u
    rhs = math.log(prefactor) + mahler
    closed = _qw_closed_form(xi, u, shift_type)
    return _report(
        f"logzeta vs mahler: 1d qw ({shift_type})",
        lhs, rhs, tol,
        {"xi": xi, "u": u, "shift_type": shift_type},
        {
            "closed_form": closed,
            "lhs_minus_closed": lhs - closed,
            "rhs_minus_closed": rhs - closed,
            "mahler_term": mahler,
            "grid": spec.points_per_dim,
        },
    )


def _scalar_log_mean(d: int, spec: QuadratureSpec, transform) -> float:
    """Refined torus average of log(transform(sum_j cos theta_j))."""

    def eval_at(points):
        def fn(nodes):
            return np.log(transform(np.sum(np.cos(nodes), axis=1))), None

        mean, _ = grid_mean(fn, d, points, spec.node_shift)
        return mean.real

    res = refine_to_tol(eval_at, spec)
    if not res.converged:
        raise ComputationError(
            f"scalar quadrature did not converge (last delta {res.delta:.3e})"
        )
    return float(res.value)


def _grover_spec(d: int) -> QuadratureSpec:
    return {1: QuadratureSpec(2048, 0.5, 1e-11, 1),
            2: QuadratureSpec(256, 0.5, 1e-9, 2),
            3: QuadratureSpec(128, 0.5, 1e-7, 1)}.get(d, QuadratureSpec(32, 0.5, 1e-6, 2))


def _lattice_polynomial(d: int, constant: float) -> LaurentPolynomial:
    """sum_j (X_j + X_j^-1) + constant."""
    terms: dict[tuple[int, ...], complex] = {}
    for j in range(d):
        up = tuple(1 if k == j else 0 for k in range(d))
        dn = tuple(-1 if k == j else 0 for k in range(d))
        terms[up] = 1.0
        terms[dn] = 1.0
    terms[(0,) * d] = constant
    return LaurentPolynomial(d, terms)


def verify_grover(d: int, u: float,
                  quad: QuadratureSpec | None = None,
                  tol: float | None = None) -> CorrespondenceReport:
    """Flip-flop Grover walk in d dimensions: zeta quadrature vs Mahler form.

    lhs: (d-1) log(1-u^2) plus the torus average of
    log(1 - (2/d) u sum_j cos theta_j + u^2).  rhs replaces the integral by
    log(-u/d) + m(sum_j (X_j + X_j^-1) + c) with c = -d(u + 1/u), the Mahler
    measure taken by torus quadrature of log|f|.  For d = 2 the diagnostics
    also carry the hypergeometric form log(1-u^4) - (2/c^2) 4F3(.; 16/c^2).
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    _check_open_interval(u, -1.0, 0.0, "grover walk")
    if tol is None:
        tol = 1e-6 if d <= 2 else 1e-4
    spec = quad or _grover_spec(d)
    base = (d - 1) * math.log(1.0 - u * u)
    lhs = base + _scalar_log_mean(d, spec, lambda s: 1.0 - (2.0 * u / d) * s + u * u)
    c = -d * (u + 1.0 / u)
    poly = _lattice_polynomial(d, c)
    mahler = mahler_quadrature(poly, spec)
    rhs = base + math.log(-u / d) + mahler.value
    diagnostics = {
        "c": c,
        "mahler_value": mahler.value,
        "mahler_error_estimate": mahler.error_estimate,
        "singular_on_torus": mahler.singular_on_torus,
        "grid": spec.points_per_dim,
    }
    if d == 1:
        # the d = 1 coin degenerates to the bare swap; both sides vanish
        diagnostics["degenerate"] = True
        diagnostics["expected_value"] = 0.0
    if d == 2:
        hyper = math.log(1.0 - u ** 4) - (2.0 / c ** 2) * hyper_pfq(
            [1.5, 1.5, 1.0, 1.0], [2.0, 2.0, 2.0], 16.0 / c ** 2)
        diagnostics["hypergeometric_form"] = hyper
        diagnostics["lhs_minus_hyper"] = lhs - hyper
    return _report(
        f"logzeta vs mahler: grover (d={d})",
        lhs, rhs, tol,
        {"d": d, "u": u},
        diagnostics,
    )


def _rw_spec(d: int) -> QuadratureSpec:
    return {1: QuadratureSpec(2048, 0.5, 1e-11, 1),
            2: QuadratureSpec(256, 0.5, 1e-9, 2)}.get(d, QuadratureSpec(64, 0.5, 1e-7, 1))


def verify_rw(d: int, u: float,
              quad: QuadratureSpec | None = None,
              tol: float | None = None) -> CorrespondenceReport:
    """Symmetric random walk in d dimensions: zeta quadrature vs Mahler form.

    lhs: torus average of log(1 - (u/d) sum_j cos theta_j).  rhs:
    log(-u/2d) + m(sum_j (X_j + X_j^-1) - 2d/u).  For d = 1 the diagnostics
    carry the closed form log((1+sqrt(1-u^2))/2) and the central-binomial
    series; for d = 2 the 4F3 form and the squared-binomial series.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    _check_open_interval(u, -1.0, 0.0, "symmetric rw")
    if tol is None:
        tol = 1e-8 if d == 1 else (1e-7 if d == 2 else 1e-6)
    spec = quad or _rw_spec(d)
    lhs = _scalar_log_mean(d, spec, lambda s: 1.0 - (u / d) * s)
    c = -2.0 * d / u
    poly = _lattice_polynomial(d, c)
    mahler = mahler_quadrature(poly, spec)
    rhs = math.log(-u / (2.0 * d)) + mahler.value
    coin = build_coin(SIMPLE_RW, d)
    series_value, series_tail = log_zeta_series(coin, u, 60)
    diagnostics = {
        "c": c,
        "mahler_value": mahler.value,
        "grid": spec.points_per_dim,
        "series_value": series_value,
        "series_tail_bound": series_tail,
        "lhs_minus_series": lhs - series_value,
    }
    if d == 1:
        closed = math.log((1.0 + math.sqrt(1.0 - u * u)) / 2.0)
        diagnostics["closed_form"] = closed
        diagnostics["lhs_minus_closed"] = lhs - closed
    if d == 2:
        hyper = -(u * u / 8.0) * hyper_pfq([1.5, 1.5, 1.0, 1.0], [2.0, 2.0, 2.0], u * u)
        diagnostics["hypergeometric_form"] = hyper
        diagnostics["lhs_minus_hyper"] = lhs - hyper
    return _report(
        f"logzeta vs mahler: rw (d={d})",
        lhs, rhs, tol,
        {"d": d, "u": u},
        diagnostics,
    )


def _singular_log_mean(d: int, spec: QuadratureSpec, transform) -> float:
    """Like _scalar_log_mean but Richardson-extrapolated for the u = 1 zero.

    The integrand vanishes quadratically at Theta = 0, which midpoint grids
    straddle; the leading quadrature error is 1/M in one dimension and 1/M^2
    above, and the ladder extrapolates against that model.
    """
    order = 2.0 if d == 1 else 4.0

    def eval_at(points):
        def fn(nodes):
            return np.log(transform(np.sum(np.cos(nodes), axis=1))), None

        mean, _ = grid_mean(fn, d, points, spec.node_shift)
        return mean.real

    points = spec.points_per_dim
    values = [eval_at(max(2, points // 2)), eval_at(points)]
    exts = [(order * values[-1] - values[-2]) / (order - 1.0)]
    delta = math.inf
    for _ in range(spec.max_refinements):
        points *= 2
        values.append(eval_at(points))
        exts.append((order * values[-1] - values[-2]) / (order - 1.0))
        delta = abs(exts[-1] - exts[-2])
        if delta < spec.tol:
            break
    return exts[-1]


def stgf(d: int, u: float, quad: QuadratureSpec | None = None) -> float:
    """Spanning tree generating function of Z^d at 0 < u <= 1.

    Equals log(2d) plus the torus average of log(1/u - (1/d) sum_j cos),
    i.e. the random-walk logarithmic zeta shifted by log(2d) - log u.  The
    u = 1 endpoint has an integrable singularity at Theta = 0 and switches to
    the extrapolating ladder.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    if not 0.0 < u <= 1.0:
        raise ValueError(f"u must lie in (0, 1], got {u}")
    if u == 1.0:
        spec = quad or _tree_spec(d)
        integral = _singular_log_mean(d, spec, lambda s: 1.0 - s / d)
    else:
        spec = quad or _rw_spec(d)
        integral = _scalar_log_mean(d, spec, lambda s: 1.0 / u - s / d)
    return math.log(2 * d) + integral


def _tree_spec(d: int) -> QuadratureSpec:
    return {1: QuadratureSpec(4096, 0.5, 1e-9, 4),
            2: QuadratureSpec(1024, 0.5, 1e-7, 2),
            3: QuadratureSpec(128, 0.5, 1e-5, 1)}.get(d, QuadratureSpec(32, 0.5, 1e-4, 1))


def spanning_tree_constant(d: int, quad: QuadratureSpec | None = None) -> float:
    """Exponential growth rate of the spanning tree count of the N^d torus.

    log(2d) plus the torus average of log(1 - (1/d) sum_j cos theta_j).  The
    formula extends continuously to d = 1 where it evaluates to 0.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    spec = quad or _tree_spec(d)
    integral = _singular_log_mean(d, spec, lambda s: 1.0 - s / d)
    return math.log(2 * d) + integral


# --------------------------------------------------------------------------
# return probabilities by exact path counting

def closed_walk_count(d: int, n: int) -> int:
    """Number of length-n nearest-neighbour walks on Z^d that return to 0."""
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    if n % 2:
        return 0
    m = n // 2
    total = 0
    fact_n = math.factorial(n)

    def compositions(remaining, parts):
        if parts == 1:
            yield (remaining,)
            return
        for first in range(remaining + 1):
            for rest in compositions(remaining - first, parts - 1):
                yield (first,) + rest

    for comp in compositions(m, d):
        denom = 1
        for mj in comp:
            denom *= math.factorial(mj) ** 2
        total += fact_n // denom
    return total


def return_probability(d: int, n: int) -> Fraction:
    """Exact return probability of the symmetric walk at step n."""
    return Fraction(closed_walk_count(d, n), (2 * d) ** n)


def central_binomial_weight(n: int) -> Fraction:
    """C(2n, n) / 4^n as an exact rational."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return Fraction(math.comb(2 * n, n), 4 ** n)


def green_series_estimate(d: int, u: float, n_exact: int = 60) -> float:
    """sum_n P_n(0,0) u^n from exact path counts plus an asymptotic tail fit.

    Steps up to ``n_exact`` use exact counts; beyond that the even-step
    probabilities follow 2 (d / (4 pi m))^{d/2} up to a constant fitted at the
    last exact step, and the tail is summed numerically.
    """
    if not 0.0 < u < 1.0:
        raise ValueError(f"u must lie in (0, 1), got {u}")
    if n_exact < 2 or n_exact % 2:
        raise ValueError(f"n_exact must be a positive even number, got {n_exact}")
    total = 0.0
    for n in range(0, n_exact + 1, 2):
        total += float(return_probability(d, n)) * u ** n
    m0 = n_exact // 2
    asympt = lambda m: 2.0 * (d / (4.0 * math.pi * m)) ** (d / 2.0)
    scale = float(return_probability(d, n_exact)) / asympt(m0)
    # extend until u^{2m} is negligible
    m_stop = max(m0 + 1, int(math.ceil(-40.0 / math.log(u ** 2))) + m0)
    ms = np.arange(m0 + 1, m_stop + 1, dtype=np.float64)
    tail = float(np.sum(scale * 2.0 * (d / (4.0 * math.pi * ms)) ** (d / 2.0)
                        * u ** (2.0 * ms)))
    return total + tail


# --------------------------------------------------------------------------
# transience probe

_PROBE_H = 1e-5


@dataclass(frozen=True)
class TransienceProbe:
    """Boundedness diagnostics for u d/du of the random-walk log zeta."""

    dim_d: int
    u_values: tuple[float, ...]
    u_dlog: tuple[float, ...]
    green_values: tuple[float, ...]
    increments: tuple[float, ...]
    bounded: bool
    verdict: str
    extrapolated_green: float | None
    series_partial: tuple[float, ...]
    series_truncation_bound: tuple[float, ...]


def _rw_probe_points(d: int, u: float) -> int:
    # resolution set by the analyticity strip of log(1 - (u/d) sum cos);
    # the central difference amplifies the quadrature error by roughly
    # M * dstrip/du, which the extra margin in the 19 covers
    strip = math.acosh(d / u - (d - 1))
    points = int(math.ceil(19.0 / strip))
    size = 64
    while size < points:
        size *= 2
    return min(size, 4096 if d == 1 else (1024 if d == 2 else 256))


def _rw_log_zeta_scalar(d: int, u: float, points: int) -> float:
    def fn(nodes):
        return np.log(1.0 - (u / d) * np.sum(np.cos(nodes), axis=1)), None

    mean, _ = grid_mean(fn, d, points, 0.5)
    return mean.real


def transience_probe(d: int, u_values) -> TransienceProbe:
    """Estimate u d/du of the random-walk log zeta along u_values -> 1.

    Central differences with h = 1e-5 on the scalar random-walk integrand;
    the walk is judged recurrent (divergent derivative) unless the last two
    increments shrink by better than a factor of two.  For d = 3 the Green
    values are extrapolated in sqrt(1-u).  The partial return series
    sum_{n<=12} P_n u^n rides along as a diagnostic cross-check of
    1 - u dL/du, with its geometric truncation bound.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    us = tuple(float(u) for u in u_values)
    if len(us) < 3:
        raise ValueError("need at least three probe points")
    if any(b <= a for a, b in zip(us, us[1:])):
        raise ValueError("u values must be strictly ascending")
    if us[0] <= 0.0 or us[-1] >= 1.0:
        raise ValueError("u values must lie in (0, 1)")
    if us[-1] > 1.0 - 10 * _PROBE_H:
        raise ValueError(
            f"u={us[-1]} too close to 1 for stable differencing (limit {1.0 - 10 * _PROBE_H})"
        )
    derivs = []
    for u in us:
        points = _rw_probe_points(d, u)
        up = _rw_log_zeta_scalar(d, u + _PROBE_H, points)
        dn = _rw_log_zeta_scalar(d, u - _PROBE_H, points)
        derivs.append(u * (up - dn) / (2.0 * _PROBE_H))
    greens = [1.0 - g for g in derivs]
    increments = [abs(b - a) for a, b in zip(derivs, derivs[1:])]
    bounded = len(increments) >= 2 and increments[-1] * 2.0 < increments[-2]
    extrapolated = None
    if d == 3:
        w1, w2 = math.sqrt(1.0 - us[-2]), math.sqrt(1.0 - us[-1])
        g1, g2 = greens[-2], greens[-1]
        extrapolated = g2 + (g2 - g1) * w2 / (w1 - w2)
    traces = matrix_weight_traces(build_coin(SIMPLE_RW, d), 12)
    partials = []
    bounds = []
    for u in us:
        acc = 1.0
        for n in range(1, 13):
            acc += traces[n].real * u ** n
        partials.append(acc)
        bounds.append(u ** 13 / (1.0 - u))
    return TransienceProbe(
        dim_d=d,
        u_values=us,
        u_dlog=tuple(derivs),
        green_values=tuple(greens),
        increments=tuple(increments),
        bounded=bounded,
        verdict="bounded" if bounded else "divergent",
        extrapolated_green=extrapolated,
        series_partial=tuple(partials),
        series_truncation_bound=tuple(bounds),
    )


# --------------------------------------------------------------------------
# the verification suite

DEFAULT_TOLERANCES: dict[str, float] = {
    "qw1d": 1e-9,
    "grover_d1": 1e-6,
    "grover_d2": 1e-6,
    "grover_d3": 1e-4,
    "rw_d1": 1e-8,
    "rw_d2": 1e-7,
    "trees_lambda2": 1e-4,
    "stgf_shift": 1e-8,
    "transience": 2e-2,
    "smyth_2var": 1e-4,
    "smyth_3var": 1e-3,
    "catalan": 1e-5,
    "zeta3": 1e-13,
    "l_chi3": 1e-13,
}

_QW_XIS = (math.pi / 6, math.pi / 4, math.pi / 3)
_QW_F_US = (-0.1, -0.3, -0.5, -1.0, -2.0)
_GROVER_US = (-0.2, -0.5, -0.8)
_RW_US = (-0.2, -0.5, -0.8)
_STGF_US = (0.3, 0.6, 0.9)


def default_suite_params() -> list[tuple[str, dict]]:
    """The canonical (check kind, arguments) grid run by the suite."""
    params: list[tuple[str, dict]] = []
    for xi in _QW_XIS:
        lo, _ = qw_validity_interval(xi, M_TYPE)
        for i in range(1, 6):
            params.append(("qw1d", {"xi": xi, "u": lo * i / 6.0, "shift_type": M_TYPE}))
        for u in _QW_F_US:
            params.append(("qw1d", {"xi": xi, "u": u, "shift_type": F_TYPE}))
    for d in (1, 2, 3):
        for u in _GROVER_US:
            params.append((f"grover_d{d}", {"d": d, "u": u}))
    for d in (1, 2):
        for u in _RW_US:
            params.append((f"rw_d{d}", {"d": d, "u": u}))
    params.append(("trees_lambda2", {}))
    for d in (1, 2, 3):
        for u in _STGF_US:
            params.append(("stgf_shift", {"d": d, "u": u}))
    for d in (1, 2, 3):
        params.append(("transience", {"d": d}))
    params.append(("smyth_2var", {}))
    params.append(("smyth_3var", {}))
    params.append(("catalan", {}))
    params.append(("zeta3", {}))
    params.append(("l_chi3", {}))
    return params


def _check_stgf_shift(d: int, u: float, tol: float) -> CorrespondenceReport:
    coin = build_coin(SIMPLE_RW, d)
    spec = {1: QuadratureSpec(1024, 0.5, 1e-11, 1),
            2: QuadratureSpec(256, 0.5, 1e-11, 1),
            3: QuadratureSpec(64, 0.5, 1e-11, 1)}[d]
    lhs = stgf(d, u, spec)
    rhs = math.log(2 * d) - math.log(u) + log_zeta(coin, u, spec)
    return _report(
        f"stgf shift identity (d={d})", lhs, rhs, tol,
        {"d": d, "u": u}, {"grid": spec.points_per_dim},
    )


def _check_trees_lambda2(tol: float) -> CorrespondenceReport:
    lam = spanning_tree_constant(2)
    target = 4.0 * special_constants()["catalan_G"] / math.pi
    alt = stgf(2, 1.0)
    return _report(
        "spanning tree constant (d=2)", lam, target, tol,
        {"d": 2}, {"stgf_at_1": alt, "lambda_minus_stgf": lam - alt},
    )


def _check_transience(d: int, tol: float) -> CorrespondenceReport:
    probe = transience_probe(d, (0.9, 0.99, 0.999))
    diagnostics = {
        "verdict": probe.verdict,
        "u_dlog": probe.u_dlog,
        "increments": probe.increments,
    }
    if d == 3:
        series = green_series_estimate(3, 0.999)
        diagnostics["extrapolated_green"] = probe.extrapolated_green
        return _report(
            "transience: green function (d=3)",
            probe.green_values[-1], series, tol,
            {"d": d, "u": 0.999}, diagnostics,
        )
    expected = "divergent"
    lhs = 1.0 if probe.verdict == expected else 0.0
    return _report(
        f"transience: verdict (d={d})", lhs, 1.0, 0.5,
        {"d": d, "expected": expected}, diagnostics,
    )


def _check_smyth(n_vars: int, tol: float) -> CorrespondenceReport:
    consts = special_constants()
    if n_vars == 2:
        poly = _lattice_smyth(2)
        result = mahler_quadrature(poly, QuadratureSpec(2048, 0.5, 1e-6, 1))
        target = 3.0 * math.sqrt(3.0) / (4.0 * math.pi) * consts["L_chi3_2"]
        name = "smyth: m(X1+X2+1)"
    else:
        poly = _lattice_smyth(3)
        result = mahler_quadrature(poly, QuadratureSpec(128, 0.5, 1e-5, 1))
        target = 7.0 / (2.0 * math.pi ** 2) * consts["zeta3"]
        name = "smyth: m(X1+X2+X3+1)"
    return _report(
        name, result.value, target, tol, {"n_vars": n_vars},
        {"error_estimate": result.error_estimate,
         "singular_on_torus": result.singular_on_torus},
    )


def _lattice_smyth(n: int) -> LaurentPolynomial:
    terms = {tuple(1 if k == j else 0 for k in range(n)): 1.0 for j in range(n)}
    terms[(0,) * n] = 1.0
    return LaurentPolynomial(n, terms)


_REFERENCE_CONSTANTS = {
    # independently published decimal expansions
    "zeta3": ("zeta(3)", 1.2020569031595943, "zeta3"),
    "l_chi3": ("L(chi_-3, 2)", 0.7813024128964864, "L_chi3_2"),
    "catalan": ("catalan constant (5-digit display)", 0.91596, "catalan_G"),
}


def _check_constant(key: str, tol: float) -> CorrespondenceReport:
    label, reference, field_name = _REFERENCE_CONSTANTS[key]
    value = special_constants()[field_name]
    return _report(f"constants: {label}", value, reference, tol, {}, {})


def run_suite(tolerances: dict[str, float] | None = None,
              params: list[tuple[str, dict]] | None = None) -> list[CorrespondenceReport]:
    """Run every identity check over its canonical parameter grid.

    ``tolerances`` overrides entries of ``DEFAULT_TOLERANCES``; ``params``
    replaces the canonical grid (an empty list yields an empty report list).
    Failures are reported, never raised.  Reports come back sorted by identity
    name and inputs.
    """
    tols = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tols)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        tols.update(tolerances)
    if params is None:
        params = default_suite_params()
    reports: list[CorrespondenceReport] = []
    for kind, args in params:
        if kind == "qw1d":
            reports.append(verify_1d_qw(tol=tols["qw1d"], **args))
        elif kind.startswith("grover_d"):
            reports.append(verify_grover(tol=tols[kind], **args))
        elif kind.startswith("rw_d"):
            reports.append(verify_rw(tol=tols[kind], **args))
        elif kind == "stgf_shift":
            reports.append(_check_stgf_shift(args["d"], args["u"], tols["stgf_shift"]))
        elif kind == "trees_lambda2":
            reports.append(_check_trees_lambda2(tols["trees_lambda2"]))
        elif kind == "transience":
            reports.append(_check_transience(args["d"], tols["transience"]))
        elif kind == "smyth_2var":
            reports.append(_check_smyth(2, tols["smyth_2var"]))
        elif kind == "smyth_3var":
            reports.append(_check_smyth(3, tols["smyth_3var"]))
        elif kind in _REFERENCE_CONSTANTS:
            reports.append(_check_constant(kind, tols[kind]))
        else:
            raise ValueError(f"unknown suite check {kind!r}")
    reports.sort(key=lambda rep: (rep.identity_name, sorted(rep.inputs.items())))
    return reports
