import math

import numpy as np
import pytest

from mahlerzeta import (
    DEFAULT_TOLERANCES,
    QuadratureSpec,
    build_coin,
    central_binomial_weight,
    closed_walk_count,
    green_series_estimate,
    log_zeta,
    qw_validity_interval,
    return_probability,
    run_suite,
    spanning_tree_constant,
    special_constants,
    stgf,
    transience_probe,
    verify_1d_qw,
    verify_grover,
    verify_rw,
)


# --------------------------------------------------------------------------
# one-dimensional walk

def test_qw1d_mtype_hadamard():
    rep = verify_1d_qw(math.pi / 4, -0.1, "m")
    assert rep.passed and rep.abs_diff < 1e-10
    expected = math.log((0.99 + math.sqrt(1.0001)) / 2)
    assert abs(rep.lhs - expected) < 1e-10


def test_qw1d_ftype_hadamard_at_minus_one():
    rep = verify_1d_qw(math.pi / 4, -1.0, "f")
    assert rep.passed
    assert abs(rep.lhs - math.log((2 + math.sqrt(2)) / 2)) < 1e-10


def test_qw1d_three_way_agreement():
    rep = verify_1d_qw(math.pi / 3, -0.2, "m")
    assert rep.abs_diff < 1e-9
    assert abs(rep.diagnostics["lhs_minus_closed"]) < 1e-9
    assert abs(rep.diagnostics["rhs_minus_closed"]) < 1e-12


def test_qw1d_closed_form_equivalence_grid():
    # the direct closed form and the prefactor-plus-mahler split agree pointwise
    for xi in np.linspace(0.15, math.pi / 2 - 0.15, 10):
        lo, _ = qw_validity_interval(float(xi), "m")
        for frac in np.linspace(0.08, 0.92, 10):
            rep = verify_1d_qw(float(xi), float(lo * frac), "m",
                               quad=QuadratureSpec(128, 0.5, 1e-9, 1))
            assert abs(rep.diagnostics["rhs_minus_closed"]) < 1e-12


def test_qw1d_range_validation():
    with pytest.raises(ValueError, match="validity interval"):
        verify_1d_qw(math.pi / 4, 0.1, "m")
    with pytest.raises(ValueError, match="validity interval"):
        verify_1d_qw(math.pi / 4, -0.9, "m")  # below cos(xi) - sqrt(cos^2+1)
    with pytest.raises(ValueError, match="validity interval"):
        verify_1d_qw(math.pi / 4, 0.5, "f")
    with pytest.raises(ValueError, match="xi"):
        verify_1d_qw(2.0, -0.1, "m")


def test_qw1d_boundary_conditioning_warning():
    lo, _ = qw_validity_interval(math.pi / 4, "m")
    with pytest.warns(UserWarning, match="conditioning"):
        verify_1d_qw(math.pi / 4, lo + 1e-9, "m", quad=QuadratureSpec(64, 0.5, 1e-6, 1))


# --------------------------------------------------------------------------
# Grover walk

def test_grover_d1_degenerate_zero():
    rep = verify_grover(1, -0.5)
    assert rep.passed
    assert rep.diagnostics["degenerate"]
    assert abs(rep.lhs) < 1e-10 and abs(rep.rhs) < 1e-6


def test_grover_d2_three_routes():
    rep = verify_grover(2, -0.5)
    assert rep.passed and rep.abs_diff < 1e-6
    assert rep.diagnostics["c"] == 5.0
    assert abs(rep.diagnostics["lhs_minus_hyper"]) < 1e-6


def test_grover_small_u_vanishes():
    rep = verify_grover(2, -1e-4)
    assert abs(rep.lhs) < 1e-3 and abs(rep.rhs) < 1e-3


def test_grover_matches_det_route_log_zeta():
    # the scalar product form against the generic determinant integral
    from mahlerzeta import flip_flop

    for d, spec in ((1, QuadratureSpec(512, 0.5, 1e-10, 1)),
                    (2, QuadratureSpec(64, 0.5, 1e-10, 2))):
        coin = flip_flop(build_coin("grover", d))
        u = -0.4
        det_route = log_zeta(coin, u, spec)
        rep = verify_grover(d, u)
        assert abs(det_route - rep.lhs) < 1e-8


def test_grover_range_validation():
    with pytest.raises(ValueError, match="validity"):
        verify_grover(2, 0.5)
    with pytest.raises(ValueError, match="positive integer"):
        verify_grover(0, -0.5)


# --------------------------------------------------------------------------
# random walk

def test_rw_d1_all_routes():
    u = -0.5
    rep = verify_rw(1, u)
    assert rep.passed and rep.abs_diff < 1e-8
    closed = math.log((1 + math.sqrt(1 - u * u)) / 2)
    assert abs(rep.diagnostics["lhs_minus_closed"]) < 1e-10
    assert abs(rep.lhs - closed) < 1e-10
    assert abs(rep.diagnostics["lhs_minus_series"]) <= rep.diagnostics["series_tail_bound"] + 1e-9


def test_rw_d2_hypergeometric():
    rep = verify_rw(2, -0.5)
    assert rep.passed and rep.abs_diff < 1e-7
    assert abs(rep.diagnostics["lhs_minus_hyper"]) < 1e-7


def test_rw_tiny_u_leading_order():
    rep = verify_rw(1, -1e-6)
    # leading term of the series: -B_2 u^2 / 2 = -u^2/4
    assert abs(rep.lhs + 1e-12 / 4) < 1e-13


def test_rw_matches_det_route_log_zeta():
    coin = build_coin("simple_rw", 2)
    u = -0.6
    det_route = log_zeta(coin, u, QuadratureSpec(64, 0.5, 1e-10, 2))
    rep = verify_rw(2, u)
    assert abs(det_route - rep.lhs) < 1e-9


def test_rw_range_validation():
    with pytest.raises(ValueError, match="validity"):
        verify_rw(1, -1.5)


# --------------------------------------------------------------------------
# spanning trees

def test_stgf_small_u_dominated_by_log():
    u = 1e-3
    assert abs(stgf(1, u) - math.log(2.0 / u)) < 1e-5


def test_stgf_shift_identity():
    for d in (1, 2):
        coin = build_coin("simple_rw", d)
        spec = QuadratureSpec(256, 0.5, 1e-11, 1)
        for u in (0.3, 0.9):
            lhs = stgf(d, u, spec)
            rhs = math.log(2 * d) - math.log(u) + log_zeta(coin, u, spec)
            assert abs(lhs - rhs) < 1e-10


def test_stgf_domain():
    with pytest.raises(ValueError, match="u must"):
        stgf(2, 0.0)
    with pytest.raises(ValueError, match="u must"):
        stgf(2, 1.5)


def test_lambda_d1_is_zero():
    assert abs(spanning_tree_constant(1)) < 1e-3


def test_lambda_d2_catalan():
    target = 4.0 * special_constants()["catalan_G"] / math.pi
    assert abs(spanning_tree_constant(2) - target) < 1e-4
    assert abs(stgf(2, 1.0) - target) < 1e-4


def test_lambda_d3_consistent_with_stgf():
    spec = QuadratureSpec(64, 0.5, 1e-4, 1)
    assert abs(spanning_tree_constant(3, spec) - stgf(3, 1.0, spec)) < 1e-3


def test_lambda_domain():
    with pytest.raises(ValueError, match="positive integer"):
        spanning_tree_constant(0)


# --------------------------------------------------------------------------
# path counting

def test_closed_walk_counts_hand_values():
    assert closed_walk_count(1, 2) == 2
    assert closed_walk_count(1, 4) == 6
    assert closed_walk_count(2, 2) == 4
    assert closed_walk_count(3, 2) == 6
    assert closed_walk_count(1, 3) == 0


def test_return_probability_binomial_bridge():
    for n in range(1, 7):
        assert return_probability(1, 2 * n) == central_binomial_weight(n)
        assert return_probability(2, 2 * n) == central_binomial_weight(n) ** 2


def test_green_series_d1_closed_form():
    for u in (0.3, 0.5, 0.7):
        assert abs(green_series_estimate(1, u) - 1 / math.sqrt(1 - u * u)) < 1e-5


# --------------------------------------------------------------------------
# transience

def test_probe_d1_divergent_with_exact_derivative():
    probe = transience_probe(1, (0.9, 0.99, 0.999))
    assert probe.verdict == "divergent" and not probe.bounded
    for u, got in zip(probe.u_values, probe.u_dlog):
        s = math.sqrt(1 - u * u)
        exact = -u * u / (s * (1 + s))
        assert abs(got - exact) < 1e-3


def test_probe_d2_divergent():
    probe = transience_probe(2, (0.9, 0.99, 0.999))
    assert probe.verdict == "divergent"


def test_probe_d3_bounded():
    probe = transience_probe(3, (0.9, 0.99, 0.999))
    assert probe.verdict == "bounded" and probe.bounded
    assert probe.extrapolated_green is not None
    series = green_series_estimate(3, 0.999)
    assert abs(probe.green_values[-1] - series) < 2e-2


def test_probe_series_cross_check_small_u():
    probe = transience_probe(1, (0.2, 0.3, 0.4))
    for green, partial, bound in zip(probe.green_values, probe.series_partial,
                                     probe.series_truncation_bound):
        assert abs(green - partial) <= bound + 1e-6


def test_probe_validation():
    with pytest.raises(ValueError, match="three"):
        transience_probe(1, (0.5, 0.9))
    with pytest.raises(ValueError, match="ascending"):
        transience_probe(1, (0.9, 0.5, 0.99))
    with pytest.raises(ValueError, match="too close to 1"):
        transience_probe(1, (0.9, 0.99, 0.99995))
    with pytest.raises(ValueError, match="lie in"):
        transience_probe(1, (-0.1, 0.5, 0.9))


# --------------------------------------------------------------------------
# suite plumbing

_QUICK_PARAMS = [
    ("qw1d", {"xi": math.pi / 4, "u": -0.2, "shift_type": "m"}),
    ("qw1d", {"xi": math.pi / 4, "u": -0.5, "shift_type": "f"}),
    ("rw_d1", {"d": 1, "u": -0.5}),
    ("catalan", {}),
]


def test_run_suite_quick_subset_passes():
    reports = run_suite(params=_QUICK_PARAMS)
    assert len(reports) == len(_QUICK_PARAMS)
    assert all(rep.passed for rep in reports)
    names = [rep.identity_name for rep in reports]
    assert names == sorted(names)
    for rep in reports:
        assert rep.passed == (rep.abs_diff <= rep.tolerance)


def test_run_suite_zero_tolerance_fails():
    tols = {key: 0.0 for key in DEFAULT_TOLERANCES}
    reports = run_suite(tolerances=tols, params=_QUICK_PARAMS)
    assert all(not rep.passed for rep in reports)


def test_run_suite_empty_params():
    assert run_suite(params=[]) == []


def test_run_suite_unknown_tolerance_key():
    with pytest.raises(ValueError, match="unknown tolerance"):
        run_suite(tolerances={"bogus": 1.0}, params=[])
