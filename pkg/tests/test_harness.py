import math

import numpy as np
import pytest

from conidx.density import SeqWindow, Target, default_checkpoints, index_to_target
from conidx.harness import (
    ExperimentSpec,
    check_product_rule,
    check_uniform_limit_rule,
    cluster_witness,
    predict_lagrange_1d,
    predict_lagrange_2d,
    predict_shepard_1d,
    predict_shepard_2d,
    product_measure,
    rotation_sequence,
    run_index_experiment,
    scan_decreasing,
    uniform_convergence_scan,
)
from conidx.points import PointSpec
from conidx.profiles import Profile2D, lagrange_jump_profile, preimage_measure_2d

THIRD = PointSpec.rational(1, 3)
HALF = PointSpec.rational(1, 2)
IRR = PointSpec.irrational("inv_sqrt2")


# ---------------------------------------------------------------------------
# prediction tables


def test_lagrange_1d_table_rational():
    table = predict_lagrange_1d(THIRD, d=1.0)
    values = sorted(p.target.value for p in table.predictions)
    want = sorted([1.0, lagrange_jump_profile(1 / 3), lagrange_jump_profile(2 / 3)])
    assert values == pytest.approx(want, abs=1e-12)
    assert all(p.index == pytest.approx(1.0 / 3.0) for p in table.predictions)


def test_lagrange_1d_table_merges_matching_d():
    # d landing on a profile value doubles that cluster's index
    table = predict_lagrange_1d(HALF, d=0.5)
    assert len(table.predictions) == 1
    only = table.predictions[0]
    assert only.target.value == pytest.approx(0.5)
    assert only.index == pytest.approx(1.0)


def test_lagrange_1d_table_irrational_carries_profile():
    table = predict_lagrange_1d(IRR, d=1.0)
    assert table.profile is not None
    assert not table.predictions


def test_lagrange_2d_corner_table():
    table = predict_lagrange_2d(THIRD, HALF, "corner")
    assert len(table.predictions) == 6
    assert all(p.index == pytest.approx(1.0 / 6.0) for p in table.predictions)
    total = sum(p.index for p in table.predictions)
    assert total == pytest.approx(1.0)


def test_lagrange_2d_edge_table_has_unit_arm():
    table = predict_lagrange_2d(THIRD, HALF, "edge_x")
    values = sorted(p.target.value for p in table.predictions)
    assert values[-1] == pytest.approx(1.0)   # offset-zero arm: profile(0) = 1
    assert len(values) == 3


def test_lagrange_2d_mixed_corner_lower_bounds():
    table = predict_lagrange_2d(THIRD, IRR, "corner")
    assert len(table.predictions) == 3
    for pred in table.predictions:
        assert pred.lower_bound_only
        assert pred.target.kind == "set"
        (lo, hi), = pred.target.intervals
        assert lo == 0.0 and 0.0 < hi <= 1.0
        assert pred.index == pytest.approx(1.0 / 3.0)


def test_lagrange_2d_double_irrational_profile():
    table = predict_lagrange_2d(IRR, PointSpec.irrational("golden_frac"), "corner")
    assert isinstance(table.profile, Profile2D)


def test_shepard_tables_s1():
    edge = predict_shepard_1d(1.0, HALF)
    got = {p.target.value: p.index for p in edge.predictions}
    assert got == {1.0: pytest.approx(0.5), 0.5: pytest.approx(0.5)}
    corner = predict_shepard_2d(1.0, HALF, HALF, "corner")
    got = {p.target.value: p.index for p in corner.predictions}
    assert got[0.5] == pytest.approx(0.25)
    assert got[0.25] == pytest.approx(0.75)
    mixed = predict_shepard_2d(1.0, HALF, IRR, "corner")
    got = {p.target.value: p.index for p in mixed.predictions}
    assert got[0.5] == pytest.approx(0.5)
    both = predict_shepard_2d(1.0, IRR, IRR, "corner")
    assert both.predictions[0].target.value == 0.25
    assert both.predictions[0].index == 1.0


def test_shepard_tables_s2_mirror_lagrange_shape():
    table = predict_shepard_2d(2.0, THIRD, HALF, "corner")
    assert len(table.predictions) == 6
    assert all(p.index == pytest.approx(1.0 / 6.0) for p in table.predictions)
    edge = predict_shepard_2d(2.0, THIRD, HALF, "edge_y")
    assert {round(p.target.value, 6) for p in edge.predictions} == {0.5, 1.0}
    # an irrational edge coordinate turns the table into a measure profile
    irr_edge = predict_shepard_2d(2.0, THIRD, IRR, "edge_y")
    assert irr_edge.profile is not None and irr_edge.profile.kind.startswith("shepard")


def test_table_rejects_inseparable_clusters():
    # a jump value within 2e-3 of a profile cluster cannot be told apart
    bad_d = lagrange_jump_profile(1 / 3) + 1e-3
    with pytest.raises(ValueError, match="closer than"):
        predict_lagrange_1d(THIRD, d=bad_d)


def test_tables_reject_endpoint_specs():
    with pytest.raises(ValueError):
        predict_lagrange_1d(PointSpec.rational(0, 1), d=1.0)
    with pytest.raises(ValueError):
        predict_shepard_1d(2.0, PointSpec.rational(1, 1))


# ---------------------------------------------------------------------------
# experiments


def test_experiment_validation():
    with pytest.raises(ValueError):
        ExperimentSpec(operator="nope", spec_x=THIRD)
    with pytest.raises(ValueError):
        ExperimentSpec(operator="lagrange1d", spec_x=THIRD, window=20_000)
    with pytest.raises(ValueError):
        ExperimentSpec(operator="lagrange2d", spec_x=THIRD, spec_y=HALF, window=5000)
    with pytest.raises(ValueError):
        ExperimentSpec(operator="shepard2d", spec_x=HALF, window=100)


def test_eval_point_classification_errors():
    spec = ExperimentSpec(operator="shepard2d", spec_x=HALF, spec_y=HALF, s=2.0,
                          window=50, eval_point=(0.9, 0.9))
    with pytest.raises(ValueError, match="jump cross"):
        run_index_experiment(spec)


def test_lagrange_1d_experiment_passes():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=THIRD, d=1.0, window=1500,
                          tolerance=0.02)
    result = run_index_experiment(spec)
    assert result.all_pass
    assert result.epsilon == pytest.approx(0.05)
    assert result.residual_mass <= 0.01
    labels = {r.notes["label"] for r in result.reports}
    assert labels == {"d", "profile(1/3)", "profile(2/3)"}


def test_experiment_with_supplied_window_matches_cold_run():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=THIRD, d=1.0, window=600)
    cold = run_index_experiment(spec)
    warm = run_index_experiment(spec, window=cold.window)
    assert [r.estimate.ratios for r in warm.reports] == [
        r.estimate.ratios for r in cold.reports]
    with pytest.raises(ValueError):
        run_index_experiment(spec, window=SeqWindow.from_values_1d(np.zeros(10)))


def test_shepard_corner_s1_true_cluster_structure():
    """The product decomposition fixes the corner clusters: the univariate
    factors are exactly {1 on node hits, 1/2 otherwise} at x0 = 1/2, so the
    products give {1: 1/4, 1/2: 1/2, 1/4: 1/4}.  The tabulated corner
    prediction for s = 1 ({1/2: 1/4, 1/4: 3/4}) contradicts this; the
    experiment verdicts report that mismatch instead of hiding it."""
    spec = ExperimentSpec(operator="shepard2d", spec_x=HALF, spec_y=HALF, s=1.0,
                          window=800, tolerance=0.03)
    result = run_index_experiment(spec)
    by_value = {r.target.value: r for r in result.reports}
    assert by_value[0.5].estimate.lower_est == pytest.approx(0.5, abs=0.01)
    assert by_value[0.25].estimate.lower_est == pytest.approx(0.25, abs=0.01)
    assert by_value[0.5].verdict == "fail"
    assert by_value[0.25].verdict == "fail"
    # the unpredicted node-hit x node-hit cluster at 1 carries the rest
    win = result.window
    rep_one = index_to_target(win, Target.point(1.0), 0.05, default_checkpoints(800))
    assert rep_one.estimate.lower_est == pytest.approx(0.25, abs=0.01)
    assert result.residual_mass == pytest.approx(0.25, abs=0.01)


def test_shepard_mixed_corner_s1_is_log_slow():
    """With an irrational factor and s = 1 the factor deviates from 1/2 by
    roughly cot(pi t_m)/(4 ln m), a heavy-tailed coefficient over a log
    rate, so no desk-scale window resolves the predicted clusters.  The
    experiment must still build the predicted table and report honest,
    depressed estimates rather than erroring out."""
    spec = ExperimentSpec(operator="shepard2d", spec_x=HALF, spec_y=IRR, s=1.0,
                          window=1000, tolerance=0.03)
    result = run_index_experiment(spec)
    predicted = {r.target.value: r.predicted for r in result.reports}
    assert predicted == {0.5: pytest.approx(0.5), 0.25: pytest.approx(0.5)}
    for rep in result.reports:
        assert rep.estimate.lower_est < rep.predicted
        assert rep.verdict in ("pass", "fail")


def test_lagrange_mixed_corner_lower_bounds_pass():
    spec = ExperimentSpec(operator="lagrange2d", spec_x=THIRD, spec_y=IRR,
                          window=500, tolerance=0.02)
    result = run_index_experiment(spec)
    assert result.all_pass
    assert all(r.predicted_is_lower_bound for r in result.reports)


def test_lagrange_double_irrational_corner_measure():
    spec = ExperimentSpec(operator="lagrange2d", spec_x=IRR,
                          spec_y=PointSpec.irrational("golden_frac"),
                          window=800, tolerance=0.03, targets=[(0.2, 0.6)])
    result = run_index_experiment(spec)
    rep = result.reports[0]
    want = preimage_measure_2d(result.table.profile, [(0.2, 0.6)])
    assert rep.predicted == pytest.approx(want)
    assert rep.verdict == "pass"


def test_profile_case_requires_targets():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=IRR, window=300)
    with pytest.raises(ValueError, match="targets"):
        run_index_experiment(spec)


def test_discrete_case_rejects_targets():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=THIRD, window=300,
                          targets=[(0.2, 0.4)])
    with pytest.raises(ValueError, match="measure-profile"):
        run_index_experiment(spec)


def test_window_values_must_be_finite():
    with pytest.raises(ValueError, match="finite"):
        SeqWindow.from_values_1d(np.array([1.0, np.nan]))
    with pytest.raises(ValueError, match="finite"):
        SeqWindow.from_product(np.array([1.0, np.inf]), np.array([1.0, 2.0]))


def test_cross_check_mode_runs():
    spec = ExperimentSpec(operator="shepard2d", spec_x=HALF, spec_y=HALF, s=2.0,
                          window=120, cross_check=True)
    result = run_index_experiment(spec)
    assert len(result.reports) >= 2


# ---------------------------------------------------------------------------
# witnesses


def test_lagrange_witnesses():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=THIRD, d=1.0, window=2000)
    for m in range(3):
        wit = cluster_witness(spec, m)
        assert wit.tail_deviation <= 5e-3
        assert wit.density_estimate >= 1.0 / 3.0 - 0.02


def test_shepard_witnesses():
    spec = ExperimentSpec(operator="shepard1d", spec_x=THIRD, s=2.0, window=2000)
    for m in range(3):
        wit = cluster_witness(spec, m)
        assert wit.tail_deviation <= 5e-3
        assert wit.density_estimate >= 1.0 / 3.0 - 0.02


def test_witness_requires_rational():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=IRR, window=100)
    with pytest.raises(ValueError):
        cluster_witness(spec, 0)


# ---------------------------------------------------------------------------
# rotations, products, uniform limits


def test_rotation_equidistribution():
    win = rotation_sequence("sqrt2_minus_1", 0.0, 5000)
    cps = default_checkpoints(5000)
    rep = index_to_target(win, Target.interval_union([(0.0, 0.5)]), 0.005, cps)
    assert rep.estimate.lower_est == pytest.approx(0.5, abs=0.02)
    # shift invariance
    win_b = rotation_sequence("sqrt2_minus_1", 0.37, 5000)
    rep_b = index_to_target(win_b, Target.interval_union([(0.0, 0.5)]), 0.005, cps)
    assert rep_b.estimate.lower_est == pytest.approx(rep.estimate.lower_est, abs=0.02)
    # full range
    rep_all = index_to_target(win, Target.interval_union([(0.0, 1.0)]), 0.005, cps)
    assert rep_all.estimate.lower_est == 1.0


def test_rotation_validation():
    with pytest.raises(ValueError):
        rotation_sequence(PointSpec.rational(1, 3), 0.0, 100)
    with pytest.raises(ValueError):
        rotation_sequence("inv_sqrt2", 1.2, 100)


def test_product_measure_closed_form():
    assert product_measure(0.0, 0.5) == pytest.approx((1.0 + math.log(2.0)) / 2.0)
    assert product_measure(0.0, 1.0) == 1.0
    assert product_measure(0.2, 0.2) == 0.0


def test_product_rule_check():
    rep = check_product_rule("sqrt2_minus_1", "golden_frac", (0.0, 0.5), 1500)
    assert rep.verdict == "pass"
    rep_full = check_product_rule("sqrt2_minus_1", "golden_frac", (0.0, 1.0), 800)
    assert rep_full.estimate.lower_est == 1.0


def test_uniform_limit_rule_check():
    rep = check_uniform_limit_rule(800)
    assert rep.verdict == "pass"


def test_uniform_limit_rule_degenerate_cases():
    # constant base sequence: both indices are 1
    n = 600
    y = np.full(n, 0.25)
    m = np.arange(1, n + 1, dtype=float)
    cps = default_checkpoints(n)
    target = Target.interval_union([(0.2, 0.3)])
    rep1 = index_to_target(SeqWindow.from_values_1d(y), target, 0.01, cps)
    rep2 = index_to_target(SeqWindow.from_matrix(y[:, None] + 1.0 / m[None, :]),
                           target, 0.01, cps)
    assert rep1.estimate.lower_est == 1.0
    assert rep2.estimate.lower_est >= 0.9
    # target disjoint from the range: both zero
    far = Target.interval_union([(5.0, 6.0)])
    assert index_to_target(SeqWindow.from_values_1d(y), far, 0.01, cps).estimate.upper_est == 0.0


# ---------------------------------------------------------------------------
# uniform convergence scans


def test_scan_lagrange_1d():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=THIRD, d=1.0, window=10)
    x0 = math.cos(math.pi / 3.0)
    rows = uniform_convergence_scan(spec, [(-1.0, x0 - 0.2), (x0 + 0.2, 1.0)],
                                    [250, 500, 1000])
    assert max(r["sup_error"] for r in rows if r["n"] == 1000) <= 0.05
    assert scan_decreasing(rows)


def test_scan_constant_step_zero_error():
    # a step jumping outside the scan region is reproduced up to rounding
    spec = ExperimentSpec(operator="shepard1d", spec_x=PointSpec.rational(9, 10),
                          s=2.0, window=10)
    rows = uniform_convergence_scan(spec, [(0.0, 0.5)], [50, 100])
    assert max(r["sup_error"] for r in rows) <= 0.02


def test_scan_rejects_regions_near_jump():
    spec = ExperimentSpec(operator="lagrange1d", spec_x=THIRD, d=1.0, window=10)
    with pytest.raises(ValueError):
        uniform_convergence_scan(spec, [(0.0, 1.0)], [100])
    spec2 = ExperimentSpec(operator="shepard2d", spec_x=HALF, spec_y=HALF, s=2.0, window=10)
    with pytest.raises(ValueError):
        uniform_convergence_scan(spec2, [(0.45, 1.0, 0.0, 1.0)], [100])


def test_scan_shepard_2d_decreases():
    spec = ExperimentSpec(operator="shepard2d", spec_x=HALF, spec_y=HALF, s=2.0, window=10)
    rows = uniform_convergence_scan(spec, [(0.7, 1.0, 0.0, 1.0)], [200, 400, 800])
    assert scan_decreasing(rows)
    assert max(r["sup_error"] for r in rows if r["n"] == 800) <= 0.01
