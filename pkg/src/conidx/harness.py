"""Cluster-prediction tables, operator windows, and index experiments.

An experiment pins an operator at a point of its jump cross, generates the
operator value sequence over a finite window, builds the table of predicted
cluster targets with their theoretical indices, and estimates the index of
convergence to each target.  Bivariate windows are kept in product form
(two factor arrays), which the tensor decompositions of both operator
families make exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import lagrange as lg
from . import shepard as sh
from .density import (
    IndexReport,
    SeqWindow,
    Target,
    default_checkpoints,
    index_to_target,
)
from .points import PointSpec
from .profiles import (
    Profile1D,
    Profile2D,
    lagrange_jump_profile,
    preimage_measure_1d,
    preimage_measure_2d,
    shepard_jump_profile,
)
from .stepfn import StepFn1D, StepFn2D

MERGE_TOL = 1e-9          # clusters with equal values merge into one entry
MIN_CLUSTER_GAP = 2e-3    # below this the eps-dilations cannot separate them
EPS_CAP = 0.05
PROFILE_EPS = 0.005       # default dilation for measure-profile targets

MAX_WINDOW_1D = 10_000
MAX_WINDOW_2D = 3_000


@dataclass(frozen=True)
class Prediction:
    """One predicted target with its theoretical index."""

    target: Target
    index: float
    lower_bound_only: bool = False
    label: str = ""


@dataclass
class PredictionTable:
    """Cluster predictions for one operator/point case, or a measure profile.

    Discrete cases carry Prediction entries; irrational cases carry the
    monotone profile whose preimage measure gives the index of any interval.
    """

    source: str
    predictions: list[Prediction] = field(default_factory=list)
    profile: Profile1D | Profile2D | None = None

    def __post_init__(self):
        total = sum(p.index for p in self.predictions if not p.lower_bound_only)
        if total > 1.0 + 1e-9:
            raise ValueError(f"predicted indices sum to {total} > 1")

    def point_values(self) -> list[float]:
        return [p.target.value for p in self.predictions if p.target.kind == "value"]


def _merged_point_predictions(values_with_indices, label_fn) -> list[Prediction]:
    """Merge clusters whose values coincide, summing their indices."""
    out: list[Prediction] = []
    for value, idx, label in values_with_indices:
        for i, existing in enumerate(out):
            if abs(existing.target.value - value) <= MERGE_TOL:
                out[i] = Prediction(
                    target=existing.target,
                    index=existing.index + idx,
                    label=f"{existing.label}={label}",
                )
                break
        else:
            out.append(Prediction(target=Target.point(value), index=idx, label=label_fn(label)))
    return out


def _check_separation(predictions: list[Prediction]) -> None:
    vals = sorted(p.target.value for p in predictions if p.target.kind == "value")
    for a, b in zip(vals, vals[1:]):
        if b - a < MIN_CLUSTER_GAP:
            raise ValueError(
                f"cluster values {a:.6g} and {b:.6g} are closer than {MIN_CLUSTER_GAP}; "
                "their dilations cannot be separated"
            )


def predict_lagrange_1d(spec: PointSpec, d: float) -> PredictionTable:
    """Clusters of L_n(jump step)(x0) at the jump.

    Rational angle p/q pi: the node-hit arm converges to d and each offset
    arm m/q to profile(m/q), all with index 1/q; equal values merge (so a d
    chosen on the profile doubles that cluster's index).  Irrational angle:
    the index of any interval A is the preimage measure under the profile.
    """
    spec.require_interior()
    if not spec.is_rational:
        return PredictionTable(source="lagrange-1d irrational",
                               profile=Profile1D.lagrange())
    q = spec.q
    entries = [(float(d), 1.0 / q, "d")]
    for m in range(1, q):
        entries.append((float(lagrange_jump_profile(m / q)), 1.0 / q, f"profile({m}/{q})"))
    preds = _merged_point_predictions(entries, lambda s: s)
    _check_separation(preds)
    return PredictionTable(source="lagrange-1d rational", predictions=preds)


def _univariate_factor_table(spec: PointSpec, profile_fn, profile: Profile1D,
                             source: str) -> PredictionTable:
    """Table for one oscillating tensor factor pinned at its jump.

    The factor step carries value 1 at the jump point, so the node-hit arm
    is the m = 0 cluster with value profile(0) = 1.
    """
    spec.require_interior()
    if not spec.is_rational:
        return PredictionTable(source=f"{source} irrational", profile=profile)
    q = spec.q
    entries = [(float(profile_fn(m / q)), 1.0 / q, f"profile({m}/{q})") for m in range(q)]
    preds = _merged_point_predictions(entries, lambda s: s)
    _check_separation(preds)
    return PredictionTable(source=f"{source} rational", predictions=preds)


def predict_lagrange_2d(spec_x: PointSpec, spec_y: PointSpec,
                        where: str = "corner") -> PredictionTable:
    """Clusters of L_{n,m}(quadrant step) on the jump cross.

    where: "edge_x" (x = x0, y above y0), "edge_y", or "corner".
    """
    if where == "edge_x":
        return _univariate_factor_table(spec_x, lagrange_jump_profile,
                                        Profile1D.lagrange(), "lagrange-2d edge_x")
    if where == "edge_y":
        return _univariate_factor_table(spec_y, lagrange_jump_profile,
                                        Profile1D.lagrange(), "lagrange-2d edge_y")
    if where != "corner":
        raise ValueError(f"unknown case {where!r}")
    spec_x.require_interior()
    spec_y.require_interior()
    if spec_x.is_rational and spec_y.is_rational:
        q1, q2 = spec_x.q, spec_y.q
        entries = []
        for m1 in range(q1):
            for m2 in range(q2):
                v = float(lagrange_jump_profile(m1 / q1) * lagrange_jump_profile(m2 / q2))
                entries.append((v, 1.0 / (q1 * q2), f"profile({m1}/{q1})*profile({m2}/{q2})"))
        preds = _merged_point_predictions(entries, lambda s: s)
        _check_separation(preds)
        return PredictionTable(source="lagrange-2d corner rational*rational",
                               predictions=preds)
    if spec_x.is_rational or spec_y.is_rational:
        rat = spec_x if spec_x.is_rational else spec_y
        q = rat.q
        preds = [
            Prediction(
                target=Target.interval_union([(0.0, float(lagrange_jump_profile(j / q)))]),
                index=1.0 / q,
                lower_bound_only=True,
                label=f"[0, profile({j}/{q})]",
            )
            for j in range(q)
        ]
        return PredictionTable(source="lagrange-2d corner rational*irrational",
                               predictions=preds)
    return PredictionTable(
        source="lagrange-2d corner irrational*irrational",
        profile=Profile2D(Profile1D.lagrange(), Profile1D.lagrange()),
    )


def predict_shepard_1d(s: float, spec: PointSpec) -> PredictionTable:
    """Clusters of S_n(closed left indicator)(x0) at the jump.

    For s > 1 the table mirrors the Lagrange shape with the power profile;
    s = 1 is a distinct regime whose only non-node cluster is 1/2.
    """
    spec.require_interior()
    if s > 1.0:
        return _univariate_factor_table(
            spec, lambda t: shepard_jump_profile(s, t), Profile1D.shepard(s),
            f"shepard-1d s={s:g}")
    if not spec.is_rational:
        return PredictionTable(source="shepard-1d s=1 irrational",
                               predictions=[Prediction(Target.point(0.5), 1.0, label="1/2")])
    q = spec.q
    preds = [
        Prediction(Target.point(1.0), 1.0 / q, label="node arm"),
        Prediction(Target.point(0.5), 1.0 - 1.0 / q, label="1/2"),
    ]
    return PredictionTable(source="shepard-1d s=1 rational", predictions=preds)


def predict_shepard_2d(s: float, spec_x: PointSpec, spec_y: PointSpec,
                       where: str = "corner") -> PredictionTable:
    """Clusters of S_{n,m,s}(closed rectangle step) on the jump cross."""
    if s < 1.0:
        raise ValueError("exponent s must be >= 1")
    if where == "edge_x":
        return predict_shepard_1d(s, spec_x)
    if where == "edge_y":
        return predict_shepard_1d(s, spec_y)
    if where != "corner":
        raise ValueError(f"unknown case {where!r}")
    spec_x.require_interior()
    spec_y.require_interior()
    both_rational = spec_x.is_rational and spec_y.is_rational
    if s > 1.0:
        if both_rational:
            q1, q2 = spec_x.q, spec_y.q
            entries = []
            for m1 in range(q1):
                for m2 in range(q2):
                    v = float(shepard_jump_profile(s, m1 / q1) * shepard_jump_profile(s, m2 / q2))
                    entries.append(
                        (v, 1.0 / (q1 * q2), f"profile_s({m1}/{q1})*profile_s({m2}/{q2})"))
            preds = _merged_point_predictions(entries, lambda t: t)
            _check_separation(preds)
            return PredictionTable(source="shepard-2d corner rational*rational",
                                   predictions=preds)
        if spec_x.is_rational or spec_y.is_rational:
            rat = spec_x if spec_x.is_rational else spec_y
            q = rat.q
            preds = [
                Prediction(
                    target=Target.interval_union(
                        [(0.0, float(shepard_jump_profile(s, j / q)))]),
                    index=1.0 / q,
                    lower_bound_only=True,
                    label=f"[0, profile_s({j}/{q})]",
                )
                for j in range(q)
            ]
            return PredictionTable(source="shepard-2d corner rational*irrational",
                                   predictions=preds)
        return PredictionTable(
            source="shepard-2d corner irrational*irrational",
            profile=Profile2D(Profile1D.shepard(s), Profile1D.shepard(s)),
        )
    # s = 1 discrete tables
    if both_rational:
        q1q2 = spec_x.q * spec_y.q
        preds = [
            Prediction(Target.point(0.5), 1.0 / q1q2, label="1/2"),
            Prediction(Target.point(0.25), 1.0 - 1.0 / q1q2, label="1/4"),
        ]
        return PredictionTable(source="shepard-2d corner s=1 rational*rational",
                               predictions=preds)
    if spec_x.is_rational or spec_y.is_rational:
        q = (spec_x if spec_x.is_rational else spec_y).q
        preds = [
            Prediction(Target.point(0.5), 1.0 / q, label="1/2"),
            Prediction(Target.point(0.25), 1.0 - 1.0 / q, label="1/4"),
        ]
        return PredictionTable(source="shepard-2d corner s=1 rational*irrational",
                               predictions=preds)
    return PredictionTable(source="shepard-2d corner s=1 irrational*irrational",
                           predictions=[Prediction(Target.point(0.25), 1.0, label="1/4")])


# ---------------------------------------------------------------------------
# experiments


@dataclass
class ExperimentSpec:
    """One index experiment: operator, jump specs, window, and tolerances."""

    operator: str
    spec_x: PointSpec
    spec_y: PointSpec | None = None
    d: float = 1.0
    s: float = 2.0
    window: int = 1000
    epsilon: float | None = None
    checkpoint_count: int = 16
    tolerance: float = 0.03
    eval_point: tuple[float, float] | None = None  # None: at the discontinuity
    targets: list[tuple[float, float]] | None = None
    cross_check: bool = False

    def __post_init__(self):
        if self.operator not in ("lagrange1d", "lagrange2d", "shepard1d", "shepard2d"):
            raise ValueError(f"unknown operator {self.operator!r}")
        bivariate = self.operator.endswith("2d")
        limit = MAX_WINDOW_2D if bivariate else MAX_WINDOW_1D
        if not 2 <= self.window <= limit:
            raise ValueError(f"window must lie in [2, {limit}] for {self.operator}")
        if bivariate and self.spec_y is None:
            raise ValueError(f"{self.operator} needs a second point spec")


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    table: PredictionTable
    epsilon: float | None
    reports: list[IndexReport]
    residual_mass: float | None
    window: SeqWindow

    @property
    def all_pass(self) -> bool:
        return all(r.verdict == "pass" for r in self.reports)


def _jump_xy(spec: ExperimentSpec) -> tuple[float, float | None]:
    if spec.operator.startswith("lagrange"):
        x0 = math.cos(math.pi * spec.spec_x.value)
        y0 = math.cos(math.pi * spec.spec_y.value) if spec.spec_y else None
    else:
        x0 = spec.spec_x.value
        y0 = spec.spec_y.value if spec.spec_y else None
    return x0, y0


def _classify_point(spec: ExperimentSpec) -> tuple[str, tuple[float, float]]:
    """Locate the evaluation point on the jump cross: corner or an edge."""
    x0, y0 = _jump_xy(spec)
    if spec.eval_point is None:
        return "corner", (x0, y0)
    px, py = spec.eval_point
    on_x = abs(px - x0) <= 1e-12
    on_y = abs(py - y0) <= 1e-12
    if on_x and on_y:
        return "corner", (x0, y0)
    lagr = spec.operator.startswith("lagrange")
    if on_x and ((lagr and py > y0) or (not lagr and py < y0)):
        return "edge_x", (x0, py)
    if on_y and ((lagr and px > x0) or (not lagr and px < x0)):
        return "edge_y", (px, y0)
    raise ValueError(f"evaluation point {spec.eval_point} does not lie on the jump cross")


def build_table(spec: ExperimentSpec, where: str = "corner") -> PredictionTable:
    if spec.operator == "lagrange1d":
        return predict_lagrange_1d(spec.spec_x, spec.d)
    if spec.operator == "shepard1d":
        return predict_shepard_1d(spec.s, spec.spec_x)
    if spec.operator == "lagrange2d":
        return predict_lagrange_2d(spec.spec_x, spec.spec_y, where)
    return predict_shepard_2d(spec.s, spec.spec_x, spec.spec_y, where)


def generate_window(spec: ExperimentSpec) -> SeqWindow:
    """Operator value sequence over the window; product form for bivariate."""
    n_max = spec.window
    where, (px, py) = _classify_point(spec) if spec.spec_y is not None else ("corner", (None, None))
    if spec.operator == "lagrange1d":
        return SeqWindow.from_values_1d(lg.jump_sequence(spec.spec_x, spec.d, n_max))
    if spec.operator == "shepard1d":
        return SeqWindow.from_values_1d(sh.step_sequence(spec.spec_x, spec.s, n_max))
    x0, y0 = _jump_xy(spec)
    if spec.operator == "lagrange2d":
        fx = StepFn1D.indicator_from(x0)
        fy = StepFn1D.indicator_from(y0)
        u = (lg.jump_sequence(spec.spec_x, 1.0, n_max, step=fx)
             if where in ("corner", "edge_x")
             else lg.step_sequence_at(fx, px, n_max))
        v = (lg.jump_sequence(spec.spec_y, 1.0, n_max, step=fy)
             if where in ("corner", "edge_y")
             else lg.step_sequence_at(fy, py, n_max))
        return SeqWindow.from_product(u, v)
    fx = StepFn1D.indicator_upto(x0)
    fy = StepFn1D.indicator_upto(y0)
    u = (sh.step_sequence(spec.spec_x, spec.s, n_max, step=fx)
         if where in ("corner", "edge_x")
         else sh.step_sequence_at(fx, spec.s, px, n_max))
    v = (sh.step_sequence(spec.spec_y, spec.s, n_max, step=fy)
         if where in ("corner", "edge_y")
         else sh.step_sequence_at(fy, spec.s, py, n_max))
    return SeqWindow.from_product(u, v)


def _auto_epsilon(table: PredictionTable) -> float:
    """Half the smallest gap between distinct predicted values, capped."""
    vals: list[float] = []
    for p in table.predictions:
        if p.target.kind == "value":
            vals.append(p.target.value)
        else:
            vals.extend(end for iv in p.target.intervals for end in iv)
    vals = sorted(set(vals))
    if len(vals) < 2:
        return EPS_CAP
    gap = min(b - a for a, b in zip(vals, vals[1:]) if b > a)
    return min(gap / 2.0, EPS_CAP)


def _cross_check_window(spec: ExperimentSpec, win: SeqWindow,
                        eval_xy: tuple[float, float]) -> None:
    """Spot-check the product decomposition against the full double sum."""
    px, py = eval_xy
    u, v = win.factors
    for n in np.unique(np.geomspace(2, min(spec.window, 200), 5).astype(int)):
        n = int(n)
        x0, y0 = _jump_xy(spec)
        if spec.operator == "lagrange2d":
            h = StepFn2D.upper_right(x0, y0)
            direct = lg.lagrange_eval_2d(h, n, n, px, py, cross_check=True)
        else:
            h = StepFn2D.lower_left(x0, y0)
            direct = sh.shepard_eval_2d(h, sh.ShepardParams(spec.s, n),
                                        sh.ShepardParams(spec.s, n), px, py,
                                        cross_check=True)
        prod = u[n - 1] * v[n - 1]
        if abs(direct - prod) > 1e-9:
            raise AssertionError(
                f"window factor product at n=m={n} is {prod!r}, double sum {direct!r}")


def run_index_experiment(spec: ExperimentSpec,
                         window: SeqWindow | None = None) -> ExperimentResult:
    """Estimate the index of convergence for every predicted target.

    The dilation half-width defaults to half the minimum inter-cluster gap
    (capped); measure-profile cases use explicit interval targets compared
    against the profile preimage measure.  The residual mass is the window
    fraction hitting none of the dilated targets at the final checkpoint.
    A precomputed window (e.g. from the sequence cache) may be supplied.
    """
    where, eval_xy = (_classify_point(spec) if spec.spec_y is not None
                      else ("corner", _jump_xy(spec)))
    table = build_table(spec, where)
    if window is not None and window.n_max != spec.window:
        raise ValueError("supplied window size disagrees with the experiment spec")
    win = window if window is not None else generate_window(spec)
    if spec.cross_check and win.factors is not None:
        _cross_check_window(spec, win, eval_xy)
    cps = default_checkpoints(spec.window, spec.checkpoint_count)
    reports: list[IndexReport] = []
    if table.profile is not None:
        if not spec.targets:
            raise ValueError("irrational case: supply interval targets to measure")
        eps = spec.epsilon if spec.epsilon is not None else PROFILE_EPS
        for a, b in spec.targets:
            target = Target.interval_union([(a, b)])
            rep = index_to_target(win, target, eps, cps)
            if isinstance(table.profile, Profile2D):
                predicted = preimage_measure_2d(table.profile, [(a, b)])
            else:
                predicted = preimage_measure_1d(table.profile, [(a, b)])
            rep.judge(predicted, spec.tolerance)
            rep.notes["kind"] = "preimage-measure"
            reports.append(rep)
        return ExperimentResult(spec=spec, table=table, epsilon=eps,
                                reports=reports, residual_mass=None, window=win)
    if spec.targets:
        raise ValueError("interval targets apply only to measure-profile "
                         "(irrational) cases; this case predicts discrete clusters")
    eps = spec.epsilon if spec.epsilon is not None else _auto_epsilon(table)
    dilated_union: list[tuple[float, float]] = []
    for pred in table.predictions:
        rep = index_to_target(win, pred.target, eps, cps)
        rep.judge(pred.index, spec.tolerance, lower_bound=pred.lower_bound_only)
        rep.notes["label"] = pred.label
        reports.append(rep)
        dilated_union.extend(pred.target.dilated(eps))
    merged = _merge_intervals(dilated_union)
    final_count = int(win.hit_counts(merged, [spec.window])[0])
    residual = 1.0 - final_count / spec.window**win.dim
    return ExperimentResult(spec=spec, table=table, epsilon=eps,
                            reports=reports, residual_mass=residual, window=win)


def _merge_intervals(intervals) -> list[tuple[float, float]]:
    ivs = sorted(intervals)
    out: list[list[float]] = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


# ---------------------------------------------------------------------------
# subsequence witnesses


@dataclass(frozen=True)
class WitnessReport:
    """Explicit subsequence realizing one cluster, with its tail behavior."""

    residue: int
    limit: float
    indices_checked: int
    tail_value: float
    tail_deviation: float
    density_estimate: float


def cluster_witness(spec: ExperimentSpec, m: int) -> WitnessReport:
    """Exhibit the subsequence along which the offset equals m/q.

    Works for univariate experiments with a rational point spec.  Returns
    the tail value of the operator along the subsequence, its deviation
    from the predicted cluster limit, and a density estimate of the index
    set within the window.
    """
    point = spec.spec_x
    if not point.is_rational:
        raise ValueError("witnesses require a rational point spec")
    q = point.q
    if spec.operator == "lagrange1d":
        gen = lg.offset_subsequence(point.p, q, m)
        indices = []
        k = next(gen)
        while k <= spec.window:
            indices.append(k)
            k = next(gen)
        if not indices:
            raise ValueError(f"window {spec.window} too small to reach the residue-{m} arm")
        limit = float(spec.d) if m == 0 else float(lagrange_jump_profile(m / q))
        values = lg.jump_sequence(point, spec.d, spec.window)
    elif spec.operator == "shepard1d":
        # offset residue: n*p = m (mod q)
        r = (m * pow(point.p, -1, q)) % q
        start = r if r >= 1 else q
        indices = list(range(start, spec.window + 1, q))
        if spec.s > 1.0:
            limit = 1.0 if m == 0 else float(shepard_jump_profile(spec.s, m / q))
        else:
            limit = 1.0 if m == 0 else 0.5
        values = sh.step_sequence(point, spec.s, spec.window)
    else:
        raise ValueError("witnesses are defined for univariate experiments")
    tail_value = float(values[indices[-1] - 1])
    return WitnessReport(
        residue=m,
        limit=limit,
        indices_checked=len(indices),
        tail_value=tail_value,
        tail_deviation=abs(tail_value - limit),
        density_estimate=len(indices) / spec.window,
    )


# ---------------------------------------------------------------------------
# sequence laws: rotations, products, uniform limits


def rotation_sequence(alpha: PointSpec | str, beta: float, n_max: int) -> SeqWindow:
    """x_n = frac(n*alpha + beta) for an irrational preset alpha.

    Equidistribution makes the index of convergence to any interval equal
    its length.
    """
    if isinstance(alpha, str):
        alpha = PointSpec.irrational(alpha)
    if alpha.is_rational:
        raise ValueError("rotation sequences require an irrational multiplier")
    if not 0.0 <= beta < 1.0:
        raise ValueError("shift beta must lie in [0, 1)")
    n = np.arange(1, n_max + 1, dtype=float)
    return SeqWindow.from_values_1d((n * alpha.value + beta) % 1.0)


def product_measure(a: float, b: float) -> float:
    """Plane measure of {(x,y) in [0,1)^2 : x*y in [a,b]}.

    The region under x*y <= t has area t - t*ln(t) (limit 0 at t = 0).
    """

    def under(t: float) -> float:
        if t <= 0.0:
            return 0.0
        if t >= 1.0:
            return 1.0
        return t - t * math.log(t)

    return under(b) - under(a)


def check_product_rule(alpha: PointSpec | str, gamma: PointSpec | str,
                       interval: tuple[float, float], n_max: int,
                       epsilon: float = 0.01, tolerance: float = 0.02) -> IndexReport:
    """Index of x_n * y_m for two rotations against the closed-form measure."""
    u = rotation_sequence(alpha, 0.0, n_max).values
    v = rotation_sequence(gamma, 0.0, n_max).values
    win = SeqWindow.from_product(u, v)
    a, b = interval
    target = Target.interval_union([(a, b)])
    rep = index_to_target(win, target, epsilon, default_checkpoints(n_max))
    rep.judge(product_measure(a, b), tolerance)
    rep.notes["kind"] = "product-rule"
    return rep


def check_uniform_limit_rule(n_max: int, interval: tuple[float, float] = (0.0, 0.5),
                             alpha: str = "sqrt2_minus_1", epsilon: float = 0.01,
                             tolerance: float = 0.02) -> IndexReport:
    """x_{n,m} = y_n + 1/m converges to y_n uniformly in n along all m.

    The index of the double sequence to any target must then be at least
    the index of y_n to it (the approximating subsequence has density 1).
    """
    y = rotation_sequence(alpha, 0.0, n_max).values
    cps = default_checkpoints(n_max)
    target = Target.interval_union([interval])
    rep_1d = index_to_target(SeqWindow.from_values_1d(y), target, epsilon, cps)
    m = np.arange(1, n_max + 1, dtype=float)
    matrix = y[:, None] + 1.0 / m[None, :]
    rep_2d = index_to_target(SeqWindow.from_matrix(matrix), target, epsilon, cps)
    rep_2d.judge(rep_1d.estimate.lower_est, tolerance, lower_bound=True)
    rep_2d.notes["kind"] = "uniform-limit-rule"
    rep_2d.notes["index_1d"] = rep_1d.estimate.lower_est
    return rep_2d


# ---------------------------------------------------------------------------
# uniform convergence away from the jump set


def _rect_distance_to_cross(rect, segs) -> float:
    """Distance from an axis-aligned rectangle to the jump cross segments."""

    def seg_dist(ax, ay, bx, by):
        # distance between rect and segment endpoint-sampled densely enough
        ts = np.linspace(0.0, 1.0, 129)
        sx = ax + ts * (bx - ax)
        sy = ay + ts * (by - ay)
        dx = np.maximum(np.maximum(rect[0] - sx, sx - rect[1]), 0.0)
        dy = np.maximum(np.maximum(rect[2] - sy, sy - rect[3]), 0.0)
        return float(np.hypot(dx, dy).min())

    return min(seg_dist(*s) for s in segs)


def uniform_convergence_scan(spec: ExperimentSpec, regions, n_list,
                             grid: int = 32, min_distance: float = 0.1):
    """Sup of |operator - step| over grids on regions avoiding the jump set.

    1-d regions are intervals (a, b); 2-d regions are rectangles
    (x_lo, x_hi, y_lo, y_hi).  Returns one row per (region, n) with the sup
    error; regions closer than min_distance to the jump set are rejected.
    """
    x0, y0 = _jump_xy(spec)
    rows = []
    if spec.operator in ("lagrange1d", "shepard1d"):
        step = (StepFn1D.jump(x0, spec.d) if spec.operator == "lagrange1d"
                else StepFn1D.indicator_upto(x0))
        for region in regions:
            a, b = region
            if a <= x0 <= b or min(abs(a - x0), abs(b - x0)) < min_distance:
                raise ValueError(f"region {region} is within {min_distance} of the jump")
            xs = np.linspace(a, b, 2 * grid)
            for n in n_list:
                if spec.operator == "lagrange1d":
                    vals = np.array([lg.lagrange_eval_1d(step, n, float(x)) for x in xs])
                else:
                    params = sh.ShepardParams(spec.s, n)
                    vals = np.array([sh.shepard_eval_1d(step, params, float(x)) for x in xs])
                sup = float(np.abs(vals - step(xs)).max())
                rows.append({"region": tuple(region), "n": int(n), "sup_error": sup})
        return rows
    # bivariate: jump cross segments
    if spec.operator == "lagrange2d":
        h = StepFn2D.upper_right(x0, y0)
        segs = [(x0, y0, x0, 1.0), (x0, y0, 1.0, y0)]
    else:
        h = StepFn2D.lower_left(x0, y0)
        segs = [(x0, 0.0, x0, y0), (0.0, y0, x0, y0)]
    for region in regions:
        if _rect_distance_to_cross(region, segs) < min_distance:
            raise ValueError(f"region {region} is within {min_distance} of the jump set")
        xs = np.linspace(region[0], region[1], grid)
        ys = np.linspace(region[2], region[3], grid)
        for n in n_list:
            if spec.operator == "lagrange2d":
                ux = np.array([lg.lagrange_eval_1d(h.fx, n, float(x)) for x in xs])
                vy = np.array([lg.lagrange_eval_1d(h.fy, n, float(y)) for y in ys])
            else:
                params = sh.ShepardParams(spec.s, n)
                ux = np.array([sh.shepard_eval_1d(h.fx, params, float(x)) for x in xs])
                vy = np.array([sh.shepard_eval_1d(h.fy, params, float(y)) for y in ys])
            approx = ux[:, None] * vy[None, :]
            exact = h.fx(xs)[:, None] * h.fy(ys)[None, :]
            sup = float(np.abs(approx - exact).max())
            rows.append({"region": tuple(region), "n": int(n), "sup_error": sup})
    return rows


def scan_decreasing(rows, slack: float = 0.2) -> bool:
    """True when, per region, sup errors never grow by more than the slack."""
    by_region: dict[tuple, list[tuple[int, float]]] = {}
    for row in rows:
        by_region.setdefault(row["region"], []).append((row["n"], row["sup_error"]))
    for seq in by_region.values():
        seq.sort()
        for (_, e1), (_, e2) in zip(seq, seq[1:]):
            if e2 > e1 * (1.0 + slack):
                return False
    return True
