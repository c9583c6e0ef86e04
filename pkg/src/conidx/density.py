"""Natural density of index sets and the index of convergence of sequences.

The index of convergence of a sequence to a target A is the infimum over
eps > 0 of the lower density of the hit set {indices : value in A + B_eps}.
At desk scale both limits are replaced by estimates on a finite window:
densities become prefix ratios at a geometric checkpoint grid, and the
liminf/limsup pair becomes the min/max of the ratios over the tail half of
that grid (the early checkpoints only absorb transients).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


def default_checkpoints(n_max: int, count: int = 16) -> np.ndarray:
    """Geometric checkpoint grid from n_max/8 up to n_max."""
    if n_max < 2:
        raise ValueError("window must contain at least 2 indices")
    lo = max(2, n_max // 8)
    cps = np.unique(np.geomspace(lo, n_max, count).round().astype(int))
    return cps


# ---------------------------------------------------------------------------
# index sets and densities


@dataclass(frozen=True)
class IndexSet:
    """Subset of N or N^2 given by a pure membership predicate.

    The predicate must accept numpy integer arrays (one per dimension,
    broadcastable) and return a boolean array.
    """

    dim: int
    membership: Callable[..., np.ndarray]
    listing: tuple | None = None

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("only dimensions 1 and 2 are supported")

    @classmethod
    def from_predicate(cls, dim: int, fn: Callable[..., np.ndarray]) -> "IndexSet":
        return cls(dim=dim, membership=fn)

    @classmethod
    def from_listing(cls, dim: int, points: Sequence) -> "IndexSet":
        pts = sorted(points)
        if dim == 1:
            members = frozenset(int(p) for p in pts)

            def fn(n):
                return np.isin(n, np.fromiter(members, dtype=int))
        else:
            members = frozenset((int(a), int(b)) for a, b in pts)

            def fn(n, m):
                n, m = np.broadcast_arrays(n, m)
                flat = np.array([(a, b) in members for a, b in zip(n.ravel(), m.ravel())])
                return flat.reshape(n.shape)

        return cls(dim=dim, membership=fn, listing=tuple(pts))

    def complement(self) -> "IndexSet":
        fn = self.membership
        return IndexSet(dim=self.dim, membership=lambda *idx: ~np.asarray(fn(*idx), dtype=bool))

    def count_prefix(self, n: int) -> int:
        return count_prefix(self, n)


def _mask_2d(index_set: IndexSet, n: int) -> np.ndarray:
    idx = np.arange(1, n + 1)
    raw = np.asarray(index_set.membership(idx[:, None], idx[None, :]), dtype=bool)
    return np.broadcast_to(raw, (n, n))


def count_prefix(index_set: IndexSet, n: int) -> int:
    """|K intersect {1..n}^dim|, exact."""
    if n < 1:
        raise ValueError("prefix size must be >= 1")
    if index_set.dim == 1:
        return int(np.count_nonzero(index_set.membership(np.arange(1, n + 1))))
    return int(np.count_nonzero(_mask_2d(index_set, n)))


@dataclass(frozen=True)
class DensityEstimate:
    """Prefix ratios at checkpoints plus tail-half liminf/limsup estimates."""

    checkpoints: tuple[int, ...]
    ratios: tuple[float, ...]
    lower_est: float
    upper_est: float

    @classmethod
    def from_counts(cls, checkpoints, counts, dim: int) -> "DensityEstimate":
        cps = np.asarray(checkpoints, dtype=int)
        ratios = np.asarray(counts, dtype=float) / cps.astype(float) ** dim
        tail = ratios[len(ratios) // 2 :]
        return cls(
            checkpoints=tuple(int(c) for c in cps),
            ratios=tuple(float(r) for r in ratios),
            lower_est=float(tail.min()),
            upper_est=float(tail.max()),
        )


def density_bounds(index_set: IndexSet, checkpoints) -> DensityEstimate:
    """Lower/upper density estimate of an index set over a checkpoint grid."""
    cps = np.asarray(checkpoints, dtype=int)
    if cps.size < 2:
        raise ValueError("need at least 2 checkpoints")
    if np.any(np.diff(cps) <= 0):
        raise ValueError("checkpoints must be strictly ascending")
    n_max = int(cps[-1])
    if index_set.dim == 1:
        mask = np.asarray(index_set.membership(np.arange(1, n_max + 1)), dtype=bool)
        counts = mask.cumsum()[cps - 1]
    else:
        pref = _mask_2d(index_set, n_max).cumsum(axis=0).cumsum(axis=1)
        counts = pref[cps - 1, cps - 1]
    return DensityEstimate.from_counts(cps, counts, index_set.dim)


def complement_identity_check(index_set: IndexSet, checkpoints) -> bool:
    """lower(K) + upper(K^c) = 1, checkpoint by checkpoint.

    The counts of K and K^c are complementary integers at every checkpoint;
    that identity is checked exactly.  The ratio identity then holds up to
    one rounding of each division, so it is checked to 1e-12.
    """
    cps = np.asarray(checkpoints, dtype=int)
    est = density_bounds(index_set, cps)
    est_c = density_bounds(index_set.complement(), cps)
    dim = index_set.dim
    for cp, r, rc in zip(cps, est.ratios, est_c.ratios):
        total = round(r * cp**dim) + round(rc * cp**dim)
        if total != cp**dim:
            return False
    return abs(est.lower_est + est_c.upper_est - 1.0) <= 1e-12


# ---------------------------------------------------------------------------
# targets


@dataclass(frozen=True)
class Target:
    """Convergence target: a value, a finite union of closed intervals, or +-inf."""

    kind: str
    value: float | None = None
    intervals: tuple[tuple[float, float], ...] | None = None

    @classmethod
    def point(cls, value: float) -> "Target":
        return cls(kind="value", value=float(value))

    @classmethod
    def interval_union(cls, intervals) -> "Target":
        ivs = sorted((float(a), float(b)) for a, b in intervals)
        for a, b in ivs:
            if b < a:
                raise ValueError(f"empty interval [{a}, {b}]")
        for (_, b1), (a2, _) in zip(ivs, ivs[1:]):
            if a2 <= b1:
                raise ValueError("target intervals must be disjoint")
        return cls(kind="set", intervals=tuple(ivs))

    @classmethod
    def plus_infinity(cls) -> "Target":
        return cls(kind="plus_inf")

    @classmethod
    def minus_infinity(cls) -> "Target":
        return cls(kind="minus_inf")

    def dilated(self, eps: float) -> tuple[tuple[float, float], ...]:
        """The eps-dilation A + (-eps, eps), merged into disjoint open intervals."""
        if self.kind == "value":
            return ((self.value - eps, self.value + eps),)
        if self.kind == "set":
            merged: list[list[float]] = []
            for a, b in self.intervals:
                lo, hi = a - eps, b + eps
                if merged and lo < merged[-1][1]:
                    merged[-1][1] = max(merged[-1][1], hi)
                else:
                    merged.append([lo, hi])
            return tuple((lo, hi) for lo, hi in merged)
        raise ValueError("infinite targets have no dilation; supply cutoffs instead")

    def describe(self) -> str:
        if self.kind == "value":
            return f"{self.value:g}"
        if self.kind == "set":
            return " u ".join(f"[{a:g},{b:g}]" for a, b in self.intervals)
        return "+inf" if self.kind == "plus_inf" else "-inf"


# ---------------------------------------------------------------------------
# sequence windows


@dataclass(frozen=True)
class SeqWindow:
    """Evaluated finite prefix of a single or double sequence.

    Double sequences are stored either as a full matrix or, when the
    sequence is a declared product x[n,m] = u[n]*v[m], as the two factor
    arrays; product-form counting then never materializes the matrix.
    """

    dim: int
    n_max: int
    values: np.ndarray | None = None
    factors: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_values_1d(cls, values) -> "SeqWindow":
        v = np.asarray(values, dtype=float)
        if v.ndim != 1:
            raise ValueError("expected a 1-d array")
        if not np.isfinite(v).all():
            raise ValueError("window values must be finite")
        return cls(dim=1, n_max=v.size, values=v)

    @classmethod
    def from_product(cls, u, v) -> "SeqWindow":
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("factor arrays must be 1-d of equal length")
        if not (np.isfinite(u).all() and np.isfinite(v).all()):
            raise ValueError("window values must be finite")
        return cls(dim=2, n_max=u.size, factors=(u, v))

    @classmethod
    def from_matrix(cls, matrix) -> "SeqWindow":
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("expected a square matrix")
        if not np.isfinite(m).all():
            raise ValueError("window values must be finite")
        return cls(dim=2, n_max=m.shape[0], values=m)

    def materialize(self) -> np.ndarray:
        if self.dim == 1 or self.values is not None:
            return self.values
        u, v = self.factors
        return u[:, None] * v[None, :]

    def hit_counts(self, intervals, checkpoints) -> np.ndarray:
        """Counts of indices with value in the open interval union, per checkpoint."""
        cps = np.asarray(checkpoints, dtype=int)
        if cps[-1] > self.n_max:
            raise ValueError(f"checkpoint {cps[-1]} exceeds window size {self.n_max}")
        if self.dim == 1:
            mask = _interval_mask(self.values, intervals)
            return mask.cumsum()[cps - 1]
        if self.factors is not None:
            return np.array(
                [_product_count(self.factors[0], self.factors[1], intervals, int(c)) for c in cps]
            )
        mask = _interval_mask(self.values, intervals)
        pref = mask.cumsum(axis=0).cumsum(axis=1)
        return pref[cps - 1, cps - 1]

    def cutoff_counts(self, cutoff: float, side: str, checkpoints) -> np.ndarray:
        """Counts of indices with value > cutoff ('above') or < cutoff ('below')."""
        cps = np.asarray(checkpoints, dtype=int)
        vals = self.materialize()
        mask = vals > cutoff if side == "above" else vals < cutoff
        if self.dim == 1:
            return mask.cumsum()[cps - 1]
        pref = mask.cumsum(axis=0).cumsum(axis=1)
        return pref[cps - 1, cps - 1]


def _interval_mask(values: np.ndarray, intervals) -> np.ndarray:
    mask = np.zeros(values.shape, dtype=bool)
    for lo, hi in intervals:
        mask |= (values > lo) & (values < hi)
    return mask


def _product_count(u: np.ndarray, v: np.ndarray, intervals, cp: int) -> int:
    """Pairs (n,m) <= cp with u[n]*v[m] in the open interval union.

    Solved factor-wise: sort v once, then each u[n] turns the product
    condition into an interval query on v answered by binary search.
    """
    uu = u[:cp]
    vs = np.sort(v[:cp])
    total = 0
    for lo, hi in intervals:
        pos = uu > 0.0
        neg = uu < 0.0
        if np.any(pos):
            a = lo / uu[pos]
            b = hi / uu[pos]
            total += int(
                (np.searchsorted(vs, b, "left") - np.searchsorted(vs, a, "right")).sum()
            )
        if np.any(neg):
            a = hi / uu[neg]
            b = lo / uu[neg]
            total += int(
                (np.searchsorted(vs, b, "left") - np.searchsorted(vs, a, "right")).sum()
            )
        n_zero = int(np.count_nonzero(uu == 0.0))
        if n_zero and lo < 0.0 < hi:
            total += n_zero * cp
    return total


# ---------------------------------------------------------------------------
# index reports


@dataclass
class IndexReport:
    """Estimated index of convergence to one target, with optional verdict."""

    target: Target
    epsilon: float | None
    estimate: DensityEstimate
    predicted: float | None = None
    predicted_is_lower_bound: bool = False
    tolerance: float | None = None
    verdict: str | None = None
    cutoffs: tuple[float, ...] | None = None
    notes: dict = field(default_factory=dict)

    def judge(self, predicted: float, tolerance: float, lower_bound: bool = False) -> "IndexReport":
        """Attach a theoretical value and a pass/fail verdict."""
        self.predicted = float(predicted)
        self.predicted_is_lower_bound = lower_bound
        self.tolerance = float(tolerance)
        if lower_bound:
            ok = self.estimate.lower_est >= predicted - tolerance
        else:
            ok = abs(self.estimate.lower_est - predicted) <= tolerance
        self.verdict = "pass" if ok else "fail"
        return self


def index_to_target(
    win: SeqWindow,
    target: Target,
    epsilon: float | None,
    checkpoints,
    cutoffs: Sequence[float] | None = None,
) -> IndexReport:
    """Density estimate of the hit set {indices : value in target + B_eps}.

    For +-inf targets the dilation is replaced by a caller-supplied cutoff
    grid; the reported estimate is the infimum over the grid, mirroring the
    supremum in the definition of the index.
    """
    cps = np.asarray(checkpoints, dtype=int)
    if target.kind in ("value", "set"):
        if epsilon is None or epsilon <= 0.0:
            raise ValueError("epsilon must be positive for value/set targets")
        counts = win.hit_counts(target.dilated(epsilon), cps)
        est = DensityEstimate.from_counts(cps, counts, win.dim)
        return IndexReport(target=target, epsilon=epsilon, estimate=est)
    if not cutoffs:
        raise ValueError("infinite targets require a cutoff grid")
    side = "above" if target.kind == "plus_inf" else "below"
    best: DensityEstimate | None = None
    for m_cut in cutoffs:
        counts = win.cutoff_counts(float(m_cut), side, cps)
        est = DensityEstimate.from_counts(cps, counts, win.dim)
        if best is None or est.lower_est < best.lower_est:
            best = est
    return IndexReport(target=target, epsilon=None, estimate=best,
                       cutoffs=tuple(float(m) for m in cutoffs))


def sum_rule_check(win: SeqWindow, targets: Sequence[Target], epsilon: float,
                   tol: float, checkpoints=None) -> bool:
    """Disjoint-target sum rule: the index estimates sum to at most 1 + tol.

    Raises if the eps-dilations overlap (the rule's hypothesis); also
    verifies the exact per-checkpoint identity sum(counts) <= cp^dim.
    """
    cps = default_checkpoints(win.n_max) if checkpoints is None else np.asarray(checkpoints)
    dilations = [t.dilated(epsilon) for t in targets]
    flat = sorted(iv for d in dilations for iv in d)
    for (_, b1), (a2, _) in zip(flat, flat[1:]):
        if a2 < b1:
            raise ValueError("dilated targets overlap; shrink epsilon")
    all_counts = [win.hit_counts(d, cps) for d in dilations]
    per_cp = np.sum(all_counts, axis=0)
    if np.any(per_cp > cps.astype(np.int64) ** win.dim):
        return False
    total = sum(
        DensityEstimate.from_counts(cps, c, win.dim).lower_est for c in all_counts
    )
    return total <= 1.0 + tol
