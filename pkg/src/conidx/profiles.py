"""Limit profiles of the interpolation operators at a jump, and their measures.

Two special functions drive everything: the alternating Lerch series at s=1,
which yields the Lagrange jump profile

    profile(x) = sin(pi x)/pi * sum_{n>=0} (-1)^n / (n + x),   profile(0) = 1,

and the Hurwitz zeta function, which yields the Shepard jump profile

    profile_s(t) = zeta(s, t) / (zeta(s, t) + zeta(s, 1 - t)),  profile_s(0) = 1.

Both are continuous, strictly decreasing bijections of [0, 1) onto (0, 1],
which is what makes preimage measures of intervals computable by bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class SeriesTolerance:
    """Absolute-error budget for the series evaluators."""

    abs_tol: float = 1e-12
    max_terms: int = 1_000_000

    def __post_init__(self):
        if self.abs_tol < 1e-14:
            raise ValueError("abs_tol below 1e-14 is not honored by float64 summation")
        if self.max_terms < 64:
            raise ValueError("max_terms must be at least 64")


DEFAULT_TOL = SeriesTolerance()
BISECT_TOL = 1e-10


def lerch_j1(a, tol: SeriesTolerance = DEFAULT_TOL):
    """Alternating series sum_{n>=0} (-1)^n/(n+a) for 0 < a <= 1.

    Consecutive terms are folded into the positive series
    sum_k 1/((2k+a)(2k+a+1)), summed to M terms with an Euler-Maclaurin
    tail (integral + t(M)/2 - t'(M)/12).  The first neglected correction
    is ~ 0.27*(2M+a)^-5, which fixes M from the tolerance.
    """
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr <= 0.0) or np.any(a_arr > 1.0):
        raise ValueError("lerch_j1 requires 0 < a <= 1")
    M = int(math.ceil(0.5 * (0.27 / tol.abs_tol) ** 0.2)) + 8
    if M > tol.max_terms:
        raise ValueError(f"needs {M} paired terms, above max_terms={tol.max_terms}")
    k = np.arange(M, dtype=float)
    base = 2.0 * k + a_arr[..., None]
    partial = (1.0 / (base * (base + 1.0))).sum(axis=-1)
    x = 2.0 * M + a_arr
    integral = 0.5 * np.log1p(1.0 / x)
    t_m = 1.0 / (x * (x + 1.0))
    tp_m = -2.0 * (x**-2 - (x + 1.0) ** -2)
    out = partial + integral + 0.5 * t_m - tp_m / 12.0
    return float(out) if out.ndim == 0 else out


def lagrange_jump_profile(x, tol: SeriesTolerance = DEFAULT_TOL):
    """sin(pi x)/pi * lerch_j1(x) on (0,1), extended by 1 at x = 0."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0) or np.any(x_arr >= 1.0):
        raise ValueError("profile argument must lie in [0, 1)")
    # evaluate the series at a safe stand-in where x == 0, then overwrite
    safe = np.where(x_arr == 0.0, 0.5, x_arr)
    vals = np.sin(np.pi * safe) / np.pi * lerch_j1(safe, tol)
    out = np.where(x_arr == 0.0, 1.0, vals)
    return float(out) if out.ndim == 0 else out


def hurwitz_zeta(s: float, a, tol: SeriesTolerance = DEFAULT_TOL):
    """sum_{n>=0} (n+a)^-s for s > 1, a > 0.

    M explicit terms plus the Euler-Maclaurin tail
    (M+a)^(1-s)/(s-1) + (M+a)^-s/2 + s (M+a)^(-s-1)/12, with M chosen so
    the next correction term s(s+1)(s+2)(M+a)^(-s-3)/720 is below tol.
    """
    s = float(s)
    if s <= 1.0:
        raise ValueError("hurwitz_zeta requires s > 1 (no analytic continuation)")
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr <= 0.0):
        raise ValueError("hurwitz_zeta requires a > 0")
    coeff = s * (s + 1.0) * (s + 2.0) / 720.0
    M = int(math.ceil((coeff / tol.abs_tol) ** (1.0 / (s + 3.0)))) + 8
    if M > tol.max_terms:
        raise ValueError(f"needs {M} terms, above max_terms={tol.max_terms}")
    n = np.arange(M, dtype=float)
    partial = ((n + a_arr[..., None]) ** -s).sum(axis=-1)
    x = M + a_arr
    tail = x ** (1.0 - s) / (s - 1.0) + 0.5 * x**-s + s / 12.0 * x ** (-s - 1.0)
    out = partial + tail
    return float(out) if out.ndim == 0 else out


def shepard_jump_profile(s: float, t, tol: SeriesTolerance = DEFAULT_TOL):
    """zeta(s,t) / (zeta(s,t) + zeta(s,1-t)) on (0,1), extended by 1 at t = 0."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0) or np.any(t_arr >= 1.0):
        raise ValueError("profile argument must lie in [0, 1)")
    safe = np.where(t_arr == 0.0, 0.5, t_arr)
    num = hurwitz_zeta(s, safe, tol)
    den = num + hurwitz_zeta(s, 1.0 - safe, tol)
    out = np.where(t_arr == 0.0, 1.0, num / den)
    return float(out) if out.ndim == 0 else out


_MONOTONE_GRID = 1024


@dataclass(frozen=True)
class Profile1D:
    """Continuous, strictly monotone map of [0,1) used as a cluster profile.

    value_at_0 and limit_at_1 are the endpoint values in the monotone
    direction; monotonicity is verified on a fixed grid at construction.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    kind: str
    value_at_0: float
    limit_at_1: float

    def __post_init__(self):
        xs = np.linspace(0.0, 1.0 - 1e-9, _MONOTONE_GRID)
        vals = np.asarray(self.fn(xs), dtype=float)
        diffs = np.diff(vals)
        if not (np.all(diffs > 0.0) or np.all(diffs < 0.0)):
            raise ValueError(f"profile {self.kind!r} is not strictly monotone on the check grid")
        # declared endpoints drive preimage clamping, so they must match fn
        scale = max(1.0, abs(self.value_at_0), abs(self.limit_at_1))
        if abs(vals[0] - self.value_at_0) > 1e-9 * scale:
            raise ValueError(f"profile {self.kind!r}: value at 0 disagrees with declaration")
        if abs(vals[-1] - self.limit_at_1) > 1e-3 * scale:
            raise ValueError(f"profile {self.kind!r}: limit at 1 disagrees with declaration")

    @property
    def decreasing(self) -> bool:
        return self.value_at_0 > self.limit_at_1

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    @property
    def range_interval(self) -> tuple[float, float]:
        lo, hi = sorted((self.value_at_0, self.limit_at_1))
        return lo, hi

    @classmethod
    def lagrange(cls) -> "Profile1D":
        return cls(fn=lagrange_jump_profile, kind="lagrange", value_at_0=1.0, limit_at_1=0.0)

    @classmethod
    def shepard(cls, s: float) -> "Profile1D":
        return cls(
            fn=lambda x: shepard_jump_profile(s, x),
            kind=f"shepard(s={s:g})",
            value_at_0=1.0,
            limit_at_1=0.0,
        )

    @classmethod
    def identity(cls) -> "Profile1D":
        return cls(fn=lambda x: np.asarray(x, dtype=float), kind="identity",
                   value_at_0=0.0, limit_at_1=1.0)


def affine_jump_profile(left: float, right: float) -> Profile1D:
    """Profile left + (right-left)*profile(x) for a jump from left to right.

    At x = 0 it equals right (node-hit arm), and tends to left as x -> 1.
    A zero jump is rejected: the point is not a discontinuity then.
    """
    if left == right:
        raise ValueError("degenerate jump: left and right limits coincide")
    base = lagrange_jump_profile

    def fn(x):
        return left + (right - left) * np.asarray(base(x), dtype=float)

    return Profile1D(fn=fn, kind=f"affine({left:g},{right:g})",
                     value_at_0=right, limit_at_1=left)


def invert_monotone(profile: Profile1D, y, tol: float = BISECT_TOL):
    """Solve profile(x) = y on [0, 1) by bisection, vectorized over y.

    Values outside the profile range clamp to the matching endpoint, so
    interval preimages come out right without special-casing.
    """
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    lo = np.zeros_like(y_arr)
    hi = np.full_like(y_arr, 1.0 - 1e-15)
    steps = int(math.ceil(math.log2(1.0 / tol))) + 2
    sign = 1.0 if profile.decreasing else -1.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        go_right = sign * (np.asarray(profile.fn(mid)) - y_arr) > 0.0
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    out = 0.5 * (lo + hi)
    return float(out[0]) if np.ndim(y) == 0 else out


def _normalize_intervals(intervals) -> list[tuple[float, float]]:
    ivs = [(float(a), float(b)) for a, b in intervals]
    for a, b in ivs:
        if b < a:
            raise ValueError(f"empty interval [{a}, {b}]")
    ivs.sort()
    for (_, b1), (a2, _) in zip(ivs, ivs[1:]):
        if a2 < b1:
            raise ValueError("intervals must be disjoint")
    return ivs


def preimage_measure_1d(profile: Profile1D, intervals, tol: float = BISECT_TOL) -> float:
    """Total length of profile^-1(A) in [0,1) for A a disjoint interval union."""
    total = 0.0
    for a, b in _normalize_intervals(intervals):
        if profile.decreasing:
            x_lo, x_hi = invert_monotone(profile, b, tol), invert_monotone(profile, a, tol)
        else:
            x_lo, x_hi = invert_monotone(profile, a, tol), invert_monotone(profile, b, tol)
        total += max(0.0, x_hi - x_lo)
    return total


@dataclass(frozen=True)
class Profile2D:
    """Product profile value(x, y) = fx(x) * fy(y)."""

    fx: Profile1D
    fy: Profile1D

    def value(self, x, y):
        return np.asarray(self.fx(x)) * np.asarray(self.fy(y))


def preimage_measure_2d(profile: Profile2D, intervals, tol: float = BISECT_TOL,
                        slices: int = 4096) -> float:
    """Plane measure of {(x,y) in [0,1)^2 : fx(x)*fy(y) in A} by x-slicing.

    For each midpoint x of a uniform grid the y-section is an interval
    (both factors are monotone and positive), found by bisection on fy;
    section lengths are integrated with the midpoint rule.
    """
    ivs = _normalize_intervals(intervals)
    xs = (np.arange(slices) + 0.5) / slices
    cx = np.asarray(profile.fx(xs), dtype=float)
    if np.any(cx <= 0.0):
        raise ValueError("x-factor must be positive on (0,1) for slicing")
    total = 0.0
    for a, b in ivs:
        lo_y = np.asarray(a, dtype=float) / cx
        hi_y = np.asarray(b, dtype=float) / cx
        if profile.fy.decreasing:
            y_lo = invert_monotone(profile.fy, hi_y, tol)
            y_hi = invert_monotone(profile.fy, lo_y, tol)
        else:
            y_lo = invert_monotone(profile.fy, lo_y, tol)
            y_hi = invert_monotone(profile.fy, hi_y, tol)
        total += float(np.maximum(0.0, y_hi - y_lo).sum()) / slices
    return total
