"""Lagrange interpolation at Chebyshev nodes of the second type.

Nodes are x[k] = cos((k-1) pi / (n-1)), k = 1..n, endpoints included.  The
fundamental polynomials are evaluated through the closed trigonometric form

    ell[k](cos t) = (-1)^k / ((n-1)(1 + [k=1] + [k=n])) *
                    sin((n-1) t) sin t / (cos t - cos t[k]),

with a short-circuit to the Kronecker value when the evaluation point
collides with a node (the quotient has a removable singularity there).

For a step function with jump at x0 = cos(t0), the value L_n h(x0) admits an
exact three-part rewrite: a boundary term, a partial alternating series whose
limit is the jump profile, and a bounded correction sum.  That rewrite is
implemented independently of the direct summation and serves as its oracle;
the fractional grid offset that drives it is computed in exact integer
arithmetic whenever the jump angle is a rational multiple of pi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .points import PointSpec
from .stepfn import StepFn1D, StepFn2D

# |x - node| below this times n counts as a node hit (removable singularity)
NODE_COLLISION = 1e-13


@dataclass(frozen=True)
class ChebGrid:
    """Chebyshev nodes of the second type on [-1, 1], endpoints included."""

    n: int
    angles: np.ndarray
    nodes: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 nodes")


def cheb_grid(n: int) -> ChebGrid:
    if n < 2:
        raise ValueError("need at least 2 nodes")
    k = np.arange(1, n + 1)
    angles = (k - 1) * (math.pi / (n - 1))
    return ChebGrid(n=n, angles=angles, nodes=np.cos(angles))


def _weights_all(grid: ChebGrid, x: float) -> np.ndarray:
    """All fundamental polynomial values ell[1..n](x) at once."""
    n = grid.n
    dist = np.abs(x - grid.nodes)
    j = int(np.argmin(dist))
    if dist[j] <= NODE_COLLISION * n:
        out = np.zeros(n)
        out[j] = 1.0
        return out
    theta = math.acos(min(1.0, max(-1.0, x)))
    k = np.arange(1, n + 1)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    fac = 1.0 + (k == 1) + (k == n)
    s = math.sin((n - 1) * theta) * math.sin(theta)
    return sign / ((n - 1) * fac) * s / (x - grid.nodes)


def fundamental_weight(grid: ChebGrid, k: int, x: float) -> float:
    """ell[n,k](x) for 1-based node index k."""
    if not 1 <= k <= grid.n:
        raise ValueError(f"node index {k} out of range 1..{grid.n}")
    return float(_weights_all(grid, x)[k - 1])


def _node_samples(f, grid: ChebGrid) -> np.ndarray:
    if isinstance(f, np.ndarray):
        if f.shape != (grid.n,):
            raise ValueError("sample array length must equal the node count")
        return f
    return np.asarray(f(grid.nodes), dtype=float)


def lagrange_eval_1d(f, n: int, x: float) -> float:
    """L_n f(x); f may be a StepFn1D, a callable, or a node-sample array."""
    grid = cheb_grid(n)
    samples = _node_samples(f, grid)
    return float(_weights_all(grid, x) @ samples)


def lagrange_eval_2d(h: StepFn2D, n: int, m: int, x: float, y: float,
                     cross_check: bool = False) -> float:
    """L_{n,m} h(x, y) for a tensor step, via the product decomposition.

    With cross_check=True the full double sum over the node grid is also
    evaluated and must agree to 1e-9.
    """
    vx = lagrange_eval_1d(h.fx, n, x)
    vy = lagrange_eval_1d(h.fy, m, y)
    out = vx * vy
    if cross_check:
        gx, gy = cheb_grid(n), cheb_grid(m)
        wx, wy = _weights_all(gx, x), _weights_all(gy, y)
        hmat = h.fx(gx.nodes)[:, None] * h.fy(gy.nodes)[None, :]
        direct = float(wx @ hmat @ wy)
        if abs(direct - out) > 1e-9:
            raise AssertionError(
                f"product decomposition {out!r} disagrees with double sum {direct!r}"
            )
    return out


def lagrange_eval_cplus_h(F: Callable, jumps, n: int, x: float) -> float:
    """L_n(F + sum_k c_k * jump_k)(x) for a continuous part plus jump terms.

    jumps is a list of (x_k, d_k, c_k); by linearity the combined node
    samples are interpolated in one pass.
    """
    xs = [xk for xk, _, _ in jumps]
    if len(set(xs)) != len(xs):
        raise ValueError("jump abscissas must be distinct")
    grid = cheb_grid(n)
    samples = np.asarray(F(grid.nodes), dtype=float)
    for xk, dk, ck in jumps:
        samples = samples + ck * StepFn1D.jump(xk, dk)(grid.nodes)
    return float(_weights_all(grid, x) @ samples)


# ---------------------------------------------------------------------------
# grid offset and the decomposed jump-value oracle


def grid_offset(spec: PointSpec, n: int) -> float:
    """Fractional part of (n-1) * theta0/pi: the position of the jump angle
    within the node spacing.  Zero means the jump point is a node."""
    if n < 2:
        raise ValueError("grid offset needs n >= 2")
    return spec.multiple_mod1(n - 1)


def offset_subsequence(p: int, q: int, m: int) -> Iterator[int]:
    """Indices k = l + n*q + 1 (n >= 1) along which grid_offset == m/q exactly.

    l in {0..q-1} solves l*p = m (mod q); it exists and is unique because
    gcd(p, q) = 1.
    """
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    if not 0 <= m < q:
        raise ValueError("residue m must lie in 0..q-1")
    l = (m * pow(p, -1, q)) % q
    assert (l * p) % q == m
    n = 1
    while True:
        yield l + n * q + 1
        n += 1


def _correction_term(theta0: float, n: int, k0: int, sigma: float, m: np.ndarray) -> np.ndarray:
    """g_{t0}(t[k0-m]) = sin t0 / (cos t[k0-m] - cos t0) - (n-1)/(pi (sigma+m)).

    cos t - cos t0 is expanded as a product of sines, with the half-gap
    (t0 - t)/2 = pi (sigma+m) / (2(n-1)) formed without subtraction; the
    direct difference cancels catastrophically when the node is close.
    """
    t_node = (k0 - m - 1) * math.pi / (n - 1)
    half_gap = math.pi * (sigma + m) / (2.0 * (n - 1))
    denom = 2.0 * np.sin((theta0 + t_node) / 2.0) * np.sin(half_gap)
    return math.sin(theta0) / denom - (n - 1) / (math.pi * (sigma + m))


def eval_jump_decomposed(spec: PointSpec, d: float, n: int) -> float:
    """L_n h(x0) for the jump step, via the exact three-part rewrite.

    Returns d when the jump point is a node (offset zero).  Otherwise the
    value is boundary + profile partial sum + bounded correction, all driven
    by the grid offset; sin((n-1) t0) is reduced through the offset, so no
    large-argument sine is evaluated.
    """
    if n < 2:
        raise ValueError("decomposition needs n >= 2")
    sigma = grid_offset(spec, n)
    if sigma == 0.0:
        return float(d)
    theta0 = math.pi * spec.value
    k0 = int((n - 1) * spec.value) + 1 if not spec.is_rational else ((n - 1) * spec.p) // spec.q + 1
    sin_pi_sigma = math.sin(math.pi * sigma)
    # sin((n-1) t0) = (-1)^(k0-1) sin(pi sigma)
    boundary = (
        (-1.0) ** (k0 - 1)
        * sin_pi_sigma
        * math.sin(theta0)
        / (2.0 * (n - 1) * (math.cos(theta0) - 1.0))
    )
    m = np.arange(k0, dtype=float)
    alt = np.where(np.arange(k0) % 2 == 0, 1.0, -1.0)
    series = sin_pi_sigma / math.pi * float((alt / (sigma + m)).sum())
    corr = sin_pi_sigma / (n - 1) * float((alt * _correction_term(theta0, n, k0, sigma, m)).sum())
    return boundary + series + corr


def _jump_value(step: StepFn1D, x0: float, theta0: float, sigma: float, n: int) -> float:
    """One direct evaluation L_n(step)(x0), with the node hit decided by sigma."""
    if sigma == 0.0:
        return float(step(x0))
    grid = cheb_grid(n)
    k = np.arange(1, n + 1)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    fac = 1.0 + (k == 1) + (k == n)
    s = math.sin((n - 1) * theta0) * math.sin(theta0)
    weights = sign / ((n - 1) * fac) * s / (x0 - grid.nodes)
    return float(weights @ step(grid.nodes))


def jump_value_direct(spec: PointSpec, d: float, n: int) -> float:
    """L_n h(x0) by direct summation of the fundamental polynomials."""
    theta0 = math.pi * spec.value
    x0 = math.cos(theta0)
    return _jump_value(StepFn1D.jump(x0, d), x0, theta0, grid_offset(spec, n), n)


def step_sequence_at(step: StepFn1D, x: float, n_max: int) -> np.ndarray:
    """Values L_n(step)(x) for n = 1..n_max at a general point x.

    Node collisions are resolved by the proximity short-circuit; the n = 1
    entry is the one-node constant interpolant step(+1).
    """
    out = np.empty(n_max)
    out[0] = step(1.0)
    for n in range(2, n_max + 1):
        out[n - 1] = lagrange_eval_1d(step, n, x)
    return out


def jump_sequence(spec: PointSpec, d: float, n_max: int,
                  step: StepFn1D | None = None) -> np.ndarray:
    """Values L_n(step)(x0) for n = 1..n_max by direct evaluation.

    The n = 1 entry uses the one-node convention: interpolation on the
    single node +1 is the constant step(+1).  step defaults to the basic
    jump function with value d at x0.
    """
    theta0 = math.pi * spec.value
    x0 = math.cos(theta0)
    if step is None:
        step = StepFn1D.jump(x0, d)
    out = np.empty(n_max)
    out[0] = step(1.0)
    for n in range(2, n_max + 1):
        out[n - 1] = _jump_value(step, x0, theta0, grid_offset(spec, n), n)
    return out
