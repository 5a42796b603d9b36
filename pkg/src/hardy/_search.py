"""Derivative-free maximization of norm ratios over complex coefficient vectors.

All variational norm estimates in the toolkit reduce to maximizing

    value(c) = num_norm(num_cols @ c) / den_norm(den_cols @ c)

over complex vectors c.  The maximizer is projected coordinate ascent over
the real and imaginary parts with a golden-section line search (degree-0
homogeneous objective, so the iterate is renormalized after every sweep),
restarted from a deterministic list of seeds.  Every evaluated candidate is a
feasible point, so the returned value is always a certified lower bound.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = 0.6180339887498949
_TINY = 1e-300


def golden_max(fun, lo: float, hi: float, iters: int = 12):
    """Golden-section maximization on [lo, hi]; returns the best probed point."""
    a, b = float(lo), float(hi)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fun(x1), fun(x2)
    if f1 >= f2:
        best_x, best_f = x1, f1
    else:
        best_x, best_f = x2, f2
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fun(x2)
            if f2 > best_f:
                best_x, best_f = x2, f2
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fun(x1)
            if f1 > best_f:
                best_x, best_f = x1, f1
    return best_x, best_f


class _Image:
    """Tracks v = cols @ c under single-coordinate complex shifts."""

    __slots__ = ("cols", "v")

    def __init__(self, cols: np.ndarray, c: np.ndarray):
        self.cols = [np.ascontiguousarray(cols[:, j]) for j in range(cols.shape[1])]
        self.v = cols @ c

    def shifted(self, j: int, delta: complex) -> np.ndarray:
        return self.v + delta * self.cols[j]

    def commit(self, j: int, delta: complex) -> None:
        self.v = self.v + delta * self.cols[j]

    def scale(self, s: float) -> None:
        self.v = self.v * s


def maximize_ratio(num_cols, num_norm, den_cols, den_norm, seeds,
                   sweeps: int = 3, span: float = 1.0, golden_iters: int = 12,
                   stop_at: float | None = None):
    """Maximize num_norm(num_cols @ c)/den_norm(den_cols @ c) over the seeds.

    Returns (best_value, best_c) with best_c normalized to den_norm == 1.
    Seeds with vanishing denominator are skipped.  Deterministic: seeds are
    visited in order and ties keep the earlier candidate.  When the caller
    knows a hard upper bound for the ratio, passing it as `stop_at` skips the
    remaining restarts once the bound is attained to rounding.
    """
    num_cols = np.asarray(num_cols, dtype=np.complex128)
    den_cols = np.asarray(den_cols, dtype=np.complex128)
    ncoef = den_cols.shape[1]
    best_val, best_c = -np.inf, None

    for seed in seeds:
        c = np.asarray(seed, dtype=np.complex128).copy()
        if c.shape != (ncoef,):
            raise ValueError(f"seed has shape {c.shape}, expected ({ncoef},)")
        den = _Image(den_cols, c)
        num = _Image(num_cols, c)
        d0 = den_norm(den.v)
        if not np.isfinite(d0) or d0 <= _TINY:
            continue
        c /= d0
        den.scale(1.0 / d0)
        num.scale(1.0 / d0)
        val = num_norm(num.v) / den_norm(den.v)

        for _ in range(sweeps):
            val_before = val
            for j in range(ncoef):
                for direction in (1.0 + 0.0j, 1j):

                    def line(t, _j=j, _dir=direction):
                        dv = t * _dir
                        d = den_norm(den.shifted(_j, dv))
                        if d <= _TINY:
                            return -np.inf
                        return num_norm(num.shifted(_j, dv)) / d

                    t, v = golden_max(line, -span, span, golden_iters)
                    if v > val:
                        val = v
                        c[j] += t * direction
                        den.commit(j, t * direction)
                        num.commit(j, t * direction)
            d = den_norm(den.v)
            if d <= _TINY:
                break
            c /= d
            den.scale(1.0 / d)
            num.scale(1.0 / d)
            if val - val_before <= 1e-10 * max(1.0, abs(val)):
                break

        if val > best_val:
            best_val = val
            d = den_norm(den.v)
            best_c = c / d if d > _TINY else c
        if stop_at is not None and best_val >= stop_at * (1.0 - 1e-12):
            break

    return best_val, best_c


def pattern_minimize(objective, x0: np.ndarray, step0: float = 0.5,
                     step_min: float = 1e-4, max_sweeps: int = 400):
    """Coordinate pattern search minimization over a real vector.

    Probes +/- step along every coordinate, accepts greedy improvements, and
    halves the step when a sweep yields none.  Returns (x, value, sweeps).
    """
    x = np.asarray(x0, dtype=float).copy()
    val = objective(x)
    step = float(step0)
    sweeps = 0
    while step >= step_min and sweeps < max_sweeps:
        improved = False
        for j in range(x.size):
            for s in (step, -step):
                x[j] += s
                v = objective(x)
                if v < val - 1e-15:
                    val = v
                    improved = True
                else:
                    x[j] -= s
        sweeps += 1
        if not improved:
            step *= 0.5
    return x, val, sweeps
