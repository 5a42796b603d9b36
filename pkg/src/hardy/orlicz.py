"""Orlicz generator functions and the calculus built on them.

An Orlicz generator is a convex non-decreasing function phi with phi(0) = 0.
Three families are provided: pure powers t^p, log-perturbed powers
t^p * log(e + t)^a, and tabulated generators (monotone sample tables with
power-law extrapolation, interpolated linearly in log-log coordinates so that
evaluation and right-continuous inversion are exact mutual inverses).

The generalized Legendre transform
    (phi (-) phi1)(u) = sup_{v > 0} { phi(u v) - phi1(v) }
produces the generator of the multiplier space between the two Orlicz spaces,
and the factorization condition compares phi^{-1} with the product
phi1^{-1} * (phi (-) phi1)^{-1} on a ray.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

_GOLDEN = 0.6180339887498949


class UnboundedTransformError(ValueError):
    """Raised when a Legendre-type supremum is infinite at some grid point."""

    def __init__(self, points):
        self.points = list(points)
        super().__init__(
            "supremum is infinite at u = " + ", ".join(f"{u:.6g}" for u in self.points)
        )


class OrliczFunction:
    """Base class: subclasses provide vectorized phi(t) and inverse inv(u)."""

    def phi(self, t):
        raise NotImplementedError

    def inv(self, u):
        raise NotImplementedError

    def check_shape(self, ts=None, tol: float = 1e-9) -> bool:
        """Secant slopes non-decreasing and phi(0)=0 on a sample grid."""
        if ts is None:
            ts = np.logspace(-3, 3, 61)
        ts = np.asarray(ts, dtype=float)
        vals = self.phi(ts)
        if np.any(np.diff(vals) < -tol * np.max(np.abs(vals))):
            return False
        slopes = np.diff(vals) / np.diff(ts)
        return bool(np.all(np.diff(slopes) >= -tol * max(1.0, np.max(np.abs(slopes)))))


@dataclass(frozen=True)
class PowerOrlicz(OrliczFunction):
    """phi(t) = t^p, p >= 1; generates the Lebesgue space L^p isometrically."""

    p: float

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"power must satisfy p >= 1, got {self.p}")

    def phi(self, t):
        return np.power(np.asarray(t, dtype=float), self.p)

    def inv(self, u):
        return np.power(np.asarray(u, dtype=float), 1.0 / self.p)


@dataclass(frozen=True)
class PowerLogOrlicz(OrliczFunction):
    """phi(t) = t^p * log(e + t)^a with p >= 1, a >= 0."""

    p: float
    a: float = 0.0

    def __post_init__(self):
        if not self.p >= 1 or self.a < 0:
            raise ValueError(f"need p >= 1 and a >= 0, got p={self.p}, a={self.a}")

    def phi(self, t):
        t = np.asarray(t, dtype=float)
        return np.power(t, self.p) * np.power(np.log(np.e + t), self.a)

    def inv(self, u):
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 0
        u = np.atleast_1d(u)
        lo = np.zeros_like(u)
        hi = np.maximum(np.power(u, 1.0 / self.p), 1.0)
        # expand until phi(hi) >= u
        for _ in range(200):
            mask = self.phi(hi) < u
            if not mask.any():
                break
            hi[mask] *= 2.0
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            below = self.phi(mid) < u
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        out = 0.5 * (lo + hi)
        return out[0] if scalar else out


class TabulatedOrlicz(OrliczFunction):
    """Monotone sample table (t_i, phi(t_i)) with power-law extrapolation.

    Interpolation is linear in log-log coordinates, so inv is the exact
    inverse of phi wherever the table is strictly increasing.  Leading zero
    values are allowed (the generator vanishes up to the last zero node).
    """

    def __init__(self, ts: Sequence[float], values: Sequence[float], repaired: bool = False):
        ts = np.asarray(ts, dtype=float)
        values = np.asarray(values, dtype=float)
        if ts.ndim != 1 or ts.shape != values.shape or ts.size < 2:
            raise ValueError("need matching 1-d tables with at least 2 nodes")
        if np.any(np.diff(ts) <= 0):
            raise ValueError("abscissae must be strictly increasing")
        if np.any(values < 0) or np.any(np.diff(values) < 0):
            raise ValueError("values must be nonnegative and non-decreasing")
        self.ts = ts
        self.values = values
        self.repaired = bool(repaired)
        pos = values > 0
        if not pos.any():
            raise ValueError("table is identically zero")
        self._i0 = int(np.argmax(pos))  # first strictly positive node
        self._logt = np.log(ts[self._i0 :])
        self._logv = np.log(values[self._i0 :])
        if self._logt.size < 2:
            raise ValueError("need at least two strictly positive values")

    def phi(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t).astype(float)
        out = np.zeros_like(t)
        m = t > 0
        logt = np.log(t[m])
        # linear interp in log-log with end-slope extrapolation
        out[m] = np.exp(_interp_extrap(logt, self._logt, self._logv))
        # region at/below the last zero node stays zero
        if self._i0 > 0:
            zero_edge = self.ts[self._i0 - 1]
            out[t <= zero_edge] = 0.0
        out[t == 0] = 0.0
        return out[0] if scalar else out

    def inv(self, u):
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 0
        u = np.atleast_1d(u).astype(float)
        out = np.zeros_like(u)
        m = u > 0
        logu = np.log(u[m])
        out[m] = np.exp(_interp_extrap(logu, self._logv, self._logt))
        return out[0] if scalar else out

    def __eq__(self, other):
        return (
            isinstance(other, TabulatedOrlicz)
            and np.array_equal(self.ts, other.ts)
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((tuple(self.ts), tuple(self.values)))

    def __repr__(self):
        return f"TabulatedOrlicz({self.ts.size} nodes on [{self.ts[0]:.3g}, {self.ts[-1]:.3g}])"


def _interp_extrap(x, xp, fp):
    """np.interp with linear (power-law in original scale) end extrapolation."""
    y = np.interp(x, xp, fp)
    lo = x < xp[0]
    if lo.any():
        s = (fp[1] - fp[0]) / (xp[1] - xp[0])
        y[lo] = fp[0] + s * (x[lo] - xp[0])
    hi = x > xp[-1]
    if hi.any():
        s = (fp[-1] - fp[-2]) / (xp[-1] - xp[-2])
        y[hi] = fp[-1] + s * (x[hi] - xp[-1])
    return y


def _golden_max_1d(fun, lo, hi, iters=40):
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fun(x1), fun(x2)
    best_x, best_f = (x1, f1) if f1 >= f2 else (x2, f2)
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


def _sup_at(phi: OrliczFunction, phi1: OrliczFunction, u: float,
            vlog_lo=-8.0, vlog_hi=10.0, coarse=145):
    """sup_v { phi(u v) - phi1(v) }; returns (value, unbounded_flag)."""
    logv = np.linspace(vlog_lo, vlog_hi, coarse)
    v = np.exp(logv)
    vals = phi.phi(u * v) - phi1.phi(v)
    j = int(np.argmax(vals))
    if j >= coarse - 2:
        # still rising at the top of the bracket: probe a much larger v
        vbig = np.exp(vlog_hi + 12.0)
        if phi.phi(u * vbig) - phi1.phi(vbig) > vals[j] + abs(vals[j]) * 1e-6 + 1e-9:
            return float("inf"), True
    lo = logv[max(j - 1, 0)]
    hi = logv[min(j + 1, coarse - 1)]
    _, best = _golden_max_1d(lambda w: phi.phi(u * np.exp(w)) - phi1.phi(np.exp(w)), lo, hi)
    return max(float(best), float(vals[j]), 0.0), False


def legendre_transform(phi: OrliczFunction, phi1: OrliczFunction,
                       u_grid=None) -> TabulatedOrlicz:
    """Tabulate (phi (-) phi1)(u) = sup_v { phi(u v) - phi1(v) } on a log grid.

    The pointwise suprema are repaired to a non-decreasing convex table
    (running max followed by the greatest convex minorant); the result is
    flagged ``repaired`` when the repair moves any value by more than 1e-6
    relative.  An infinite supremum raises UnboundedTransformError.
    """
    if u_grid is None:
        u_grid = np.logspace(-1, 1, 50)
    u_grid = np.asarray(u_grid, dtype=float)
    if np.any(u_grid <= 0) or np.any(np.diff(u_grid) <= 0):
        raise ValueError("u_grid must be positive and increasing")
    raw = np.empty_like(u_grid)
    bad = []
    for i, u in enumerate(u_grid):
        val, unbounded = _sup_at(phi, phi1, float(u))
        if unbounded:
            bad.append(float(u))
        raw[i] = val
    if bad:
        raise UnboundedTransformError(bad)
    fixed = np.maximum.accumulate(raw)
    fixed = _convex_minorant(u_grid, fixed)
    scale = max(float(np.max(np.abs(raw))), 1e-300)
    moved = float(np.max(np.abs(fixed - raw))) / scale
    return TabulatedOrlicz(u_grid, fixed, repaired=moved > 1e-6)


def _convex_minorant(x, y):
    """Greatest convex minorant of the points (x_i, y_i) (lower hull)."""
    hull = [0]
    for i in range(1, len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            s1 = (y[b] - y[a]) / (x[b] - x[a])
            s2 = (y[i] - y[b]) / (x[i] - x[b])
            if s1 > s2 + 1e-15:
                hull.pop()
            else:
                break
        hull.append(i)
    return np.interp(x, x[hull], y[hull])


def young_conjugate(phi: OrliczFunction, u_grid=None) -> TabulatedOrlicz:
    """Classical conjugate phi*(u) = sup_v { u v - phi(v) }, tabulated."""
    ident = PowerOrlicz(1.0)
    return legendre_transform(ident, phi, u_grid)


@dataclass(frozen=True)
class FactorizationCheck:
    """Observed behavior of the ratio phi^{-1} / (phi1^{-1} * (phi(-)phi1)^{-1})."""

    ok: bool
    interval: tuple | None
    degenerate: bool = False
    note: str = ""
    ratios: tuple = field(default=(), compare=False)


def orlicz_factorization_check(phi: OrliczFunction, phi1: OrliczFunction,
                               u0: float = 1.0, u_grid=None) -> FactorizationCheck:
    """Check boundedness of phi^{-1}(u) / [phi1^{-1}(u) * (phi(-)phi1)^{-1}(u)] for u > u0.

    Returns the observed interval [min, max]; no external constants are
    asserted.  Identical generators are flagged degenerate (the transform
    collapses to the indicator of [0,1], encoding an L^infinity multiplier).
    """
    if phi == phi1:
        return FactorizationCheck(ok=True, interval=None, degenerate=True,
                                  note="phi == phi1: multiplier space is bounded functions")
    if u_grid is None:
        u_grid = np.logspace(np.log10(u0 * 1.25), np.log10(u0 * 1e4), 40)
    u_grid = np.asarray(u_grid, dtype=float)
    if np.any(u_grid <= u0):
        raise ValueError("u_grid must lie strictly above u0")
    # tabulate the transform on an argument grid wide enough that its range
    # covers u_grid; the power-law extrapolated inverse handles the rest
    arg = np.logspace(-4, 6, 90)
    try:
        transform = legendre_transform(phi, phi1, arg)
    except UnboundedTransformError as exc:
        return FactorizationCheck(ok=False, interval=None,
                                  note=f"transform unbounded: {exc}")
    num = phi.inv(u_grid)
    den = phi1.inv(u_grid) * transform.inv(u_grid)
    if np.any(den <= 0) or np.any(~np.isfinite(den)):
        return FactorizationCheck(ok=False, interval=None,
                                  note="inverse evaluation failure on the grid")
    ratios = num / den
    if np.any(~np.isfinite(ratios)) or np.any(ratios <= 0):
        return FactorizationCheck(ok=False, interval=None,
                                  note="ratio left (0, inf) on the grid")
    return FactorizationCheck(ok=True,
                              interval=(float(ratios.min()), float(ratios.max())),
                              ratios=tuple(float(r) for r in ratios))
