"""Riesz projection, conjugate function, flip, and outer-function machinery.

The Riesz projection keeps nonnegative Fourier modes; a function lies in the
Hardy space of X exactly when its negative modes vanish.  Outer functions are
built from a prescribed positive boundary modulus w as exp of the analytic
completion of log w, which is the exact boundary-value form of the Herglotz
integral construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._search import maximize_ratio
from .circle import (
    FourierSeries,
    GridContext,
    GridFunction,
    analyze,
    make_grid,
    synthesize,
)
from .spaces import NormEstimate, Space, boyd_indices, fast_norm_fn, norm_samples

#: Relative floor applied to the modulus before taking logs (grid zeros are
#: not log-integrable).
OUTER_CLIP_FLOOR = 1e-8


class FactorizationError(ValueError):
    """Inputs violate the modulus contract or the factor division blew up."""


@dataclass(frozen=True)
class AnalyticWitness:
    """A series together with its maximal negative-index coefficient magnitude."""

    series: FourierSeries
    residual: float

    @classmethod
    def of(cls, series: FourierSeries) -> "AnalyticWitness":
        neg = [abs(v) for n, v in series.items() if n < 0]
        return cls(series, max(neg) if neg else 0.0)

    def accepted(self, tol: float = 1e-10) -> bool:
        return self.residual <= tol


def riesz_project(c: FourierSeries) -> FourierSeries:
    """Drop all coefficients at negative indices; idempotent."""
    return FourierSeries({n: v for n, v in c.items() if n >= 0})


def conjugate_function(c: FourierSeries) -> FourierSeries:
    """Coefficient multiplier -i*sign(n); vanishes at n = 0.

    Satisfies 2*P(c) = c + i*conjugate + c(0) coefficient-wise.
    """
    return FourierSeries({n: -1j * np.sign(n) * v for n, v in c.items() if n != 0})


def flip(c: FourierSeries) -> FourierSeries:
    """The involution (Jf)(t) = t^{-1} f(t^{-1}): index n maps to -1-n."""
    return c.map_indices(lambda n: -1 - n)


_riesz_cache: dict = {}


def riesz_norm_estimate(Y: Space, degree: int = 32, restarts: int = 64,
                        seed: int = 0, ctx: GridContext | None = None,
                        extra_seeds=()) -> NormEstimate:
    """Lower bound for ||P||_{Y->Y} over polynomials of the given degree.

    A warning note is attached when Y has trivial Boyd indices (the
    projection is then unbounded and the estimate grows without limit in the
    degree).  Results for hashable spaces are memoized per budget.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if ctx is None:
        ctx = make_grid(max(1024, 4 * degree + 4))
    cache_key = None
    if not extra_seeds:
        try:
            cache_key = (Y, degree, restarts, seed, ctx.n)
        except TypeError:
            cache_key = None
        if cache_key is not None and cache_key in _riesz_cache:
            return _riesz_cache[cache_key]

    idx = tuple(range(-degree, degree + 1))
    neg = [i for i, n in enumerate(idx) if n < 0]
    if Y == Space("lebesgue", p=2.0):
        # Parseval: both norms live on the coefficients
        den_cols_eff = np.eye(len(idx), dtype=np.complex128)
        num_cols = den_cols_eff.copy()
        num_cols[neg, :] = 0.0

        def den_norm(v):
            m2 = v.real * v.real + v.imag * v.imag
            return float(np.sqrt(m2.sum()))

        num_norm = den_norm
    else:
        den_cols_eff = ctx.basis(idx)
        num_cols = den_cols_eff.copy()
        num_cols[:, neg] = 0.0  # projection drops the negative-index columns
        den_norm = fast_norm_fn(Y, ctx.n)
        num_norm = den_norm

    seeds = []
    e0 = np.zeros(len(idx), dtype=np.complex128)
    e0[degree] = 1.0  # chi_0: an analytic witness giving ratio 1
    seeds.append(e0)
    seeds.extend(np.asarray(s, dtype=np.complex128) for s in extra_seeds)
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        z = rng.standard_normal(2 * len(idx))
        seeds.append(z[::2] + 1j * z[1::2])

    # on L^2 the projection is orthogonal with norm exactly 1
    stop = 1.0 if Y == Space("lebesgue", p=2.0) else None
    val, c = maximize_ratio(num_cols, num_norm, den_cols_eff, den_norm, seeds,
                            stop_at=stop)
    a, b = boyd_indices(Y)
    note = "" if 0.0 < a <= b < 1.0 else \
        "warning: trivial Boyd indices, Riesz projection unbounded on this space"
    witness = FourierSeries({n: c[i] for i, n in enumerate(idx)}).compacted(1e-15) \
        if c is not None else None
    est = NormEstimate(float(val), "lower-bound", witness, note)
    if cache_key is not None:
        _riesz_cache[cache_key] = est
    return est


def outer_function(w: GridFunction, floor: float = OUTER_CLIP_FLOOR,
                   band: int | None = None) -> FourierSeries:
    """Boundary values of the outer function with prescribed modulus w.

    Values of w below floor*max(w) are clipped before taking logs; away from
    clipped points the result satisfies |F| = w on the grid up to the band
    truncation of the returned series.  The normalization is the standard
    positive one: F(0) = exp(mean of log w) > 0.
    """
    s = w.samples
    wmax = float(np.max(np.abs(s)))
    if wmax == 0.0:
        raise ValueError("modulus is identically zero; no outer function exists")
    if np.max(np.abs(s.imag)) > 1e-12 * wmax or np.min(s.real) < -1e-12 * wmax:
        raise ValueError("modulus samples must be real and nonnegative")
    n = w.ctx.n
    u = np.log(np.maximum(s.real, floor * wmax))
    # analytic completion of the real function u: keep DC, double the
    # positive modes, keep the (real) Nyquist mode, so that Re G = u exactly
    bins = np.fft.fft(u)
    mult = np.zeros(n)
    mult[0] = 1.0
    mult[1 : n // 2] = 2.0
    mult[n // 2] = 1.0
    g = np.fft.ifft(bins * mult)
    f_grid = GridFunction(w.ctx, np.exp(g))
    if band is None:
        band = n // 2 - 1
    return analyze(f_grid, band)


def analytic_factorize(h: FourierSeries, mod_f: GridFunction, mod_g: GridFunction,
                       floor: float = OUTER_CLIP_FLOOR, tol: float = 1e-6):
    """Factor an analytic h into x*y with |x| = mod_f and |y| = mod_g.

    Requires |h| = mod_f * mod_g on the grid.  y is the outer function with
    modulus mod_g; x carries the remaining inner factor of h.  Raises
    FactorizationError on modulus mismatch or when division through clipped
    near-zeros spoils the reconstruction beyond tol * max|h|.
    """
    if mod_f.ctx != mod_g.ctx:
        raise ValueError("moduli must share one grid")
    ctx = mod_f.ctx
    witness = AnalyticWitness.of(h)
    hmax_coeff = max((abs(v) for _, v in h.items()), default=0.0)
    if witness.residual > 1e-10 * max(hmax_coeff, 1e-300):
        raise FactorizationError(
            f"symbol is not analytic: negative-index residual {witness.residual:.3g}")
    h_grid = synthesize(h, ctx)
    target = np.abs(mod_f.samples) * np.abs(mod_g.samples)
    hmax = float(np.max(np.abs(h_grid.samples)))
    mismatch = float(np.max(np.abs(np.abs(h_grid.samples) - target)))
    if mismatch > tol * max(hmax, 1e-300):
        raise FactorizationError(
            f"modulus mismatch: max | |h| - modF*modG | = {mismatch:.3g} "
            f"exceeds {tol:g} * max|h|")

    f_outer = outer_function(mod_f, floor)
    g_outer = outer_function(mod_g, floor)
    fg = synthesize(f_outer, ctx).samples
    gg = synthesize(g_outer, ctx).samples
    denom = fg * gg
    small = np.abs(denom) < 1e-300
    if small.any():
        raise FactorizationError("outer product vanishes on the grid")
    x_grid = h_grid.samples / gg
    x = analyze(GridFunction(ctx, x_grid), ctx.n // 2 - 1)

    recon = synthesize(x, ctx).samples * gg
    err = float(np.max(np.abs(recon - h_grid.samples)))
    if err > tol * max(hmax, 1e-300):
        raise FactorizationError(
            f"division blow-up near clipped zeros: max pointwise error {err:.3g}")
    return x, g_outer
