"""Uniform discretization of the unit circle with normalized measure.

Functions live in two representations: finitely supported Fourier
coefficients (`FourierSeries`) and complex samples on the uniform grid
t_k = exp(2*pi*i*k/N) (`GridFunction`).  Analysis/synthesis between the two
is exact for band-limited data whenever 2*degree < N.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

# Magnitude below which a coefficient may be dropped when compacting a series.
COEFF_DROP_TOL = 1e-13


@lru_cache(maxsize=None)
def _grid_points(n: int) -> np.ndarray:
    pts = np.exp(2j * np.pi * np.arange(n) / n)
    pts.setflags(write=False)
    return pts


@lru_cache(maxsize=64)
def _basis_matrix(n: int, indices: tuple) -> np.ndarray:
    """Columns t_k^m for m in `indices`, shape (n, len(indices))."""
    pts = _grid_points(n)
    mat = pts[:, None] ** np.asarray(indices, dtype=np.int64)[None, :]
    mat.setflags(write=False)
    return mat


@dataclass(frozen=True)
class GridContext:
    """N uniform points t_k = exp(2*pi*i*k/N), each carrying weight 1/N."""

    n: int

    def __post_init__(self):
        if self.n % 2 != 0 or self.n < 8:
            raise ValueError(f"grid size must be even and >= 8, got {self.n}")

    @property
    def points(self) -> np.ndarray:
        return _grid_points(self.n)

    @property
    def weight(self) -> float:
        return 1.0 / self.n

    def basis(self, indices: Iterable[int]) -> np.ndarray:
        return _basis_matrix(self.n, tuple(int(i) for i in indices))


def make_grid(n: int) -> GridContext:
    """Uniform grid of n points; n must be even and at least 8."""
    return GridContext(int(n))


class GridFunction:
    """Complex samples of a function on the points of a GridContext."""

    __slots__ = ("ctx", "samples")

    def __init__(self, ctx: GridContext, samples):
        arr = np.asarray(samples, dtype=np.complex128)
        if arr.shape != (ctx.n,):
            raise ValueError(f"expected {ctx.n} samples, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "samples", arr)

    def __setattr__(self, name, value):
        raise AttributeError("GridFunction is immutable")

    def __repr__(self):
        return f"GridFunction(n={self.ctx.n})"


def constant_function(ctx: GridContext, value: complex = 1.0) -> GridFunction:
    return GridFunction(ctx, np.full(ctx.n, complex(value)))


def indicator_arc(ctx: GridContext, npoints: int) -> GridFunction:
    """Indicator of the first `npoints` grid points (arc starting at angle 0)."""
    s = np.zeros(ctx.n, dtype=np.complex128)
    s[: int(npoints)] = 1.0
    return GridFunction(ctx, s)


class FourierSeries:
    """Finitely supported Fourier coefficients {n: c_n}.

    The character chi_n(t) = t^n is ``FourierSeries.basis(n)``.  Instances are
    immutable; arithmetic returns new series.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, complex] | Iterable = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = coeffs
        d = {}
        for n, v in items:
            v = complex(v)
            if v != 0:
                d[int(n)] = d.get(int(n), 0.0) + v
        object.__setattr__(self, "_coeffs", d)

    def __setattr__(self, name, value):
        raise AttributeError("FourierSeries is immutable")

    @classmethod
    def basis(cls, n: int) -> "FourierSeries":
        return cls({int(n): 1.0})

    @classmethod
    def zero(cls) -> "FourierSeries":
        return cls({})

    @classmethod
    def from_vector(cls, lo: int, values) -> "FourierSeries":
        return cls({lo + i: v for i, v in enumerate(np.asarray(values))})

    def __getitem__(self, n: int) -> complex:
        return self._coeffs.get(int(n), 0.0 + 0.0j)

    def items(self):
        return sorted(self._coeffs.items())

    def support(self) -> tuple:
        return tuple(sorted(self._coeffs))

    @property
    def degree(self) -> int:
        if not self._coeffs:
            return 0
        return max(abs(n) for n in self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def to_vector(self, indices: Iterable[int]) -> np.ndarray:
        return np.array([self[n] for n in indices], dtype=np.complex128)

    def compacted(self, tol: float = COEFF_DROP_TOL) -> "FourierSeries":
        return FourierSeries({n: v for n, v in self._coeffs.items() if abs(v) > tol})

    def shift(self, k: int) -> "FourierSeries":
        """Multiply by chi_k: index n moves to n + k."""
        return FourierSeries({n + k: v for n, v in self._coeffs.items()})

    def restrict(self, lo: int, hi: int) -> "FourierSeries":
        return FourierSeries({n: v for n, v in self._coeffs.items() if lo <= n <= hi})

    def map_indices(self, fn) -> "FourierSeries":
        return FourierSeries({fn(n): v for n, v in self._coeffs.items()})

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        d = dict(self._coeffs)
        for n, v in other._coeffs.items():
            d[n] = d.get(n, 0.0) + v
        return FourierSeries(d)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "FourierSeries":
        s = complex(scalar)
        return FourierSeries({n: s * v for n, v in self._coeffs.items()})

    def __neg__(self) -> "FourierSeries":
        return (-1.0) * self

    def max_diff(self, other: "FourierSeries") -> float:
        keys = set(self._coeffs) | set(other._coeffs)
        if not keys:
            return 0.0
        return max(abs(self[n] - other[n]) for n in keys)

    def __repr__(self):
        entries = ", ".join(f"{n}: {v:.6g}" for n, v in self.items())
        return f"FourierSeries({{{entries}}})"


def analyze(f: GridFunction, m: int) -> FourierSeries:
    """Fourier coefficients c(n) = (1/N) * sum_k f(t_k) * conj(t_k^n) for |n| <= m.

    Exact for trigonometric polynomials of degree <= m when N > 2m.
    """
    n = f.ctx.n
    if 2 * m >= n:
        raise ValueError(f"band m={m} exceeds Nyquist for N={n} (need 2m < N)")
    bins = np.fft.fft(f.samples) / n
    return FourierSeries({k: bins[k % n] for k in range(-m, m + 1)}).compacted()


def synthesize(c: FourierSeries, ctx: GridContext) -> GridFunction:
    """Samples of sum_n c(n) t^n on the grid; inverse of analyze on band-limited data."""
    if 2 * c.degree >= ctx.n:
        raise ValueError(
            f"series degree {c.degree} exceeds Nyquist for N={ctx.n} (need 2*degree < N)"
        )
    bins = np.zeros(ctx.n, dtype=np.complex128)
    for n, v in c.items():
        bins[n % ctx.n] = v
    return GridFunction(ctx, np.fft.ifft(bins) * ctx.n)


def fejer_smooth(c: FourierSeries, n: int) -> FourierSeries:
    """Convolution with the Fejer kernel: coefficient k scaled by max(0, 1 - |k|/(n+1))."""
    if n < 0:
        raise ValueError("Fejer order must be nonnegative")
    return FourierSeries(
        {k: v * (1.0 - abs(k) / (n + 1.0)) for k, v in c.items() if abs(k) <= n}
    )


def pointwise_product(f: GridFunction, g: GridFunction) -> GridFunction:
    """Sample-wise product; caller picks N > 2*(deg f + deg g) for band-exact results."""
    if f.ctx != g.ctx:
        raise ValueError("grid mismatch in pointwise product")
    return GridFunction(f.ctx, f.samples * g.samples)


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """<f, g> = (1/N) sum f(t_k) conj(g(t_k))."""
    if f.ctx != g.ctx:
        raise ValueError("grid mismatch in inner product")
    return complex(np.mean(f.samples * np.conj(g.samples)))
