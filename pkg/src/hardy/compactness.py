"""Noncompactness of Toeplitz operators via separated image sequences.

A nonzero symbol makes the Toeplitz operator noncompact: the images of the
shifted characters chi_{k_n} along an arithmetic progression of indices stay
uniformly L^1-separated by (1-eps) times the peak coefficient magnitude, and
the inclusion constant of the target space into L^1 converts that into a
lower bound for the measure of noncompactness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import FourierSeries, GridContext, make_grid, synthesize
from .operators import SymbolOperator
from .spaces import Space, koethe_dual, lebesgue, norm_samples

K1_SCAN_CAP = 10_000


def inclusion_constant(Y: Space, ctx: GridContext | None = None) -> float:
    """Best m with m * ||f||_1 <= ||f||_Y, computed as 1 / ||1||_{Y'}.

    Exact for Lebesgue targets; for Lorentz/Orlicz the Koethe dual is known
    only up to an equivalent norm and the constant inherits that status
    (check koethe_dual(Y).approx).
    """
    dual = koethe_dual(Y)
    if ctx is None:
        ctx = make_grid(1024)
    ones = np.ones(ctx.n, dtype=np.complex128)
    return 1.0 / norm_samples(ones, dual)


def noncompactness_bound(a: FourierSeries, Y: Space,
                         ctx: GridContext | None = None) -> float:
    """Lower bound m * max_n |a^(n)| for the measure of noncompactness of T_a."""
    peak = max((abs(v) for _, v in a.items()), default=0.0)
    if peak == 0.0:
        return 0.0
    return inclusion_constant(Y, ctx) * peak


@dataclass(frozen=True)
class SeparationCertificate:
    """An arithmetic index progression with verified pairwise L^1 separation.

    ``pairwise_min`` is the smallest brute-force L^1 distance between the
    Toeplitz images of the listed characters; ``bound`` is m*c*(1-eps) where
    c is the peak coefficient magnitude and m the L^1 inclusion factor of
    the ambient space (m = 1 here: the certificate itself lives in L^1, and
    a target space enters only through noncompactness_bound).
    """

    indices: tuple
    epsilon: float
    peak: float
    inclusion_factor: float
    pairwise_min: float
    bound: float
    peak_index: int
    k0: int
    k1: int

    def __post_init__(self):
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("certificate indices must be strictly increasing")
        if self.pairwise_min < self.bound - 1e-10:
            raise ValueError(
                f"certificate invalid: pairwise min {self.pairwise_min:.12g} "
                f"below bound {self.bound:.12g}")


def _peak_location(a: FourierSeries) -> tuple:
    peak = max(abs(v) for _, v in a.items())
    candidates = [n for n, v in a.items() if abs(v) >= peak * (1 - 1e-14)]
    # reproducible tie-break: smallest |n|, negative preferred
    candidates.sort(key=lambda n: (abs(n), 0 if n < 0 else 1))
    return candidates[0], peak


def separated_sequence(a: FourierSeries, eps: float, count: int,
                       ctx: GridContext) -> SeparationCertificate:
    """Construct indices k_n = k0 + n*(k1 - k0), n = 0..count, and certify them.

    k0 clears the peak coefficient location s (k0 = -min(0, s)); k1 is the
    smallest index past k0 from which on all coefficients a^(-j) are below
    eps times the peak.  Pairwise separations are re-verified by brute-force
    L^1 quadrature of T_a chi_{k_n} - T_a chi_{k_l} on the grid.
    """
    if a.is_zero():
        raise ValueError("zero symbol: the Toeplitz operator is compact and "
                         "no separated sequence exists")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    s, peak = _peak_location(a)
    k0 = -min(0, s)

    lowest = min(a.support())
    neg_mags = {j: abs(a[-j]) for j in range(1, max(0, -lowest) + 1)}

    def tail_ok(k: int) -> bool:
        return all(mag <= eps * peak for j, mag in neg_mags.items() if j >= k)

    k1 = None
    for k in range(k0 + 1, k0 + 2 + K1_SCAN_CAP):
        if tail_ok(k):
            k1 = k
            break
    if k1 is None:
        raise RuntimeError(f"no admissible k1 found within {K1_SCAN_CAP} steps")

    indices = [k0 + n * (k1 - k0) for n in range(count + 1)]
    band = indices[-1] + a.degree
    if ctx.n <= 2 * band:
        raise ValueError(f"grid N={ctx.n} too small for index {indices[-1]} and "
                         f"symbol degree {a.degree}; need N > {2 * band}")

    op = SymbolOperator("toeplitz", a)
    images = [synthesize(op(FourierSeries.basis(k)), ctx).samples for k in indices]
    l1 = lebesgue(1.0)
    pairwise = min(
        norm_samples(images[i] - images[j], l1)
        for i in range(len(images)) for j in range(i + 1, len(images))
    )
    return SeparationCertificate(
        indices=tuple(indices), epsilon=float(eps), peak=float(peak),
        inclusion_factor=1.0, pairwise_min=float(pairwise),
        bound=float(peak * (1.0 - eps)), peak_index=int(s), k0=int(k0), k1=int(k1),
    )
