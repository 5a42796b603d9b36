"""Truncated Toeplitz and Hankel operators and their norm estimation.

A Toeplitz operator with symbol a sends an analytic f to P(a f); its matrix
in the analytic monomial basis is constant along diagonals with entries
a^(k-j).  A Hankel operator sends f to P(a Jf) and has matrix entries
a^(k+j+1), so only the positive-frequency part of the symbol acts.
Operator norms between Hardy spaces are estimated variationally from below
by maximizing ||A f||_Y / ||f||_X over analytic polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._search import maximize_ratio
from .analytic import outer_function, riesz_norm_estimate, riesz_project
from .circle import (
    FourierSeries,
    GridContext,
    GridFunction,
    analyze,
    make_grid,
    pointwise_product,
    synthesize,
)
from .spaces import (
    NormEstimate,
    Space,
    SpaceResult,
    fast_norm_fn,
    multiplier_norm_variational,
    multiplier_space,
    norm_samples,
)

PATTERN_TOL = 1e-10

# Declared test slacks for the two-sided sandwich verdicts.  They absorb the
# finite search budget (degree/restarts), not any theoretical constant.
SANDWICH_LOWER_SLACK = 0.9
SANDWICH_UPPER_SLACK = 1.3


@dataclass(frozen=True)
class OperatorTruncation:
    """A finite matrix block of an operator in the analytic monomial basis."""

    kind: str  # "toeplitz" | "hankel" | "general"
    matrix: np.ndarray
    symbol: FourierSeries | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator truncation must be a square matrix")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.kind not in ("toeplitz", "hankel", "general"):
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def toeplitz_matrix(a: FourierSeries, m: int) -> OperatorTruncation:
    """(m+1) x (m+1) block with entries a^(k - j)."""
    k = np.arange(m + 1)
    idx = k[:, None] - k[None, :]
    vals = {n: a[n] for n in range(-m, m + 1)}
    mat = np.array([[vals[int(d)] for d in row] for row in idx])
    return OperatorTruncation("toeplitz", mat, a)


def hankel_matrix(a: FourierSeries, m: int) -> OperatorTruncation:
    """(m+1) x (m+1) block with entries a^(k + j + 1)."""
    k = np.arange(m + 1)
    idx = k[:, None] + k[None, :] + 1
    vals = {n: a[n] for n in range(1, 2 * m + 2)}
    mat = np.array([[vals[int(d)] for d in row] for row in idx])
    return OperatorTruncation("hankel", mat, a)


def _require_analytic(f: FourierSeries):
    if any(n < 0 for n in f.support()):
        raise ValueError("argument must be an analytic series (no negative modes)")


def apply_toeplitz(a: FourierSeries, f: FourierSeries, ctx: GridContext) -> FourierSeries:
    """P(a f) computed by grid multiplication followed by projection."""
    _require_analytic(f)
    band = a.degree + f.degree
    if ctx.n <= 2 * band:
        raise ValueError(f"grid N={ctx.n} too small for product band {band} "
                         "(aliasing); need N > 2*(deg a + deg f)")
    prod = pointwise_product(synthesize(a, ctx), synthesize(f, ctx))
    return riesz_project(analyze(prod, band))


def apply_hankel(a: FourierSeries, f: FourierSeries, ctx: GridContext) -> FourierSeries:
    """P(a Jf) by the grid route.

    Only coefficients of a at positive indices act (the Hankel matrix sees
    a^(k+j+1) with k, j >= 0), so the symbol is canonically stripped to its
    positive part first; symbols differing below index 1 give identical
    output bit for bit.
    """
    _require_analytic(f)
    a_pos = a.restrict(1, max(a.degree, 1))
    jf = f.map_indices(lambda n: -1 - n)
    band = a_pos.degree + f.degree + 1
    if ctx.n <= 2 * band:
        raise ValueError(f"grid N={ctx.n} too small for product band {band} "
                         "(aliasing); need N > 2*(deg a + deg f + 1)")
    if a_pos.is_zero():
        return FourierSeries.zero()
    prod = pointwise_product(synthesize(a_pos, ctx), synthesize(jf, ctx))
    return riesz_project(analyze(prod, band))


@dataclass(frozen=True)
class SymbolOperator:
    """Exact coefficient-space action of a Toeplitz or Hankel operator."""

    kind: str
    symbol: FourierSeries

    def __post_init__(self):
        if self.kind not in ("toeplitz", "hankel"):
            raise ValueError(f"unknown kind {self.kind!r}")

    def __call__(self, f: FourierSeries) -> FourierSeries:
        _require_analytic(f)
        out: dict = {}
        if self.kind == "toeplitz":
            for j, fv in f.items():
                for n, av in self.symbol.items():
                    k = n + j
                    if k >= 0:
                        out[k] = out.get(k, 0.0) + av * fv
        else:
            for j, fv in f.items():
                for n, av in self.symbol.items():
                    k = n - j - 1
                    if k >= 0:
                        out[k] = out.get(k, 0.0) + av * fv
        return FourierSeries(out)

    def matrix_block(self, degree: int):
        """Matrix on analytic inputs of the given degree: (rows out_band) x (degree+1)."""
        a = self.symbol
        if self.kind == "toeplitz":
            out_hi = max(degree + max(a.support(), default=0), 0)
            rows = np.arange(out_hi + 1)
            cols = np.arange(degree + 1)
            mat = np.array([[a[int(k - j)] for j in cols] for k in rows])
        else:
            top = max([n for n in a.support() if n > 0], default=0)
            out_hi = top - 1
            rows = np.arange(max(out_hi + 1, 0))
            cols = np.arange(degree + 1)
            mat = np.array([[a[int(k + j + 1)] for j in cols] for k in rows]) \
                if out_hi >= 0 else np.zeros((1, degree + 1), dtype=np.complex128)
        return mat.astype(np.complex128), [int(r) for r in (rows if len(rows) else [0])]


def _probe_matrix(apply_fn, degree: int):
    """Materialize a black-box coefficient operator by probing the basis."""
    images = [apply_fn(FourierSeries.basis(j)) for j in range(degree + 1)]
    support = sorted({n for g in images for n in g.support()} | {0})
    mat = np.zeros((len(support), degree + 1), dtype=np.complex128)
    pos = {n: i for i, n in enumerate(support)}
    for j, g in enumerate(images):
        for n, v in g.items():
            mat[pos[n], j] = v
    return mat, support


def operator_norm_estimate(op, X: Space, Y: Space, degree: int = 32,
                           restarts: int = 64, seed: int = 0,
                           ctx: GridContext | None = None,
                           extra_seeds=(), ceiling: float | None = None) -> NormEstimate:
    """Lower bound for ||A||_{H[X] -> H[Y]} over analytic polynomials.

    `op` is a SymbolOperator or any callable FourierSeries -> FourierSeries
    that is linear on the probed band.  The search runs projected coordinate
    ascent on the coefficients of f from a deterministic seed list: chi_0,
    the L2-extremal singular vector of the matrix block, any extra seeds,
    and `restarts` pseudo-random draws.  A caller that knows a hard upper
    bound for the norm may pass it as `ceiling` to skip restarts once it is
    attained.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if isinstance(op, SymbolOperator):
        mat, out_idx = op.matrix_block(degree)
    else:
        mat, out_idx = _probe_matrix(op, degree)
    max_band = max([degree] + [abs(n) for n in out_idx])
    if ctx is None:
        n = max(1024, 4 * max_band + 4)
        ctx = make_grid(n + (n % 2))
    elif ctx.n <= 2 * max_band:
        raise ValueError(f"grid N={ctx.n} too small for output band {max_band}")

    in_idx = tuple(range(degree + 1))
    den_cols = ctx.basis(in_idx)
    den_norm = fast_norm_fn(X, ctx.n)

    if Y == Space("lebesgue", p=2.0):
        num_cols = mat

        def num_norm(v):
            m2 = v.real * v.real + v.imag * v.imag
            return float(np.sqrt(m2.sum()))
    else:
        num_cols = ctx.basis(tuple(out_idx)) @ mat
        num_norm = fast_norm_fn(Y, ctx.n)

    seeds = []
    e0 = np.zeros(degree + 1, dtype=np.complex128)
    e0[0] = 1.0
    seeds.append(e0)
    if mat.size and np.linalg.norm(mat) > 0:
        # L2-extremal right singular vector of the block
        _, _, vh = np.linalg.svd(mat)
        seeds.append(vh[0].conj())
    seeds.extend(np.asarray(s, dtype=np.complex128) for s in extra_seeds)
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        z = rng.standard_normal(2 * (degree + 1))
        seeds.append(z[::2] + 1j * z[1::2])

    val, c = maximize_ratio(num_cols, num_norm, den_cols, den_norm, seeds,
                            stop_at=ceiling)
    witness = FourierSeries({n: c[i] for i, n in enumerate(in_idx)}).compacted(1e-15) \
        if c is not None else None
    return NormEstimate(max(float(val), 0.0), "lower-bound", witness)


def _toeplitz_profile_seed(a: FourierSeries, X: Space, Y: Space,
                           degree: int, ctx: GridContext):
    """Analytic near-extremal input for T_a on a Lebesgue pair.

    The multiplier norm is attained at |g| ~ |a|^{r/p}; an outer function
    with that modulus, truncated and shifted so the projection cuts nothing,
    is a strong starting point for the coordinate ascent.
    """
    kx, ky = X._key(), Y._key()
    if kx[0] != "lebesgue" or ky[0] != "lebesgue":
        return None
    p, q = kx[1], ky[1]
    if not (np.isfinite(p) and np.isfinite(q) and p >= q):
        return None
    rinv = 1.0 / q - 1.0 / p
    # Hoelder equality wants |g| ~ |a|^{r/p}; for p = q the multiplier norm is
    # the sup norm and the extremizer concentrates where |a| peaks instead.
    gamma = 1.0 / (rinv * p) if rinv > 0 else 12.0
    shift = max(0, -min(a.support(), default=0))
    if shift + 1 > degree:
        return None
    agrid = np.abs(synthesize(a, ctx).samples)
    if agrid.max() == 0:
        return None
    profile = (agrid / agrid.max()) ** gamma if gamma > 0 else np.ones(ctx.n)
    try:
        outer = outer_function(GridFunction(ctx, profile), band=max(degree - shift, 1))
    except ValueError:
        return None
    vec = outer.shift(shift).to_vector(range(degree + 1))
    return vec if np.linalg.norm(vec) > 0 else None


@dataclass(frozen=True)
class BrownHalmosReport:
    """Two-sided comparison of a Toeplitz norm with its multiplier norm."""

    symbol: FourierSeries
    source: Space
    target: Space
    multiplier: SpaceResult
    multiplier_norm: NormEstimate | None
    operator_norm: NormEstimate | None
    riesz_norm: NormEstimate | None
    lower_ok: bool | None
    upper_ok: bool | None
    slacks: dict = field(default_factory=dict)
    verdict: str = ""

    @property
    def passed(self) -> bool:
        if self.verdict == "zero-symbol-space":
            return True
        return bool(self.lower_ok) and bool(self.upper_ok)


def brown_halmos_check(a: FourierSeries, X: Space, Y: Space, degree: int = 32,
                       restarts: int = 64, seed: int = 0,
                       ctx: GridContext | None = None,
                       lower_slack: float = SANDWICH_LOWER_SLACK,
                       upper_slack: float = SANDWICH_UPPER_SLACK) -> BrownHalmosReport:
    """Verify the two-sided multiplier sandwich for a Toeplitz operator.

    Computes the multiplier norm L of the symbol (closed form when the
    multiplier space is exactly normable, otherwise variationally), the
    variational operator norm T, and the Riesz-projection estimate Pn for
    the target, then checks T >= lower_slack * L and T <= upper_slack * Pn * L.
    A trivial multiplier space yields the verdict that the operator is
    unbounded for every nonzero symbol.
    """
    ms = multiplier_space(X, Y)
    if ms.outcome == "zero":
        return BrownHalmosReport(a, X, Y, ms, None, None, None, None, None,
                                 {}, "unbounded for every nonzero symbol")
    if ms.outcome == "unknown":
        raise ValueError(f"multiplier space unknown for ({X}, {Y}): {ms.reason}")
    if ctx is None:
        band = max(a.degree + degree, degree)
        n = max(1024, 4 * band + 4)
        ctx = make_grid(n + (n % 2))

    a_grid = synthesize(a, ctx)
    if ms.space.approx:
        L = multiplier_norm_variational(a_grid, X, Y, degree=8,
                                        restarts=min(restarts, 16), seed=seed)
    else:
        L = NormEstimate(norm_samples(a_grid.samples, ms.space), "exact")

    extra = []
    prof = _toeplitz_profile_seed(a, X, Y, degree, ctx)
    if prof is not None:
        extra.append(prof)
    # the Riesz projection is orthogonal on L^2, so the upper sandwich bound
    # ||P|| * L is exact there and the search may halt once it is attained
    ceiling = L.value if Y == Space("lebesgue", p=2.0) and L.mode == "exact" else None
    T = operator_norm_estimate(SymbolOperator("toeplitz", a), X, Y, degree,
                               restarts, seed, ctx, extra_seeds=extra,
                               ceiling=ceiling)
    Pn = riesz_norm_estimate(Y, degree, restarts, seed, ctx)

    lower_ok = T.value >= lower_slack * L.value - 1e-12
    upper_ok = T.value <= upper_slack * Pn.value * L.value + 1e-12
    slacks = {"lower": lower_slack, "upper": upper_slack}
    verdict = "pass" if (lower_ok and upper_ok) else "fail"
    return BrownHalmosReport(a, X, Y, ms, L, T, Pn, lower_ok, upper_ok,
                             slacks, verdict)


def symbol_recovery(op, n: int, degree: int = 16) -> FourierSeries:
    """Recover the symbol band of a Toeplitz-patterned operator from chi_{-n} A chi_n.

    Exact on [-n, degree] for polynomial symbols once n clears the lowest
    symbol index (the projection then cuts nothing).
    """
    if n < 0:
        raise ValueError("shift must be nonnegative")
    apply_fn = op if callable(op) else op.__call__
    image = apply_fn(FourierSeries.basis(n))
    return image.shift(-n).restrict(-n, degree)


@dataclass(frozen=True)
class PatternReport:
    kind: str  # "toeplitz" | "hankel" | "general"
    toeplitz_deviation: float
    hankel_deviation: float

    @property
    def deviation(self) -> float:
        if self.kind == "toeplitz":
            return self.toeplitz_deviation
        if self.kind == "hankel":
            return self.hankel_deviation
        return min(self.toeplitz_deviation, self.hankel_deviation)


def pattern_check(mtx, tol: float = PATTERN_TOL) -> PatternReport:
    """Classify a square matrix by constancy along diagonals or anti-diagonals.

    The deviation of a family of lines is the largest diameter of the entry
    sets along its lines; a kind is assigned when that deviation is below tol.
    """
    if isinstance(mtx, OperatorTruncation):
        m = mtx.matrix
    else:
        m = np.asarray(mtx, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("pattern check needs a square matrix")
    size = m.shape[0]

    def line_diameter(groups):
        worst = 0.0
        for vals in groups:
            if len(vals) > 1:
                arr = np.asarray(vals)
                worst = max(worst, float(np.max(np.abs(arr[:, None] - arr[None, :]))))
        return worst

    diags = {}
    antis = {}
    for i in range(size):
        for j in range(size):
            diags.setdefault(i - j, []).append(m[i, j])
            antis.setdefault(i + j, []).append(m[i, j])
    dev_t = line_diameter(diags.values())
    dev_h = line_diameter(antis.values())
    if dev_t <= tol:
        kind = "toeplitz"
    elif dev_h <= tol:
        kind = "hankel"
    else:
        kind = "general"
    return PatternReport(kind, dev_t, dev_h)
