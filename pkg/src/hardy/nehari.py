"""Hankel norms and distances to the antianalytic subspace.

The classical identity equates the H^2 -> H^2 Hankel norm with the
sup-norm distance from the symbol to the conjugate-analytic functions; its
general form sandwiches the Hankel norm between constant multiples of the
distance taken in the multiplier norm of the space pair.  The distance is
computed here by derivative-free minimization over correctors supported on
nonpositive indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._search import pattern_minimize
from .analytic import riesz_norm_estimate
from .circle import FourierSeries, GridContext, GridFunction, make_grid, synthesize
from .operators import SymbolOperator, hankel_matrix, operator_norm_estimate
from .spaces import (
    NormEstimate,
    Space,
    boyd_indices,
    multiplier_norm_variational,
    multiplier_space,
    norm_samples,
    orlicz_factorization_check,
    product_space,
)

UPPER_SANDWICH_SLACK = 1.05
RIESZ_UPPER_SLACK = 1.3


def hankel_norm_l2(a: FourierSeries, m: int) -> NormEstimate:
    """Largest singular value of the (m+1) x (m+1) Hankel block of the symbol.

    Exact for the truncation; equals the full H^2 -> H^2 operator norm once
    m reaches the top degree of a polynomial symbol.
    """
    block = hankel_matrix(a, m).matrix
    _, s, vh = np.linalg.svd(block)
    witness = FourierSeries({j: vh[0, j].conjugate() for j in range(m + 1)}).compacted(1e-15)
    return NormEstimate(float(s[0]), "exact", witness, note=f"truncation m={m}")


@dataclass(frozen=True)
class DistanceResult:
    """Distance value, the optimal corrector found, and the search effort."""

    value: NormEstimate
    corrector: FourierSeries
    iterations: int

    def __post_init__(self):
        if any(n > 0 for n in self.corrector.support()):
            raise ValueError("corrector must be supported on nonpositive indices")


class _MultiplierObjective:
    """||residual||_{M(X,Y)} as a function of corrector coefficients.

    Uses the exact norm when the multiplier space is exactly normable,
    otherwise falls back to a budgeted variational lower estimate.
    """

    def __init__(self, base: FourierSeries, X, Y, support, ctx,
                 inner_degree, inner_restarts, seed):
        self.ctx = ctx
        self.support = support
        self.base_grid = synthesize(base, ctx).samples
        self.cols = ctx.basis(tuple(support))
        ms = multiplier_space(X, Y)
        self.space_result = ms
        self.X, self.Y = X, Y
        self.exact = ms.outcome == "space" and not ms.space.approx
        self.inner_degree = inner_degree
        self.inner_restarts = inner_restarts
        self.seed = seed

    def residual_samples(self, hvec: np.ndarray) -> np.ndarray:
        c = hvec[::2] + 1j * hvec[1::2]
        return self.base_grid - self.cols @ c

    def __call__(self, hvec: np.ndarray) -> float:
        res = self.residual_samples(hvec)
        if self.exact:
            return norm_samples(res, self.space_result.space)
        est = multiplier_norm_variational(GridFunction(self.ctx, res), self.X,
                                          self.Y, degree=self.inner_degree,
                                          restarts=self.inner_restarts,
                                          seed=self.seed)
        return est.value


def _lawson_sup_start(cols: np.ndarray, target: np.ndarray, iters: int = 250):
    """Iteratively reweighted least squares for min_h sup |target - cols @ h|.

    Lawson's classical algorithm for linear Chebyshev approximation; the
    weight floor guards against points locking out at zero weight.
    """
    w = np.ones(cols.shape[0])
    best, best_val = None, np.inf
    for _ in range(iters):
        sw = np.sqrt(w)[:, None]
        h, *_ = np.linalg.lstsq(cols * sw, target * sw[:, 0], rcond=None)
        r = np.abs(target - cols @ h)
        val = float(r.max())
        if val < best_val:
            best_val, best = val, h
        w = w * np.maximum(r, 1e-12 * max(val, 1e-300))
        total = w.sum()
        if not np.isfinite(total) or total <= 0:
            break
        w = w / total * len(w)
    return best


def _schmidt_corrector_seed(a: FourierSeries, support, ctx: GridContext):
    """Corrector built from the top Schmidt pair of the L2 Hankel block.

    At the classical optimum the residual e = a - h satisfies e * Jv = s * u
    for the top singular triple (s, u, v), so h = a - s*u/(Jv) is a strong
    multi-start whenever v stays away from zero on the circle.
    """
    m = max(-support[0], a.degree, 8)
    if 2 * (m + a.degree + 1) >= ctx.n:
        return None
    block = hankel_matrix(a, m).matrix
    if not np.any(block):
        return None
    uu, ss, vh = np.linalg.svd(block)
    v = vh[0].conj()
    u = uu[:, 0]
    v_series = FourierSeries({j: v[j] for j in range(m + 1)})
    u_series = FourierSeries({j: u[j] for j in range(m + 1)})
    jv = synthesize(v_series.map_indices(lambda n: -1 - n), ctx).samples
    floor = 1e-6 * np.max(np.abs(jv))
    if np.min(np.abs(jv)) < floor:
        return None
    e = ss[0] * synthesize(u_series, ctx).samples / jv
    a_grid = synthesize(a, ctx).samples
    bins = np.fft.fft(a_grid - e) / ctx.n
    return np.array([bins[n % ctx.n] for n in support])


def distance_to_antianalytic(a: FourierSeries, X: Space, Y: Space,
                             corrector_degree: int | None = None,
                             inner_degree: int = 8, inner_restarts: int = 8,
                             seed: int = 0,
                             ctx: GridContext | None = None) -> DistanceResult:
    """Minimize ||a - h||_{M(X,Y)} over h supported on [-corrector_degree, 0].

    Only the positive-frequency part of the symbol matters: the nonpositive
    part of a inside the corrector band is absorbed into h up front, so the
    search (and hence the value) is invariant under modifying a at indices
    n <= 0.  The returned value is an upper bound for the truncated-support
    distance, achieved by the returned corrector.
    """
    ms = multiplier_space(X, Y)
    if ms.outcome == "zero":
        raise ValueError("multiplier space is trivial: no bounded Hankel "
                         "operator with a nonzero symbol exists for this pair")
    if ms.outcome == "unknown":
        raise ValueError(f"multiplier space unknown for ({X}, {Y}): {ms.reason}")
    if corrector_degree is None:
        corrector_degree = 2 * a.degree + 8
    dc = int(corrector_degree)
    support = list(range(-dc, 1))

    # translation reduction: coefficients of a at n <= 0 within the corrector
    # band are cancelled exactly; anything deeper stays in the objective
    absorbed = a.restrict(-dc, 0)
    reduced = a - absorbed

    if ctx is None:
        band = max(reduced.degree, dc) + 2
        n = max(1024, 4 * band + 4)
        ctx = make_grid(n + (n % 2))

    objective = _MultiplierObjective(reduced, X, Y, support, ctx,
                                     inner_degree, inner_restarts, seed)

    ncoord = 2 * len(support)
    scale = max((abs(v) for _, v in a.items()), default=1.0)
    coarse = 0.5 * max(scale, 1e-6)
    starts = [(np.zeros(ncoord), coarse)]

    def to_vec(c: np.ndarray) -> np.ndarray:
        out = np.empty(ncoord)
        out[::2] = c.real
        out[1::2] = c.imag
        return out

    starts.append((to_vec(-absorbed.to_vector(support)), coarse))  # corrector 0
    starts.append((to_vec(absorbed.to_vector(support)), coarse))
    rng = np.random.default_rng(seed)
    for _ in range(3):
        starts.append((0.3 * scale * rng.standard_normal(ncoord), coarse))
    schmidt = _schmidt_corrector_seed(reduced, support, ctx)
    if schmidt is not None:
        starts.append((to_vec(schmidt), coarse))
    if objective.exact and objective.space_result.space._key()[0] == "linf":
        # the sup-norm objective is a linear Chebyshev problem: start one
        # search from the iteratively-reweighted-least-squares solution
        lawson = _lawson_sup_start(objective.cols, objective.base_grid)
        if lawson is not None:
            starts.append((to_vec(lawson), 0.02 * max(scale, 1e-6)))

    best_x, best_val, total_sweeps = None, np.inf, 0
    for x0, step0 in starts:
        x, val, sweeps = pattern_minimize(objective, x0, step0=step0,
                                          step_min=1e-4 * max(scale, 1e-6))
        total_sweeps += sweeps
        if val < best_val - 1e-15:
            best_val, best_x = val, x

    c = best_x[::2] + 1j * best_x[1::2]
    h_reduced = FourierSeries({n: c[i] for i, n in enumerate(support)})
    corrector = (h_reduced + absorbed).compacted(1e-15)
    residual = GridFunction(ctx, objective.residual_samples(best_x))
    estimate = NormEstimate(float(best_val), "upper-bound", residual,
                            note=f"corrector support [-{dc}, 0]")
    return DistanceResult(estimate, corrector, total_sweeps)


@dataclass(frozen=True)
class NehariReport:
    """Observed two-sided comparison of a Hankel norm with the Nehari distance."""

    symbol: FourierSeries
    source: Space
    target: Space
    conditions: dict
    hypothesis_ok: bool
    distance: DistanceResult | None
    hankel_norm: NormEstimate | None
    riesz_norm: NormEstimate | None
    upper_ok: bool | None
    observed_ratio: float | None
    slacks: dict = field(default_factory=dict)
    verdict: str = ""

    @property
    def passed(self) -> bool:
        if self.verdict.startswith("unbounded"):
            return True
        if not self.hypothesis_ok:
            return True  # exploratory: nothing asserted
        return bool(self.upper_ok)


def _factorization_condition(X: Space, Y: Space, ms) -> bool | None:
    """Does X factorize Y (X (.) M(X,Y) = Y)?  None when not decidable here."""
    if X == Y:
        return True  # the dual pair factors L^1 through itself
    if ms.outcome != "space":
        return None
    kx, ky = X._key(), Y._key()
    if kx[0] == "orlicz" and ky[0] == "orlicz":
        chk = orlicz_factorization_check(Y.phi, X.phi)
        return bool(chk.ok and not chk.degenerate)
    prod = product_space(X, ms.space)
    if prod.outcome != "space":
        return None
    return prod.space == Y


def nehari_check(a: FourierSeries, X: Space, Y: Space, corrector_degree=None,
                 degree: int = 16, restarts: int = 16, seed: int = 0,
                 ctx: GridContext | None = None,
                 sandwich_slack: float = UPPER_SANDWICH_SLACK,
                 riesz_slack: float = RIESZ_UPPER_SLACK) -> NehariReport:
    """Check the quantitative upper Nehari sandwich and record the lower ratio.

    Hypotheses tried in order: equal spaces, the Boyd-index gap
    beta_X < alpha_Y, and the factorization condition of the pair's family.
    When none holds the computation still runs but is flagged exploratory.
    The observed ratio Hankel-norm / distance is reported, never asserted:
    the lower constant of the sandwich is not explicit.
    """
    ms = multiplier_space(X, Y)
    if ms.outcome == "zero":
        return NehariReport(a, X, Y, {}, False, None, None, None, None, None,
                            {}, "unbounded for every symbol with a nonzero "
                                "positive-frequency part")
    bx = boyd_indices(X)
    by = boyd_indices(Y)
    conditions = {
        "equal_spaces": X == Y,
        "boyd_gap": bx[1] < by[0] - 1e-12,
        "factorization": _factorization_condition(X, Y, ms),
    }
    hypothesis_ok = bool(conditions["equal_spaces"] or conditions["boyd_gap"]
                         or conditions["factorization"])

    dist = distance_to_antianalytic(a, X, Y, corrector_degree,
                                    inner_degree=min(degree, 8),
                                    inner_restarts=min(restarts, 8),
                                    seed=seed, ctx=ctx)
    hn = operator_norm_estimate(SymbolOperator("hankel", a), X, Y, degree,
                                restarts, seed, ctx)
    pn = riesz_norm_estimate(Y, degree, restarts, seed, ctx)
    upper_ok = hn.value <= riesz_slack * pn.value * dist.value.value \
        * sandwich_slack + 1e-12
    ratio = hn.value / dist.value.value if dist.value.value > 0 else None
    verdict = "pass" if upper_ok else "fail"
    if not hypothesis_ok:
        verdict = "outside theorem hypotheses (exploratory): " + verdict
    return NehariReport(a, X, Y, conditions, hypothesis_ok, dist, hn, pn,
                        upper_ok, ratio,
                        {"riesz_upper": riesz_slack, "sandwich": sandwich_slack},
                        verdict)
