"""Acceptance battery: quantitative desk-scale checks of the main bounds.

Each criterion is a function taking a budget dictionary and returning a
CriterionResult; the same battery backs the ``hardy suite`` command and the
acceptance test module.  Budgets default to the published values; scaled-down
budgets keep every check meaningful (runtime limits are upper bounds).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .analytic import analytic_factorize
from .circle import FourierSeries, GridFunction, analyze, make_grid, synthesize
from .compactness import separated_sequence
from .nehari import distance_to_antianalytic, hankel_norm_l2
from .operators import (
    SymbolOperator,
    apply_hankel,
    brown_halmos_check,
    hankel_matrix,
    symbol_recovery,
)
from .orlicz import PowerOrlicz, legendre_transform
from .spaces import (
    BOUNDED,
    boyd_indices_numeric,
    lebesgue,
    lorentz,
    multiplier_space,
    norm_samples,
    orlicz_space,
    product_norm_variational,
)

_INF = float("inf")

DEFAULT_BUDGETS = {
    "N": 1024, "M": 64, "d": 32, "r": 64, "dc": 24, "L": 5, "eps": 0.1,
    "seed": 7,
    "bh_symbols": 10, "nehari_symbols": 5, "factor_products": 5,
    "hilbert_max": 1024, "boyd_n": 32768, "orlicz_functions": 20,
}


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.cid:2d} [{status}] {self.name}"


def _budget(budgets, key):
    return budgets.get(key, DEFAULT_BUDGETS[key])


def _rng(budgets, cid):
    return np.random.default_rng([int(_budget(budgets, "seed")), cid])


def _random_symbol(rng, lo: int, hi: int) -> FourierSeries:
    z = rng.standard_normal(2 * (hi - lo + 1)).view(np.complex128)
    return FourierSeries({n: z[i] for i, n in enumerate(range(lo, hi + 1))})


def criterion_brown_halmos(budgets) -> CriterionResult:
    """Two-sided Toeplitz sandwich on (L^4, L^2) for seeded degree-4 symbols."""
    t0 = time.time()
    rng = _rng(budgets, 1)
    n = _budget(budgets, "N")
    d, r = _budget(budgets, "d"), _budget(budgets, "r")
    count = _budget(budgets, "bh_symbols")
    ctx = make_grid(n)
    ratios, ok = [], True
    for _ in range(count):
        a = _random_symbol(rng, -4, 4)
        rep = brown_halmos_check(a, lebesgue(4), lebesgue(2), degree=d,
                                 restarts=r, seed=int(_budget(budgets, "seed")),
                                 ctx=ctx)
        ratios.append(rep.operator_norm.value / rep.multiplier_norm.value)
        ok = ok and rep.lower_ok and rep.upper_ok
    elapsed = time.time() - t0
    ok = ok and elapsed < 60.0
    return CriterionResult(1, "Toeplitz multiplier sandwich on (L4, L2)", ok,
                           {"ratios_T_over_L": [round(x, 6) for x in ratios],
                            "slacks": [0.9, 1.3], "symbols": count},
                           elapsed)


def criterion_nehari_classical(budgets) -> CriterionResult:
    """Hankel singular value against the sup-norm distance, classical case."""
    t0 = time.time()
    rng = _rng(budgets, 2)
    count = _budget(budgets, "nehari_symbols")
    rels = []
    for _ in range(count):
        a = _random_symbol(rng, 1, 8)
        sigma = hankel_norm_l2(a, 32).value
        dist = distance_to_antianalytic(a, lebesgue(2), lebesgue(2),
                                        corrector_degree=32,
                                        seed=int(_budget(budgets, "seed")))
        rels.append(abs(sigma - dist.value.value) / sigma)
    elapsed = time.time() - t0
    ok = all(rel <= 0.02 for rel in rels) and elapsed < 120.0
    return CriterionResult(2, "classical Nehari equality at truncation 32", ok,
                           {"relative_gaps": [round(x, 6) for x in rels]},
                           elapsed)


def criterion_hilbert_matrix(budgets) -> CriterionResult:
    """sigma_max of the Hilbert Hankel blocks: strictly increasing, below pi."""
    t0 = time.time()
    top = _budget(budgets, "hilbert_max")
    sizes = []
    m = 8
    while m <= top:
        sizes.append(m)
        m *= 2
    values, prev, ok = [], 0.0, True
    for size in sizes:
        a = FourierSeries({k: 1.0 / k for k in range(1, 2 * size)})
        sigma = hankel_norm_l2(a, size - 1).value
        oracle = float(np.linalg.svd(
            1.0 / (np.add.outer(np.arange(size), np.arange(size)) + 1.0),
            compute_uv=False)[0])
        ok = ok and abs(sigma - oracle) <= 1e-10 * oracle
        ok = ok and sigma > prev
        prev = sigma
        values.append(sigma)
    elapsed = time.time() - t0
    ok = ok and prev <= np.pi and elapsed < 10.0
    return CriterionResult(3, "Hilbert matrix norms increase toward pi", ok,
                           {"sizes": sizes, "sigmas": [round(v, 8) for v in values]},
                           elapsed)


def criterion_orlicz_consistency(budgets) -> CriterionResult:
    """Luxemburg norm of t^p generators matches the Lebesgue norm."""
    t0 = time.time()
    rng = _rng(budgets, 4)
    count = _budget(budgets, "orlicz_functions")
    ctx = make_grid(512)
    worst = 0.0
    for p in (1.5, 2.0, 3.0):
        sp_orlicz = orlicz_space(PowerOrlicz(p))
        sp_leb = lebesgue(p)
        for _ in range(count):
            v = rng.standard_normal(2 * ctx.n).view(np.complex128)
            lux = norm_samples(v, sp_orlicz)
            leb = norm_samples(v, sp_leb)
            worst = max(worst, abs(lux - leb) / leb)
    elapsed = time.time() - t0
    return CriterionResult(4, "Luxemburg norm of power generators is Lebesgue",
                           worst <= 1e-6, {"worst_relative_gap": worst}, elapsed)


def criterion_legendre(budgets) -> CriterionResult:
    """Numeric generalized Legendre transform of (t^2, t^4) against u^4/4."""
    t0 = time.time()
    grid = np.logspace(-1, 1, 50)
    table = legendre_transform(PowerOrlicz(2), PowerOrlicz(4), grid)
    exact = grid ** 4 / 4.0
    worst = float(np.max(np.abs(table.phi(grid) - exact) / exact))
    elapsed = time.time() - t0
    return CriterionResult(5, "Legendre transform of (t^2, t^4) equals u^4/4",
                           worst <= 1e-3,
                           {"worst_relative_gap": worst, "repaired": table.repaired},
                           elapsed)


def _lorentz_multiplier_oracle(p1, q1, p, q):
    """Exact rational multiplier indices; None encodes an infinite index.

    In reciprocal form: 1/p2 = 1/p - 1/p1 and 1/q2 = max(1/q - 1/q1, 0).
    """
    rp2 = 1 / p - 1 / p1
    rq1 = Fraction(0) if q1 is None else 1 / q1
    rq = Fraction(0) if q is None else 1 / q
    rq2 = rq - rq1 if rq > rq1 else Fraction(0)
    p2 = None if rp2 == 0 else 1 / rp2
    q2 = None if rq2 == 0 else 1 / rq2
    return p2, q2


def criterion_lorentz_multipliers(budgets) -> CriterionResult:
    """Lorentz multiplier indices against exact rational arithmetic."""
    t0 = time.time()
    qs = [Fraction(1), Fraction(2), None]  # None = infinity
    checked, ok = 0, True
    failures = []
    for p1 in (Fraction(2), Fraction(3), Fraction(4)):
        for q1 in qs:
            for p in (Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3), p1):
                for q in qs:
                    admissible = (p < p1) or (p == p1 and q1 is not None
                                              and (q is None or q > q1))
                    if not admissible:
                        continue
                    p2, q2 = _lorentz_multiplier_oracle(p1, q1, p, q)
                    res = multiplier_space(
                        lorentz(float(p1), _INF if q1 is None else float(q1)),
                        lorentz(float(p), _INF if q is None else float(q)))
                    checked += 1
                    good = res.outcome == "space"
                    if good and p2 is None:
                        good = res.space == BOUNDED or res.space.p == _INF
                    elif good:
                        good = res.space._key()[0] == "lorentz" \
                            and abs(res.space.p - float(p2)) <= 1e-12 * float(p2)
                        want_q = _INF if q2 is None else float(q2)
                        have_q = res.space.q
                        if want_q == _INF:
                            good = good and have_q == _INF
                        else:
                            good = good and abs(have_q - want_q) <= 1e-12 * want_q
                    ok = ok and good
                    if not good:
                        failures.append(str((p1, q1, p, q)))
    elapsed = time.time() - t0
    return CriterionResult(6, "Lorentz multiplier indices match rational arithmetic",
                           ok and checked > 0,
                           {"checked": checked, "failures": failures}, elapsed)


def criterion_lozanovskii(budgets) -> CriterionResult:
    """Explicit dual-pair factorization attains the L^1 norm; search tracks it."""
    t0 = time.time()
    rng = _rng(budgets, 7)
    ctx = make_grid(_budget(budgets, "N"))
    ok = True
    rows = []
    for p in (1.5, 2.0, 3.0):
        pc = p / (p - 1.0)
        f = synthesize(_random_symbol(rng, -3, 3), ctx)
        mags = np.abs(f.samples)
        phase = np.where(mags > 0, f.samples / np.where(mags > 0, mags, 1.0), 1.0)
        g = mags ** (1.0 / p)
        k = phase * mags ** (1.0 / pc)
        explicit = norm_samples(g, lebesgue(p)) * norm_samples(k, lebesgue(pc))
        target = norm_samples(f.samples, lebesgue(1))
        est = product_norm_variational(f, lebesgue(p), lebesgue(pc))
        gap = abs(explicit - target)
        search_gap = est.value / target - 1.0
        ok = ok and gap <= 1e-9 * max(1.0, target) and abs(search_gap) <= 0.01
        rows.append({"p": p, "explicit_gap": gap, "search_excess": search_gap})
    elapsed = time.time() - t0
    return CriterionResult(7, "dual-pair product factorization attains the L1 norm",
                           ok, {"rows": rows}, elapsed)


def criterion_boyd(budgets) -> CriterionResult:
    """Numeric Boyd estimator within 0.05 of 1/p on Lebesgue and Lorentz."""
    t0 = time.time()
    n = _budget(budgets, "boyd_n")
    worst = 0.0
    for p in (1.5, 2.0, 4.0):
        for sp in (lebesgue(p), lorentz(p, 1), lorentz(p, 2)):
            est = boyd_indices_numeric(sp, n=n)
            worst = max(worst, abs(est.alpha - 1 / p), abs(est.beta - 1 / p))
    elapsed = time.time() - t0
    return CriterionResult(8, "numeric Boyd indices within 0.05 of 1/p",
                           worst <= 0.05, {"worst_abs_error": worst}, elapsed)


def criterion_noncompactness(budgets) -> CriterionResult:
    """Separated-sequence certificates, positive and negative peak locations."""
    t0 = time.time()
    ctx = make_grid(256)
    eps = _budget(budgets, "eps")
    count = _budget(budgets, "L")
    a = FourierSeries({3: 2.0, 0: 1.0})
    cert = separated_sequence(a, eps, count, ctx)
    ok = cert.pairwise_min >= 1.8 - 1e-10 and cert.k0 == 0 and cert.peak_index == 3
    b = FourierSeries({-2: 1.0, -5: 2.0})
    cert2 = separated_sequence(b, eps, count, ctx)
    ok = ok and cert2.k0 == 5 and cert2.peak_index == -5 \
        and cert2.pairwise_min >= cert2.bound - 1e-10
    elapsed = time.time() - t0
    return CriterionResult(9, "noncompactness separation certificates", ok,
                           {"positive_peak": {"indices": list(cert.indices),
                                              "pairwise_min": cert.pairwise_min,
                                              "bound": cert.bound},
                            "negative_peak": {"indices": list(cert2.indices),
                                              "pairwise_min": cert2.pairwise_min,
                                              "bound": cert2.bound}},
                           elapsed)


def _zero_free_poly(rng, degree: int) -> FourierSeries:
    # roots of the reversed polynomial kept well inside radius 1/2, so the
    # polynomial itself never vanishes on the closed disc
    roots = 0.5 * (rng.standard_normal(degree) + 1j * rng.standard_normal(degree)) \
        / np.sqrt(2.0)
    c = np.array([1.0 + 0.0j])
    for root in roots:
        c = np.convolve(c, np.array([1.0, -root]))
    return FourierSeries({n: c[n] for n in range(len(c))})


def criterion_outer_factorization(budgets) -> CriterionResult:
    """Round-trip h = p*q through outer functions with prescribed moduli."""
    t0 = time.time()
    rng = _rng(budgets, 10)
    ctx = make_grid(_budget(budgets, "N"))
    count = _budget(budgets, "factor_products")
    ok = True
    rows = []
    for _ in range(count):
        p = _zero_free_poly(rng, 4)
        q = _zero_free_poly(rng, 5)
        pg = synthesize(p, ctx).samples
        qg = synthesize(q, ctx).samples
        h = analyze(GridFunction(ctx, pg * qg), p.degree + q.degree)
        x, y = analytic_factorize(h, GridFunction(ctx, np.abs(pg)),
                                  GridFunction(ctx, np.abs(qg)))
        xg = synthesize(x, ctx).samples
        yg = synthesize(y, ctx).samples
        recon = float(np.max(np.abs(xg * yg - pg * qg)) / np.max(np.abs(pg * qg)))
        modulus = float(np.max(np.abs(np.abs(xg) - np.abs(pg))) / np.max(np.abs(pg)))
        ok = ok and recon <= 1e-6 and modulus <= 1e-6
        rows.append({"reconstruction": recon, "modulus": modulus})
    elapsed = time.time() - t0
    return CriterionResult(10, "outer factorization round-trip", ok,
                           {"rows": rows}, elapsed)


def criterion_symbol_recovery(budgets) -> CriterionResult:
    """chi_{-n} T_a chi_n reproduces polynomial symbols exactly."""
    t0 = time.time()
    rng = _rng(budgets, 11)
    symbols = [FourierSeries({-2: 1.0, 1: 3.0}), FourierSeries({0: 1.0}),
               _random_symbol(rng, -3, 3)]
    ok = True
    for a in symbols:
        shift = max(0, -min(a.support()))
        op = SymbolOperator("toeplitz", a)
        for n in (shift, shift + 1, shift + 3):
            rec = symbol_recovery(op, n, max(a.support()) + 1)
            ok = ok and rec.max_diff(a.restrict(-n, 10 ** 9)) <= 1e-10
    elapsed = time.time() - t0
    return CriterionResult(11, "shifted-character symbol recovery is exact", ok,
                           {}, elapsed)


def criterion_hankel_ambiguity(budgets) -> CriterionResult:
    """Modifying a symbol at n <= 0 leaves Hankel data bit-identical."""
    t0 = time.time()
    rng = _rng(budgets, 12)
    ctx = make_grid(256)
    a = _random_symbol(rng, -3, 5)
    b = a + FourierSeries({0: 2.5, -1: -1.0 + 0.5j, -7: 3.0})
    ok = bool(np.array_equal(hankel_matrix(a, 8).matrix, hankel_matrix(b, 8).matrix))
    f = _random_symbol(rng, 0, 4)
    out_a = apply_hankel(a, f, ctx)
    out_b = apply_hankel(b, f, ctx)
    ok = ok and dict(out_a.items()) == dict(out_b.items())
    elapsed = time.time() - t0
    return CriterionResult(12, "Hankel data ignores nonpositive symbol modes", ok,
                           {}, elapsed)


CRITERIA = [
    criterion_brown_halmos,
    criterion_nehari_classical,
    criterion_hilbert_matrix,
    criterion_orlicz_consistency,
    criterion_legendre,
    criterion_lorentz_multipliers,
    criterion_lozanovskii,
    criterion_boyd,
    criterion_noncompactness,
    criterion_outer_factorization,
    criterion_symbol_recovery,
    criterion_hankel_ambiguity,
]


def run_suite(budgets: dict | None = None) -> list:
    """Run the full battery (determinism of the CLI itself is checked in tests)."""
    budgets = dict(budgets or {})
    return [fn(budgets) for fn in CRITERIA]
