"""Independent brute-force verifiers for every closed form in the package.

Each verifier recomputes its target through a different route than the
library modules: determinant arithmetic on explicitly constructed
covariances, exhaustive grids, golden-section maximization of the dual
bounds, and exact entropy sums over finite probability tables. Every check
returns a :class:`CheckReport` carrying the oracle value and the closed-form
value side by side; :func:`run_suite` runs the published instance matrix
used by the command-line ``verify`` subcommand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import allocation, graywyner, scalar
from .errors import ParameterError

__all__ = [
    "SUITES",
    "CheckReport",
    "discrete_mutual_information",
    "dsbs_construction_check",
    "erasure_construction_check",
    "run_suite",
    "verify_dual_bound_sweep",
    "verify_envelope_grid",
    "verify_graywyner_dual",
    "verify_scalar_achievability",
    "verify_waterfill_grid",
]

_LN2 = math.log(2.0)
_FOUR_PI2E2 = (2.0 * math.pi * math.e) ** 2


@dataclass(frozen=True)
class CheckReport:
    """One verifier outcome: oracle value vs closed form at a tolerance."""

    name: str
    oracle_value: float
    closed_form_value: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "oracle_value": self.oracle_value,
            "closed_form_value": self.closed_form_value,
            "difference": self.oracle_value - self.closed_form_value,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# scalar achievability sweep
# ---------------------------------------------------------------------------

def _construction_curves(rho: float, alphas: np.ndarray):
    """Rate and leakage of the shared-component construction.

    Both are computed from the explicit conditional covariance of the pair
    given the auxiliary (2x2 determinant arithmetic), not from the library's
    closed forms, so the sweep is an independent code path.
    """
    shared = (rho - alphas) / (1.0 - alphas)   # weight of the common part
    var_c = 1.0 - shared                       # Var(X|W) = Var(Y|W)
    cov_c = rho - shared                       # Cov(X, Y | W)
    det_cond = var_c * var_c - cov_c * cov_c
    det_marginal = 1.0 - rho * rho
    rate = 0.5 * np.log(det_marginal / det_cond)
    leakage = 0.5 * np.log(var_c * var_c / det_cond)
    return rate, leakage


def verify_scalar_achievability(rho: float, gamma: float,
                                grid_size: int = 100_000) -> CheckReport:
    """Sweep the residual noise correlation over [0, rho] and compare the
    best construction obeying the leakage budget with the scalar closed form.

    Also confirms that the analytic choice sqrt(1 - e^{-2 gamma}) meets the
    budget with equality.
    """
    rho = float(rho)
    gamma = scalar.validate_budget(gamma)
    if not 0.0 < rho < 1.0:
        raise ParameterError(f"sweep requires 0 < rho < 1, got {rho!r}")
    cap = scalar.mutual_information(rho)
    if gamma > cap + 1e-12:
        raise ParameterError(
            f"budget {gamma!r} beyond saturation {cap!r}; sweep undefined")
    if grid_size < 2:
        raise ParameterError("grid_size must be at least 2")
    alphas = np.linspace(0.0, rho, grid_size)
    rate, leakage = _construction_curves(rho, alphas)
    feasible = leakage <= gamma + 1e-15
    best_idx = int(np.argmin(np.where(feasible, rate, np.inf)))
    best = float(rate[best_idx])
    closed = scalar.wyner_ci_scalar(rho, gamma)

    alpha_star = min(math.sqrt(-math.expm1(-2.0 * gamma)), rho)
    _, leak_star = _construction_curves(rho, np.array([alpha_star]))
    budget_gap = abs(float(leak_star[0]) - gamma)

    step = rho / (grid_size - 1)
    slope = 1.0 / (1.0 - float(alphas[best_idx]) ** 2)
    tolerance = max(4.0 * step * slope, 1e-12)
    passed = (-1e-12 <= best - closed <= tolerance) and budget_gap <= 1e-12
    return CheckReport(
        name=f"scalar_achievability(rho={rho}, gamma={gamma})",
        oracle_value=best,
        closed_form_value=closed,
        tolerance=tolerance,
        passed=passed,
        details={
            "grid_size": grid_size,
            "alpha_best": float(alphas[best_idx]),
            "alpha_construction": alpha_star,
            "construction_budget_gap": budget_gap,
        },
    )


def verify_dual_bound_sweep(samples: int = 50, seed: int = 7) -> CheckReport:
    """Weak duality sweep for the scalar dual bound.

    On random admissible triples (rho, gamma, mu >= 1/rho) the dual bound
    must never exceed the closed form; the report's oracle value is the
    worst (largest) gap found.
    """
    rng = np.random.default_rng(seed)
    worst = -math.inf
    worst_at = None
    for _ in range(samples):
        rho = float(rng.uniform(0.05, 0.95))
        gamma = float(rng.uniform(0.0, 1.5)) * scalar.mutual_information(rho)
        mu = 1.0 / rho + float(rng.uniform(0.0, 10.0))
        gap = (scalar.dual_objective(rho, gamma, mu)
               - scalar.wyner_ci_scalar(rho, gamma))
        if gap > worst:
            worst, worst_at = gap, (rho, gamma, mu)
    return CheckReport(
        name=f"scalar_dual_weak_duality(samples={samples})",
        oracle_value=worst,
        closed_form_value=0.0,
        tolerance=1e-12,
        passed=worst <= 1e-12,
        details={"worst_instance": worst_at},
    )


# ---------------------------------------------------------------------------
# water-filling simplex grid
# ---------------------------------------------------------------------------

def _ci_curve(rho: float, gammas: np.ndarray) -> np.ndarray:
    """Vectorized scalar closed form; the per-component price the simplex
    search sums up (the quantity under test is the split, not the scalar)."""
    s = np.sqrt(np.maximum(-np.expm1(-2.0 * gammas), 0.0))
    return np.maximum(
        scalar.common_information(rho) - (np.log1p(s) + gammas), 0.0)


def _simplex_axis(total: float, step: float) -> np.ndarray:
    if total <= 0.0:
        return np.array([0.0])
    return np.linspace(0.0, total, max(2, int(round(total / step)) + 1))


def verify_waterfill_grid(spectrum, gamma: float,
                          step: float = 1e-3) -> CheckReport:
    """Exhaustive simplex search of the budget split versus ``waterfill``.

    Supports 1 to 3 components (the grid blows up combinatorially beyond
    that, and the tensorized structure makes larger spectra redundant for
    verification). Grid agreement is judged at 10x the step size.
    """
    rhos = allocation.as_rhos(spectrum)
    gamma = scalar.validate_budget(gamma)
    if not 1 <= len(rhos) <= 3:
        raise ParameterError("grid oracle supports 1 to 3 components")
    if rhos and rhos[0] >= 1.0:
        raise ParameterError("grid oracle requires rho < 1")
    if step <= 0.0:
        raise ParameterError("step must be positive")
    alloc = allocation.waterfill(rhos, gamma)

    if len(rhos) == 1:
        grid_min = float(_ci_curve(rhos[0], np.array([gamma]))[0])
        argmin = (gamma,)
    elif len(rhos) == 2:
        axis = _simplex_axis(gamma, step)
        values = _ci_curve(rhos[0], axis) + _ci_curve(rhos[1], gamma - axis)
        k = int(np.argmin(values))
        grid_min = float(values[k])
        argmin = (float(axis[k]), float(gamma - axis[k]))
    else:
        grid_min, argmin = math.inf, None
        for g1 in _simplex_axis(gamma, step):
            remainder = gamma - g1
            inner = _simplex_axis(remainder, step)
            values = (_ci_curve(rhos[1], inner)
                      + _ci_curve(rhos[2], np.maximum(remainder - inner, 0.0))
                      + float(_ci_curve(rhos[0], np.array([g1]))[0]))
            k = int(np.argmin(values))
            if float(values[k]) < grid_min:
                grid_min = float(values[k])
                argmin = (float(g1), float(inner[k]),
                          float(max(remainder - inner[k], 0.0)))

    tolerance = 10.0 * step
    passed = abs(grid_min - alloc.total_value) <= tolerance
    return CheckReport(
        name=f"waterfill_grid(spectrum={list(rhos)}, gamma={gamma})",
        oracle_value=grid_min,
        closed_form_value=alloc.total_value,
        tolerance=tolerance,
        passed=passed,
        details={
            "step": step,
            "grid_argmin": argmin,
            "waterfill_gammas": list(alloc.gammas),
            "water_level_beta": alloc.water_level_beta,
        },
    )


# ---------------------------------------------------------------------------
# constrained-covariance envelope grid
# ---------------------------------------------------------------------------

def _envelope_objective(lam: float, sig2, q):
    """The two-variable envelope objective, written out literally."""
    sig4 = np.square(sig2)
    return (0.5 * np.log(_FOUR_PI2E2 * sig4)
            - 0.5 * (1.0 + lam) * np.log(_FOUR_PI2E2 * sig4 * (1.0 - q * q)))


def envelope_closed_form(rho: float, lam: float) -> float:
    """Closed-form minimum of the envelope objective over the feasible set."""
    return (0.5 * math.log(1.0 / (1.0 - lam * lam))
            - 0.5 * lam * math.log(
                _FOUR_PI2E2 * (1.0 - rho) ** 2 * (1.0 + lam) / (1.0 - lam)))


def verify_envelope_grid(rho: float, lam: float,
                         grid_points: int = 500) -> CheckReport:
    """Brute-force the constrained-covariance envelope bound.

    The feasible set caps sig2 at min{1, (1-rho)/(1-q)} for q <= rho and at
    min{1, (1+rho)/(1+q)} above, with a kink at q = rho. The grid is
    boundary-fitted: each of the ``grid_points`` q-columns carries
    ``grid_points`` sig2 samples up to its own cap, and a grid node sits
    exactly on the kink. (A plain bounding-box product grid cannot localize
    the minimizer: the objective decreases toward the cap, so off-boundary
    sampling noise of order cap/grid_points swamps the shallow curvature
    along the boundary.) Checks that the grid minimum does not undercut the
    closed form and that the minimizer lands within two cells of the
    analytic optimum (sig2, q) = ((1-rho)/(1-lam), lam).
    """
    rho, lam = float(rho), float(lam)
    if not 0.0 < lam <= rho < 1.0:
        raise ParameterError(
            f"envelope grid requires 0 < lam <= rho < 1, got "
            f"lam={lam!r}, rho={rho!r}")
    if grid_points < 10:
        raise ParameterError("grid_points must be at least 10")
    edge = 1.0 / grid_points
    n_left = min(max(2, int(round((rho + 1.0) / 2.0 * grid_points))),
                 grid_points - 1)
    n_right = grid_points - n_left + 1  # the node at the kink is shared
    q = np.unique(np.concatenate([
        np.linspace(-1.0 + edge, rho, n_left),
        np.linspace(rho, 1.0 - edge, n_right),
    ]))
    cap = np.where(q <= rho, (1.0 - rho) / (1.0 - q), (1.0 + rho) / (1.0 + q))
    cap = np.minimum(cap, 1.0)
    fractions = np.linspace(edge, 1.0, grid_points)[:, None]
    sig2 = fractions * cap[None, :]
    objective = _envelope_objective(lam, sig2, q[None, :])
    row, col = np.unravel_index(int(np.argmin(objective)), objective.shape)
    grid_min = float(objective[row, col])
    sig2_hat, q_hat = float(sig2[row, col]), float(q[col])

    closed = envelope_closed_form(rho, lam)
    sig2_star, q_star = (1.0 - rho) / (1.0 - lam), lam
    q_cell = (rho + 1.0 - edge) / (n_left - 1)
    sig2_cell = (1.0 - edge) / (grid_points - 1) * float(cap[col])
    kkt_gap = float(_envelope_objective(
        lam, np.array([sig2_star]), np.array([q_star]))[0]) - closed

    passed = (grid_min >= closed - 1e-3
              and abs(q_hat - q_star) <= 2.0 * q_cell + 1e-12
              and abs(sig2_hat - sig2_star) <= 2.0 * sig2_cell + 1e-12
              and abs(kkt_gap) <= 1e-12)
    return CheckReport(
        name=f"envelope_grid(rho={rho}, lam={lam})",
        oracle_value=grid_min,
        closed_form_value=closed,
        tolerance=1e-3,
        passed=passed,
        details={
            "grid_points": grid_points,
            "minimizer": [sig2_hat, q_hat],
            "analytic_minimizer": [sig2_star, q_star],
            "cells_off": [abs(sig2_hat - sig2_star) / sig2_cell,
                          abs(q_hat - q_star) / q_cell],
            "kkt_identity_gap": kkt_gap,
        },
    )


# ---------------------------------------------------------------------------
# Gray-Wyner dual maximization
# ---------------------------------------------------------------------------

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_section_max(fn, lo: float, hi: float, iterations: int = 200):
    """Golden-section search for the maximum of a unimodal function."""
    a, b = lo, hi
    width = b - a
    c, d = b - _INVPHI * width, a + _INVPHI * width
    fc, fd = fn(c), fn(d)
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            width = b - a
            c = b - _INVPHI * width
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            width = b - a
            d = a + _INVPHI * width
            fd = fn(d)
        if width <= 1e-15:
            break
    return (c, fc) if fc >= fd else (d, fd)


def verify_graywyner_dual(rho: float, delta: float,
                          alpha_private: float) -> CheckReport:
    """Maximize the Gray-Wyner dual bound numerically (unit variance) and
    compare with the closed-form branch value.

    In the zero-rate regime the dual maximum is only required to stay
    nonpositive; in the two active regimes it must match the closed form to
    1e-8.
    """
    point = graywyner.common_rate(1.0, rho, delta, alpha_private)
    nu_hat, best = _golden_section_max(
        lambda nu: graywyner.dual_objective(rho, delta, alpha_private, nu),
        0.5 + 1e-9, 1.0)
    if point.regime is graywyner.Regime.INFEASIBLE_ZERO:
        passed = best <= 1e-12 and point.r0 == 0.0
    else:
        passed = abs(best - point.r0) <= 1e-8
    return CheckReport(
        name=(f"graywyner_dual(rho={rho}, delta={delta}, "
              f"alpha={alpha_private})"),
        oracle_value=best,
        closed_form_value=point.r0,
        tolerance=1e-8,
        passed=passed,
        details={"nu_hat": nu_hat, "regime": point.regime.value},
    )


# ---------------------------------------------------------------------------
# exact finite-alphabet constructions
# ---------------------------------------------------------------------------

def discrete_mutual_information(pmf, axes_a, axes_b, given=()) -> float:
    """Exact I(A;B|C) in nats from a joint probability table.

    ``axes_a``, ``axes_b``, and ``given`` are disjoint tuples of axes of
    ``pmf``. Entropy sums use the convention 0 log 0 = 0; the table must be
    nonnegative with total mass 1 to within 1e-12.
    """
    pmf = np.asarray(pmf, dtype=float)
    axes_a, axes_b, given = tuple(axes_a), tuple(axes_b), tuple(given)
    groups = axes_a + axes_b + given
    if len(set(groups)) != len(groups):
        raise ParameterError("axis groups must be disjoint")
    if any(not 0 <= ax < pmf.ndim for ax in groups):
        raise ParameterError(f"axis out of range for a {pmf.ndim}-d table")
    if np.any(pmf < -1e-15):
        raise ParameterError("pmf entries must be nonnegative")
    total = float(pmf.sum())
    if abs(total - 1.0) > 1e-12:
        raise ParameterError(f"pmf mass {total!r} is not 1")

    def entropy(axes):
        keep = tuple(sorted(axes))
        drop = tuple(ax for ax in range(pmf.ndim) if ax not in keep)
        marginal = pmf.sum(axis=drop) if drop else pmf
        flat = marginal.ravel()
        positive = flat[flat > 0.0]
        return float(-(positive * np.log(positive)).sum())

    return (entropy(axes_a + given) + entropy(axes_b + given)
            - entropy(axes_a + axes_b + given) - entropy(given))


def _binary_entropy_bits(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


def dsbs_construction_check(a0: float) -> CheckReport:
    """Binary symmetric double source: verify the explicit common-bit
    construction on its exact 8-atom table.

    W is a uniform bit and each source flips it independently with
    probability p = (1 - sqrt(1 - 2 a0))/2. The check confirms the pair is
    conditionally independent given W, reproduces the known common
    information 1 + h(a0) - 2 h(p) in bits, and leaves the right marginal
    (sources disagreeing with probability a0).
    """
    a0 = float(a0)
    if not 0.0 < a0 <= 0.5:
        raise ParameterError(f"disagreement probability {a0!r} must lie in "
                             "(0, 1/2]")
    p = 0.5 * (1.0 - math.sqrt(1.0 - 2.0 * a0))
    flip = (1.0 - p, p)
    pmf = np.zeros((2, 2, 2))
    for w in range(2):
        for x in range(2):
            for y in range(2):
                pmf[w, x, y] = 0.5 * flip[x ^ w] * flip[y ^ w]
    conditional = discrete_mutual_information(pmf, (1,), (2,), given=(0,))
    rate_bits = discrete_mutual_information(pmf, (1, 2), (0,)) / _LN2
    formula_bits = (1.0 + _binary_entropy_bits(a0)
                    - 2.0 * _binary_entropy_bits(p))
    marginal = pmf.sum(axis=0)
    expected = np.array([[(1.0 - a0) / 2.0, a0 / 2.0],
                         [a0 / 2.0, (1.0 - a0) / 2.0]])
    marginal_gap = float(np.abs(marginal - expected).max())
    passed = (abs(conditional) <= 1e-12
              and abs(rate_bits - formula_bits) <= 1e-12
              and marginal_gap <= 1e-12)
    return CheckReport(
        name=f"dsbs_construction(a0={a0})",
        oracle_value=rate_bits,
        closed_form_value=formula_bits,
        tolerance=1e-12,
        passed=passed,
        details={
            "crossover": p,
            "conditional_mi_nats": conditional,
            "marginal_gap": marginal_gap,
            "units": "bits",
        },
    )


def erasure_construction_check(gamma: float) -> CheckReport:
    """Duplicate binary source: verify the erasure auxiliary on its exact
    table.

    For Z uniform on {0,1} and the pair (Z, Z), revealing Z except with
    erasure probability gamma/ln2 leaves exactly gamma nats of conditional
    mutual information and costs ln2 - gamma nats of rate, meeting the
    generic lower bound max{I - gamma, 0} with equality.
    """
    gamma = scalar.validate_budget(gamma)
    if gamma > _LN2 + 1e-12:
        raise ParameterError(
            f"budget {gamma!r} exceeds the source entropy ln 2")
    t = min(gamma / _LN2, 1.0)
    pmf = np.zeros((3, 2, 2))  # w in {0, 1, erasure}
    for z in range(2):
        pmf[z, z, z] = 0.5 * (1.0 - t)
        pmf[2, z, z] = 0.5 * t
    conditional = discrete_mutual_information(pmf, (1,), (2,), given=(0,))
    rate = discrete_mutual_information(pmf, (1, 2), (0,))
    expected_rate = _LN2 - gamma
    passed = (abs(conditional - gamma) <= 1e-12
              and abs(rate - expected_rate) <= 1e-12)
    return CheckReport(
        name=f"erasure_construction(gamma={gamma})",
        oracle_value=rate,
        closed_form_value=expected_rate,
        tolerance=1e-12,
        passed=passed,
        details={
            "erasure_probability": t,
            "conditional_mi_gap": conditional - gamma,
        },
    )


# ---------------------------------------------------------------------------
# published suite matrix
# ---------------------------------------------------------------------------

SUITES = ("scalar", "waterfill", "envelope", "graywyner", "discrete", "all")

_SCALAR_INSTANCES = ((0.5, 0.1), (0.8, 0.05), (0.3, 0.02), (0.9, 0.4))
_WATERFILL_INSTANCES = (
    ((0.9, 0.2), 1.0),
    ((0.8, 0.8), 0.2),
    ((0.9, 0.5, 0.2), 0.5),
)
_ENVELOPE_INSTANCES = ((0.5, 0.3), (0.7, 0.7), (0.9, 0.2))
_GRAYWYNER_INSTANCES = (
    (0.5, 0.75, 0.0),
    (0.5, 0.3, 0.0),
    (0.5, 0.1, 0.5),
    (0.7, 1.5, 0.0),
)
_DSBS_INSTANCES = (0.1, 0.25, 0.4, 0.5)
_ERASURE_INSTANCES = (0.0, 0.1, 0.3, _LN2)


def run_suite(name: str) -> list[CheckReport]:
    """Run the named battery of verifiers on its fixed instance matrix."""
    if name == "all":
        reports = []
        for sub in SUITES[:-1]:
            reports.extend(run_suite(sub))
        return reports
    if name == "scalar":
        reports = [verify_scalar_achievability(rho, gamma)
                   for rho, gamma in _SCALAR_INSTANCES]
        reports.append(verify_dual_bound_sweep())
        return reports
    if name == "waterfill":
        return [verify_waterfill_grid(spectrum, gamma)
                for spectrum, gamma in _WATERFILL_INSTANCES]
    if name == "envelope":
        return [verify_envelope_grid(rho, lam)
                for rho, lam in _ENVELOPE_INSTANCES]
    if name == "graywyner":
        return [verify_graywyner_dual(rho, delta, alpha)
                for rho, delta, alpha in _GRAYWYNER_INSTANCES]
    if name == "discrete":
        reports = [dsbs_construction_check(a0) for a0 in _DSBS_INSTANCES]
        reports.extend(erasure_construction_check(gamma)
                       for gamma in _ERASURE_INSTANCES)
        return reports
    raise ParameterError(f"unknown suite {name!r}; choose from {SUITES}")
