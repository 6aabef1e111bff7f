"""Closed forms for a single bivariate Gaussian pair.

Everything here is a pure function of floats, with rates in nats. The
headline quantity is :func:`wyner_ci_scalar`: the smallest rate of a shared
auxiliary that leaves at most ``gamma`` nats of conditional mutual
information between the pair. Its building blocks are the classic pair
:func:`common_information` / :func:`mutual_information` and the conjugate
transfer curves :func:`level_from_budget` (concave) and
:func:`budget_from_level` (convex), which also drive the reverse
water-filling in :mod:`.allocation`. A Lagrangian dual certificate for the
scalar value lives in :func:`dual_objective` / :func:`dual_maximizer`.

Degenerate correlations (``|rho| = 1``) yield an explicit ``math.inf``
sentinel instead of an error, because the vector water-filling remains
meaningful when one canonical component is degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError

__all__ = [
    "RHO_CLAMP_BAND",
    "AchievabilityParams",
    "achievability_params",
    "budget_from_level",
    "common_information",
    "dual_maximizer",
    "dual_objective",
    "level_from_budget",
    "mutual_information",
    "validate_budget",
    "validate_correlation",
    "wyner_ci_scalar",
]

# |rho| may overshoot 1 by up to this much (round-off from an upstream SVD)
# and is clamped; anything worse is rejected.
RHO_CLAMP_BAND = 1e-9

_LOG_2PIE = math.log(2.0 * math.pi * math.e)


def validate_correlation(rho: float) -> float:
    """Return ``rho`` clamped into [-1, 1], rejecting values beyond the
    clamp band or NaN."""
    rho = float(rho)
    if math.isnan(rho):
        raise ParameterError("correlation must not be NaN")
    if abs(rho) > 1.0 + RHO_CLAMP_BAND:
        raise ParameterError(f"correlation {rho!r} lies outside [-1, 1]")
    return min(max(rho, -1.0), 1.0)


def validate_budget(gamma: float) -> float:
    """Check that a conditional-information budget is nonnegative."""
    gamma = float(gamma)
    if math.isnan(gamma) or gamma < 0.0:
        raise ParameterError(f"budget {gamma!r} must be >= 0 nats")
    return gamma


def common_information(rho: float) -> float:
    """Wyner common information of a Gaussian pair with correlation ``rho``.

    Even in |rho| and strictly increasing; returns ``inf`` at |rho| = 1.
    """
    r = abs(validate_correlation(rho))
    if r == 1.0:
        return math.inf
    return 0.5 * (math.log1p(r) - math.log1p(-r))


def mutual_information(rho: float) -> float:
    """Mutual information of the same pair; ``inf`` at |rho| = 1."""
    r = abs(validate_correlation(rho))
    if r == 1.0:
        return math.inf
    return -0.5 * (math.log1p(r) + math.log1p(-r))


def level_from_budget(x: float) -> float:
    """Water level bought by spending ``x`` nats of budget on one component.

    Strictly concave and increasing with value 0 at 0; the inverse of
    :func:`budget_from_level`.
    """
    x = validate_budget(x)
    if math.isinf(x):
        return math.inf
    # With s = sqrt(1 - e^{-2x}), the level is (1/2)ln((1+s)/(1-s)). Rewrite
    # via 1 - s = e^{-2x}/(1+s) so both tiny and huge x keep full relative
    # accuracy (expm1 avoids the 1 - e^{-2x} cancellation near 0).
    s = math.sqrt(-math.expm1(-2.0 * x))
    return math.log1p(s) + x


def budget_from_level(beta: float) -> float:
    """Budget needed to lift one component's water level to ``beta``.

    Strictly convex and increasing with value 0 at 0; equals
    log(cosh(beta)), the inverse of :func:`level_from_budget`.
    """
    beta = float(beta)
    if math.isnan(beta) or beta < 0.0:
        raise ParameterError(f"water level {beta!r} must be >= 0 nats")
    if math.isinf(beta):
        return math.inf
    if beta < 20.0:
        # cosh(b) - 1 = 2 sinh^2(b/2): relative accuracy for small levels.
        half = math.sinh(0.5 * beta)
        return math.log1p(2.0 * half * half)
    # log(cosh(b)) = b - log 2 + log(1 + e^{-2b}): no overflow for large b.
    return beta - math.log(2.0) + math.log1p(math.exp(-2.0 * beta))


def wyner_ci_scalar(rho: float, gamma: float) -> float:
    """Relaxed Wyner common information of a scalar Gaussian pair (nats).

    Computed as (common_information(rho) - level_from_budget(gamma)) clamped
    at zero; the difference form avoids the catastrophic cancellation the
    product-form argument suffers near saturation. Zero for
    gamma >= mutual_information(rho); ``inf`` when |rho| = 1 and gamma is
    finite.
    """
    r = abs(validate_correlation(rho))
    gamma = validate_budget(gamma)
    value = common_information(r)
    if math.isinf(value):
        return 0.0 if math.isinf(gamma) else math.inf
    return max(value - level_from_budget(gamma), 0.0)


@dataclass(frozen=True)
class AchievabilityParams:
    """Optimal Gaussian auxiliary attaining :func:`wyner_ci_scalar`.

    alpha_noise
        Correlation left between the sources once the shared component is
        removed; in [0, rho].
    sigma2_w
        Weight of the shared unit-variance component in each source.
    rate_nats
        Rate of the auxiliary, I(X,Y;W).
    leakage_nats
        Conditional mutual information left, equal to the requested budget.
    """

    alpha_noise: float
    sigma2_w: float
    rate_nats: float
    leakage_nats: float


def achievability_params(rho: float, gamma: float) -> AchievabilityParams:
    """Construct the optimal auxiliary for ``0 <= rho < 1`` and a budget not
    beyond saturation.

    Rejects ``gamma > mutual_information(rho)``: the construction is
    undefined once the component is already saturated. Negative correlation
    should be folded to |rho| by the caller (a sign flip of one source).
    """
    rho = validate_correlation(rho)
    gamma = validate_budget(gamma)
    if not 0.0 <= rho < 1.0:
        raise ParameterError(
            f"construction requires 0 <= rho < 1, got {rho!r}")
    cap = mutual_information(rho)
    if gamma > cap + 1e-12:
        raise ParameterError(
            f"budget {gamma!r} exceeds the pair's mutual information {cap!r}")
    alpha = min(math.sqrt(-math.expm1(-2.0 * gamma)), rho)
    sigma2_w = (rho - alpha) / (1.0 - alpha)
    rate = 0.5 * math.log(
        (1.0 + rho) * (1.0 - alpha) / ((1.0 - rho) * (1.0 + alpha)))
    return AchievabilityParams(alpha, sigma2_w, max(rate, 0.0), gamma)


def dual_objective(rho: float, gamma: float, mu: float) -> float:
    """Lagrangian dual bound on the scalar value at multiplier ``mu > 1``.

    A true lower bound on :func:`wyner_ci_scalar` whenever
    ``mu >= 1/|rho|``; strictly concave in ``mu`` with second derivative
    -1/(mu (mu^2 - 1)) and maximizer :func:`dual_maximizer`.
    """
    r = abs(validate_correlation(rho))
    gamma = validate_budget(gamma)
    if not 0.0 < r < 1.0:
        raise ParameterError(f"dual bound requires 0 < |rho| < 1, got {rho!r}")
    mu = float(mu)
    if math.isnan(mu) or mu <= 1.0:
        raise ParameterError(f"dual variable {mu!r} must be > 1")
    joint_entropy = _LOG_2PIE + 0.5 * math.log1p(-r * r)
    envelope = _LOG_2PIE + 0.5 * math.log(
        (1.0 - r) ** 2 * (mu + 1.0) / (mu - 1.0))
    return (joint_entropy - mu * gamma
            + 0.5 * mu * math.log(mu * mu / (mu * mu - 1.0)) - envelope)


def dual_maximizer(gamma: float) -> float:
    """Multiplier at which :func:`dual_objective`'s derivative vanishes.

    Returns ``inf`` for ``gamma = 0`` (the constraint binds arbitrarily
    hard); tends to 1 as the budget grows.
    """
    gamma = validate_budget(gamma)
    if gamma == 0.0:
        return math.inf
    return 1.0 / math.sqrt(-math.expm1(-2.0 * gamma))
