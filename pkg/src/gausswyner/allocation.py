"""Reverse water-filling of a conditional-information budget across
independent Gaussian component pairs.

Given canonical correlations rho_1 >= ... >= rho_n and a total budget, the
optimal split gives every unsaturated component the same water level ``beta``
in value space, while components too weak to absorb their share are capped at
their own mutual information. :func:`waterfill` finds ``beta`` by bisection;
:func:`evaluate_allocation` prices an arbitrary split for comparison, and
:func:`saturation_breakpoints` lists the budgets at which components drop
out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError
from .scalar import (
    RHO_CLAMP_BAND,
    budget_from_level,
    common_information,
    level_from_budget,
    mutual_information,
    validate_budget,
    wyner_ci_scalar,
)

__all__ = [
    "Allocation",
    "as_rhos",
    "evaluate_allocation",
    "saturation_breakpoints",
    "waterfill",
]

BISECT_TOL = 1e-12
BISECT_MAX_ITERS = 200


@dataclass(frozen=True)
class Allocation:
    """Optimal budget split for one spectrum.

    gammas
        Per-component budgets, min{budget_from_level(beta), I(rho_i)}.
    water_level_beta
        Shared level of the unsaturated components (nats).
    total_value
        Sum of (C(rho_i) - beta) clamped at zero; ``inf`` if some rho_i = 1.
    saturated
        True where the component's budget hit its mutual information.
    slack
        Surplus budget left once every component is saturated (nonzero only
        when the request exceeds the summed mutual informations).
    """

    gammas: tuple[float, ...]
    water_level_beta: float
    total_value: float
    saturated: tuple[bool, ...]
    slack: float = 0.0


def as_rhos(spectrum) -> tuple[float, ...]:
    """Coerce a CanonicalSpectrum or plain sequence into a validated,
    descending tuple of correlations in [0, 1]."""
    raw = getattr(spectrum, "rhos", spectrum)
    rhos = []
    for value in raw:
        v = float(value)
        if math.isnan(v) or v < -RHO_CLAMP_BAND or v > 1.0 + RHO_CLAMP_BAND:
            raise ParameterError(
                f"canonical correlation {value!r} lies outside [0, 1]")
        rhos.append(min(max(v, 0.0), 1.0))
    for left, right in zip(rhos, rhos[1:]):
        if right > left + 1e-12:
            raise ParameterError("spectrum must be sorted in descending order")
    return tuple(rhos)


def waterfill(spectrum, gamma: float) -> Allocation:
    """Split ``gamma`` optimally across the spectrum's components.

    If the budget covers every component's mutual information, all of them
    saturate, the value is 0, and the remainder is reported as slack.
    Otherwise the water level solves
    sum_i min{budget_from_level(beta), I(rho_i)} = gamma by bisection to
    within ``BISECT_TOL``, so the returned budgets add up to ``gamma`` at the
    same tolerance. A component with rho_i = 1 never saturates and makes the
    total infinite for any finite budget.
    """
    rhos = as_rhos(spectrum)
    gamma = validate_budget(gamma)
    if math.isinf(gamma):
        raise ParameterError("waterfill requires a finite budget")
    if not rhos:
        return Allocation((), 0.0, 0.0, (), gamma)
    caps = tuple(mutual_information(r) for r in rhos)
    values = tuple(common_information(r) for r in rhos)
    total_cap = sum(caps)
    if gamma >= total_cap:
        return Allocation(
            caps, values[0], 0.0, (True,) * len(rhos), gamma - total_cap)
    beta = _solve_water_level(caps, values[0], gamma)
    spend = budget_from_level(beta)
    gammas = tuple(min(spend, cap) for cap in caps)
    saturated = tuple(spend >= cap for cap in caps)
    total = 0.0
    for value in values:
        total += max(value - beta, 0.0)
    return Allocation(gammas, beta, total, saturated, 0.0)


def _solve_water_level(caps, value_max, gamma):
    """Bisect h(beta) = sum_i min{budget_from_level(beta), caps[i]} = gamma.

    h is continuous, nondecreasing, and has slope kinks wherever a component
    saturates, so bracketing beats Newton here. h(0) = 0, and at the upper
    bracket end h reaches the summed caps (the level of the strongest
    component converts to exactly its own cap), or, when that component is
    degenerate, the level a single component would need for the whole budget.
    """
    if gamma == 0.0:
        return 0.0
    hi = value_max if math.isfinite(value_max) else level_from_budget(gamma)
    lo = 0.0
    for _ in range(BISECT_MAX_ITERS):
        mid = 0.5 * (lo + hi)
        h = 0.0
        spend = budget_from_level(mid)
        for cap in caps:
            h += min(spend, cap)
        if abs(h - gamma) <= BISECT_TOL:
            return mid
        if h < gamma:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def saturation_breakpoints(spectrum) -> tuple[float, ...]:
    """Budget thresholds at which components saturate, in increasing order.

    Entry j (0-based) is the total budget k * I(rho_k) + sum_{i > k} I(rho_i)
    with k = n - j (1-based, descending correlations): the point where the
    k-th component transitions from active to saturated. Strictly increasing
    when the correlations are distinct; equal correlations saturate together.
    """
    rhos = as_rhos(spectrum)
    caps = [mutual_information(r) for r in rhos]
    thresholds = []
    tail = 0.0
    for k in range(len(rhos), 0, -1):
        thresholds.append(k * caps[k - 1] + tail)
        tail += caps[k - 1]
    return tuple(thresholds)


def evaluate_allocation(spectrum, gammas: Sequence[float]) -> float:
    """Total value of an arbitrary split: sum of the scalar closed forms.

    Upper-bounds ``waterfill(...).total_value`` for any feasible split of
    the same total budget.
    """
    rhos = as_rhos(spectrum)
    if len(gammas) != len(rhos):
        raise ParameterError(
            f"got {len(gammas)} budgets for {len(rhos)} components")
    return sum(wyner_ci_scalar(r, validate_budget(g))
               for r, g in zip(rhos, gammas))
