"""Secret key rate from the fading-averaged covariance matrix.

The channel is treated as a classical mixture of fixed-transmittance
subchannels.  Gaussian extremality lets the Holevo bound be computed from the
Gaussian state with the mixture's covariance matrix, whose entries depend on
the first two moments of sqrt(T) and T.  The averaged matrix coincides with a
fixed channel at effective parameters (t_eff, eps_eff), where the effective
excess noise picks up a fading-induced term proportional to Var(sqrt(T)) and
to the modulation variance; this makes the Holevo bound grow quickly with V,
so the modulation variance must be optimized per fading configuration.

The legitimate rate is the ergodic average of the fixed-channel mutual
information over the transmittance distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import (
    ChannelParams,
    SkrBreakdown,
    TwoModeCovariance,
    holevo_fixed,
    mutual_information_fixed,
)
from .errors import DomainError
from .hba import FadingUniform
from .numerics import LN2, maximize_scalar

LOG2_E = 1.0 / LN2


@dataclass(frozen=True)
class TransmittanceMoments:
    """First two moments of the transmittance distribution:
    mean of sqrt(T), mean of T, and Var(sqrt(T)) = <T> - <sqrt(T)>^2."""

    mean_sqrt_t: float
    mean_t: float
    var_sqrt_t: float

    def __post_init__(self) -> None:
        if not (0.0 < self.mean_sqrt_t <= 1.0):
            raise DomainError(f"mean_sqrt_t must be in (0, 1], got {self.mean_sqrt_t!r}")
        if not (0.0 < self.mean_t <= 1.0):
            raise DomainError(f"mean_t must be in (0, 1], got {self.mean_t!r}")
        if self.var_sqrt_t < 0.0:
            raise DomainError(f"var_sqrt_t must be >= 0, got {self.var_sqrt_t!r}")
        if self.mean_sqrt_t**2 > self.mean_t + 1e-12:
            raise DomainError(
                "moments violate Jensen's inequality: "
                f"<sqrt(T)>^2 = {self.mean_sqrt_t**2!r} > <T> = {self.mean_t!r}"
            )


@dataclass(frozen=True)
class EffectiveChannel:
    """Fixed-channel parameters reproducing the fading-averaged covariance.

    chi_eff is linear in the variance it was built with:
    chi_eff = a_coef * V + b_coef.  Because eps_eff depends on V, an
    EffectiveChannel is valid only for the (moments, eps, V) triple that
    produced it and must never be reused across a V sweep.
    """

    t_eff: float
    eps_eff: float
    chi_eff: float
    a_coef: float
    b_coef: float


@dataclass(frozen=True)
class CmaScaling:
    """Large-V factorization of the averaged-state eigenvalue problem.

    a0 and b0 are the exact reduced coefficients at the given V (A = A-term /
    V^2 contribution, B = b0^2 V^4); their V -> infinity limits isolate the
    quartic growth driven by Var(sqrt(T)) > 0.
    """

    a0: float
    b0: float
    b_over_v4: float
    b0_limit: float
    lambda3_over_v: float
    lambda3_over_v_limit: float


def moments_uniform(f: FadingUniform) -> TransmittanceMoments:
    """Closed-form moments of the uniform fading law."""
    if f.delta_t == 0.0:
        return TransmittanceMoments(math.sqrt(f.t_min), f.t_min, 0.0)
    mean_sqrt = 2.0 / (3.0 * f.delta_t) * (f.t_max**1.5 - f.t_min**1.5)
    mean_t = f.t_min + 0.5 * f.delta_t
    return TransmittanceMoments(mean_sqrt, mean_t, max(mean_t - mean_sqrt**2, 0.0))


def avg_chi(m: TransmittanceMoments, eps: float) -> float:
    """Averaged channel noise 1/<T> - 1 + eps (display form only; rate
    computations go through the averaged covariance entries)."""
    if not (math.isfinite(eps) and eps >= 0.0):
        raise DomainError(f"excess noise must satisfy eps >= 0, got {eps!r}")
    return 1.0 / m.mean_t - 1.0 + eps


def effective_params(m: TransmittanceMoments, eps: float, v: float) -> EffectiveChannel:
    """Effective (t_eff, eps_eff, chi_eff) for the averaged covariance matrix.

    t_eff = <sqrt(T)>^2 and
    eps_eff = eps * (1 + Var(sqrt T)/t_eff) + Var(sqrt T)/t_eff * (V - 1).
    a_coef/b_coef are the coefficients of the exact linear split
    chi_eff(V) = a_coef * V + b_coef.
    """
    if not (math.isfinite(eps) and eps >= 0.0):
        raise DomainError(f"excess noise must satisfy eps >= 0, got {eps!r}")
    if not (math.isfinite(v) and v >= 1.0):
        raise DomainError(f"variance must satisfy V >= 1, got {v!r}")
    t_eff = m.mean_sqrt_t**2
    ratio = m.var_sqrt_t / t_eff
    eps_eff = eps * (1.0 + ratio) + ratio * (v - 1.0)
    chi_eff = 1.0 / t_eff - 1.0 + eps_eff
    a_coef = ratio
    b_coef = 1.0 / t_eff - 1.0 - ratio + eps * (1.0 + ratio)
    return EffectiveChannel(t_eff, eps_eff, chi_eff, a_coef, b_coef)


def avg_covariance(m: TransmittanceMoments, v: float, eps: float) -> TwoModeCovariance:
    """Fading-averaged two-mode covariance:
    a = V, c = <sqrt(T)> sqrt(V^2 - 1), b = <T>(V - 1 + eps) + 1."""
    if not (math.isfinite(v) and v >= 1.0):
        raise DomainError(f"variance must satisfy V >= 1, got {v!r}")
    if not (math.isfinite(eps) and eps >= 0.0):
        raise DomainError(f"excess noise must satisfy eps >= 0, got {eps!r}")
    return TwoModeCovariance(
        a=v,
        b=m.mean_t * (v - 1.0 + eps) + 1.0,
        c=m.mean_sqrt_t * math.sqrt(v * v - 1.0),
    )


def avg_mutual_information(v: float, eps: float, f: FadingUniform) -> float:
    """Ergodic mutual information (1/(2 delta_t)) * int log2(1 + T V_A / (1 + eps T)) dT.

    Closed form for eps > 0; explicit analytic limit for eps = 0 (the 1/eps
    groups cancel analytically and tiny-eps evaluation is ill-conditioned);
    fixed-channel value at t_min when delta_t = 0.
    """
    if not (math.isfinite(v) and v >= 1.0):
        raise DomainError(f"variance must satisfy V >= 1, got {v!r}")
    if not (math.isfinite(eps) and eps >= 0.0):
        raise DomainError(f"excess noise must satisfy eps >= 0, got {eps!r}")
    v_a = v - 1.0
    if v_a == 0.0:
        return 0.0
    if f.delta_t == 0.0:
        return mutual_information_fixed(ChannelParams(v, f.t_min, eps))
    lo, hi, dt = f.t_min, f.t_max, f.delta_t
    if eps == 0.0:
        return (
            hi * math.log2(1.0 + hi * v_a)
            - lo * math.log2(1.0 + lo * v_a)
            + math.log2((1.0 + hi * v_a) / (1.0 + lo * v_a)) / v_a
            - dt * LOG2_E
        ) / (2.0 * dt)
    slope = eps + v_a
    return (
        math.log2((1.0 + eps * lo) / (1.0 + eps * hi)) / eps
        + hi * math.log2((1.0 + hi * slope) / (1.0 + eps * hi))
        + math.log2((1.0 + hi * slope) / (1.0 + lo * slope)) / slope
        + lo * math.log2((1.0 + eps * lo) / (1.0 + lo * slope))
    ) / (2.0 * dt)


def holevo_cma(v: float, eps: float, f: FadingUniform) -> float:
    """Holevo bound of the averaged state: the fixed-channel bound evaluated
    at the effective parameters (t_eff, eps_eff), bits."""
    eff = effective_params(moments_uniform(f), eps, v)
    return holevo_fixed(ChannelParams(v, eff.t_eff, eff.eps_eff))


def skr_cma(v: float, eps: float, f: FadingUniform) -> SkrBreakdown:
    """Ergodic mutual information minus the averaged-state Holevo bound."""
    return SkrBreakdown.from_parts(avg_mutual_information(v, eps, f), holevo_cma(v, eps, f))


def optimal_variance(
    eps: float,
    f: FadingUniform,
    v_lo: float = 1.0 + 1e-6,
    v_hi: float = 1e4,
    x_tol: float = 1e-3,
) -> tuple[float, float]:
    """Modulation variance maximizing the averaged-state key rate on [v_lo, v_hi].

    Log-spaced pre-scan plus golden-section refinement; returns (v_opt,
    rate_opt) even when the optimum is non-positive (callers interpret
    rate_opt <= 0 as "no key").
    """
    if not 1.0 <= v_lo < v_hi:
        raise DomainError(f"need 1 <= v_lo < v_hi, got [{v_lo!r}, {v_hi!r}]")
    return maximize_scalar(lambda v: skr_cma(v, eps, f).rate, v_lo, v_hi, x_tol)


def cma_scaling(v: float, eff: EffectiveChannel) -> CmaScaling:
    """Reduced eigenvalue-problem coefficients of the averaged state and their
    large-V limits.

    With chi_eff = a V + b the invariants factorize as
    A = (A0^2 + (1 - 2 t_eff) + 2 t_eff / V^2) V^2,  B = B0^2 V^4, where
    A0 = t_eff (1 + a + b/V) and B0 = t_eff (a + b/V + 1/V^2).  For
    Var(sqrt(T)) > 0 the limits are B0 -> t_eff a and
    lambda3 / V -> sqrt(a / (1 + a)); the quartic growth of B in V (versus
    quadratic for a fixed channel) is what makes the Holevo bound of the
    averaged state outrun the ergodic mutual information.
    """
    if not (math.isfinite(v) and v >= 1.0):
        raise DomainError(f"variance must satisfy V >= 1, got {v!r}")
    a, b, t_eff = eff.a_coef, eff.b_coef, eff.t_eff
    a0 = t_eff * (1.0 + a + b / v)
    b0 = t_eff * (a + b / v + 1.0 / (v * v))
    exact_b = (t_eff * (v * eff.chi_eff + 1.0)) ** 2
    lam3 = math.sqrt(v * (1.0 + v * eff.chi_eff) / (v + eff.chi_eff))
    b0_limit = t_eff * a
    lam3_limit = math.sqrt(a / (1.0 + a)) if a > 0.0 else 0.0
    return CmaScaling(
        a0=a0,
        b0=b0,
        b_over_v4=exact_b / v**4,
        b0_limit=b0_limit,
        lambda3_over_v=lam3 / v,
        lambda3_over_v_limit=lam3_limit,
    )
