"""Secret key rate when the eavesdropper bound is averaged over the fading.

Fast fading: the transmittance of each use is an unknown draw from a known
distribution, here uniform on [t_min, t_min + delta_t].  In this model the
legitimate parties code at the worst-case rate (mutual information evaluated
at t_min) while the Holevo bound is averaged over the transmittance
distribution.

Two pipelines are provided:

* ``skr_hba_exact`` -- averages the exact fixed-channel Holevo bound by
  adaptive quadrature; valid for any V >= 1, and the default everywhere.
* ``skr_hba_asymptotic`` -- the large-V closed form, whose rate is
  independent of V.  Its averaged Holevo bound is assembled from endpoint
  antiderivatives (logarithmic part plus a dilogarithm part); the assembly is
  cross-checked against quadrature of the large-V integrand in the test
  suite, which is the normative definition.

The asymptotic forms are parametrized by the equivalent thermal variance,
which diverges at T = 1, so they require t_max < 1; the exact pipeline
accepts t_max = 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .channel import (
    ChannelParams,
    SkrBreakdown,
    SymplecticSpectrum,
    derive_omega,
    holevo_fixed,
    mutual_information_fixed,
)
from .errors import DomainError
from .numerics import LN2, QuadratureSpec, dilog, g_entropy, integrate

LOG2_E = 1.0 / LN2


@dataclass(frozen=True)
class FadingUniform:
    """Uniform transmittance distribution on [t_min, t_min + delta_t].

    delta_t = 0 is the degenerate point mass at t_min.
    """

    t_min: float
    delta_t: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_min) and self.t_min > 0.0):
            raise DomainError(f"t_min must be positive, got {self.t_min!r}")
        if not (math.isfinite(self.delta_t) and self.delta_t >= 0.0):
            raise DomainError(f"delta_t must be >= 0, got {self.delta_t!r}")
        if self.t_min + self.delta_t > 1.0 + 1e-12:
            raise DomainError(
                f"t_max = t_min + delta_t must be <= 1, got {self.t_min + self.delta_t!r}"
            )

    @property
    def t_max(self) -> float:
        return min(self.t_min + self.delta_t, 1.0)

    @property
    def t_mean(self) -> float:
        return self.t_min + 0.5 * self.delta_t


def _require_asymptotic_domain(eps: float, f: FadingUniform) -> None:
    if f.t_max >= 1.0:
        raise DomainError(
            "asymptotic routines need t_max < 1 (thermal variance diverges at T = 1)"
        )
    if f.delta_t <= 0.0:
        raise DomainError("analytic fading average needs delta_t > 0")
    if not (math.isfinite(eps) and 0.0 <= eps < 1.0):
        raise DomainError(
            f"analytic average is implemented for 0 <= eps < 1, got {eps!r}"
        )


def skr_hba_exact(
    v: float,
    eps: float,
    f: FadingUniform,
    spec: QuadratureSpec | None = None,
) -> SkrBreakdown:
    """Worst-case-rate key rate with the exact Holevo bound averaged by quadrature.

    mutual_info is the fixed-channel value at t_min; holevo is
    (1/delta_t) * int holevo_fixed(V, T, eps) dT, degenerating to the point
    value when delta_t = 0.
    """
    mi = mutual_information_fixed(ChannelParams(v, f.t_min, eps))
    if f.delta_t == 0.0:
        hol = holevo_fixed(ChannelParams(v, f.t_min, eps))
    else:
        hol = (
            integrate(
                lambda t: holevo_fixed(ChannelParams(v, t, eps)),
                f.t_min,
                f.t_max,
                spec,
            )
            / f.delta_t
        )
    return SkrBreakdown.from_parts(mi, hol)


def mutual_information_asymptotic(t: float, eps: float, v: float) -> float:
    """Large-V mutual information (1/2) log2(T / (T + (1-T) omega)) + (1/2) log2 V."""
    omega = derive_omega(t, eps)
    return 0.5 * math.log2(t / (t + (1.0 - t) * omega)) + 0.5 * math.log2(v)


def asymptotic_eigenvalues(t: float, eps: float, v: float) -> SymplecticSpectrum:
    """Large-V symplectic spectrum: V(1-T), omega, sqrt((1-T) omega V / T).

    No threshold on V is enforced; for V too small the values stop being a
    physical spectrum and construction fails.
    """
    omega = derive_omega(t, eps)
    return SymplecticSpectrum(
        lambda1=v * (1.0 - t),
        lambda2=omega,
        lambda3=math.sqrt((1.0 - t) * omega * v / t),
    )


def holevo_asymptotic(t: float, eps: float, v: float) -> float:
    """Large-V Holevo bound (1/2) log2(T (1-T) V / omega) + g((omega-1)/2), bits."""
    omega = derive_omega(t, eps)
    arg = t * (1.0 - t) * v / omega
    if arg <= 1.0:
        warnings.warn(
            f"large-V Holevo bound evaluated outside its regime (T(1-T)V/omega = {arg:.3g} <= 1)",
            RuntimeWarning,
            stacklevel=2,
        )
    return 0.5 * math.log2(arg) + g_entropy((omega - 1.0) / 2.0)


def _h_average_antiderivative(t: float, eps: float) -> float:
    """Antiderivative (up to the 1/(2 delta_t) weight) of twice the thermal
    entropy term g((omega-1)/2) along the transmittance; contains the
    dilogarithm pieces.  Requires 0 < eps < 1 and 0 < t < 1."""
    tb = 1.0 - t
    u = 2.0 * tb + eps * t
    return (
        2.0 * math.log2(tb)
        - 2.0 * (eps - 1.0) / (eps - 2.0) * math.log2(t)
        + 2.0 / (eps - 2.0) * math.log2(u)
        + t * math.log2(eps * t * u / (4.0 * tb * tb))
        - (eps - 1.0) / (eps - 2.0) * u * math.log2(u / (eps * t))
        - eps * LOG2_E * (dilog(tb) - dilog((eps - 2.0) * tb / eps))
    )


def htilde(eps: float, f: FadingUniform) -> float:
    """Fading average of the thermal entropy term g((omega-1)/2), in closed form.

    Explicit eps > 0 is required: the expression contains 1/eps and
    dilogarithm arguments (eps-2)(1-T)/eps; the eps -> 0 limit is exactly 0
    (passive eavesdropper) and must be substituted by the caller.
    """
    _require_asymptotic_domain(eps, f)
    if eps == 0.0:
        raise DomainError(
            "htilde is singular at eps = 0; callers must substitute its limit, 0"
        )
    return (
        _h_average_antiderivative(f.t_max, eps) - _h_average_antiderivative(f.t_min, eps)
    ) / (2.0 * f.delta_t)


def _log_average_antiderivative(t: float, eps: float, v: float) -> float:
    """Antiderivative (up to the 1/(2 delta_t) weight) of
    log2(T (1-T) V / omega) along the transmittance; u = (1-T) + eps*T."""
    tb = 1.0 - t
    u = tb + eps * t
    return (
        math.log2(u) / (1.0 - eps)
        + t * (math.log2(tb * tb * t * v / u) - 2.0 * LOG2_E)
        - math.log2(tb * tb)
    )


def avg_holevo_analytic(v: float, eps: float, f: FadingUniform) -> float:
    """Closed-form fading average of the large-V Holevo bound, bits.

    Assembled from the endpoint values of two antiderivatives: the
    logarithmic part and the thermal entropy part (``htilde``).  At eps = 0
    the htilde term is replaced by its proven limit, 0.  Quadrature of the
    large-V integrand is the normative definition; the test suite holds this
    assembly to it at 1e-6 relative.
    """
    _require_asymptotic_domain(eps, f)
    if not (math.isfinite(v) and v >= 1.0):
        raise DomainError(f"variance must satisfy V >= 1, got {v!r}")
    log_part = (
        _log_average_antiderivative(f.t_max, eps, v)
        - _log_average_antiderivative(f.t_min, eps, v)
    ) / (2.0 * f.delta_t)
    h_part = htilde(eps, f) if eps > 0.0 else 0.0
    return log_part + h_part


def holevo_asymptotic_regime_floor(eps: float, f: FadingUniform) -> float:
    """Smallest V for which T(1-T)V/omega > 1 across [t_min, t_max].

    T(1-T)/omega is unimodal in T, so its minimum over the interval sits at
    an endpoint; below the returned V the large-V Holevo bound turns negative
    somewhere on the support and the closed form is outside its validity.
    """
    _require_asymptotic_domain(eps, f)
    worst = min(
        t * (1.0 - t) / derive_omega(t, eps) for t in (f.t_min, f.t_max)
    )
    return 1.0 / worst


def skr_hba_asymptotic(v: float, eps: float, f: FadingUniform) -> SkrBreakdown:
    """Large-V key rate: asymptotic worst-case mutual information minus the
    analytic averaged Holevo bound.  The (1/2) log2 V terms cancel, so the
    rate is independent of V."""
    mi = mutual_information_asymptotic(f.t_min, eps, v)
    hol = avg_holevo_analytic(v, eps, f)
    if hol < 0.0:
        raise DomainError(
            f"large-V closed form outside its validity at V = {v!r} (averaged "
            "Holevo bound is negative); increase V or use the exact pipeline"
        )
    return SkrBreakdown.from_parts(mi, hol)
