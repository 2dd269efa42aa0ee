"""Fixed-transmittance Gaussian channel machinery.

Entanglement-based picture of a Gaussian-modulated coherent-state protocol
with reverse reconciliation and homodyne detection: Alice holds one mode of a
two-mode squeezed vacuum of variance V (shot-noise units), the other mode
crosses a channel of transmittance T with excess noise eps referred to the
channel input.  This module evaluates, for one fixed channel point, the
mutual information of the legitimate parties, the eavesdropper's Holevo bound
from the symplectic spectrum of the shared state, and their difference (the
asymptotic secret key rate under collective attacks, unit reconciliation
efficiency).

Negative rates are returned as-is; callers decide whether to clamp for
reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .numerics import g_entropy

# slack for >= 1 physicality bounds: cancellation near pure states can land a
# symplectic eigenvalue a few ulp below 1
PHYSICALITY_SLACK = 1e-12

# discriminant of the two-mode eigenvalue problem may go slightly negative
# from rounding; anything below this signals genuinely unphysical inputs
DISCRIMINANT_FLOOR = -1e-9


def derive_chi(t: float, eps: float) -> float:
    """Total channel-added noise referred to the input: 1/T - 1 + eps."""
    if not (math.isfinite(t) and 0.0 < t <= 1.0):
        raise DomainError(f"transmittance must satisfy 0 < T <= 1, got {t!r}")
    if not (math.isfinite(eps) and eps >= 0.0):
        raise DomainError(f"excess noise must satisfy eps >= 0, got {eps!r}")
    return 1.0 / t - 1.0 + eps


def derive_omega(t: float, eps: float) -> float:
    """Equivalent thermal variance of the channel noise: 1 + T*eps/(1-T).

    Diverges as T -> 1, so T = 1 is rejected; the added noise satisfies
    chi = (1-T) * omega / T.
    """
    if not (math.isfinite(t) and 0.0 < t < 1.0):
        raise DomainError(
            f"thermal variance needs 0 < T < 1 (diverges at T = 1), got {t!r}"
        )
    if not (math.isfinite(eps) and eps >= 0.0):
        raise DomainError(f"excess noise must satisfy eps >= 0, got {eps!r}")
    return 1.0 + t * eps / (1.0 - t)


@dataclass(frozen=True)
class ChannelParams:
    """One fixed channel point: modulation-plus-vacuum variance V (SNU, >= 1),
    transmittance T in (0, 1], excess noise eps >= 0 (SNU, channel input)."""

    v: float
    t: float
    eps: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.v) and self.v >= 1.0):
            raise DomainError(f"variance must satisfy V >= 1, got {self.v!r}")
        derive_chi(self.t, self.eps)  # validates t and eps

    @property
    def v_a(self) -> float:
        """Modulation variance V_A = V - 1."""
        return self.v - 1.0

    @property
    def chi(self) -> float:
        return derive_chi(self.t, self.eps)

    @property
    def omega(self) -> float:
        return derive_omega(self.t, self.eps)


@dataclass(frozen=True)
class TwoModeCovariance:
    """Standard-form two-mode covariance matrix [[a*1, c*sz], [c*sz, b*1]]
    with sz = diag(1, -1); a, b, c in shot-noise units."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a >= 1.0 - PHYSICALITY_SLACK):
            raise DomainError(f"diagonal block a must be >= 1, got {self.a!r}")
        if not (math.isfinite(self.b) and self.b >= 1.0 - PHYSICALITY_SLACK):
            raise DomainError(f"diagonal block b must be >= 1, got {self.b!r}")
        if not math.isfinite(self.c):
            raise DomainError(f"correlation c must be finite, got {self.c!r}")
        try:
            _, lam2 = self.symplectic_eigenvalues()
        except NumericalError as exc:
            raise DomainError(str(exc)) from exc
        if lam2 < 1.0 - PHYSICALITY_SLACK:
            raise DomainError(
                f"unphysical covariance (a={self.a!r}, b={self.b!r}, c={self.c!r}): "
                f"symplectic eigenvalue {lam2!r} < 1"
            )

    def symplectic_eigenvalues(self) -> tuple[float, float]:
        """Both symplectic eigenvalues, descending, from the block invariants."""
        inv = self.a * self.a + self.b * self.b - 2.0 * self.c * self.c
        sdet = self.a * self.b - self.c * self.c
        if sdet <= 0.0 or inv <= 0.0:
            raise NumericalError(
                f"unphysical covariance (a={self.a!r}, b={self.b!r}, c={self.c!r}): "
                "correlations exceed the physical bound"
            )
        # inv^2 - 4 sdet^2 factors exactly as (a-b)^2 ((a+b)^2 - 4c^2); the
        # factored form survives the near-pure-state cancellation
        factor = (self.a + self.b) ** 2 - 4.0 * self.c * self.c
        if factor < DISCRIMINANT_FLOOR:
            raise NumericalError(
                f"negative two-mode discriminant factor {factor!r}: unphysical parameters"
            )
        s = abs(self.a - self.b) * math.sqrt(max(factor, 0.0))
        lam1 = math.sqrt((inv + s) / 2.0)
        # stable small root: (inv - s)/2 == 2*sdet^2/(inv + s)
        lam2 = math.sqrt(2.0 * sdet * sdet / (inv + s))
        return lam1, lam2

    def matrix(self) -> np.ndarray:
        """Dense 4x4 form, xpxp ordering."""
        a, b, c = self.a, self.b, self.c
        return np.array(
            [
                [a, 0.0, c, 0.0],
                [0.0, a, 0.0, -c],
                [c, 0.0, b, 0.0],
                [0.0, -c, 0.0, b],
            ]
        )


@dataclass(frozen=True)
class SymplecticSpectrum:
    """The three eigenvalues feeding the Holevo bound: lambda1 >= lambda2 for
    the joint state, lambda3 for the state conditioned on homodyne detection."""

    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "lambda3"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 1.0 - PHYSICALITY_SLACK):
                raise DomainError(f"{name} must be >= 1, got {value!r}")
        if self.lambda1 < self.lambda2 * (1.0 - 1e-12):
            raise DomainError(
                f"eigenvalues out of order: lambda1={self.lambda1!r} < lambda2={self.lambda2!r}"
            )


@dataclass(frozen=True)
class SkrBreakdown:
    """Mutual information, Holevo bound and their difference, bits per use."""

    mutual_info: float
    holevo: float
    rate: float

    def __post_init__(self) -> None:
        if self.holevo < -PHYSICALITY_SLACK:
            raise DomainError(f"Holevo bound must be >= 0, got {self.holevo!r}")
        if self.rate != self.mutual_info - self.holevo:
            raise DomainError("rate must equal mutual_info - holevo")

    @classmethod
    def from_parts(cls, mutual_info: float, holevo: float) -> "SkrBreakdown":
        return cls(mutual_info, holevo, mutual_info - holevo)


def joint_covariance(p: ChannelParams) -> TwoModeCovariance:
    """Covariance of the state shared by Alice and Bob after the channel."""
    return TwoModeCovariance(
        a=p.v,
        b=p.t * (p.v + p.chi),
        c=math.sqrt(p.t * (p.v * p.v - 1.0)),
    )


def mutual_information_fixed(p: ChannelParams) -> float:
    """Homodyne mutual information (1/2) log2((V + chi) / (1 + chi)), bits."""
    chi = p.chi
    return 0.5 * math.log2((p.v + chi) / (1.0 + chi))


def symplectic_pair(p: ChannelParams) -> tuple[float, float]:
    """Symplectic eigenvalues (lambda1 >= lambda2) of the joint covariance.

    Closed form: lambda_{1,2} = sqrt((A +/- sqrt(A^2 - 4B)) / 2) with
    A = T^2 (V+chi)^2 + (1-2T) V^2 + 2T and B = T^2 (V chi + 1)^2.  Two
    rewrites keep the cancellation-prone regimes accurate: the discriminant
    is evaluated in the factored form (V - T(V+chi))^2 ((V + T(V+chi))^2 -
    4T(V^2-1)) (near-pure states, T -> 1 at small eps) and the small root as
    sqrt(2B / (A + sqrt(disc))) (large V).
    """
    v, t, chi = p.v, p.t, p.chi
    bob = t * (v + chi)
    big_a = t * t * (v + chi) ** 2 + (1.0 - 2.0 * t) * v * v + 2.0 * t
    root_b = t * (v * chi + 1.0)
    big_b = root_b * root_b
    factor = (v + bob) ** 2 - 4.0 * t * (v * v - 1.0)
    if factor < DISCRIMINANT_FLOOR:
        raise NumericalError(
            f"negative discriminant factor {factor!r} for {p!r}: unphysical parameter combination"
        )
    s = abs(v - bob) * math.sqrt(max(factor, 0.0))
    lam1 = math.sqrt((big_a + s) / 2.0)
    lam2 = math.sqrt(2.0 * big_b / (big_a + s))
    return lam1, lam2


def conditional_eigenvalue(p: ChannelParams) -> float:
    """Symplectic eigenvalue of Alice's state after Bob's homodyne detection:
    sqrt(V (1 + V chi) / (V + chi)); the same value results for either
    measured quadrature."""
    v, chi = p.v, p.chi
    return math.sqrt(v * (1.0 + v * chi) / (v + chi))


def symplectic_spectrum(p: ChannelParams) -> SymplecticSpectrum:
    lam1, lam2 = symplectic_pair(p)
    return SymplecticSpectrum(lam1, lam2, conditional_eigenvalue(p))


def holevo_from_eigenvalues(lambda1: float, lambda2: float, lambda3: float) -> float:
    """Holevo bound g((l1-1)/2) + g((l2-1)/2) - g((l3-1)/2), bits.

    Eigenvalues a few ulp below 1 (rounding near pure states) are treated as 1.
    """
    terms = []
    for lam in (lambda1, lambda2, lambda3):
        if lam < 1.0 - PHYSICALITY_SLACK:
            raise DomainError(f"symplectic eigenvalue must be >= 1, got {lam!r}")
        terms.append(g_entropy(max((lam - 1.0) / 2.0, 0.0)))
    return terms[0] + terms[1] - terms[2]


def holevo_fixed(p: ChannelParams) -> float:
    """Eavesdropper's Holevo bound for one fixed channel point, bits."""
    lam1, lam2 = symplectic_pair(p)
    return holevo_from_eigenvalues(lam1, lam2, conditional_eigenvalue(p))


def skr_fixed(p: ChannelParams) -> SkrBreakdown:
    """Secret key rate breakdown for a fixed channel (may be negative)."""
    return SkrBreakdown.from_parts(mutual_information_fixed(p), holevo_fixed(p))
