"""Scalar numerics shared by every other module.

Everything here is a pure function: the bosonic entropy ``g_entropy``, the
real dilogarithm ``dilog``, an adaptive-Simpson ``integrate`` (which doubles
as the independent oracle the closed forms are validated against), and a
bracketed scalar maximizer.  All entropic quantities are in base-2
logarithms, i.e. bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, NumericalError, QuadratureError

LN2 = math.log(2.0)
PI2_OVER_6 = math.pi * math.pi / 6.0


def g_entropy(x: float) -> float:
    """Von Neumann entropy of a thermal state with mean photon number x, in bits.

    g(x) = (x+1) log2(x+1) - x log2(x), with g(0) = 0 (the x log x limit).
    """
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"g_entropy requires finite x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    return (x + 1.0) * math.log1p(x) / LN2 - x * math.log2(x)


def _dilog_series(z: float) -> float:
    # power series sum z^k / k^2, |z| <= 0.5: ~55 terms reach double precision
    total = 0.0
    term = z
    k = 1
    while True:
        contrib = term / (k * k)
        total += contrib
        if abs(contrib) < 1e-18 * max(abs(total), 1e-300) or k > 200:
            return total
        term *= z
        k += 1


def dilog(z: float) -> float:
    """Real dilogarithm Li2(z) = -int_0^z ln(1-t)/t dt for z <= 1.

    Series on |z| <= 0.5; the reflection, inversion and Landen identities map
    the rest of (-inf, 1] into the series range.  Accurate to ~1e-15 relative.
    """
    if not math.isfinite(z) or z > 1.0:
        raise DomainError(f"dilog requires finite z <= 1, got {z!r}")
    if z == 1.0:
        return PI2_OVER_6
    if z < -1.0:
        # inversion: Li2(z) = -pi^2/6 - ln^2(-z)/2 - Li2(1/z)
        lg = math.log(-z)
        return -PI2_OVER_6 - 0.5 * lg * lg - dilog(1.0 / z)
    if z > 0.5:
        # reflection: Li2(z) + Li2(1-z) = pi^2/6 - ln(z) ln(1-z)
        return PI2_OVER_6 - math.log(z) * math.log1p(-z) - _dilog_series(1.0 - z)
    if z < -0.5:
        # Landen: Li2(z) + Li2(z/(z-1)) = -ln^2(1-z)/2; z/(z-1) in (1/3, 1/2]
        lg = math.log1p(-z)
        return -0.5 * lg * lg - _dilog_series(z / (z - 1.0))
    return _dilog_series(z)


@dataclass(frozen=True)
class QuadratureSpec:
    """Error targets for adaptive quadrature."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 60

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and math.isfinite(self.abs_tol)):
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if not (self.rel_tol > 0.0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_depth < 1:
            raise DomainError(f"max_depth must be >= 1, got {self.max_depth!r}")


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Adaptive-Simpson integral of f over [a, b].

    Subdivides until the Richardson error estimate of each panel is below its
    share of max(abs_tol, rel_tol * |I|).  Raises QuadratureError instead of
    returning a silent value when f is non-finite at a node or max_depth is
    exhausted before the tolerance is met.
    """
    if spec is None:
        spec = QuadratureSpec()
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"integration interval must satisfy a < b, got [{a!r}, {b!r}]")

    def ev(x: float) -> float:
        y = f(x)
        if not math.isfinite(y):
            raise QuadratureError(f"integrand returned non-finite value {y!r} at x={x!r}")
        return y

    m = 0.5 * (a + b)
    fa, fm, fb = ev(a), ev(m), ev(b)
    whole = _simpson(fa, fm, fb, b - a)
    tol = max(spec.abs_tol, spec.rel_tol * abs(whole))

    def recurse(a_: float, m_: float, b_: float, fa_: float, fm_: float, fb_: float,
                whole_: float, tol_: float, depth: int) -> float:
        lm = 0.5 * (a_ + m_)
        rm = 0.5 * (m_ + b_)
        flm, frm = ev(lm), ev(rm)
        left = _simpson(fa_, flm, fm_, m_ - a_)
        right = _simpson(fm_, frm, fb_, b_ - m_)
        err = left + right - whole_
        if abs(err) <= 15.0 * tol_:
            return left + right + err / 15.0
        if depth <= 0:
            raise QuadratureError(
                f"max_depth exhausted on [{a_!r}, {b_!r}] with error estimate {abs(err) / 15.0:.3e}"
            )
        return recurse(a_, lm, m_, fa_, flm, fm_, left, 0.5 * tol_, depth - 1) + recurse(
            m_, rm, b_, fm_, frm, fb_, right, 0.5 * tol_, depth - 1
        )

    return recurse(a, m, b, fa, fm, fb, whole, tol, spec.max_depth)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # golden ratio reciprocal


def maximize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    x_tol: float,
    n_scan: int = 64,
) -> tuple[float, float]:
    """Locate a maximum of f on [lo, hi] to within x_tol.

    A coarse pre-scan (log-spaced when lo > 0, linear otherwise) picks the best
    bracket, which golden-section search then refines; this keeps sharply
    peaked or mildly multi-modal objectives from defeating a bare bracketing
    search.  Returns (x_star, f(x_star)) for the best point evaluated anywhere.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"maximize_scalar requires lo < hi, got [{lo!r}, {hi!r}]")
    if not (math.isfinite(x_tol) and x_tol > 0.0):
        raise DomainError(f"x_tol must be positive, got {x_tol!r}")
    if n_scan < 3:
        raise DomainError(f"n_scan must be >= 3, got {n_scan!r}")

    def ev(x: float) -> float:
        y = f(x)
        if not math.isfinite(y):
            raise NumericalError(f"objective returned non-finite value {y!r} at x={x!r}")
        return y

    if lo > 0.0:
        ratio = (hi / lo) ** (1.0 / (n_scan - 1))
        xs = [lo * ratio**k for k in range(n_scan)]
        xs[-1] = hi
    else:
        step = (hi - lo) / (n_scan - 1)
        xs = [lo + step * k for k in range(n_scan)]
        xs[-1] = hi
    ys = [ev(x) for x in xs]

    i_best = max(range(n_scan), key=lambda i: ys[i])
    best_x, best_y = xs[i_best], ys[i_best]
    a = xs[i_best - 1] if i_best > 0 else xs[0]
    b = xs[i_best + 1] if i_best < n_scan - 1 else xs[-1]

    # golden-section refinement on [a, b]
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = ev(c), ev(d)
    while b - a > x_tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = ev(c)
            if fc > best_y:
                best_x, best_y = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = ev(d)
            if fd > best_y:
                best_x, best_y = d, fd
    for x, y in ((c, fc), (d, fd)):
        if y > best_y:
            best_x, best_y = x, y
    return best_x, best_y
