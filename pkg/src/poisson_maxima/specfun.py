"""Scalar special functions for Poisson extreme-value computations.

Everything here works in the log domain where it matters: survival
probabilities are summed directly from their tail series (never as a
complement of the CDF), so results stay accurate down to log-probabilities
of order -1e5.

No external numerics libraries are used; the extended-precision reference
implementation lives in ``oracle`` and shares no code with this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "Accuracy",
    "DEFAULT_ACCURACY",
    "log_gamma",
    "log_poisson_pmf",
    "poisson_cdf_log",
    "poisson_sf_log",
    "reg_gamma_q",
    "log_g",
    "lambert_w0",
    "log1mexp",
]

_LN2 = math.log(2.0)
_LN_SQRT_2PI = 0.9189385332046727  # ln(2*pi)/2
_INV_E = math.exp(-1.0)
# exp() overflows above this; exp() of anything below -745 underflows to 0
_EXP_OVERFLOW = 709.782712893384
# below this log-survival, -ln(cdf) equals the survival itself to full precision
_LOG_TINY = -37.0

# Lanczos approximation, g = 7, 9 terms.  This fixed coefficient set is the
# widely published one (Godfrey's table); relative error of gamma is below
# 1e-14 on the positive real axis, which keeps ln(gamma) well inside the
# 1e-13 budget on [0.5, 1e6].
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@dataclass(frozen=True)
class Accuracy:
    """Truncation control for series and continued fractions.

    rel_tol bounds the size of the first neglected term relative to the
    partial sum; max_iter caps every summation loop.
    """

    rel_tol: float = 1e-13
    max_iter: int = 500

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol < 1e-6):
            raise DomainError(f"rel_tol must lie in (0, 1e-6), got {self.rel_tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 10:
            raise DomainError(f"max_iter must be an integer >= 10, got {self.max_iter}")


DEFAULT_ACCURACY = Accuracy()


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0.

    Fixed-coefficient Lanczos scheme (see _LANCZOS_COEF); arguments below
    0.5 are lifted with ln(Gamma(x)) = ln(Gamma(x+1)) - ln(x).
    """
    if x <= 0.0 or math.isnan(x):
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    shift = 0.0
    if x < 0.5:
        shift = -math.log(x)
        x = x + 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += _LANCZOS_COEF[i] / (x - 1.0 + i)
    t = x + _LANCZOS_G - 0.5
    return _LN_SQRT_2PI + (x - 0.5) * math.log(t) - t + math.log(acc) + shift


def log_poisson_pmf(k: int, lam: float) -> float:
    """ln Pr[X = k] for X ~ Poisson(lam): -lam + k*ln(lam) - ln(k!)."""
    if k < 0 or lam <= 0.0:
        raise DomainError(f"log_poisson_pmf requires k >= 0 and lam > 0, got ({k}, {lam})")
    if k == 0:
        return -lam
    return -lam + k * math.log(lam) - log_gamma(k + 1.0)


def log1mexp(x: float) -> float:
    """ln(1 - e^x) for x <= 0, switching kernels at -ln(2) to avoid cancellation."""
    if x >= 0.0:
        return -math.inf
    if x > -_LN2:
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def _cdf_log_direct(k: int, lam: float, acc: Accuracy) -> float:
    """ln sum_{i<=k} pmf(i), summed backward from the largest retained term.

    Intended for k < lam where the lower sum is small; terms shrink by i/lam
    going down, so the scaled total stays O(1) and never overflows.
    """
    total = 1.0
    term = 1.0
    i = k
    it = 0
    while i >= 1:
        term *= i / lam
        total += term
        i -= 1
        it += 1
        if term < acc.rel_tol * total:
            break
        if it > acc.max_iter:
            raise ConvergenceError(
                f"poisson_cdf_log: {acc.max_iter} terms without convergence at (k={k}, lam={lam})"
            )
    return log_poisson_pmf(k, lam) + math.log(total)


def poisson_sf_log(k: int, lam: float) -> float:
    """ln Pr[X > k] for X ~ Poisson(lam), by direct tail summation.

    The tail series sum_{i>k} pmf(i) is accumulated with the term recursion
    term_{i+1} = term_i * lam/(i+1), anchored at its largest term, so the
    result is accurate even when the log is on the order of -1e5.
    """
    if k < 0 or lam <= 0.0:
        raise DomainError(f"poisson_sf_log requires k >= 0 and lam > 0, got ({k}, {lam})")
    acc = DEFAULT_ACCURACY
    if lam < k + 2:
        # first tail term already past the pmf peak: strictly decreasing terms
        total = 1.0
        term = 1.0
        i = k + 2
        it = 0
        while term > acc.rel_tol * total:
            term *= lam / i
            total += term
            i += 1
            it += 1
            if it > acc.max_iter:
                raise ConvergenceError(
                    f"poisson_sf_log: {acc.max_iter} terms without convergence at (k={k}, lam={lam})"
                )
        return log_poisson_pmf(k + 1, lam) + math.log(total)
    # peak lies inside the tail: anchor at the modal term and fan out
    peak = int(lam)
    total = 1.0
    term = 1.0
    i = peak
    it = 0
    while i > k + 1:  # downward leg, ratios i/lam < 1
        term *= i / lam
        total += term
        i -= 1
        it += 1
        if term < acc.rel_tol * total:
            break
        if it > acc.max_iter:
            raise ConvergenceError(
                f"poisson_sf_log: {acc.max_iter} terms without convergence at (k={k}, lam={lam})"
            )
    term = 1.0
    i = peak + 1
    it = 0
    while True:  # upward leg, ratios lam/i <= 1 and shrinking
        term *= lam / i
        total += term
        i += 1
        it += 1
        if term < acc.rel_tol * total:
            break
        if it > acc.max_iter:
            raise ConvergenceError(
                f"poisson_sf_log: {acc.max_iter} terms without convergence at (k={k}, lam={lam})"
            )
    return log_poisson_pmf(peak, lam) + math.log(total)


def poisson_cdf_log(k: int, lam: float) -> float:
    """ln Pr[X <= k] for X ~ Poisson(lam).

    Below the mean the lower sum is evaluated directly by log-sum-exp; at and
    above the mean it is recovered from the directly-summed tail, which is the
    only way the log keeps 12 digits once the CDF rounds to 1 in doubles.
    """
    if k < 0 or lam <= 0.0:
        raise DomainError(f"poisson_cdf_log requires k >= 0 and lam > 0, got ({k}, {lam})")
    if k < lam:
        return _cdf_log_direct(k, lam, DEFAULT_ACCURACY)
    v = log1mexp(poisson_sf_log(k, lam))
    return v + 0.0  # normalise -0.0


def reg_gamma_q(a: float, x: float, acc: Accuracy | None = None) -> float:
    """Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).

    Power series for the lower function when x < a + 1, Lentz continued
    fraction for the upper function otherwise.
    """
    if a <= 0.0 or x < 0.0:
        raise DomainError(f"reg_gamma_q requires a > 0 and x >= 0, got ({a}, {x})")
    if acc is None:
        acc = DEFAULT_ACCURACY
    if x == 0.0:
        return 1.0
    log_front = -x + a * math.log(x) - log_gamma(a)
    if x < a + 1.0:
        ap = a
        total = 1.0 / a
        delt = total
        for _ in range(acc.max_iter):
            ap += 1.0
            delt *= x / ap
            total += delt
            if abs(delt) < abs(total) * acc.rel_tol:
                p = total * math.exp(log_front)
                return min(max(1.0 - p, 0.0), 1.0)
        raise ConvergenceError(
            f"reg_gamma_q: series failed to converge in {acc.max_iter} terms at (a={a}, x={x})"
        )
    fpmin = 1e-300
    b = x + 1.0 - a
    c = 1.0 / fpmin
    d = 1.0 / b
    h = d
    for i in range(1, acc.max_iter + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < fpmin:
            d = fpmin
        c = b + an / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delt = d * c
        h *= delt
        if abs(delt - 1.0) < acc.rel_tol:
            q = h * math.exp(log_front)
            return min(max(q, 0.0), 1.0)
    raise ConvergenceError(
        f"reg_gamma_q: continued fraction failed to converge in {acc.max_iter} terms at (a={a}, x={x})"
    )


def log_g(x: float, lam: float, acc: Accuracy | None = None) -> float:
    """ln of the continuous tail interpolant g(x) = 1 - Gamma(x+1, lam)/Gamma(x+1).

    Evaluated through its series  g(x) = e^-lam * lam^x * sum_{i>=1} lam^i / Gamma(x+i+1),
    summed in scaled form around its largest term.  At integer x this equals
    poisson_sf_log(x, lam); g is strictly decreasing in x.
    """
    if x <= 0.0 or lam <= 0.0:
        raise DomainError(f"log_g requires x > 0 and lam > 0, got ({x}, {lam})")
    if acc is None:
        acc = DEFAULT_ACCURACY
    base = -lam + x * math.log(lam)
    if lam < x + 2.0:
        # term ratios lam/(x+i+1) < 1 from the first term on
        anchor = math.log(lam) - log_gamma(x + 2.0)
        total = 1.0
        term = 1.0
        i = 1
        while term > acc.rel_tol * total:
            term *= lam / (x + i + 1.0)
            total += term
            i += 1
            if i > acc.max_iter:
                raise ConvergenceError(
                    f"log_g: {acc.max_iter} terms without convergence at (x={x}, lam={lam})"
                )
        return base + anchor + math.log(total)
    # term t_i = lam^i / Gamma(x+i+1) peaks at i ~ lam - x; ratios
    # t_{i-1}/t_i = (x+i)/lam and t_{i+1}/t_i = lam/(x+i+1)
    ipk = int(lam - x)  # >= 2 since lam >= x + 2
    anchor = ipk * math.log(lam) - log_gamma(x + ipk + 1.0)
    total = 1.0
    term = 1.0
    i = ipk
    it = 0
    while i > 1:  # downward leg
        term *= (x + i) / lam
        total += term
        i -= 1
        it += 1
        if term < acc.rel_tol * total:
            break
        if it > acc.max_iter:
            raise ConvergenceError(
                f"log_g: {acc.max_iter} terms without convergence at (x={x}, lam={lam})"
            )
    term = 1.0
    i = ipk
    it = 0
    while True:  # upward leg
        term *= lam / (x + i + 1.0)
        total += term
        i += 1
        it += 1
        if term < acc.rel_tol * total:
            break
        if it > acc.max_iter:
            raise ConvergenceError(
                f"log_g: {acc.max_iter} terms without convergence at (x={x}, lam={lam})"
            )
    return base + anchor + math.log(total)


def lambert_w0(z: float) -> float:
    """Principal branch of the Lambert W function, w * e^w = z, for z >= -1/e.

    Halley iteration; converged residual satisfies |w e^w - z| <= 1e-14 * max(|z|, 1).
    A slack of 1e-15 below -1/e is clamped to the branch point.
    """
    if math.isnan(z):
        raise DomainError("lambert_w0 requires a real z >= -1/e")
    if z < -_INV_E:
        if z < -_INV_E - 1e-15:
            raise DomainError(f"lambert_w0 requires z >= -1/e, got {z}")
        z = -_INV_E
    if z == -_INV_E:
        return -1.0
    if z > math.e:
        lz = math.log(z)
        w = lz - math.log(lz)
    elif z < -0.25:
        # branch-point series in p = sqrt(2 (e z + 1))
        p = math.sqrt(2.0 * (math.e * z + 1.0))
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
    else:
        w = z
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - z
        if f == 0.0:
            return w
        wp1 = w + 1.0
        if wp1 == 0.0:
            w += 1e-12
            continue
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 1e-16 * (2.0 + abs(w)):
            return w
    raise ConvergenceError(f"lambert_w0: Halley iteration did not converge for z = {z}")
