"""Distribution of M_n = max of n i.i.d. Poisson(lam) variables.

With Q(k, lam) the probability that a Poisson(lam) variable is below k,

    Pr[M_n <= k] = Q(k+1, lam)^n,

so the whole distribution is driven by n * ln Q.  That product is formed in
log-magnitude space, -exp(ln_n + ln(-ln Q)), which survives n = 1e40 against
ln Q = -1e-50; pmf values come from adjacent CDF logs through the
a + ln(1 - e^(b-a)) kernel.  n enters only through ln_n and need not be an
integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, WindowError
from .specfun import _EXP_OVERFLOW, _LOG_TINY, log1mexp

__all__ = [
    "LogProb",
    "ProblemInstance",
    "ModeReport",
    "max_cdf_log",
    "max_pmf_log",
    "mode",
    "scan_window",
    "two_point_best",
]

# Log-probabilities: nonpositive up to rounding slack.
LogProb = float

_MASS_TOL = 1e-9
_TIE_BAND = 1e-12  # log-pmf values this close count as tied; ties break downward


@dataclass(frozen=True)
class ProblemInstance:
    """A (lam, n) pair with n carried as ln(n) so that n = 1e40 stays exact enough."""

    lam: float
    ln_n: float

    def __post_init__(self) -> None:
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise DomainError(f"lam must be positive and finite, got {self.lam}")
        if not (self.ln_n >= 0.0 and math.isfinite(self.ln_n)):
            raise DomainError(f"ln_n must be finite and >= 0, got {self.ln_n}")

    @classmethod
    def from_n(cls, lam: float, n: float) -> "ProblemInstance":
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        return cls(lam, math.log(n))

    @classmethod
    def from_log10_n(cls, lam: float, log10_n: float) -> "ProblemInstance":
        return cls(lam, log10_n * math.log(10.0))


@dataclass(frozen=True)
class ModeReport:
    """Mode scan result: argmax of the pmf and the mass of the adjacent pair."""

    i_n: int
    p_mode: float
    p_two_point: float
    scan_lo: int
    scan_hi: int
    pmf_slice: tuple[tuple[int, LogProb], ...]


def _log_neg_log_cdf(k: int, lam: float) -> float:
    """ln(-ln Pr[X <= k]), stable in both tails.

    For tiny survival S, -ln Q = S + S^2/2 + ... so the tail-series log is
    returned directly; mid-range goes through log1p, and the lower tail
    through the direct lower sum.
    """
    if k < lam:
        return math.log(-specfun._cdf_log_direct(k, lam, specfun.DEFAULT_ACCURACY))
    s = specfun.poisson_sf_log(k, lam)
    if s < _LOG_TINY:
        return s
    return math.log(-log1mexp(s))


def max_cdf_log(inst: ProblemInstance, k: int) -> LogProb:
    """ln Pr[M_n <= k] = n * ln Q(k+1, lam), formed in log-magnitude space."""
    if k < 0:
        raise DomainError(f"max_cdf_log requires k >= 0, got {k}")
    t = inst.ln_n + _log_neg_log_cdf(k, inst.lam)
    if t >= _EXP_OVERFLOW:
        return -math.inf
    return -math.exp(t) + 0.0  # + 0.0 normalises -0.0


def _pmf_from_cdf_logs(a: LogProb, b: LogProb) -> LogProb:
    """ln(e^a - e^b) for CDF logs b <= a of adjacent k."""
    if a == -math.inf:
        return -math.inf
    if b == -math.inf:
        return a
    d = b - a
    if d >= 0.0:  # equal to double precision: no representable mass
        return -math.inf
    return a + log1mexp(d)


def max_pmf_log(inst: ProblemInstance, k: int) -> LogProb:
    """ln Pr[M_n = k], via the difference of adjacent CDF logs."""
    if k < 0:
        raise DomainError(f"max_pmf_log requires k >= 0, got {k}")
    if k == 0:
        return max_cdf_log(inst, 0)
    return _pmf_from_cdf_logs(max_cdf_log(inst, k), max_cdf_log(inst, k - 1))


def scan_window(inst: ProblemInstance, pad: int = 40) -> tuple[int, int]:
    """Scan bounds: +-pad around the closed-form mode estimate, or [0, 10*lam+20+pad]
    when n is too small for the estimate to mean anything."""
    if inst.ln_n < 1.0:
        return 0, math.ceil(10.0 * inst.lam) + 20 + pad
    x0 = inst.ln_n / specfun.lambert_w0(inst.ln_n / (math.e * inst.lam))
    return max(0, math.floor(x0) - pad), math.ceil(x0) + pad


def _scan(inst: ProblemInstance, pad: int) -> tuple[int, int, list[LogProb]]:
    """CDF logs once per k, pmf logs for k in [lo, hi+1]; mass-checks [lo, hi]."""
    lo, hi = scan_window(inst, pad)
    cdf = [max_cdf_log(inst, k) for k in range(max(lo - 1, 0), hi + 2)]
    off = max(lo - 1, 0)
    pmf: list[LogProb] = []
    for k in range(lo, hi + 2):
        if k == 0:
            pmf.append(cdf[0])
        else:
            pmf.append(_pmf_from_cdf_logs(cdf[k - off], cdf[k - 1 - off]))
    mass = math.fsum(math.exp(lp) for lp in pmf[: hi - lo + 1])
    if mass < 1.0 - _MASS_TOL:
        raise WindowError(
            f"scan window [{lo}, {hi}] holds mass {mass:.12f} < 1 - {_MASS_TOL}; widen and retry"
        )
    return lo, hi, pmf


def mode(inst: ProblemInstance, pad: int = 40) -> ModeReport:
    """Exact modal value of M_n: the k maximising the pmf over the scan window.

    Log-pmf values within 1e-12 of the running best count as ties and resolve
    to the smaller k.  Raises WindowError when the window misses mass; callers
    widen `pad` and retry.
    """
    lo, hi, pmf = _scan(inst, pad)
    best = 0
    for j in range(1, hi - lo + 1):
        if pmf[j] > pmf[best] + _TIE_BAND:
            best = j
    p_mode = math.exp(pmf[best])
    p_two = p_mode + math.exp(pmf[best + 1])
    return ModeReport(
        i_n=lo + best,
        p_mode=p_mode,
        p_two_point=p_two,
        scan_lo=lo,
        scan_hi=hi,
        pmf_slice=tuple((lo + j, pmf[j]) for j in range(hi - lo + 1)),
    )


def two_point_best(inst: ProblemInstance, pad: int = 40) -> tuple[int, float]:
    """(I, p) maximising p = Pr[M_n in {I, I+1}] over the scan window.

    This is the pair-leader modal value; it can sit one below the pmf argmax.
    Ties resolve to the smaller I.
    """
    lo, hi, pmf = _scan(inst, pad)
    vals = [math.exp(lp) for lp in pmf]
    best = 0
    best_p = vals[0] + vals[1]
    for j in range(1, hi - lo + 1):
        p = vals[j] + vals[j + 1]
        if p > best_p:
            best, best_p = j, p
    return lo + best, best_p
