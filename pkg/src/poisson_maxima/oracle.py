"""Extended-precision reference implementations (220 significant digits).

Everything here is built on mpmath and deliberately shares no code with the
fast double-precision path: cumulative sums use exact term recursions, powers
use integer binary exponentiation, and the log-gamma calls go through
mpmath's own Stirling/Bernoulli machinery rather than the fixed Lanczos
coefficients in ``specfun``.

Run  ``python -m poisson_maxima.oracle --out DIR``  to regenerate the golden
CSV files consumed by the test suite (same column layout as the CLI tables).
"""

from __future__ import annotations

import argparse
import os
from typing import Iterable

import mpmath as mp

from .errors import DomainError

__all__ = [
    "ORACLE_DPS",
    "BigReal",
    "oracle_poisson_cdf",
    "oracle_poisson_sf",
    "oracle_max_pmf",
    "oracle_log_g",
    "oracle_mode",
    "oracle_two_point_best",
    "write_goldens",
]

ORACLE_DPS = 220

BigReal = mp.mpf

_MAX_ORACLE_N = 10**12


def _use_oracle_precision():
    return mp.workdps(ORACLE_DPS)


def _as_mpf(value) -> mp.mpf:
    """Convert to mpf; pass ints/strings/Fractions through exactly."""
    if isinstance(value, mp.mpf):
        return value
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, int):
        return mp.mpf(value.numerator) / mp.mpf(value.denominator)
    return mp.mpf(value)


def oracle_poisson_cdf(k: int, lam) -> mp.mpf:
    """Pr[X <= k] for X ~ Poisson(lam), by exact term recursion."""
    if k < 0:
        raise DomainError(f"oracle_poisson_cdf requires k >= 0, got {k}")
    with _use_oracle_precision():
        lam = _as_mpf(lam)
        term = mp.e ** (-lam)
        total = term
        for i in range(1, k + 1):
            term *= lam / i
            total += term
        return +total


def oracle_poisson_sf(k: int, lam) -> mp.mpf:
    """Pr[X > k], summed directly from the tail until terms drop below 1e-(dps+20)."""
    if k < 0:
        raise DomainError(f"oracle_poisson_sf requires k >= 0, got {k}")
    with _use_oracle_precision():
        lam = _as_mpf(lam)
        log_term = -lam + (k + 1) * mp.log(lam) - mp.loggamma(k + 2)
        term = mp.e ** log_term
        total = term
        i = k + 2
        cutoff = mp.mpf(10) ** (-(ORACLE_DPS + 20))
        while True:
            term *= lam / i
            total += term
            i += 1
            if term < total * cutoff and i > lam:
                break
        return +total


def oracle_max_pmf(k: int, lam, n: int) -> mp.mpf:
    """Pr[max of n iid Poisson(lam) variables == k], for integer n <= 1e12."""
    if not isinstance(n, int) or n < 1 or n > _MAX_ORACLE_N:
        raise DomainError(f"oracle_max_pmf requires integer 1 <= n <= 1e12, got {n}")
    if k < 0:
        raise DomainError(f"oracle_max_pmf requires k >= 0, got {k}")
    with _use_oracle_precision():
        hi = oracle_poisson_cdf(k, lam) ** n  # mpf ** int: binary exponentiation
        lo = oracle_poisson_cdf(k - 1, lam) ** n if k >= 1 else mp.mpf(0)
        return +(hi - lo)


def oracle_log_g(x, lam) -> mp.mpf:
    """ln g(x) where g(x) = e^-lam lam^x sum_{i>=1} lam^i / Gamma(x+i+1).

    Terms are generated by the exact recursion term_{i+1} = term_i * lam/(x+i+1)
    and summed until they fall below 1e-180 of the partial sum.
    """
    with _use_oracle_precision():
        x = _as_mpf(x)
        lam = _as_mpf(lam)
        if x <= 0 or lam <= 0:
            raise DomainError(f"oracle_log_g requires x > 0 and lam > 0, got ({x}, {lam})")
        term = mp.e ** (mp.log(lam) - mp.loggamma(x + 2))
        total = term
        i = 1
        cutoff = mp.mpf("1e-180")
        while True:
            term *= lam / (x + i + 1)
            total += term
            i += 1
            if term < total * cutoff and lam < x + i + 1:
                break
        return +(-lam + x * mp.log(lam) + mp.log(total))


def _cdf_powers(lam, n: int, k_hi: int) -> list[mp.mpf]:
    """[Pr[max <= k] for k in 0..k_hi], sharing one CDF recursion."""
    with _use_oracle_precision():
        lam = _as_mpf(lam)
        out = []
        term = mp.e ** (-lam)
        total = term
        for k in range(k_hi + 1):
            if k > 0:
                term *= lam / k
                total += term
            out.append(total**n)
        return out


def oracle_mode(lam, n: int, k_hi: int = 400) -> tuple[int, mp.mpf, mp.mpf]:
    """(I, Pr[max == I], Pr[max in {I, I+1}]) with I the pmf argmax (ties go down)."""
    if not isinstance(n, int) or n < 1 or n > _MAX_ORACLE_N:
        raise DomainError(f"oracle_mode requires integer 1 <= n <= 1e12, got {n}")
    with _use_oracle_precision():
        cdf_pow = _cdf_powers(lam, n, k_hi)
        best_k = 0
        best_p = cdf_pow[0]
        prev = cdf_pow[0]
        one_gap = mp.mpf("1e-60")
        for k in range(1, k_hi + 1):
            p = cdf_pow[k] - prev
            prev = cdf_pow[k]
            if p > best_p:
                best_k, best_p = k, p
            if 1 - cdf_pow[k] < one_gap and k > best_k + 2:
                break
        nxt = cdf_pow[best_k + 1] - cdf_pow[best_k]
        return best_k, +best_p, +(best_p + nxt)


def oracle_two_point_best(lam, n: int, k_hi: int = 400) -> tuple[int, mp.mpf]:
    """(I, Pr[max in {I, I+1}]) maximised over I (ties go down)."""
    if not isinstance(n, int) or n < 1 or n > _MAX_ORACLE_N:
        raise DomainError(f"oracle_two_point_best requires integer 1 <= n <= 1e12, got {n}")
    with _use_oracle_precision():
        cdf_pow = _cdf_powers(lam, n, k_hi)
        lo = mp.mpf(0)
        best_i = 0
        best_p = cdf_pow[1] - lo
        one_gap = mp.mpf("1e-60")
        for i in range(1, k_hi):
            p = cdf_pow[i + 1] - cdf_pow[i - 1]
            if p > best_p:
                best_i, best_p = i, p
            if 1 - cdf_pow[i - 1] < one_gap and i > best_i + 2:
                break
        return best_i, +best_p


# --- golden-value files ----------------------------------------------------

_GOLDEN_LAMBDAS = ("0.5", "1", "2", "5")
_GOLDEN_LOG10_N = (0, 2, 4, 6, 8, 10, 12)
_GOLDEN_K_MAX = 30


def _fmt(x: mp.mpf) -> str:
    return mp.nstr(x, 25, strip_zeros=False)


def _dist_rows() -> Iterable[str]:
    yield "lambda,log10_n,k,pmf,log_pmf"
    for lam_s in _GOLDEN_LAMBDAS:
        for l10 in _GOLDEN_LOG10_N:
            n = 10**l10
            with _use_oracle_precision():
                cdf_pow = _cdf_powers(mp.mpf(lam_s), n, _GOLDEN_K_MAX)
                prev = mp.mpf(0)
                for k in range(_GOLDEN_K_MAX + 1):
                    p = cdf_pow[k] - prev
                    prev = cdf_pow[k]
                    lp = _fmt(mp.log(p)) if p > 0 else ""
                    yield f"{lam_s},{l10},{k},{_fmt(p)},{lp}"


def _prob_rows() -> Iterable[str]:
    yield "lambda,log10_n,i_best,p_two_point"
    for lam_s in _GOLDEN_LAMBDAS:
        for l10 in _GOLDEN_LOG10_N:
            i, p = oracle_two_point_best(mp.mpf(lam_s), 10**l10)
            yield f"{lam_s},{l10},{i},{_fmt(p)}"


def write_goldens(out_dir: str) -> list[str]:
    """Write golden-value CSVs (dist and prob tables) and return their paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name, rows in (("golden_dist.csv", _dist_rows()), ("golden_prob.csv", _prob_rows())):
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(rows) + "\n")
        written.append(path)
    return written


def _main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m poisson_maxima.oracle",
        description="Regenerate extended-precision golden-value files.",
    )
    parser.add_argument("--out", required=True, help="output directory for golden CSVs")
    args = parser.parse_args(argv)
    for path in write_goldens(args.out):
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(_main())
