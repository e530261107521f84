"""Closed-form approximations to the modal position of the Poisson maximum.

The survival interpolant ln g_lam(x) admits the large-x expansion

    h(x) = -x ln x + (1 + ln lam) x - (3/2) ln x
           + (ln lam - lam - ln(2 pi)/2) + (lam - 13/12)/x,

and the modal position tracks the root of h(x) = -ln n.  Solving the leading
balance gives the Lambert-W estimate x0; re-substituting the constant and
logarithmic terms gives the refined x1; Newton steps on h push further.  Also
provided: the classical ln n / ln ln n estimate, the tail-crossing point
beta_n with Pr[X >= beta_n] = 1/n, and the exact continuous root of
g_lam(x) = 1/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import BracketError, ConvergenceError, DomainError, RegimeError
from .maxdist import ProblemInstance
from .specfun import (
    _LN_SQRT_2PI,
    Accuracy,
    DEFAULT_ACCURACY,
    lambert_w0,
    log_g,
    reg_gamma_q,
)

__all__ = [
    "AsymptoticReport",
    "log_g_expansion",
    "log_g_expansion_deriv",
    "x0",
    "x1",
    "newton_refine",
    "kimber_estimate",
    "anderson_beta",
    "continuous_root",
    "asymptotic_report",
]

_ROOT_TOL = 5e-11  # |f| target for the log-domain root solves
_X1_FLOOR = 1.0  # x1 at or below this is outside the expansion's regime


def log_g_expansion(x: float, lam: float) -> float:
    """h(x): large-x expansion of ln g_lam(x).  Requires x > 1."""
    if not x > 1.0:
        raise DomainError(f"log_g_expansion requires x > 1, got {x}")
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"lam must be positive and finite, got {lam}")
    ln_x = math.log(x)
    ln_lam = math.log(lam)
    return (
        -x * ln_x
        + (1.0 + ln_lam) * x
        - 1.5 * ln_x
        + (ln_lam - lam - _LN_SQRT_2PI)
        + (lam - 13.0 / 12.0) / x
    )


def log_g_expansion_deriv(x: float, lam: float) -> float:
    """h'(x) = ln lam - ln x - 3/(2x) - (lam - 13/12)/x^2.  Requires x > 1."""
    if not x > 1.0:
        raise DomainError(f"log_g_expansion_deriv requires x > 1, got {x}")
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"lam must be positive and finite, got {lam}")
    return math.log(lam) - math.log(x) - 1.5 / x - (lam - 13.0 / 12.0) / (x * x)


def x0(inst: ProblemInstance) -> float:
    """Leading-order modal estimate ln n / W0(ln n / (e lam)).

    Solves the two-term balance -x ln x + (1 + ln lam) x = -ln n.  Always at
    least e*lam.  Raises DomainError at ln_n = 0, where the balance degenerates.
    """
    if inst.ln_n <= 0.0:
        raise DomainError("x0 needs ln_n > 0; the n = 1 problem has no growth scale")
    return inst.ln_n / lambert_w0(inst.ln_n / (math.e * inst.lam))


def x1(inst: ProblemInstance) -> float:
    """One correction beyond x0: feeds the constant and (3/2) ln x terms back in.

        x1 = x0 + (ln lam - lam - ln(2 pi)/2 - (3/2) ln x0) / (ln x0 - ln lam)

    The refinement is an n -> infinity correction; it is only exposed in its
    regime of validity.  Raises RegimeError when ln_n <= lam (too few
    variables for the expansion to order the terms), when the correction
    denominator vanishes, or when the result lands at or below 1, where the
    expansion it is built on is invalid.
    """
    if inst.ln_n <= inst.lam:
        raise RegimeError(
            f"x1 needs ln_n > lam; got ln_n={inst.ln_n:.6g} <= lam={inst.lam:.6g} "
            "(use the exact modal scan instead at this size)"
        )
    base = x0(inst)
    den = math.log(base) - math.log(inst.lam)
    if abs(den) < 1e-9:
        raise RegimeError(
            f"x1 denominator ln(x0/lam) = {den:.3e} is singular at lam={inst.lam}, ln_n={inst.ln_n}"
        )
    val = base + (math.log(inst.lam) - inst.lam - _LN_SQRT_2PI - 1.5 * math.log(base)) / den
    if val <= _X1_FLOOR:
        raise RegimeError(
            f"x1 = {val:.6g} <= {_X1_FLOOR}: n is too small for the refined estimate at lam={inst.lam}"
        )
    return val


def newton_refine(inst: ProblemInstance, x_start: float, steps: int) -> list[float]:
    """Newton iterates on h(x) + ln n = 0 starting from x_start.

    Returns the list of successive iterates (length `steps`).  Raises
    ConvergenceError if an iterate escapes (1, 10 * x_start), the region where
    the expansion and its derivative stay trustworthy.
    """
    if not (x_start > 1.0 and math.isfinite(x_start)):
        raise DomainError(f"newton_refine requires x_start > 1, got {x_start}")
    if not isinstance(steps, int) or steps < 0:
        raise DomainError(f"steps must be a nonnegative integer, got {steps!r}")
    iterates: list[float] = []
    x = x_start
    for _ in range(steps):
        x = x - (log_g_expansion(x, inst.lam) + inst.ln_n) / log_g_expansion_deriv(x, inst.lam)
        if not (1.0 < x < 10.0 * x_start):
            raise ConvergenceError(
                f"Newton iterate {x:.6g} left (1, {10.0 * x_start:.6g}); "
                f"start {x_start:.6g} is outside the basin"
            )
        iterates.append(x)
    return iterates


def kimber_estimate(inst: ProblemInstance) -> float:
    """Classical coarse scale ln n / ln ln n.  Requires ln_n > 1."""
    if inst.ln_n <= 1.0:
        raise DomainError(f"kimber_estimate requires ln_n > 1, got {inst.ln_n}")
    return inst.ln_n / math.log(inst.ln_n)


def _solve_decreasing(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    f_tol: float,
    max_iter: int = 200,
    widen_tries: int = 4,
) -> float:
    """Root of a strictly decreasing f via bracketed secant/bisection.

    Widens hi (doubling) up to widen_tries times if f(hi) > 0.  Raises
    BracketError when no sign change exists, ConvergenceError when the bracket
    collapses or the budget runs out before |f| <= f_tol.
    """
    flo = f(lo)
    if flo < 0.0:
        if abs(flo) <= f_tol:
            return lo
        raise BracketError(
            f"f({lo:.6g}) = {flo:.6g} < 0: the root, if any, lies below the lower bound"
        )
    if flo == 0.0:
        return lo
    fhi = f(hi)
    tries = 0
    while fhi > 0.0:
        if tries >= widen_tries:
            raise BracketError(f"no sign change: f({hi:.6g}) = {fhi:.6g} still positive")
        lo, flo = hi, fhi
        hi = hi * 2.0 + 50.0
        fhi = f(hi)
        tries += 1
    if fhi == 0.0:
        return hi
    bisect_turn = False
    for _ in range(max_iter):
        if bisect_turn:
            x = 0.5 * (lo + hi)
        else:
            x = lo + flo * (hi - lo) / (flo - fhi)
            if not (lo < x < hi):
                x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) <= f_tol:
            return x
        if fx > 0.0:
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        bisect_turn = not bisect_turn
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            x = 0.5 * (lo + hi)
            fx = f(x)
            if abs(fx) <= f_tol:
                return x
            raise ConvergenceError(
                f"bracket collapsed at {x:.17g} with |f| = {abs(fx):.3e} > {f_tol:.1e}"
            )
    raise ConvergenceError(f"root solve used all {max_iter} iterations without |f| <= {f_tol:.1e}")


def _upper_bracket(inst: ProblemInstance) -> float:
    try:
        return x0(inst) + 50.0
    except DomainError:
        return max(50.0, 10.0 * inst.lam)


def continuous_root(inst: ProblemInstance, acc: Optional[Accuracy] = None) -> float:
    """Exact continuous root of g_lam(x) = 1/n, i.e. ln g_lam(x) + ln n = 0.

    g_lam interpolates the Poisson survival beyond k, so this root is the
    real-valued analogue of the modal position.  Solved to |ln g + ln n| <= 5e-11.
    """
    acc = DEFAULT_ACCURACY if acc is None else acc
    ln_n = inst.ln_n
    lam = inst.lam

    def f(x: float) -> float:
        return log_g(x, lam, acc) + ln_n

    return _solve_decreasing(f, 1e-12, _upper_bracket(inst), _ROOT_TOL)


def anderson_beta(inst: ProblemInstance, acc: Optional[Accuracy] = None) -> float:
    """The tail-crossing point: the real beta with Pr[X >= beta] = 1/n.

    The survival Pr[X >= beta] = P(beta, lam) (lower regularised incomplete
    gamma) continues Pr[X >= k] off the integers; for beta > 1 its log is
    ln g_lam(beta - 1), so beta_n = continuous_root + 1 whenever both exceed
    their floors.  Solved to |ln P + ln n| <= 5e-11.
    """
    acc = DEFAULT_ACCURACY if acc is None else acc
    ln_n = inst.ln_n
    lam = inst.lam

    def f(beta: float) -> float:
        if beta > 1.0:
            return log_g(beta - 1.0, lam, acc) + ln_n
        # Q(beta, lam) <= Q(1, lam) = e^-lam here, so the complement is safe.
        return math.log1p(-reg_gamma_q(beta, lam, acc)) + ln_n

    return _solve_decreasing(f, 1e-6, _upper_bracket(inst) + 1.0, _ROOT_TOL)


@dataclass(frozen=True)
class AsymptoticReport:
    """All closed-form estimates for one instance; None where a floor applies."""

    x0: Optional[float]
    x1: Optional[float]
    x_newton: tuple[float, ...]
    kimber: Optional[float]
    beta_n: Optional[float]
    continuous_root: Optional[float]


def asymptotic_report(
    inst: ProblemInstance,
    acc: Optional[Accuracy] = None,
    newton_steps: int = 2,
) -> AsymptoticReport:
    """Evaluate every estimate, mapping typed domain/regime failures to None.

    Newton refinement starts from x1 when available, else from x0; it is
    dropped (empty tuple) when no valid start exists or iteration escapes.
    """
    vals: dict[str, Optional[float]] = {}
    for name, fn in (
        ("x0", x0),
        ("x1", x1),
        ("kimber", kimber_estimate),
        ("beta_n", lambda i: anderson_beta(i, acc)),
        ("continuous_root", lambda i: continuous_root(i, acc)),
    ):
        try:
            vals[name] = fn(inst)
        except (DomainError, RegimeError, BracketError, ConvergenceError):
            vals[name] = None
    newton: tuple[float, ...] = ()
    start = vals["x1"] if vals["x1"] is not None else vals["x0"]
    if start is not None and start > 1.0 and newton_steps > 0:
        try:
            newton = tuple(newton_refine(inst, start, newton_steps))
        except (DomainError, ConvergenceError):
            newton = ()
    return AsymptoticReport(
        x0=vals["x0"],
        x1=vals["x1"],
        x_newton=newton,
        kimber=vals["kimber"],
        beta_n=vals["beta_n"],
        continuous_root=vals["continuous_root"],
    )
