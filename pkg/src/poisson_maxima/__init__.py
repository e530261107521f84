"""Exact and asymptotic behaviour of the maximum of n i.i.d. Poisson variables.

Core surface:

- :mod:`poisson_maxima.specfun` — log-domain special functions (log-gamma,
  regularised incomplete gamma, Poisson tail logs, the survival interpolant,
  Lambert W).
- :mod:`poisson_maxima.maxdist` — exact distribution of the maximum:
  ``max_cdf_log``, ``max_pmf_log``, modal scan (``mode``, ``two_point_best``).
- :mod:`poisson_maxima.asymptotics` — closed-form modal estimates
  (``x0``, ``x1``, Newton refinement, ``kimber_estimate``, ``anderson_beta``,
  ``continuous_root``).
- :mod:`poisson_maxima.sweeps` — table builders over (lam, n) grids with CSV
  and JSON serialisation.
- :mod:`poisson_maxima.oracle` — slow extended-precision reference
  implementation used only to mint test fixtures.
"""

from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    PoissonMaximaError,
    RegimeError,
    WindowError,
)
from .specfun import Accuracy, DEFAULT_ACCURACY
from .maxdist import ModeReport, ProblemInstance, max_cdf_log, max_pmf_log, mode, two_point_best
from .asymptotics import (
    AsymptoticReport,
    anderson_beta,
    asymptotic_report,
    continuous_root,
    kimber_estimate,
    newton_refine,
    x0,
    x1,
)

__version__ = "0.1.0"

__all__ = [
    "Accuracy",
    "AsymptoticReport",
    "BracketError",
    "ConvergenceError",
    "DEFAULT_ACCURACY",
    "DomainError",
    "ModeReport",
    "PoissonMaximaError",
    "ProblemInstance",
    "RegimeError",
    "WindowError",
    "anderson_beta",
    "asymptotic_report",
    "continuous_root",
    "kimber_estimate",
    "max_cdf_log",
    "max_pmf_log",
    "mode",
    "newton_refine",
    "two_point_best",
    "x0",
    "x1",
    "__version__",
]
