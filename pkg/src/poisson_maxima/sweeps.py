"""Grid sweeps over (lam, log10 n) and their locked-format serialisation.

Builders return a SweepTable whose rows are plain dicts in a fixed column
order; cells are int, float, tuple-of-float, or None (a typed numeric error
for that cell).  Serialisers lock every float to 17 significant digits
('%.17g') so that identical invocations are byte-identical; JSON is emitted by
hand with the same digit strings as the CSV.

Rows of a sweep are independent, so they are computed on a thread pool sized
by the POISSON_MAXIMA_THREADS environment variable (0 or unset = automatic);
results are collected in grid order, keeping output deterministic regardless
of scheduling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, TypeVar

from .asymptotics import asymptotic_report
from .errors import DomainError, PoissonMaximaError, WindowError
from .maxdist import ProblemInstance, max_pmf_log, mode, scan_window, two_point_best

__all__ = [
    "SweepTable",
    "DIST_COLUMNS",
    "PROB_COLUMNS",
    "MODES_COLUMNS",
    "POINT_COLUMNS",
    "dist_table",
    "prob_table",
    "modes_table",
    "point_record",
    "format_float",
    "to_csv",
    "to_json",
    "to_json_object",
    "thread_count",
]

DIST_COLUMNS = ("lambda", "log10_n", "k", "pmf", "log_pmf")
PROB_COLUMNS = ("lambda", "log10_n", "i_best", "p_two_point")
MODES_COLUMNS = (
    "lambda",
    "log10_n",
    "i_n",
    "x0",
    "x1",
    "kimber",
    "beta_n",
    "continuous_root",
    "err_x0",
    "err_x1",
)
POINT_COLUMNS = (
    "lambda",
    "log10_n",
    "i_n",
    "p_two_point",
    "i_mode",
    "p_mode",
    "scan_lo",
    "scan_hi",
    "x0",
    "x1",
    "x_newton",
    "kimber",
    "beta_n",
    "continuous_root",
    "err_x0",
    "err_x1",
)

_T = TypeVar("_T")
_U = TypeVar("_U")


@dataclass(frozen=True)
class SweepTable:
    """An ordered table: every row has a value (or None) under every column."""

    columns: tuple[str, ...]
    rows: tuple[dict[str, Any], ...]
    warnings: tuple[str, ...] = field(default=())


def thread_count() -> int:
    """Worker count from POISSON_MAXIMA_THREADS; 0 or unset means automatic."""
    raw = os.environ.get("POISSON_MAXIMA_THREADS", "0").strip()
    try:
        v = int(raw)
    except ValueError:
        raise DomainError(f"POISSON_MAXIMA_THREADS must be an integer, got {raw!r}") from None
    if v < 0:
        raise DomainError(f"POISSON_MAXIMA_THREADS must be >= 0, got {v}")
    if v == 0:
        return min(8, os.cpu_count() or 1)
    return v


def _ordered_map(fn: Callable[[_T], _U], items: Sequence[_T]) -> list[_U]:
    """Map preserving input order; parallel when it can pay off."""
    workers = thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as ex:
        return list(ex.map(fn, items))


def _widening_pads(first_pad: int) -> tuple[int, ...]:
    return (first_pad, 2 * first_pad, 4 * first_pad, 8 * first_pad)


def _with_widening(call: Callable[[int], _T], first_pad: int) -> _T:
    """Run a windowed scan, doubling the pad on WindowError up to 8x."""
    last: Optional[WindowError] = None
    for pad in _widening_pads(first_pad):
        try:
            return call(pad)
        except WindowError as err:
            last = err
    assert last is not None
    raise last


def _cell_warning(command: str, lam: float, log10_n: float, err: Exception) -> str:
    return (
        f"{command}: null cells at lambda={format_float(lam)}, "
        f"log10_n={format_float(log10_n)}: {type(err).__name__}: {err}"
    )


def dist_table(
    lam: float,
    log10_n_values: Sequence[float],
    k_max: Optional[int] = None,
    pad: int = 40,
) -> SweepTable:
    """Rows (lambda, log10_n, k, pmf, log_pmf) for k = 0..k_max, one block per n.

    k_max defaults to the largest scan-window top over the requested n values.
    log_pmf is None exactly when the probability is zero to double precision.
    """
    if k_max is not None and (not isinstance(k_max, int) or k_max < 0):
        raise DomainError(f"k_max must be a nonnegative integer, got {k_max!r}")
    l10s = sorted(log10_n_values)
    insts = [ProblemInstance.from_log10_n(lam, v) for v in l10s]
    top = k_max if k_max is not None else max(scan_window(inst, pad)[1] for inst in insts)

    def block(pair: tuple[float, ProblemInstance]) -> list[dict[str, Any]]:
        l10, inst = pair
        rows = []
        for k in range(top + 1):
            lp = max_pmf_log(inst, k)
            rows.append(
                {
                    "lambda": lam,
                    "log10_n": l10,
                    "k": k,
                    "pmf": math.exp(lp) if lp > -math.inf else 0.0,
                    "log_pmf": lp if lp > -math.inf else None,
                }
            )
        return rows

    blocks = _ordered_map(block, list(zip(l10s, insts)))
    return SweepTable(DIST_COLUMNS, tuple(r for b in blocks for r in b))


def prob_table(lam: float, log10_n_values: Sequence[float], pad: int = 40) -> SweepTable:
    """Rows (lambda, log10_n, i_best, p_two_point) from the two-point modal scan."""
    l10s = sorted(log10_n_values)

    def row(l10: float) -> tuple[dict[str, Any], Optional[str]]:
        inst = ProblemInstance.from_log10_n(lam, l10)
        try:
            i_best, p = _with_widening(lambda pd: two_point_best(inst, pd), pad)
            return {"lambda": lam, "log10_n": l10, "i_best": i_best, "p_two_point": p}, None
        except PoissonMaximaError as err:
            return (
                {"lambda": lam, "log10_n": l10, "i_best": None, "p_two_point": None},
                _cell_warning("prob", lam, l10, err),
            )

    results = _ordered_map(row, l10s)
    return SweepTable(
        PROB_COLUMNS,
        tuple(r for r, _ in results),
        tuple(w for _, w in results if w is not None),
    )


def modes_table(lam: float, log10_n_values: Sequence[float], pad: int = 40) -> SweepTable:
    """Rows (lambda, log10_n, i_n, x0, x1, kimber, beta_n, continuous_root, err_x0, err_x1).

    i_n is the leading integer of the best adjacent pair.  Asymptotic cells go
    None silently where their typed domain/regime floors apply (expected at
    small n, e.g. the coarse ln n / ln ln n estimate at n = 1); a failed modal
    scan is warned about, since it is never expected.
    """
    l10s = sorted(log10_n_values)

    def row(l10: float) -> tuple[dict[str, Any], Optional[str]]:
        inst = ProblemInstance.from_log10_n(lam, l10)
        warn: Optional[str] = None
        i_n: Optional[int] = None
        try:
            i_n, _ = _with_widening(lambda pd: two_point_best(inst, pd), pad)
        except PoissonMaximaError as err:
            warn = _cell_warning("modes", lam, l10, err)
        rep = asymptotic_report(inst, newton_steps=0)
        r: dict[str, Any] = {
            "lambda": lam,
            "log10_n": l10,
            "i_n": i_n,
            "x0": rep.x0,
            "x1": rep.x1,
            "kimber": rep.kimber,
            "beta_n": rep.beta_n,
            "continuous_root": rep.continuous_root,
            "err_x0": rep.x0 - i_n if rep.x0 is not None and i_n is not None else None,
            "err_x1": rep.x1 - i_n if rep.x1 is not None and i_n is not None else None,
        }
        return r, warn

    results = _ordered_map(row, l10s)
    return SweepTable(
        MODES_COLUMNS,
        tuple(r for r, _ in results),
        tuple(w for _, w in results if w is not None),
    )


def point_record(
    lam: float,
    log10_n: float,
    pad: int = 40,
    newton_steps: int = 2,
) -> tuple[dict[str, Any], tuple[str, ...]]:
    """Every quantity for one (lam, n), as a single flat record plus warnings.

    The i_n / p_two_point cells equal the prob-table cells and the asymptotic
    cells equal the modes-table cells for the same instance, by construction.
    """
    inst = ProblemInstance.from_log10_n(lam, log10_n)
    warns: list[str] = []
    i_n: Optional[int] = None
    p_two: Optional[float] = None
    try:
        i_n, p_two = _with_widening(lambda pd: two_point_best(inst, pd), pad)
    except PoissonMaximaError as err:
        warns.append(_cell_warning("point", lam, log10_n, err))
    i_mode: Optional[int] = None
    p_mode: Optional[float] = None
    scan_lo: Optional[int] = None
    scan_hi: Optional[int] = None
    try:
        rep = _with_widening(lambda pd: mode(inst, pd), pad)
        i_mode, p_mode, scan_lo, scan_hi = rep.i_n, rep.p_mode, rep.scan_lo, rep.scan_hi
    except PoissonMaximaError as err:
        warns.append(_cell_warning("point", lam, log10_n, err))
    arep = asymptotic_report(inst, newton_steps=newton_steps)
    record: dict[str, Any] = {
        "lambda": lam,
        "log10_n": log10_n,
        "i_n": i_n,
        "p_two_point": p_two,
        "i_mode": i_mode,
        "p_mode": p_mode,
        "scan_lo": scan_lo,
        "scan_hi": scan_hi,
        "x0": arep.x0,
        "x1": arep.x1,
        "x_newton": arep.x_newton,
        "kimber": arep.kimber,
        "beta_n": arep.beta_n,
        "continuous_root": arep.continuous_root,
        "err_x0": arep.x0 - i_n if arep.x0 is not None and i_n is not None else None,
        "err_x1": arep.x1 - i_n if arep.x1 is not None and i_n is not None else None,
    }
    return record, tuple(warns)


def format_float(v: float) -> str:
    """The locked float format: 17 significant digits, -0.0 normalised."""
    if v == 0.0:
        v = 0.0
    return f"{v:.17g}"


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (tuple, list)):
        return ";".join(format_float(x) for x in v)
    raise DomainError(f"unserialisable cell {v!r}")


def _json_cell(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (tuple, list)):
        return "[" + ",".join(format_float(x) for x in v) + "]"
    raise DomainError(f"unserialisable cell {v!r}")


def _json_row(columns: Sequence[str], row: dict[str, Any]) -> str:
    return "{" + ",".join(f'"{c}":{_json_cell(row[c])}' for c in columns) + "}"


def to_csv(table: SweepTable) -> str:
    lines = [",".join(table.columns)]
    lines.extend(",".join(_csv_cell(row[c]) for c in table.columns) for row in table.rows)
    return "\n".join(lines) + "\n"


def to_json(table: SweepTable) -> str:
    if not table.rows:
        return "[]\n"
    return "[\n" + ",\n".join(_json_row(table.columns, r) for r in table.rows) + "\n]\n"


def to_json_object(columns: Sequence[str], row: dict[str, Any]) -> str:
    return _json_row(columns, row) + "\n"
