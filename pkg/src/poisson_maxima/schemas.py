"""Validated request/response models and the handlers behind both front ends.

The CLI and the HTTP service are thin clients of this layer: each parses its
own input syntax into the same pydantic request models and calls the same
run_* handlers, so every validation rule and every numeric convention lives
exactly once.
"""

from __future__ import annotations

import math
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import sweeps
from .sweeps import SweepTable

__all__ = [
    "MAX_INTEGER_N",
    "DistRequest",
    "ProbRequest",
    "ModesRequest",
    "PointRequest",
    "TableResponse",
    "PointResponse",
    "run_dist",
    "run_prob",
    "run_modes",
    "run_point",
]

MAX_INTEGER_N = 10**15  # --n convenience flag ceiling; larger n go via log10_n
_RANGE_SLACK = 1e-9  # inclusive-endpoint slack when stepping a float range


class Log10nRange(BaseModel):
    """A closed grid min..max in steps of step (decades of n)."""

    model_config = ConfigDict(frozen=True)

    min: float = Field(ge=0.0)
    max: float = Field(ge=0.0)
    step: float = Field(gt=0.0)

    @model_validator(mode="after")
    def _ordered(self) -> "Log10nRange":
        if self.min > self.max:
            raise ValueError(f"range min {self.min} exceeds max {self.max}")
        return self

    def values(self) -> list[float]:
        count = int(math.floor((self.max - self.min) / self.step + _RANGE_SLACK)) + 1
        # Rounding keeps 0.1-decade grids at 0.3, not 0.30000000000000004.
        return [round(self.min + i * self.step, 12) for i in range(count)]


class _SweepRequest(BaseModel):
    """Common sweep inputs: lambda plus exactly one way of specifying n."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(alias="lambda", gt=0.0)
    log10_n: Optional[list[float]] = None
    log10_n_range: Optional[Log10nRange] = None
    n: Optional[int] = None
    format: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def _one_n_spec(self) -> "_SweepRequest":
        given = sum(v is not None for v in (self.log10_n, self.log10_n_range, self.n))
        if given != 1:
            raise ValueError("specify exactly one of log10_n, log10_n_range, n")
        if self.log10_n is not None:
            if not self.log10_n:
                raise ValueError("log10_n list must not be empty")
            for v in self.log10_n:
                if not (v >= 0.0 and math.isfinite(v)):
                    raise ValueError(f"log10_n values must be finite and >= 0, got {v}")
        if self.n is not None and not (1 <= self.n <= MAX_INTEGER_N):
            raise ValueError(f"n must be an integer in [1, {MAX_INTEGER_N}], got {self.n}")
        if not math.isfinite(self.lam):
            raise ValueError("lambda must be finite")
        return self

    def log10_n_values(self) -> list[float]:
        if self.log10_n is not None:
            return list(self.log10_n)
        if self.log10_n_range is not None:
            return self.log10_n_range.values()
        assert self.n is not None
        return [math.log10(self.n)]


class DistRequest(_SweepRequest):
    """Inputs for the pmf-by-k table behind the distribution curves."""

    k_max: Optional[int] = Field(default=None, ge=0)


class _BoundedRangeRequest(_SweepRequest):
    """prob/modes sweeps: grid ranges are specified within 0..40 decades."""

    @model_validator(mode="after")
    def _range_bounds(self) -> "_BoundedRangeRequest":
        if self.log10_n_range is not None and self.log10_n_range.max > 40.0:
            raise ValueError("log10_n_range max must be <= 40")
        return self


class ProbRequest(_BoundedRangeRequest):
    pass


class ModesRequest(_BoundedRangeRequest):
    pass


class PointRequest(BaseModel):
    """Inputs for the single-instance full report."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(alias="lambda", gt=0.0)
    log10_n: Optional[float] = Field(default=None, ge=0.0)
    n: Optional[int] = None
    format: Literal["csv", "json"] = "json"

    @model_validator(mode="after")
    def _one_n_spec(self) -> "PointRequest":
        given = sum(v is not None for v in (self.log10_n, self.n))
        if given != 1:
            raise ValueError("specify exactly one of log10_n, n")
        if self.n is not None and not (1 <= self.n <= MAX_INTEGER_N):
            raise ValueError(f"n must be an integer in [1, {MAX_INTEGER_N}], got {self.n}")
        if not math.isfinite(self.lam):
            raise ValueError("lambda must be finite")
        if self.log10_n is not None and not math.isfinite(self.log10_n):
            raise ValueError("log10_n must be finite")
        return self

    def log10_n_value(self) -> float:
        if self.log10_n is not None:
            return self.log10_n
        assert self.n is not None
        return math.log10(self.n)


class TableResponse(BaseModel):
    """Structured sweep result (the service's JSON body)."""

    columns: list[str]
    rows: list[dict[str, Any]]
    warnings: list[str]

    @classmethod
    def from_table(cls, table: SweepTable) -> "TableResponse":
        return cls(
            columns=list(table.columns),
            rows=[dict(r) for r in table.rows],
            warnings=list(table.warnings),
        )


class PointResponse(BaseModel):
    """Structured single-instance result (the service's JSON body)."""

    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda")
    log10_n: float
    i_n: Optional[int]
    p_two_point: Optional[float]
    i_mode: Optional[int]
    p_mode: Optional[float]
    scan_lo: Optional[int]
    scan_hi: Optional[int]
    x0: Optional[float]
    x1: Optional[float]
    x_newton: list[float]
    kimber: Optional[float]
    beta_n: Optional[float]
    continuous_root: Optional[float]
    err_x0: Optional[float]
    err_x1: Optional[float]
    warnings: list[str]


def run_dist(req: DistRequest) -> SweepTable:
    return sweeps.dist_table(req.lam, req.log10_n_values(), k_max=req.k_max)


def run_prob(req: ProbRequest) -> SweepTable:
    return sweeps.prob_table(req.lam, req.log10_n_values())


def run_modes(req: ModesRequest) -> SweepTable:
    return sweeps.modes_table(req.lam, req.log10_n_values())


def run_point(req: PointRequest) -> tuple[dict[str, Any], tuple[str, ...]]:
    return sweeps.point_record(req.lam, req.log10_n_value())
