"""Request validation and the shared handler layer."""

import math

import pytest
from pydantic import ValidationError

from poisson_maxima.sweeps import DIST_COLUMNS, MODES_COLUMNS, POINT_COLUMNS, PROB_COLUMNS
from poisson_maxima.schemas import (
    MAX_INTEGER_N,
    DistRequest,
    Log10nRange,
    ModesRequest,
    PointRequest,
    ProbRequest,
    TableResponse,
    run_dist,
    run_modes,
    run_point,
    run_prob,
)


class TestLog10nRange:
    def test_values_inclusive_endpoints(self):
        r = Log10nRange(min=0.0, max=40.0, step=0.25)
        vals = r.values()
        assert len(vals) == 161
        assert vals[0] == 0.0 and vals[-1] == 40.0

    def test_tenth_step_grid_is_exact(self):
        vals = Log10nRange(min=0.0, max=1.0, step=0.1).values()
        assert len(vals) == 11
        assert 0.3 in vals and 0.7 in vals  # no 0.30000000000000004 artefacts

    def test_single_point_range(self):
        assert Log10nRange(min=5.0, max=5.0, step=1.0).values() == [5.0]

    def test_ordering_enforced(self):
        with pytest.raises(ValidationError):
            Log10nRange(min=2.0, max=1.0, step=0.5)

    def test_step_positive(self):
        with pytest.raises(ValidationError):
            Log10nRange(min=0.0, max=1.0, step=0.0)
        with pytest.raises(ValidationError):
            Log10nRange(min=0.0, max=1.0, step=-0.1)

    def test_nonnegative(self):
        with pytest.raises(ValidationError):
            Log10nRange(min=-1.0, max=1.0, step=0.5)


class TestSweepRequestValidation:
    def test_exactly_one_n_spec(self):
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0)
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, log10_n=[1.0], n=10)
        with pytest.raises(ValidationError):
            ProbRequest(
                lam=1.0,
                log10_n=[1.0],
                log10_n_range=Log10nRange(min=0.0, max=1.0, step=1.0),
            )

    def test_lambda_positive_finite(self):
        with pytest.raises(ValidationError):
            ProbRequest(lam=0.0, n=10)
        with pytest.raises(ValidationError):
            ProbRequest(lam=-2.0, n=10)
        with pytest.raises(ValidationError):
            ProbRequest(lam=math.inf, n=10)

    def test_alias_lambda(self):
        req = ProbRequest.model_validate({"lambda": 2.5, "n": 100})
        assert req.lam == 2.5

    def test_log10_n_list_rules(self):
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, log10_n=[])
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, log10_n=[1.0, -0.5])
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, log10_n=[math.nan])

    def test_n_bounds(self):
        assert ProbRequest(lam=1.0, n=1).log10_n_values() == [0.0]
        assert ProbRequest(lam=1.0, n=MAX_INTEGER_N).log10_n_values() == [15.0]
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, n=0)
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, n=MAX_INTEGER_N + 1)

    def test_n_converts_to_log10(self):
        req = ProbRequest(lam=1.0, n=10**6)
        assert req.log10_n_values() == [pytest.approx(6.0, rel=1e-15)]

    def test_range_cap_for_prob_and_modes(self):
        rng = Log10nRange(min=0.0, max=41.0, step=1.0)
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, log10_n_range=rng)
        with pytest.raises(ValidationError):
            ModesRequest(lam=1.0, log10_n_range=rng)
        # the dist table has no 40-decade cap
        assert DistRequest(lam=1.0, log10_n_range=rng).log10_n_values()[-1] == 41.0

    def test_format_literal(self):
        assert ProbRequest(lam=1.0, n=10).format == "csv"
        assert ProbRequest(lam=1.0, n=10, format="json").format == "json"
        with pytest.raises(ValidationError):
            ProbRequest(lam=1.0, n=10, format="yaml")

    def test_frozen(self):
        req = ProbRequest(lam=1.0, n=10)
        with pytest.raises(ValidationError):
            req.lam = 2.0  # type: ignore[misc]


class TestDistRequest:
    def test_k_max_validation(self):
        assert DistRequest(lam=1.0, n=10, k_max=0).k_max == 0
        with pytest.raises(ValidationError):
            DistRequest(lam=1.0, n=10, k_max=-1)


class TestPointRequest:
    def test_exactly_one(self):
        with pytest.raises(ValidationError):
            PointRequest(lam=1.0)
        with pytest.raises(ValidationError):
            PointRequest(lam=1.0, log10_n=2.0, n=100)

    def test_values(self):
        assert PointRequest(lam=1.0, log10_n=7.5).log10_n_value() == 7.5
        assert PointRequest(lam=1.0, n=1000).log10_n_value() == pytest.approx(3.0, rel=1e-15)

    def test_default_format_json(self):
        assert PointRequest(lam=1.0, n=10).format == "json"

    def test_negative_log10_n(self):
        with pytest.raises(ValidationError):
            PointRequest(lam=1.0, log10_n=-0.5)


class TestHandlers:
    def test_run_dist_columns(self):
        table = run_dist(DistRequest(lam=1.0, n=100, k_max=5))
        assert table.columns == DIST_COLUMNS
        assert len(table.rows) == 6

    def test_run_prob_columns(self):
        table = run_prob(ProbRequest(lam=1.0, log10_n=[0.0, 2.0]))
        assert table.columns == PROB_COLUMNS
        assert [r["log10_n"] for r in table.rows] == [0.0, 2.0]

    def test_run_modes_columns(self):
        table = run_modes(ModesRequest(lam=1.0, log10_n_range=Log10nRange(min=0.0, max=4.0, step=2.0)))
        assert table.columns == MODES_COLUMNS
        assert len(table.rows) == 3

    def test_run_point_record(self):
        record, warns = run_point(PointRequest(lam=2.0, log10_n=10.0))
        assert set(record) == set(POINT_COLUMNS)
        assert warns == ()
        assert record["i_n"] == 16

    def test_table_response_roundtrip(self):
        table = run_prob(ProbRequest(lam=1.0, n=100))
        resp = TableResponse.from_table(table)
        assert resp.columns == list(table.columns)
        assert resp.rows[0]["i_best"] == table.rows[0]["i_best"]
        assert resp.warnings == []
