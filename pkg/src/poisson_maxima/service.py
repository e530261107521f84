"""HTTP service exposing the sweep and point computations.

POST /v1/dist, /v1/prob, /v1/modes take the corresponding request model as a
JSON body and return either a structured JSON table (columns/rows/warnings)
or, when the request's format field is "csv", the same locked-format CSV text
the CLI prints.  POST /v1/point returns the flat single-instance record.
GET /healthz reports liveness.

Run it with `poisson-maxima serve` or any ASGI server pointed at
poisson_maxima.service:app.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import PlainTextResponse, Response

from . import __version__, sweeps
from .schemas import (
    DistRequest,
    ModesRequest,
    PointRequest,
    PointResponse,
    ProbRequest,
    TableResponse,
    run_dist,
    run_modes,
    run_point,
    run_prob,
)

__all__ = ["app"]

app = FastAPI(
    title="poisson-maxima",
    version=__version__,
    description="Exact and asymptotic distribution of the maximum of n i.i.d. Poisson variables.",
)


def _table_response(table: sweeps.SweepTable, fmt: str) -> Response:
    if fmt == "csv":
        return PlainTextResponse(sweeps.to_csv(table), media_type="text/csv")
    return Response(
        TableResponse.from_table(table).model_dump_json(),
        media_type="application/json",
    )


@app.get("/healthz")
def healthz() -> dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.post("/v1/dist")
def dist(req: DistRequest) -> Response:
    return _table_response(run_dist(req), req.format)


@app.post("/v1/prob")
def prob(req: ProbRequest) -> Response:
    return _table_response(run_prob(req), req.format)


@app.post("/v1/modes")
def modes(req: ModesRequest) -> Response:
    return _table_response(run_modes(req), req.format)


@app.post("/v1/point")
def point(req: PointRequest) -> Response:
    record, warns = run_point(req)
    if req.format == "csv":
        table = sweeps.SweepTable(sweeps.POINT_COLUMNS, (record,), warns)
        return PlainTextResponse(sweeps.to_csv(table), media_type="text/csv")
    payload = PointResponse(**{**record, "warnings": list(warns)})
    return Response(payload.model_dump_json(by_alias=True), media_type="application/json")
