"""HTTP facade over the solver, for the browser client.

Endpoints:
  POST /api/solve     run the full pipeline on an inline instance
  POST /api/validate  contradiction warnings for a relationship set
  POST /api/metrics   re-score an explicit (possibly hand-edited) plan
  GET  /api/health    version + ok

The service is stateless; every request carries its whole instance. The
solve response body is exactly the plan document the CLI writes.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .affinity import (
    Relationship,
    RelationshipSpec,
    detect_contradictions,
    encode_relationships,
)
from .errors import InfeasibleError, InternalInvariantError, InvalidInputError
from .io import plan_document
from .matching import Table, TableSpec
from .pipeline import (
    SolveConfig,
    _cluster_terms,
    solve_constrained,
    table_metrics,
)


class PersonModel(BaseModel):
    id: str
    name: str = ""


class RelationshipModel(BaseModel):
    person_a: str
    person_b: str
    category: str


class TableModel(BaseModel):
    table_id: str
    capacity: int = Field(ge=1)


class ConfigModel(BaseModel):
    epsilon: float | None = None
    max_iter: int = 100
    neutral_weight: float = 0.1
    seed: int = 0
    component_threshold: float = 1.0


class SolveRequestModel(BaseModel):
    people: list[PersonModel]
    relationships: list[RelationshipModel] = []
    tables: list[TableModel]
    config: ConfigModel = ConfigModel()


class TableReportModel(BaseModel):
    table_id: str
    seated: int
    volume: float
    components: int


class SolveResponseModel(BaseModel):
    assignments: dict[str, str]
    per_table: list[TableReportModel]
    objective: float | None
    warnings: list[str]
    seed: int
    residual_history: list[float]
    config: dict


class ValidateRequestModel(BaseModel):
    relationships: list[RelationshipModel]


class ContradictionModel(BaseModel):
    people: list[str]
    description: str


class ValidateResponseModel(BaseModel):
    warnings: list[ContradictionModel]


class MetricsRequestModel(BaseModel):
    people: list[PersonModel]
    relationships: list[RelationshipModel] = []
    tables: list[TableModel]
    assignments: dict[str, str]
    config: ConfigModel = ConfigModel()


class MetricsResponseModel(BaseModel):
    per_table: list[TableReportModel]
    objective: float | None
    warnings: list[str]


app = FastAPI(title="seatplan", version=__version__)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(RequestValidationError)
async def malformed_request(request: Request, exc: RequestValidationError) -> JSONResponse:
    detail = [
        {"field": ".".join(str(part) for part in err["loc"]), "message": err["msg"]}
        for err in exc.errors()
    ]
    return JSONResponse(status_code=400, content={"detail": detail})


@app.exception_handler(InvalidInputError)
async def invalid_input(request: Request, exc: InvalidInputError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(InfeasibleError)
async def infeasible(request: Request, exc: InfeasibleError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(InternalInvariantError)
async def internal_invariant(request: Request, exc: InternalInvariantError) -> JSONResponse:
    return JSONResponse(status_code=500, content={"detail": str(exc)})


def _relationship_spec(models: list[RelationshipModel]) -> RelationshipSpec:
    return RelationshipSpec(
        tuple(Relationship(m.person_a, m.person_b, m.category) for m in models)
    )


def _table_spec(models: list[TableModel]) -> TableSpec:
    return TableSpec(tuple(Table(m.table_id, m.capacity) for m in models))


def _solve_config(model: ConfigModel) -> SolveConfig:
    return SolveConfig(
        epsilon=model.epsilon,
        max_iter=model.max_iter,
        neutral_weight=model.neutral_weight,
        seed=model.seed,
        component_threshold=model.component_threshold,
    )


@app.get("/api/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/api/solve", response_model=SolveResponseModel)
def solve(request: SolveRequestModel) -> dict:
    plan = solve_constrained(
        [p.id for p in request.people],
        _relationship_spec(request.relationships),
        _table_spec(request.tables),
        _solve_config(request.config),
    )
    return plan_document(plan)


@app.post("/api/validate", response_model=ValidateResponseModel)
def validate(request: ValidateRequestModel) -> dict:
    warnings = detect_contradictions(_relationship_spec(request.relationships))
    return {
        "warnings": [
            {"people": list(w.people), "description": w.description} for w in warnings
        ]
    }


@app.post("/api/metrics", response_model=MetricsResponseModel)
def metrics(request: MetricsRequestModel) -> dict:
    people = [p.id for p in request.people]
    spec = _relationship_spec(request.relationships)
    tables = _table_spec(request.tables)
    config = _solve_config(request.config)

    if set(request.assignments) != set(people):
        raise InvalidInputError("assignments must cover exactly the listed people")
    table_ids = tables.ids()
    index = {t: i for i, t in enumerate(table_ids)}
    capacities = tables.capacities()
    occupancy = np.zeros(tables.k, dtype=int)
    labels = np.zeros(len(people), dtype=int)
    for position, person in enumerate(people):
        table = request.assignments[person]
        if table not in index:
            raise InvalidInputError(f"unknown table id: {table!r}")
        labels[position] = index[table]
        occupancy[index[table]] += 1
    over = np.flatnonzero(occupancy > capacities)
    if over.size:
        raise InvalidInputError(
            f"table {table_ids[over[0]]!r} is over capacity "
            f"({occupancy[over[0]]} > {capacities[over[0]]})"
        )

    graph = encode_relationships(people, spec, config.neutral_weight)
    metric_graph = encode_relationships(people, spec, 0.0)
    reports = []
    for t, table_id in enumerate(table_ids):
        members = [people[i] for i in range(len(people)) if labels[i] == t]
        seated, volume, components = table_metrics(
            metric_graph, members, config.component_threshold
        )
        reports.append(
            {
                "table_id": table_id,
                "seated": seated,
                "volume": volume,
                "components": components,
            }
        )
    terms, empty, zero_volume = _cluster_terms(graph, labels, tables.k)
    warnings = [f"table {table_ids[c]} is empty; skipped in the objective" for c in empty]
    warnings += [
        f"table {table_ids[c]} has zero signed volume; skipped in the objective"
        for c in zero_volume
    ]
    return {
        "per_table": reports,
        "objective": float(sum(terms)) if terms else None,
        "warnings": warnings,
    }
