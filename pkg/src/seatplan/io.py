"""CSV ingestion and the plan document format.

File formats:
  people.csv         id,name            (header required)
  relationships.csv  person_a,person_b,category
  tables.csv         table_id,capacity

The plan document is a JSON object with sorted keys so that identical
solves serialize to identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .affinity import Relationship, RelationshipSpec
from .errors import InvalidInputError
from .matching import Table, TableSpec
from .pipeline import SeatingPlan


def _read_rows(path: str | Path, expected_header: list[str]) -> list[tuple[int, list[str]]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None
    rows = list(csv.reader(text.splitlines()))
    if not rows:
        raise InvalidInputError(f"{path}: file is empty")
    header = [cell.strip() for cell in rows[0]]
    if header != expected_header:
        raise InvalidInputError(
            f"{path}: line 1: expected header {','.join(expected_header)!r}, got {','.join(header)!r}"
        )
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(expected_header):
            raise InvalidInputError(
                f"{path}: line {lineno}: expected {len(expected_header)} fields, got {len(row)}"
            )
        out.append((lineno, [cell.strip() for cell in row]))
    return out


def read_people_csv(path: str | Path) -> list[tuple[str, str]]:
    """Load (id, name) pairs; ids must be unique and nonempty."""
    people: list[tuple[str, str]] = []
    seen: set[str] = set()
    for lineno, (pid, name) in _read_rows(path, ["id", "name"]):
        if not pid:
            raise InvalidInputError(f"{path}: line {lineno}: empty person id")
        if pid in seen:
            raise InvalidInputError(f"{path}: line {lineno}: duplicate person id {pid!r}")
        seen.add(pid)
        people.append((pid, name))
    if not people:
        raise InvalidInputError(f"{path}: no guests listed")
    return people


def read_relationships_csv(path: str | Path) -> RelationshipSpec:
    """Load pairwise constraints; category names are validated per line."""
    pairs = []
    for lineno, (a, b, category) in _read_rows(path, ["person_a", "person_b", "category"]):
        try:
            pairs.append(Relationship(a, b, category))
        except InvalidInputError as exc:
            raise InvalidInputError(f"{path}: line {lineno}: {exc}") from None
    try:
        return RelationshipSpec(tuple(pairs))
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None


def read_tables_csv(path: str | Path) -> TableSpec:
    """Load table ids and capacities."""
    tables = []
    for lineno, (table_id, capacity) in _read_rows(path, ["table_id", "capacity"]):
        try:
            seats = int(capacity)
        except ValueError:
            raise InvalidInputError(
                f"{path}: line {lineno}: capacity must be an integer, got {capacity!r}"
            ) from None
        if seats < 1:
            raise InvalidInputError(f"{path}: line {lineno}: capacity must be >= 1")
        tables.append(Table(table_id, seats))
    if not tables:
        raise InvalidInputError(f"{path}: no tables listed")
    try:
        return TableSpec(tuple(tables))
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None


def plan_document(plan: SeatingPlan) -> dict:
    """Plain-data form of a plan, shared by the plan file and the API."""
    cfg = plan.config
    return {
        "assignments": {person: table for person, table in sorted(plan.assignments.items())},
        "per_table": [
            {
                "table_id": report.table_id,
                "seated": int(report.seated),
                "volume": float(report.volume),
                "components": int(report.components),
            }
            for report in plan.per_table
        ],
        "objective": None if plan.objective is None else float(plan.objective),
        "warnings": list(plan.warnings),
        "seed": int(plan.seed),
        "residual_history": [float(r) for r in plan.residual_history],
        "config": {
            "epsilon": None if cfg.epsilon is None else float(cfg.epsilon),
            "max_iter": int(cfg.max_iter),
            "neutral_weight": float(cfg.neutral_weight),
            "seed": int(cfg.seed),
            "component_threshold": float(cfg.component_threshold),
        },
    }


def dump_plan(plan: SeatingPlan) -> str:
    """Canonical plan serialization: sorted keys, trailing newline."""
    return json.dumps(plan_document(plan), indent=2, sort_keys=True) + "\n"


def write_plan(plan: SeatingPlan, path: str | Path) -> None:
    Path(path).write_text(dump_plan(plan), encoding="utf-8")


def load_plan(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot load plan {path}: {exc}") from None
