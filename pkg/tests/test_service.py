import pytest
from fastapi.testclient import TestClient

from seatplan.service import app

client = TestClient(app)

TOY = {
    "people": [
        {"id": "ann", "name": "Ann"},
        {"id": "ben", "name": "Ben"},
        {"id": "cho", "name": "Cho"},
        {"id": "dev", "name": "Dev"},
    ],
    "relationships": [
        {"person_a": "ann", "person_b": "ben", "category": "keep_together"},
        {"person_a": "cho", "person_b": "dev", "category": "keep_together"},
        {"person_a": "ann", "person_b": "cho", "category": "better_apart"},
    ],
    "tables": [
        {"table_id": "alpha", "capacity": 2},
        {"table_id": "beta", "capacity": 2},
    ],
    "config": {"seed": 3},
}


class TestHealth:
    def test_ok(self):
        response = client.get("/api/health")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert "version" in body


class TestSolve:
    def test_toy_solves(self):
        response = client.post("/api/solve", json=TOY)
        assert response.status_code == 200
        body = response.json()
        assert len(body["assignments"]) == 4
        assert body["assignments"]["ann"] == body["assignments"]["ben"]
        assert {row["table_id"] for row in body["per_table"]} == {"alpha", "beta"}

    def test_infeasible_is_422(self):
        request = dict(TOY, tables=[{"table_id": "alpha", "capacity": 2}])
        response = client.post("/api/solve", json=request)
        assert response.status_code == 422

    def test_deterministic_bodies(self):
        first = client.post("/api/solve", json=TOY)
        second = client.post("/api/solve", json=TOY)
        assert first.content == second.content

    def test_malformed_is_400(self):
        response = client.post("/api/solve", json={"people": "nope"})
        assert response.status_code == 400
        assert any("people" in item["field"] for item in response.json()["detail"])

    def test_unknown_person_in_relationships_is_400(self):
        request = dict(
            TOY,
            relationships=[
                {"person_a": "ann", "person_b": "zz", "category": "keep_together"}
            ],
        )
        response = client.post("/api/solve", json=request)
        assert response.status_code == 400

    def test_matches_cli_plan_document(self, tmp_path):
        from seatplan.cli import main
        from seatplan.io import load_plan

        people = tmp_path / "people.csv"
        relationships = tmp_path / "relationships.csv"
        tables = tmp_path / "tables.csv"
        out = tmp_path / "plan.json"
        people.write_text("id,name\nann,Ann\nben,Ben\ncho,Cho\ndev,Dev\n")
        relationships.write_text(
            "person_a,person_b,category\n"
            "ann,ben,keep_together\n"
            "cho,dev,keep_together\n"
            "ann,cho,better_apart\n"
        )
        tables.write_text("table_id,capacity\nalpha,2\nbeta,2\n")
        assert (
            main(
                [
                    "solve",
                    "--people", str(people),
                    "--relationships", str(relationships),
                    "--tables", str(tables),
                    "--out", str(out),
                    "--seed", "3",
                    "--quiet",
                ]
            )
            == 0
        )
        response = client.post("/api/solve", json=TOY)
        assert response.json() == load_plan(out)


class TestValidate:
    def test_contradiction_triple(self):
        response = client.post(
            "/api/validate",
            json={
                "relationships": [
                    {"person_a": "a", "person_b": "b", "category": "keep_together"},
                    {"person_a": "a", "person_b": "c", "category": "keep_together"},
                    {"person_a": "b", "person_b": "c", "category": "keep_apart"},
                ]
            },
        )
        assert response.status_code == 200
        warnings = response.json()["warnings"]
        assert len(warnings) == 1
        assert set(warnings[0]["people"]) == {"a", "b", "c"}

    def test_empty_spec(self):
        response = client.post("/api/validate", json={"relationships": []})
        assert response.status_code == 200
        assert response.json() == {"warnings": []}

    def test_malformed_category_is_400(self):
        response = client.post(
            "/api/validate",
            json={
                "relationships": [
                    {"person_a": "a", "person_b": "b", "category": "frenemies"}
                ]
            },
        )
        assert response.status_code == 400


class TestMetrics:
    def metrics_request(self, assignments):
        return {
            "people": TOY["people"],
            "relationships": TOY["relationships"],
            "tables": TOY["tables"],
            "assignments": assignments,
            "config": TOY["config"],
        }

    def test_solver_output_round_trips(self):
        solved = client.post("/api/solve", json=TOY).json()
        response = client.post(
            "/api/metrics", json=self.metrics_request(solved["assignments"])
        )
        assert response.status_code == 200
        body = response.json()
        assert body["objective"] == solved["objective"]
        assert body["per_table"] == solved["per_table"]

    def test_swap_recomputes_objective(self):
        solved = client.post("/api/solve", json=TOY).json()
        assignments = dict(solved["assignments"])
        assignments["ben"], assignments["cho"] = assignments["cho"], assignments["ben"]
        response = client.post("/api/metrics", json=self.metrics_request(assignments))
        assert response.status_code == 200
        moved = response.json()

        # independent check: quotient-form evaluation of the edited plan
        import numpy as np

        from seatplan import Relationship, RelationshipSpec, encode_relationships

        spec = RelationshipSpec(
            tuple(
                Relationship(r["person_a"], r["person_b"], r["category"])
                for r in TOY["relationships"]
            )
        )
        people = [p["id"] for p in TOY["people"]]
        graph = encode_relationships(people, spec, 0.1)
        degrees = np.abs(graph.weights).sum(axis=1)
        expected = 0.0
        for table in {"alpha", "beta"}:
            members = [graph.index(p) for p in people if assignments[p] == table]
            if not members:
                continue
            volume = degrees[members].sum()
            internal = graph.weights[np.ix_(members, members)].sum()
            expected += (volume - internal) / volume
        assert moved["objective"] == pytest.approx(expected, abs=1e-9)
        assert moved["objective"] != solved["objective"]

    def test_over_capacity_is_400(self):
        assignments = {"ann": "alpha", "ben": "alpha", "cho": "alpha", "dev": "beta"}
        response = client.post("/api/metrics", json=self.metrics_request(assignments))
        assert response.status_code == 400
        assert "over capacity" in response.json()["detail"]

    def test_missing_person_is_400(self):
        assignments = {"ann": "alpha", "ben": "alpha"}
        response = client.post("/api/metrics", json=self.metrics_request(assignments))
        assert response.status_code == 400
