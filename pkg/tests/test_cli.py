import json

import pytest

from seatplan.cli import main
from seatplan.io import load_plan

PEOPLE = "id,name\nann,Ann\nben,Ben\ncho,Cho\ndev,Dev\n"
RELATIONSHIPS = (
    "person_a,person_b,category\n"
    "ann,ben,keep_together\n"
    "cho,dev,keep_together\n"
    "ann,cho,better_apart\n"
    "ben,dev,better_apart\n"
)
TABLES = "table_id,capacity\nalpha,2\nbeta,2\n"


@pytest.fixture
def instance(tmp_path):
    people = tmp_path / "people.csv"
    relationships = tmp_path / "relationships.csv"
    tables = tmp_path / "tables.csv"
    people.write_text(PEOPLE)
    relationships.write_text(RELATIONSHIPS)
    tables.write_text(TABLES)
    return people, relationships, tables, tmp_path / "plan.json"


def solve_args(instance, *extra):
    people, relationships, tables, out = instance
    return [
        "solve",
        "--people", str(people),
        "--relationships", str(relationships),
        "--tables", str(tables),
        "--out", str(out),
        *extra,
    ]


class TestSolveCommand:
    def test_toy_instance(self, instance, capsys):
        assert main(solve_args(instance)) == 0
        plan = load_plan(instance[3])
        assert len(plan["assignments"]) == 4
        assert plan["assignments"]["ann"] == plan["assignments"]["ben"]
        assert plan["assignments"]["cho"] == plan["assignments"]["dev"]
        out = capsys.readouterr().out
        assert "seated" in out and "volume" in out and "components" in out
        assert "alpha" in out and "beta" in out

    def test_oracle_comparison(self, instance, capsys):
        assert main(solve_args(instance, "--oracle", "--neutral-weight", "0")) == 0
        out = capsys.readouterr().out
        assert "solver matches" in out

    def test_malformed_category_names_line(self, instance, capsys):
        people, relationships, tables, out = instance
        relationships.write_text(
            "person_a,person_b,category\nann,ben,keep_together\ncho,dev,archenemies\n"
        )
        assert main(solve_args(instance)) == 1
        err = capsys.readouterr().err
        assert "line 3" in err

    def test_missing_people_header(self, instance, capsys):
        instance[0].write_text("name,id\nAnn,ann\n")
        assert main(solve_args(instance)) == 1
        assert "line 1" in capsys.readouterr().err

    def test_infeasible_capacities(self, instance, capsys):
        instance[2].write_text("table_id,capacity\nalpha,1\nbeta,1\n")
        assert main(solve_args(instance)) == 1
        err = capsys.readouterr().err
        assert "capacities sum to 2" in err

    def test_quiet_suppresses_report(self, instance, capsys):
        assert main(solve_args(instance, "--quiet")) == 0
        assert capsys.readouterr().out == ""

    def test_warnings_do_not_change_exit_code(self, instance, capsys):
        people, relationships, tables, out = instance
        relationships.write_text(
            "person_a,person_b,category\n"
            "ann,ben,keep_together\n"
            "ann,cho,keep_together\n"
            "ben,cho,keep_apart\n"
        )
        assert main(solve_args(instance)) == 0
        assert "warnings" in capsys.readouterr().out


class TestDeterminism:
    def test_same_seed_byte_identical(self, instance, tmp_path):
        first = tmp_path / "first.json"
        second = tmp_path / "second.json"
        people, relationships, tables, _ = instance
        base = [
            "solve",
            "--people", str(people),
            "--relationships", str(relationships),
            "--tables", str(tables),
            "--seed", "7",
            "--quiet",
        ]
        assert main(base + ["--out", str(first)]) == 0
        assert main(base + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()


class TestRoundTrip:
    def test_plan_revalidates_to_same_metrics(self, instance):
        from seatplan import (
            encode_relationships,
            signed_ncut_objective,
            table_metrics,
        )
        from seatplan.io import read_people_csv, read_relationships_csv, read_tables_csv

        assert main(solve_args(instance)) == 0
        plan = load_plan(instance[3])
        people = [pid for pid, _ in read_people_csv(instance[0])]
        relationships = read_relationships_csv(instance[1])
        graph = encode_relationships(people, relationships, plan["config"]["neutral_weight"])
        metric_graph = encode_relationships(people, relationships, 0.0)
        assert signed_ncut_objective(graph, plan["assignments"]) == pytest.approx(
            plan["objective"], abs=1e-12
        )
        for row in plan["per_table"]:
            members = [
                p for p, t in plan["assignments"].items() if t == row["table_id"]
            ]
            seated, volume, components = table_metrics(metric_graph, members)
            assert (seated, volume, components) == (
                row["seated"],
                row["volume"],
                row["components"],
            )
