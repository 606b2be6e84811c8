"""Command-line front end: a thin client over the solver library.

``seatplan solve`` ingests the three CSV files, runs the pipeline, writes
the plan document, and prints a per-table report. ``seatplan serve``
starts the HTTP service.

Exit codes: 0 success, 1 infeasible or invalid input, 2 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .errors import InfeasibleError, InternalInvariantError, InvalidInputError
from .io import read_people_csv, read_relationships_csv, read_tables_csv, write_plan
from .pipeline import SeatingPlan, SolveConfig, brute_force_oracle, solve_constrained


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seatplan",
        description="Seat guests at capacity-bounded tables from pairwise affinities.",
    )
    parser.add_argument("--version", action="version", version=f"seatplan {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="solve a seating instance from CSV files")
    solve.add_argument("--people", required=True, help="CSV with header id,name")
    solve.add_argument(
        "--relationships", help="CSV with header person_a,person_b,category"
    )
    solve.add_argument("--tables", required=True, help="CSV with header table_id,capacity")
    solve.add_argument("--out", required=True, help="path for the plan document (JSON)")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--epsilon", type=float, default=None)
    solve.add_argument("--max-iter", type=int, default=100)
    solve.add_argument(
        "--neutral-weight",
        type=float,
        default=0.1,
        help="weight for unspecified pairs; 0 disables the fill",
    )
    solve.add_argument(
        "--oracle",
        action="store_true",
        help="also run the exhaustive oracle and report the comparison",
    )
    solve.add_argument("--quiet", action="store_true")

    serve = commands.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default=os.environ.get("SEATPLAN_HOST", "127.0.0.1"))
    serve.add_argument(
        "--port", type=int, default=int(os.environ.get("SEATPLAN_PORT", "8000"))
    )
    return parser


def _print_report(plan: SeatingPlan, out_path: str) -> None:
    print(f"{'table':<12}{'seated':>8}{'volume':>10}{'components':>12}")
    for report in plan.per_table:
        print(
            f"{report.table_id:<12}{report.seated:>8}{report.volume:>10g}{report.components:>12}"
        )
    if plan.objective is None:
        print("objective: skipped (no cluster carries signed volume)")
    else:
        print(f"objective: {plan.objective:.6f}")
    if plan.warnings:
        print("warnings:")
        for warning in plan.warnings:
            print(f"  - {warning}")
    print(f"plan written to {out_path}")


def run_solve(args: argparse.Namespace) -> int:
    people_rows = read_people_csv(args.people)
    people = [pid for pid, _ in people_rows]
    if args.relationships:
        relationships = read_relationships_csv(args.relationships)
    else:
        from .affinity import RelationshipSpec

        relationships = RelationshipSpec()
    tables = read_tables_csv(args.tables)
    config = SolveConfig(
        epsilon=args.epsilon,
        max_iter=args.max_iter,
        neutral_weight=args.neutral_weight,
        seed=args.seed,
    )
    plan = solve_constrained(people, relationships, tables, config)
    write_plan(plan, args.out)
    if not args.quiet:
        _print_report(plan, args.out)
    if args.oracle:
        from .affinity import encode_relationships

        graph = encode_relationships(people, relationships, args.neutral_weight)
        try:
            _, oracle_objective = brute_force_oracle(graph, tables)
        except InvalidInputError as exc:
            print(f"oracle skipped: {exc}")
        else:
            matches = plan.objective == oracle_objective
            print(
                f"oracle objective: {oracle_objective:.6f} "
                f"({'solver matches' if matches else 'solver differs'})"
            )
    return 0


def run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return run_solve(args)
        return run_serve(args)
    except (InvalidInputError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
