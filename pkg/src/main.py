#!/usr/bin/env python3

import argparse
import re
import sys
import time
from typing import Optional

from src import __version__
from src.errors import GameDistError, ParameterError, VerificationFailure
from src.game import Player, replay
from src.graph_dsl import parse_graph, render_graph
from src.graphs import ProductGraph
from src.involutive import BlockList, detect_involutive
from src.report import (
    RunReport,
    default_report_path,
    describe_graph,
    gdn_fields,
    save_reports,
    value_fields,
    verification_fields,
)
from src.reproduce import TABLES, run_table
from src.solver import Solver, game_distinguishing_number
from src.strategies import STRATEGIES, AdversaryMode, build_strategy, default_mode, verify_strategy
from src.symmetry import automorphisms, relatively_prime
from src.utils import Settings, configure_logging, load_settings


def parse_moves(text: str) -> list[tuple[int, int]]:
    """Moves written as "vertex:color" separated by spaces or commas."""
    moves = []
    for token in re.split(r"[\s,]+", text.strip()):
        if not token:
            continue
        try:
            vertex, color = token.split(":")
            moves.append((int(vertex), int(color)))
        except ValueError:
            raise ParameterError(f"Bad move {token!r}; expected vertex:color") from None
    return moves


def format_moves(moves: list[tuple[int, int]]) -> str:
    return " ".join(f"{v}:{c}" for v, c in moves)


def parse_blocklists(text: str, d: int) -> list[BlockList]:
    groups = re.findall(r"\(([^)]*)\)", text)
    if not groups:
        raise ParameterError(f"Bad block-list set {text!r}; expected e.g. (3,1),(1,3)")
    try:
        return [BlockList(tuple(int(x) for x in g.split(",")), d) for g in groups]
    except ValueError:
        raise ParameterError(f"Bad block-list set {text!r}") from None


def _player(name: str) -> Player:
    try:
        return Player.parse(name)
    except ParameterError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gamedist", description="The distinguishing game on graphs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=settings.log_level)
    parser.add_argument("--aut-cap", type=int, default=settings.aut_cap, help="largest vertex count for automorphism enumeration")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--report", nargs="?", const="", default=None,
        help="write a YAML report to this path (default directory from GAMEDIST_REPORT_DIR)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="winner of one game")
    solve.add_argument("graph")
    solve.add_argument("--colors", type=int, required=True)
    solve.add_argument("--first", type=_player, required=True)
    solve.add_argument("--budget-nodes", type=int, default=settings.node_budget)
    solve.add_argument("--moves", default="", help='start after these moves, e.g. "0:1 3:2"')
    solve.add_argument("--blocklists", help="Gentle must also reach one of these block-lists, e.g. (3,1),(1,3)")
    solve.add_argument("--naive", action="store_true", help="plain minimax without memoization or pruning")

    gdn = sub.add_parser("gdn", parents=[common], help="game distinguishing number")
    gdn.add_argument("graph")
    gdn.add_argument("--first", type=_player, required=True)
    gdn.add_argument("--cap", type=int, default=settings.color_cap)
    gdn.add_argument("--budget-nodes", type=int, default=settings.node_budget)
    gdn.add_argument("--check-monotone", action="store_true")

    aut = sub.add_parser("aut", parents=[common], help="automorphism group summary")
    aut.add_argument("graph")

    verify = sub.add_parser("verify", parents=[common], help="check that a named strategy wins")
    verify.add_argument("graph")
    verify.add_argument("strategy", choices=sorted(STRATEGIES))
    verify.add_argument("--colors", type=int, required=True)
    verify.add_argument("--first", type=_player, required=True)
    verify.add_argument("--mode", choices=["exhaustive", "sampled", "constrained"], default="exhaustive")
    verify.add_argument("--samples", type=int, default=settings.samples)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--budget-nodes", type=int, default=settings.exhaustive_cap)

    reproduce = sub.add_parser("reproduce", parents=[common], help="recompute a table of known values")
    reproduce.add_argument("table", choices=TABLES + ["all"])

    product = sub.add_parser("product", parents=[common], help="describe a product graph and its fibers")
    product.add_argument("graph")
    return parser


def cmd_solve(args, argv: list[str]) -> tuple[list[RunReport], bool]:
    g = parse_graph(args.graph)
    structure = None
    allowed = None
    if args.blocklists:
        structure = detect_involutive(g, args.aut_cap)
        if structure is None:
            raise ParameterError(f"{g} is not involutive; block-lists do not apply")
        allowed = parse_blocklists(args.blocklists, args.colors)
    state = replay(g, args.colors, args.first, parse_moves(args.moves))
    solver = Solver(
        g, args.colors, args.first,
        memoize=not args.naive,
        node_budget=args.budget_nodes,
        allowed_blocklists=allowed,
        structure=structure,
        aut_cap=args.aut_cap,
    )
    value = solver.value(state.coloring)
    print(f"{g} with {args.colors} colors, {args.first} first: {value.winner} wins")
    result = value_fields(value)
    if args.moves:
        result["moves"] = args.moves
    report = RunReport(
        argv, describe_graph(g),
        {"colors": args.colors, "first": args.first.value, "budget_nodes": args.budget_nodes},
        result, value.nodes, round(value.elapsed, 3),
    )
    return [report], True


def cmd_gdn(args, argv: list[str]) -> tuple[list[RunReport], bool]:
    g = parse_graph(args.graph)
    started = time.monotonic()
    result = game_distinguishing_number(g, args.first, args.cap, args.check_monotone, args.budget_nodes)
    line = f"{'D_G' if args.first is Player.GENTLE else 'D_R'}({g.name()}) = {result}"
    if result.certificate is not None:
        line += f" (involution {result.certificate})"
    elif result.certificate_kind:
        line += f" ({result.certificate_kind})"
    print(line)
    for note in result.notes:
        print(f"::error::{note}")
    report = RunReport(
        argv, describe_graph(g), {"first": args.first.value, "cap": args.cap},
        gdn_fields(result), result.nodes, round(time.monotonic() - started, 3),
    )
    return [report], not result.notes


def cmd_aut(args, argv: list[str]) -> tuple[list[RunReport], bool]:
    g = parse_graph(args.graph)
    started = time.monotonic()
    auts = automorphisms(g, args.aut_cap)
    involutions = auts.involutions()
    print(f"{g}: |Aut| = {auts.order}, {len(involutions)} involutions, "
          f"{'vertex-transitive' if auts.is_transitive() else 'not vertex-transitive'}")
    structure = detect_involutive(g, args.aut_cap)
    if structure is not None:
        print(f"involutive: bar = {structure.bar}")
    result = {
        "order": auts.order,
        "involutions": len(involutions),
        "transitive": auts.is_transitive(),
        "bar": list(structure.bar.image) if structure else None,
    }
    return [RunReport(argv, describe_graph(g), {}, result, 0, round(time.monotonic() - started, 3))], True


def cmd_verify(args, argv: list[str]) -> tuple[list[RunReport], bool]:
    g = parse_graph(args.graph)
    strategy = build_strategy(args.strategy, g, args.colors, args.first)
    if args.mode == "sampled":
        mode = AdversaryMode.sampled(args.samples, args.seed, strategy.opponent_predicate())
    elif args.mode == "constrained":
        mode = default_mode(strategy)
        if mode.kind != "constrained":
            raise ParameterError(f"{strategy.name} declares no opponent constraint")
    else:
        mode = AdversaryMode.exhaustive()
    outcome = verify_strategy(g, args.colors, args.first, strategy, mode, args.budget_nodes)
    print(f"{strategy}: {outcome.verdict} ({outcome.games} games, {outcome.nodes} nodes)")
    report = RunReport(
        argv, describe_graph(g),
        {"colors": args.colors, "first": args.first.value, "mode": args.mode, "seed": args.seed},
        verification_fields(outcome), outcome.nodes, round(outcome.elapsed, 3),
    )
    if not outcome.wins:
        for problem in outcome.violations:
            print(f"::error::{problem}")
        moves = format_moves(outcome.counterexample)
        print(f"counterexample: {moves}")
        print(f"::error::{strategy.name} lost after {moves}")
    return [report], outcome.wins


def cmd_reproduce(args, argv: list[str], settings: Settings) -> tuple[list[RunReport], bool]:
    checks = run_table(args.table, settings)
    print(f"::group::{args.table}")
    width = max(len(c.name) for c in checks)
    for check in checks:
        status = "ok" if check.passed else "FAIL"
        print(f"{check.name:<{width}}  {check.actual:<12}  {status}  {check.report.wall_time:.2f}s")
    print("::endgroup::")
    failed = [c for c in checks if not c.passed]
    for check in failed:
        print(f"::error::{check.name}: expected {check.expected}, got {check.actual}")
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return [c.report for c in checks], not failed


def cmd_product(args, argv: list[str]) -> tuple[list[RunReport], bool]:
    g = parse_graph(args.graph)
    print(f"::group::{g}")
    print(f"vertices {g.n}, edges {len(g.edges)}")
    result = {"vertices": g.n, "edges": len(g.edges), "render": render_graph(g)}
    if isinstance(g, ProductGraph):
        for axis, factor in enumerate(g.factors):
            fibers = g.fibers(axis)
            print(f"axis {axis}: {factor}, {len(fibers)} fibers of {len(fibers[0])} vertices")
        if len(g.factors) == 2:
            coprime = relatively_prime(*g.factors, cap=args.aut_cap)
            print(f"relatively prime: {'yes' if coprime else 'no'}")
            result["relatively_prime"] = coprime
        result["factors"] = [f.name() for f in g.factors]
    print(render_graph(g))
    print("::endgroup::")
    return [RunReport(argv, describe_graph(g), {}, result)], True


def run(argv: Optional[list[str]] = None, settings: Optional[Settings] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    settings = settings or load_settings()
    args = build_parser(settings).parse_args(argv)
    configure_logging(args.log_level)
    try:
        if args.command == "reproduce":
            reports, ok = cmd_reproduce(args, argv, settings)
        else:
            handler = {
                "solve": cmd_solve,
                "gdn": cmd_gdn,
                "aut": cmd_aut,
                "verify": cmd_verify,
                "product": cmd_product,
            }[args.command]
            reports, ok = handler(args, argv)
    except GameDistError as e:
        print(f"::error::{e}")
        return e.exit_code
    if args.command == "reproduce":
        path = args.report or default_report_path(settings.report_dir, f"reproduce-{args.table}")
    elif args.report is not None:
        graph = parse_graph(args.graph)
        path = args.report or default_report_path(settings.report_dir, args.command, graph)
    else:
        path = None
    if path is not None:
        save_reports(reports, path)
        print(f"report: {path}")
    if not ok:
        return VerificationFailure.exit_code
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
