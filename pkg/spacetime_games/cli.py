"""Command-line interface: ``spacetime-games <command> FILE``.

Exit codes: 0 on success, 1 when a file fails validation or a library error
occurs (one JSON error line on stderr), 2 on usage errors.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .config import config
from .core import SpacetimeGame, check_consistency
from .document import (
    ExtensiveFormDocument,
    efg_from_document,
    game_from_document,
    load,
    parse_document,
    read_text,
)
from .dot_export import export_dot
from .errors import SpacetimeGameError
from .extensive import (
    ExtensiveFormGame,
    enumerate_linearizations,
    has_perfect_recall,
    is_spacetime_interpretable,
    linearize,
    strategic_form_efg,
    to_extensive,
    validate_efg,
)
from .fixtures import write_examples
from .histories import check_payoff_table, enumerate_complete_histories
from .solve import backward_induction, iterated_strict_dominance, maximin, pure_nash
from .strategic import NormalFormGame, reduced_strategic_form, strategic_form

logger = logging.getLogger(__name__)

Loaded = Union[SpacetimeGame, ExtensiveFormGame]


def _emit(line: str = "") -> None:
    print(line, file=sys.stdout)


def _format_profile(labels: Sequence[str]) -> str:
    return "(" + ",".join(f"[{label}]" if "," in label else label for label in labels) + ")"


def _format_value(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _require_game(target: Loaded, command: str) -> SpacetimeGame:
    if not isinstance(target, SpacetimeGame):
        raise SpacetimeGameError(f"'{command}' needs a spacetime game file, not an extensive form")
    return target


def _as_tree(target: Loaded, linearization: Optional[int] = None) -> ExtensiveFormGame:
    if isinstance(target, ExtensiveFormGame):
        return target
    if linearization is None:
        return to_extensive(target, linearize(target))
    orders = enumerate_linearizations(target)
    if not 0 <= linearization < len(orders):
        raise SpacetimeGameError(
            f"Linearization {linearization} is out of range; {len(orders)} enumerated"
        )
    return to_extensive(target, orders[linearization])


def _normal_form(target: Loaded, form: str) -> NormalFormGame:
    if isinstance(target, ExtensiveFormGame):
        return strategic_form_efg(target)
    return reduced_strategic_form(target) if form == "reduced" else strategic_form(target)


def _print_table(nf: NormalFormGame) -> None:
    header = list(nf.agents) + [f"u({a})" for a in nf.agents] + ["history"]
    _emit("\t".join(header))
    for labels in nf.profiles():
        values = [_format_value(v) for v in nf.payoff(labels)]
        _emit("\t".join([*labels, *values, nf.history_annotation.get(labels, "")]))


# Subcommands: each takes the parsed arguments and returns an exit code.


def run_validate(args: argparse.Namespace) -> int:
    doc = parse_document(read_text(args.file))
    if isinstance(doc, ExtensiveFormDocument):
        tree = efg_from_document(doc)
        report = validate_efg(tree)
        result = report.to_dict()
        if report.is_clean:
            result["perfect_recall"] = has_perfect_recall(tree)
        _emit(json.dumps(result))
        return 0 if report.is_clean else 1
    game = game_from_document(doc, check=False)
    consistency = check_consistency(game)
    table = check_payoff_table(game)
    clean = consistency.is_clean and table.is_clean
    _emit(
        json.dumps(
            {
                "status": "success" if clean else "error",
                "consistency": consistency.to_dict(),
                "payoffs": table.to_dict(),
            }
        )
    )
    return 0 if clean else 1


def run_dag(args: argparse.Namespace) -> int:
    game = _require_game(load(args.file), "dag")
    sys.stdout.write(export_dot("actual-dag" if args.actual else "dag", game))
    return 0


def run_histories(args: argparse.Namespace) -> int:
    game = _require_game(load(args.file), "histories")
    for history in enumerate_complete_histories(game):
        _emit(game.format_assignment(history))
    return 0


def run_strategic(args: argparse.Namespace) -> int:
    _print_table(_normal_form(load(args.file), "strategic"))
    return 0


def run_reduced(args: argparse.Namespace) -> int:
    _print_table(_normal_form(_require_game(load(args.file), "reduced"), "reduced"))
    return 0


def run_extensive(args: argparse.Namespace) -> int:
    tree = _as_tree(load(args.file), args.linearization)
    if args.format == "counts":
        _emit(f"nodes\t{len(tree.nodes)}")
        _emit(f"outcomes\t{len(tree.outcomes)}")
        _emit(f"information_sets\t{len(tree.information_sets)}")
    else:
        sys.stdout.write(export_dot("tree", tree))
    return 0


def _solve_nash(target: Loaded, args: argparse.Namespace) -> None:
    for profile in pure_nash(_normal_form(target, args.form)).profiles:
        _emit(_format_profile(profile))


def _solve_spe(target: Loaded, args: argparse.Namespace) -> None:
    solutions = backward_induction(_as_tree(target))
    for profile, value in zip(solutions.profiles, solutions.values):
        payoff = "(" + ",".join(_format_value(v) for v in value) + ")"
        _emit(f"{_format_profile(profile)}\t{payoff}")
    for node in solutions.ties:
        logger.warning("Tie at node %s", node)


def _solve_dominance(target: Loaded, args: argparse.Namespace) -> None:
    result = iterated_strict_dominance(_normal_form(target, args.form))
    for agent, kept in zip(result.agents, result.surviving):
        _emit("\t".join([agent, *kept]))


def _solve_maximin(target: Loaded, args: argparse.Namespace) -> None:
    nf = _normal_form(target, args.form)
    for agent in [args.agent] if args.agent else nf.agents:
        value, strategies = maximin(nf, agent)
        _emit("\t".join([agent, _format_value(value), *strategies]))


SOLVERS: Dict[str, Callable[[Loaded, argparse.Namespace], None]] = {
    "nash": _solve_nash,
    "spe": _solve_spe,
    "dominance": _solve_dominance,
    "maximin": _solve_maximin,
}


def run_solve(args: argparse.Namespace) -> int:
    SOLVERS[args.concept](load(args.file), args)
    return 0


def run_interpret(args: argparse.Namespace) -> int:
    verdict = is_spacetime_interpretable(_as_tree(load(args.file)), args.budget)
    _emit(str(verdict))
    if verdict.linearization is not None:
        _emit(f"linearization\t{verdict.linearization}")
    return 0


def run_examples(args: argparse.Namespace) -> int:
    for path in write_examples(args.output_dir):
        _emit(str(path))
    return 0


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _file_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", help="game (.game) or extensive-form (.efg) document")


def _add_dag(parser: argparse.ArgumentParser) -> None:
    _file_argument(parser)
    parser.add_argument(
        "--actual", action="store_true", help="render actual precedence instead of timelike"
    )


def _add_extensive(parser: argparse.ArgumentParser) -> None:
    _file_argument(parser)
    parser.add_argument(
        "--linearization",
        type=int,
        default=None,
        help="index into the enumerated linearizations (default: canonical order)",
    )
    parser.add_argument("--format", choices=("dot", "counts"), default="dot")


def _add_solve(parser: argparse.ArgumentParser) -> None:
    _file_argument(parser)
    parser.add_argument("--concept", choices=sorted(SOLVERS), required=True)
    parser.add_argument(
        "--form",
        choices=("strategic", "reduced"),
        default="strategic",
        help="normal form used by nash, dominance and maximin (default: %(default)s)",
    )
    parser.add_argument("--agent", default=None, help="agent for maximin (default: all)")


def _add_interpret(parser: argparse.ArgumentParser) -> None:
    _file_argument(parser)
    parser.add_argument(
        "--budget",
        type=_non_negative_int,
        default=None,
        help="linearizations to try (default: SPACETIME_INTERPRET_BUDGET)",
    )


def _add_examples(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output-dir", default=".", help="directory for the fixture files")


COMMANDS: Dict[
    str, Tuple[str, Callable[[argparse.ArgumentParser], None], Callable[[argparse.Namespace], int]]
] = {
    "validate": ("check consistency and payoff totality", _file_argument, run_validate),
    "dag": ("DOT of the transitively reduced precedence", _add_dag, run_dag),
    "histories": ("list complete histories", _file_argument, run_histories),
    "strategic": ("strategic form as TSV", _file_argument, run_strategic),
    "reduced": ("reduced strategic form as TSV", _file_argument, run_reduced),
    "extensive": ("extensive form as DOT or counts", _add_extensive, run_extensive),
    "solve": ("pure-strategy solution concepts", _add_solve, run_solve),
    "interpret": ("test spacetime interpretability", _add_interpret, run_interpret),
    "examples": ("write the bundled fixtures", _add_examples, run_examples),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spacetime-games",
        description="Spacetime games with perfect information.",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="logging level (default: SPACETIME_LOG_LEVEL)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (summary, add_arguments, handler) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=summary, description=summary)
        add_arguments(sub)
        sub.set_defaults(handler=handler)
    return parser


def _report_error(error: SpacetimeGameError) -> None:
    print(json.dumps(error.to_dict()), file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    logging.basicConfig(
        level=args.log_level or config.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config.validate()
        return args.handler(args)
    except SpacetimeGameError as exc:
        logger.debug("Command %s failed", args.command, exc_info=True)
        _report_error(exc)
        return 1
    except ValueError as exc:
        _report_error(SpacetimeGameError(str(exc)))
        return 1
    except Exception as exc:
        logger.error("Unexpected failure in %s", args.command, exc_info=True)
        _report_error(SpacetimeGameError(f"{type(exc).__name__}: {exc}"))
        return 1
