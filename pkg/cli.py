"""Command-line entry point.

    python cli.py run --input scenario.json --out out
    python cli.py gen --input scenario.json
    python cli.py connect --input scenario.json
    python cli.py export --public            (or --dot)
    python cli.py --out run2 --input scenario.json run
    python cli.py metrics
    python cli.py attack --model passive --coalition alice,carol
    python cli.py acl eval --owner alice --viewer bob

``run`` replays a whole scenario. The other subcommands work step by step on
``<out>/graph.json``. Exit codes: 2 unreadable input, 3 invalid scenario,
4 failed operation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from access_control.engine import AccessControl
from adversary.attacks import active_attack, passive_collusion_attack, seeker_attack
from privacy_analysis.load import metrics_report
from secretaries.config import Settings
from secretaries.errors import (
    MalformedInput,
    ScenarioParseError,
    ScenarioRuntimeError,
    ScenarioValidationError,
    SecretaryGraphError,
    VersionMismatch,
)
from secretaries.graph import SecretaryGraph
from tools.dot_export import export_dot
from tools.outputs import attack_files
from tools.runner import ScenarioRunner, write_outputs
from tools.scenario import Scenario, load_scenario
from tools.serialization import (
    canonical_json,
    deserialize_graph,
    deserialize_policies,
    serialize_graph,
    serialize_view,
)

logger = logging.getLogger("cli")

LOG_FORMAT = "%(asctime)s - %(levelname)s - [%(name)s] %(message)s"


def _add_common(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """Global flags; subcommands repeat them without defaults so either position works."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=default(None), help="Override the scenario (or attack) seed.")
    parser.add_argument("--out", type=Path, default=default(Path("out")), help="Output directory (default: out).")
    parser.add_argument(
        "--input", type=Path, default=default(None), help="Scenario file, or graph file for graph commands."
    )
    parser.add_argument("--log-level", default=default("WARNING"), help="Logging level (default: WARNING).")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    parser = argparse.ArgumentParser(description="Secretary-based privacy-preserving social graphs.")
    _add_common(parser)
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("run", parents=[common], help="Replay a whole scenario and write every output.")
    commands.add_parser("gen", parents=[common], help="Set up the scenario's users and write graph.json.")
    connect = commands.add_parser("connect", parents=[common], help="Apply the scenario's connections to graph.json.")
    connect.add_argument("--graph", type=Path, help="Graph to extend (default: <out>/graph.json).")

    export = commands.add_parser("export", parents=[common], help="Write the public view as JSON or DOT.")
    kind = export.add_mutually_exclusive_group(required=True)
    kind.add_argument("--public", action="store_true", help="Write <out>/public.json.")
    kind.add_argument("--dot", action="store_true", help="Write <out>/public.dot.")

    commands.add_parser("metrics", parents=[common], help="Write analytic and empirical metrics.")

    attack = commands.add_parser("attack", parents=[common], help="Run one adversary against graph.json.")
    attack.add_argument("--model", choices=("seeker", "passive", "active"), required=True)
    attack.add_argument("--coalition", default="", help="Comma-separated coalition user ids (passive).")
    attack.add_argument("--attacker", help="Attacking user (active).")
    attack.add_argument("--target", help="Probed user (active).")
    attack.add_argument("--probes", type=int, default=0, help="Number of sybil probes (active).")
    attack.add_argument("--exact-limit", type=int, help="Largest snode count handled exactly.")

    acl = commands.add_parser("acl", help="Access-control queries.")
    acl_commands = acl.add_subparsers(dest="acl_command", required=True)
    evaluate = acl_commands.add_parser("eval", parents=[common], help="Permissions of a viewer on an owner's page.")
    evaluate.add_argument("--owner", required=True)
    evaluate.add_argument("--viewer", required=True)
    evaluate.add_argument("--policies", type=Path, help="Policies file (default: <out>/policies.json).")
    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _scenario(args: argparse.Namespace) -> Scenario:
    if args.input is None:
        raise ScenarioParseError("--input scenario file is required")
    scenario = load_scenario(args.input)
    if args.seed is not None:
        scenario = scenario.model_copy(update={"seed": args.seed})
    return scenario


def _read_graph(path: Path, settings: Settings) -> SecretaryGraph:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise MalformedInput(f"Cannot read graph {path}: {exc}") from exc
    return deserialize_graph(data, settings.public_tag)


def _graph_path(args: argparse.Namespace) -> Path:
    return args.input or args.out / "graph.json"


def _write(out: Path, name: str, content: bytes) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_bytes(content)
    return path


def _print(payload: object) -> None:
    sys.stdout.write(canonical_json(payload).decode("utf-8"))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_run(args: argparse.Namespace, settings: Settings) -> int:
    scenario = _scenario(args)
    state = ScenarioRunner(settings).run(scenario)
    written = write_outputs(state, args.out)
    _print({"outputs": sorted(written), "users": len(state.graph.users), "edges": len(state.graph.edges)})
    return 0


def cmd_gen(args: argparse.Namespace, settings: Settings) -> int:
    state = ScenarioRunner(settings).run(_scenario(args), phases=("setup",))
    _write(args.out, "graph.json", serialize_graph(state.graph))
    return 0


def cmd_connect(args: argparse.Namespace, settings: Settings) -> int:
    scenario = _scenario(args)
    graph = _read_graph(args.graph or args.out / "graph.json", settings)
    state = ScenarioRunner(settings).run(scenario, phases=("connections",), graph=graph)
    _write(args.out, "graph.json", serialize_graph(state.graph))
    return 0


def cmd_export(args: argparse.Namespace, settings: Settings) -> int:
    view = _read_graph(_graph_path(args), settings).export_public_view()
    if args.dot:
        _write(args.out, "public.dot", export_dot(view).encode("utf-8"))
    else:
        _write(args.out, "public.json", serialize_view(view))
    return 0


def cmd_metrics(args: argparse.Namespace, settings: Settings) -> int:
    report = metrics_report(_read_graph(_graph_path(args), settings))
    _write(args.out, "metrics.json", canonical_json(report))
    _print(report)
    return 0


def cmd_attack(args: argparse.Namespace, settings: Settings) -> int:
    graph = _read_graph(_graph_path(args), settings)
    seed = graph.seed if args.seed is None else args.seed
    if args.exact_limit is not None:
        settings = replace(settings, exact_limit=args.exact_limit)
    if args.model == "seeker":
        labels = sorted({label for user in graph.users.values() for label in user.labels})
        report = seeker_attack(graph.export_public_view(), labels, graph, seed)
    elif args.model == "passive":
        coalition = [member for member in args.coalition.split(",") if member]
        report = passive_collusion_attack(
            graph, coalition, seed, settings.exact_limit, enumeration_cap=settings.enumeration_cap
        )
    else:
        if not args.attacker or not args.target:
            raise ScenarioValidationError("active attacks need --attacker and --target")
        report = active_attack(graph, args.attacker, args.target, args.probes, seed, settings=settings)
    payload = report.to_dict()
    # Append after any reports already in the directory.
    _write(args.out, f"attack-{len(attack_files(args.out))}.json", canonical_json(payload))
    _print(payload)
    return 0


def cmd_acl_eval(args: argparse.Namespace, settings: Settings) -> int:
    graph = _read_graph(_graph_path(args), settings)
    access = AccessControl(graph, settings)
    policies_path = args.policies or args.out / "policies.json"
    if policies_path.exists():
        for policy in deserialize_policies(policies_path.read_bytes()):
            access.install(policy)
    else:
        logger.warning("no policies file at %s; using defaults", policies_path)
    _print(
        {
            "owner": args.owner,
            "viewer": args.viewer,
            "permissions": sorted(permission.value for permission in access.evaluate(args.owner, args.viewer)),
            "members": sorted(access.members(args.owner, args.viewer)),
        }
    )
    return 0


COMMANDS = {
    "run": cmd_run,
    "gen": cmd_gen,
    "connect": cmd_connect,
    "export": cmd_export,
    "metrics": cmd_metrics,
    "attack": cmd_attack,
    "acl": cmd_acl_eval,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT)
    settings = Settings.from_env()
    try:
        return COMMANDS[args.command](args, settings)
    except (ScenarioParseError, MalformedInput, VersionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScenarioValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ScenarioRuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except SecretaryGraphError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
