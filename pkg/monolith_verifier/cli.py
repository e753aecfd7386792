"""Command line entry point for monolith-verifier.

    monolith-verifier <command> <group-spec> [args] [flags]

Commands: analyze, witness, axioms, eval, bounds, lattice, sample and
`construct replay <recipe.json>`. Reports are JSON on stdout (sorted keys);
diagnostics go to stderr through absl logging.

Exit codes: 0 when every check passes, 1 when a bound check fails or a
disagreement is found, 2 for input and usage errors.
"""
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from absl import app
from absl import flags
from absl import logging

from .checkers import FormulaChecker, StructureChecker, WitnessChecker
from .config import DEFAULT_LIMITS, Limits
from .errors import BoundViolation, UnknownElement, VerifierError
from .group import content_hash, element_index
from .lattice import analysis_for
from .pipeline import VarietyPipeline
from .utils.group_io import REPLAY_PREFIX, group_to_dict, resolve_group_spec

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2

FLAGS = flags.FLAGS
flags.DEFINE_bool("pretty", False, "Print a human-readable summary instead of JSON.")
flags.DEFINE_integer("max_order", None, "Largest group order admitted while sampling V(G).")
flags.DEFINE_integer("power", None, "Largest direct power of G used while sampling.")
flags.DEFINE_integer("complexity_cap", None, "Overrides the m^k cap of the SI sentence and of composed descent terms.")
flags.DEFINE_integer("max_disjuncts", None, "Largest disjunction the formula builders write out.")
flags.DEFINE_integer("max_members", None, "Largest number of sampled members.")
flags.DEFINE_integer("max_generators", None, "Largest generator tuple used for subgroups of powers.")
flags.DEFINE_string("free", None, "eval: report the set defined in this variable.")
flags.DEFINE_multi_string("bind", [], "eval: VAR=ELEMENT binding; repeatable.")
flags.DEFINE_integer("workers", 1, "Threads for per-member analysis.")
flags.DEFINE_enum("strategy", "auto", ["auto", "recursive", "array"], "eval: evaluation strategy.")


@dataclass
class CliOptions:
    limits: Limits = DEFAULT_LIMITS
    pretty: bool = False
    free: Optional[str] = None
    bindings: Dict[str, str] = field(default_factory=dict)
    workers: int = 1
    strategy: str = "auto"


CommandResult = Tuple[Dict[str, Any], bool]


def _parse_bindings(pairs: List[str]) -> Dict[str, str]:
    bindings = {}
    for pair in pairs:
        var, sep, value = pair.partition("=")
        if not sep or not var.strip():
            raise UnknownElement(f"binding {pair!r} is not of the form VAR=ELEMENT")
        bindings[var.strip()] = value.strip()
    return bindings


# --- commands -----------------------------------------------------------------

def cmd_analyze(spec: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(spec, options.limits)
    return StructureChecker(limits=options.limits).invoke(G).to_dict(), True


def cmd_witness(spec: str, element: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(spec, options.limits)
    report = WitnessChecker(limits=options.limits).invoke(G, element_index(G, element))
    return report.to_dict(), report.passed


def cmd_axioms(spec: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(spec, options.limits)
    report = VarietyPipeline(options.limits, options.workers).check_axioms(G, base_spec=spec)
    return report.to_dict(), report.passed


def cmd_bounds(spec: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(spec, options.limits)
    report = VarietyPipeline(options.limits, options.workers).check_bounds(G, base_spec=spec)
    return report.to_dict(), report.passed


def cmd_eval(spec: str, formula_text: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(spec, options.limits)
    checker = FormulaChecker(limits=options.limits, strategy=options.strategy)
    return checker.invoke(G, formula_text, options.free, options.bindings).to_dict(), True


def cmd_lattice(spec: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(spec, options.limits)
    record = analysis_for(G, options.limits)
    lattice = record.normal_subgroups
    position = {N.mask: i for i, N in enumerate(lattice)}
    payload = {
        "group": G.label,
        "order": G.order,
        "normal_subgroups": [{"index": i, "size": len(N), "elements": N.names()}
                             for i, N in enumerate(lattice)],
        "atoms": [position[A.mask] for A in record.atoms],
        "monolith": position[record.monolith.mask] if record.monolith is not None else None,
        "covering_pairs": [[position[K.mask], position[H.mask]] for K, H in record.covering_pairs],
    }
    return payload, True


def cmd_sample(spec: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(spec, options.limits)
    pipeline = VarietyPipeline(options.limits, options.workers)
    members = pipeline.sample(G, base_spec=spec)
    summaries = pipeline.summaries(members)
    return {"generator": G.label, "members": [s.to_dict() for s in summaries]}, True


def cmd_construct_replay(path: str, options: CliOptions) -> CommandResult:
    G = resolve_group_spec(REPLAY_PREFIX + path, options.limits)
    return {"source": path, "hash": content_hash(G), "group": group_to_dict(G)}, True


_COMMANDS: Dict[str, Tuple[int, Callable[..., CommandResult]]] = {
    "analyze": (1, cmd_analyze),
    "witness": (2, cmd_witness),
    "axioms": (1, cmd_axioms),
    "eval": (2, cmd_eval),
    "bounds": (1, cmd_bounds),
    "lattice": (1, cmd_lattice),
    "sample": (1, cmd_sample),
}


def run_command(args: List[str], options: CliOptions) -> Tuple[int, Dict[str, Any]]:
    """
    Dispatches one command line (without program name or flags).

    Returns:
        (exit code, JSON-ready payload). Library errors become an
        {"error", "type"} payload instead of propagating.
    """
    if not args:
        raise app.UsageError("missing command", exitcode=EXIT_INPUT_ERROR)
    command, rest = args[0], args[1:]
    if command == "construct":
        if len(rest) != 2 or rest[0] != "replay":
            raise app.UsageError("usage: construct replay <recipe.json>", exitcode=EXIT_INPUT_ERROR)
        handler, rest = cmd_construct_replay, rest[1:]
    elif command in _COMMANDS:
        arity, handler = _COMMANDS[command]
        if len(rest) != arity:
            raise app.UsageError(f"{command} takes {arity} argument(s), got {len(rest)}",
                                 exitcode=EXIT_INPUT_ERROR)
    else:
        raise app.UsageError(f"unknown command {command!r}", exitcode=EXIT_INPUT_ERROR)

    logging.info("cli - %s %s", command, " ".join(rest))
    try:
        payload, passed = handler(*rest, options)
    except BoundViolation as exc:
        logging.error("cli - %s", exc)
        return EXIT_CHECK_FAILED, exc.to_dict()
    except VerifierError as exc:
        logging.error("cli - %s: %s", type(exc).__name__, exc)
        return EXIT_INPUT_ERROR, exc.to_dict()
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), payload


# --- output -------------------------------------------------------------------

def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def render_pretty(payload: Any, indent: int = 0) -> str:
    """Indented `key: value` rendering of a report."""
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_pretty(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(payload, list):
        for i, item in enumerate(payload):
            if isinstance(item, (dict, list)) and not _is_flat(item):
                lines.append(f"{pad}- [{i}]")
                lines.append(render_pretty(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(payload)}")
    return "\n".join(lines)


def _is_flat(value: Any) -> bool:
    items = value.values() if isinstance(value, dict) else value
    return all(not isinstance(v, (dict, list)) for v in items)


def _scalar(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_scalar(v)}" for k, v in sorted(value.items())) + "}"
    if value is None:
        return "-"
    return str(value)


# --- absl entry point ---------------------------------------------------------

def options_from_flags() -> CliOptions:
    limits = DEFAULT_LIMITS.with_overrides(
        max_sample_order=FLAGS.max_order,
        max_power=FLAGS.power,
        complexity_cap=FLAGS.complexity_cap,
        max_disjuncts=FLAGS.max_disjuncts,
        max_members=FLAGS.max_members,
        max_generators=FLAGS.max_generators,
    )
    return CliOptions(
        limits=limits,
        pretty=FLAGS.pretty,
        free=FLAGS.free,
        bindings=_parse_bindings(FLAGS.bind),
        workers=FLAGS.workers,
        strategy=FLAGS.strategy,
    )


def main(argv: List[str]) -> int:
    args = list(argv[1:])
    if args and args[0] == "--":
        args = args[1:]
    try:
        options = options_from_flags()
    except VerifierError as exc:
        sys.stdout.write(to_json(exc.to_dict()) + "\n")
        return EXIT_INPUT_ERROR
    code, payload = run_command(args, options)
    text = render_pretty(payload) if options.pretty else to_json(payload)
    sys.stdout.write(text + "\n")
    return code


def normalize_argv(argv: List[str]) -> List[str]:
    """
    Moves flags ahead of a `--` so element names such as `-1` or `-i` stay
    positional, and accepts `--max-order` spellings for `--max_order`.
    """
    flag_args, positional = [], []
    rest = argv[1:]
    i = 0
    while i < len(rest):
        token = rest[i]
        if token == "--":
            positional.extend(rest[i + 1:])
            break
        if token.startswith("--"):
            name, eq, value = token[2:].partition("=")
            name = name.replace("-", "_")
            flag_args.append(f"--{name}{eq}{value}")
            if not eq and name in FLAGS and not FLAGS[name].boolean and i + 1 < len(rest):
                i += 1
                flag_args.append(rest[i])
        else:
            positional.append(token)
        i += 1
    return argv[:1] + flag_args + ["--"] + positional


def run():
    app.run(main, argv=normalize_argv(sys.argv))


if __name__ == "__main__":
    run()
