"""Command-line interface.

Usage:
    catfield analyze --input table2.json
    catfield check --fixture TABLE1
    catfield mine --property TWO_AGENTS --max-sites 3
    catfield query --input table1.csv --target X --given "Y=1,Z=0"
    catfield fixtures --name TABLE1

Exit codes: 0 success, 1 input or flag error, 2 a MustHold property was
violated, 3 the instance exceeds the lattice limit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import __version__
from .errors import BoundsTooLarge, FieldError, InputFormatError, InstanceTooLarge
from .field import UNDEFINED, JointField
from .fixtures import FIXTURE_NAMES, builtin_fixture
from .infosets import coarse_conditional
from .io import dumps, field_to_json, format_rational, load_field, write_csv
from .mining import EnumerationBounds, MineConfig, PropertyId, check_theorems, mine
from .report import analyze_field, render_text

EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_TOO_LARGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="F", help="field file (CSV or JSON); '-' reads stdin")
    src.add_argument("--fixture", metavar="NAME", help=f"built-in field: {', '.join(FIXTURE_NAMES)}")
    p.add_argument("--format", choices=("csv", "json"), help="input format (default: by extension)")
    p.add_argument("--k", type=int, default=3, help="site count for the COINS fixture")
    p.add_argument("--prune", action="store_true", help="drop zero-marginal labels instead of failing")


def _add_output(p: argparse.ArgumentParser, default: str = "text") -> None:
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json")
    out.add_argument("--text", dest="output", action="store_const", const="text")
    p.set_defaults(output=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catfield", description="Exact conditional structure of categorical random fields.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.add_argument("--version", action="version", version=f"catfield {__version__}")
        return p

    p = command("analyze", "per-site positivity, reduction sets, SI/MI/ES families and neighbors")
    _add_source(p)
    p.add_argument("--site", nargs="+", action="extend", metavar="NAME", help="restrict to these sites")
    p.add_argument("--limit", type=int, help="lattice size limit")
    _add_output(p)

    p = command("check", "run every MustHold property over the field's lattice")
    _add_source(p)
    p.add_argument("--limit", type=int, help="lattice size limit")
    p.add_argument("--chain-cap", type=int, default=MineConfig.chain_cap)
    p.add_argument("--coarse-sites", type=int, default=MineConfig.coarse_sites)
    _add_output(p)

    p = command("mine", "search enumerated fields for a property's witnesses")
    p.add_argument("--property", required=True, choices=[x.value for x in PropertyId], metavar="P")
    p.add_argument("--max-sites", type=int)
    p.add_argument("--max-alphabet", type=int)
    p.add_argument("--grid", help="comma-separated nonnegative integer weights, e.g. 0,1,2")
    p.add_argument("--random", type=int, help="number of seeded random fields")
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=int, default=MineConfig.witness_cap, help="maximum witnesses")

    p = command("query", "one conditional distribution, possibly given coarse evidence")
    _add_source(p)
    p.add_argument("--target", required=True, metavar="X")
    p.add_argument("--given", default="", metavar="ASSIGN", help='e.g. "Y=1,Z=0"')
    p.add_argument("--given-coarse", default="", metavar="CONSTRAINTS", help='e.g. "Y∈{0,1}" or "Y in {0,1}"')
    _add_output(p)

    p = command("fixtures", "print a built-in field")
    p.add_argument("--name", required=True, metavar="NAME", help=", ".join(FIXTURE_NAMES))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _field(args) -> JointField:
    if args.fixture:
        return builtin_fixture(args.fixture, k=args.k)
    return load_field(args.input, args.format, prune_unreachable=args.prune)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


_COARSE = re.compile(r"^\s*([^∈\s]+)\s*(?:∈|\s+in\s+)\s*\{(.*)\}\s*$")


def parse_given(text: str) -> dict[str, str]:
    out = {}
    for part in _split_top(text):
        name, sep, label = part.partition("=")
        if not sep or not name.strip():
            raise InputFormatError(f"bad assignment {part!r}; expected NAME=LABEL")
        out[name.strip()] = label.strip()
    return out


def parse_coarse(text: str) -> dict[str, list[str]]:
    out = {}
    for part in _split_top(text):
        m = _COARSE.match(part)
        if not m:
            raise InputFormatError(f"bad constraint {part!r}; expected NAME∈{{L1,L2}} or NAME in {{L1,L2}}")
        out[m.group(1)] = [lab.strip() for lab in m.group(2).split(",") if lab.strip()]
    return out


def _cmd_analyze(args, out) -> int:
    field = _field(args)
    report = analyze_field(field, args.site, limit=args.limit)
    out.write(dumps(report) if args.output == "json" else render_text(report))
    return 0


def _cmd_check(args, out) -> int:
    field = _field(args)
    config = MineConfig(chain_cap=args.chain_cap, coarse_sites=args.coarse_sites)
    report = check_theorems(field, config, limit=args.limit)
    if args.output == "json":
        out.write(dumps(report.to_json()))
    else:
        for prop, o in report.outcomes.items():
            out.write(f"{'PASS' if o.passed else 'FAIL'} {prop.value} ({o.checks} checks)\n")
            for w in o.witnesses:
                out.write(f"  witness: {json.dumps(w.detail, ensure_ascii=False)}\n")
        out.write(f"positive: {str(report.positive).lower()}\n")
        out.write(f"{'all MustHold properties hold' if report.passed else 'MustHold violation found'}\n")
    return 0 if report.passed else EXIT_VIOLATION


def _cmd_mine(args, out) -> int:
    prop = PropertyId(args.property)
    from .mining import DEFAULT_BOUNDS

    base = DEFAULT_BOUNDS[prop]
    grid = base.weight_grid
    if args.grid is not None:
        try:
            grid = tuple(int(g) for g in args.grid.split(",") if g.strip())
        except ValueError:
            raise InputFormatError(f"bad --grid {args.grid!r}; expected comma-separated integers") from None
    bounds = EnumerationBounds(
        max_sites=args.max_sites if args.max_sites is not None else base.max_sites,
        max_alphabet=args.max_alphabet if args.max_alphabet is not None else base.max_alphabet,
        weight_grid=grid,
        random_count=args.random if args.random is not None else base.random_count,
        seed=args.seed if args.seed is not None else base.seed,
    )
    result = mine(prop, bounds, MineConfig(witness_cap=args.cap))
    for w in result.witnesses:
        out.write(json.dumps(w.to_json(), ensure_ascii=False, separators=(",", ":")) + "\n")
    print(f"{prop.value}: {len(result.witnesses)} witnesses in {result.fields_scanned} fields",
          file=sys.stderr)
    return 0


def _cmd_query(args, out) -> int:
    field = _field(args)
    given = parse_given(args.given)
    coarse = parse_coarse(args.given_coarse)
    dist = coarse_conditional(field, args.target, given, coarse)
    if args.output == "json":
        payload = {"target": args.target, "given": given, "given_coarse": coarse,
                   "distribution": "undefined" if dist is UNDEFINED else
                   [{"label": lab, "p": format_rational(p)} for lab, p in dist.items()]}
        out.write(dumps(payload))
    elif dist is UNDEFINED:
        out.write("undefined\n")
    else:
        name = field.site_names[field.site(args.target)]
        out.write(", ".join(f"P({name}={lab})={format_rational(p, json_mode=False)}"
                            for lab, p in dist.items()) + "\n")
    return 0


def _cmd_fixtures(args, out) -> int:
    field = builtin_fixture(args.name, k=args.k)
    out.write(dumps(field_to_json(field)) if args.format == "json" else write_csv(field))
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "check": _cmd_check,
    "mine": _cmd_mine,
    "query": _cmd_query,
    "fixtures": _cmd_fixtures,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    """Parse ``argv`` and execute; returns the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return _COMMANDS[args.command](args, out)
    except (InstanceTooLarge, BoundsTooLarge) as exc:
        print(f"catfield: error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except FieldError as exc:
        print(f"catfield: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
