"""Command-line front end: JSON descriptors in, JSON reports out.

Exit codes: 0 success, 1 parse/validation failure, 2 internal invariant
violation. Output is canonical (sorted keys, fixed separators) so identical
inputs give byte-identical results.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .basis import enumerate_basis, holomorphy_check
from .errors import InvariantViolation, ParseError, TowerDiffError
from .galois import action_matrix, cyclic_decomposition, nilpotency_check
from .standard_form import as_weak_standard_form, kummer_standard_form
from .tower import StepSpec, analyze, genus, genus_stepwise, validate


def _emit(doc, pretty: bool) -> None:
    if pretty:
        text = json.dumps(doc, indent=2, sort_keys=True)
    else:
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    sys.stdout.write(text + "\n")


def _load(args):
    if args.input and args.input != "-":
        with open(args.input, "r", encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = sys.stdin.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return jsonio.descriptor_from_json(doc)


def cmd_validate(args) -> int:
    d = _load(args)
    report = validate(d, args.seed)
    _emit(jsonio.validation_to_json(report), args.pretty)
    return 0 if report.passed else 1


def cmd_analyze(args) -> int:
    d = _load(args)
    profile = analyze(d, args.seed, check=not args.assume_uniform)
    _emit(jsonio.profile_to_json(profile), args.pretty)
    return 0


def cmd_genus(args) -> int:
    d = _load(args)
    if args.assume_uniform:
        g = genus(d, args.seed, analyze(d, args.seed, check=False))
    else:
        g = genus(d, args.seed)
    _emit({"genus": g, "stepwise": genus_stepwise(d, args.seed)}, args.pretty)
    return 0


def cmd_basis(args) -> int:
    d = _load(args)
    profile = analyze(d, args.seed, check=not args.assume_uniform)
    basis = enumerate_basis(d, args.seed, profile)
    doc = jsonio.basis_to_json(basis, pretty=args.pretty)
    if args.check:
        for rec, b in zip(doc, basis):
            ok = holomorphy_check(d, b, args.seed, profile)
            rec["check"] = ok
            if not ok:
                _emit(doc, args.pretty)
                raise InvariantViolation(f"emitted element {b.pretty()} fails the oracle")
    _emit(doc, args.pretty)
    return 0


def cmd_decompose(args) -> int:
    d = _load(args)
    report = cyclic_decomposition(d, args.seed)
    doc = jsonio.decomposition_to_json(report)
    doc["nilpotency"] = nilpotency_check(d)
    _emit(doc, args.pretty)
    return 0


def cmd_standardform(args) -> int:
    d = _load(args)
    step = d.steps[0]
    c = step.c.constant_part()
    if step.c.level != 0:
        raise ParseError("standardform expects a step defined over the base field")
    if step.kind == "kummer":
        out, chain = kummer_standard_form(c, step.n, args.seed)
        normalized = StepSpec("kummer", out, step.n)
    else:
        out, chain = as_weak_standard_form(c, seed=args.seed)
        normalized = StepSpec("artin_schreier", out)
    _emit(
        {
            "step": jsonio.step_to_json(normalized),
            "chain": jsonio.chain_to_json(chain),
        },
        args.pretty,
    )
    return 0


def cmd_act(args) -> int:
    d = _load(args)
    try:
        h = [int(part) for part in args.element.split(",")]
    except ValueError:
        raise ParseError(f"--element expects comma-separated integers, got {args.element!r}")
    m = action_matrix(d, h, args.seed)
    _emit({"matrix": jsonio.matrix_to_json(m)}, args.pretty)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "genus": cmd_genus,
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "standardform": cmd_standardform,
    "act": cmd_act,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="towerdiff",
        description="Exact invariants of cyclic-step function field towers",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--input", default="-", help="descriptor file (default stdin)")
        cmd.add_argument("--pretty", action="store_true", help="indented, annotated output")
        cmd.add_argument("--seed", type=int, default=0, help="factorization seed")
        cmd.add_argument(
            "--assume-uniform",
            action="store_true",
            help="skip the validation pass before analysis",
        )
        if name == "basis":
            cmd.add_argument(
                "--check", action="store_true", help="run the holomorphy oracle"
            )
        if name == "act":
            cmd.add_argument(
                "--element",
                required=True,
                help="group element as comma-separated generator exponents",
            )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvariantViolation as exc:
        _emit({"error": exc.code, "detail": str(exc)}, getattr(args, "pretty", False))
        return 2
    except TowerDiffError as exc:
        _emit({"error": exc.code, "detail": str(exc)}, getattr(args, "pretty", False))
        return 1


if __name__ == "__main__":
    sys.exit(main())
