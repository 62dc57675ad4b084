"""Command-line interface: ``gentlequiver <command> ...``.

File arguments are paths, ``-`` for standard input, or ``fixture:NAME``.
Exit codes: 0 success or positive verdict, 1 negative verdict, 2 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import __version__
from .ag_invariant import CONVENTIONS, orbits, phi
from .bundled import FIXTURE_NAMES, UnknownFixtureError, fixture, fixture_text
from .canonical import digest
from .classification import classify, derived_equivalent
from .hochschild import hh_dims
from .io import load, parse, serialize
from .linalg import determinant, smith_normal_form
from .mutation import comutate, mutate, reduce_to_A_branched
from .normal_forms import NormalFormSpec, SpecError, make_normal_form
from .quiver import QuiverError, cartan_matrix, validate_gentle

SCHEMA_VERSION = 1
EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class CommandError(Exception):
    pass


def schema() -> dict:
    text = (resources.files("gentlequiver") / "schema" / "report.schema.json").read_text("utf-8")
    return json.loads(text)


def read_quiver(arg: str):
    if arg.startswith("fixture:"):
        return fixture(arg[len("fixture:"):])
    if arg == "-":
        return parse(sys.stdin.read(), source="<stdin>")
    try:
        return load(arg)
    except FileNotFoundError:
        raise CommandError(f"no such file: {arg}") from None


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _good(text):
    return _color(text, "32")


def _bad(text):
    return _color(text, "31")


class Output:
    """Collects a command's result and renders it as text or JSON."""

    def __init__(self, command: str, as_json: bool):
        self.command = command
        self.as_json = as_json
        self.inputs: list[dict] = []
        self.lines: list[str] = []

    def input(self, A):
        self.inputs.append({"name": A.name, "digest": digest(A)})

    def text(self, line: str = ""):
        self.lines.append(line)

    def emit(self, result, evidence=None):
        if self.as_json:
            doc = {"schema_version": SCHEMA_VERSION, "command": self.command,
                   "inputs": self.inputs, "result": result}
            if evidence is not None:
                doc["evidence"] = evidence
            sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        else:
            sys.stdout.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _matrix_lines(order, rows):
    width = max([len(str(x)) for r in rows for x in r] + [1])
    head = max([len(v) for v in order] + [1])
    return [f"{v:>{head}}  " + " ".join(f"{x:>{width}}" for x in r) for v, r in zip(order, rows)]


# -- commands --------------------------------------------------------------------------


def cmd_validate(args, out: Output) -> int:
    A = read_quiver(args.file)
    out.input(A)
    report = validate_gentle(A)
    viol = [{"rule": v.rule, "witness": list(v.witness), "detail": v.detail}
            for v in report.violations]
    if report.is_gentle:
        out.text(_good("gentle"))
    else:
        out.text(_bad("not gentle"))
        out.lines += [f"  {v['rule']}: {v['detail']}" for v in viol]
    if report.multiple_arrows:
        out.text("note: parallel arrows " + ", ".join("/".join(p) for p in report.multiple_arrows))
    out.emit({"gentle": report.is_gentle, "violations": viol,
              "multiple_arrows": [list(p) for p in report.multiple_arrows]})
    return EXIT_OK if report.is_gentle else EXIT_NEGATIVE


def cmd_classify(args, out: Output) -> int:
    A = read_quiver(args.file)
    out.input(A)
    r = classify(A, args.m)
    data = r.to_json()
    mc = data["m_candidates"]
    out.text(f"name:               {A.name}")
    out.text(f"gentle:             {r.gentle}")
    out.text(f"connected:          {r.connected}")
    out.text(f"finite dimensional: {r.finite_dimensional}")
    out.text(f"euler char:         {r.chi}")
    out.text("cycles:             " + (", ".join(
        f"{n}{' (full relations)' if f else ''}" for n, f in r.cycles) or "none"))
    out.text("branched for m:     " + (mc if isinstance(mc, str) else
                                      (", ".join(map(str, mc)) or _bad("none"))))
    out.text(f"A-branched:         {r.a_branched}")
    if r.invariant_pair:
        out.text(f"invariant pair:     ({r.invariant_pair.r}, {r.invariant_pair.s})")
    out.emit(data)
    return EXIT_OK if r.branched else EXIT_NEGATIVE


def cmd_phi(args, out: Output) -> int:
    A = read_quiver(args.file)
    out.input(A)
    value = phi(A, convention=args.thread_convention)
    out.text(value.formal_sum())
    orbit_data = []
    if args.orbits:
        for o in orbits(A, convention=args.thread_convention):
            hs = " ".join(t.label() for t in o.permitted)
            ps = " ".join(t.label() for t in o.forbidden)
            out.text(f"  {o.pair}: H = {hs} | P = {ps}")
            orbit_data.append({"pair": list(o.pair),
                               "permitted": [t.label() for t in o.permitted],
                               "forbidden": [t.label() for t in o.forbidden]})
    result = {"formal_sum": value.formal_sum(), "pairs": value.to_json(),
              "convention": args.thread_convention}
    if args.orbits:
        result["orbits"] = orbit_data
    out.emit(result)
    return EXIT_OK


def cmd_hh(args, out: Output) -> int:
    A = read_quiver(args.file)
    out.input(A)
    if args.max_degree < 0:
        raise CommandError("--max-degree must be nonnegative")
    rep = hh_dims(A, args.max_degree, args.char)
    out.text(f"characteristic {rep.characteristic}")
    for n, d in enumerate(rep.dims):
        out.text(f"HH^{n} = {d}")
    out.emit({"characteristic": rep.characteristic, "dims": list(rep.dims),
              "ranks": list(rep.ranks), "cochain_dims": list(rep.cochain_dims)})
    return EXIT_OK


def cmd_cartan(args, out: Output) -> int:
    A = read_quiver(args.file)
    out.input(A)
    C = cartan_matrix(A)
    rows = C.as_lists()
    det = determinant(rows)
    out.lines += _matrix_lines(C.order, rows)
    out.text(f"det = {det}")
    result = {"order": list(C.order), "entries": rows, "det": det}
    if args.snf:
        snf = smith_normal_form(rows)
        out.text("smith normal form: " + " ".join(map(str, snf)))
        result["snf"] = snf
    out.emit(result)
    return EXIT_OK


def cmd_mutate(args, out: Output) -> int:
    A = read_quiver(args.file)
    out.input(A)
    B, step = (comutate if args.co else mutate)(A, args.vertex)
    out.lines += serialize(B).rstrip("\n").split("\n")
    out.emit({"quiver": serialize(B), "step": step.to_json()})
    return EXIT_OK


def cmd_reduce(args, out: Output) -> int:
    A = read_quiver(args.file)
    out.input(A)
    res = reduce_to_A_branched(A, args.m, budget=args.budget)
    status = _good("A-branched") if res.complete else _bad("budget exhausted")
    out.text(f"# {status} after {len(res.log.steps)} steps "
             f"({res.expanded} quivers expanded, {res.off_cycle_remaining} off-cycle relations left)")
    for s in res.log.steps:
        out.text(f"# {s.kind} {s.vertex}")
    out.lines += serialize(res.quiver).rstrip("\n").split("\n")
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.write(res.log.dumps() + "\n")
    out.emit({"complete": res.complete, "quiver": serialize(res.quiver),
              "off_cycle_remaining": res.off_cycle_remaining, "expanded": res.expanded,
              "log": res.log.to_json(), "replay_verified": res.log.verify()})
    return EXIT_OK if res.complete else EXIT_NEGATIVE


def cmd_equivalent(args, out: Output) -> int:
    A, B = read_quiver(args.first), read_quiver(args.second)
    out.input(A)
    out.input(B)
    v = derived_equivalent(A, B, args.m, args.char)
    ev = v.evidence
    out.text(_good("equivalent") if v.equivalent else _bad("inequivalent"))
    pa, pb = ev["invariant_pairs"]
    out.text(f"  invariant pairs: ({pa[0]},{pa[1]}) {'=' if pa == pb else '!='} ({pb[0]},{pb[1]})")
    out.text(f"  phi:             {ev['phi'][0]} {'=' if ev['phi_equal'] else '!='} {ev['phi'][1]}")
    out.text(f"  HH dims:         {'equal' if ev['hh_equal'] else 'different'} "
             f"(degrees 0..{len(ev['hh_dims'][0]) - 1}, characteristic {ev['hh_characteristic']})")
    out.emit({"equivalent": v.equivalent}, ev)
    return EXIT_OK if v.equivalent else EXIT_NEGATIVE


def cmd_normal_form(args, out: Output) -> int:
    A = make_normal_form(NormalFormSpec(args.m, args.r, args.s))
    out.input(A)
    out.lines += serialize(A).rstrip("\n").split("\n")
    out.emit({"quiver": serialize(A)})
    return EXIT_OK


def cmd_fixture(args, out: Output) -> int:
    if args.list or args.name is None:
        out.lines += list(FIXTURE_NAMES)
        out.emit({"names": list(FIXTURE_NAMES)})
        return EXIT_OK
    A = fixture(args.name)
    out.input(A)
    out.lines += fixture_text(args.name).rstrip("\n").split("\n")
    out.emit({"quiver": serialize(A)})
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gentlequiver",
                                description="Invariants and derived equivalence of gentle bound quivers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, fn, help_text):
        c = sub.add_parser(name, help=help_text, description=help_text)
        c.add_argument("--json", action="store_true", help="machine-readable output")
        c.set_defaults(func=fn)
        return c

    FILE = "quiver file, '-' for stdin, or fixture:NAME"
    c = command("validate", cmd_validate, "check the gentle conditions")
    c.add_argument("file", help=FILE)
    c = command("classify", cmd_classify, "branched / A-branched classification")
    c.add_argument("file", help=FILE)
    c.add_argument("--m", type=int)
    c = command("phi", cmd_phi, "the thread invariant as a formal sum")
    c.add_argument("file", help=FILE)
    c.add_argument("--thread-convention", choices=CONVENTIONS, default="paper")
    c.add_argument("--orbits", action="store_true", help="list the thread orbits")
    c = command("hh", cmd_hh, "Hochschild cohomology dimensions")
    c.add_argument("file", help=FILE)
    c.add_argument("--max-degree", type=int, required=True)
    c.add_argument("--char", type=int, default=0, help="0 or a prime")
    c = command("cartan", cmd_cartan, "Cartan matrix and determinant")
    c.add_argument("file", help=FILE)
    c.add_argument("--snf", action="store_true", help="also print the Smith normal form")
    c = command("mutate", cmd_mutate, "mutate at a vertex (tilt, or cotilt with --co)")
    c.add_argument("file", help=FILE)
    c.add_argument("--vertex", required=True)
    c.add_argument("--co", action="store_true")
    c = command("reduce", cmd_reduce, "mutate until every relation lies on a cycle")
    c.add_argument("file", help=FILE)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--budget", type=int, default=20_000)
    c.add_argument("--log", help="write the mutation log as JSON to this path")
    c = command("equivalent", cmd_equivalent, "decide derived equivalence")
    c.add_argument("first", help=FILE)
    c.add_argument("second", help=FILE)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--char", type=int, default=0, help="field for the Hochschild cross-check")
    c = command("normal-form", cmd_normal_form, "print the normal form N_{r,s}")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c = command("fixture", cmd_fixture, "print a bundled example quiver")
    c.add_argument("name", nargs="?", choices=FIXTURE_NAMES)
    c.add_argument("--list", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.command, args.json)
    try:
        return args.func(args, out)
    except (CommandError, QuiverError, SpecError, UnknownFixtureError, OSError,
            ValueError) as e:
        msg = e.args[0] if isinstance(e, UnknownFixtureError) else str(e)
        sys.stderr.write(f"gentlequiver {args.command}: error: {msg}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
