"""Command-line front end.

Elements are given either as expressions in the generators (-e "x0^2*x1")
or as branch-pair files (-f diagram.txt, "-" for stdin); the two may be
mixed and order is preserved.  All numeric output is exact.  Exit codes:
0 success, 1 computation failure (including any "fail" verdict from the
verification suite), 2 usage errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

from . import verify as verify_mod
from .abelian import abelianize, finite_index_certificate, lattice_index
from .elements import (
    Element,
    MalformedDiagram,
    format_branch_pairs,
    invert,
    multiply,
    parse_branch_pairs,
    power,
    power_subgroup_generators,
    to_dot,
)
from .presentation import ParseError, element_of, normal_form, parse_expression
from .saturation import k_system, saturate
from .words import CapacityError, Dyadic, word_to_text


class UsageError(Exception):
    pass


class _ElementRef(argparse.Action):
    """Collect -e/-f occurrences into one ordered list."""

    def __call__(self, parser, namespace, values, option_string=None):
        refs = list(getattr(namespace, self.dest, None) or [])
        kind = "expr" if option_string in ("-e", "--expr") else "file"
        refs.append((kind, values))
        setattr(namespace, self.dest, refs)


def _add_element_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-e", "--expr", dest="elements", action=_ElementRef,
                     default=None, metavar="EXPR",
                     help="element as an expression in x0, x1, ...")
    sub.add_argument("-f", "--file", dest="elements", action=_ElementRef,
                     default=None, metavar="PATH",
                     help="element as a branch-pair file ('-' for stdin)")


def _resolve(ref: tuple[str, str]) -> Element:
    kind, value = ref
    if kind == "expr":
        return element_of(parse_expression(value))
    text = sys.stdin.read() if value == "-" else Path(value).read_text()
    return parse_branch_pairs(text)


def _elements(args) -> list[Element]:
    if not args.elements:
        raise UsageError("no element given; use -e EXPR or -f PATH")
    return [_resolve(ref) for ref in args.elements]


def _one_element(args) -> Element:
    els = _elements(args)
    if len(els) != 1:
        raise UsageError("exactly one element expected")
    return els[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thompsonf",
        description="Tree-diagram calculus and verification tools for "
                    "Thompson's group F.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="apply an element to a dyadic rational")
    _add_element_args(p)
    p.add_argument("point", help="dyadic rational in [0,1], e.g. 1/4 or 3/2^5")

    p = subs.add_parser("mul", help="product of elements, left to right")
    _add_element_args(p)

    p = subs.add_parser("inv", help="inverse of an element")
    _add_element_args(p)

    p = subs.add_parser("pow", help="integer power of an element")
    _add_element_args(p)
    p.add_argument("exponent", type=int)

    p = subs.add_parser("reduce", help="reduce a branch-pair diagram")
    _add_element_args(p)

    p = subs.add_parser("branches", help="print the reduced branch pairs")
    _add_element_args(p)

    p = subs.add_parser("normal-form", help="print the canonical word")
    _add_element_args(p)

    p = subs.add_parser("abelianize", help="endpoint slope logs (a, b)")
    _add_element_args(p)
    p.add_argument("--json", action="store_true")

    p = subs.add_parser("index", help="lattice index of a subgroup's image")
    _add_element_args(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--depth", type=int, default=14)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--json", action="store_true")

    p = subs.add_parser("saturate",
                        help="saturate the power relation system on a trie")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--full", action="store_true",
                   help="list class members, not just sizes")
    p.add_argument("--json", action="store_true")

    p = subs.add_parser("verify", help="run verification checks")
    p.add_argument("check", help="check id or 'all'")
    _add_element_args(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--junit", metavar="PATH", default=None)
    p.add_argument("--json", action="store_true")

    p = subs.add_parser("dot", help="emit the tree diagram in DOT format")
    _add_element_args(p)

    p = subs.add_parser("invariable-check",
                        help="conjugate-replacement generation check")
    _add_element_args(p)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--json", action="store_true")

    return parser


# -- handlers ----------------------------------------------------------------


def _cmd_eval(args) -> int:
    f = _one_element(args)
    from .elements import evaluate

    print(evaluate(f, Dyadic.parse(args.point)))
    return 0


def _cmd_mul(args) -> int:
    els = _elements(args)
    out = els[0]
    for g in els[1:]:
        out = multiply(out, g)
    sys.stdout.write(format_branch_pairs(out))
    return 0


def _cmd_inv(args) -> int:
    sys.stdout.write(format_branch_pairs(invert(_one_element(args))))
    return 0


def _cmd_pow(args) -> int:
    sys.stdout.write(format_branch_pairs(power(_one_element(args), args.exponent)))
    return 0


def _cmd_branches(args) -> int:
    sys.stdout.write(format_branch_pairs(_one_element(args)))
    return 0


def _cmd_normal_form(args) -> int:
    print(normal_form(_one_element(args)))
    return 0


def _cmd_abelianize(args) -> int:
    img = abelianize(_one_element(args))
    if args.json:
        print(json.dumps({"a": img.a, "b": img.b}, sort_keys=True))
    else:
        print(f"({img.a}, {img.b})")
    return 0


def _cmd_index(args) -> int:
    if args.m is not None or args.n is not None:
        if args.m is None or args.n is None or args.elements:
            raise UsageError("give both --m and --n, without -e/-f")
        x_m, y_n = power_subgroup_generators(args.m, args.n)
        idx = lattice_index([abelianize(x_m), abelianize(y_n)])
        out = idx if idx is not None else "infinite"
        print(json.dumps({"index": out}) if args.json else out)
        return 0
    cert = finite_index_certificate(
        _elements(args), radius=args.radius, depth=args.depth, budget=args.budget
    )
    if args.json:
        print(json.dumps(cert.as_report_dict(), sort_keys=True))
    else:
        rep = cert.as_report_dict()
        print(f"index: {rep['index']}")
        print(f"derived containment: {rep['derived_containment']}")
        print(f"verdict: {rep['verdict']}")
    return 0


def _cmd_saturate(args) -> int:
    system = k_system(args.m, args.n, args.depth)
    part = saturate(system.pairs, args.depth)
    exported = part.export(full=args.full)
    named = {word_to_text(k): v for k, v in exported.items()}
    if args.full:
        named = {k: [word_to_text(w) for w in v] for k, v in named.items()}
    if args.json:
        print(json.dumps(named, sort_keys=True))
        return 0
    # shortlex on the underlying word, not on the display text ("e" for the
    # empty word would otherwise sort after "0" and "1")
    for raw in sorted(exported, key=lambda w: (len(w), w)):
        rep = word_to_text(raw)
        if args.full:
            print(f"{rep} {' '.join(named[rep])}")
        else:
            print(f"{rep} {named[rep]}")
    return 0


# wall-clock fields are stripped so output is byte-identical across runs
def _report_dicts(reports) -> list[dict]:
    dicts = [dataclasses.asdict(r) for r in reports]
    for d in dicts:
        d.pop("elapsed", None)
    return dicts


def _write_junit(reports, path: str) -> None:
    suite = ET.Element("testsuite", {
        "name": "thompsonf-verify",
        "tests": str(len(reports)),
        "failures": str(sum(r.status == "fail" for r in reports)),
        "skipped": str(sum(r.status == "inconclusive" for r in reports)),
    })
    for r in reports:
        case = ET.SubElement(suite, "testcase", {
            "classname": "thompsonf.verify",
            "name": f"{r.check} {json.dumps(r.parameters, sort_keys=True)}",
        })
        if r.status == "fail":
            ET.SubElement(case, "failure", {"message": "; ".join(r.details)})
        elif r.status == "inconclusive":
            ET.SubElement(case, "skipped", {"message": "; ".join(r.details)})
    ET.ElementTree(suite).write(path, encoding="unicode", xml_declaration=True)


_SINGLE_CHECKS = (
    "defining-relations",
    "branch-tables",
    "slope-element",
    "index",
    "subgroup-relations",
    "system-inclusions",
    "derived-containment",
    "invariable-generation",
)


def _run_single_check(args) -> verify_mod.VerificationReport:
    name = args.check
    if name == "defining-relations":
        rep = verify_mod.verify_generator_relations()
    elif name == "branch-tables":
        rep = verify_mod.verify_branch_tables(args.m or 12, args.n or 12)
    elif name == "slope-element":
        if args.m and args.n:
            rep = verify_mod.verify_slope_element(args.m, args.n)
        else:
            rep = verify_mod.verify_slope_elements()
    elif name == "index":
        if args.m and args.n:
            rep = verify_mod.verify_index(args.m, args.n)
        else:
            rep = verify_mod.verify_index_grid()
    elif name == "subgroup-relations":
        if not (args.m and args.n):
            raise UsageError("subgroup-relations needs --m and --n")
        rep = verify_mod.verify_k_in_h(args.m, args.n,
                                       radius=args.radius or 6,
                                       depth=args.depth or 14)
    elif name == "system-inclusions":
        if not (args.m and args.n):
            raise UsageError("system-inclusions needs --m and --n")
        rep = verify_mod.verify_k_chain_inclusions(args.m, args.n,
                                                   depth=args.depth or 16)
    elif name == "derived-containment":
        if not args.n:
            raise UsageError("derived-containment needs --n")
        rep = verify_mod.verify_derived_containment(args.n, depth=args.depth or 16)
    elif name == "invariable-generation":
        if args.elements:
            g = _resolve(args.elements[0])
            label = args.elements[0][1]
        else:
            g = element_of(parse_expression("e"))
            label = "e"
        rep = verify_mod.verify_invariable(g, radius=args.radius or 6,
                                           depth=args.depth or 16, label=label)
    else:
        raise UsageError(
            f"unknown check {name!r}; one of: all, " + ", ".join(_SINGLE_CHECKS)
        )
    return rep


def _cmd_verify(args) -> int:
    if args.check == "all":
        reports = verify_mod.run_all(jobs=args.jobs)
    else:
        reports = [_run_single_check(args)]
    if args.junit:
        _write_junit(reports, args.junit)
    if args.json:
        print(json.dumps(_report_dicts(reports), sort_keys=True))
    else:
        for r in reports:
            params = json.dumps(r.parameters, sort_keys=True)
            print(f"{r.status:12s} {r.check} {params}")
            for msg in r.details:
                print(f"    {msg}")
    return 1 if any(r.status == "fail" for r in reports) else 0


def _cmd_dot(args) -> int:
    sys.stdout.write(to_dot(_one_element(args)))
    return 0


def _cmd_invariable_check(args) -> int:
    if args.elements:
        g = _resolve(args.elements[0])
        label = args.elements[0][1]
    else:
        g, label = element_of(parse_expression("e")), "e"
    rep = verify_mod.verify_invariable(g, radius=args.radius,
                                       depth=args.depth, label=label)
    if args.json:
        print(json.dumps(_report_dicts([rep])[0], sort_keys=True))
    else:
        print(f"{rep.status}: {json.dumps(rep.parameters, sort_keys=True)}")
        for msg in rep.details:
            print(f"    {msg}")
    return 0 if rep.status != "fail" else 1


_HANDLERS = {
    "eval": _cmd_eval,
    "mul": _cmd_mul,
    "inv": _cmd_inv,
    "pow": _cmd_pow,
    "reduce": _cmd_branches,
    "branches": _cmd_branches,
    "normal-form": _cmd_normal_form,
    "abelianize": _cmd_abelianize,
    "index": _cmd_index,
    "saturate": _cmd_saturate,
    "verify": _cmd_verify,
    "dot": _cmd_dot,
    "invariable-check": _cmd_invariable_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, MalformedDiagram, CapacityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
