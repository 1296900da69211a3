"""Command-line front end.

Subcommands: analyze, normalize, all-normal-forms, word-problem,
automaton, growth, graph, distance, prove.  Presentations come from
--fixture (built-in names) or --file (gens:/rels: format); see the
README for word syntaxes.

Exit codes: 0 for completed runs (including runs whose mathematical
checks report failures; those are findings), 1 for usage or parse
errors, 2 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .congruence import MonoidContext, ResourceLimitExceeded
from .presentation import (Presentation, PresentationError, fixture,
                           parse_presentation)
from .structure import (ElementSet, atoms, check_ore, divisors,
                        enumerate_simples, is_spanning, primitive_closure)
from .normal import (GridError, grid_prove_equality, normalize,
                     normalize_all, prove_group_identity)
from .delta import (build_structure, check_normal_uniqueness_criterion,
                    check_uniform_length, find_minimal_garside,
                    fraction_of_signed, group_equal)
from .automaton import (DELTA_INV, build_automaton, growth,
                        synchronous_distance)

DEFAULT_CANCEL_RADIUS = 6
DEFAULT_GARSIDE_NORM = 4
DEFAULT_BALL_CAP = 100_000


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; we reserve 2 for
    resource caps, so remap usage problems to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_presentation(args) -> Presentation:
    if getattr(args, "fixture", None):
        return fixture(args.fixture)
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return parse_presentation(fh.read(), name=args.file)
    raise PresentationError("no presentation given; use --fixture or --file")


def _context(args) -> MonoidContext:
    return MonoidContext(_load_presentation(args),
                         max_cached_words=args.cache_cap,
                         max_ball_elements=args.ball_cap)


def _resolve_span(ctx, args) -> ElementSet:
    if getattr(args, "span", None):
        members = {ctx.one}
        for tok in args.span.replace(",", " ").split():
            members.add(ctx.element(tok))
        return ElementSet(frozenset(members), "span")
    if getattr(args, "delta", None):
        return divisors(ctx, ctx.element(args.delta))
    return primitive_closure(ctx)


def _resolve_structure(ctx, args):
    if getattr(args, "delta", None):
        return build_structure(ctx, ctx.element(args.delta))
    res = find_minimal_garside(ctx, args.garside_norm)
    if not res.found:
        raise ValueError(
            f"no Garside element of norm <= {args.garside_norm} found; "
            f"pass one explicitly with --delta")
    return build_structure(ctx, res.minimal[0])


def _parse_signed(ctx, text):
    return tuple((ctx.canonical(ch), sign)
                 for ch, sign in ctx.presentation.encode_signed(text))


def _parse_letter_word(ctx, text):
    letters = []
    for tok in text.replace(",", " ").split():
        if tok in ("D'", "D^-1", "D-1"):
            letters.append(DELTA_INV)
        else:
            letters.append(ctx.element(tok))
    return tuple(letters)


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)
    return 0


# -- analyze -----------------------------------------------------------


@dataclass
class AnalysisReport:
    name: str
    stages: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"presentation": self.name, **self.stages,
                "notes": self.notes}

    def to_text(self):
        out = [f"presentation: {self.name}"]
        for key, value in self.stages.items():
            if isinstance(value, list):
                shown = ", ".join(str(v) for v in value) or "(none)"
                out.append(f"{key}: {shown}")
            elif isinstance(value, dict):
                inner = ", ".join(f"{k}={v}" for k, v in value.items())
                out.append(f"{key}: {inner}")
            else:
                out.append(f"{key}: {value}")
        for note in self.notes:
            out.append(f"note: {note}")
        return "\n".join(out)


def _delta_summary(ctx, delta, radius):
    gs = build_structure(ctx, delta)
    uniform = check_uniform_length(ctx, gs, radius)
    unique = uniform.details.get("unique_forms")
    criterion = check_normal_uniqueness_criterion(ctx, gs)
    series = growth(ctx, gs, 6, "monoid", unique_forms=unique)
    return {
        "delta": ctx.show(delta),
        "e": gs.order,
        "div_size": len(gs.div_delta),
        "simples": len(gs.simples),
        "uniform_length": uniform.status,
        "unique_forms": unique,
        "uniqueness_criterion": criterion.status,
        "growth": list(series.coefficients),
    }


def cmd_analyze(args) -> int:
    ctx = _context(args)
    report = AnalysisReport(ctx.presentation.name or "(unnamed)")
    stages = report.stages

    cancel = ctx.check_cancellative_bounded(args.radius
                                            or DEFAULT_CANCEL_RADIUS)
    stages["cancellativity"] = {"status": cancel.status,
                                "radius": cancel.details["radius"]}
    if not cancel.passed:
        report.notes.append(f"cancellativity witness: {cancel.witness}")

    stages["atoms"] = [ctx.show(a) for a in sorted(atoms(ctx))]

    prims = primitive_closure(ctx)
    stages["primitives"] = sorted(ctx.show(x) for x in prims)
    stages["primitive_count"] = len(prims)
    for note in prims.notes:
        report.notes.append(f"primitive closure: {note}")

    spanning = is_spanning(ctx, prims, bound=args.bound)
    stages["spanning"] = spanning.status
    ore = check_ore(ctx, atoms(ctx), bound=args.bound)
    stages["common_multiples"] = ore.status
    thin = (spanning.passed and spanning.complete and not prims.notes)
    stages["thin"] = "yes" if thin else (
        "no" if not spanning.passed and spanning.complete else "unknown")

    if spanning.passed:
        simples = enumerate_simples(ctx, prims)
        stages["simples_count"] = len(simples)
        stages["simples"] = sorted(ctx.show(x) for x in simples)
    else:
        report.notes.append("primitive set does not span; skipping simples")

    search = find_minimal_garside(ctx, args.garside_norm)
    stages["minimal_garside"] = [ctx.show(d) for d in search.minimal]
    stages["garside_norm_budget"] = search.max_norm
    probe_bad = [ctx.show(z) for z, ok in search.primitive_mcm_probe
                 if not ok]
    if probe_bad:
        report.notes.append(
            "primitive-pair mcms that are not Garside: "
            + ", ".join(probe_bad))

    deltas = []
    for d in search.minimal:
        try:
            deltas.append(_delta_summary(ctx, d, radius=4))
        except ResourceLimitExceeded as exc:
            report.notes.append(f"structure for {ctx.show(d)} capped: {exc}")
    stages["garside_structures"] = deltas

    return _emit(args, report.to_json(), report.to_text())


# -- normal forms ------------------------------------------------------


def cmd_normalize(args) -> int:
    ctx = _context(args)
    S = _resolve_span(ctx, args)
    x = ctx.element(args.element)
    seq = normalize(ctx, S, x)
    text = " ".join(ctx.show(f) for f in seq.factors) or "1"
    return _emit(args, {"element": ctx.show(x), "span": S.label,
                        "factors": seq.to_json(ctx)}, text)


def cmd_all_normal_forms(args) -> int:
    ctx = _context(args)
    S = _resolve_span(ctx, args)
    x = ctx.element(args.element)
    forms = sorted(normalize_all(ctx, S, x), key=lambda s: s.sort_key())
    lines = [" ".join(ctx.show(f) for f in seq.factors) or "1"
             for seq in forms]
    return _emit(args, {"element": ctx.show(x), "span": S.label,
                        "forms": [seq.to_json(ctx) for seq in forms]},
                 "\n".join(lines))


def cmd_word_problem(args) -> int:
    ctx = _context(args)
    gs = _resolve_structure(ctx, args)
    w1 = _parse_signed(ctx, args.left)
    w2 = _parse_signed(ctx, args.right)
    f1 = fraction_of_signed(ctx, gs, w1)
    f2 = fraction_of_signed(ctx, gs, w2)
    equal = f1.key == f2.key
    assert equal == group_equal(ctx, gs, w1, w2)
    text = (f"{'equal' if equal else 'different'}\n"
            f"left:  {f1.describe(ctx)}\n"
            f"right: {f2.describe(ctx)}")
    return _emit(args, {"equal": equal, "delta": ctx.show(gs.delta),
                        "left": f1.to_json(ctx), "right": f2.to_json(ctx)},
                 text)


# -- automaton, growth, graphs -----------------------------------------


def cmd_automaton(args) -> int:
    ctx = _context(args)
    gs = _resolve_structure(ctx, args)
    auto = build_automaton(ctx, gs)
    if args.json:
        print(json.dumps(auto.to_json(), indent=2, sort_keys=True))
    else:
        print(auto.to_dot(include_failure=args.full), end="")
    return 0


def cmd_growth(args) -> int:
    ctx = _context(args)
    gs = _resolve_structure(ctx, args)
    uniform = check_uniform_length(ctx, gs, min(args.radius or 4, 4))
    series = growth(ctx, gs, args.n, mode=args.mode,
                    unique_forms=uniform.details.get("unique_forms"))
    if args.json:
        print(json.dumps(series.to_json(), indent=2, sort_keys=True))
    else:
        print(series.to_csv(), end="")
    return 0


def export_characteristic_graph(ctx, S: ElementSet) -> str:
    """DOT digraph on S: an edge x -> xg labeled g for each generator
    g with xg again in S."""
    lines = ["digraph characteristic {"]
    for x in S:
        lines.append(f'  "{ctx.show(x)}";')
    gens = sorted(atoms(ctx))
    for x in S:
        for g in gens:
            y = ctx.mul(x, g)
            if y in S.members:
                lines.append(f'  "{ctx.show(x)}" -> "{ctx.show(y)}" '
                             f'[label="{ctx.show(g)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_graph(args) -> int:
    ctx = _context(args)
    S = _resolve_span(ctx, args)
    rep = is_spanning(ctx, S, bound=args.bound)
    if not rep.passed:
        print(f"warning: the set does not span: {rep.summary()}",
              file=sys.stderr)
    print(export_characteristic_graph(ctx, S), end="")
    return 0


def cmd_distance(args) -> int:
    ctx = _context(args)
    gs = _resolve_structure(ctx, args)
    u = _parse_letter_word(ctx, args.left)
    v = _parse_letter_word(ctx, args.right)
    d = synchronous_distance(ctx, gs, u, v)
    return _emit(args, {"distance": d, "delta": ctx.show(gs.delta)}, str(d))


def cmd_prove(args) -> int:
    ctx = _context(args)
    S = _resolve_span(ctx, args)
    if args.identity:
        word = _parse_signed(ctx, args.left)
        deriv = prove_group_identity(ctx, S, word)
    else:
        if args.right is None:
            raise ValueError("prove needs two words, or --identity")
        u = tuple(ctx.element(t) for t in args.left.replace(",", " ").split())
        v = tuple(ctx.element(t) for t in args.right.replace(",", " ").split())
        deriv = grid_prove_equality(ctx, S, u, v)
    text = (f"relations used: {deriv.relation_count}\n"
            f"steps: {len(deriv.steps)}")
    return _emit(args, deriv.to_json(ctx), text)


# -- wiring ------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="garside",
                     description="toolchain for homogeneous monoid "
                                 "presentations and their groups of "
                                 "fractions")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, delta=False, span=False, radius=None):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--fixture", metavar="NAME",
                         help="built-in presentation (M1, M2, M3, B3, "
                              "free(n), free_comm(n))")
        src.add_argument("--file", help="presentation file")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.add_argument("--bound", type=int, default=None,
                       help="override search bound for mcm computations")
        p.add_argument("--radius", type=int, default=radius,
                       help="ball radius for verification checks")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized probes (reserved)")
        p.add_argument("--cache-cap", type=int, default=1_000_000,
                       dest="cache_cap", help="max cached words")
        p.add_argument("--ball-cap", type=int, default=DEFAULT_BALL_CAP,
                       dest="ball_cap", help="max enumerated elements")
        p.add_argument("--garside-norm", type=int,
                       default=DEFAULT_GARSIDE_NORM, dest="garside_norm",
                       help="norm budget for the Garside search")
        if delta:
            p.add_argument("--delta", help="Garside element (word)")
        if span:
            p.add_argument("--span", help="comma-separated spanning set; "
                                          "defaults to the primitive "
                                          "closure")

    p = sub.add_parser("analyze", help="full pipeline report")
    common(p, radius=DEFAULT_CANCEL_RADIUS)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("normalize", help="greedy normal form")
    common(p, delta=True, span=True)
    p.add_argument("element")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("all-normal-forms", help="every normal form")
    common(p, delta=True, span=True)
    p.add_argument("element")
    p.set_defaults(func=cmd_all_normal_forms)

    p = sub.add_parser("word-problem",
                       help="compare two signed words in the group")
    common(p, delta=True)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_word_problem)

    p = sub.add_parser("automaton", help="normal-form automaton (DOT/JSON)")
    common(p, delta=True)
    p.add_argument("--full", action="store_true",
                   help="include the failure state")
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("growth", help="growth series (CSV/JSON)")
    common(p, delta=True)
    p.add_argument("-n", type=int, default=8, help="largest length")
    p.add_argument("--mode", choices=("monoid", "group"), default="monoid")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("graph", help="characteristic graph (DOT)")
    common(p, delta=True, span=True)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("distance",
                       help="synchronous distance of two letter words")
    common(p, delta=True)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("prove",
                       help="derive one word from an equal one, or a "
                            "signed identity word from nothing")
    common(p, delta=True, span=True)
    p.add_argument("left")
    p.add_argument("right", nargs="?")
    p.add_argument("--identity", action="store_true",
                   help="treat the single argument as a signed word "
                        "representing 1")
    p.set_defaults(func=cmd_prove)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 2
    except (PresentationError, GridError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
