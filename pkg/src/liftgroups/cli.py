"""Command-line front end: ``liftgroups {build,classify,lift,negate,verify}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .catalog import PoolConfig, Universe, UniverseConfig, build_universe, morphism_pool
from .characterizations import DIAGRAMS, check_diagram, overall_pass, verify_universe
from .errors import (LiftGroupsError, OrderBoundExceeded, ParseError, SearchBudgetExceeded,
                     UnsupportedSquare)
from .groups import FiniteGroup, set_max_order
from .homs import Morphism, set_search_budget
from .lifting import lifts, negation_class, restrict_to_terminal
from .oracles import (derived_series, is_abelian, is_nilpotent, is_p_group, is_perfect, is_solvable,
                      lower_central_series, primes_dividing)
from .parsing import Parser, parse_spec_list

REPORT_VERSION = 1

EXIT_PASS, EXIT_DISAGREE, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_BUDGET = 0, 1, 2, 3, 4

_GROUP_DIAGRAMS = {"c_abelian", "d_perfect", "e_solvable", "h_odd", "m_nilpotent"}
_PRIME_DIAGRAMS = {"f_coprime", "g_pgroup"}
_MORPHISM_DIAGRAMS = {"a_surjective", "b_injective", "k_normal_closure", "l_subnormal"}


def dumps(obj) -> str:
    """The canonical JSON text used for every report."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def emit(args, payload: dict, text: str) -> None:
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(dumps(payload))


def resolve_diagrams(spec: str | None) -> list[str]:
    if not spec:
        return list(DIAGRAMS)
    out = []
    for item in spec.split(","):
        item = item.strip()
        match = [d for d in DIAGRAMS if d == item or d.split("_")[0] == item]
        if not match:
            raise ParseError(f"unknown diagram {item!r}; choose from {', '.join(DIAGRAMS)}")
        out.extend(m for m in match if m not in out)
    return [d for d in DIAGRAMS if d in out]


def load_or_build(args, timing: dict) -> Universe:
    path = getattr(args, "universe_file", None)
    start = time.perf_counter()
    if path and os.path.exists(path) and args.command != "build":
        u = Universe.load(path)
        timing["load"] = time.perf_counter() - start
        return u
    seeds = parse_spec_list(args.seeds) if args.seeds else None
    config = UniverseConfig(max_order=args.max_order, seeds=seeds, closure_depth=args.closure_depth)
    u = build_universe(config)
    timing["build"] = time.perf_counter() - start
    start = time.perf_counter()
    morphism_pool(u, PoolConfig())
    timing["pool"] = time.perf_counter() - start
    if path:
        u.save(path)
    return u


def universe_summary(u: Universe) -> dict:
    return {"digest": u.digest, "group_count": len(u.groups), "morphism_count": len(u.morphisms),
            "coverage": {str(n): c for n, c in u.coverage().items()}}


def _morphism_json(m: Morphism) -> dict:
    return {"source": m.source.name, "target": m.target.name, "label": m.label,
            "gen_images": [list(x) if isinstance(x, tuple) else x for x in m.gen_images]}


# -- commands ------------------------------------------------------------------------

def cmd_build(args) -> int:
    timing: dict = {}
    u = load_or_build(args, timing)
    summary = universe_summary(u)
    lines = [f"universe {summary['digest'][:16]}: {summary['group_count']} groups, "
             f"{summary['morphism_count']} morphisms"]
    for n, c in u.coverage().items():
        flag = "" if c["known"] is None or c["found"] == c["known"] else "  (incomplete)"
        lines.append(f"  order {n:3d}: {c['found']} of {c['known']}{flag}")
    emit(args, {"version": REPORT_VERSION, "config": u.config.echo(), "universe": summary,
                "timing": _rounded(timing)}, "\n".join(lines))
    return EXIT_PASS


def classify(g: FiniteGroup) -> dict:
    primes = primes_dividing(g.order)
    sylow = {}
    for p in primes:
        k, n = 1, g.order
        while n % p == 0:
            n //= p
            k *= p
        sylow[str(p)] = k
    return {"name": g.name, "order": g.order, "abelian": is_abelian(g), "perfect": is_perfect(g),
            "solvable": is_solvable(g), "nilpotent": is_nilpotent(g),
            "odd_order": g.order % 2 == 1, "primes": primes, "sylow_orders": sylow,
            "p_group": next((p for p in primes if is_p_group(g, p)), None),
            "derived_series": derived_series(g).orders,
            "lower_central_series": lower_central_series(g).orders,
            "center_order": len(g.center), "conjugacy_classes": len(g.conjugacy_classes)}


def cmd_classify(args) -> int:
    g = Parser().group(args.group)
    if not isinstance(g, FiniteGroup):
        raise UnsupportedSquare(f"{args.group} is presented; classification needs a finite group")
    info = classify(g)
    lines = [f"{k}: {_fmt(v)}" for k, v in info.items()]
    emit(args, info, "\n".join(lines))
    return EXIT_PASS


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return ",".join(map(str, v))
    if isinstance(v, dict):
        return " ".join(f"{k}:{x}" for k, x in v.items())
    return str(v)


def cmd_lift(args) -> int:
    p = Parser()
    f, g = p.morphism(args.f), p.morphism(args.g)
    r = lifts(f, g)
    payload = {"f": _morphism_json(f), "g": _morphism_json(g), "holds": r.holds,
               "squares": r.squares}
    lines = [f"{args.f}  ⋔  {args.g}: {'holds' if r.holds else 'fails'} ({r.squares} commuting squares)"]
    if r.counterexample is not None:
        sq = r.counterexample
        payload["counterexample"] = {k: _morphism_json(getattr(sq, k)) for k in "fgij"}
        lines.append("counterexample square (generator images):")
        for k in "fgij":
            m = getattr(sq, k)
            lines.append(f"  {k}: {m.source.name} -> {m.target.name}  {list(m.gen_images)}")
    elif r.witness_lift is not None:
        payload["witness_lift"] = _morphism_json(r.witness_lift)
    emit(args, payload, "\n".join(lines))
    return EXIT_PASS


def cmd_negate(args) -> int:
    timing: dict = {}
    u = load_or_build(args, timing)
    parser = Parser(u)
    pool = dict(enumerate(u.morphisms))
    given = []
    for k, text in enumerate(args.morphisms):
        pool[-(k + 1)] = parser.morphism(text)
        given.append(-(k + 1))
    if args.side == "right":
        # members of a right class sit on the right of a square, so must be finite
        candidates = [mid for mid, m in enumerate(u.morphisms) if m.finite]
    else:
        if not all(pool[q].finite for q in given):
            raise UnsupportedSquare("left negation needs finite morphisms in the class")
        candidates = list(range(len(u.morphisms)))
    out = negation_class(given, args.side, candidates, pool)
    if args.restrict:
        out = restrict_to_terminal(out, args.restrict, pool)
    members = sorted(out)
    payload = {"version": REPORT_VERSION, "universe": universe_summary(u), "side": args.side,
               "restrict": args.restrict, "class": args.morphisms,
               "members": [u.describe_morphism(m) for m in members]}
    lines = [f"{len(members)} of {len(candidates)} pool morphisms"] + \
            [f"  {u.describe_morphism(m)}" for m in members]
    emit(args, payload, "\n".join(lines))
    return EXIT_PASS


def _subject_verdicts(u: Universe, diagrams: list[str], text: str) -> list:
    """Verdicts for one user-given subject, on every selected diagram it fits."""
    parser = Parser(u)
    out = []
    group = morphism = None
    try:
        group = parser.group(text)
    except ParseError:
        morphism = parser.morphism(text)
    for d in diagrams:
        if group is not None and isinstance(group, FiniteGroup):
            if d in _GROUP_DIAGRAMS:
                out.append(check_diagram(d, group, u))
            elif d in _PRIME_DIAGRAMS:
                out.extend(check_diagram(d, (group, p), u) for p in primes_dividing(group.order) or [2])
        elif morphism is not None and morphism.finite and d in _MORPHISM_DIAGRAMS:
            out.append(check_diagram(d, morphism, u))
    if not out:
        raise ParseError(f"subject {text!r} fits none of the selected diagrams")
    return out


def build_report(u: Universe, args, diagrams: list[str], verdicts: list, timing: dict) -> dict:
    config = {"max_order": u.config.max_order, "closure_depth": u.config.closure_depth,
              "seeds": u.config.echo()["seeds"], "diagrams": diagrams,
              "subject": args.subject, "budget": args.budget}
    errors = [v.to_dict() for v in verdicts if v.error]
    return {"version": REPORT_VERSION, "tool_version": __version__, "config": config,
            "universe": universe_summary(u), "verdicts": [v.to_dict() for v in verdicts],
            "errors": errors, "timing": _rounded(timing), "overall_pass": overall_pass(verdicts)}


def _rounded(timing: dict) -> dict:
    return {k: round(v, 3) if isinstance(v, float) else v for k, v in timing.items()}


def cmd_verify(args) -> int:
    timing: dict = {"jobs": args.jobs}
    diagrams = resolve_diagrams(args.diagram)
    u = load_or_build(args, timing)
    if args.subject:
        start = time.perf_counter()
        verdicts = _subject_verdicts(u, diagrams, args.subject)
        timing["verify"] = time.perf_counter() - start
    else:
        verdicts = verify_universe(u, diagrams, jobs=args.jobs, timing=timing)
    report = build_report(u, args, diagrams, verdicts, timing)
    lines = [f"universe {report['universe']['digest'][:16]}: {len(u.groups)} groups, "
             f"{len(u.morphisms)} morphisms"]
    for d in diagrams:
        vs = [v for v in verdicts if v.diagram == d]
        if not vs:
            continue
        agree = sum(v.agree for v in vs)
        tail = ""
        if d == "i_feit_thompson":
            det = vs[0].details
            tail = f"  {det['status']}: {det['odd_order_groups']} odd-order groups " \
                   f"({det['nonabelian_odd']} non-abelian)"
        lines.append(f"  {d:18s} {agree}/{len(vs)} agree{tail}")
        for v in vs:
            if not v.agree:
                lines.append(f"    DISAGREE {v.subject}: lifting={v.via_lifting} oracle={v.via_oracle}"
                             + (f" error={v.error}" if v.error else ""))
    lines.append(f"overall_pass: {str(report['overall_pass']).lower()}")
    emit(args, report, "\n".join(lines))
    return EXIT_PASS if report["overall_pass"] else EXIT_DISAGREE


# -- argument parsing --------------------------------------------------------------

def _universe_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-order", type=int, default=16, help="largest group order in the universe")
    p.add_argument("--closure-depth", type=int, default=2, help="rounds of subgroup/quotient closure")
    p.add_argument("--seeds", help="comma-separated constructors, e.g. C4,S3,D4xC2,M(7,3,2)")
    p.add_argument("--universe-file", help="load the universe from here if it exists, else save it here")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liftgroups", description=__doc__)
    ap.add_argument("--version", action="version", version=f"liftgroups {__version__}")
    ap.add_argument("--budget", type=int, default=None, help="candidate budget per hom enumeration")
    ap.add_argument("--json", help="also write the result as JSON to this path")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build (and optionally save) a universe")
    _universe_flags(b)
    b.set_defaults(run=cmd_build)

    c = sub.add_parser("classify", help="oracle summary of one finite group")
    c.add_argument("group")
    c.set_defaults(run=cmd_classify)

    lf = sub.add_parser("lift", help="decide f ⋔ g")
    lf.add_argument("f")
    lf.add_argument("g")
    lf.set_defaults(run=cmd_lift)

    n = sub.add_parser("negate", help="negation class of the given morphisms within the pool")
    n.add_argument("morphisms", nargs="+")
    n.add_argument("--side", choices=("left", "right"), default="right")
    n.add_argument("--restrict", choices=("from_zero", "to_zero"))
    _universe_flags(n)
    n.set_defaults(run=cmd_negate)

    v = sub.add_parser("verify", help="check every diagram against its oracle")
    _universe_flags(v)
    v.add_argument("--diagram", help="comma-separated ids, e.g. l or l_subnormal,m")
    v.add_argument("--subject", help="check one group or morphism expression instead of the sweep")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(run=cmd_verify)

    for p in (b, c, lf, n, v):
        p.add_argument("--json", default=argparse.SUPPRESS, help="write the result as JSON here")
        p.add_argument("--budget", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if args.budget is not None:
        set_search_budget(args.budget)
    try:
        if getattr(args, "max_order", 0) > 200:
            set_max_order(args.max_order)
        return args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SearchBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UnsupportedSquare, OrderBoundExceeded) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except LiftGroupsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
