"""Command-line interface.

Exit codes: 0 success / property holds, 1 counterexample found,
2 usage or validation error.  Reports are JSON on stdout unless
--format text is given.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import PresentationError, parse_presentation, presentation_from_json
from .analysis import (
    ar_map,
    gorenstein_profile,
    is_gentle,
    is_string_algebra,
    two_gorenstein_criterion,
)
from .harness import (
    BudgetExceeded,
    EnumerationBounds,
    enumerate_monomial,
    enumerate_nakayama,
    known_theorems,
    verify_theorem,
)
from .nakayama import (
    KupischError,
    KupischSeries,
    co_kupisch,
    f_map,
    g_map,
    idim_projective_closed_form,
    kupisch_from_presentation,
    pdim_injective_closed_form,
    presentation_from_kupisch,
)
from .resolve import INF, pdim_injective
from .reps import injective, kernel_of_cover
from .surgery import SurgeryError, cut, cuttable_vertices, reduce_to_nakayama


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return presentation_from_json(text)
    return parse_presentation(text)


def _jsonable(value):
    if value is INF:
        return "infinity"
    if isinstance(value, float):
        return int(value)
    return value


def _print_report(data, fmt):
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for key, value in data.items():
            print(f"{key}: {value}")


def cmd_analyze(args):
    pres = _load(args.file)
    profile = gorenstein_profile(pres)
    ar = ar_map(pres)
    two = two_gorenstein_criterion(pres)
    report = {
        "algebra": pres.name,
        "dimension": pres.dimension,
        "gor_level": _jsonable(profile.gor_level),
        "idim_right": _jsonable(profile.idim_right),
        "idim_left": _jsonable(profile.idim_left),
        "auslander_gorenstein": profile.is_auslander_gorenstein,
        "iwanaga_gorenstein": profile.is_iwanaga_gorenstein,
        "auslander_regular": profile.is_auslander_regular,
        "global_dimension": _jsonable(profile.global_dimension),
        "dominant_dimension": _jsonable(profile.dominant_dimension),
        "gentle": is_gentle(pres),
        "string": is_string_algebra(pres),
        "nakayama": kupisch_from_presentation(pres) is not None,
        "two_gorenstein_criterion": {
            "pass": two.passed,
            "failures": {k: list(v) for k, v in two.failures.items()},
        },
        "ar_map": {
            "well_defined": ar.well_defined,
            "bijective": ar.bijective,
            "assignments": {x: ar.assignments[x] for x in sorted(ar.assignments)},
            "statuses": {x: ar.statuses[x] for x in sorted(ar.statuses)},
            "cycles": [list(c) for c in ar.cycles] if ar.cycles else None,
        },
    }
    _print_report(report, args.format)
    return 0


def cmd_resolve(args):
    pres = _load(args.file)
    x = args.injective
    if x not in set(pres.quiver.vertices):
        raise PresentationError(f"unknown vertex {x!r}")
    trace = pdim_injective(pres, x)
    lines = []
    if trace.pdim is INF:
        upper = trace.preperiod + trace.period
    else:
        upper = int(trace.pdim) + 1
    if args.max_show:
        upper = min(upper, args.max_show)
    for i in range(upper):
        term = trace.term(i)
        parts = []
        for v in sorted(term):
            mult = term[v]
            parts.extend([f"P({v})"] * mult)
        lines.append(f"P_{i} = " + (" + ".join(parts) if parts else "0"))
    if trace.pdim is INF:
        result = f"infinity (preperiod={trace.preperiod}, period={trace.period})"
    else:
        result = str(int(trace.pdim))
    report = {
        "algebra": pres.name,
        "injective": x,
        "pdim": _jsonable(trace.pdim),
        "terms": lines,
    }
    if trace.pdim is INF:
        report["preperiod"] = trace.preperiod
        report["period"] = trace.period
    if args.dump:
        omega1, _ = kernel_of_cover(pres, injective(pres, x))
        report["first_syzygy"] = omega1.to_json_dict()
    if args.format == "text":
        for line in lines:
            print(line)
        print(f"pdim I({x}) = {result}")
        if args.dump:
            print(json.dumps(report["first_syzygy"], indent=2, sort_keys=True))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def _parse_kupisch_arg(text):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    shape = "cyclic"
    if parts and parts[-1] in ("cyclic", "linear"):
        shape = parts[-1]
        parts = parts[:-1]
    elif parts and parts[-1] == "1":
        shape = "linear"
    try:
        c = tuple(int(p) for p in parts)
    except ValueError:
        raise KupischError(f"bad Kupisch series {text!r}")
    return KupischSeries(shape, c)


def cmd_nakayama(args):
    ks = _parse_kupisch_arg(args.kupisch)
    pres = presentation_from_kupisch(ks)
    report = {
        "shape": ks.shape,
        "kupisch": list(ks.c),
        "co_kupisch": list(co_kupisch(ks)),
        "f": {j: f_map(ks, j) for j in range(1, ks.n + 1)},
        "g": {j: g_map(ks, j) for j in range(1, ks.n + 1)},
        "idim_projective": {j: _jsonable(idim_projective_closed_form(ks, j))
                            for j in range(1, ks.n + 1)},
        "pdim_injective": {j: _jsonable(pdim_injective_closed_form(ks, j))
                           for j in range(1, ks.n + 1)},
    }
    if args.profile:
        profile = gorenstein_profile(pres)
        report["gor_level"] = _jsonable(profile.gor_level)
        report["idim_right"] = _jsonable(profile.idim_right)
        report["idim_left"] = _jsonable(profile.idim_left)
        report["auslander_gorenstein"] = profile.is_auslander_gorenstein
    _print_report(report, args.format)
    return 0


def cmd_cut(args):
    pres = _load(args.file)
    options = dict(cuttable_vertices(pres))
    v = args.vertex
    if v not in options:
        raise SurgeryError(
            f"vertex {v!r} is not cuttable; cuttable: {sorted(options) or 'none'}")
    new, trace = cut(pres, v, options[v])
    sys.stdout.write(new.to_dsl())
    event = trace.events[0]
    print(json.dumps({
        "cut_vertex": event.vertex,
        "new_vertices": [event.v1, event.v2],
        "labeling": {"a1": event.labeling.a1, "a2": event.labeling.a2,
                     "b1": event.labeling.b1, "b2": event.labeling.b2},
    }, indent=2, sort_keys=True))
    return 0


def cmd_reduce(args):
    pres = _load(args.file)
    reduced = reduce_to_nakayama(pres)
    if reduced is None:
        print(json.dumps({"applicable": False,
                          "reason": "two_gorenstein_criterion fails"}))
        return 1
    final, trace, comps, series = reduced
    sys.stdout.write(final.to_dsl())
    print(json.dumps({
        "applicable": True,
        "cuts": [{"vertex": e.vertex, "new_vertices": [e.v1, e.v2]}
                 for e in trace.events],
        "components": [
            {"vertices": list(c.quiver.vertices),
             "shape": s.shape,
             "kupisch": list(s.c)}
            for c, s in zip(comps, series)
        ],
    }, indent=2, sort_keys=True))
    return 0


def cmd_verify(args):
    bounds = EnumerationBounds(args.vertices, args.arrows, args.rel_len,
                               args.rel_count)
    report = verify_theorem(args.theorem, bounds=bounds,
                            nakayama_n=args.nakayama_N,
                            force=args.force, jobs=args.jobs)
    data = {
        "theorem": report.theorem,
        "instances": report.instances,
        "passed": report.passed,
        "elapsed_seconds": round(report.elapsed, 3),
        "counterexamples": [
            {"instance": name, "detail": detail}
            for name, detail in report.counterexamples[:20]
        ],
        "counterexample_count": len(report.counterexamples),
    }
    _print_report(data, args.format)
    return 0 if report.passed else 1


def cmd_enumerate(args):
    if args.nakayama_N:
        items = list(enumerate_nakayama(args.nakayama_N))
        if args.count:
            print(len(items))
        else:
            for ks in items:
                print(f"{ks.shape} {','.join(str(c) for c in ks.c)}")
        return 0
    bounds = EnumerationBounds(args.vertices, args.arrows, args.rel_len,
                               args.rel_count, args.shape)
    count = 0
    for pres in enumerate_monomial(bounds, force=args.force):
        count += 1
        if not args.count:
            print(pres.name)
    if args.count:
        print(count)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gorquiv",
        description="Homological calculator for finite-dimensional monomial "
                    "quiver algebras")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full homological report")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("resolve", help="minimal projective resolution of an injective")
    p.add_argument("file")
    p.add_argument("--injective", required=True, metavar="VERTEX")
    p.add_argument("--max-show", type=int, default=0)
    p.add_argument("--dump", action="store_true")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("nakayama", help="Kupisch series calculus")
    p.add_argument("--kupisch", required=True,
                   help='e.g. "2,3,3,3,3,3,cyclic" or "2,1,linear"')
    p.add_argument("--profile", action="store_true")
    p.set_defaults(func=cmd_nakayama)

    p = sub.add_parser("cut", help="cut a degree-4 vertex")
    p.add_argument("file")
    p.add_argument("--vertex", required=True)
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("reduce", help="cut all degree-4 vertices down to Nakayama parts")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="exhaustively verify a classification result")
    p.add_argument("theorem", choices=known_theorems())
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--arrows", type=int, default=4)
    p.add_argument("--rel-len", type=int, default=3)
    p.add_argument("--rel-count", type=int, default=4)
    p.add_argument("--nakayama-N", type=int, default=6)
    p.add_argument("--force", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list or count enumerated algebras")
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--arrows", type=int, default=4)
    p.add_argument("--rel-len", type=int, default=3)
    p.add_argument("--rel-count", type=int, default=4)
    p.add_argument("--shape", choices=("any", "nakayama", "gentle"), default="any")
    p.add_argument("--nakayama-N", type=int, default=0)
    p.add_argument("--count", action="store_true")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PresentationError, KupischError, SurgeryError, BudgetExceeded,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
