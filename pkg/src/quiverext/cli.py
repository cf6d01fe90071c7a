"""Command-line entry point.

Subcommands: analyze, resolve, ext-table, corner, compare.  JSON is the
report contract (byte-identical across runs at fixed seed and flags); text
output mirrors it for reading; CSV is available for ext-table.

Exit codes: 0 = pass/complete, 2 = hypotheses unmet or undetermined,
1 = input error.
"""

import argparse
import csv
import io
import json
import sys

from .algebra import AdmissibilityError, PresentationError, build_engine
from .algfile import AlgebraFileError, format_algebra, parse_algebra_file
from .comparison import verify_comparison
from .corner import (IdempotentPair, corner_algebra, gexact_condition,
                     is_H_exact, pair_from_presentation)
from .ext import ExtTable, yoneda_product
from .fields import field_from_name, scalar_to_json
from .modules import simple_module
from .resolution import MinimalResolution, global_dimension, projective_dimension


def _parser():
    p = argparse.ArgumentParser(
        prog="quiverext",
        description="Homological invariants of finite-dimensional quiver "
                    "algebras and their corner algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", help="algebra description file")
        sp.add_argument("--bound", type=int, default=40,
                        help="resolution bound (default 40)")
        sp.add_argument("--window", type=int, default=10,
                        help="comparison window width (default 10)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized isomorphism tests")
        sp.add_argument("--field", default=None,
                        help="override the ground field (Q or F<p>)")
        sp.add_argument("--format", choices=["json", "csv", "text"],
                        default="json")
        sp.add_argument("--out", default=None, help="write the report here")

    sp = sub.add_parser("analyze", help="dimensions, basis, global dimension")
    common(sp)
    sp = sub.add_parser("resolve", help="minimal resolutions of simples")
    common(sp)
    sp.add_argument("--simple", default=None, help="resolve only this vertex")
    sp = sub.add_parser("ext-table", help="bigraded Ext table")
    common(sp)
    sp.add_argument("--products-bound", type=int, default=0,
                    help="also emit Yoneda structure constants up to this degree")
    sp = sub.add_parser("corner", help="corner algebra presentation and checks")
    common(sp)
    sp.add_argument("--f", default=None,
                    help="comma-separated f-vertices (default: idempotent line)")
    sp = sub.add_parser("compare", help="verify the eventual Ext comparison")
    common(sp)
    sp.add_argument("--f", default=None,
                    help="comma-separated f-vertices (default: idempotent line)")
    sp.add_argument("--no-products", action="store_true",
                    help="skip product compatibility checks")
    return p


def _load(args):
    pres = parse_algebra_file(args.input)
    if args.field:
        from .algebra import AlgebraPresentation
        field = field_from_name(args.field)
        rels = [[(scalar_to_json(c), tuple(p.arrows)) for c, p in terms]
                for terms in pres.relations]
        pres = AlgebraPresentation(pres.quiver, pres.group_rank, pres.weights,
                                   field, rels, pres.truncation,
                                   f_vertices=pres.f_vertices)
    return build_engine(pres)


def _pair(engine, args):
    if getattr(args, "f", None):
        return IdempotentPair(engine, [v.strip() for v in args.f.split(",") if v.strip()])
    return pair_from_presentation(engine)


def _verdict_json(v):
    return v.to_json()


def cmd_analyze(engine, args):
    pres = engine.pres
    report = {
        "field": pres.field.name,
        "group_rank": pres.group_rank,
        "vertices": list(pres.quiver.vertices),
        "arrows": [[a.name, a.source, a.target, list(pres.weights[a.name])]
                   for a in pres.quiver.arrows],
        "truncation": pres.truncation,
        "dim_lambda": engine.dim,
        "basis": [("e_" + p.source) if p.is_vertex else "".join(p.arrows)
                  for p in engine.basis],
        "radical_dim": len(engine.radical_basis()),
        "mixed_length_relations": pres.mixed_length_relations,
        "projective_dims": {v: len(engine.basis_paths_from(v))
                            for v in pres.quiver.vertices},
        "global_dimension": global_dimension(engine, args.bound, seed=args.seed).to_json(),
        "simple_pd": {v: projective_dimension(engine, simple_module(engine, v),
                                              args.bound, seed=args.seed).to_json()
                      for v in pres.quiver.vertices},
    }
    return report, 0


def cmd_resolve(engine, args):
    vertices = [args.simple] if args.simple else list(engine.quiver.vertices)
    report = {}
    for v in vertices:
        if v not in engine.quiver.vertices:
            raise AlgebraFileError("unknown vertex %r" % v)
        res = MinimalResolution(engine, simple_module(engine, v), seed=args.seed)
        res.extend_to(args.bound)
        res.verify()
        report["S_" + v] = res.to_json()
        report["S_" + v]["pd"] = res.pd_verdict(args.bound).to_json()
    return report, 0


def cmd_ext_table(engine, args):
    table = ExtTable(engine, args.bound, seed=args.seed)
    report = {"bound": args.bound, "entries": table.to_rows(),
              "undetermined_sources": sorted(table.undetermined)}
    if args.products_bound:
        consts = []
        top = min(args.products_bound, args.bound)
        for m in range(1, top):
            for n in range(1, top - m + 1):
                for x in table.basis_classes(m):
                    for y in table.basis_classes(n):
                        if y.target_vertex != x.source:
                            continue
                        z = yoneda_product(table, x, y)
                        if not z.is_zero():
                            consts.append({
                                "x": [m, x.source, x.target_vertex, list(x.target_degree)],
                                "y": [n, y.source, y.target_vertex, list(y.target_degree)],
                                "product": [z.degree, z.source, z.target_vertex,
                                            list(z.target_degree),
                                            {str(i): scalar_to_json(c)
                                             for i, c in sorted(z.coeffs.items())}],
                            })
        report["products"] = consts
    return report, 0


def cmd_corner(engine, args):
    pair = _pair(engine, args)
    cp = corner_algebra(engine, pair)
    h_flag, witness = is_H_exact(cp, seed=args.seed)
    report = {
        "f": list(pair.f_vertices),
        "e": list(pair.e_vertices),
        "dim_corner": cp.dim,
        "arrows": cp.witness_json(),
        "presentation": format_algebra(cp.presentation),
        "verified_isomorphism": True,
        "corner_global_dimension": global_dimension(cp.corner_engine, args.bound,
                                                    seed=args.seed).to_json(),
        "h_exact": h_flag,
        "h_exact_witness": witness,
    }
    if len(pair.e_vertices) == 1:
        report["gexact"] = gexact_condition(cp, seed=args.seed)
    return report, 0


def cmd_compare(engine, args):
    pair = _pair(engine, args)
    report = verify_comparison(engine, pair, bound=args.bound, window=args.window,
                               seed=args.seed,
                               with_products=not getattr(args, "no_products", False))
    if report["verdict"] == "PASS":
        status = 0
    elif report["verdict"] in ("HYPOTHESES_UNMET", "UNDETERMINED"):
        status = 2
    else:
        status = 1
    return report, status


def _render_text(report, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for k in report:
            v = report[k]
            if isinstance(v, (dict, list)) and v:
                lines.append("%s%s:" % (pad, k))
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, v if v != [] else "[]"))
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)):
                lines.append("%s-" % pad)
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append("%s- %s" % (pad, item))
    else:
        lines.append("%s%s" % (pad, report))
    return lines


def _render_csv(report):
    entries = report.get("entries")
    if entries is None:
        raise AlgebraFileError("csv output is only available for ext-table")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "source", "target", "g", "dim"])
    for row in entries:
        writer.writerow([row["n"], row["source"], row["target"],
                         ";".join(str(x) for x in row["g"]), row["dim"]])
    return buf.getvalue()


def _emit(report, args):
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        text = _render_csv(report)
    else:
        text = "\n".join(_render_text(report)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_COMMANDS = {
    "analyze": cmd_analyze,
    "resolve": cmd_resolve,
    "ext-table": cmd_ext_table,
    "corner": cmd_corner,
    "compare": cmd_compare,
}


def main(argv=None):
    args = _parser().parse_args(argv)
    if args.bound < 1 or args.window < 1:
        sys.stderr.write("error: --bound and --window must be at least 1\n")
        return 1
    if not 0 <= args.seed < 2 ** 64:
        sys.stderr.write("error: --seed must fit in 64 unsigned bits\n")
        return 1
    try:
        engine = _load(args)
        report, status = _COMMANDS[args.command](engine, args)
        if args.command == "compare" and status == 2:
            reasons = "; ".join(report.get("unmet", [])) or "undetermined"
            sys.stderr.write("hypotheses unmet: %s\n" % reasons)
        _emit(report, args)
    except (AlgebraFileError, PresentationError, AdmissibilityError,
            FileNotFoundError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    return status


if __name__ == "__main__":
    sys.exit(main())
