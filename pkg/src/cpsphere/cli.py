"""Command-line front end.

Exit codes: 0 success (or a true verdict), 1 false verdict or failed fixture,
2 usage or input error, 3 an invariant violated during a sweep.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .arena import comparison_table
from .cpsets import profile
from .evaluate import NotPairedError, sat, sat_variant
from .formula import CpCounterfactual, CpSet, ParseError, dual, parse, size, to_text
from .model import Centering, ModelError, load_model, save_model
from .search import (SYSTEMS, EnumerationBounds, EnumerationOverflow, FrameTable,
                     check_axioms, interdefinability_sweep, preservation_sweep,
                     theorem_sweep, translation_sweep, variant_sweep)
from .translate import TranslationError, star
from .update import UpdateTag, update, update_trace
from .weights import literal_chain, weight_of_set

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt_bool(v: bool) -> str:
    return "true" if v else "false"


def _fmt_weight(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _fmt_setweight(ws) -> str:
    return "[" + " ".join(_fmt_weight(w) for w in ws) + "]"


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read model {path}: {e.strerror}") from None
    return load_model(text)


def _cpset(text: str) -> CpSet:
    f = parse(f"false =>{text} false")
    return f.cpset


# -- subcommands ------------------------------------------------------------------

def cmd_eval(args, out):
    m = _load(args.model)
    f = parse(args.formula)
    if args.trace:
        verdict, trace = sat_variant(m, args.world, f, args.update, args.variant, trace=True)
        out.write(trace.render() + "\n")
    else:
        verdict = sat_variant(m, args.world, f, args.update, args.variant)
    out.write(_fmt_bool(verdict) + "\n")
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_weights(args, out):
    m = _load(args.model)
    if args.formula:
        fs = [parse(t) for t in args.formula]
    else:
        fs = [g for a in m.atoms for g in (parse(a), dual(parse(a)))]
    classes = literal_chain(m, args.world, fs, args.update)
    rows = sorted(((to_text(f), w) for w, group in classes for f in group))
    width = max(len(r[0]) for r in rows)
    for text, w in rows:
        out.write(f"{text.ljust(width)}  {_fmt_weight(w)}\n")
    chain = " < ".join(" = ".join(to_text(f) for f in group) for _, group in classes)
    out.write(f"order: {chain}\n")
    return EXIT_OK


def cmd_profile(args, out):
    m = _load(args.model)
    g = _cpset(args.cpset)
    x = m.index(args.world)
    out.write(f"cp-set {g} at {args.world} under {args.update}\n")
    for y in sorted(m.names(m.reach(x)), key=m.index):
        p = profile(m, x, y, g, args.update)
        wd = weight_of_set(m, x, p.disagreement, args.update)
        wa = weight_of_set(m, x, p.agreement, args.update)
        out.write(f"{y}: forcing {p.forcing} agreement {p.agreement} "
                  f"disagreement {p.disagreement} w(A) {_fmt_setweight(wa)} "
                  f"w(D) {_fmt_setweight(wd)}\n")
    return EXIT_OK


def cmd_update_dump(args, out):
    m = _load(args.model)
    g = _cpset(args.cpset)
    m2 = update(m, args.world, g, args.update)
    if args.trace:
        for r in update_trace(m, args.world, g, args.update):
            out.write(f"# {r.world} level {r.level} origrank {r.origrank} "
                      f"set {r.relevant} weight {_fmt_setweight(r.setweight)}\n")
    out.write(f"spheres {args.world}: {m2.format_chain(m2.chain(m2.index(args.world)))}\n")
    return EXIT_OK


def cmd_translate(args, out):
    m = _load(args.model)
    f = parse(args.formula)
    if UpdateTag(args.update) is UpdateTag.I and m.centering is Centering.WEAK:
        raise UsageError("translation under the implausibility update is not available "
                         "on weakly centered models")
    fs = star(m, args.world, f, "d")
    before = sat(m, args.world, f, args.update)
    after = sat(m, args.world, fs, "d")
    out.write(f"# translation anchored at world {args.world} of {args.model}; "
              f"it is not equivalent in other models\n")
    out.write(to_text(fs) + "\n")
    out.write(f"# certificate: anchor={args.model}:{args.world} update={args.update} "
              f"original={_fmt_bool(before)} translated={_fmt_bool(after)} "
              f"size={size(f)}->{size(fs)}\n")
    return EXIT_OK if before == after else EXIT_VIOLATION


def _finding_line(f, fmt):
    if fmt == "jsonlines":
        return json.dumps(f.as_dict(), sort_keys=True)
    model = f.model.strip().replace("\n", "; ")
    return f"{f.check}\t{f.world}\t{f.formula}\t{f.detail}\t{model}"


def cmd_sweep(args, out):
    atoms = tuple(a for a in args.atoms.split(",") if a)
    b = EnumerationBounds(args.max_worlds, atoms, args.centering, cap=args.cap)
    tags = [args.update] if args.update else ["i", "a", "d"]
    violations, logged = [], []
    summaries = []
    if args.suite == "axioms":
        system = "VC" if b.centering is Centering.CENTERED else "VW"
        table = FrameTable(b)
        for u in tags:
            rep = check_axioms(b, system, u, table=table)
            summaries.append(f"{system} update {u}: instances={rep.instances} "
                             f"counterexamples={sum(rep.per_schema.values())}")
            violations += rep.counterexamples
    elif args.suite == "theorems":
        rep = theorem_sweep(b)
        summaries.append(rep.summary())
        violations += rep.violations
        logged += rep.findings
    elif args.suite == "variants":
        rep = variant_sweep(b, max_size=args.max_size)
        summaries.append(rep.summary())
        logged += rep.findings
    elif args.suite == "translation":
        rep = translation_sweep(b)
        summaries.append(rep.summary())
        violations += rep.violations
    elif args.suite == "interdefinability":
        rep = interdefinability_sweep(b)
        summaries.append(rep.summary())
        violations += rep.violations
    else:
        rep = preservation_sweep(b, per_frame=b.centering is Centering.WEAK)
        summaries.append(rep.summary())
        violations += rep.violations
    for f in violations:
        out.write(_finding_line(f, args.format) + "\n")
    if args.show_logged:
        for f in logged:
            out.write(_finding_line(f, args.format) + "\n")
    if args.format == "text":
        for s in summaries:
            out.write(s + "\n")
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_compare(args, out):
    m = _load(args.model)
    rows = []
    for text in args.formula:
        f = parse(text)
        if not isinstance(f, CpCounterfactual):
            raise UsageError(f"not a counterfactual: {text}")
        rows.append((f.antecedent, f.consequent, f.cpset))
    table = comparison_table(m, args.world, rows)
    if args.format == "jsonlines":
        for r in table:
            out.write(json.dumps({"formula": r.formula, "CP": r.cp, "NC": r.nc, "MS": r.ms,
                                  "DIS": r.dis}, sort_keys=True) + "\n")
        return EXIT_OK
    width = max([len(r.formula) for r in table] + [len("counterfactual")])
    out.write(f"{'counterfactual'.ljust(width)} | CP    | NC    | MS    | DIS\n")
    for r in table:
        cells = " | ".join(_fmt_bool(v).ljust(5) for v in (r.cp, r.nc, r.ms, r.dis))
        out.write(f"{r.formula.ljust(width)} | {cells.rstrip()}\n")
    return EXIT_OK


def cmd_fixtures(args, out):
    from .fixtures import run_manifest
    results = run_manifest(args.manifest)
    failed = 0
    for r in results:
        failed += not r["pass"]
        if args.format == "jsonlines":
            out.write(json.dumps({k: r[k] for k in ("fixture", "model", "world", "formula",
                                                    "update", "expected", "actual")},
                                 sort_keys=True) + "\n")
        else:
            out.write(f"{'pass' if r['pass'] else 'FAIL'}  {r['fixture']}: "
                      f"expected {r['expected']} got {r['actual']}\n")
    if args.format == "text":
        out.write(f"{len(results) - failed}/{len(results)} fixtures pass\n")
    return EXIT_OK if not failed else EXIT_FALSE


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpsphere",
                                description="Ceteris paribus counterfactuals on sphere models")
    sub = p.add_subparsers(dest="command", required=True)

    def pointed(sp, update_default="d"):
        sp.add_argument("--model", required=True, help="model file")
        sp.add_argument("--world", required=True)
        sp.add_argument("--update", choices=["i", "a", "d"], default=update_default)

    sp = sub.add_parser("eval", help="truth of a formula at a world")
    pointed(sp)
    sp.add_argument("--formula", required=True)
    sp.add_argument("--variant", choices=["a", "b", "c"], default="b")
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("weights", help="formula weights and their order")
    pointed(sp)
    sp.add_argument("--formula", action="append", help="repeatable; default: all literals")
    sp.set_defaults(func=cmd_weights)

    sp = sub.add_parser("profile", help="forcing, agreement and disagreement sets per world")
    pointed(sp)
    sp.add_argument("--cpset", required=True, help="e.g. '[e1, ~e1]'")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("update-dump", help="updated spheres in model-file syntax")
    pointed(sp)
    sp.add_argument("--cpset", required=True)
    sp.add_argument("--trace", action="store_true", help="also print the ranking rows")
    sp.set_defaults(func=cmd_update_dump)

    sp = sub.add_parser("translate", help="eliminate cp-sets relative to a world")
    pointed(sp)
    sp.add_argument("--formula", required=True)
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("sweep", help="exhaustive checks over enumerated models")
    sp.add_argument("--max-worlds", type=int, default=2)
    sp.add_argument("--atoms", default="p,q")
    sp.add_argument("--centering", choices=["centered", "weak"], default="centered")
    sp.add_argument("--update", choices=["i", "a", "d"])
    sp.add_argument("--suite", default="theorems",
                    choices=["axioms", "theorems", "variants", "translation",
                             "interdefinability", "preservation"])
    sp.add_argument("--max-size", type=int, default=5, help="formula size for --suite variants")
    sp.add_argument("--cap", type=int, default=2_000_000, help="maximum number of models")
    sp.add_argument("--show-logged", action="store_true",
                    help="also print findings that are logged rather than failures")
    sp.add_argument("--format", choices=["text", "jsonlines"], default="text")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("compare", help="strict, naive counting, maximal supersets, disagreement")
    sp.add_argument("--model", required=True)
    sp.add_argument("--world", required=True)
    sp.add_argument("--formula", action="append", required=True, help="counterfactual; repeatable")
    sp.add_argument("--format", choices=["text", "jsonlines"], default="text")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("fixtures", help="run the bundled regression fixtures")
    sp.add_argument("--manifest", help="manifest file (default: bundled)")
    sp.add_argument("--format", choices=["text", "jsonlines"], default="text")
    sp.set_defaults(func=cmd_fixtures)
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ParseError, ModelError, NotPairedError, TranslationError,
            EnumerationOverflow, ValueError) as e:
        err.write(f"cpsphere {args.command}: {e}\n")
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
