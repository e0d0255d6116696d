"""Command-line front end: ``quantales validate | analyze | batch``.

Exit codes: 0 analyzed, 1 I/O or parse error, 2 validation failure,
3 theorem mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from .battery import all_violations
from .classify import ALL_EQUAL, Analysis, classify_all, finite_scale_facts, theorem_ids, _render
from .core import Quantale
from .document import ParseError, dumps, load_document
from .instances import BadInstanceSpec, InstanceSpec, NotFound, family_specs, parse_spec
from .lattice import ValidationError
from .reticulation import boolean_center, build_reticulation
from .spectra import spectrum
from .topology import FiniteTopology, pierce_spectrum, space_properties, specialization

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3


def _labels(Q: Quantale, xs) -> list[str]:
    return [Q.label(x) for x in sorted(xs)]


def _mask_labels(Q: Quantale, m: int) -> list[str]:
    return [Q.label(x) for x in range(Q.n) if (m >> x) & 1]


def _validation_message(exc: ValidationError, names=None) -> str:
    w = exc.witness
    if names is not None:
        w = tuple(names[i] if isinstance(i, int) and 0 <= i < len(names) else i for i in w)
    return f"validation failed [{exc.axiom}]: {exc}; witness {list(w)}"


# --- report -----------------------------------------------------------------


def _topology_table(Q: Quantale, T: FiniteTopology) -> dict:
    return {
        "points": _mask_labels(Q, T.ground),
        "open_sets": len(T.opens),
        "properties": space_properties(T).as_dict(),
    }


def analysis_report(Q: Quantale, name: str, theorems: list[str] | None, topology: bool) -> dict:
    X = Analysis(Q)
    rep = spectrum(Q)
    ret = build_reticulation(Q)
    ps = pierce_spectrum(Q)
    classes = classify_all(Q, theorems=theorems if theorems is not None else [], raise_on_mismatch=False, analysis=X)
    out = {
        "instance": name,
        "size": Q.n,
        "elements": list(Q.names),
        "spectra": {
            "spec": _labels(Q, rep.spec),
            "max": _labels(Q, rep.max),
            "min": _labels(Q, rep.min),
            "rho0": Q.label(rep.radical_map[Q.bottom]),
            "jacobson": Q.label(rep.jacobson),
            "semiprime": rep.semiprime,
            "radical_elements": _labels(Q, rep.radical_elements),
        },
        "boolean_center": _labels(Q, boolean_center(Q)),
        "reticulation": {
            "size": ret.lattice.n,
            "elements": list(ret.lattice.names),
            "lambda": {Q.label(a): ret.lattice.names[ret.lam[a]] for a in range(Q.n)},
        },
        "pierce": {
            "points": _labels(Q, ps.points),
            "s": {Q.label(p): Q.label(s) for p, s in sorted(ps.s.items())},
        },
        "classes": classes.flags(),
        "witnesses": {k: _render(v, Q) for k, v in classes.witnesses.items()},
        "theorems": [r.as_dict(Q) for r in classes.theorems],
        "mismatches": [r.theorem_id for r in classes.mismatches],
        "finite_scale_facts": [
            {"label": f.label, "holds": f.holds, "reason": f.detail} for f in finite_scale_facts(Q, X)
        ],
    }
    if topology:
        out["topology"] = {
            "zariski": _topology_table(Q, X.Z),
            "flat": _topology_table(Q, X.F),
            "patch": _topology_table(Q, X.P),
            "max_zariski": _topology_table(Q, X.max_Z),
            "max_flat": _topology_table(Q, X.max_F),
            "min_zariski": _topology_table(Q, X.min_Z),
            "min_flat": _topology_table(Q, X.min_F),
            "pierce": _topology_table(Q, ps.topology),
        }
    return out


def _print_summary(report: dict, out=None) -> None:
    p = lambda *a: print(*a, file=out or sys.stdout)
    s = report["spectra"]
    p(f"instance {report['instance']}  ({report['size']} elements)")
    p(f"  Spec = {{{', '.join(s['spec'])}}}  Max = {{{', '.join(s['max'])}}}  Min = {{{', '.join(s['min'])}}}")
    p(f"  rho(0) = {s['rho0']}  r(A) = {s['jacobson']}  semiprime = {s['semiprime']}")
    p(f"  B(A) = {{{', '.join(report['boolean_center'])}}}  |L(A)| = {report['reticulation']['size']}")
    p(f"  Sp(A) = {{{', '.join(report['pierce']['points'])}}}")
    flags = "  ".join(f"{k}={'T' if v else 'F'}" for k, v in report["classes"].items())
    p(f"  classes: {flags}")
    for k, w in report["witnesses"].items():
        if w is not None:
            p(f"    {k} witness: {w}")
    for t in report["theorems"]:
        tag = t["verdict"] if t["applicable"] else f"{t['verdict']} (hypothesis fails: {t['hypothesis']})"
        p(f"  {t['theorem_id']:6} {tag:10} {t['name']}")
        for c in t["clauses"]:
            flag = "vacuous" if c["vacuous"] else ("skipped" if c["skipped"] else "")
            wit = f"  witness {c['witness']}" if c["witness"] not in (None, []) else ""
            p(f"           [{_show(c['value'])}] {c['label']} {flag}{wit}".rstrip())
    if "topology" in report:
        for name, t in report["topology"].items():
            props = " ".join(k for k, v in t["properties"].items() if v is True)
            p(f"  {name:12} {len(t['points'])} points, {t['open_sets']} opens: {props}")


def _show(v) -> str:
    if isinstance(v, bool):
        return "T" if v else "F"
    if v is None:
        return "-"
    return "{" + ", ".join(map(str, v)) + "}"


# --- DOT --------------------------------------------------------------------


def hasse_dot(Q: Quantale) -> str:
    rep = spectrum(Q)
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(Q.n):
        attrs = []
        if x in rep.max:
            attrs.append('color="red"')
        if x in rep.min:
            attrs.append('style="filled" fillcolor="lightblue"')
        elif x in rep.spec:
            attrs.append('style="filled" fillcolor="lightgrey"')
        lines.append(f'  n{x} [label="{Q.label(x)}"{", " if attrs else ""}{", ".join(attrs)}];')
    for a, b in sorted(Q.lat.covers()):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def specialization_dot(Q: Quantale, T: FiniteTopology, title: str) -> str:
    """Edges x -> y for x in cl{y}, transitively reduced."""
    pairs = set(specialization(T))
    reduced = [(x, y) for x, y in pairs if not any((x, z) in pairs and (z, y) in pairs for z in T.points)]
    lines = [f"digraph {title} {{", "  rankdir=BT;"]
    for x in T.points:
        lines.append(f'  n{x} [label="{Q.label(x)}"];')
    for x, y in sorted(reduced):
        lines.append(f"  n{y} -> n{x};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(Q: Quantale, directory: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    X = Analysis(Q)
    files = {"hasse.dot": hasse_dot(Q)}
    for name in ("Z", "F", "P", "max_Z", "max_F", "min_Z", "min_F"):
        files[f"spec_{name.lower()}.dot"] = specialization_dot(Q, getattr(X, name), f"spec_{name.lower()}")
    written = []
    for fname, text in files.items():
        path = os.path.join(directory, fname)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written.append(path)
    return written


# --- commands ---------------------------------------------------------------


def _load(args) -> tuple[Quantale, str]:
    if args.gen:
        spec = parse_spec(args.gen)
        return spec.build(), str(spec)
    doc = load_document(args.path)
    return doc.to_quantale(), doc.name or os.path.basename(args.path)


def cmd_validate(args) -> int:
    names = None
    try:
        doc = load_document(args.path)
        names = doc.elements
        Q = doc.to_quantale()
    except (OSError, ParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(_validation_message(exc, names), file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"valid: {Q.n}-element commutative integral quantale")
    return EXIT_OK


def _theorem_list(arg: str | None) -> list[str] | None:
    if arg is None:
        return None
    if arg == "all":
        return theorem_ids()
    ids = [t.strip() for t in arg.split(",") if t.strip()]
    unknown = [t for t in ids if t not in theorem_ids()]
    if unknown:
        raise ParseError(f"unknown theorem id(s) {', '.join(unknown)}; known: {', '.join(theorem_ids())}", field="--theorems")
    return ids


def cmd_analyze(args) -> int:
    if bool(args.path) == bool(args.gen):
        print("give exactly one of PATH or --gen", file=sys.stderr)
        return EXIT_PARSE
    try:
        theorems = _theorem_list(args.theorems)
        Q, name = _load(args)
    except ValidationError as exc:
        print(_validation_message(exc), file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError, NotFound) as exc:
        # bad generator parameters and failed random searches are input errors
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = analysis_report(Q, name, theorems, args.topology)
    if args.dot:
        for path in write_dot(Q, args.dot):
            print(f"wrote {path}", file=sys.stderr)
    if args.json:
        text = dumps(report)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
            _print_summary(report)
    else:
        _print_summary(report)
    if report["mismatches"]:
        print(f"MISMATCH in {', '.join(report['mismatches'])}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def run_instance(spec_dict: dict) -> dict:
    """Build one instance, run every battery and the full registry; never raises."""
    spec = InstanceSpec.from_dict(spec_dict)
    out = {"instance": str(spec)}
    try:
        Q = spec.build()
    except NotFound as exc:
        out["status"] = "not-found"
        out["error"] = str(exc)
        return out
    except (ValidationError, ValueError) as exc:
        out["status"] = "invalid"
        out["error"] = str(exc)
        return out
    out["size"] = Q.n
    try:
        violations = all_violations(Q)
        X = Analysis(Q)
        rep = classify_all(Q, raise_on_mismatch=False, analysis=X)
        facts = finite_scale_facts(Q, X)
    except AssertionError as exc:
        out["status"] = "engine-failure"
        out["error"] = f"{type(exc).__name__}: {exc}"
        return out
    out["status"] = "ok"
    out["violations"] = {k: v for k, v in violations.items() if v}
    out["classes"] = rep.flags()
    out["theorems"] = {
        r.theorem_id: {
            "verdict": r.verdict,
            "applicable": r.applicable,
            "vacuous": r.vacuous_labels,
            "vacuous_consistent": r.vacuous_consistent,
            "skipped": [c.label for c in r.clauses if c.skipped],
        }
        for r in rep.theorems
    }
    out["facts"] = {f.label: f.holds for f in facts}
    return out


def summarize(results: list[dict]) -> dict:
    status = Counter(r["status"] for r in results)
    per_theorem: dict[str, Counter] = {t: Counter() for t in theorem_ids()}
    vacuous: dict[str, set] = {}
    facts: dict[str, Counter] = {}
    classes: Counter = Counter()
    violations: Counter = Counter()
    mismatches = []
    for r in results:
        if r["status"] != "ok":
            continue
        for k, v in r["violations"].items():
            violations[k] += len(v)
        for k, v in r["classes"].items():
            classes[k] += bool(v)
        for tid, t in r["theorems"].items():
            c = per_theorem[tid]
            if t["verdict"] != ALL_EQUAL or not t["vacuous_consistent"]:
                c["fail"] += 1
                mismatches.append(f"{r['instance']}:{tid}")
            elif not t["applicable"]:
                c["not_applicable"] += 1
            else:
                c["pass"] += 1
            if t["vacuous"]:
                c["vacuous"] += 1
                vacuous.setdefault(tid, set()).update(t["vacuous"])
            if t["skipped"]:
                c["skipped"] += 1
        for label, holds in r["facts"].items():
            facts.setdefault(label, Counter())["holds" if holds else "fails"] += 1
    return {
        "instances": len(results),
        "status": dict(sorted(status.items())),
        "class_counts": dict(sorted(classes.items())),
        "law_violations": dict(sorted(violations.items())),
        "theorems": {t: dict(sorted(c.items())) for t, c in per_theorem.items()},
        "mismatches": mismatches,
        "degeneracy_ledger": {
            "vacuous_clauses": {t: sorted(v) for t, v in sorted(vacuous.items())},
            "finite_scale_coincidences": {k: dict(sorted(v.items())) for k, v in sorted(facts.items())},
        },
    }


def _print_batch(summary: dict, kinds: list[str], out=None) -> None:
    p = lambda *a: print(*a, file=out or sys.stdout)
    p(f"batch over {', '.join(kinds) or '(empty family)'}: {summary['instances']} instances {summary['status']}")
    if summary["law_violations"]:
        p(f"  law violations: {summary['law_violations']}")
    p(f"  {'theorem':8}{'pass':>6}{'n/a':>6}{'fail':>6}{'vacuous':>9}{'skipped':>9}")
    for tid, c in summary["theorems"].items():
        p(
            f"  {tid:8}{c.get('pass', 0):>6}{c.get('not_applicable', 0):>6}{c.get('fail', 0):>6}"
            f"{c.get('vacuous', 0):>9}{c.get('skipped', 0):>9}"
        )
    p("  degeneracy ledger (clauses that are vacuous at finite scale):")
    for tid, labels in summary["degeneracy_ledger"]["vacuous_clauses"].items():
        for label in labels:
            p(f"    {tid}: {label}")
    p("  finite-scale coincidences:")
    for label, c in summary["degeneracy_ledger"]["finite_scale_coincidences"].items():
        p(f"    {label}: holds on {c.get('holds', 0)}, fails on {c.get('fails', 0)}")
    if summary["mismatches"]:
        p(f"  MISMATCH: {', '.join(summary['mismatches'])}")


def batch_specs(kinds: list[str], max_size: int | None, seed: int, seeds: int) -> list[InstanceSpec]:
    specs = []
    for kind in kinds:
        specs.extend(family_specs(kind, max_size=max_size, seed=seed, seeds=seeds))
    return specs


def cmd_batch(args) -> int:
    kinds = [k.strip() for k in args.family.split(",") if k.strip()]
    try:
        specs = batch_specs(kinds, args.max_size, args.seed, args.seeds)
    except BadInstanceSpec as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    payload = [s.to_dict() for s in specs]
    if args.jobs > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_instance, payload, chunksize=8))
    else:
        results = [run_instance(p) for p in payload]
    summary = summarize(results)
    if args.json:
        text = dumps({"summary": summary, "instances": results})
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    if args.json != "-":
        _print_batch(summary, kinds)
    failures = summary["mismatches"] or summary["law_violations"] or summary["status"].get("engine-failure")
    return EXIT_MISMATCH if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quantales", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a JSON instance document")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="spectra, classes, theorem verdicts and topologies of one instance")
    a.add_argument("path", nargs="?")
    a.add_argument("--gen", help="generated instance, e.g. zn:12, chain:3, f5, downset:3:0<2,1<2, random:SEED:SIZE, A*B")
    a.add_argument("--theorems", help="comma-separated registry ids, or 'all'")
    a.add_argument("--topology", action="store_true", help="include separation properties of every space")
    a.add_argument("--dot", metavar="DIR", help="write Hasse and specialization diagrams")
    a.add_argument("--json", metavar="OUT", help="write the report as JSON ('-' for stdout)")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("batch", help="run every battery and theorem over instance families")
    b.add_argument("--family", default="zn,chain,downset,random,product", help="comma-separated: zn, chain, downset, random, product, f5")
    b.add_argument("--max-size", type=int, default=None, help="family parameter bound (n, k, points, random size)")
    b.add_argument("--seed", type=int, default=0, help="first random seed")
    b.add_argument("--seeds", type=int, default=200, help="number of random seeds")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--json", metavar="OUT", help="write per-instance results and the summary as JSON")
    b.set_defaults(func=cmd_batch)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
