"""``origami`` command: validate templates and report their invariants.

Usage: origami <validate|invariants|betti|cutpieces|export-dot> <file> [--json] [--out PATH]

Exit status is 0 on success, 1 when the template is invalid or an
invariant cannot be computed for it (a report is still written), and 2 for
usage errors and unreadable or malformed files.
"""
import argparse
import json
import sys
from typing import List, Optional, Tuple

from . import assembly, cohomology, invariants
from .errors import InvalidTemplate, OrigamiError, TemplateFileError
from .fileformat import parse_template_file
from .template import OrigamiTemplate, ValidationReport, graph_stats, validate_template

COMMANDS = ("validate", "invariants", "betti", "cutpieces", "export-dot")

PROVENANCE = {
    "pi1": "pi_1(M) = N/N_X x pi_1(X), pi_1(X) free of rank 1 + R - L",
    "H1": "abelianisation of pi_1(M); equals H^{2n-1}(M)",
    "torsion_H2": "torsion of H^2(M) is the torsion of N/N_X",
    "orientable": "orientable iff the template graph is bipartite",
    "simply_connected": "simply connected iff the template graph is acyclic",
    "prismatic": "prismatic iff N/N_X = Z; then M = T^2 x Y",
    "euler_characteristic": "number of torus-fixed points (vertices of X off the fold)",
    "complement": "H^{2k-1} = ker phi_k, H^{2k} = coker phi_k (Stanley-Reisner bases)",
    "fold_component": "circle bundle over the divisor; Betti numbers by Gysin ranks",
}


def _parser():
    p = argparse.ArgumentParser(prog="origami", description="Invariants of toric origami "
                                "manifolds from their templates.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="template JSON file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    return p


def _load(path) -> Tuple[Optional[dict], Optional[OrigamiTemplate], ValidationReport]:
    raw = parse_template_file(path)
    try:
        return raw, validate_template(raw), ValidationReport()
    except InvalidTemplate as exc:
        return raw, None, exc.report


def _validate_text(report, t):
    if report.ok:
        s = graph_stats(t)
        return (f"valid template: dimension {2 * t.dim}, L = {s.L}, R = {s.R}, "
                f"dangling edges = {s.dangling_count}")
    lines = ["invalid template:"]
    lines += [f"  [{i.kind}] {i.message}" for i in report.issues]
    return "\n".join(lines)


def _invariants(t):
    data = invariants.summary(t)
    data["provenance"] = {k: PROVENANCE[k] for k in (
        "pi1", "H1", "torsion_H2", "orientable", "simply_connected")}
    if "prismatic" in data:
        data["provenance"]["prismatic"] = PROVENANCE["prismatic"]
        data["provenance"]["euler_characteristic"] = PROVENANCE["euler_characteristic"]
    return data


def _invariants_text(d):
    lines = [
        f"dimension: {d['dimension']}   L = {d['L']}, R = {d['R']}, cycle rank = {d['cycle_rank']}",
        f"N/N_X: {d['N_mod_NX']['text']}",
        f"pi_1(M): {d['pi1']['text']}",
        f"H_1(M): {d['H1']['text']}",
        f"torsion of H^2(M): {d['torsion_H2']['text']}",
        f"orientable: {_yes(d['orientable'])}",
        f"simply connected: {_yes(d['simply_connected'])}",
    ]
    if "prismatic" in d:
        fiber = d["fiber"]
        extra = "" if fiber is None else (f" (fiber: dimension {fiber['dimension']}, "
                                          f"{fiber['facets']} facets, h = {fiber['h_vector']})")
        lines.append(f"prismatic: {_yes(d['prismatic'])}{extra}")
        lines.append(f"Euler characteristic: {d['euler_characteristic']}")
    return "\n".join(lines)


def _yes(flag):
    return "yes" if flag else "no"


def _betti(t, raw):
    data = assembly.solve_betti(t).to_dict()
    data["file_notes"] = list(raw.get("notes", []))
    return data


def _betti_text(d):
    vals = ", ".join("?" if b is None else str(b) for b in d["betti"])
    lines = [f"Betti numbers b^0..b^{d['dimension']}: ({vals})",
             f"method: {d['method']}",
             f"Euler characteristic: {d['euler_characteristic']}",
             f"torsion of H^2: {d['torsion_H2']}",
             f"provenance: {d['provenance']}"]
    if d["constraints"]:
        lines.append("residual relations:")
        lines += [f"  {c['text']}" for c in d["constraints"]]
    for note in d["notes"] + d["file_notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _cutpieces(t):
    pieces = []
    for v, p in t.polytopes.items():
        folds = list(t.fold_facets(v))
        entry = {"polytope": v, "fold_facets": folds,
                 "h_vector": list(p.h_vector),
                 "toric_betti": list(cohomology.toric_betti(p))}
        if folds:
            cc = cohomology.complement_cohomology(p, folds)
            entry["complement"] = {"groups": [str(g) for g in cc.groups],
                                   "betti": list(cc.betti),
                                   "prismatic": cc.prismatic,
                                   "euler_characteristic": cc.euler_characteristic}
        pieces.append(entry)
    folds = []
    for e in t.ordinary_edges:
        end = e.ends[0]
        z = cohomology.fold_component_invariants(t.polytopes[end.vertex], end.facet)
        folds.append({"edge": e.id, "polytope": end.vertex, "facet": end.facet,
                      "euler_class": list(z.euler_class), "betti": list(z.betti),
                      "dim4_type": z.dim4_type})
    return {"pieces": pieces, "fold_components": folds,
            "provenance": {"complement": PROVENANCE["complement"],
                           "fold_component": PROVENANCE["fold_component"]}}


def _cutpieces_text(d):
    lines = []
    for piece in d["pieces"]:
        lines.append(f"piece {piece['polytope']}: toric Betti {tuple(piece['toric_betti'])}, "
                     f"fold facets {piece['fold_facets']}")
        if "complement" in piece:
            c = piece["complement"]
            lines.append(f"  complement: ({', '.join(c['groups'])})"
                         f"{'  prismatic' if c['prismatic'] else ''}")
    for z in d["fold_components"]:
        kind = f", {z['dim4_type']}" if z["dim4_type"] else ""
        lines.append(f"fold {z['edge']} ({z['polytope']} facet {z['facet']}): "
                     f"Betti {tuple(z['betti'])}, e = {tuple(z['euler_class'])}{kind}")
    return "\n".join(lines)


def to_dot(t: OrigamiTemplate) -> str:
    """The template graph in DOT; dangling edges end at unlabelled nodes."""
    lines = ["graph template {"]
    for v in t.vertices:
        lines.append(f'  "{v}" [label="{v}"];')
    for e in t.edges:
        facets = "|".join(str(x.facet) for x in e.ends)
        if e.dangling:
            stub = f"_dangling_{e.id}"
            lines.append(f'  "{stub}" [shape=none, label=""];')
            lines.append(f'  "{e.ends[0].vertex}" -- "{stub}" [label="{e.id}: {facets}"];')
        else:
            a, b = (x.vertex for x in e.ends)
            lines.append(f'  "{a}" -- "{b}" [label="{e.id}: {facets}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_command(argv: List[str]) -> Tuple[int, str]:
    """Run one command; returns (exit status, report text).

    With ``--out`` the report is also written to that path.
    """
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), ""
    status, text = _execute(args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status, text


def _execute(args) -> Tuple[int, str]:
    try:
        raw, t, report = _load(args.file)
    except TemplateFileError as exc:
        if args.json:
            return 2, _dump({"error": type(exc).__name__, "message": str(exc)})
        return 2, f"error: {exc}\n"

    if t is None or args.command == "validate":
        data = report.to_dict()
        text = _validate_text(report, t)
        status = 0 if report.ok else 1
        return status, _dump(data) if args.json else text + "\n"

    if args.command == "export-dot":
        dot = to_dot(t)
        return 0, _dump({"dot": dot}) if args.json else dot

    try:
        if args.command == "invariants":
            data = _invariants(t)
            text = _invariants_text(data)
        elif args.command == "betti":
            data = _betti(t, raw)
            text = _betti_text(data)
        else:
            data = _cutpieces(t)
            text = _cutpieces_text(data)
    except OrigamiError as exc:
        data = {"error": type(exc).__name__, "message": str(exc)}
        return 1, _dump(data) if args.json else f"error: {type(exc).__name__}: {exc}\n"
    return 0, _dump(data) if args.json else text + "\n"


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    status, text = run_command(argv)
    if not any(a == "--out" or a.startswith("--out=") for a in argv):
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
