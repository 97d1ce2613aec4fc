"""``qgrade`` command-line interface.

Output is canonical JSON (sorted keys) unless ``--pretty`` is given.  Domain
errors exit with status 1 and a JSON error object; usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .abelgroup import (
    AbelianGroup,
    GroupError,
    adjoin_square_root,
    is_isomorphic,
    quotient_by,
    square_roots,
)
from .acceptance import DEFAULT_SEED, run_all
from .exactfield import Field, FieldError, Matrix
from .grading import Grading, GradingError, verify_algebra_grading
from .matgrad import EvenPartGrading, catalog_field, classify_type, fine_catalog
from .qgrad import (
    SuperGrading,
    decide_iso_extensions,
    extend_assoc,
    extend_pae,
    extend_to_Q,
    extension_shifts,
    fine_on_Q,
)
from .superalg import (
    build_A_superalgebra,
    build_jordan_matrix,
    build_matrix_algebra,
    build_Q,
    build_semidirect_adjoint,
    build_sl,
)

DOMAIN_ERRORS = (GroupError, GradingError, FieldError, ValueError, KeyError, OSError)


class CLIError(Exception):
    pass


# ------------------------------------------------------------------- helpers


def parse_element(G: AbelianGroup, text: str):
    text = text.strip().strip("()")
    coords = [int(x) for x in text.split(",")] if text else []
    if len(coords) != G.ngens:
        raise GroupError(f"element of {G} needs {G.ngens} coordinates, got {len(coords)}")
    return G.element(coords)


def _group_json(G: AbelianGroup) -> dict:
    return {"group": str(G), **G.to_json()}


def _load(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _load_kind(data):
    """Classify a JSON document by its keys."""
    if isinstance(data, list):
        return "catalog"
    if "even_degrees" in data:
        return "supergrading"
    if "target" in data and "grading" in data:
        return "even"
    if "degrees" in data and "carrier" in data:
        return "grading"
    if "structure_constants" in data:
        return "algebra"
    raise CLIError("unrecognized JSON document")


def _even_from(data) -> EvenPartGrading:
    kind = _load_kind(data)
    if kind == "even":
        return EvenPartGrading.from_json(data)
    if kind == "grading":
        gr = Grading.from_json(data)
        return classify_type(gr, gr.carrier.flavor)
    raise CLIError(f"expected an even-part grading, got a {kind} document")


def _emit(obj, args):
    text = json.dumps(obj, sort_keys=True, indent=2)
    if getattr(args, "emit", None):
        Path(args.emit).write_text(text + "\n")
        return {"written": args.emit}
    return obj


def _field(args, n: int, target: str) -> Field:
    if getattr(args, "field", None):
        p = int(args.field)
        return Field(p)
    return catalog_field(n, target if target in ("lie", "jordan") else "jordan")


# --------------------------------------------------------------------- verbs


def cmd_group(args):
    G = AbelianGroup.parse(args.group)
    if args.action == "canonicalize":
        return _group_json(G)
    if args.action == "iso":
        if not args.other:
            raise CLIError("--other is required")
        H = AbelianGroup.parse(args.other)
        return {"isomorphic": is_isomorphic(G, H), "left": str(G), "right": str(H)}
    if args.h is None:
        raise CLIError("--h is required")
    h = parse_element(G, args.h)
    if args.action == "sqrt":
        return {"h": list(h.coords), "roots": [list(r.coords) for r in square_roots(h)]}
    if args.action == "quotient":
        Q, proj = quotient_by(h)
        return {**_group_json(Q), "projection": [list(x.coords) for x in proj.images]}
    if args.action == "adjoin-sqrt":
        H, emb, d = adjoin_square_root(G, h)
        return {**_group_json(H), "d": list(d.coords),
                "embedding": [list(x.coords) for x in emb.images]}
    raise CLIError(f"unknown group action {args.action}")


_ALGEBRAS = {
    "M": build_matrix_algebra,
    "Mplus": build_jordan_matrix,
    "sl": build_sl,
    "A": build_A_superalgebra,
    "pae": build_semidirect_adjoint,
}


def cmd_build(args):
    if args.fine is not None:
        if not args.flavor:
            raise CLIError("--flavor is required with --fine")
        cat = fine_catalog(args.n, args.flavor, _field(args, args.n, args.flavor))
        if not 0 <= args.fine < len(cat):
            raise CLIError(f"--fine must be in 0..{len(cat) - 1}")
        return _emit(cat[args.fine].to_json(), args)
    if args.algebra == "Q" or (args.algebra is None and args.flavor):
        flavor = args.flavor or "lie"
        alg = build_Q(args.n, _field(args, args.n, flavor), flavor)
    elif args.algebra in _ALGEBRAS:
        alg = _ALGEBRAS[args.algebra](args.n, _field(args, args.n, "jordan"))
    else:
        raise CLIError("give --fine K with --flavor, or --algebra")
    return _emit(alg.to_json(), args)


def _report(rep):
    return {"summary": str(rep), **rep.to_json()}


def cmd_verify(args):
    data = _load(args.file)
    kind = _load_kind(data)
    if kind == "even":
        rep = verify_algebra_grading(EvenPartGrading.from_json(data).grading)
    elif kind == "grading":
        rep = verify_algebra_grading(Grading.from_json(data))
    elif kind == "supergrading":
        rep = verify_algebra_grading(SuperGrading.from_json(data).grading)
    elif kind == "catalog":
        reps = [verify_algebra_grading(EvenPartGrading.from_json(e.get("grading", e)).grading)
                for e in data]
        bad = sum(len(r.violations) for r in reps)
        return {"summary": f"{'ok' if not bad else 'FAILED'}, {bad} violations", "entries": len(reps)}
    else:
        raise CLIError("verify expects a grading document")
    return _report(rep)


def cmd_classify(args):
    data = _load(args.file)
    if _load_kind(data) == "even":
        gr = EvenPartGrading.from_json(data).grading
    else:
        gr = Grading.from_json(data)
    target = args.target or gr.carrier.flavor
    ep = classify_type(gr, target)
    return {"type": ep.type_tag, "h": list(ep.h.coords), "group": str(ep.group)}


def cmd_shifts(args):
    ep = _even_from(_load(args.file))
    return {"h": list(ep.h.coords), "group": str(ep.group),
            "shifts": [list(d.coords) for d in extension_shifts(ep)]}


def cmd_extend(args):
    data = _load(args.grading)
    if args.mode == "Q":
        ep = _even_from(data)
        d = parse_element(ep.group, args.d)
        if args.diagnostic:
            return _report(extend_to_Q(ep, d, diagnostic=True))
        return _emit(extend_to_Q(ep, d).to_json(), args)
    gr = EvenPartGrading.from_json(data).grading if _load_kind(data) == "even" else Grading.from_json(data)
    c = parse_element(gr.group, args.d)
    out = extend_assoc(gr, c) if args.mode == "assoc" else extend_pae(gr, c)
    return _emit(out.to_json(), args)


def cmd_iso(args):
    A = SuperGrading.from_json(_load(args.a))
    B = SuperGrading.from_json(_load(args.b))
    witness = None
    if args.witness:
        F = A.algebra.field
        r = Matrix.from_json(F, json.loads(args.r)) if args.r else Matrix.identity(
            F, A.algebra.matrices[0].nrows)
        witness = (args.witness, r)
    return decide_iso_extensions(A, B, witness).to_json()


def cmd_fine_q(args):
    cat = fine_catalog(args.n, args.flavor, _field(args, args.n, args.flavor))
    idx = range(len(cat)) if args.fine is None else [args.fine]
    out = []
    for k in idx:
        sg, H = fine_on_Q(cat[k])
        out.append({"index": k, "name": cat[k].name, "even_group": str(cat[k].group),
                    "type": cat[k].type_tag, "group": str(H), "d": list(sg.d.coords)})
    if args.emit and args.fine is not None:
        Path(args.emit).write_text(json.dumps(fine_on_Q(cat[args.fine])[0].to_json(), sort_keys=True,
                                              indent=2) + "\n")
    return out


def cmd_catalog(args):
    cat = fine_catalog(args.n, args.flavor, _field(args, args.n, args.flavor))
    if args.emit:
        payload = [{"grading": e.to_json(), "type": e.type_tag, "h": list(e.h.coords),
                    "universal_group": str(e.group)} for e in cat]
        Path(args.emit).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return [{"index": k, "name": e.name, "type": e.type_tag, "h": list(e.h.coords),
             "universal_group": str(e.group), "imported": e.imported,
             "component_dimensions": sorted(e.grading.component_dimensions().values(), reverse=True)}
            for k, e in enumerate(cat)]


def cmd_selftest(args):
    results = run_all(args.seed)
    return {"seed": args.seed, "passed": all(r.passed for r in results),
            "criteria": [r.line() for r in results]}


# ---------------------------------------------------------------- rendering


def _pretty(verb: str, obj) -> str:
    if verb == "verify" and isinstance(obj, dict):
        lines = [obj["summary"]]
        for v in obj.get("violations", [])[:50]:
            lines.append(f"  pair {v['pair']} -> index {v['index']}: expected {v['expected']}, "
                         f"found {v['found']} ({v['sector']})")
        return "\n".join(lines)
    if verb == "selftest":
        return "\n".join(obj["criteria"])
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        keys = list(obj[0])
        rows = [[str(r.get(k, "")) for k in keys] for r in obj]
        widths = [max(len(k), *(len(r[i]) for r in rows)) for i, k in enumerate(keys)]
        out = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
        out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
        return "\n".join(out)
    if isinstance(obj, dict):
        w = max(len(k) for k in obj) if obj else 0
        return "\n".join(f"{k.ljust(w)}  {obj[k]}" for k in obj)
    return str(obj)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for randomized checks (default {DEFAULT_SEED})")
    p = argparse.ArgumentParser(prog="qgrade", parents=[common],
                                description="Group gradings on Q(n) and friends.")
    sub = p.add_subparsers(dest="verb", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    g = sub.add_parser("group", help="abelian group computations")
    g.add_argument("action", choices=["canonicalize", "adjoin-sqrt", "sqrt", "quotient", "iso"])
    g.add_argument("--group", required=True)
    g.add_argument("--h", help="element, comma-separated canonical coordinates")
    g.add_argument("--other", help="second group for iso")

    b = sub.add_parser("build", help="build an algebra or a catalog grading")
    b.add_argument("--flavor", choices=["lie", "jordan"])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--fine", type=int, help="catalog index")
    b.add_argument("--algebra", choices=["Q", *_ALGEBRAS])
    b.add_argument("--field", help="prime p for GF(p), 0 for the rationals")
    b.add_argument("--emit", help="write JSON to this file")

    v = sub.add_parser("verify", help="verify a grading file")
    v.add_argument("file")

    c = sub.add_parser("classify-type", help="Type I/II and distinguished element")
    c.add_argument("file")
    c.add_argument("--target", choices=["lie", "jordan"])

    e = sub.add_parser("extend", help="extend a grading to Q, A or the semidirect sum")
    e.add_argument("mode", nargs="?", default="Q", choices=["Q", "assoc", "pae"])
    e.add_argument("--grading", required=True)
    e.add_argument("--d", required=True, help="shift element")
    e.add_argument("--diagnostic", action="store_true", help="return the violation report")
    e.add_argument("--emit")

    s = sub.add_parser("shifts", help="all d with d^2 = h")
    s.add_argument("file")

    i = sub.add_parser("iso", help="compare two extensions")
    i.add_argument("a")
    i.add_argument("b")
    i.add_argument("--witness", choices=["inner", "outer"])
    i.add_argument("--r", help="conjugating matrix as JSON rows")

    f = sub.add_parser("fine-q", help="fine gradings on Q(n) and their universal groups")
    f.add_argument("--flavor", choices=["lie", "jordan"], required=True)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--fine", type=int)
    f.add_argument("--field")
    f.add_argument("--emit")

    k = sub.add_parser("catalog", help="fine gradings on the even part")
    k.add_argument("--flavor", choices=["lie", "jordan"], required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--field")
    k.add_argument("--emit")

    sub.add_parser("selftest", help="run the acceptance checks")
    return p


VERBS = {
    "group": cmd_group,
    "build": cmd_build,
    "verify": cmd_verify,
    "classify-type": cmd_classify,
    "extend": cmd_extend,
    "shifts": cmd_shifts,
    "iso": cmd_iso,
    "fine-q": cmd_fine_q,
    "catalog": cmd_catalog,
    "selftest": cmd_selftest,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    args.pretty = getattr(args, "pretty", False)
    args.seed = getattr(args, "seed", DEFAULT_SEED)
    try:
        result = VERBS[args.verb](args)
    except (CLIError, *DOMAIN_ERRORS) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing key {exc}"
        print(json.dumps({"error": msg, "kind": type(exc).__name__}, sort_keys=True), file=out)
        return 1
    if args.pretty:
        print(_pretty(args.verb, result), file=out)
    else:
        print(json.dumps(result, sort_keys=True, indent=2), file=out)
    if args.verb == "selftest" and not result["passed"]:
        return 1
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
