"""Command-line driver.  Exit codes: 0 success, 1 verified false, 2 input error."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from . import ingest
from .algebra.cyclo import CycloScalar
from .algebra.jet import GradedJet, exp_jet, translate_jet
from .algebra.laurent import divide_by_euler, eval_at_point
from .chern import (bundled_presentations, chern_character, decompose_by_isotropy, domination_certificate,
                    twisted_germ)
from .cover import build_adapted, verify_adapted
from .gkm import (MomentGraph, check_class, cs_compare, graded_dimensions, image_basis, product_graph,
                  splitting_dimension_check)
from .lattice import (DualGroup, TorsionPoint, annihilator_of_point, canonical_subgroup, in_subvariety, prec,
                      same_component)
from .sheafmodel import (SheafModel, cocycle_check, cocycle_triples, glue, glue_back, graph_collection,
                         section_check, section_space, stalk_space)
from .tcw import TCWComplex, fixed_subcomplex, isotropy_collection, one_skeleton

OK, FALSE, INPUT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


# output


class Reporter:
    def __init__(self, args):
        self.args = args
        self.data: Dict[str, Any] = {"params": {"cutoff": args.cutoff, "window": args.window}}
        self.lines: List[str] = [f"# cutoff={args.cutoff} window={args.window}"]

    def put(self, key: str, value, text: str | None = None) -> None:
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def text(self, line: str) -> None:
        self.lines.append(line)

    def flush(self, out) -> None:
        if self.args.json:
            out.write(json.dumps(self.data, indent=2, default=_jsonable) + "\n")
        else:
            out.write("\n".join(self.lines) + "\n")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, CycloScalar):
        return ingest.enc_scalar(x)
    if isinstance(x, TorsionPoint):
        return [str(c) for c in x.coords]
    return str(x)


def scalar_text(c) -> str:
    s = str(c)
    if isinstance(c, CycloScalar):
        k = c.as_root_of_unity()
        if k is not None and not c.is_rational():
            s += f"  [= e^(2 pi i * {k})]"
    return s


# argument helpers


def _group_from_args(args) -> DualGroup:
    if args.free_rank is None:
        raise InputError("give --free-rank (and optionally --torsion)")
    return DualGroup(args.free_rank, tuple(args.torsion or ()))


def parse_point(G: DualGroup, text: str) -> TorsionPoint:
    try:
        vals = [Fraction(x) for x in text.replace(" ", "").split(",") if x]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse point {text!r}; write coordinates like 1/2,1/3") from None
    return TorsionPoint(G, tuple(vals))


def parse_vector(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"cannot parse integer vector {text!r}") from None


def _load(path: str, *kinds: str):
    kind, value = ingest.load_document(path)
    if kinds and kind not in kinds:
        raise InputError(f"{path}: expected a {' or '.join(kinds)} document, got {kind!r}")
    return kind, value


def _model(args) -> SheafModel:
    _, M = _load(args.model, "model")
    if args.cutoff_given:
        M = SheafModel(M.graph, M.cover, args.cutoff)
    else:
        args.cutoff = M.cutoff
    return M


def _pts(xs: Sequence[TorsionPoint]) -> List[str]:
    return [str(a) for a in xs]


# commands


def cmd_latt(args, rep: Reporter) -> int:
    G = _group_from_args(args)
    gens = [parse_vector(g) for g in (args.gens or [])]
    if args.action == "canonical":
        M = canonical_subgroup(G, gens)
        rep.put("basis", [list(b) for b in M.basis], f"canonical basis: {[list(b) for b in M.basis]}")
        rep.put("quotient_invariants", M.quotient_invariants(),
                f"quotient invariants (0 = Z): {M.quotient_invariants()}")
        rep.put("index", M.index(), f"index: {M.index() if M.index() is not None else 'infinite'}")
        return OK
    if args.action == "annihilator":
        a = parse_point(G, args.point)
        M = annihilator_of_point(a)
        rep.put("basis", [list(b) for b in M.basis], f"M({a}) basis: {[list(b) for b in M.basis]}")
        rep.put("H_invariants", M.quotient_invariants(), f"H(alpha) character group invariants: {M.quotient_invariants()}")
        return OK
    if args.action == "member":
        a = parse_point(G, args.point)
        res = in_subvariety(a, canonical_subgroup(G, gens))
        rep.put("in_subvariety", res, f"{a} in C_H: {res}")
        return OK if res else FALSE
    if args.action == "prec":
        a, b = parse_point(G, args.point), parse_point(G, args.beta)
        A = [canonical_subgroup(G, [parse_vector(x) for x in grp.split(";")]) for grp in (args.collection or [])]
        res = prec(a, b, A)
        rep.put("prec", res, f"{a} precedes {b}: {res}")
        return OK if res else FALSE
    if args.action == "same-component":
        a, b = parse_point(G, args.point), parse_point(G, args.beta)
        res = same_component(a, b, canonical_subgroup(G, gens))
        rep.put("same_component", res, f"same component: {res}")
        return OK if res else FALSE
    raise InputError(f"unknown latt action {args.action}")


def cmd_tcw(args, rep: Reporter) -> int:
    _, X = _load(args.tcw, "tcw")
    if args.action == "fixed":
        if args.point:
            sel = parse_point(X.ambient, args.point)
        else:
            sel = canonical_subgroup(X.ambient, [parse_vector(g) for g in (args.gens or [])])
        Y = fixed_subcomplex(X, sel)
    elif args.action == "skeleton":
        Y = one_skeleton(X)
    else:
        coll = isotropy_collection(X)
        rep.put("collection", [ingest.enc_subgroup(M) for M in coll],
                "\n".join(f"M = {[list(g) for g in M.generators()]}" for M in coll) or "(empty)")
        return OK
    rep.put("cells", ingest.enc_tcw(Y)["cells"],
            f"{len(Y.cells)} cells: " + ", ".join(f"D^{c.dim} x T/H (M={[list(g) for g in c.isotropy.generators()]})"
                                                  for c in Y.cells))
    return OK


def _collection_from(path: str):
    kind, value = _load(path, "graph", "tcw", "model")
    if kind == "graph":
        return value.ambient, graph_collection(value)
    if kind == "tcw":
        return value.ambient, isotropy_collection(value)
    return value.graph.ambient, list(value.collection)


def cmd_cover(args, rep: Reporter) -> int:
    if args.action == "build":
        G, A = _collection_from(args.model)
        _, pts = _load(args.samples, "points")
        cov = build_adapted(A, pts)
        doc = ingest.to_document("cover", cov, G)
        if args.out:
            ingest.save(args.out, doc)
        rep.put("cover", doc, "\n".join(f"ball {b.center} radius {b.radius}" for b in cov.balls))
        report = verify_adapted(cov)
        rep.put("adapted", report.ok, f"adapted: {report.ok}")
        return OK if report.ok else FALSE
    _, cov = _load(args.cover, "cover")
    report = verify_adapted(cov)
    vs = [{"condition": v.condition, "alpha": str(v.alpha), "beta": str(v.beta) if v.beta else None,
           "witness": [[list(g) for g in M.generators()] for M in v.witness], "detail": v.detail}
          for v in report.violations]
    rep.put("violations", vs, "\n".join(
        f"condition {v['condition']}: alpha={v['alpha']} beta={v['beta']} witness={v['witness']} ({v['detail']})"
        for v in vs) or "no violations: the cover is adapted")
    return OK if report.ok else FALSE


def cmd_algebra(args, rep: Reporter) -> int:
    if args.action == "eval":
        _, f = _load(args.laurent, "laurent")
        v = eval_at_point(f, parse_point(f.ambient, args.point))
        rep.put("value", v, f"f({args.point}) = {scalar_text(v)}")
        return OK
    if args.action == "divide":
        _, f = _load(args.laurent, "laurent")
        res = divide_by_euler(f, parse_vector(args.w))
        if res.divisible:
            rep.put("quotient", ingest.enc_laurent(res.quotient), f"divisible; quotient {res.quotient}")
            return OK
        w = {str(list(k)): v for k, v in res.witness.items()}
        rep.put("witness", w, f"not divisible; collapsed witness {', '.join(f'{k}: {v}' for k, v in w.items())}")
        return FALSE
    if args.action == "translate":
        _, j = _load(args.jet, "jet")
        by = [Fraction(x) for x in args.by.split(",")]
        out = translate_jet(j, by)
        rep.put("jet", ingest.enc_jet(out), str(out))
        return OK
    if args.action == "exp":
        form = [Fraction(x) for x in args.form.split(",")]
        out = exp_jet(GradedJet.linear(form), args.cutoff)
        rep.put("jet", ingest.enc_jet(out), str(out))
        return OK
    raise InputError(f"unknown algebra action {args.action}")


def cmd_chern(args, rep: Reporter) -> int:
    if args.action == "certificate":
        pres = bundled_presentations()
        if args.presentation not in pres:
            raise InputError(f"unknown presentation {args.presentation!r}; choose from {sorted(pres)}")
        cert = domination_certificate(pres[args.presentation], args.n)
        rep.put("lambda", str(cert.lam))
        rep.put("margins", {str(k): v for k, v in cert.margins.items()})
        rep.put("passed", cert.passed)
        for line in cert.summary_lines():
            rep.text(line)
        rep.text(f"certificate passed: {cert.passed}")
        return OK if cert.passed else FALSE
    _, E = _load(args.bundle, "bundle")
    if args.action == "character":
        ch = chern_character(E.summands(args.vertex), E.ambient, args.cutoff)
        rep.put("jet", ingest.enc_jet(ch), f"ch at {args.vertex}: {ch}")
        return OK
    a = parse_point(E.ambient, args.point)
    if args.action == "decompose":
        parts = decompose_by_isotropy(E.summands(args.vertex), a)
        rep.put("parts", [[list(s.character) for s in p] for _, p in parts],
                "\n".join(f"class of {list(k)}: {[list(s.character) for s in p]}" for k, p in parts))
        return OK
    germ = twisted_germ(E, a, args.cutoff)
    rep.put("germ", {v: ingest.enc_jet(j) for v, j in germ.vertex_jets.items()},
            "\n".join(f"{v}: {j}" for v, j in sorted(germ.vertex_jets.items())))
    return OK


def cmd_sheaf(args, rep: Reporter) -> int:
    M = _model(args)
    rep.data["params"]["cutoff"] = args.cutoff
    rep.lines[0] = f"# cutoff={args.cutoff} window={args.window}"
    if args.action == "stalk":
        centers = [parse_point(M.graph.ambient, args.point)] if args.point else M.centers
        out = {}
        for a in centers:
            dims = stalk_space(M, a).dimensions()
            out[str(a)] = dims
            rep.text(f"stalk at {a}: graded dimensions {dims} (total {sum(dims)})")
        rep.put("stalks", out)
        return OK
    if args.action == "glue-check":
        bad = []
        for a, b in M.glue_pairs():
            keep = set(M.fixed_graph(b).vertices)
            for s in stalk_space(M, a).elements:
                back = glue_back(M, b, a, glue(M, a, b, s))
                if any(back.vertex_jets[v] != s.vertex_jets[v] for v in keep):
                    bad.append(f"round trip {a} -> {b}")
                    break
        triples = cocycle_triples(M)
        for t in triples:
            if not cocycle_check(M, *t).ok:
                bad.append(f"cocycle {_pts(t)}")
        rep.put("pairs", len(M.glue_pairs()), f"{len(M.glue_pairs())} gluing pairs, {len(triples)} cocycle triples")
        rep.put("failures", bad, "\n".join(bad) or "all gluing round trips and cocycles hold")
        return FALSE if bad else OK
    if args.action == "space":
        sp = section_space(M)
        rep.put("dim", sp.dim, f"section space dimension {sp.dim}")
        rep.put("support", _pts(sp.support), f"support: {', '.join(_pts(sp.support)) or '(none)'}")
        return OK
    _, E = _load(args.bundle, "bundle")
    res = section_check(M, E)
    if not res.ok:
        f = res.failure
        rep.put("failure", {"alpha": str(f.alpha), "beta": str(f.beta) if f.beta else None, "vertex": f.vertex,
                            "difference": str(f.difference), "reason": f.reason},
                f"section fails: {f.reason} at {f.alpha} -> {f.beta}, vertex {f.vertex}: {f.difference}")
        return FALSE
    germs = {}
    for a, s in sorted(res.section.germs.items(), key=lambda kv: kv[0].coords):
        if s.empty:
            continue
        germs[str(a)] = {v: str(j) for v, j in s.vertex_jets.items()}
        for v, j in sorted(s.vertex_jets.items()):
            txt = scalar_text(j.constant_term()) if j.degree() <= 0 and j.is_polynomial() else str(j)
            rep.text(f"{a} {v}: {txt}")
    rep.put("germs", germs)
    rep.text(f"glues on {res.pairs_checked} overlapping pairs")
    return OK


def _graph(path) -> MomentGraph:
    return _load(path, "graph")[1]


def cmd_gkm(args, rep: Reporter) -> int:
    G = _graph(args.graph)
    size = args.degree if args.theory.upper() == "H" else args.window
    if args.action == "check":
        _, cls = _load(args.cls, "class")
        res = check_class(G, cls)
        if res.ok:
            rep.put("ok", True, "all edges divisible")
            return OK
        rep.put("failures", [{"edge": f"{f.edge.u}-{f.edge.v}", "witness": str(f.witness)} for f in res.failures],
                "\n".join(f"edge {f.edge.u}-{f.edge.v} fails; witness {f.witness}" for f in res.failures))
        return FALSE
    if args.action == "basis":
        basis = image_basis(G, args.theory, size)
        rep.put("dim", len(basis), f"{args.theory.upper()} GKM space at {size}: dimension {len(basis)}")
        for i, b in enumerate(basis):
            rep.text(f"  [{i}] " + "; ".join(f"{v}: {b[v]}" for v in G.vertices))
        return OK
    if args.action == "dims":
        dims = graded_dimensions(G, args.degree)
        rep.put("dims", dims, f"graded dimensions 0..{args.degree}: {dims}")
        return OK
    if args.action == "cs-compare":
        _, gens = _load(args.gens, "classes")
        sizes = range(size + 1)
        res = cs_compare(G, gens, args.theory, sizes)
        rep.put("per_size", {str(k): list(v) for k, v in res.per_size.items()},
                "\n".join(f"{args.theory.upper()} {k}: span {a}, GKM {b}" for k, (a, b) in res.per_size.items()))
        rep.put("result", res.describe(), res.describe())
        return OK if res.equal else FALSE
    if args.action == "split":
        reps = [splitting_dimension_check(G, args.theory, s) for s in range(size + 1)]
        rep.put("reports", [r.__dict__ for r in reps], "\n".join(
            f"{args.theory.upper()} {r.size}: edgewise {r.edgewise_dim}, image {r.image_dim}, GKM {r.gkm_dim}, "
            f"image = GKM: {r.image_equals_gkm}; odd degree: {r.odd_degree}" for r in reps))
        return OK if all(r.ok for r in reps) else FALSE
    if args.action == "product":
        H = _graph(args.other)
        P = product_graph(G, H)
        doc = ingest.to_document("graph", P, P.ambient)
        if args.out:
            ingest.save(args.out, doc)
        rep.put("graph", doc, f"{len(P.vertices)} vertices, {len(P.edges)} edges")
        return OK
    raise InputError(f"unknown gkm action {args.action}")


def cmd_ingest(args, rep: Reporter) -> int:
    if args.action == "fan":
        _, F = _load(args.file, "fan")
        G = ingest.fan_to_graph(F)
        doc = ingest.to_document("graph", G, G.ambient)
        if args.out:
            ingest.save(args.out, doc)
        rep.put("graph", doc, "\n".join(f"{e.u} -- {e.v}  weight {list(e.weight)}" for e in G.edges))
        return OK
    if args.action == "list":
        names = sorted(ingest.example_models())
        rep.put("examples", names, "\n".join(names))
        return OK
    if args.action == "example":
        ex = ingest.example_models()
        if args.name not in ex:
            raise InputError(f"unknown example {args.name!r}; run `ingest list`")
        kind, value, group = ex[args.name]
        doc = ingest.to_document(kind, value, group)
        if args.out:
            ingest.save(args.out, doc)
            rep.put("written", args.out, f"wrote {args.out}")
        else:
            rep.put("document", doc, ingest.dumps(doc).rstrip())
        return OK
    kind, _ = ingest.load_document(args.file)
    rep.put("kind", kind, f"{args.file}: valid {kind} document")
    return OK


def cmd_selftest(args, rep: Reporter) -> int:
    from .acceptance import run_all

    results = run_all()
    rep.put("criteria", [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail,
                          "seconds": round(r.seconds, 3)} for r in results])
    for r in results:
        rep.text(r.line())
    passed = sum(r.passed for r in results)
    rep.text(f"{passed}/{len(results)} criteria pass")
    return OK if passed == len(results) else FALSE


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=argparse.SUPPRESS, help="jet cutoff D (default 6)")
    common.add_argument("--window", type=int, default=argparse.SUPPRESS, help="Laurent exponent window W (default 3)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    p = argparse.ArgumentParser(prog="gkmforge", parents=[common],
                                description="Exact computations for sheaf models of equivariant K-theory.")
    sub = p.add_subparsers(dest="command", required=True)

    def grp(sp):
        sp.add_argument("--free-rank", type=int)
        sp.add_argument("--torsion", type=int, nargs="*")

    s = sub.add_parser("latt", parents=[common], help="character lattices and torsion points")
    s.add_argument("action", choices=["canonical", "annihilator", "member", "prec", "same-component"])
    grp(s)
    s.add_argument("--gens", nargs="*", help="generators like 2,0 0,3")
    s.add_argument("--point", help="alpha, e.g. 1/2,1/3")
    s.add_argument("--beta")
    s.add_argument("--collection", nargs="*", help="subgroups for prec, each as gens separated by ';'")

    s = sub.add_parser("tcw", parents=[common], help="T-CW cell censuses")
    s.add_argument("action", choices=["fixed", "skeleton", "isotropy"])
    s.add_argument("--tcw", required=True)
    s.add_argument("--point")
    s.add_argument("--gens", nargs="*")

    s = sub.add_parser("cover", parents=[common], help="adapted covers")
    s.add_argument("action", choices=["build", "verify"])
    s.add_argument("--model", help="graph, tcw or model document supplying the subgroup collection")
    s.add_argument("--samples")
    s.add_argument("--cover")
    s.add_argument("--out")

    s = sub.add_parser("algebra", parents=[common], help="Laurent rings and jets")
    s.add_argument("action", choices=["eval", "divide", "translate", "exp"])
    s.add_argument("--laurent")
    s.add_argument("--jet")
    s.add_argument("--point")
    s.add_argument("--w")
    s.add_argument("--by")
    s.add_argument("--form")

    s = sub.add_parser("chern", parents=[common], help="Chern characters and domination certificates")
    s.add_argument("action", choices=["decompose", "character", "germ", "certificate"])
    s.add_argument("--bundle")
    s.add_argument("--vertex")
    s.add_argument("--point")
    s.add_argument("--presentation", default="cp2")
    s.add_argument("--n", type=int, default=6)

    s = sub.add_parser("sheaf", parents=[common], help="stalks, gluing and sections")
    s.add_argument("action", choices=["stalk", "glue-check", "section", "space"])
    s.add_argument("--model", required=True)
    s.add_argument("--bundle")
    s.add_argument("--point")

    s = sub.add_parser("gkm", parents=[common], help="moment graphs")
    s.add_argument("action", choices=["check", "basis", "dims", "cs-compare", "split", "product"])
    s.add_argument("--graph", required=True)
    s.add_argument("--class", dest="cls")
    s.add_argument("--gens")
    s.add_argument("--theory", default="H")
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--other")
    s.add_argument("--out")

    s = sub.add_parser("ingest", parents=[common], help="fans, examples and validation")
    s.add_argument("action", choices=["fan", "list", "example", "validate"])
    s.add_argument("name", nargs="?")
    s.add_argument("--file")
    s.add_argument("--out")

    sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    return p


_REQUIRED = {
    ("latt", "annihilator"): ["point"], ("latt", "member"): ["point"], ("latt", "prec"): ["point", "beta"],
    ("latt", "same-component"): ["point", "beta"], ("cover", "build"): ["model", "samples"],
    ("cover", "verify"): ["cover"], ("algebra", "eval"): ["laurent", "point"],
    ("algebra", "divide"): ["laurent", "w"], ("algebra", "translate"): ["jet", "by"], ("algebra", "exp"): ["form"],
    ("chern", "decompose"): ["bundle", "vertex", "point"], ("chern", "character"): ["bundle", "vertex"],
    ("chern", "germ"): ["bundle", "point"], ("sheaf", "section"): ["bundle"], ("gkm", "check"): ["cls"],
    ("gkm", "cs-compare"): ["gens"], ("gkm", "product"): ["other"], ("ingest", "fan"): ["file"],
    ("ingest", "example"): ["name"], ("ingest", "validate"): ["file"],
}

COMMANDS = {"latt": cmd_latt, "tcw": cmd_tcw, "cover": cmd_cover, "algebra": cmd_algebra, "chern": cmd_chern,
            "sheaf": cmd_sheaf, "gkm": cmd_gkm, "ingest": cmd_ingest, "selftest": cmd_selftest}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    args.cutoff_given = hasattr(args, "cutoff")
    args.cutoff = getattr(args, "cutoff", 6)
    args.window = getattr(args, "window", 3)
    args.json = getattr(args, "json", False)
    action = getattr(args, "action", None)
    for name in _REQUIRED.get((args.command, action), []):
        if getattr(args, name, None) in (None, []):
            flag = "class" if name == "cls" else name.replace("_", "-")
            err.write(f"error: {args.command} {action} needs --{flag}\n" if name != "name"
                      else f"error: {args.command} {action} needs a name\n")
            return INPUT_ERROR
    if args.cutoff < 0 or args.window < 0:
        err.write("error: --cutoff and --window must be nonnegative\n")
        return INPUT_ERROR
    rep = Reporter(args)
    try:
        code = COMMANDS[args.command](args, rep)
    except (ValueError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return INPUT_ERROR
    rep.flush(out)
    return code


def main() -> None:
    sys.exit(run())
