"""Model construction: JSON codecs, toric fans, and the bundled example models.

Every JSON document carries ``{"schema": "gkm-forge/1", "kind": ...}``.  Nested
objects inherit the top-level ``"group"`` unless they name their own.  Loader
errors carry the JSON-pointer location of the offending value.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

from . import intmat
from .algebra.cyclo import CycloScalar
from .algebra.jet import GradedJet
from .algebra.laurent import LaurentElement
from .chern import EquivariantBundle, LineSummand
from .cover import Ball, Cover, build_adapted
from .gkm import Edge, MomentGraph, product_graph
from .lattice import DualGroup, Subgroup, TorsionPoint, canonical_subgroup, full_subgroup
from .sheafmodel import SheafModel, graph_collection
from .tcw import Cell, TCWComplex

SCHEMA = "gkm-forge/1"


class IngestError(ValueError):
    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")


def _ptr(base: str, *parts) -> str:
    out = base.rstrip("/")
    for p in parts:
        out += "/" + str(p).replace("~", "~0").replace("/", "~1")
    return out or "/"


def _get(obj: Dict, key: str, ptr: str, kind=None):
    if not isinstance(obj, dict):
        raise IngestError("expected an object", ptr)
    if key not in obj:
        raise IngestError(f"missing key {key!r}", ptr)
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise IngestError(f"expected {getattr(kind, '__name__', kind)}", _ptr(ptr, key))
    return val


def _int(x, ptr) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise IngestError(f"expected an integer, got {x!r}", ptr)
    return x


def _intvec(x, ptr, length=None) -> Tuple[int, ...]:
    if not isinstance(x, list):
        raise IngestError("expected a list of integers", ptr)
    v = tuple(_int(a, _ptr(ptr, i)) for i, a in enumerate(x))
    if length is not None and len(v) != length:
        raise IngestError(f"expected {length} entries, got {len(v)}", ptr)
    return v


def parse_rational(x, ptr) -> Fraction:
    if isinstance(x, bool):
        raise IngestError(f"cannot parse {x!r} as a rational", ptr)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise IngestError(f"cannot parse {x!r} as a rational", ptr) from None
    raise IngestError(f"rationals are written as strings like \"1/2\", got {x!r}", ptr)


def fmt_rational(x: Fraction) -> str:
    return str(Fraction(x))


# encoders / decoders


def enc_group(G: DualGroup) -> Dict:
    return {"free_rank": G.free_rank, "torsion": list(G.torsion)}


def dec_group(obj, ptr="/") -> DualGroup:
    p = _int(_get(obj, "free_rank", ptr), _ptr(ptr, "free_rank"))
    tors = _intvec(obj.get("torsion", []), _ptr(ptr, "torsion"))
    try:
        return DualGroup(p, tors)
    except ValueError as exc:
        raise IngestError(str(exc), ptr) from None


def enc_subgroup(M: Subgroup) -> Dict:
    return {"gens": [list(g) for g in M.generators()]}


def dec_subgroup(obj, G: DualGroup, ptr) -> Subgroup:
    gens = _get(obj, "gens", ptr, list)
    rows = [_intvec(g, _ptr(ptr, "gens", i), G.ngens) for i, g in enumerate(gens)]
    return canonical_subgroup(G, rows)


def enc_point(a: TorsionPoint) -> Dict:
    return {"coords": [fmt_rational(c) for c in a.coords]}


def dec_point(obj, G: DualGroup, ptr) -> TorsionPoint:
    coords = _get(obj, "coords", ptr, list)
    vals = tuple(parse_rational(c, _ptr(ptr, "coords", i)) for i, c in enumerate(coords))
    try:
        return TorsionPoint(G, vals)
    except ValueError as exc:
        raise IngestError(str(exc), _ptr(ptr, "coords")) from None


def enc_scalar(c) -> Any:
    if isinstance(c, CycloScalar):
        c = c.minimal()
        if c.is_rational():
            return fmt_rational(c.to_fraction())
        return {"order": c.order, "coeffs": [fmt_rational(x) for x in c.coeffs]}
    return fmt_rational(c)


def dec_scalar(x, ptr):
    if isinstance(x, dict):
        m = _int(_get(x, "order", ptr), _ptr(ptr, "order"))
        if m < 1:
            raise IngestError("cyclotomic order must be positive", _ptr(ptr, "order"))
        coeffs = _get(x, "coeffs", ptr, list)
        return CycloScalar(m, [parse_rational(c, _ptr(ptr, "coeffs", i)) for i, c in enumerate(coeffs)])
    return parse_rational(x, ptr)


def enc_laurent(f: LaurentElement) -> Dict:
    return {"terms": [{"exp": list(e), "coeff": enc_scalar(f.terms[e])} for e in sorted(f.terms)]}


def dec_laurent(obj, G: DualGroup, ptr) -> LaurentElement:
    terms = _get(obj, "terms", ptr, list)
    items = []
    for i, t in enumerate(terms):
        tp = _ptr(ptr, "terms", i)
        items.append((_intvec(_get(t, "exp", tp), _ptr(tp, "exp"), G.ngens), dec_scalar(_get(t, "coeff", tp), _ptr(tp, "coeff"))))
    return LaurentElement(G, items)


def enc_jet(j: GradedJet) -> Dict:
    terms = []
    for (lam, m) in sorted(j.terms, key=lambda k: (sum(k[1]), k[1], k[0])):
        t = {"exp": list(m), "coeff": enc_scalar(j.terms[(lam, m)])}
        if any(lam):
            t["char"] = [fmt_rational(x) for x in lam]
        terms.append(t)
    return {"vars": j.variables, "cutoff": j.cutoff, "terms": terms}


def dec_jet(obj, ptr, variables: int | None = None) -> GradedJet:
    p = _int(_get(obj, "vars", ptr), _ptr(ptr, "vars")) if "vars" in obj or variables is None else variables
    cutoff = obj.get("cutoff")
    if cutoff is not None:
        cutoff = _int(cutoff, _ptr(ptr, "cutoff"))
    items = []
    for i, t in enumerate(_get(obj, "terms", ptr, list)):
        tp = _ptr(ptr, "terms", i)
        m = _intvec(_get(t, "exp", tp), _ptr(tp, "exp"), p)
        lam = tuple(parse_rational(x, _ptr(tp, "char", k)) for k, x in enumerate(t.get("char", [0] * p)))
        if len(lam) != p:
            raise IngestError(f"expected {p} entries", _ptr(tp, "char"))
        items.append(((lam, m), dec_scalar(_get(t, "coeff", tp), _ptr(tp, "coeff"))))
    try:
        return GradedJet(p, cutoff, items)
    except ValueError as exc:
        raise IngestError(str(exc), ptr) from None


def enc_tcw(X: TCWComplex) -> Dict:
    return {"cells": [{"dim": c.dim, "isotropy": enc_subgroup(c.isotropy)} for c in X.cells]}


def dec_tcw(obj, G, ptr) -> TCWComplex:
    cells = []
    for i, c in enumerate(_get(obj, "cells", ptr, list)):
        cp = _ptr(ptr, "cells", i)
        dim = _int(_get(c, "dim", cp), _ptr(cp, "dim"))
        if dim < 0:
            raise IngestError("cell dimension must be nonnegative", _ptr(cp, "dim"))
        cells.append(Cell(dim, dec_subgroup(_get(c, "isotropy", cp), G, _ptr(cp, "isotropy"))))
    return TCWComplex(G, tuple(cells))


def enc_graph(Gr: MomentGraph) -> Dict:
    out = {"vertices": list(Gr.vertices),
           "edges": [{"u": e.u, "v": e.v, "w": list(e.weight)} for e in Gr.edges]}
    if Gr.orbits:
        out["orbits"] = {v: enc_subgroup(M) for v, M in sorted(Gr.orbits.items())}
    return out


def dec_graph(obj, G, ptr) -> MomentGraph:
    verts = _get(obj, "vertices", ptr, list)
    for i, v in enumerate(verts):
        if not isinstance(v, str):
            raise IngestError("vertex labels are strings", _ptr(ptr, "vertices", i))
    orbits = {}
    for v, M in (obj.get("orbits") or {}).items():
        orbits[v] = dec_subgroup(M, G, _ptr(ptr, "orbits", v))
    edges = []
    for i, e in enumerate(_get(obj, "edges", ptr, list)):
        ep = _ptr(ptr, "edges", i)
        u = _get(e, "u", ep, str)
        v = _get(e, "v", ep, str)
        w = _intvec(_get(e, "w", ep), _ptr(ep, "w"), G.ngens)
        try:
            MomentGraph(G, tuple(verts), (Edge(u, v, w),), orbits)
        except ValueError as exc:
            raise IngestError(str(exc), ep) from None
        edges.append(Edge(u, v, w))
    try:
        return MomentGraph(G, tuple(verts), tuple(edges), orbits)
    except ValueError as exc:
        raise IngestError(str(exc), ptr) from None


def enc_cover(C: Cover) -> Dict:
    return {"collection": [enc_subgroup(M) for M in C.collection],
            "balls": [{"center": enc_point(b.center), "radius": fmt_rational(b.radius)} for b in C.balls]}


def dec_cover(obj, G, ptr) -> Cover:
    coll = [dec_subgroup(M, G, _ptr(ptr, "collection", i)) for i, M in enumerate(obj.get("collection", []))]
    balls = []
    for i, b in enumerate(_get(obj, "balls", ptr, list)):
        bp = _ptr(ptr, "balls", i)
        center = dec_point(_get(b, "center", bp), G, _ptr(bp, "center"))
        r = parse_rational(_get(b, "radius", bp), _ptr(bp, "radius"))
        if not (0 < r < Fraction(1, 2)):
            raise IngestError(f"radius {r} must satisfy 0 < r < 1/2", _ptr(bp, "radius"))
        balls.append(Ball(center, r))
    if not balls:
        raise IngestError("a cover needs at least one ball", _ptr(ptr, "balls"))
    try:
        return Cover(tuple(balls), tuple(coll))
    except ValueError as exc:
        raise IngestError(str(exc), ptr) from None


def enc_bundle(E: EquivariantBundle) -> Dict:
    out = {}
    for v in sorted(E.summands_by_vertex):
        items = []
        for s in E.summands_by_vertex[v]:
            d = {"char": list(s.character)}
            if s.aux is not None:
                d["aux"] = enc_jet(s.aux)
            items.append(d)
        out[v] = items
    return {"summands_by_vertex": out}


def dec_bundle(obj, G, ptr) -> EquivariantBundle:
    data = _get(obj, "summands_by_vertex", ptr, dict)
    out = {}
    for v, items in data.items():
        vp = _ptr(ptr, "summands_by_vertex", v)
        if not isinstance(items, list):
            raise IngestError("expected a list of summands", vp)
        summ = []
        for i, s in enumerate(items):
            sp = _ptr(vp, i)
            ch = _intvec(_get(s, "char", sp), _ptr(sp, "char"), G.ngens)
            aux = dec_jet(s["aux"], _ptr(sp, "aux"), G.free_rank) if "aux" in s else None
            summ.append(LineSummand(ch, aux))
        out[v] = tuple(summ)
    try:
        return EquivariantBundle(G, out)
    except ValueError as exc:
        raise IngestError(str(exc), ptr) from None


def enc_class(cls: Dict[str, Any]) -> Dict:
    ent = {}
    theory = "H"
    for v in sorted(cls):
        x = cls[v]
        if isinstance(x, LaurentElement):
            theory = "K"
            ent[v] = enc_laurent(x)
        else:
            ent[v] = enc_jet(x)
    return {"theory": theory, "entries": ent}


def dec_class(obj, G, ptr, theory=None) -> Dict[str, Any]:
    theory = (obj.get("theory") or theory or "").upper()
    if theory not in ("H", "K"):
        raise IngestError("theory must be \"H\" or \"K\"", _ptr(ptr, "theory"))
    ent = _get(obj, "entries", ptr, dict)
    out = {}
    for v, x in ent.items():
        ep = _ptr(ptr, "entries", v)
        out[v] = dec_laurent(x, G, ep) if theory == "K" else dec_jet(x, ep, G.free_rank)
    return out


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: Tuple[Tuple[int, ...], ...]
    max_cones: Tuple[Tuple[int, ...], ...]


def enc_fan(F: Fan) -> Dict:
    return {"dim": F.dim, "rays": [list(r) for r in F.rays], "max_cones": [list(c) for c in F.max_cones]}


def dec_fan(obj, ptr="/") -> Fan:
    n = _int(_get(obj, "dim", ptr), _ptr(ptr, "dim"))
    rays = tuple(_intvec(r, _ptr(ptr, "rays", i), n) for i, r in enumerate(_get(obj, "rays", ptr, list)))
    cones = tuple(_intvec(c, _ptr(ptr, "max_cones", i)) for i, c in enumerate(_get(obj, "max_cones", ptr, list)))
    for i, c in enumerate(cones):
        for k, r in enumerate(c):
            if not 0 <= r < len(rays):
                raise IngestError(f"ray index {r} out of range", _ptr(ptr, "max_cones", i, k))
    return Fan(n, rays, cones)


# documents

def to_document(kind: str, value, group: DualGroup | None = None, **extra) -> Dict:
    doc: Dict[str, Any] = {"schema": SCHEMA, "kind": kind}
    if group is not None:
        doc["group"] = enc_group(group)
    if kind == "group":
        doc.update(enc_group(value))
    elif kind == "subgroup":
        doc.update(enc_subgroup(value))
    elif kind == "point":
        doc.update(enc_point(value))
    elif kind == "points":
        doc["points"] = [enc_point(a) for a in value]
    elif kind == "tcw":
        doc.update(enc_tcw(value))
    elif kind == "graph":
        doc.update(enc_graph(value))
    elif kind == "cover":
        doc.update(enc_cover(value))
    elif kind == "bundle":
        doc.update(enc_bundle(value))
    elif kind == "class":
        doc.update(enc_class(value))
    elif kind == "classes":
        encs = [enc_class(c) for c in value]
        doc["theory"] = encs[0]["theory"] if encs else "H"
        doc["items"] = [{"entries": e["entries"]} for e in encs]
    elif kind == "laurent":
        doc.update(enc_laurent(value))
    elif kind == "jet":
        doc.update(enc_jet(value))
    elif kind == "fan":
        doc.update(enc_fan(value))
    elif kind == "model":
        doc["graph"] = enc_graph(value.graph)
        doc["cover"] = enc_cover(value.cover)
        doc["cutoff"] = value.cutoff
    else:
        raise ValueError(f"unknown document kind {kind!r}")
    doc.update(extra)
    return doc


def _group_of(doc, ptr="/") -> DualGroup:
    if "group" not in doc:
        raise IngestError("missing key 'group'", ptr)
    return dec_group(doc["group"], _ptr(ptr, "group"))


def from_document(doc) -> Tuple[str, Any]:
    """Validate and decode a document; returns (kind, value)."""
    if not isinstance(doc, dict):
        raise IngestError("top level must be an object", "/")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise IngestError(f"unsupported schema {schema!r}; expected {SCHEMA!r}", "/schema")
    kind = _get(doc, "kind", "/", str)
    if kind == "group":
        return kind, dec_group(doc, "/")
    if kind == "fan":
        return kind, dec_fan(doc, "/")
    if kind == "jet":
        return kind, dec_jet(doc, "/")
    G = _group_of(doc)
    if kind == "subgroup":
        return kind, dec_subgroup(doc, G, "/")
    if kind == "point":
        return kind, dec_point(doc, G, "/")
    if kind == "points":
        pts = [dec_point(a, G, _ptr("/points", i)) for i, a in enumerate(_get(doc, "points", "/", list))]
        return kind, pts
    if kind == "tcw":
        return kind, dec_tcw(doc, G, "/")
    if kind == "graph":
        return kind, dec_graph(doc, G, "/")
    if kind == "cover":
        return kind, dec_cover(doc, G, "/")
    if kind == "bundle":
        return kind, dec_bundle(doc, G, "/")
    if kind == "class":
        return kind, dec_class(doc, G, "/")
    if kind == "classes":
        items = _get(doc, "items", "/", list)
        return kind, [dec_class(it, G, _ptr("/items", i), doc.get("theory")) for i, it in enumerate(items)]
    if kind == "laurent":
        return kind, dec_laurent(doc, G, "/")
    if kind == "model":
        graph = dec_graph(_get(doc, "graph", "/", dict), G, "/graph")
        cover = dec_cover(_get(doc, "cover", "/", dict), G, "/cover")
        cutoff = _int(doc.get("cutoff", 6), "/cutoff")
        try:
            return kind, SheafModel(graph, cover, cutoff)
        except ValueError as exc:
            raise IngestError(str(exc), "/") from None
    raise IngestError(f"unknown kind {kind!r}", "/kind")


def load_document(path) -> Tuple[str, Any]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc.strerror}", "/") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IngestError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", "/") from None
    return from_document(doc)


def load_model(path):
    """Load any JSON-described value; the document kind decides the type."""
    return load_document(path)[1]


def dumps(doc: Dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def save(path, doc: Dict) -> None:
    Path(path).write_text(dumps(doc))


# fans


class FanError(IngestError):
    pass


def _det(M: Sequence[Sequence[int]]) -> int:
    _, D, _ = intmat.smith_normal_form([list(r) for r in M], len(M))
    n = len(M)
    if len(D) < n or any(D[i][i] == 0 for i in range(n)):
        return 0
    out = 1
    for i in range(n):
        out *= D[i][i]
    return out


def fan_to_graph(F: Fan) -> MomentGraph:
    """Moment graph of the smooth complete toric variety of F."""
    n = F.dim
    for i, r in enumerate(F.rays):
        if len(r) != n:
            raise FanError(f"ray {i} has {len(r)} entries", f"/rays/{i}")
        if not any(r) or intmat_gcd(r) != 1:
            raise FanError(f"ray {i} is not primitive", f"/rays/{i}")
    duals = []
    for i, c in enumerate(F.max_cones):
        if len(c) != n or len(set(c)) != n:
            raise FanError(f"cone {i} must have {n} distinct rays", f"/max_cones/{i}")
        R = [list(F.rays[k]) for k in c]
        if _det(R) != 1:
            raise FanError(f"cone {i} is not smooth (rays do not form a lattice basis)", f"/max_cones/{i}")
        duals.append(intmat.unimodular_inverse(intmat.transpose(R)))
    facets: Dict[frozenset, List[int]] = {}
    for i, c in enumerate(F.max_cones):
        for f in combinations(c, n - 1):
            facets.setdefault(frozenset(f), []).append(i)
    for f, owners in facets.items():
        if len(owners) != 2:
            raise FanError(f"facet {sorted(f)} lies on {len(owners)} maximal cones; the fan is not complete",
                           f"/max_cones/{owners[0]}")
    G = DualGroup(n)
    verts = tuple(f"c{i}" for i in range(len(F.max_cones)))
    edges = []
    for f, (i, j) in sorted(facets.items(), key=lambda kv: sorted(kv[1])):
        c = F.max_cones[i]
        k = next(pos for pos, r in enumerate(c) if r not in f)
        w = tuple(duals[i][k])
        edges.append(Edge(verts[i], verts[j], w))
    return MomentGraph(G, verts, tuple(edges))


def intmat_gcd(v) -> int:
    from math import gcd
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def graphs_isomorphic(A: MomentGraph, B: MomentGraph) -> bool:
    """Same weighted graph up to relabeling vertices and flipping weight signs."""
    if A.ambient != B.ambient or len(A.vertices) != len(B.vertices) or len(A.edges) != len(B.edges):
        return False

    def norm(w):
        w = tuple(w)
        neg = tuple(-x for x in w)
        return max(w, neg)

    target = sorted((frozenset((e.u, e.v)), norm(e.weight)) for e in B.edges)
    target = sorted((tuple(sorted(s)), w) for s, w in target)
    for perm in permutations(B.vertices):
        m = dict(zip(A.vertices, perm))
        mapped = sorted((tuple(sorted((m[e.u], m[e.v]))), norm(e.weight)) for e in A.edges)
        if mapped == target:
            return True
    return False


# bundled examples

S1 = DualGroup(1)
T2 = DualGroup(2)


def point_graph(G: DualGroup = S1) -> MomentGraph:
    return MomentGraph(G, ("pt",), ())


def cp1_graph() -> MomentGraph:
    return MomentGraph(S1, ("N", "S"), (Edge("N", "S", (1,)),))


def cp2_graph() -> MomentGraph:
    return MomentGraph(T2, ("p1", "p2", "p3"), (
        Edge("p1", "p2", (1, 0)), Edge("p1", "p3", (0, 1)), Edge("p2", "p3", (1, -1))))


def cp1xcp1_graph() -> MomentGraph:
    return product_graph(cp1_graph(), cp1_graph())


def fan_cp1() -> Fan:
    return Fan(1, ((1,), (-1,)), ((0,), (1,)))


def fan_cp2() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (2, 0)))


def fan_cp1xcp1() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (3, 0)))


def s1_zn_graph(n: int) -> MomentGraph:
    """The orbit S^1/Z_n as a single orbit vertex."""
    return MomentGraph(S1, ("orbit",), (), {"orbit": canonical_subgroup(S1, [[n]])})


def s1_zn_tcw(n: int) -> TCWComplex:
    return TCWComplex(S1, (Cell(0, canonical_subgroup(S1, [[n]])),))


def cp1_tcw() -> TCWComplex:
    fixed = canonical_subgroup(S1, [])
    return TCWComplex(S1, (Cell(0, fixed), Cell(0, fixed), Cell(1, full_subgroup(S1))))


def zm_zl_graph(m: int, l: int) -> MomentGraph:
    """The orbit Z_m/Z_l of the finite group Z_m; its annihilator is generated by l."""
    if m % l:
        raise ValueError(f"Z_{l} is not a subgroup of Z_{m}")
    G = DualGroup(0, (m,))
    return MomentGraph(G, ("orbit",), (), {"orbit": canonical_subgroup(G, [[l]])})


def torsion_points(G: DualGroup, n: int) -> List[TorsionPoint]:
    """All points of C_T whose coordinates have denominator dividing n (and valid on torsion)."""
    from itertools import product as iprod
    ranges = [[Fraction(j, n) for j in range(n)]] * G.free_rank + [[Fraction(j, m) for j in range(m)] for m in G.torsion]
    return [TorsionPoint(G, c) for c in iprod(*ranges)]


def s1_zn_samples(n: int) -> List[TorsionPoint]:
    pts = {Fraction(j, n) for j in range(n)}
    pts |= {Fraction(1, 2 * n), Fraction(1, 8 * n), Fraction(3, 20 * n)}
    return [TorsionPoint(S1, (x,)) for x in sorted(pts)]


def cp2_samples() -> List[TorsionPoint]:
    F = Fraction
    pts = [(0, 0), (F(1, 2), 0), (0, F(1, 2)), (F(1, 2), F(1, 2)), (F(1, 3), F(1, 3)), (F(1, 12), 0),
           (F(1, 12) + F(1, 300), 0), (F(1, 12) + F(1, 300), F(1, 400))]
    return [TorsionPoint(T2, p) for p in pts]


def cp1_samples() -> List[TorsionPoint]:
    F = Fraction
    return [TorsionPoint(S1, (x,)) for x in (F(0), F(1, 16), F(1, 8), F(3, 8), F(1, 2), F(1, 2) + F(1, 40))]


def model_for(graph: MomentGraph, samples: Sequence[TorsionPoint], cutoff: int = 6) -> SheafModel:
    A = graph_collection(graph)
    return SheafModel(graph, build_adapted(A, list(samples)), cutoff)


def s1_zn_model(n: int, cutoff: int = 6) -> SheafModel:
    return model_for(s1_zn_graph(n), s1_zn_samples(n), cutoff)


def zm_zl_model(m: int, l: int, cutoff: int = 0) -> SheafModel:
    G = zm_zl_graph(m, l)
    return model_for(G, torsion_points(G.ambient, m), cutoff)


def cp1_model(cutoff: int = 6) -> SheafModel:
    return model_for(cp1_graph(), cp1_samples(), cutoff)


def cp2_model(cutoff: int = 6) -> SheafModel:
    return model_for(cp2_graph(), cp2_samples(), cutoff)


def standard_character_bundle(graph: MomentGraph) -> EquivariantBundle:
    """The line with character e_1 over every vertex (for S^1/Z_n this is z)."""
    G = graph.ambient
    e1 = tuple(int(i == 0) for i in range(G.ngens))
    return EquivariantBundle.uniform(G, graph.vertices, [e1])


def trivial_bundle(graph: MomentGraph) -> EquivariantBundle:
    return EquivariantBundle.uniform(graph.ambient, graph.vertices, [graph.ambient.zero()])


def cp1_tautological() -> EquivariantBundle:
    """Vertex characters 0 at N and 1 at S."""
    return EquivariantBundle(S1, {"N": (LineSummand((0,)),), "S": (LineSummand((1,)),)})


def cp2_hyperplane() -> EquivariantBundle:
    return EquivariantBundle(T2, {"p1": (LineSummand((0, 0)),), "p2": (LineSummand((1, 0)),),
                                  "p3": (LineSummand((0, 1)),)})


def cp2_generators() -> List[Dict[str, GradedJet]]:
    """1, x, x^2 with x = (0, u1, u2)."""
    P = lambda m: GradedJet.polynomial(2, None, m)
    one = {v: P({(0, 0): 1}) for v in ("p1", "p2", "p3")}
    x = {"p1": P({}), "p2": P({(1, 0): 1}), "p3": P({(0, 1): 1})}
    return [one, x, {v: x[v] * x[v] for v in x}]


def cp1_k_generators() -> List[Dict[str, LaurentElement]]:
    """1 and the tautological class L = (1, z)."""
    L = lambda t: LaurentElement(S1, t)
    return [{"N": L({(0,): 1}), "S": L({(0,): 1})}, {"N": L({(0,): 1}), "S": L({(1,): 1})}]


def bad_cover(condition: int) -> Cover:
    """A small cover over S^1 that violates exactly the given adaptedness condition."""
    F = Fraction
    P = lambda x: TorsionPoint(S1, (x,))
    two = canonical_subgroup(S1, [[2]])
    three = canonical_subgroup(S1, [[3]])
    if condition == 1:
        return Cover((Ball(P(0), F(1, 2)),), (two,))
    if condition == 2:
        return Cover((Ball(P(F(1, 2)), F(1, 5)), Ball(P(F(1, 3)), F(1, 5))), (two, three))
    if condition == 3:
        return Cover((Ball(P(0), F(1, 100)), Ball(P(F(1, 4)), F(3, 8))), (two,))
    if condition == 4:
        eps = F(1, 100)
        return Cover((Ball(P(0), F(1, 2) - eps), Ball(P(F(1, 2)), F(1, 2) - eps)), (two,))
    raise ValueError("condition must be 1, 2, 3 or 4")


def example_models() -> Dict[str, Tuple[str, Any, DualGroup | None]]:
    """Named documents shipped with the CLI (kind, value, group)."""
    out: Dict[str, Tuple[str, Any, DualGroup | None]] = {
        "cp1-graph": ("graph", cp1_graph(), S1),
        "cp2-graph": ("graph", cp2_graph(), T2),
        "cp1xcp1-graph": ("graph", cp1xcp1_graph(), T2),
        "point-graph": ("graph", point_graph(), S1),
        "cp1-fan": ("fan", fan_cp1(), None),
        "cp2-fan": ("fan", fan_cp2(), None),
        "cp1xcp1-fan": ("fan", fan_cp1xcp1(), None),
        "cp1-tcw": ("tcw", cp1_tcw(), S1),
        "cp1-model": ("model", cp1_model(), S1),
        "cp2-model": ("model", cp2_model(), T2),
        "cp1-tautological": ("bundle", cp1_tautological(), S1),
        "cp2-hyperplane": ("bundle", cp2_hyperplane(), T2),
        "cp2-generators": ("classes", cp2_generators(), T2),
        "cp1-k-generators": ("classes", cp1_k_generators(), S1),
    }
    for n in (2, 3, 4, 5, 6):
        out[f"s1-z{n}-model"] = ("model", s1_zn_model(n), S1)
        out[f"s1-z{n}-tcw"] = ("tcw", s1_zn_tcw(n), S1)
        out[f"s1-z{n}-bundle"] = ("bundle", standard_character_bundle(s1_zn_graph(n)), S1)
    for m, l in ((4, 2), (6, 3), (6, 2)):
        g = zm_zl_graph(m, l)
        out[f"z{m}-z{l}-model"] = ("model", zm_zl_model(m, l), g.ambient)
        out[f"z{m}-z{l}-bundle"] = ("bundle", standard_character_bundle(g), g.ambient)
    for c in (2, 3, 4):  # the condition-1 fixture has radius 1/2, which the loader refuses
        out[f"bad-cover-{c}"] = ("cover", bad_cover(c), S1)
    out["cp1-samples"] = ("points", cp1_samples(), S1)
    out["cp2-samples"] = ("points", cp2_samples(), T2)
    return out
