"""Moment graphs, GKM membership, image bases and the Chang-Skjelbred comparison.

Besides isolated fixed points a graph may carry orbit vertices T/L, recorded by
the annihilator M_L.  Their cohomology is Q[u] modulo the linear forms of M_L,
kept in a normal form where pivot variables are eliminated.  Edges join fixed
points only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra.jet import GradedJet, divide_by_linear, restrict_to_hyperplane, substitute_linear
from .algebra.laurent import LaurentElement, divide_by_euler
from .algebra.linalg import nullspace, rank, rref, span_contains
from .lattice import DualGroup, LatticeError, Subgroup, TorsionPoint, canonical_subgroup, in_subvariety
from .parallel import pmap

Vector = Tuple[int, ...]


class GraphError(ValueError):
    pass


def is_primitive(ambient: DualGroup, w: Sequence[int]) -> bool:
    """w is not a proper multiple k*x (k >= 2) of another element."""
    w = ambient.reduce(w)
    g = 0
    for a in ambient.free_part(w):
        g = gcd(g, a)
    for q in range(2, g + 1):
        if g % q:
            continue
        if all(t % gcd(q, m) == 0 for t, m in zip(w[ambient.free_rank:], ambient.torsion)):
            return False
    return True


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    weight: Vector


@dataclass(frozen=True)
class MomentGraph:
    ambient: DualGroup
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()
    orbits: Mapping[str, Subgroup] = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("vertex labels must be distinct")
        object.__setattr__(self, "vertices", verts)
        orbits = dict(self.orbits)
        for v, M in orbits.items():
            if v not in verts:
                raise GraphError(f"orbit data for unknown vertex {v!r}")
            if M.ambient != self.ambient:
                raise GraphError(f"orbit annihilator at {v!r} lives in another group")
        object.__setattr__(self, "orbits", orbits)
        edges = []
        for e in self.edges:
            w = self.ambient.reduce(e.weight)
            if e.u not in verts or e.v not in verts:
                raise GraphError(f"edge {e.u}-{e.v} names an unknown vertex")
            if e.u == e.v:
                raise GraphError(f"self-loop at {e.u}")
            if e.u in orbits or e.v in orbits:
                raise GraphError(f"edge {e.u}-{e.v} touches an orbit vertex; only fixed points carry edges")
            if not self.ambient.has_infinite_order(w):
                raise GraphError(f"edge {e.u}-{e.v} has weight {list(w)} of finite order")
            if not is_primitive(self.ambient, w):
                raise GraphError(f"edge {e.u}-{e.v} has non-primitive weight {list(w)}")
            edges.append(Edge(e.u, e.v, w))
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def p(self) -> int:
        return self.ambient.free_rank

    def annihilator(self, v: str) -> Subgroup:
        """M_L for the vertex T/L; the zero subgroup for a fixed point."""
        M = self.orbits.get(v)
        return M if M is not None else canonical_subgroup(self.ambient, [])

    def is_fixed_point(self, v: str) -> bool:
        return v not in self.orbits

    def fixed_subgraph(self, alpha: TorsionPoint) -> "MomentGraph":
        """Vertices of X^alpha and the edges whose weight alpha kills."""
        verts = [v for v in self.vertices if self.is_fixed_point(v) or in_subvariety(alpha, self.orbits[v])]
        edges = [e for e in self.edges if alpha(e.weight) == 0]
        return MomentGraph(self.ambient, tuple(verts), tuple(edges),
                           {v: M for v, M in self.orbits.items() if v in verts})

    def restricted_to(self, vertices: Sequence[str], edges: Sequence[Edge]) -> "MomentGraph":
        return MomentGraph(self.ambient, tuple(vertices), tuple(edges),
                           {v: M for v, M in self.orbits.items() if v in vertices})


# vertex rings for orbit vertices


def _free_relations(M: Subgroup) -> List[List[Fraction]]:
    p = M.ambient.free_rank
    rows = [[Fraction(x) for x in b[:p]] for b in M.basis if any(b[:p])]
    R, _ = rref(rows, p) if rows else ([], [])
    return R


def vertex_projection(G: MomentGraph, v: str) -> Tuple[List[List[Fraction]], List[int]]:
    """Matrix P with u -> P u the normal-form substitution at v, and the surviving variables."""
    p = G.p
    R = _free_relations(G.annihilator(v))
    P = [[Fraction(int(i == j)) for j in range(p)] for i in range(p)]
    pivots = []
    for row in R:
        piv = next(j for j, x in enumerate(row) if x)
        pivots.append(piv)
        P[piv] = [-x if j != piv else Fraction(0) for j, x in enumerate(row)]
    # pivots are expressed through free variables only (row reduced form)
    return P, [j for j in range(p) if j not in pivots]


def reduce_at_vertex(G: MomentGraph, v: str, f: GradedJet) -> GradedJet:
    if G.is_fixed_point(v) or not _free_relations(G.annihilator(v)):
        return f
    P, _ = vertex_projection(G, v)
    return substitute_linear(f, P, G.p)


def monomials(p: int, d: int, allowed: Sequence[int] | None = None) -> List[Tuple[int, ...]]:
    """Exponent vectors of total degree d in the allowed variables, lexicographically descending."""
    allowed = list(range(p)) if allowed is None else list(allowed)
    out = []

    def rec(i, left, cur):
        if i == len(allowed):
            if left == 0:
                m = [0] * p
                for var, e in zip(allowed, cur):
                    m[var] = e
                out.append(tuple(m))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, cur + [e])

    rec(0, d, [])
    return out


# theories


class HTheory:
    """Homogeneous degree-d polynomial classes; edge condition: the weight's linear form divides."""

    name = "H"

    def __init__(self, G: MomentGraph, degree: int):
        if degree < 0:
            raise GraphError("degree must be nonnegative")
        self.G, self.degree = G, degree
        self._keys = {}
        for v in G.vertices:
            _, free = vertex_projection(G, v)
            self._keys[v] = monomials(G.p, degree, free)

    def keys(self, v: str):
        return self._keys[v]

    def edge_rows(self, e: Edge) -> List[Dict[Tuple[str, object], Fraction]]:
        rows: Dict[Tuple[int, ...], Dict] = {}
        for sign, vert in ((1, e.u), (-1, e.v)):
            for m in self._keys[vert]:
                r = restrict_to_hyperplane(GradedJet.polynomial(self.G.p, None, {m: 1}), e.weight[: self.G.p])
                for (_, m2), c in r.terms.items():
                    row = rows.setdefault(m2, {})
                    row[(vert, m)] = row.get((vert, m), 0) + sign * c
        return list(rows.values())

    def element(self, coeffs: Mapping[Tuple[str, object], Fraction]) -> Dict[str, GradedJet]:
        out = {v: GradedJet(self.G.p, None, {}) for v in self.G.vertices}
        for (v, m), c in coeffs.items():
            if c:
                out[v] = out[v] + GradedJet.polynomial(self.G.p, None, {m: c})
        return out

    def coordinates(self, cls: Mapping[str, GradedJet]) -> Dict[Tuple[str, object], Fraction]:
        out = {}
        for v in self.G.vertices:
            f = reduce_at_vertex(self.G, v, cls[v])
            if not f.is_polynomial():
                raise GraphError("H classes must be polynomial")
            for m, c in f.monomials().items():
                if sum(m) != self.degree:
                    raise GraphError(f"class entry at {v} is not homogeneous of degree {self.degree}")
                out[(v, m)] = Fraction(c) if not hasattr(c, "to_fraction") else c.to_fraction()
        return out


class KTheory:
    """Laurent classes with free exponents in [-W, W]^p; edge condition: 1 - z^w divides."""

    name = "K"

    def __init__(self, G: MomentGraph, window: int):
        if window < 0:
            raise GraphError("window must be nonnegative")
        for v in G.vertices:
            if not G.is_fixed_point(v):
                raise GraphError("K-theory windows are modeled on fixed points only")
        self.G, self.window = G, window
        amb = G.ambient
        box = [range(-window, window + 1)] * amb.free_rank + [range(m) for m in amb.torsion]
        self._keys = [tuple(e) for e in product(*box)]

    def keys(self, v: str):
        return self._keys

    def edge_rows(self, e: Edge) -> List[Dict[Tuple[str, object], Fraction]]:
        amb = self.G.ambient
        rows: Dict[Vector, Dict] = {}
        for sign, vert in ((1, e.u), (-1, e.v)):
            for x in self._keys:
                res = divide_by_euler(LaurentElement.monomial(amb, x), e.weight)
                (r, _), = res.witness.items()
                row = rows.setdefault(r, {})
                row[(vert, x)] = row.get((vert, x), 0) + sign
        return list(rows.values())

    def element(self, coeffs) -> Dict[str, LaurentElement]:
        amb = self.G.ambient
        out = {v: {} for v in self.G.vertices}
        for (v, x), c in coeffs.items():
            if c:
                out[v][x] = c
        return {v: LaurentElement(amb, t) for v, t in out.items()}

    def coordinates(self, cls: Mapping[str, LaurentElement]) -> Dict[Tuple[str, object], Fraction]:
        out = {}
        keys = set(self._keys)
        for v in self.G.vertices:
            for x, c in cls[v].terms.items():
                if x not in keys:
                    raise GraphError(f"exponent {list(x)} at {v} lies outside the window {self.window}")
                out[(v, x)] = c.to_fraction()
        return out


def make_theory(G: MomentGraph, theory: str, size: int):
    t = theory.upper()
    if t == "H":
        return HTheory(G, size)
    if t == "K":
        return KTheory(G, size)
    raise GraphError(f"unknown theory {theory!r}; expected H or K")


def _columns(th) -> List[Tuple[str, object]]:
    return [(v, k) for v in th.G.vertices for k in th.keys(v)]


def _matrix(rows: Sequence[Mapping], cols: Sequence) -> List[List[Fraction]]:
    idx = {c: i for i, c in enumerate(cols)}
    out = []
    for r in rows:
        vec = [Fraction(0)] * len(cols)
        for k, c in r.items():
            vec[idx[k]] += c
        if any(vec):
            out.append(vec)
    return out


def constraint_matrix(th, edges: Sequence[Edge] | None = None):
    cols = _columns(th)
    rows = []
    for e in (th.G.edges if edges is None else edges):
        rows.extend(th.edge_rows(e))
    return _matrix(rows, cols), cols


def image_vectors(th) -> Tuple[List[List[Fraction]], List]:
    M, cols = constraint_matrix(th)
    return nullspace(M, len(cols)), cols


def image_basis(G: MomentGraph, theory: str, size: int) -> List[Dict[str, object]]:
    """Basis of the GKM space (degree ``size`` for H, window ``size`` for K)."""
    th = make_theory(G, theory, size)
    vecs, cols = image_vectors(th)
    if not cols:
        if theory.upper() == "K":
            raise GraphError("empty window")
        return []
    return [th.element(dict(zip(cols, v))) for v in vecs]


def graded_dimensions(G: MomentGraph, max_degree: int) -> List[int]:
    def dim(d):
        return len(image_vectors(HTheory(G, d))[0])
    return pmap(dim, list(range(max_degree + 1)))


@dataclass
class EdgeFailure:
    edge: Edge
    witness: object


@dataclass
class ClassCheck:
    ok: bool
    failures: List[EdgeFailure]
    quotients: Dict[Tuple[str, str], object]


def check_class(G: MomentGraph, cls: Mapping[str, object]) -> ClassCheck:
    """GKM test on every edge, for a K class (Laurent entries) or an H class (polynomial entries)."""
    missing = [v for v in G.vertices if v not in cls]
    if missing:
        raise GraphError(f"class is undefined at {missing}")
    failures, quotients = [], {}
    for e in G.edges:
        a, b = cls[e.u], cls[e.v]
        if isinstance(a, LaurentElement):
            res = divide_by_euler(a - b, e.weight)
            if res.divisible:
                quotients[(e.u, e.v)] = res.quotient
            else:
                failures.append(EdgeFailure(e, res.witness))
        else:
            diff = a - b
            if diff.is_zero():
                quotients[(e.u, e.v)] = diff
                continue
            if not diff.is_polynomial():
                r = restrict_to_hyperplane(diff, e.weight[: G.p])
                if r.is_zero():
                    quotients[(e.u, e.v)] = None
                else:
                    failures.append(EdgeFailure(e, r))
                continue
            res = divide_by_linear(diff.with_cutoff(None), e.weight[: G.p])
            if res.divisible:
                quotients[(e.u, e.v)] = res.quotient
            else:
                failures.append(EdgeFailure(e, res.witness))
    return ClassCheck(not failures, failures, quotients)


# Chang-Skjelbred comparison


@dataclass
class CSResult:
    equal: bool
    per_size: Dict[int, Tuple[int, int]]  # size -> (dim of generated span, dim of GKM space)
    first_gap: int | None = None

    def describe(self) -> str:
        if self.equal:
            return "equal"
        s, (a, b) = self.first_gap, self.per_size[self.first_gap]
        return f"strict inclusion at {s}: generated span has dimension {a}, GKM space {b}"


def _homogeneous_degree(cls: Mapping[str, GradedJet]) -> int:
    degs = set()
    for f in cls.values():
        if f.is_zero():
            continue
        ds = {sum(m) for (_, m) in f.terms}
        if len(ds) > 1:
            raise GraphError("H generators must be homogeneous")
        degs |= ds
    if len(degs) > 1:
        raise GraphError("H generator entries have different degrees")
    return degs.pop() if degs else 0


def _span_vectors(G: MomentGraph, th, generators: Sequence[Mapping]) -> List[List[Fraction]]:
    cols = _columns(th)
    idx = {c: i for i, c in enumerate(cols)}
    vecs = []
    if th.name == "H":
        for g in generators:
            e = _homogeneous_degree(g)
            if e > th.degree:
                continue
            for m in monomials(G.p, th.degree - e):
                mono = GradedJet.polynomial(G.p, None, {m: 1})
                prod_cls = {v: mono * g[v] for v in G.vertices}
                vecs.append(_dense(th.coordinates(prod_cls), idx))
    else:
        amb = G.ambient
        W = th.window
        for g in generators:
            exps = [x for v in G.vertices for x in g[v].terms]
            box = [range(-2 * W - 1, 2 * W + 2)] * amb.free_rank + [range(m) for m in amb.torsion]
            for shift in product(*box):
                if exps and not all(all(abs(a + s) <= W for a, s in zip(x[: amb.free_rank], shift))
                                    for x in exps):
                    continue
                mono = LaurentElement.monomial(amb, shift)
                prod_cls = {v: mono * g[v] for v in G.vertices}
                vecs.append(_dense(th.coordinates(prod_cls), idx))
    return vecs


def _dense(coords: Mapping, idx: Mapping) -> List[Fraction]:
    vec = [Fraction(0)] * len(idx)
    for k, c in coords.items():
        vec[idx[k]] += c
    return vec


def cs_compare(G: MomentGraph, generators: Sequence[Mapping], theory: str, sizes: Sequence[int]) -> CSResult:
    """Compare the span generated by global classes with the GKM space, size by size."""
    for i, g in enumerate(generators):
        chk = check_class(G, g)
        if not chk.ok:
            raise GraphError(f"generator {i} fails the GKM condition on edge "
                             f"{chk.failures[0].edge.u}-{chk.failures[0].edge.v}")
    per, gap = {}, None
    for s in sizes:
        th = make_theory(G, theory, s)
        gkm_vecs, cols = image_vectors(th)
        span = _span_vectors(G, th, generators)
        r_span = rank(span, len(cols)) if span else 0
        inside = span_contains(gkm_vecs, span, len(cols)) if span else True
        covers = span_contains(span, gkm_vecs, len(cols)) if gkm_vecs else True
        per[s] = (r_span, len(gkm_vecs))
        if not (inside and covers and r_span == len(gkm_vecs)) and gap is None:
            gap = s
    return CSResult(gap is None, per, gap)


# splitting lemma, vertex-visible part


@dataclass
class SplittingReport:
    size: int
    edgewise_dim: int
    image_dim: int
    gkm_dim: int
    image_equals_gkm: bool
    odd_degree: str = "not modeled"

    @property
    def ok(self) -> bool:
        return self.edgewise_dim == self.image_dim and self.image_equals_gkm


def splitting_dimension_check(G: MomentGraph, theory: str, size: int,
                              edges: Sequence[Edge] | None = None) -> SplittingReport:
    """Classes on X_1 given edge by edge, glued at shared fixed points, versus the GKM space.

    ``edges`` presents X_1 (defaults to the graph's edges) and must name the
    same vertex set.
    """
    edges = list(G.edges if edges is None else edges)
    for e in edges:
        if e.u not in G.vertices or e.v not in G.vertices:
            raise GraphError("edge list names vertices outside the graph")
    th = make_theory(G, theory, size)
    vertex_cols = _columns(th)
    # unknowns: one copy of the vertex data per (edge, endpoint), plus isolated vertex data
    touched = {x for e in edges for x in (e.u, e.v)}
    local_cols: List[Tuple] = []
    for i, e in enumerate(edges):
        for vert in (e.u, e.v):
            local_cols += [((i, vert), k) for k in th.keys(vert)]
    for v in G.vertices:
        if v not in touched:
            local_cols += [((None, v), k) for k in th.keys(v)]
    cols = local_cols + [("vertex", c) for c in vertex_cols]
    idx = {c: j for j, c in enumerate(cols)}
    rows = []
    for i, e in enumerate(edges):
        for r in th.edge_rows(e):
            vec = [Fraction(0)] * len(cols)
            for (vert, k), c in r.items():
                vec[idx[((i, vert), k)]] += c
            rows.append(vec)
    for (tag, vert), k in [c for c in local_cols]:
        vec = [Fraction(0)] * len(cols)
        vec[idx[((tag, vert), k)]] = Fraction(1)
        vec[idx[("vertex", (vert, k))]] = Fraction(-1)
        rows.append(vec)
    sol = nullspace(rows, len(cols))
    n_local = len(local_cols)
    images = [v[n_local:] for v in sol]
    image_dim = rank(images, len(vertex_cols)) if images else 0
    gkm_vecs, _ = image_vectors(th)
    same = (len(gkm_vecs) == image_dim
            and (not images or span_contains(gkm_vecs, images, len(vertex_cols)))
            and (not gkm_vecs or span_contains(images, gkm_vecs, len(vertex_cols))))
    return SplittingReport(size, len(sol), image_dim, len(gkm_vecs), same)


def product_graph(G1: MomentGraph, G2: MomentGraph) -> MomentGraph:
    """Fixed points are pairs; edges are (edge x vertex) and (vertex x edge)."""
    A, B = G1.ambient, G2.ambient
    amb = A.direct_sum(B)

    def label(a, b):
        return f"({a},{b})"

    verts = [label(a, b) for a in G1.vertices for b in G2.vertices]
    edges = []
    for e in G1.edges:
        for b in G2.vertices:
            edges.append(Edge(label(e.u, b), label(e.v, b), A.embed_left(B, e.weight)))
    for a in G1.vertices:
        for e in G2.edges:
            edges.append(Edge(label(a, e.u), label(a, e.v), A.embed_right(B, e.weight)))
    orbits = {}
    for a in G1.vertices:
        for b in G2.vertices:
            if not (G1.is_fixed_point(a) and G2.is_fixed_point(b)):
                gens = [A.embed_left(B, g) for g in G1.annihilator(a).basis]
                gens += [A.embed_right(B, g) for g in G2.annihilator(b).basis]
                orbits[label(a, b)] = canonical_subgroup(amb, gens)
    return MomentGraph(amb, tuple(verts), tuple(edges), orbits)


def point_graph(ambient: DualGroup) -> MomentGraph:
    return MomentGraph(ambient, ("pt",), ())


def convolve(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    return [sum(a[k] * b[d - k] for k in range(d + 1) if k < len(a) and d - k < len(b)) for d in range(n)]
