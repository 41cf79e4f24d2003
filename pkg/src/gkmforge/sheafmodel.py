"""Finite model of the sheaf over C_T: stalks, gluing maps, cocycles and global sections.

Stalks are GKM solution spaces on the fixed subgraph at a cover center.
Gluing from alpha to a center beta with alpha preceding beta restricts to the
vertices of the fixed subgraph at beta and then translates every vertex jet by
the branch vector b, the representative of beta - alpha in [-1/2, 1/2)^p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra.cyclo import CycloScalar
from .algebra.jet import GradedJet, translate_jet
from .algebra.linalg import nullspace
from .chern import EquivariantBundle, StalkElement, twisted_germ
from .cover import Cover, balls_overlap, triple_overlap
from .gkm import (HTheory, MomentGraph, _free_relations, check_class, image_vectors, reduce_at_vertex)
from .lattice import Subgroup, TorsionPoint, canonical_subgroup, centered, prec
from .parallel import pmap


class GluingError(ValueError):
    pass


def graph_collection(G: MomentGraph) -> List[Subgroup]:
    """Isotropy annihilators visible in the graph: fixed points, orbit vertices,
    edge spheres, and the span of the tangent weights at each fixed point."""
    amb = G.ambient
    out: List[Subgroup] = []

    def add(M):
        if M not in out:
            out.append(M)

    for v in G.vertices:
        add(G.annihilator(v))
    for e in G.edges:
        add(canonical_subgroup(amb, [e.weight]))
    for v in G.vertices:
        ws = [e.weight for e in G.edges if v in (e.u, e.v)]
        if ws:
            add(canonical_subgroup(amb, ws))
    return out


@dataclass(frozen=True)
class SheafModel:
    graph: MomentGraph
    cover: Cover
    cutoff: int

    def __post_init__(self):
        if self.cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        if self.cover.ambient != self.graph.ambient:
            raise ValueError("cover and graph live over different groups")

    @property
    def collection(self) -> List[Subgroup]:
        return list(self.cover.collection) or graph_collection(self.graph)

    @property
    def centers(self) -> List[TorsionPoint]:
        return self.cover.centers

    def require_center(self, alpha: TorsionPoint) -> None:
        if alpha not in self.cover.centers:
            raise GluingError(f"{alpha} is not a cover center")

    def fixed_graph(self, alpha: TorsionPoint) -> MomentGraph:
        return self.graph.fixed_subgraph(alpha)

    def branch(self, alpha: TorsionPoint, beta: TorsionPoint) -> Tuple[Fraction, ...]:
        return tuple(centered(b - a) for a, b in zip(alpha.free_coords, beta.free_coords))

    def precedes(self, alpha: TorsionPoint, beta: TorsionPoint) -> bool:
        return prec(alpha, beta, self.collection)

    def glue_pairs(self) -> List[Tuple[TorsionPoint, TorsionPoint]]:
        """Overlapping ordered pairs (alpha, beta) with alpha preceding beta."""
        return [(a, b) for a, b in self.cover.overlapping_pairs() if self.precedes(a, b)]


def fixed_subgraph(G: MomentGraph, alpha: TorsionPoint) -> MomentGraph:
    return G.fixed_subgraph(alpha)


@dataclass
class StalkBasis:
    point: TorsionPoint
    by_degree: Dict[int, List[StalkElement]]

    @property
    def elements(self) -> List[StalkElement]:
        return [s for d in sorted(self.by_degree) for s in self.by_degree[d]]

    def dimensions(self) -> List[int]:
        return [len(self.by_degree[d]) for d in sorted(self.by_degree)]

    @property
    def dim(self) -> int:
        return sum(self.dimensions())


def stalk_space(M: SheafModel, alpha: TorsionPoint, max_degree: int | None = None) -> StalkBasis:
    """Graded basis (degrees 0..cutoff) of the GKM space on the fixed subgraph at alpha."""
    M.require_center(alpha)
    D = M.cutoff if max_degree is None else max_degree
    G = M.fixed_graph(alpha)
    by_degree: Dict[int, List[StalkElement]] = {}
    for d in range(D + 1):
        th = HTheory(G, d)
        vecs, cols = image_vectors(th)
        elems = []
        for v in vecs:
            jets = {vert: j.with_cutoff(M.cutoff) for vert, j in th.element(dict(zip(cols, v))).items()}
            elems.append(StalkElement(alpha, jets))
        by_degree[d] = elems
    return StalkBasis(alpha, by_degree)


def _check_branch(M: SheafModel, beta: TorsionPoint, b: Sequence[Fraction]) -> None:
    Gb = M.fixed_graph(beta)
    p = M.graph.p
    for e in Gb.edges:
        if sum((Fraction(x) * y for x, y in zip(e.weight[:p], b)), Fraction(0)) != 0:
            raise GluingError(f"branch vector {[str(x) for x in b]} leaves the hyperplane of edge "
                              f"{e.u}-{e.v}; shrink the cover")
    for v in Gb.vertices:
        if Gb.is_fixed_point(v):
            continue
        for row in _free_relations(Gb.annihilator(v)):
            if sum((x * y for x, y in zip(row, b)), Fraction(0)) != 0:
                raise GluingError(f"branch vector {[str(x) for x in b]} leaves the orbit stratum at "
                                  f"{v}; shrink the cover")


def glue(M: SheafModel, alpha: TorsionPoint, beta: TorsionPoint, s: StalkElement) -> StalkElement:
    """phi_{alpha beta}: restrict to the fixed vertices at beta, then translate by the branch."""
    M.require_center(alpha)
    M.require_center(beta)
    if s.point != alpha:
        raise GluingError(f"stalk element lives at {s.point}, not at {alpha}")
    if alpha == beta:
        return s
    if not balls_overlap(M.cover.ball(alpha), M.cover.ball(beta)):
        raise GluingError(f"balls at {alpha} and {beta} do not overlap")
    if not M.precedes(alpha, beta):
        raise GluingError(f"{alpha} does not precede {beta}; the cover is not adapted")
    return _glue_unchecked(M, alpha, beta, s)


def _glue_unchecked(M: SheafModel, alpha, beta, s: StalkElement) -> StalkElement:
    b = M.branch(alpha, beta)
    _check_branch(M, beta, b)
    Gb = M.fixed_graph(beta)
    jets = {}
    for v in Gb.vertices:
        if v not in s.vertex_jets:
            raise GluingError(f"vertex {v} of the fixed set at {beta} is missing at {alpha}")
        jets[v] = reduce_at_vertex(Gb, v, translate_jet(s.vertex_jets[v], b))
    return StalkElement(beta, jets)


def glue_back(M: SheafModel, beta: TorsionPoint, alpha: TorsionPoint, s: StalkElement) -> StalkElement:
    """Inverse of ``glue(M, alpha, beta, .)`` on its image: translate by -b."""
    b = M.branch(alpha, beta)
    jets = {v: translate_jet(j, [-x for x in b]) for v, j in s.vertex_jets.items()}
    return StalkElement(alpha, {v: reduce_at_vertex(M.graph, v, j) for v, j in jets.items()})


@dataclass
class CocycleResult:
    ok: bool
    checked: int
    witness: Tuple[StalkElement, StalkElement, StalkElement] | None = None
    note: str = ""


def cocycle_check(M: SheafModel, alpha, beta, gamma, sample: Sequence[StalkElement] | None = None) -> CocycleResult:
    """phi_{beta gamma} o phi_{alpha beta} == phi_{alpha gamma} on sample elements at alpha."""
    for x in (alpha, beta, gamma):
        M.require_center(x)
    if not (M.precedes(alpha, beta) and M.precedes(beta, gamma)):
        raise GluingError("cocycle check needs alpha < beta < gamma")
    balls = [M.cover.ball(x) for x in (alpha, beta, gamma)]
    if len({alpha, beta, gamma}) == 3 and not triple_overlap(*balls):
        raise GluingError("the three balls have no common point")
    if sample is None:
        sample = stalk_space(M, alpha).elements
    for s in sample:
        two = glue(M, beta, gamma, glue(M, alpha, beta, s))
        one = glue(M, alpha, gamma, s)
        if two != one:
            return CocycleResult(False, len(sample), (s, two, one))
    return CocycleResult(True, len(sample), note="no sample elements" if not sample else "")


def cocycle_triples(M: SheafModel) -> List[Tuple[TorsionPoint, TorsionPoint, TorsionPoint]]:
    """Ordered triples alpha < beta < gamma of distinct centers whose three balls meet."""
    return [t for t in M.cover.overlapping_triples()
            if M.precedes(t[0], t[1]) and M.precedes(t[1], t[2])]


# sections


@dataclass
class SectionFailure:
    alpha: TorsionPoint
    beta: TorsionPoint | None
    vertex: str | None
    difference: object
    reason: str


@dataclass
class Section:
    germs: Dict[TorsionPoint, StalkElement]

    def values(self) -> Dict[TorsionPoint, Dict[str, GradedJet]]:
        return {a: dict(s.vertex_jets) for a, s in self.germs.items()}


@dataclass
class SectionResult:
    ok: bool
    section: Section | None
    failure: SectionFailure | None = None
    pairs_checked: int = 0


def germ_of_bundle(M: SheafModel, E: EquivariantBundle, alpha: TorsionPoint) -> StalkElement:
    G = M.fixed_graph(alpha)
    raw = twisted_germ(E, alpha, M.cutoff, vertices=G.vertices, symbolic=True)
    return StalkElement(alpha, {v: reduce_at_vertex(G, v, j) for v, j in raw.vertex_jets.items()})


def section_check(M: SheafModel, E: EquivariantBundle) -> SectionResult:
    """Twisted Chern germs at every center, tested for stalk membership and gluing."""
    germs = dict(zip(M.centers, pmap(lambda a: germ_of_bundle(M, E, a), M.centers)))
    for a, s in germs.items():
        chk = check_class(M.fixed_graph(a), s.vertex_jets)
        if not chk.ok:
            f = chk.failures[0]
            return SectionResult(False, None, SectionFailure(a, None, f"{f.edge.u}-{f.edge.v}", f.witness,
                                                             "germ violates an edge condition"))
    pairs = M.glue_pairs()
    for a, b in pairs:
        try:
            g = glue(M, a, b, germs[a])
        except GluingError as exc:
            return SectionResult(False, None, SectionFailure(a, b, None, None, str(exc)))
        for v, j in g.vertex_jets.items():
            diff = j - germs[b].vertex_jets[v]
            if not diff.is_zero():
                return SectionResult(False, None, SectionFailure(a, b, v, diff, "germs disagree after gluing"))
    return SectionResult(True, Section(germs), pairs_checked=len(pairs))


@dataclass
class SectionSpace:
    dim: int
    basis: List[Dict[TorsionPoint, StalkElement]]
    support: List[TorsionPoint]


def _coords(s: StalkElement) -> Dict[Tuple[str, object], object]:
    return {(v, k): c for v, j in s.vertex_jets.items() for k, c in j.terms.items()}


def section_space(M: SheafModel) -> SectionSpace:
    """Families of stalk elements (polynomial stalk bases) compatible under every gluing."""
    bases = {a: stalk_space(M, a).elements for a in M.centers}
    cols = [(a, i) for a in M.centers for i in range(len(bases[a]))]
    idx = {c: n for n, c in enumerate(cols)}
    rows = []
    for a, b in M.glue_pairs():
        acc: Dict[Tuple, Dict[int, object]] = {}
        for i, s in enumerate(bases[a]):
            for key, c in _coords(glue(M, a, b, s)).items():
                acc.setdefault(key, {})[idx[(a, i)]] = c
        for j, s in enumerate(bases[b]):
            for key, c in _coords(s).items():
                row = acc.setdefault(key, {})
                row[idx[(b, j)]] = row.get(idx[(b, j)], 0) - c
        for row in acc.values():
            vec = [Fraction(0)] * len(cols)
            for k, c in row.items():
                vec[k] = vec[k] + c
            rows.append(vec)
    sol = nullspace(rows, len(cols))
    basis = []
    support = set()
    for vec in sol:
        fam = {}
        for a in M.centers:
            coeffs = [vec[idx[(a, i)]] for i in range(len(bases[a]))]
            jets: Dict[str, GradedJet] = {}
            for c, s in zip(coeffs, bases[a]):
                if c:
                    for v, j in s.vertex_jets.items():
                        jets[v] = jets[v] + j * c if v in jets else j * c
            if any(not j.is_zero() for j in jets.values()):
                support.add(a)
            fam[a] = StalkElement(a, jets)
        basis.append(fam)
    return SectionSpace(len(sol), basis, sorted(support, key=lambda x: x.coords))


def section_values_at(section: Section, vertex: str) -> Dict[TorsionPoint, object]:
    """Constant terms of a section at one vertex, center by center."""
    out = {}
    for a, s in section.germs.items():
        if vertex in s.vertex_jets:
            out[a] = s.vertex_jets[vertex].constant_term()
    return out
