"""Ball covers of the compact slice of C_T adapted to a finite subgroup collection.

Metric: on free coordinates the sup of circular distances (a full circle has
length 1); points whose torsion coordinates differ are at distance 1/2.  Since
every radius is below 1/2, a ball never leaves its torsion coordinate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

from . import intmat
from .algebra.linalg import rref as _rref
from .lattice import (LatticeError, Subgroup, TorsionPoint, _same_ambient, centered, in_subvariety, prec,
                      same_component)
from .parallel import pmap

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Ball:
    center: TorsionPoint
    radius: Fraction

    def __post_init__(self):
        r = Fraction(self.radius)
        if r <= 0:
            raise LatticeError(f"ball radius must be positive, got {r}")
        object.__setattr__(self, "radius", r)

    def shrink(self, factor) -> "Ball":
        return Ball(self.center, self.radius * Fraction(factor))


@dataclass(frozen=True)
class Cover:
    balls: Tuple[Ball, ...]
    collection: Tuple[Subgroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple(sorted(self.balls, key=lambda b: b.center.coords)))
        object.__setattr__(self, "collection", tuple(self.collection))
        if not self.balls:
            raise LatticeError("a cover needs at least one ball")
        amb = self.balls[0].center.ambient
        seen = set()
        for b in self.balls:
            _same_ambient(amb, b.center.ambient)
            if b.center in seen:
                raise LatticeError(f"center {b.center} listed twice")
            seen.add(b.center)
        for M in self.collection:
            _same_ambient(amb, M.ambient)

    @property
    def ambient(self):
        return self.balls[0].center.ambient

    @property
    def centers(self) -> List[TorsionPoint]:
        return [b.center for b in self.balls]

    def ball(self, center: TorsionPoint) -> Ball:
        for b in self.balls:
            if b.center == center:
                return b
        raise KeyError(str(center))

    def shrink(self, factor) -> "Cover":
        return Cover(tuple(b.shrink(factor) for b in self.balls), self.collection)

    def overlapping_pairs(self) -> List[Tuple[TorsionPoint, TorsionPoint]]:
        """Ordered pairs of distinct centers whose balls meet."""
        out = []
        for a, b in product(self.balls, repeat=2):
            if a.center != b.center and balls_overlap(a, b):
                out.append((a.center, b.center))
        return out

    def overlapping_triples(self) -> List[Tuple[TorsionPoint, TorsionPoint, TorsionPoint]]:
        """Ordered triples of distinct centers with a common point in all three balls."""
        out = []
        for a, b, c in product(self.balls, repeat=3):
            if len({a.center, b.center, c.center}) == 3 and triple_overlap(a, b, c):
                out.append((a.center, b.center, c.center))
        return out


def _circ(x: Fraction) -> Fraction:
    y = x % 1
    return min(y, 1 - y)


def point_distance(a: TorsionPoint, b: TorsionPoint) -> Fraction:
    _same_ambient(a.ambient, b.ambient)
    if a.torsion_coords != b.torsion_coords:
        return HALF
    return max((_circ(x - y) for x, y in zip(a.free_coords, b.free_coords)), default=Fraction(0))


def balls_overlap(a: Ball, b: Ball) -> bool:
    """Open balls meet."""
    if a.center.torsion_coords != b.center.torsion_coords:
        return False
    return point_distance(a.center, b.center) < a.radius + b.radius


def contains(ball: Ball, pt: TorsionPoint) -> bool:
    return point_distance(ball.center, pt) < ball.radius


def _arc_meet(arcs: Sequence[Tuple[Fraction, Fraction]]) -> bool:
    """Do open arcs (center, radius < 1/2) on R/Z share a point?"""
    c0, r0 = arcs[0]
    lo, hi = -r0, r0  # interval relative to c0, length < 1 so no wraparound ambiguity
    pieces = [(lo, hi)]
    for c, r in arcs[1:]:
        d = c - c0
        new = []
        for plo, phi in pieces:
            for k in (-1, 0, 1):
                a, b = max(plo, d + k - r), min(phi, d + k + r)
                if a < b:
                    new.append((a, b))
        pieces = new
        if not pieces:
            return False
    return True


def triple_overlap(*balls: Ball) -> bool:
    tors = {b.center.torsion_coords for b in balls}
    if len(tors) != 1:
        return False
    p = balls[0].center.ambient.free_rank
    for j in range(p):
        if not _arc_meet([(b.center.coords[j], b.radius) for b in balls]):
            return False
    return True


# components of C_H


@lru_cache(maxsize=4096)
def component_reps(M: Subgroup) -> Tuple[TorsionPoint, ...]:
    """One torsion point on each connected component of C_H (compact slice)."""
    amb = M.ambient
    n = amb.ngens
    U, D, V = intmat.smith_normal_form([list(b) for b in M.basis], n)
    k = len(M.basis)
    diag = [D[i][i] for i in range(k)]
    reps = []
    for js in product(*(range(d) for d in diag)):
        t = [Fraction(j, d) for j, d in zip(js, diag)] + [Fraction(0)] * (n - k)
        x = [sum((V[r][c] * t[c] for c in range(n)), Fraction(0)) for r in range(n)]
        reps.append(TorsionPoint(amb, tuple(x)))
    return tuple(sorted(set(reps), key=lambda a: a.coords))


def _component_directions(M: Subgroup) -> List[List[int]]:
    """Integer basis of the real directions along C_H (free coordinates only)."""
    n = M.ambient.ngens
    ker = intmat.integer_kernel([list(b) for b in M.basis], n)
    return [list(v[: M.ambient.free_rank]) for v in ker]


@lru_cache(maxsize=65536)
def dist_to_component(alpha: TorsionPoint, M: Subgroup, rep: TorsionPoint) -> Fraction:
    """Exact sup-metric distance from alpha to the component of C_H through rep."""
    _same_ambient(alpha.ambient, M.ambient)
    _same_ambient(rep.ambient, M.ambient)
    if not in_subvariety(rep, M):
        raise LatticeError(f"component representative {rep} is not in C_H")
    if alpha.torsion_coords != rep.torsion_coords:
        return HALF
    p = alpha.ambient.free_rank
    if p == 0:
        return Fraction(0)
    K = _component_directions(M)
    r = len(K)
    d = [a - b for a, b in zip(alpha.free_coords, rep.free_coords)]
    # c may be taken in [0,1)^r (integer shifts of c move along Z^p), so at an
    # optimum |d_j - k_j| < sum_i |K_ij| + 1/2, which bounds each k_j
    spread = [sum(abs(K[i][j]) for i in range(r)) + HALF for j in range(p)]
    ranges = [range(math.floor(dj - sj), math.ceil(dj + sj) + 1) for dj, sj in zip(d, spread)]
    # constraints  s*(d_j - k_j - sum_i c_i K_ij) <= t ; unknowns (c_1..c_r, t)
    cons = [(j, s) for j in range(p) for s in (1, -1)]
    best = HALF
    for ks in product(*ranges):
        e = [dj - kj for dj, kj in zip(d, ks)]
        for subset in combinations(cons, r + 1):
            aug = [[s * K[i][j] for i in range(r)] + [Fraction(1), s * e[j]] for j, s in subset]
            R, piv = _rref(aug, r + 2)
            if piv != list(range(r + 1)):
                continue  # singular vertex system
            c, t = [row[r + 1] for row in R[:r]], R[r][r + 1]
            if t < 0 or t >= best:
                continue
            resid = [e[j] - sum((c[i] * K[i][j] for i in range(r)), Fraction(0)) for j in range(p)]
            if all(abs(x) <= t for x in resid):
                best = t
    return min(best, HALF)


def dist_to_subvariety(alpha: TorsionPoint, M: Subgroup) -> Fraction:
    return min(dist_to_component(alpha, M, c) for c in component_reps(M))


def _foreign_distances(center: TorsionPoint, A: Sequence[Subgroup]) -> List[Fraction]:
    out = []
    for M in A:
        for rep in component_reps(M):
            if in_subvariety(center, M) and same_component(center, rep, M):
                continue
            out.append(dist_to_component(center, M, rep))
    return out


def adapted_radius(center: TorsionPoint, A: Sequence[Subgroup]) -> Fraction:
    """Half of the largest safe radius: half the distance to every foreign component, capped by smallness."""
    bound = min([HALF] + [d / 2 for d in _foreign_distances(center, A)])
    return bound / 2


def build_adapted(A: Sequence[Subgroup], sample: Sequence[TorsionPoint]) -> Cover:
    if not sample:
        raise LatticeError("build_adapted needs a nonempty sample")
    amb = sample[0].ambient
    for M in A:
        _same_ambient(amb, M.ambient)
    if len(set(sample)) != len(sample):
        raise LatticeError("sample points must be pairwise distinct")
    radii = pmap(lambda a: adapted_radius(a, A), list(sample))
    # two centers on one component whose short chord leaves it must not overlap
    for i, j in combinations(range(len(sample)), 2):
        a, b = sample[i], sample[j]
        if any(chord_leaves_component(a, b, M) for M in A):
            cap = point_distance(a, b) / 2
            radii[i], radii[j] = min(radii[i], cap), min(radii[j], cap)
    return Cover(tuple(Ball(a, r) for a, r in zip(sample, radii)), tuple(A))


def chord_leaves_component(alpha: TorsionPoint, beta: TorsionPoint, M: Subgroup) -> bool:
    """Both points on one component of C_H, but the centered lift of beta - alpha is not tangent to it."""
    if not (in_subvariety(alpha, M) and in_subvariety(beta, M) and same_component(alpha, beta, M)):
        return False
    p = alpha.ambient.free_rank
    b = [centered(y - x) for x, y in zip(alpha.free_coords, beta.free_coords)]
    return any(sum((g[k] * b[k] for k in range(p)), Fraction(0)) != 0 for g in M.generators())


@dataclass(frozen=True)
class Violation:
    condition: int
    alpha: TorsionPoint
    beta: TorsionPoint | None
    witness: Tuple[Subgroup, ...] = ()
    detail: str = ""


@dataclass
class AdaptedReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_condition(self) -> Dict[int, List[Violation]]:
        out: Dict[int, List[Violation]] = {1: [], 2: [], 3: [], 4: []}
        for v in self.violations:
            out[v.condition].append(v)
        return out

    def failed_conditions(self) -> List[int]:
        return sorted({v.condition for v in self.violations})


def _check_pair(args) -> List[Violation]:
    a, b, A = args
    out: List[Violation] = []
    if not balls_overlap(a, b):
        return out
    al, be = a.center, b.center
    if al.coords < be.coords:
        if not (prec(al, be, A) or prec(be, al, A)):
            w1 = next(M for M in A if in_subvariety(be, M) and not in_subvariety(al, M))
            w2 = next(M for M in A if in_subvariety(al, M) and not in_subvariety(be, M))
            out.append(Violation(2, al, be, (w1, w2), "overlapping balls with incomparable centers"))
        for M in A:
            if in_subvariety(al, M) and in_subvariety(be, M) and not same_component(al, be, M):
                out.append(Violation(4, al, be, (M,), "overlapping balls centered on different components"))
    if prec(al, be, A):
        for M in A:
            if in_subvariety(al, M) and not in_subvariety(be, M):
                near = min(dist_to_component(be, M, c) for c in component_reps(M))
                if near < b.radius:
                    out.append(Violation(3, al, be, (M,), f"ball at beta reaches C_H (distance {near})"))
    return out


def verify_adapted(cover: Cover, A: Sequence[Subgroup] | None = None) -> AdaptedReport:
    """Check the four adaptedness conditions over the cover's centers."""
    A = list(cover.collection if A is None else A)
    report = AdaptedReport()
    for b in cover.balls:
        if not (0 < b.radius < HALF):
            report.violations.append(Violation(1, b.center, None, (), f"radius {b.radius} is not in (0, 1/2)"))
    jobs = [(a, b, A) for a in cover.balls for b in cover.balls if a.center != b.center]
    for vs in pmap(_check_pair, jobs):
        report.violations.extend(vs)
    report.violations.sort(key=lambda v: (v.condition, v.alpha.coords, v.beta.coords if v.beta else ()))
    return report
