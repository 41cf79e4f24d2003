"""The ten acceptance criteria as executable checks.

Each check returns a ``CriterionResult``; ``run_all`` runs them in order.  All
comparisons are exact.  Randomized checks use fixed seeds.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from .algebra.cyclo import CycloScalar
from .algebra.jet import GradedJet, translate_jet
from .algebra.laurent import LaurentElement, divide_by_euler, euler_class
from .algebra.linalg import rank
from .chern import EquivariantBundle, LineSummand, PresentationError, bundled_presentations, domination_certificate
from .cover import build_adapted, verify_adapted
from .gkm import convolve, cs_compare, graded_dimensions
from .ingest import (bad_cover, cp1_graph, cp1_k_generators, cp1xcp1_graph, cp2_generators, cp2_graph, cp2_model,
                     s1_zn_model, standard_character_bundle, zm_zl_model)
from .lattice import DualGroup, TorsionPoint, annihilator_of_point, canonical_subgroup, in_subvariety
from .sheafmodel import (cocycle_check, cocycle_triples, glue, glue_back, section_check, section_space,
                         section_values_at, stalk_space)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.name}: {self.detail} ({self.seconds:.2f}s, budget {self.budget:g}s)"


def _timed(number: int, name: str, budget: float, fn: Callable[[], tuple]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported with its message
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if ok and dt >= budget:
        ok, detail = False, detail + f"; over the {budget:g}s budget"
    return CriterionResult(number, name, ok, detail, dt, budget)


def _power_bundle(model, j: int) -> EquivariantBundle:
    G = model.graph.ambient
    return EquivariantBundle.uniform(G, model.graph.vertices, [G.scale(j, tuple(int(i == 0) for i in range(G.ngens)))])


def _criterion_1():
    for n in (2, 3, 4, 5, 6):
        M = s1_zn_model(n)
        res = section_check(M, standard_character_bundle(M.graph))
        if not res.ok:
            return False, f"n={n}: section check failed ({res.failure.reason})"
        vals = section_values_at(res.section, "orbit")
        pts = [TorsionPoint(M.graph.ambient, (Fraction(k, n),)) for k in range(n)]
        if sorted(vals, key=lambda a: a.coords) != pts:
            return False, f"n={n}: section supported on {sorted(map(str, vals))}"
        for k, a in enumerate(pts):
            if vals[a] != CycloScalar.root_of_unity(k, n):
                return False, f"n={n}: value at {a} is {vals[a]}, expected zeta{n}^{k}"
        rows = []
        for j in range(n + 1):
            r = section_check(M, _power_bundle(M, j))
            v = section_values_at(r.section, "orbit")
            rows.append([CycloScalar.coerce(v[a]) for a in pts])
        if rows[n] != rows[0]:
            return False, f"n={n}: z^n does not map to 1"
        if rank(rows[:n], n) != n:
            return False, f"n={n}: quotient ring map is not injective"
        if section_space(M).dim != n:
            return False, f"n={n}: section space has the wrong dimension"
    return True, "sections equal (1, e, ..., e^(n-1)) and the quotient map has full rank for n = 2..6"


def _criterion_2():
    for m, l in ((4, 2), (6, 3), (6, 2)):
        M = zm_zl_model(m, l)
        sp = section_space(M)
        G = M.graph.ambient
        target = [a for a in M.centers if in_subvariety(a, canonical_subgroup(G, [[l]]))]
        if sp.dim != l or sp.support != target or len(target) != l:
            return False, f"(m,l)=({m},{l}): dim {sp.dim}, support {[str(a) for a in sp.support]}"
        res = section_check(M, standard_character_bundle(M.graph))
        vals = section_values_at(res.section, "orbit")
        if not res.ok or sorted(vals, key=lambda a: a.coords) != target:
            return False, f"(m,l)=({m},{l}): section check failed"
        for a in target:
            if vals[a] != CycloScalar.exp2pii(a((1,))):
                return False, f"(m,l)=({m},{l}): wrong value at {a}"
    return True, "section spaces of dimension l supported on C_{Z_l} with root-of-unity values"


def _criterion_3():
    for n in (2, 3, 4, 5, 6):
        M = s1_zn_model(n, cutoff=0)
        for a in M.centers:
            d = stalk_space(M, a).dim
            expected = 1 if (a.coords[0] * n).denominator == 1 else 0
            if d != expected:
                return False, f"n={n}: stalk at {a} has dimension {d}, expected {expected}"
    return True, "stalks are one-dimensional exactly at n-torsion centers, zero elsewhere"


def _criterion_4():
    cp2 = cp2_graph()
    r = cs_compare(cp2, cp2_generators(), "H", range(5))
    dims = [r.per_size[d][1] for d in range(5)]
    if not r.equal or dims != [1, 3, 6, 9, 12]:
        return False, f"CP2: {r.describe()}, dims {dims}"
    k = cs_compare(cp1_graph(), cp1_k_generators(), "K", range(4))
    if not k.equal:
        return False, f"CP1 K: {k.describe()}"
    bad = cs_compare(cp2, cp2_generators()[:2], "H", range(5))
    if bad.equal or bad.first_gap != 2 or bad.per_size[2] != (5, 6):
        return False, f"dropped-generator fixture: {bad.describe()}"
    return True, (f"CP2 H dims {dims} equal; CP1 K windows 0..3 equal "
                  f"(dim {k.per_size[3][1]} at 3); dropping x^2 gives {bad.describe()}")


def _criterion_5():
    total = 0
    for name, M in (("S1/Z6", s1_zn_model(6, 6)), ("CP2", cp2_model(6))):
        triples = cocycle_triples(M)
        if not triples:
            return False, f"{name}: no overlapping triples to check"
        for t in triples:
            r = cocycle_check(M, *t)
            if not r.ok:
                return False, f"{name}: cocycle fails at {[str(x) for x in t]}"
            total += 1
        for a, b in M.glue_pairs():
            keep = set(M.fixed_graph(b).vertices)
            for s in stalk_space(M, a).elements:
                back = glue_back(M, b, a, glue(M, a, b, s))
                if any(back.vertex_jets[v] != s.vertex_jets[v] for v in keep):
                    return False, f"{name}: glue round trip fails on {a} -> {b}"
    return True, f"{total} ordered triples pass; glue round trips are identities"


def _criterion_6(samples: int = 50, seed: int = 6):
    rng = random.Random(seed)
    for _ in range(samples):
        p = rng.randint(1, 3)
        lam = [rng.randint(-4, 4) for _ in range(p)]
        a = [Fraction(rng.randint(-12, 12), rng.randint(1, 12)) for _ in range(p)]
        D = rng.randint(0, 8)
        e = GradedJet.character_exp(lam, D)
        lhs = translate_jet(e, a)
        rhs = e * CycloScalar.exp2pii(sum((x * y for x, y in zip(lam, a)), Fraction(0)))
        if lhs != rhs:
            return False, f"lambda={lam}, a={[str(x) for x in a]}, D={D}"
    return True, f"{samples} randomized (lambda, a, D) triples satisfy the identity exactly"


def random_laurent(rng: random.Random, G: DualGroup, terms: int = 4, spread: int = 3) -> LaurentElement:
    t = {}
    for _ in range(terms):
        e = tuple(rng.randint(-spread, spread) for _ in range(G.free_rank)) + tuple(rng.randrange(m) for m in G.torsion)
        t[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return LaurentElement(G, t)


def _criterion_7(samples: int = 200, seed: int = 7):
    rng = random.Random(seed)
    groups = [DualGroup(1), DualGroup(2), DualGroup(1, (3,)), DualGroup(2, (2,))]
    divisible = 0
    for _ in range(samples):
        G = rng.choice(groups)
        w = tuple(rng.randint(-2, 2) for _ in range(G.free_rank)) + tuple(rng.randrange(m) for m in G.torsion)
        if not any(w[: G.free_rank]):
            w = (1,) + w[1:]
        f = random_laurent(rng, G)
        if rng.random() < 0.5:
            f = euler_class(G, w) * f
        r1 = divide_by_euler(f, w)
        r2 = divide_by_euler(f, G.neg(w))
        if r1.divisible != r2.divisible:
            return False, f"w={w}: divisibility differs between w and -w"
        if r1.divisible:
            divisible += 1
            unit = LaurentElement.monomial(G, w, -1)
            if r2.quotient != unit * r1.quotient:
                return False, f"w={w}: quotients do not differ by -z^w"
            if euler_class(G, w) * r1.quotient != f or euler_class(G, G.neg(w)) * r2.quotient != f:
                return False, f"w={w}: quotient does not multiply back"
    return True, f"{samples} randomized pairs ({divisible} divisible) agree for w and -w"


def random_adapted_instance(rng: random.Random):
    G = DualGroup(rng.choice([1, 2]))
    p = G.free_rank
    A = []
    for _ in range(rng.randint(0, 3)):
        if rng.random() < 0.5:
            pt = TorsionPoint(G, tuple(Fraction(rng.randint(0, 11), rng.randint(1, 12)) for _ in range(p)))
            M = annihilator_of_point(pt)
        else:
            gens = [[rng.randint(-3, 3) for _ in range(p)] for _ in range(rng.randint(1, p))]
            M = canonical_subgroup(G, gens)
        if M not in A:
            A.append(M)
    sample = set()
    while len(sample) < rng.randint(2, 5):
        sample.add(TorsionPoint(G, tuple(Fraction(rng.randint(0, 11), rng.randint(1, 12)) for _ in range(p))))
    return A, sorted(sample, key=lambda a: a.coords)


def _criterion_8(instances: int = 20, seed: int = 8):
    rng = random.Random(seed)
    for i in range(instances):
        A, sample = random_adapted_instance(rng)
        report = verify_adapted(build_adapted(A, sample), A)
        if not report.ok:
            return False, f"instance {i}: conditions {report.failed_conditions()} fail"
    for c in (1, 2, 3, 4):
        cov = bad_cover(c)
        failed = verify_adapted(cov).failed_conditions()
        if failed != [c]:
            return False, f"condition-{c} fixture reports {failed}"
    return True, f"{instances} built covers verify clean; each condition fixture fails exactly its condition"


def _criterion_9():
    one = graded_dimensions(cp1_graph(), 2)
    prod = graded_dimensions(cp1xcp1_graph(), 2)
    conv = convolve(one, one, 3)
    ok = prod == conv == [1, 4, 8]
    return ok, f"CP1xCP1 dims {prod}, convolution of {one} gives {conv}"


def _criterion_10():
    lines = []
    for name, P in bundled_presentations().items():
        cert = domination_certificate(P, 6)
        if not cert.passed:
            return False, f"{name}: margins {cert.margins}"
        lines.append(f"{name} min margin {min(cert.margins.values())}")
    P = bundled_presentations()["trivial"]
    try:
        domination_certificate(P, 6, lam=GradedJet.polynomial(1, None, {(0,): 1}))
    except PresentationError:
        pass
    else:
        return False, "a lambda that fails to dominate g_1 was accepted"
    return True, "c^n <= 2n lambda^(2n-1) (a_1+...+a_m) for n <= 6: " + ", ".join(lines)


CRITERIA = [
    (1, "case (b) sections over S1/Z_n", 1.0, _criterion_1),
    (2, "case (c) sections over Z_m/Z_l", 1.0, _criterion_2),
    (3, "stalk support over S1/Z_n", 1.0, _criterion_3),
    (4, "Chang-Skjelbred comparison", 10.0, _criterion_4),
    (5, "cocycle suite", 10.0, _criterion_5),
    (6, "translation identity", 5.0, _criterion_6),
    (7, "Euler divisibility", 5.0, _criterion_7),
    (8, "adapted covers", 5.0, _criterion_8),
    (9, "Kunneth for CP1 x CP1", 5.0, _criterion_9),
    (10, "domination certificate", 5.0, _criterion_10),
]


def run_criterion(number: int) -> CriterionResult:
    for n, name, budget, fn in CRITERIA:
        if n == number:
            return _timed(n, name, budget, fn)
    raise KeyError(number)


def run_all() -> List[CriterionResult]:
    return [_timed(n, name, budget, fn) for n, name, budget, fn in CRITERIA]
