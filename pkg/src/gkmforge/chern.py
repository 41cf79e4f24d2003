"""Equivariant Chern characters of line-summand bundles, their twisted germs, and
the coefficient-domination certificate for powers of a class.

Two jet forms of ch_T(V_lam) appear here.  ``chern_character`` expands
exp(l_lam) as a truncated power series.  ``twisted_germ(..., symbolic=True)``
keeps the exponential as the symbol e(lam) so that translations act on it by an
exact root of unity; the sheaf model uses that form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra.cyclo import CycloScalar
from .algebra.jet import GradedJet, exp_jet
from .lattice import DualGroup, LatticeError, TorsionPoint, annihilator_of_point

Vector = Tuple[int, ...]


class ChernError(ValueError):
    pass


@dataclass(frozen=True)
class LineSummand:
    """A line bundle with T-character ``character`` and optional extra first Chern class."""

    character: Vector
    aux: GradedJet | None = None


@dataclass(frozen=True)
class EquivariantBundle:
    """Line-summand data per fixed vertex (or fixed component) of the base."""

    ambient: DualGroup
    summands_by_vertex: Mapping[str, Tuple[LineSummand, ...]]

    def __post_init__(self):
        clean = {}
        for v, summands in self.summands_by_vertex.items():
            out = []
            for s in summands:
                ch = self.ambient.reduce(s.character)
                if s.aux is not None and (not s.aux.is_polynomial() or s.aux.degree() > 1
                                          or s.aux.variables != self.ambient.free_rank):
                    raise ChernError(f"aux class at vertex {v} must be a linear form in "
                                     f"{self.ambient.free_rank} variables")
                out.append(LineSummand(ch, s.aux))
            clean[str(v)] = tuple(out)
        object.__setattr__(self, "summands_by_vertex", clean)

    @classmethod
    def uniform(cls, ambient: DualGroup, vertices: Sequence[str], characters: Sequence[Sequence[int]]):
        """The same summands over every listed vertex."""
        line = tuple(LineSummand(tuple(c)) for c in characters)
        return cls(ambient, {v: line for v in vertices})

    @property
    def vertices(self) -> List[str]:
        return list(self.summands_by_vertex)

    def summands(self, vertex: str) -> Tuple[LineSummand, ...]:
        try:
            return self.summands_by_vertex[vertex]
        except KeyError:
            raise ChernError(f"bundle has no data over vertex {vertex!r}") from None

    def direct_sum(self, other: "EquivariantBundle") -> "EquivariantBundle":
        verts = set(self.summands_by_vertex) | set(other.summands_by_vertex)
        return EquivariantBundle(self.ambient, {
            v: self.summands_by_vertex.get(v, ()) + other.summands_by_vertex.get(v, ()) for v in verts})

    def tensor(self, other: "EquivariantBundle") -> "EquivariantBundle":
        verts = set(self.summands_by_vertex) & set(other.summands_by_vertex)
        out = {}
        for v in verts:
            out[v] = tuple(LineSummand(self.ambient.add(a.character, b.character), _add_aux(a.aux, b.aux))
                           for a in self.summands_by_vertex[v] for b in other.summands_by_vertex[v])
        return EquivariantBundle(self.ambient, out)


def _add_aux(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def character_form(ambient: DualGroup, lam: Sequence[int], cutoff=None) -> GradedJet:
    """The linear form l_lam on the Lie algebra (the free part of lam)."""
    return GradedJet.linear([Fraction(x) for x in ambient.free_part(lam)], cutoff)


@dataclass(frozen=True)
class StalkElement:
    """Vertex jets over the fixed set at ``point``; ``empty`` flags an empty fixed set."""

    point: TorsionPoint
    vertex_jets: Mapping[str, GradedJet] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.vertex_jets

    def __eq__(self, other) -> bool:
        if not isinstance(other, StalkElement):
            return NotImplemented
        return (self.point == other.point and set(self.vertex_jets) == set(other.vertex_jets)
                and all(self.vertex_jets[v] == other.vertex_jets[v] for v in self.vertex_jets))

    __hash__ = None

    def __str__(self) -> str:
        inner = ", ".join(f"{v}: {j}" for v, j in sorted(self.vertex_jets.items()))
        return f"[{self.point}] {{{inner}}}"


def decompose_by_isotropy(summands: Sequence[LineSummand], alpha: TorsionPoint,
                          ambient: DualGroup | None = None) -> List[Tuple[Vector, List[LineSummand]]]:
    """Group summands by the image of their character in the character group of H(alpha).

    Parts are keyed by a canonical representative of the class modulo M(alpha)
    and listed in order of first appearance.
    """
    if not summands:
        raise ChernError("cannot decompose an empty bundle")
    M = annihilator_of_point(alpha)
    parts: List[Tuple[Vector, List[LineSummand]]] = []
    for s in summands:
        for key, members in parts:
            diff = tuple(a - b for a, b in zip(s.character, key))
            if M.contains(diff):
                members.append(s)
                break
        else:
            parts.append((tuple(s.character), [s]))
    return parts


def chern_character(summands: Sequence[LineSummand], ambient: DualGroup, D: int) -> GradedJet:
    """sum_j exp(l_{lam_j} + aux_j) truncated at degree D."""
    out = GradedJet(ambient.free_rank, D, {})
    for s in summands:
        ell = character_form(ambient, s.character)
        if s.aux is not None:
            ell = ell + s.aux
        out = out + exp_jet(ell, D)
    return out


def chern_character_symbolic(summands: Sequence[LineSummand], ambient: DualGroup, D: int) -> GradedJet:
    """sum_j e(lam_j) * exp(aux_j), with e(lam) kept as an exact symbol."""
    p = ambient.free_rank
    out = GradedJet(p, D, {})
    for s in summands:
        term = GradedJet.character_exp(ambient.free_part(s.character), D)
        if s.aux is not None:
            term = term * exp_jet(s.aux, D)
        out = out + term
    return out


def twist_scalar(alpha: TorsionPoint, lam: Sequence[int]) -> CycloScalar:
    """alpha(lam) as a root of unity."""
    return CycloScalar.exp2pii(alpha(lam))


def twisted_vertex_jet(summands: Sequence[LineSummand], ambient: DualGroup, alpha: TorsionPoint,
                       D: int, symbolic: bool = False) -> GradedJet:
    ch = chern_character_symbolic if symbolic else chern_character
    out = GradedJet(ambient.free_rank, D, {})
    for key, part in decompose_by_isotropy(summands, alpha):
        out = out + ch(part, ambient, D) * twist_scalar(alpha, key)
    return out


def twisted_germ(E: EquivariantBundle, alpha: TorsionPoint, D: int, vertices: Sequence[str] | None = None,
                 symbolic: bool = False) -> StalkElement:
    """CH_T(E)_alpha on the fixed vertices at alpha (all bundle vertices by default)."""
    if alpha.ambient != E.ambient:
        raise LatticeError("bundle and point live over different groups")
    verts = list(E.vertices if vertices is None else vertices)
    jets = {v: twisted_vertex_jet(E.summands(v), E.ambient, alpha, D, symbolic) for v in verts}
    return StalkElement(alpha, jets)


# domination certificate


class PresentationError(ValueError):
    pass


def _abs_poly(f: GradedJet) -> Dict[Tuple[int, ...], Fraction]:
    return {m: abs(Fraction(c) if not isinstance(c, CycloScalar) else c.to_fraction())
            for m, c in f.monomials().items()}


def dominates(big: GradedJet, small: GradedJet) -> bool:
    """Every coefficient of ``small`` is bounded in absolute value by that of ``big``."""
    b = big.monomials()
    return all(abs(c) <= b.get(m, 0) for m, c in small.monomials().items())


@dataclass(frozen=True)
class Presentation:
    """A module with generators a_1..a_m, products a_i a_j = sum_k f^k_ij a_k and a class c = sum g_i a_i."""

    variables: int
    generators: Tuple[str, ...]
    products: Mapping[Tuple[int, int], Tuple[GradedJet, ...]]
    class_coeffs: Tuple[GradedJet, ...]

    def __post_init__(self):
        m = len(self.generators)
        if len(self.class_coeffs) != m:
            raise PresentationError(f"class has {len(self.class_coeffs)} coefficients for {m} generators")
        for i in range(m):
            for j in range(m):
                row = self.products.get((i, j))
                if row is None:
                    raise PresentationError(f"product a_{i + 1}*a_{j + 1} is missing")
                if len(row) != m:
                    raise PresentationError(f"product a_{i + 1}*a_{j + 1} has {len(row)} coefficients, expected {m}")
                for f in row:
                    if f.variables != self.variables or not f.is_polynomial():
                        raise PresentationError("structure constants must be polynomials in the torus variables")
        for i in range(m):
            for j in range(m):
                if any(a != b for a, b in zip(self.products[(i, j)], self.products[(j, i)])):
                    raise PresentationError(f"products a_{i + 1}*a_{j + 1} and a_{j + 1}*a_{i + 1} disagree")
        zero = GradedJet(self.variables, None, {})
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    left = self.multiply(self.multiply(_basis(m, i, self.variables), _basis(m, j, self.variables)),
                                         _basis(m, k, self.variables))
                    right = self.multiply(_basis(m, i, self.variables),
                                          self.multiply(_basis(m, j, self.variables), _basis(m, k, self.variables)))
                    if any(not (a - b == zero) for a, b in zip(left, right)):
                        raise PresentationError(
                            f"structure constants are not associative at ({i + 1},{j + 1},{k + 1})")

    @property
    def size(self) -> int:
        return len(self.generators)

    def multiply(self, x: Sequence[GradedJet], y: Sequence[GradedJet]) -> List[GradedJet]:
        m = self.size
        out = [GradedJet(self.variables, None, {}) for _ in range(m)]
        for i in range(m):
            if x[i].is_zero():
                continue
            for j in range(m):
                if y[j].is_zero():
                    continue
                xy = x[i] * y[j]
                for k, f in enumerate(self.products[(i, j)]):
                    if not f.is_zero():
                        out[k] = out[k] + xy * f
        return out


def _basis(m: int, i: int, p: int) -> List[GradedJet]:
    return [GradedJet.constant(p, None, int(k == i)) for k in range(m)]


@dataclass
class DominationCertificate:
    lam: GradedJet
    margins: Dict[int, Fraction]
    passed: bool
    powers: Dict[int, List[GradedJet]]

    def summary_lines(self) -> List[str]:
        lines = [f"lambda = {self.lam}"]
        for n, mg in sorted(self.margins.items()):
            lines.append(f"n={n}: c^n <= {2 * n}*lambda^{2 * n - 1}*(a_1+...+a_m)  margin {mg}")
        return lines


def default_dominator(P: Presentation) -> GradedJet:
    """m times the coefficientwise maximum of |f^k_ij| and |g_i|."""
    best: Dict[Tuple[int, ...], Fraction] = {}
    polys = list(P.class_coeffs) + [f for row in P.products.values() for f in row]
    for f in polys:
        for mono, c in _abs_poly(f).items():
            if c > best.get(mono, 0):
                best[mono] = c
    return GradedJet.polynomial(P.variables, None, {k: v * P.size for k, v in best.items()})


def domination_certificate(P: Presentation, N: int, lam: GradedJet | None = None) -> DominationCertificate:
    """Check c^n <= 2n lam^(2n-1) (a_1 + ... + a_m) coefficientwise for n = 1..N."""
    if N < 1:
        raise PresentationError("N must be at least 1")
    if lam is None:
        lam = default_dominator(P)
    else:
        if not lam.is_polynomial() or any(Fraction(c) < 0 for c in lam.monomials().values()):
            raise PresentationError("lambda must be a polynomial with nonnegative coefficients")
        for i, g in enumerate(P.class_coeffs):
            if not dominates(lam, g):
                raise PresentationError(f"lambda does not dominate the class coefficient g_{i + 1} = {g}")
        for (i, j), row in P.products.items():
            for k, f in enumerate(row):
                if not dominates(lam, f):
                    raise PresentationError(
                        f"lambda does not dominate the structure constant f^{k + 1}_{i + 1}{j + 1} = {f}")
    c = list(P.class_coeffs)
    power = c
    margins: Dict[int, Fraction] = {}
    powers: Dict[int, List[GradedJet]] = {}
    for n in range(1, N + 1):
        if n > 1:
            power = P.multiply(power, c)
        powers[n] = power
        bound = (lam ** (2 * n - 1)) * (2 * n)
        b = bound.monomials()
        margin = None
        for coeff in power:
            for mono, v in _abs_poly(coeff).items():
                gap = b.get(mono, Fraction(0)) - v
                margin = gap if margin is None or gap < margin else margin
        margins[n] = margin if margin is not None else Fraction(0)
    passed = all(mg >= 0 for mg in margins.values())
    return DominationCertificate(lam, margins, passed, powers)


def _poly(p: int, monos: Mapping[Tuple[int, ...], int]) -> GradedJet:
    return GradedJet.polynomial(p, None, monos)


def bundled_presentations() -> Dict[str, Presentation]:
    """Small presentations: the trivial module, H_T(CP^1) over S^1 and H_T(CP^2) over T^2."""
    one1 = _poly(1, {(0,): 1})
    zero1 = _poly(1, {})
    u = _poly(1, {(1,): 1})
    trivial = Presentation(1, ("1",), {(0, 0): (one1,)}, (u,))

    cp1 = Presentation(1, ("1", "x"), {
        (0, 0): (one1, zero1), (0, 1): (zero1, one1), (1, 0): (zero1, one1), (1, 1): (zero1, u)},
        (zero1, one1))

    one = _poly(2, {(0, 0): 1})
    zero = _poly(2, {})
    u1 = _poly(2, {(1, 0): 1})
    u2 = _poly(2, {(0, 1): 1})
    s1, s2 = u1 + u2, u1 * u2
    # x^3 = s1 x^2 - s2 x ;  x^4 = (s1^2 - s2) x^2 - s1 s2 x
    prods = {
        (0, 0): (one, zero, zero), (0, 1): (zero, one, zero), (0, 2): (zero, zero, one),
        (1, 1): (zero, zero, one), (1, 2): (zero, -s2, s1),
        (2, 2): (zero, -(s1 * s2), s1 * s1 - s2),
    }
    for (i, j), v in list(prods.items()):
        prods[(j, i)] = v
    cp2 = Presentation(2, ("1", "x", "x^2"), prods, (u1, one, zero))
    return {"trivial": trivial, "cp1": cp1, "cp2": cp2}
