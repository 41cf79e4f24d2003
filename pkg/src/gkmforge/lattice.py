"""Character groups of compact abelian groups, their subgroups, and torsion points.

A closed subgroup H of T is always carried by its annihilator M_H inside the
character group T^ (the characters trivial on H).  Inclusions reverse:
``K <= L`` iff ``M_L <= M_K``.  A torsion point alpha of C_T is a homomorphism
T^ -> Q/Z, stored as one rational per presentation generator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence, Tuple

from . import intmat

Vector = Tuple[int, ...]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class DualGroup:
    """Z^p (+) Z/m_1 (+) ... presented on p + r coordinates, free ones first."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        if self.free_rank < 0:
            raise LatticeError("free_rank must be nonnegative")
        if any(m < 2 for m in self.torsion):
            raise LatticeError(f"torsion orders must be >= 2, got {list(self.torsion)}")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def reduce(self, v: Iterable[int]) -> Vector:
        v = tuple(int(a) for a in v)
        if len(v) != self.ngens:
            raise LatticeError(f"element {list(v)} has {len(v)} coordinates, expected {self.ngens}")
        p = self.free_rank
        return v[:p] + tuple(a % m for a, m in zip(v[p:], self.torsion))

    def relation_rows(self) -> list[list[int]]:
        n, p = self.ngens, self.free_rank
        return [[m if j == p + i else 0 for j in range(n)] for i, m in enumerate(self.torsion)]

    def zero(self) -> Vector:
        return (0,) * self.ngens

    def add(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return self.reduce(x + y for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> Vector:
        return self.reduce(-x for x in a)

    def scale(self, k: int, a: Sequence[int]) -> Vector:
        return self.reduce(k * x for x in a)

    def free_part(self, a: Sequence[int]) -> Vector:
        return tuple(a[: self.free_rank])

    def has_infinite_order(self, a: Sequence[int]) -> bool:
        return any(self.free_part(a))

    def direct_sum(self, other: "DualGroup") -> "DualGroup":
        return DualGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def embed_left(self, other: "DualGroup", a: Sequence[int]) -> Vector:
        """Image of ``a`` under the inclusion ``self -> self (+) other``."""
        p, q = self.free_rank, other.free_rank
        return tuple(a[:p]) + (0,) * q + tuple(a[p:]) + (0,) * len(other.torsion)

    def embed_right(self, other: "DualGroup", b: Sequence[int]) -> Vector:
        """Image of ``b`` under the inclusion ``other -> self (+) other``."""
        p, q = self.free_rank, other.free_rank
        return (0,) * p + tuple(b[:q]) + (0,) * len(self.torsion) + tuple(b[q:])


@dataclass(frozen=True)
class Subgroup:
    """A subgroup M of a DualGroup, stored as the HNF basis of its lift to Z^n.

    The lift always contains the torsion relations, so two Subgroup values are
    equal exactly when they are the same subset of the ambient group.
    """

    ambient: DualGroup
    basis: Tuple[Vector, ...]

    def contains(self, v: Sequence[int]) -> bool:
        v = self.ambient.reduce(v)
        return intmat.in_lattice(v, self.basis)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        _same_ambient(self.ambient, other.ambient)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: "Subgroup") -> bool:
        return self.is_subgroup_of(other)

    @cached_property
    def _snf(self):
        return intmat.smith_normal_form([list(b) for b in self.basis], self.ambient.ngens)

    @property
    def lift_rank(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        """Free rank of M itself (the dimension of T/H)."""
        return self.lift_rank - len(self.ambient.torsion)

    def quotient_invariants(self) -> list[int]:
        """Invariant factors of T^/M: entries > 1 are cyclic factors, 0 means Z."""
        _, D, _ = self._snf
        n = self.ambient.ngens
        diag = [D[i][i] for i in range(min(len(D), n))]
        diag += [0] * (n - len(diag))
        return [d for d in diag if d != 1]

    def quotient_free_rank(self) -> int:
        """Free rank of T^/M (the dimension of H)."""
        return self.ambient.ngens - self.lift_rank

    def index(self) -> int | None:
        """Order of T^/M, or None when infinite."""
        inv = self.quotient_invariants()
        if any(d == 0 for d in inv):
            return None
        out = 1
        for d in inv:
            out *= d
        return out

    def saturation(self) -> "Subgroup":
        """Characters some positive multiple of which lies in M (dual to H^0)."""
        _, D, V = self._snf
        W = intmat.unimodular_inverse(V)
        k = self.lift_rank
        return canonical_subgroup(self.ambient, [W[i] for i in range(k)])

    def join(self, other: "Subgroup") -> "Subgroup":
        _same_ambient(self.ambient, other.ambient)
        return canonical_subgroup(self.ambient, list(self.basis) + list(other.basis))

    def generators(self) -> list[Vector]:
        """Canonical basis rows with the bare torsion relations dropped."""
        rel = {tuple(r) for r in self.ambient.relation_rows()}
        return [b for b in self.basis if b not in rel]


def _same_ambient(a: DualGroup, b: DualGroup) -> None:
    if a != b:
        raise LatticeError(f"ambient mismatch: {a} vs {b}")


def canonical_subgroup(ambient: DualGroup, raw_generators: Iterable[Sequence[int]]) -> Subgroup:
    rows = []
    for g in raw_generators:
        g = list(g)
        if len(g) != ambient.ngens:
            raise LatticeError(
                f"generator {g} has {len(g)} coordinates, ambient presentation has {ambient.ngens}")
        rows.append([int(a) for a in g])
    rows += ambient.relation_rows()
    basis = intmat.hnf(rows, ambient.ngens)
    return Subgroup(ambient, tuple(tuple(r) for r in basis))


def full_subgroup(ambient: DualGroup) -> Subgroup:
    return canonical_subgroup(ambient, intmat.identity(ambient.ngens))


def zero_subgroup(ambient: DualGroup) -> Subgroup:
    return canonical_subgroup(ambient, [])


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class TorsionPoint:
    ambient: DualGroup
    coords: Tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        coords = tuple(_frac(c) % 1 for c in self.coords)
        if len(coords) != self.ambient.ngens:
            raise LatticeError(
                f"point has {len(coords)} coordinates, ambient presentation has {self.ambient.ngens}")
        p = self.ambient.free_rank
        for c, m in zip(coords[p:], self.ambient.torsion):
            if (c * m).denominator != 1:
                raise LatticeError(f"coordinate {c} is not a character of Z/{m}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, ambient: DualGroup, *coords) -> "TorsionPoint":
        return cls(ambient, tuple(coords))

    def __call__(self, g: Sequence[int]) -> Fraction:
        """Value alpha(g) in [0, 1)."""
        g = self.ambient.reduce(g)
        return sum((a * c for a, c in zip(g, self.coords)), Fraction(0)) % 1

    @property
    def order(self) -> int:
        return lcm(1, *(c.denominator for c in self.coords))

    def __sub__(self, other: "TorsionPoint") -> "TorsionPoint":
        _same_ambient(self.ambient, other.ambient)
        return TorsionPoint(self.ambient, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        _same_ambient(self.ambient, other.ambient)
        return TorsionPoint(self.ambient, tuple(a + b for a, b in zip(self.coords, other.coords)))

    @property
    def free_coords(self) -> Tuple[Fraction, ...]:
        return self.coords[: self.ambient.free_rank]

    @property
    def torsion_coords(self) -> Tuple[Fraction, ...]:
        return self.coords[self.ambient.free_rank:]

    def lift(self) -> Tuple[Fraction, ...]:
        """Canonical lift to the fundamental domain [0,1)^p (free coordinates)."""
        return self.free_coords

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def zero_point(ambient: DualGroup) -> TorsionPoint:
    return TorsionPoint(ambient, (0,) * ambient.ngens)


def centered(x: Fraction) -> Fraction:
    """Representative of ``x mod 1`` in [-1/2, 1/2)."""
    y = x % 1
    return y - 1 if y >= Fraction(1, 2) else y


def annihilator_of_point(alpha: TorsionPoint) -> Subgroup:
    """M(alpha) = {g : alpha(g) = 0}, the annihilator of H(alpha)."""
    amb = alpha.ambient
    q = alpha.order
    row = [int(c * q) for c in alpha.coords] + [q]
    kernel = intmat.integer_kernel([row], amb.ngens + 1)
    return canonical_subgroup(amb, [k[: amb.ngens] for k in kernel])


def in_subvariety(alpha: TorsionPoint, M_H: Subgroup) -> bool:
    """alpha lies in C_H, i.e. H(alpha) is contained in H."""
    _same_ambient(alpha.ambient, M_H.ambient)
    return all(alpha(b) == 0 for b in M_H.basis)


def prec(alpha: TorsionPoint, beta: TorsionPoint, A: Sequence[Subgroup]) -> bool:
    """alpha precedes beta: every C_H (H in A) containing beta also contains alpha."""
    _same_ambient(alpha.ambient, beta.ambient)
    return all(in_subvariety(alpha, M) or not in_subvariety(beta, M) for M in A)


def same_component(alpha: TorsionPoint, beta: TorsionPoint, M_H: Subgroup) -> bool:
    if not (in_subvariety(alpha, M_H) and in_subvariety(beta, M_H)):
        raise LatticeError("same_component needs both points inside C_H")
    diff = beta - alpha
    return all(diff(s) == 0 for s in M_H.saturation().basis)


def primitive(v: Sequence[int]) -> bool:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g == 1
