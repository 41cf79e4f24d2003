"""The group ring Q(zeta)[T^] of a character group: K_T^* with cyclotomic scalars."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from ..lattice import DualGroup, LatticeError, TorsionPoint, _same_ambient
from .cyclo import CycloScalar

Exp = Tuple[int, ...]


class LaurentElement:
    """Finite sum of c_g z^g; exponents reduced, zero coefficients dropped."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: DualGroup, terms: Mapping[Sequence[int], object] | Iterable = ()):
        self.ambient = ambient
        acc: Dict[Exp, CycloScalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = ambient.reduce(e)
            c = CycloScalar.coerce(c)
            acc[e] = acc[e] + c if e in acc else c
        self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def monomial(cls, ambient: DualGroup, exp: Sequence[int], coeff=1) -> "LaurentElement":
        return cls(ambient, {tuple(exp): coeff})

    @classmethod
    def constant(cls, ambient: DualGroup, c) -> "LaurentElement":
        return cls(ambient, {ambient.zero(): c})

    @classmethod
    def zero(cls, ambient: DualGroup) -> "LaurentElement":
        return cls(ambient, {})

    def _check(self, other: "LaurentElement") -> None:
        _same_ambient(self.ambient, other.ambient)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycloScalar)):
            other = LaurentElement.constant(self.ambient, other)
        self._check(other)
        return LaurentElement(self.ambient, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentElement(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloScalar)):
            return LaurentElement(self.ambient, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return LaurentElement(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (e, c), = self.terms.items()
            return LaurentElement(self.ambient, {self.ambient.neg(e): c.inverse()}) ** (-k)
        out = LaurentElement.constant(self.ambient, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycloScalar)):
            other = LaurentElement.constant(self.ambient, other)
        if not isinstance(other, LaurentElement):
            return NotImplemented
        if self.ambient != other.ambient or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_sum(self):
        return sum(self.terms.values(), CycloScalar.rational(0))

    def __repr__(self) -> str:
        return f"LaurentElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(f"z{i}^{a}" if a != 1 else f"z{i}" for i, a in enumerate(e) if a)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        s = parts[0]
        for t in parts[1:]:
            s += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
        return s


def eval_at_point(f: LaurentElement, alpha: TorsionPoint) -> CycloScalar:
    """Evaluate z^g -> exp(2 pi i alpha(g)); a ring homomorphism to Q(zeta_m)."""
    _same_ambient(f.ambient, alpha.ambient)
    out = CycloScalar.rational(0).embed(1)
    for e, c in f.terms.items():
        out = out + c * CycloScalar.exp2pii(alpha(e))
    return out


@dataclass
class EulerDivision:
    """Outcome of dividing by 1 - z^w: a quotient, or the nonzero collapsed witness."""

    divisible: bool
    quotient: LaurentElement | None = None
    witness: Dict[Exp, CycloScalar] | None = None


def _coset_split(ambient: DualGroup, e: Exp, w: Exp, pivot: int) -> Tuple[Exp, int]:
    """Write e = r + k*w with r the canonical representative of e + <w>."""
    k = e[pivot] // w[pivot]
    r = ambient.reduce(a - k * b for a, b in zip(e, w))
    return r, k


def divide_by_euler(f: LaurentElement, w: Sequence[int]) -> EulerDivision:
    """Decide f in (1 - z^w) by collapsing exponents modulo <w>.

    The image of f in Q(zeta)[T^/<w>] is zero exactly when 1 - z^w divides f;
    the quotient is then rebuilt coset by coset from partial coefficient sums.
    """
    amb = f.ambient
    w = amb.reduce(w)
    if not amb.has_infinite_order(w):
        raise LatticeError(f"weight {list(w)} has finite order; 1 - z^w is a zero divisor")
    pivot = next(i for i in range(amb.free_rank) if w[i])
    cosets: Dict[Exp, Dict[int, CycloScalar]] = {}
    for e, c in f.terms.items():
        r, k = _coset_split(amb, e, w, pivot)
        cosets.setdefault(r, {})[k] = c
    witness = {}
    for r, series in cosets.items():
        total = sum(series.values(), CycloScalar.rational(0))
        if total:
            witness[r] = total
    if witness:
        return EulerDivision(False, witness=witness)
    q_terms = []
    for r, series in cosets.items():
        running = CycloScalar.rational(0)
        ks = sorted(series)
        for k in range(ks[0], ks[-1]):
            running = running + series.get(k, 0)
            if running:
                q_terms.append((tuple(a + k * b for a, b in zip(r, w)), running))
    return EulerDivision(True, quotient=LaurentElement(amb, q_terms))


def euler_class(ambient: DualGroup, w: Sequence[int]) -> LaurentElement:
    """1 - z^w."""
    return LaurentElement(ambient, [(ambient.zero(), 1), (tuple(w), -1)])
