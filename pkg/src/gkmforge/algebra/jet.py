"""Degree-truncated jets in the coordinates u_1..u_p of the Lie algebra.

A jet is a finite sum of terms  c * e(lam) * u^m  where ``e(lam)`` is a kept
symbolic exponential: it stands for ch_T(V_lam) = exp(c_1(V_lam)).  Plain
polynomials are the terms with lam = 0.  Coordinates are normalised so that
the torsion point with rational lift ``a`` acts by u -> u + a, under which
e(lam) picks up the root of unity exp(2 pi i <lam, a>).  Only the polynomial
degree |m| is truncated, so translations never lose information.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .cyclo import CycloScalar

Mono = Tuple[int, ...]
Char = Tuple[Fraction, ...]
Key = Tuple[Char, Mono]


def _scalar(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def _min_cutoff(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class GradedJet:
    """Element of Q(zeta)[u_1..u_p][e(lam)] truncated above polynomial degree ``cutoff``.

    ``cutoff=None`` means an exact (untruncated) polynomial.
    """

    __slots__ = ("variables", "cutoff", "terms")

    def __init__(self, variables: int, cutoff: int | None, terms: Iterable | Mapping = ()):
        self.variables = variables
        self.cutoff = cutoff
        acc: Dict[Key, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = _norm_key(key, variables)
            if cutoff is not None and sum(key[1]) > cutoff:
                continue
            c = _scalar(c)
            acc[key] = acc[key] + c if key in acc else c
        self.terms = {k: c for k, c in acc.items() if c}

    # constructors
    @classmethod
    def polynomial(cls, variables: int, cutoff, monos: Mapping[Sequence[int], object]) -> "GradedJet":
        zero = (Fraction(0),) * variables
        return cls(variables, cutoff, [((zero, tuple(m)), c) for m, c in monos.items()])

    @classmethod
    def constant(cls, variables: int, cutoff, c) -> "GradedJet":
        return cls.polynomial(variables, cutoff, {(0,) * variables: c})

    @classmethod
    def linear(cls, form: Sequence, cutoff=None, const=0) -> "GradedJet":
        p = len(form)
        monos = {tuple(int(i == j) for j in range(p)): Fraction(a) for i, a in enumerate(form)}
        monos[(0,) * p] = Fraction(const)
        return cls.polynomial(p, cutoff, monos)

    @classmethod
    def character_exp(cls, lam: Sequence, cutoff=None, coeff=1) -> "GradedJet":
        """The symbol e(lam) = ch_T(V_lam)."""
        p = len(lam)
        return cls(p, cutoff, [((tuple(Fraction(x) for x in lam), (0,) * p), coeff)])

    def zero_like(self) -> "GradedJet":
        return GradedJet(self.variables, self.cutoff, {})

    # ring structure
    def _coerce(self, other) -> "GradedJet":
        if isinstance(other, GradedJet):
            if other.variables != self.variables:
                raise ValueError(f"jets in {self.variables} and {other.variables} variables")
            return other
        return GradedJet.constant(self.variables, self.cutoff, other)

    def __add__(self, other):
        other = self._coerce(other)
        return GradedJet(self.variables, _min_cutoff(self.cutoff, other.cutoff),
                         list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return GradedJet(self.variables, self.cutoff, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedJet):
            other = _scalar(other)
            return GradedJet(self.variables, self.cutoff, {k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        cutoff = _min_cutoff(self.cutoff, other.cutoff)
        out = []
        for (l1, m1), c1 in self.terms.items():
            for (l2, m2), c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if cutoff is not None and sum(m) > cutoff:
                    continue
                out.append(((tuple(a + b for a, b in zip(l1, l2)), m), c1 * c2))
        return GradedJet(self.variables, cutoff, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = GradedJet.constant(self.variables, self.cutoff, 1)
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, cutoff: int | None) -> "GradedJet":
        return GradedJet(self.variables, _min_cutoff(self.cutoff, cutoff), self.terms)

    def with_cutoff(self, cutoff: int | None) -> "GradedJet":
        """Same terms, cutoff replaced (terms above it dropped)."""
        return GradedJet(self.variables, cutoff, self.terms)

    # comparisons
    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedJet):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        if self.variables != other.variables:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(not any(lam) for lam, _ in self.terms)

    def degree(self) -> int:
        return max((sum(m) for _, m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "GradedJet":
        return GradedJet(self.variables, self.cutoff, {k: c for k, c in self.terms.items() if sum(k[1]) == d})

    def monomials(self) -> Dict[Mono, object]:
        if not self.is_polynomial():
            raise ValueError("jet carries exponential symbols")
        return {m: c for (_, m), c in self.terms.items()}

    def constant_term(self):
        zero = ((Fraction(0),) * self.variables, (0,) * self.variables)
        return self.terms.get(zero, Fraction(0))

    def __repr__(self) -> str:
        return f"GradedJet({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (lam, m) in sorted(self.terms, key=lambda k: (sum(k[1]), k[1], k[0])):
            c = self.terms[(lam, m)]
            factors = []
            if any(lam):
                factors.append("e(" + ",".join(str(x) for x in lam) + ")")
            factors += [f"u{i + 1}" if a == 1 else f"u{i + 1}^{a}" for i, a in enumerate(m) if a]
            cs = str(c)
            if isinstance(c, CycloScalar) and len(cs.split()) > 1:
                cs = f"({cs})"
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        s = parts[0]
        for t in parts[1:]:
            s += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
        return s


def _norm_key(key, variables: int) -> Key:
    lam, m = key
    lam = tuple(Fraction(x) for x in lam)
    m = tuple(int(x) for x in m)
    if len(lam) != variables or len(m) != variables:
        raise ValueError(f"term {key} does not have {variables} variables")
    if any(x < 0 for x in m):
        raise ValueError(f"negative exponent in {m}")
    return lam, m


def _binomial_shift(m: Mono, a: Sequence[Fraction]) -> List[Tuple[Mono, Fraction]]:
    """Expansion of prod (u_i + a_i)^m_i."""
    ranges = [range(k + 1) for k in m]
    out = []
    for ks in iproduct(*ranges):
        c = Fraction(1)
        for k, mi, ai in zip(ks, m, a):
            c *= comb(mi, k) * Fraction(ai) ** (mi - k)
        if c:
            out.append((tuple(ks), c))
    return out


def translate_jet(p: GradedJet, a: Sequence) -> GradedJet:
    """Pullback along u -> u + a (the translation by the point with lift a)."""
    a = tuple(Fraction(x) for x in a)
    if len(a) != p.variables:
        raise ValueError(f"translation vector has {len(a)} entries, jet has {p.variables} variables")
    out = []
    for (lam, m), c in p.terms.items():
        twist = sum((x * y for x, y in zip(lam, a)), Fraction(0))
        scal = c if twist % 1 == 0 else c * CycloScalar.exp2pii(twist)
        for m2, b in _binomial_shift(m, a):
            out.append(((lam, m2), scal * b))
    return GradedJet(p.variables, p.cutoff, out)


def exp_jet(ell: GradedJet, D: int) -> GradedJet:
    """sum_{k <= D} ell^k / k!, truncated at total degree D."""
    if not ell.is_polynomial() or ell.degree() > 1:
        raise ValueError("exp_jet needs a linear form (degree <= 1, no exponential symbols)")
    ell = ell.with_cutoff(D)
    out = GradedJet.constant(ell.variables, D, 1)
    power = GradedJet.constant(ell.variables, D, 1)
    for k in range(1, D + 1):
        power = power * ell
        out = out + power * Fraction(1, factorial(k))
    return out


def expand_exponentials(p: GradedJet, D: int) -> GradedJet:
    """Replace each symbol e(lam) by exp_jet(<lam, u>, D).

    Only defined for jets whose exponential terms have no polynomial factor,
    since the polynomial coordinates and the cohomological coordinate differ
    by the factor 2 pi i.
    """
    out = GradedJet(p.variables, D, {})
    for (lam, m), c in p.terms.items():
        if any(lam):
            if any(m):
                raise ValueError("cannot expand e(lam) * u^m with m != 0 rationally")
            out = out + exp_jet(GradedJet.linear(lam), D) * c
        else:
            out = out + GradedJet(p.variables, D, [((lam, m), c)])
    return out


def substitute_linear(p: GradedJet, K: Sequence[Sequence], q: int | None = None) -> GradedJet:
    """Pullback along the linear map v -> u = K v (K is p x q).

    Exponential symbols transform by lam -> K^T lam.
    """
    rows = [[Fraction(x) for x in r] for r in K]
    if len(rows) != p.variables:
        raise ValueError("substitution matrix has the wrong number of rows")
    q = q if q is not None else (len(rows[0]) if rows else 0)
    images = [GradedJet.linear(r, None) if q else GradedJet.constant(0, None, 0) for r in rows]
    out: Dict[Key, object] = {}
    result = GradedJet(q, p.cutoff, {})
    cache: Dict[Mono, GradedJet] = {}
    for (lam, m), c in p.terms.items():
        lam2 = tuple(sum((rows[i][j] * lam[i] for i in range(p.variables)), Fraction(0)) for j in range(q))
        if m not in cache:
            acc = GradedJet.constant(q, None, 1)
            for i, k in enumerate(m):
                for _ in range(k):
                    acc = acc * images[i]
            cache[m] = acc
        for (_, m2), c2 in cache[m].terms.items():
            key = (lam2, m2)
            out[key] = out[key] + c * c2 if key in out else c * c2
    result = GradedJet(q, p.cutoff, out)
    return result


def hyperplane_basis(form: Sequence[int]) -> List[List[int]]:
    """Integer p x (p-1) matrix whose columns span {u : <form, u> = 0}."""
    from ..intmat import integer_kernel, transpose

    p = len(form)
    ker = integer_kernel([list(form)], p)
    if not ker:
        return [[] for _ in range(p)]
    return transpose(ker)


def restrict_to_hyperplane(p: GradedJet, form: Sequence[int]) -> GradedJet:
    K = hyperplane_basis(form)
    return substitute_linear(p, K, len(K[0]) if K and K[0] else 0)


class LinearDivision:
    def __init__(self, divisible: bool, quotient: GradedJet | None = None, witness: GradedJet | None = None):
        self.divisible = divisible
        self.quotient = quotient
        self.witness = witness

    def __repr__(self) -> str:
        if self.divisible:
            return f"LinearDivision(quotient={self.quotient})"
        return f"LinearDivision(not divisible, witness={self.witness})"


def divide_by_linear(f: GradedJet, form: Sequence[int]) -> LinearDivision:
    """Exact division of a polynomial by the linear form <form, u>.

    Changes coordinates so the form becomes a variable s, reads off the s-free
    part (the restriction to the hyperplane) and, if that vanishes, divides
    by s and changes back.
    """
    form = [Fraction(x) for x in form]
    if not any(form):
        raise ValueError("division by the zero linear form")
    if not f.is_polynomial():
        raise ValueError("divide_by_linear works on polynomials")
    p = f.variables
    i = next(k for k, a in enumerate(form) if a)
    # u_i = (s - sum_{j != i} form_j u_j) / form_i ; variable slot i now holds s
    K = []
    for r in range(p):
        if r == i:
            K.append([(1 / form[i]) if c == i else (-form[c] / form[i]) for c in range(p)])
        else:
            K.append([Fraction(int(c == r)) for c in range(p)])
    g = substitute_linear(f, K, p)
    rest = {k: c for k, c in g.terms.items() if k[1][i] == 0}
    if rest:
        witness = GradedJet(p, f.cutoff, rest)
        return LinearDivision(False, witness=witness)
    shifted = [((lam, tuple(e - (j == i) for j, e in enumerate(m))), c) for (lam, m), c in g.terms.items()]
    q_s = GradedJet(p, None, shifted)
    # back: s = <form, u>, u_j = u_j
    back = [[form[c] if r == i else Fraction(int(c == r)) for c in range(p)] for r in range(p)]
    q = substitute_linear(q_s, back, p)
    return LinearDivision(True, quotient=q.with_cutoff(f.cutoff))
