"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is a rational coefficient vector in the power basis
1, zeta, ..., zeta^(phi(m)-1).  Mixed-order operations embed both operands in
Q(zeta_lcm) first.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import List, Sequence, Tuple

Poly = List[Fraction]  # ascending coefficients


def _trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    return q, a


def _mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Tuple[Fraction, ...]:
    """Phi_m by exact division of x^m - 1 by Phi_d for the proper divisors d."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    num: Poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _divmod(num, list(cyclotomic_poly(d)))
            assert not _trim(rem)
    return tuple(num)


def totient_degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(p: Poly, m: int) -> Tuple[Fraction, ...]:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    _, r = _divmod(p, list(phi)) if len(p) > deg else ([], list(p))
    r = list(r) + [Fraction(0)] * (deg - len(r))
    return tuple(r[:deg])


@lru_cache(maxsize=4096)
def _power_basis_embedding(m: int, M: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Images of zeta_m^i (i < phi(m)) in Q(zeta_M), as coefficient tuples."""
    step = M // m
    out = []
    for i in range(totient_degree(m)):
        mono = [Fraction(0)] * (i * step) + [Fraction(1)]
        out.append(_reduce(mono, M))
    return tuple(out)


class CycloScalar:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence = ()):
        order = int(order)
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        deg = totient_degree(order)
        c = [Fraction(x) for x in coeffs]
        if len(c) > deg:
            self.coeffs = _reduce(c, order)
        else:
            self.coeffs = tuple(c + [Fraction(0)] * (deg - len(c)))
        self.order = order

    # construction helpers
    @classmethod
    def rational(cls, x) -> "CycloScalar":
        return cls(1, [Fraction(x)])

    @classmethod
    def root_of_unity(cls, k: int, m: int) -> "CycloScalar":
        """zeta_m^k = exp(2 pi i k / m)."""
        k %= m
        mono = [Fraction(0)] * k + [Fraction(1)]
        return cls(m, _reduce(mono, m))

    @classmethod
    def exp2pii(cls, x: Fraction) -> "CycloScalar":
        """exp(2 pi i x) for rational x."""
        x = Fraction(x) % 1
        return cls.root_of_unity(x.numerator, x.denominator)

    @classmethod
    def coerce(cls, x) -> "CycloScalar":
        if isinstance(x, CycloScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloScalar")

    def embed(self, M: int) -> "CycloScalar":
        if M == self.order:
            return self
        if M % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{M})")
        images = _power_basis_embedding(self.order, M)
        out = [Fraction(0)] * totient_degree(M)
        for c, img in zip(self.coeffs, images):
            if c:
                for j, v in enumerate(img):
                    if v:
                        out[j] += c * v
        return CycloScalar(M, out)

    def _common(self, other) -> Tuple["CycloScalar", "CycloScalar"]:
        other = CycloScalar.coerce(other)
        M = lcm(self.order, other.order)
        return self.embed(M), other.embed(M)

    # field operations
    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloScalar(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloScalar(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloScalar(self.order, [x * other for x in self.coeffs])
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if a.order == 1:
            return CycloScalar(1, [a.coeffs[0] * b.coeffs[0]])
        return CycloScalar(a.order, _reduce(_mul(a.coeffs, b.coeffs), a.order))

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.order == 1:
            return CycloScalar(1, [1 / self.coeffs[0]])
        # extended Euclid: s*self + t*phi = 1
        r0, r1 = list(cyclotomic_poly(self.order)), _trim(list(self.coeffs))
        s0: Poly = []
        s1: Poly = [Fraction(1)]
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            qs = _mul(q, s1)
            n = max(len(s0), len(qs))
            s0, s1 = s1, _trim([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                                for i in range(n)])
        # r1 is now a nonzero constant
        c = r1[0]
        return CycloScalar(self.order, _reduce([x / c for x in s1], self.order))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloScalar(self.order, [x / other for x in self.coeffs])
        return self * CycloScalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return CycloScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloScalar.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "CycloScalar":
        """Complex conjugation, zeta -> zeta^-1."""
        out = CycloScalar.rational(0)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CycloScalar.root_of_unity(-i, self.order) * c
        return out

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None  # equality crosses field orders

    def __bool__(self) -> bool:
        return not self.is_zero()

    def minimal(self) -> "CycloScalar":
        """Same element written over the smallest Q(zeta_d) that contains it."""
        for d in sorted(d for d in range(1, self.order + 1) if self.order % d == 0):
            if d == self.order:
                return self
            # element lies in Q(zeta_d) iff it is a combination of embedded basis powers
            cand = _solve_in_subfield(self, d)
            if cand is not None:
                return cand
        return self

    def as_root_of_unity(self) -> Fraction | None:
        """k/m with self == exp(2 pi i k/m), or None if self is not a root of unity."""
        m = self.order
        n = lcm(m, 2)
        for k in range(n):
            if CycloScalar.root_of_unity(k, n) == self:
                return Fraction(k, n)
        return None

    def __repr__(self) -> str:
        return f"CycloScalar({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        m = self.order
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = f"zeta{m}" if i == 1 else f"zeta{m}^{i}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        s = terms[0]
        for t in terms[1:]:
            s += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
        return s


def _solve_in_subfield(x: CycloScalar, d: int) -> CycloScalar | None:
    images = _power_basis_embedding(d, x.order)
    # Gaussian elimination: find c with sum c_i images_i == x.coeffs
    from .linalg import solve

    cols = [list(img) for img in images]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(x.coeffs))]
    sol = solve(rows, list(x.coeffs))
    if sol is None:
        return None
    return CycloScalar(d, sol)


def common_order(values) -> int:
    m = 1
    for v in values:
        if isinstance(v, CycloScalar):
            m = lcm(m, v.order)
    return m
