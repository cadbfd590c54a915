"""Exact arithmetic in cyclotomic fields Q(zeta_L).

A :class:`Cyclo` stores a sparse polynomial in ``zeta_L`` taken modulo
``x^L - 1``.  This representation is not unique; equality and zero tests
reduce modulo the cyclotomic polynomial ``Phi_L``, which is.  Operands of
different orders are embedded into ``Q(zeta_lcm)`` before combining.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "Cyclo",
    "RootOfUnity",
    "cyclotomic_poly",
    "evaluate_poly",
    "qbinom",
    "qbinom_at_root",
]


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num, den):
    """Quotient of integer polynomials when ``den`` is monic and divides ``num``."""
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dq]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("polynomial division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic polynomial needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """``exp(2*pi*i*exponent)`` with the exponent reduced into [0, 1)."""

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", _as_fraction(self.exponent) % 1)

    @classmethod
    def primitive(cls, order: int, power: int = 1) -> RootOfUnity:
        return cls(Fraction(power, order))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def is_primitive(self, n: int) -> bool:
        return self.order == n

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity(self.exponent + other.exponent)

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity(self.exponent * k)

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(-self.exponent)

    def to_cyclo(self) -> Cyclo:
        return Cyclo.from_root(self.exponent)

    def __str__(self) -> str:
        return f"exp(2πi·{self.exponent})"


class Cyclo:
    """An element ``sum_k c_k zeta_L^k`` of Q(zeta_L) with rational ``c_k``."""

    __slots__ = ("order", "_terms", "_reduced")

    def __init__(self, order: int, terms=None):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        self.order = order
        clean: dict[int, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else enumerate(terms)
            for k, c in items:
                c = _as_fraction(c)
                if c:
                    k %= order
                    v = clean.get(k, 0) + c
                    if v:
                        clean[k] = v
                    else:
                        clean.pop(k, None)
        self._terms = clean
        self._reduced = None

    @classmethod
    def _raw(cls, order: int, terms: dict[int, Fraction]) -> Cyclo:
        obj = cls.__new__(cls)
        obj.order = order
        obj._terms = terms
        obj._reduced = None
        return obj

    # constructors

    @classmethod
    def rational(cls, x) -> Cyclo:
        x = _as_fraction(x)
        return cls._raw(1, {0: x} if x else {})

    @classmethod
    def zero(cls) -> Cyclo:
        return cls._raw(1, {})

    @classmethod
    def one(cls) -> Cyclo:
        return cls._raw(1, {0: Fraction(1)})

    @classmethod
    def from_root(cls, exponent) -> Cyclo:
        """The root of unity ``exp(2*pi*i*exponent)`` for a rational exponent."""
        e = _as_fraction(exponent) % 1
        q = e.denominator
        return cls._raw(q, {e.numerator: Fraction(1)})

    # coercion and embedding

    @staticmethod
    def coerce(x) -> Cyclo:
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, RootOfUnity):
            return x.to_cyclo()
        return Cyclo.rational(x)

    def embed(self, order: int) -> Cyclo:
        """Same value viewed in Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        s = order // self.order
        return Cyclo._raw(order, {k * s: c for k, c in self._terms.items()})

    def _common(self, other: Cyclo) -> tuple[Cyclo, Cyclo]:
        if self.order == other.order:
            return self, other
        L = math.lcm(self.order, other.order)
        return self.embed(L), other.embed(L)

    # ring operations

    def __add__(self, other) -> Cyclo:
        try:
            other = Cyclo.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        terms = dict(a._terms)
        for k, c in b._terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return Cyclo._raw(a.order, terms)

    __radd__ = __add__

    def __neg__(self) -> Cyclo:
        return Cyclo._raw(self.order, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> Cyclo:
        try:
            other = Cyclo.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Cyclo:
        return Cyclo.coerce(other) - self

    def scalar_mul(self, x) -> Cyclo:
        x = _as_fraction(x)
        if not x:
            return Cyclo._raw(self.order, {})
        return Cyclo._raw(self.order, {k: c * x for k, c in self._terms.items()})

    def __mul__(self, other) -> Cyclo:
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        try:
            other = Cyclo.coerce(other)
        except TypeError:
            return NotImplemented
        if other.order == 1:
            return self.scalar_mul(other._terms.get(0, 0))
        if self.order == 1:
            return other.scalar_mul(self._terms.get(0, 0))
        a, b = self._common(other)
        L = a.order
        terms: dict[int, Fraction] = {}
        for i, x in a._terms.items():
            for j, y in b._terms.items():
                k = (i + j) % L
                v = terms.get(k, 0) + x * y
                if v:
                    terms[k] = v
                else:
                    terms.pop(k, None)
        return Cyclo._raw(L, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Cyclo:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Cyclo.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, a: int) -> Cyclo:
        """Apply the automorphism zeta_L -> zeta_L^a (gcd(a, L) = 1)."""
        if math.gcd(a, self.order) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.order}")
        return Cyclo(self.order, {k * a: c for k, c in self._terms.items()})

    def inverse(self) -> Cyclo:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if len(self._terms) == 1:
            (k, c), = self._terms.items()
            return Cyclo._raw(self.order, {(-k) % self.order: 1 / c})
        # x^{-1} = prod_{sigma != 1} sigma(x) / N(x)
        L = self.order
        conj = Cyclo.one()
        for a in range(2, L):
            if math.gcd(a, L) == 1:
                conj = conj * self.galois(a)
        norm = (self * conj).as_fraction()
        return conj.scalar_mul(1 / norm)

    def __truediv__(self, other) -> Cyclo:
        return self * Cyclo.coerce(other).inverse()

    def __rtruediv__(self, other) -> Cyclo:
        return Cyclo.coerce(other) * self.inverse()

    # canonical form

    def reduced(self) -> tuple[Fraction, ...]:
        """Coefficients of the unique representative of degree < phi(L)."""
        if self._reduced is None:
            L = self.order
            phi = cyclotomic_poly(L)
            d = len(phi) - 1
            dense = [Fraction(0)] * L
            for k, c in self._terms.items():
                dense[k] = c
            for i in range(L - 1, d - 1, -1):
                c = dense[i]
                if c:
                    base = i - d
                    for j in range(d):
                        if phi[j]:
                            dense[base + j] -= c * phi[j]
                    dense[i] = Fraction(0)
            self._reduced = tuple(dense[:d])
        return self._reduced

    def is_zero(self) -> bool:
        return not self._terms or not any(self.reduced())

    def is_rational(self) -> bool:
        return not any(self.reduced()[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        red = self.reduced()
        return red[0] if red else Fraction(0)

    def is_integer(self) -> bool:
        return self.is_rational() and self.as_fraction().denominator == 1

    def normalized_trace(self) -> Fraction:
        """Tr_{Q(zeta_L)/Q} divided by the degree; independent of the chosen L."""
        L = self.order
        total = Fraction(0)
        for k, c in self._terms.items():
            m = L // math.gcd(k, L)
            total += c * Fraction(_mobius(m), _totient(m))
        return total

    def __eq__(self, other) -> bool:
        try:
            other = Cyclo.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(self.normalized_trace())

    def __bool__(self) -> bool:
        return not self.is_zero()

    # output

    def approx(self) -> complex:
        """Floating-point value, for human-readable display only."""
        L = self.order
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * k / L) for k, c in self._terms.items()),
            0j,
        )

    def to_json(self) -> dict:
        if self.is_rational():
            return {"order": 1, "coeffs": [str(self.as_fraction())]}
        red = self.reduced()
        coeffs = list(red) + [Fraction(0)] * (self.order - len(red))
        return {"order": self.order, "coeffs": [str(c) for c in coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Cyclo:
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclo({self.as_fraction()})"
        parts = [f"{c}*z{self.order}^{k}" for k, c in sorted(self._terms.items())]
        return "Cyclo(" + " + ".join(parts) + ")"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.as_fraction())
        z = self.approx()
        re, im = round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0
        return f"≈ {re:.6g}{im:+.6g}i"


def evaluate_poly(coeffs, root) -> Cyclo:
    """Evaluate an integer polynomial (lowest degree first) at a root of unity."""
    if not isinstance(root, RootOfUnity):
        root = RootOfUnity(root)
    L = root.order
    step = root.exponent.numerator
    terms: dict[int, Fraction] = {}
    for j, c in enumerate(coeffs):
        if c:
            k = (j * step) % L
            terms[k] = terms.get(k, 0) + Fraction(c)
    return Cyclo(L, terms)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> tuple[int, ...]:
    """Gaussian binomial coefficient as an integer polynomial in q."""
    if not 0 <= k <= n:
        raise ValueError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return (1,)
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    a = qbinom(n - 1, k - 1)
    b = (0,) * k + qbinom(n - 1, k)
    size = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
    )


def qbinom_at_root(n: int, k: int, xi: RootOfUnity) -> Cyclo:
    """``[n choose k]_q`` at a primitive (n+1)-th root of unity ``xi``.

    Computed twice, by evaluating the polynomial and by the closed form
    ``(-1)^k xi^(-k(k+1)/2)``; a disagreement raises ArithmeticError.
    """
    if not xi.is_primitive(n + 1):
        raise ValueError(f"{xi} is not a primitive {n + 1}-th root of unity")
    direct = evaluate_poly(qbinom(n, k), xi)
    closed = (xi ** (-(k * (k + 1) // 2))).to_cyclo().scalar_mul((-1) ** k)
    if direct != closed:
        raise ArithmeticError(f"q-binomial [{n},{k}] at {xi}: {direct!r} != {closed!r}")
    return closed
