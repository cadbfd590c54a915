"""Truncated multivariate series in the variables e^{-alpha_i}.

A term ``e^{-v}`` is stored under its exponent vector ``v`` (one integer per
variable).  The truncation is a weighted degree bound: the series is exact
for every ``v`` with ``sum_i weights[i] * v[i] <= truncation`` and stores no
term beyond it.  Weights default to the marks of the diagram (all ones in
type A).  Zero weights are allowed, which is how a series over I is made
complete in the I+ directions only before the I0 variables are substituted
away.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .cyclo import Cyclo

__all__ = ["MultiSeries", "invert_unit", "mul", "substitute"]


class MultiSeries:
    __slots__ = ("variables", "weights", "truncation", "terms")

    def __init__(self, variables, terms=None, truncation: int = 0, weights=None):
        self.variables = tuple(variables)
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.variables)
        if len(self.weights) != len(self.variables):
            raise ValueError("one weight per variable is required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        self.truncation = truncation
        clean: dict[tuple[int, ...], Cyclo] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.variables):
                raise ValueError(f"exponent {exp} does not match variables {self.variables}")
            if self.degree(exp) > truncation:
                continue
            c = Cyclo.coerce(c)
            if exp in clean:
                c = clean[exp] + c
            clean[exp] = c
        self.terms = {e: c for e, c in clean.items() if not c.is_zero()}

    # construction helpers

    @classmethod
    def one(cls, variables, truncation: int, weights=None) -> MultiSeries:
        return cls(variables, {(0,) * len(tuple(variables)): Cyclo.one()}, truncation, weights)

    @classmethod
    def monomial(cls, variables, exp, truncation: int, coeff=1, weights=None) -> MultiSeries:
        return cls(variables, {tuple(exp): coeff}, truncation, weights)

    def _like(self, terms, truncation=None) -> MultiSeries:
        out = MultiSeries.__new__(MultiSeries)
        out.variables = self.variables
        out.weights = self.weights
        out.truncation = self.truncation if truncation is None else truncation
        out.terms = terms
        return out

    # basic queries

    def degree(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def coefficient(self, exp) -> Cyclo:
        return self.terms.get(tuple(exp), Cyclo.zero())

    def __getitem__(self, exp) -> Cyclo:
        return self.coefficient(exp)

    def items(self):
        """Terms in lexicographic order of exponent vectors."""
        return sorted(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def truncate(self, bound: int) -> MultiSeries:
        if bound > self.truncation:
            raise ValueError("cannot raise the truncation of a series")
        return self._like(
            {e: c for e, c in self.terms.items() if self.degree(e) <= bound}, bound
        )

    def assert_nonnegative_support(self) -> MultiSeries:
        bad = [e for e in self.terms if min(e, default=0) < 0]
        if bad:
            raise ArithmeticError(f"series has terms with negative exponents, e.g. {min(bad)}")
        return self

    def _check_compatible(self, other: MultiSeries):
        if self.variables != other.variables:
            raise ValueError(f"variable sets differ: {self.variables} vs {other.variables}")
        if self.weights != other.weights:
            raise ValueError(f"degree weights differ: {self.weights} vs {other.weights}")

    # arithmetic

    def __add__(self, other: MultiSeries) -> MultiSeries:
        self._check_compatible(other)
        bound = min(self.truncation, other.truncation)
        terms: dict = {}
        for src in (self.terms, other.terms):
            for e, c in src.items():
                if self.degree(e) <= bound:
                    terms[e] = terms[e] + c if e in terms else c
        return self._like({e: c for e, c in terms.items() if not c.is_zero()}, bound)

    def __neg__(self) -> MultiSeries:
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiSeries) -> MultiSeries:
        return self + (-other)

    def scale(self, c) -> MultiSeries:
        c = Cyclo.coerce(c)
        terms = {e: x * c for e, x in self.terms.items()}
        return self._like({e: x for e, x in terms.items() if not x.is_zero()})

    def __mul__(self, other) -> MultiSeries:
        if isinstance(other, MultiSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiSeries:
        if k < 0:
            return invert_unit(self) ** (-k)
        result = MultiSeries.one(self.variables, self.truncation, self.weights)
        for _ in range(k):
            result = mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        if (self.variables, self.weights, self.truncation) != (
            other.variables, other.weights, other.truncation,
        ):
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    __hash__ = None

    def mismatches(self, other: MultiSeries) -> list[tuple[tuple[int, ...], Cyclo, Cyclo]]:
        """Exponents below the common truncation where the coefficients differ."""
        self._check_compatible(other)
        bound = min(self.truncation, other.truncation)
        out = []
        for e in sorted(set(self.terms) | set(other.terms)):
            if self.degree(e) > bound:
                continue
            a, b = self.coefficient(e), other.coefficient(e)
            if a != b:
                out.append((e, a, b))
        return out

    # serialization

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "truncation": self.truncation,
            "terms": [{"exp": list(e), "coeff": c.to_json()} for e, c in self.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict, weights=None) -> MultiSeries:
        terms = {tuple(t["exp"]): Cyclo.from_json(t["coeff"]) for t in data["terms"]}
        return cls(data["variables"], terms, data["truncation"], weights)

    def __repr__(self) -> str:
        shown = ", ".join(f"{list(e)}: {c!r}" for e, c in self.items()[:6])
        more = ", ..." if len(self.terms) > 6 else ""
        return (
            f"MultiSeries(vars={list(self.variables)}, trunc={self.truncation}, "
            f"{{{shown}{more}}})"
        )


def mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Truncated Cauchy product."""
    a._check_compatible(b)
    bound = min(a.truncation, b.truncation)
    w = a.weights
    bt = [(e, sum(x * y for x, y in zip(w, e)), c) for e, c in b.terms.items()]
    terms: dict[tuple[int, ...], Cyclo] = {}
    for ea, ca in a.terms.items():
        da = sum(x * y for x, y in zip(w, ea))
        if da > bound:
            continue
        for eb, db, cb in bt:
            if da + db > bound:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            p = ca * cb
            terms[e] = terms[e] + p if e in terms else p
    return a._like({e: c for e, c in terms.items() if not c.is_zero()}, bound)


def invert_unit(a: MultiSeries) -> MultiSeries:
    """Inverse of a series with nonzero constant term.

    Every other term must have positive degree, otherwise the inverse is not
    determined by finitely many terms at any truncation.
    """
    zero = (0,) * len(a.variables)
    c0 = a.terms.get(zero)
    if c0 is None or c0.is_zero():
        raise ZeroDivisionError("series has no invertible constant term")
    rest = a._like({e: c for e, c in a.terms.items() if e != zero})
    if any(a.degree(e) <= 0 for e in rest.terms):
        raise ValueError("non-constant terms of degree zero: inverse is not truncatable")
    inv0 = c0.inverse()
    # 1/(c0 + r) = c0^{-1} sum_k (-c0^{-1} r)^k, and r^k has degree >= k
    x = rest.scale(-inv0)
    total = MultiSeries.one(a.variables, a.truncation, a.weights)
    power = total
    for _ in range(a.truncation):
        power = mul(power, x)
        if not power.terms:
            break
        total = total + power
    return total.scale(inv0)


def substitute(a: MultiSeries, sub) -> MultiSeries:
    """Apply the substitution ``sub`` (see :mod:`adesubst.subst`) termwise.

    ``a`` lives over the full vertex set; the result lives over ``sub.Iplus``.
    The truncation of ``a`` must ignore the I0 directions (zero weight there),
    since the substituted coefficient of ``e^{-v+}`` collects every ``v`` over
    ``v+`` regardless of its I0 part.
    """
    if tuple(a.variables) != tuple(sub.diagram.vertices):
        raise ValueError("series variables must be the vertex set of the diagram")
    if any(w for v, w in zip(a.variables, a.weights) if v in sub.I0):
        raise ValueError(
            "substitution needs a series truncated in the I+ directions only "
            "(zero weight on I0)"
        )
    plus = sub.plus_order
    pos = [a.variables.index(v) for v in plus]
    weights = tuple(a.weights[p] for p in pos)
    terms: dict[tuple[int, ...], Cyclo] = {}
    for e, c in a.terms.items():
        exp_plus, root = sub.image_of_monomial(dict(zip(a.variables, e)), sign=-1)
        key = tuple(exp_plus[v] for v in plus)
        val = c * root
        terms[key] = terms[key] + val if key in terms else val
    return MultiSeries(plus, terms, a.truncation, weights)


def from_counts(variables, counts: dict, truncation: int, weights=None) -> MultiSeries:
    """Series with integer coefficients from a ``{exponent: count}`` mapping."""
    return MultiSeries(
        variables, {e: Cyclo.rational(n) for e, n in counts.items()}, truncation, weights
    )


def sum_series(parts: Iterable[MultiSeries]) -> MultiSeries:
    parts = list(parts)
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def as_fractions(s: MultiSeries) -> dict[tuple[int, ...], Fraction]:
    """Coefficients as rationals; raises if some coefficient is irrational."""
    return {e: c.as_fraction() for e, c in s.items()}
