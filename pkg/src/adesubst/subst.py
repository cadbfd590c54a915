"""The root-of-unity substitution attached to a split I = I0 ⊔ I+ of an affine diagram.

Exponents are stored in units of 2πi: ``k[i] = x`` means ``e^{α_i}`` is sent to
``exp(2πi x)`` (for i in I0) or to ``e^{α_i}·exp(2πi x)`` (for i in I+).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .cyclo import Cyclo
from .rootsys import (
    Diagram,
    SubdiagramDecomposition,
    WeightVector,
    cartan,
    decompose,
    marks,
)

__all__ = [
    "Substitution",
    "build",
    "build_type_a",
    "c_constant",
    "c_constant_type_a",
    "fundamental",
    "verify_property2",
    "verify_delta",
    "describe",
]


@dataclass(frozen=True)
class Substitution:
    diagram: Diagram
    dec: SubdiagramDecomposition
    k: dict[int, Fraction]
    # e^{Λ^fin_j} ↦ exp(2πi lam_fin[j]) for j in I0
    lam_fin: dict[int, Fraction] = field(default_factory=dict)
    _roots: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def I0(self) -> frozenset[int]:
        return self.dec.I0

    @property
    def Iplus(self) -> frozenset[int]:
        return self.dec.Iplus

    @property
    def plus_order(self) -> tuple[int, ...]:
        return tuple(v for v in self.diagram.vertices if v in self.dec.Iplus)

    def common_order(self) -> int:
        return lcm(*(x.denominator for x in self.k.values()),
                   *(x.denominator for x in self.lam_fin.values()))

    def root(self, exponent: Fraction) -> Cyclo:
        exponent %= 1
        c = self._roots.get(exponent)
        if c is None:
            c = self._roots[exponent] = Cyclo.from_root(exponent)
        return c

    def phase(self, coords: dict[int, Fraction]) -> Fraction:
        """Exponent (mod 1) picked up by ``e^{Σ x_i α_i}``."""
        return sum((Fraction(x) * self.k[i] for i, x in coords.items() if x), Fraction(0)) % 1

    def image_of_monomial(self, coords: dict[int, Fraction], sign: int = 1):
        """Image of ``e^{sign·Σ x_i α_i}`` as (I+ exponents x|I+, root of unity).

        I0 coordinates may be rational; I+ coordinates must be integers.
        """
        plus = {}
        for i in self.plus_order:
            x = Fraction(coords.get(i, 0))
            if x.denominator != 1:
                raise ValueError(f"I+ coordinate {i} must be an integer, got {x}")
            plus[i] = int(x)
        return plus, self.root(sign * self.phase(coords))

    def lambda_fin_phase(self, coords: dict[int, Fraction]) -> Fraction:
        """Exponent (mod 1) picked up by ``e^{Σ_j y_j Λ^fin_j}`` (j in I0)."""
        return sum((Fraction(y) * self.lam_fin[j] for j, y in coords.items() if y), Fraction(0)) % 1


def _lambda_fin_table(dec: SubdiagramDecomposition, k: dict[int, Fraction]) -> dict[int, Fraction]:
    # Λ^fin_j = Σ_{i∈I0} (C^fin)^{-1}_{ji} α_i, then substitute each α_i
    inv = dec.cfin_inverse
    return {
        j: sum((inv[j, i] * k[i] for i in dec.I0), Fraction(0))
        for j in sorted(dec.I0)
    }


def build(diagram: Diagram, I0) -> Substitution:
    """Generic construction from the dual Coxeter numbers and inverse-Cartan row sums."""
    if not diagram.affine:
        raise ValueError("the substitution is defined for affine diagrams")
    dec = decompose(diagram, I0)
    k: dict[int, Fraction] = {}
    for i in diagram.vertices:
        if i in dec.I0:
            k[i] = Fraction(1, dec.h[i] + 1)
        else:
            k[i] = -sum(
                (m * dec.c[j] / (dec.h[j] + 1) for j, m in diagram.arrows(i) if j in dec.I0),
                Fraction(0),
            ) % 1
    return Substitution(diagram, dec, k, _lambda_fin_table(dec, k))


def build_type_a(diagram: Diagram, I0) -> Substitution:
    """Type-A construction from the run lengths r_i, l_i of I0 around each I+ vertex."""
    if diagram.family != "A" or not diagram.affine:
        raise ValueError("build_type_a needs an affine diagram of type A")
    dec = decompose(diagram, I0)
    k: dict[int, Fraction] = {}
    for i in diagram.vertices:
        if i in dec.I0:
            k[i] = Fraction(1, dec.n[i] + 2)
        else:
            k[i] = (Fraction(1, dec.r[i] + 2) + Fraction(1, dec.l[i] + 2)) % 1
    return Substitution(diagram, dec, k, _lambda_fin_table(dec, k))


def c_constant(sub: Substitution, w: WeightVector) -> Cyclo:
    """``s(e^{-w|I0})`` for w in the Λ basis."""
    if w.basis != "lambda":
        raise ValueError("w must be given in the Λ basis")
    restricted = {j: w[j] for j in sub.I0}
    return sub.root(-sub.lambda_fin_phase(restricted))


def fundamental(i: int = 0) -> WeightVector:
    """The fundamental weight Λ_i."""
    return WeightVector({i: 1}, "lambda")


def c_constant_type_a(n: int, Iplus) -> Cyclo:
    """Closed form of the constant for w = Λ_0 in type A."""
    Iplus = frozenset(Iplus)
    if 0 in Iplus:
        return Cyclo.one()
    m = min(Iplus)
    l_m = m + (n + 1 - max(Iplus)) - 1
    return Cyclo.from_root(Fraction(m * (m + 1), 2 * (l_m + 2))).scalar_mul((-1) ** m)


def verify_property2(sub: Substitution) -> bool:
    """``s(e^{α_i - ã_i}) = e^{α_i}`` exactly, for every i in I+.

    Here ã_i = Σ_{j∈I0} C_ij Λ^fin_j.
    """
    C = cartan(sub.diagram)
    for i in sub.Iplus:
        tilde = {j: C[i, j] for j in sub.I0}
        total = sub.phase({i: 1}) - sub.lambda_fin_phase(tilde)
        if total % 1 != 0:
            return False
    return True


def verify_delta(sub: Substitution) -> bool:
    """``s(e^{-δ}) = e^{-δ|I+}`` with coefficient exactly 1."""
    a = marks(sub.diagram)
    plus, root = sub.image_of_monomial(a, sign=-1)
    return root == Cyclo.one() and plus == {i: a[i] for i in sub.plus_order}


def describe(sub: Substitution) -> list[dict]:
    rows = []
    for i in sub.diagram.vertices:
        kind = "I0" if i in sub.I0 else "I+"
        rows.append({
            "vertex": i,
            "set": kind,
            "image": f"exp(2πi·{sub.k[i]})" if kind == "I0" else f"e^α{i}·exp(2πi·{sub.k[i]})",
            "exponent": str(sub.k[i]),
        })
    return rows
