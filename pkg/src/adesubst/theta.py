"""Theta-function formulas for the generating series, and q-series helpers.

Lattice sums enumerate every integer vector v with ``vAv + b·v <= bound`` for
a positive definite rational A.  The enumeration completes squares one
coordinate at a time (an exact LDL^T decomposition) and scans each
coordinate over the exact interval allowed by the remaining budget, so the
result is complete by construction.  ``box_scan`` is a brute-force scan over
a growing box and serves as an independent check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil, isqrt

from .cyclo import Cyclo
from .rootsys import Diagram, cartan, marks
from .series import MultiSeries, invert_unit, mul
from .subst import build, c_constant, fundamental

__all__ = [
    "QuadraticForm",
    "QSeries",
    "lattice_points",
    "box_scan",
    "leading_minors",
    "theta_full",
    "theta_quot",
    "euler_prefactor",
    "shifted_theta",
    "q_specialize",
]


def _det(rows) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    k = len(m)
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, k):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, k):
                    m[r][c] -= f * m[col][c]
    return det


def leading_minors(gram) -> list[Fraction]:
    return [_det([row[:k] for row in gram[:k]]) for k in range(1, len(gram) + 1)]


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = x^T gram x, evaluated at lattice points shifted by ``shift``."""

    gram: tuple[tuple[Fraction, ...], ...]
    shift: tuple[Fraction, ...]

    def __init__(self, gram, shift=None):
        g = tuple(tuple(Fraction(x) for x in row) for row in gram)
        k = len(g)
        if any(len(row) != k for row in g):
            raise ValueError("gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(k) for j in range(k)):
            raise ValueError("gram matrix must be symmetric")
        if any(d <= 0 for d in leading_minors(g)):
            raise ValueError("quadratic form is not positive definite")
        z = tuple(Fraction(x) for x in (shift if shift is not None else [0] * k))
        if len(z) != k:
            raise ValueError("shift has the wrong length")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "shift", z)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def value(self, x) -> Fraction:
        g = self.gram
        return sum(
            (g[i][j] * x[i] * x[j] for i in range(self.dim) for j in range(self.dim)),
            Fraction(0),
        )


class QSeries:
    """Truncated series in q with exact rational exponents."""

    __slots__ = ("terms", "truncation")

    def __init__(self, terms=None, truncation=0):
        self.truncation = Fraction(truncation)
        clean: dict[Fraction, Cyclo] = {}
        for e, c in (terms or {}).items():
            e = Fraction(e)
            if e > self.truncation:
                continue
            c = Cyclo.coerce(c)
            clean[e] = clean[e] + c if e in clean else c
        self.terms = {e: c for e, c in clean.items() if not c.is_zero()}

    def coefficient(self, e) -> Cyclo:
        return self.terms.get(Fraction(e), Cyclo.zero())

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and self.terms.keys() == other.terms.keys()
            and all(c == other.terms[e] for e, c in self.terms.items())
        )

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "truncation": str(self.truncation),
            "terms": [{"exp": str(e), "coeff": c.to_json()} for e, c in self.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def csv_rows(self) -> list[tuple[str, str]]:
        rows = []
        for e, c in self.items():
            if not c.is_rational():
                raise ValueError(f"coefficient of q^{e} is not rational: {c!r}")
            rows.append((str(e), str(c.as_fraction())))
        return rows

    def __repr__(self) -> str:
        shown = " + ".join(f"{c}·q^{e}" for e, c in self.items()[:8])
        return f"QSeries({shown}{' + ...' if len(self.terms) > 8 else ''}; <= q^{self.truncation})"


# ---------------------------------------------------------------------------
# lattice enumeration


def _complete_squares(A, b):
    """Write vAv + b·v = Σ_k d_k (v_k + Σ_{j>k} u_kj v_j + t_k)^2 + const."""
    k = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    d, u, t = [], [], []
    const = Fraction(0)
    for p in range(k):
        dp = A[p][p]
        if dp <= 0:
            raise ValueError("quadratic part is not positive definite")
        d.append(dp)
        u.append({j: A[p][j] / dp for j in range(p + 1, k) if A[p][j]})
        t.append(b[p] / (2 * dp))
        const -= b[p] * b[p] / (4 * dp)
        for i in range(p + 1, k):
            if A[p][i]:
                b[i] -= A[p][i] * b[p] / dp
                for j in range(p + 1, k):
                    A[i][j] -= A[i][p] * A[p][j] / dp
    return d, u, t, const


def lattice_points(A, b, bound) -> list[tuple[int, ...]]:
    """All integer v with vAv + b·v <= bound, sorted."""
    k = len(A)
    if k == 0:
        return [()] if bound >= 0 else []
    d, u, t, const = _complete_squares(A, b)
    budget = Fraction(bound) - const
    out: list[tuple[int, ...]] = []
    v = [0] * k

    def rec(p: int, rem: Fraction):
        if p < 0:
            out.append(tuple(v))
            return
        centre = t[p] + sum((x * v[j] for j, x in u[p].items()), Fraction(0))
        r2 = rem / d[p]
        # candidates cover |v_p + centre| <= sqrt(r2); each one is checked exactly
        s = isqrt(ceil(r2)) + 1
        for x in range(floor(-centre) - s, ceil(-centre) + s + 1):
            cost = d[p] * (x + centre) ** 2
            if cost <= rem:
                v[p] = x
                rec(p - 1, rem - cost)
        v[p] = 0

    if budget >= 0:
        rec(k - 1, budget)
    return sorted(out)


def _form_value(A, b, v) -> Fraction:
    k = len(v)
    return sum((Fraction(A[i][j]) * v[i] * v[j] for i in range(k) for j in range(k)), Fraction(0)) + sum(
        (Fraction(b[i]) * v[i] for i in range(k)), Fraction(0)
    )


def _box(k: int, radius: int):
    if k == 0:
        yield ()
        return
    for head in range(-radius, radius + 1):
        for rest in _box(k - 1, radius):
            yield (head,) + rest


def box_scan(A, b, bound, radius: int | None = None) -> tuple[list[tuple[int, ...]], int]:
    """Brute-force scan of the box |v|_inf <= R.

    Without an explicit radius, R grows until no point on the shell |v|_inf = R
    satisfies the bound.  Returns the sorted points and the radius used.
    """
    k = len(A)
    if radius is not None:
        pts = [v for v in _box(k, radius) if _form_value(A, b, v) <= bound]
        return sorted(pts), radius
    R = 0
    while True:
        R += 1
        shell = [v for v in _box(k, R) if max(map(abs, v), default=0) == R]
        if all(_form_value(A, b, v) > bound for v in shell):
            return box_scan(A, b, bound, R)


# ---------------------------------------------------------------------------
# theta series for the affine diagrams


def euler_prefactor(variables, delta, power: int, truncation: int, weights) -> MultiSeries:
    """(Π_{k>=1} (1 - e^{-kδ}))^{-power}, truncated."""
    deg = sum(w * x for w, x in zip(weights, delta))
    if deg <= 0:
        raise ValueError("δ must have positive weighted degree")
    one = MultiSeries.one(variables, truncation, weights)
    prod = one
    for k in range(1, truncation // deg + 1):
        factor = MultiSeries(
            variables,
            {tuple(0 for _ in delta): 1, tuple(k * x for x in delta): -1},
            truncation,
            weights,
        )
        prod = mul(prod, factor)
    return invert_unit(prod) ** power


def _lattice_data(diagram: Diagram, weights: dict[int, int]):
    """Quadratic and linear parts of the weighted degree of e^{-v} e^{-N δ}, N = v C' v / 2."""
    C = cartan(diagram)
    a = marks(diagram)
    fin = [i for i in diagram.vertices if i != 0]
    wdelta = sum(weights[i] * a[i] for i in diagram.vertices)
    A = [[Fraction(wdelta, 2) * C[i, j] for j in fin] for i in fin]
    b = [Fraction(weights[i]) for i in fin]
    return C, a, fin, A, b


def _half_norm(C, fin, v) -> int:
    twice = sum(C[i, j] * v[p] * v[q] for p, i in enumerate(fin) for q, j in enumerate(fin))
    if twice % 2:
        raise ArithmeticError("v C' v should be even")
    return int(twice // 2)


def theta_full(diagram: Diagram, truncation: int, weights=None) -> MultiSeries:
    """Theta formula for Σ_v χ(M(v, Λ_0)) e^{-v} over all vertices.

    ``weights`` (per vertex) sets the truncating degree; it defaults to the marks.
    """
    if not diagram.affine:
        raise ValueError("needs an affine diagram")
    a = marks(diagram)
    verts = diagram.vertices
    w = {i: a[i] for i in verts} if weights is None else dict(zip(verts, weights))
    C, a, fin, A, b = _lattice_data(diagram, w)
    wt = tuple(w[i] for i in verts)
    delta = tuple(a[i] for i in verts)
    terms: dict[tuple[int, ...], int] = {}
    for v in lattice_points(A, b, truncation):
        N = _half_norm(C, fin, v)
        coords = dict(zip(fin, v))
        exp = tuple(coords.get(i, 0) + N * a[i] for i in verts)
        terms[exp] = terms.get(exp, 0) + 1
    lattice = MultiSeries(verts, terms, truncation, wt)
    pre = euler_prefactor(verts, delta, len(verts), truncation, wt)
    return mul(pre, lattice).assert_nonnegative_support()


def theta_quot(diagram: Diagram, Iplus, truncation: int) -> MultiSeries:
    """Theta formula for the I+ series, truncated in the marks-weighted I+ degree."""
    Iplus = frozenset(Iplus)
    verts = diagram.vertices
    sub = build(diagram, frozenset(verts) - Iplus)
    a = marks(diagram)
    w = {i: (a[i] if i in Iplus else 0) for i in verts}
    C, a, fin, A, b = _lattice_data(diagram, w)
    plus = sub.plus_order
    wt = tuple(a[i] for i in plus)
    delta = tuple(a[i] for i in plus)
    terms: dict[tuple[int, ...], Cyclo] = {}
    for v in lattice_points(A, b, truncation):
        N = _half_norm(C, fin, v)
        coords = dict(zip(fin, v))
        exp = tuple(coords.get(i, 0) + N * a[i] for i in plus)
        root = sub.root(-sub.phase(coords))
        terms[exp] = terms[exp] + root if exp in terms else root
    lattice = MultiSeries(plus, terms, truncation, wt)
    pre = euler_prefactor(plus, delta, len(verts), truncation, wt)
    c = c_constant(sub, fundamental(0))
    return mul(pre, lattice).scale(c.inverse()).assert_nonnegative_support()


def shifted_theta(form: QuadraticForm, truncation) -> QSeries:
    """Σ_{k in Z^n} q^{Q(k+z)}, truncated at ``truncation``."""
    g, z = form.gram, form.shift
    k = form.dim
    lin = [2 * sum((g[i][j] * z[j] for j in range(k)), Fraction(0)) for i in range(k)]
    base = form.value(z)
    terms: dict[Fraction, int] = {}
    for v in lattice_points(g, lin, Fraction(truncation) - base):
        e = form.value([v[i] + z[i] for i in range(k)])
        terms[e] = terms.get(e, 0) + 1
    return QSeries(terms, truncation)


def q_specialize(series: MultiSeries, marks_by_vertex: dict[int, int]) -> QSeries:
    """Send e^{-v} to q^{Σ_i v_i a_i}."""
    a = tuple(marks_by_vertex[i] for i in series.variables)
    if a != series.weights:
        raise ValueError("series must be truncated by the marks-weighted degree")
    terms: dict[Fraction, Cyclo] = {}
    for e, c in series.terms.items():
        x = Fraction(sum(ai * ei for ai, ei in zip(a, e)))
        terms[x] = terms[x] + c if x in terms else c
    return QSeries(terms, series.truncation)
