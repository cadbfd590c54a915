"""Fock space with box-adding and box-removing operators.

Basis vectors |Y> are indexed by partitions (row lengths, bottom row first).
For an integer content c:

  E_c removes the removable box of content c (if any)
  F_c adds the addable box of content c (if any)
  H_c = #addable - #removable boxes of content c
  D_c = number of boxes of content c

Each diagonal carries at most one addable and one removable box, so E_c and
F_c send basis vectors to basis vectors or zero.  The periodic operators
e, f, h, d for a label [c] mod n+1 sum the integer ones over the class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .cyclo import qbinom
from .parts import (
    Partition,
    addable_boxes,
    diagonal_length,
    removable_boxes,
)
from .series import MultiSeries, from_counts

__all__ = [
    "FockVector",
    "apply_E",
    "apply_F",
    "apply_H",
    "apply_D",
    "apply_periodic",
    "cartan_entry",
    "periodic_cartan_entry",
    "in_F_Iplus",
    "trace_over_FIplus",
    "random_partition",
    "check_relations",
    "RectangleModule",
    "rectangle_module",
]


class FockVector:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for y, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(y)] = clean.get(tuple(y), 0) + c
        self.terms = {y: c for y, c in clean.items() if c}

    @classmethod
    def basis(cls, y: Partition) -> FockVector:
        return cls({tuple(y): 1})

    @classmethod
    def vacuum(cls) -> FockVector:
        return cls.basis(())

    def __add__(self, other: FockVector) -> FockVector:
        out = dict(self.terms)
        for y, c in other.terms.items():
            out[y] = out.get(y, 0) + c
        return FockVector(out)

    def __sub__(self, other: FockVector) -> FockVector:
        return self + other.scale(-1)

    def scale(self, x) -> FockVector:
        return FockVector({y: c * x for y, c in self.terms.items()})

    def __rmul__(self, x) -> FockVector:
        return self.scale(x)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, FockVector) and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}|{','.join(map(str, y))}>" for y, c in sorted(self.terms.items()))


# ---------------------------------------------------------------------------
# integer-content operators on basis vectors


def _remove_at(y: Partition, c: int) -> Partition | None:
    for x, row in removable_boxes(y):
        if x - row == c:
            rows = list(y)
            rows[row] -= 1
            return tuple(r for r in rows if r)
    return None


def _add_at(y: Partition, c: int) -> Partition | None:
    for x, row in addable_boxes(y):
        if x - row == c:
            rows = list(y)
            if row == len(rows):
                rows.append(1)
            else:
                rows[row] += 1
            return tuple(rows)
    return None


def _h_value(y: Partition, c: int) -> int:
    add = sum(1 for x, row in addable_boxes(y) if x - row == c)
    rem = sum(1 for x, row in removable_boxes(y) if x - row == c)
    return add - rem


def _lift(move):
    def op(c: int, v: FockVector) -> FockVector:
        out: dict = {}
        for y, coef in v.terms.items():
            z = move(y, c)
            if z is not None:
                out[z] = out.get(z, 0) + coef
        return FockVector(out)
    return op


apply_E = _lift(_remove_at)
apply_F = _lift(_add_at)


def apply_H(c: int, v: FockVector) -> FockVector:
    return FockVector({y: coef * _h_value(y, c) for y, coef in v.terms.items()})


def apply_D(c: int, v: FockVector) -> FockVector:
    return FockVector({y: coef * diagonal_length(y, c) for y, coef in v.terms.items()})


_OPS = {"E": apply_E, "F": apply_F, "H": apply_H, "D": apply_D}


def _content_range(y: Partition) -> range:
    # contents of boxes, addable and removable boxes all lie in here
    return range(-len(y), (y[0] if y else 0) + 1)


def apply_periodic(kind: str, label: int, n: int, v: FockVector) -> FockVector:
    """e/f/h/d for the class ``label`` mod n+1; only finitely many terms act."""
    op = _OPS[kind.upper()]
    m = n + 1
    total = FockVector()
    for y, coef in v.terms.items():
        basis = FockVector({y: coef})
        for c in _content_range(y):
            if c % m == label % m:
                total = total + op(c, basis)
    return total


def cartan_entry(c: int, cp: int) -> int:
    if c == cp:
        return 2
    if abs(c - cp) == 1:
        return -1
    return 0


def periodic_cartan_entry(c: int, cp: int, n: int) -> int:
    """Affine A_n Cartan matrix on labels mod n+1 (n=1 has a double edge)."""
    m = n + 1
    c, cp = c % m, cp % m
    if c == cp:
        return 2
    if n == 1:
        return -2
    return -1 if (c - cp) % m in (1, m - 1) else 0


# ---------------------------------------------------------------------------
# the subspace spanned by I+-generated partitions


def in_F_Iplus(y: Partition, n: int, Iplus) -> bool:
    """|Y> lies in the common kernel of F_c for all c with c mod n+1 outside I+."""
    Iplus = frozenset(Iplus)
    v = FockVector.basis(y)
    return all(
        apply_F(c, v).is_zero() for c in _content_range(y) if c % (n + 1) not in Iplus
    )


def trace_over_FIplus(n: int, Iplus, bound: int) -> MultiSeries:
    """Trace of e^{-d} over the I+-generated basis, up to I+-weight ``bound``.

    Partitions are generated from the vacuum by the F operators; the I+-weight
    only grows along the way, so the search stops at the bound.
    """
    Iplus = frozenset(Iplus)
    plus = sorted(Iplus)
    m = n + 1
    seen = {(): (0,) * m}
    frontier = [()]
    counts: dict[tuple[int, ...], int] = {}
    while frontier:
        nxt = []
        for y in frontier:
            wt = seen[y]
            if in_F_Iplus(y, n, Iplus):
                key = tuple(wt[i] for i in plus)
                counts[key] = counts.get(key, 0) + 1
            for c in _content_range(y):
                z = _add_at(y, c)
                if z is None or z in seen:
                    continue
                w2 = list(wt)
                w2[c % m] += 1
                if sum(w2[i] for i in plus) > bound:
                    continue
                seen[z] = tuple(w2)
                nxt.append(z)
        frontier = nxt
    return from_counts(plus, counts, bound)


# ---------------------------------------------------------------------------
# relation checks on random samples


def random_partition(rng: random.Random, max_boxes: int) -> Partition:
    y: Partition = ()
    for _ in range(rng.randint(0, max_boxes)):
        x, row = rng.choice(addable_boxes(y))
        y = _add_at(y, x - row)
    return y


def _bracket(op1, op2, v):
    return op1(op2(v)) - op2(op1(v))


def _ad_power(x, k, y):
    """ad(x)^k (y) as a composite operator."""
    op = y
    for _ in range(k):
        op = (lambda inner: lambda v: x(inner(v)) - inner(x(v)))(op)
    return op


def _integer_relations(c, cp, v):
    E = lambda k: (lambda w: apply_E(k, w))
    F = lambda k: (lambda w: apply_F(k, w))
    H = lambda k: (lambda w: apply_H(k, w))
    D = lambda k: (lambda w: apply_D(k, w))
    a = cartan_entry(c, cp)
    dl = 1 if c == cp else 0
    zero = FockVector()
    checks = [
        ("[H_c,H_c']=0", _bracket(H(c), H(cp), v), zero),
        ("[E_c,F_c']=δH_c", _bracket(E(c), F(cp), v), apply_H(c, v).scale(dl)),
        ("[H_c,E_c']=aE_c'", _bracket(H(c), E(cp), v), apply_E(cp, v).scale(a)),
        ("[H_c,F_c']=-aF_c'", _bracket(H(c), F(cp), v), apply_F(cp, v).scale(-a)),
        ("[D_c,D_c']=0", _bracket(D(c), D(cp), v), zero),
        ("[D_c,H_c']=0", _bracket(D(c), H(cp), v), zero),
        ("[E_c,D_c']=δE_c", _bracket(E(c), D(cp), v), apply_E(c, v).scale(dl)),
        ("[F_c,D_c']=-δF_c", _bracket(F(c), D(cp), v), apply_F(c, v).scale(-dl)),
    ]
    if c != cp:
        checks.append(("Serre E", _ad_power(E(c), 1 - a, E(cp))(v), zero))
        checks.append(("Serre F", _ad_power(F(c), 1 - a, F(cp))(v), zero))
    return checks


def _periodic_relations(c, cp, n, v):
    P = lambda kind, k: (lambda w: apply_periodic(kind, k, n, w))
    a = periodic_cartan_entry(c, cp, n)
    dl = 1 if (c - cp) % (n + 1) == 0 else 0
    zero = FockVector()
    checks = [
        ("[e,f]=δh", _bracket(P("E", c), P("F", cp), v), P("H", c)(v).scale(dl)),
        ("[h,e]=ae", _bracket(P("H", c), P("E", cp), v), P("E", cp)(v).scale(a)),
        ("[h,f]=-af", _bracket(P("H", c), P("F", cp), v), P("F", cp)(v).scale(-a)),
        ("[h,h]=0", _bracket(P("H", c), P("H", cp), v), zero),
        ("[e,d]=δe", _bracket(P("E", c), P("D", cp), v), P("E", c)(v).scale(dl)),
    ]
    if not dl:
        checks.append(("Serre e", _ad_power(P("E", c), 1 - a, P("E", cp))(v), zero))
        checks.append(("Serre f", _ad_power(P("F", c), 1 - a, P("F", cp))(v), zero))
    return checks


def check_relations(n: int, samples: int, max_boxes: int, seed: int = 0) -> list[str]:
    """Run every operator relation on random (labels, partition) samples.

    Returns a list of failure descriptions (empty when everything holds).
    """
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        y = random_partition(rng, max_boxes)
        v = FockVector.basis(y)
        span = _content_range(y)
        c = rng.randint(span.start - 1, span.stop)
        cp = c + rng.choice([-2, -1, 0, 1, 1, 2]) if rng.random() < 0.8 else rng.randint(
            span.start - 1, span.stop
        )
        for name, lhs, rhs in _integer_relations(c, cp, v):
            if lhs != rhs:
                failures.append(f"{name} at c={c}, c'={cp}, Y={y}: {lhs!r} != {rhs!r}")
        lc, lcp = rng.randrange(n + 1), rng.randrange(n + 1)
        for name, lhs, rhs in _periodic_relations(lc, lcp, n, v):
            if lhs != rhs:
                failures.append(f"{name} at [c]={lc}, [c']={lcp}, Y={y}: {lhs!r} != {rhs!r}")
        d = apply_periodic("D", lc, n, v)
        expect = v.scale(sum(diagonal_length(y, k) for k in span if k % (n + 1) == lc))
        if d != expect:
            failures.append(f"d eigenvalue at [c]={lc}, Y={y}")
    return failures


# ---------------------------------------------------------------------------
# rectangle modules


def _commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def _rank(rows) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


@dataclass
class RectangleModule:
    n: int
    a: int
    b: int
    c: int
    width: int
    height: int
    labels: list[int]
    basis: list[Partition]
    e: dict[int, np.ndarray] = field(repr=False)
    f: dict[int, np.ndarray] = field(repr=False)
    h: dict[int, np.ndarray] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def cartan(self, i: int, j: int) -> int:
        p, q = self.labels.index(i), self.labels.index(j)
        return cartan_entry(p, q)

    def relation_failures(self) -> list[str]:
        out = []
        L = self.labels
        eq = np.array_equal
        for i in L:
            for j in L:
                a = self.cartan(i, j)
                if not eq(_commutator(self.e[i], self.f[j]), self.h[i] if i == j else 0 * self.h[i]):
                    out.append(f"[e{i},f{j}]")
                if not eq(_commutator(self.h[i], self.e[j]), a * self.e[j]):
                    out.append(f"[h{i},e{j}]")
                if not eq(_commutator(self.h[i], self.f[j]), -a * self.f[j]):
                    out.append(f"[h{i},f{j}]")
                if _commutator(self.h[i], self.h[j]).any():
                    out.append(f"[h{i},h{j}]")
                if i != j:
                    for name, x, y in (("e", self.e[i], self.e[j]), ("f", self.f[i], self.f[j])):
                        m = y
                        for _ in range(1 - a):
                            m = _commutator(x, m)
                        if m.any():
                            out.append(f"Serre {name}{i},{name}{j}")
        return out

    def highest_weight_ok(self) -> bool:
        v0 = self.basis.index(())
        for i in self.labels:
            if self.e[i][:, v0].any():
                return False
            expect = np.zeros(self.dimension, dtype=np.int64)
            expect[v0] = 1 if i == self.b else 0
            if not np.array_equal(self.h[i][:, v0], expect):
                return False
        return True

    def singular_dimension(self) -> int:
        """Dimension of the common kernel of all e_i."""
        rows = [list(map(int, row)) for i in self.labels for row in self.e[i]]
        return self.dimension - _rank(rows)

    def is_irreducible(self) -> bool:
        # finite-dimensional modules of sl_k are semisimple, so the module is
        # irreducible iff it has a single line of highest-weight vectors
        return self.singular_dimension() == 1

    def dimension_ok(self) -> bool:
        k = self.width + self.height
        return self.dimension == comb(k, self.width) == sum(qbinom(k, self.width))


def rectangle_module(n: int, a: int, b: int, c: int) -> RectangleModule:
    """Partitions inside the rectangle whose corner box is labelled b.

    Width and height are fixed by the labels: the bottom row ends at label c
    and the first column ends at label a.
    """
    m = n + 1
    if n < 1 or not all(0 <= x <= n for x in (a, b, c)):
        raise ValueError(f"labels must lie in 0..{n}")
    width = (c - b) % m + 1
    height = (b - a) % m + 1
    if width + height - 1 > m:
        raise ValueError(
            f"rectangle {width}x{height} would meet some label on two diagonals"
        )
    contents = list(range(-(height - 1), width))
    labels = [(b + k) % m for k in contents]
    basis = sorted(
        tuple(r for r in rows if r)
        for rows in _rectangle_partitions(width, height)
    )
    index = {y: t for t, y in enumerate(basis)}
    dim = len(basis)
    e, f, h = {}, {}, {}
    for k, lab in zip(contents, labels):
        em = np.zeros((dim, dim), dtype=np.int64)
        fm = np.zeros((dim, dim), dtype=np.int64)
        hm = np.zeros((dim, dim), dtype=np.int64)
        for t, y in enumerate(basis):
            z = _remove_at(y, k)
            if z is not None:
                em[index[z], t] = 1
            z = _add_at(y, k)
            if z is not None:
                fm[index[z], t] = 1
            hm[t, t] = _h_value(y, k)
        e[lab], f[lab], h[lab] = em, fm, hm
    return RectangleModule(n, a, b, c, width, height, labels, basis, e, f, h)


def _rectangle_partitions(width: int, height: int):
    # a partition inside width x height <-> choice of which of the
    # width + height boundary steps are horizontal
    total = width + height
    for pos in combinations(range(total), width):
        rows = []
        x = 0
        for s in range(total):
            if s in pos:
                x += 1
            else:
                rows.append(x)
        yield tuple(sorted(rows, reverse=True))
