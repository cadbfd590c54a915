"""Root-system data for finite and affine simply-laced (ADE) Dynkin diagrams.

Vertex numbering
----------------
Finite diagrams use vertices ``1..l``:

* ``A_l``: the path 1 - 2 - ... - l.
* ``D_l``: the path 1 - ... - (l-1) with l attached to l-2.
* ``E_6``: path 1..5, 6 attached to 3.  ``E_7``: path 1..6, 7 attached to 4.
  ``E_8``: path 1..7, 8 attached to 5.

Affine diagrams add the vertex 0.  Affine ``A_n`` is the cycle 0..n (for
``n = 1`` a single edge of multiplicity two).  For D and E the extra vertex
attaches to 2 (D_l), 6 (E_6), 6 (E_7) and 1 (E_8), which extends the finite
diagram to the standard affine one.

All arithmetic is exact (int / Fraction).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Diagram",
    "RationalMatrix",
    "SubdiagramDecomposition",
    "WeightVector",
    "build_diagram",
    "parse_diagram",
    "parse_subset",
    "cartan",
    "inverse_cartan",
    "closed_form_inverse",
    "dual_coxeter",
    "marks",
    "decompose",
    "verify_h_cj",
    "k_vector",
    "ws_from",
    "ws_expansion",
    "to_lambda",
    "to_alpha",
    "numbering_table",
]


@dataclass(frozen=True)
class Diagram:
    family: str
    rank: int
    affine: bool
    vertices: tuple[int, ...]
    # (i, j, multiplicity) with i < j
    edges: tuple[tuple[int, int, int], ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}" + ("~" if self.affine else "")

    def multiplicity(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        for a, b, m in self.edges:
            if (a, b) == (i, j):
                return m
        return 0

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b, m in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def arrows(self, i: int) -> list[tuple[int, int]]:
        """Arrows of the double quiver leaving ``i`` as (target, multiplicity)."""
        return [(j, self.multiplicity(i, j)) for j in self.neighbors(i)]

    @property
    def distinguished(self) -> int | None:
        return 0 if self.affine else None

    def __str__(self) -> str:
        return self.name


def _valid(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family == "D":
        return rank >= 4
    if family == "E":
        return rank in (6, 7, 8)
    return False


def _finite_edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    branch = {6: 3, 7: 4, 8: 5}[rank]
    return [(i, i + 1) for i in range(1, rank - 1)] + [(branch, rank)]


_AFFINE_ATTACH = {"D": 2, "E6": 6, "E7": 6, "E8": 1}


@lru_cache(maxsize=None)
def build_diagram(family: str, rank: int, affine: bool) -> Diagram:
    family = family.upper()
    if not _valid(family, rank):
        raise ValueError(f"no Dynkin diagram of type {family}{rank}")
    if not affine:
        edges = tuple((i, j, 1) for i, j in _finite_edges(family, rank))
        return Diagram(family, rank, False, tuple(range(1, rank + 1)), edges)
    vertices = tuple(range(rank + 1))
    if family == "A":
        if rank == 1:
            edges = ((0, 1, 2),)
        else:
            pairs = [(i, i + 1) for i in range(rank)] + [(0, rank)]
            edges = tuple(sorted((min(p), max(p), 1) for p in pairs))
    else:
        attach = _AFFINE_ATTACH["D" if family == "D" else f"E{rank}"]
        pairs = [(0, attach)] + _finite_edges(family, rank)
        edges = tuple(sorted((i, j, 1) for i, j in pairs))
    return Diagram(family, rank, True, vertices, edges)


_NAME_RE = re.compile(r"^\s*([ADEade])\s*(\d+)\s*(~?)\s*$")


def parse_diagram(text: str) -> Diagram:
    """Parse ``"A2~"`` (affine) or ``"D4"`` (finite)."""
    m = _NAME_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse diagram name {text!r}")
    return build_diagram(m.group(1).upper(), int(m.group(2)), bool(m.group(3)))


def parse_subset(text: str, diagram: Diagram) -> frozenset[int]:
    try:
        items = frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ValueError(f"cannot parse vertex subset {text!r}") from None
    bad = items - set(diagram.vertices)
    if bad:
        raise ValueError(f"vertices {sorted(bad)} are not in {diagram.name}")
    return items


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class RationalMatrix:
    """Square matrix with rows and columns indexed by vertex labels."""

    vertices: tuple[int, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def _pos(self, v: int) -> int:
        return self.vertices.index(v)

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        return self.rows[self._pos(i)][self._pos(j)]

    def row_sum(self, i: int):
        return sum(self.rows[self._pos(i)])

    def apply(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        return {
            i: sum(self[i, j] * vec.get(j, 0) for j in self.vertices) for i in self.vertices
        }

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.vertices != other.vertices:
            raise ValueError("matrix index sets differ")
        n = len(self.vertices)
        rows = tuple(
            tuple(sum(self.rows[i][k] * other.rows[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return RationalMatrix(self.vertices, rows)

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0) for i, row in enumerate(self.rows) for j, x in enumerate(row)
        )

    def submatrix(self, vertices) -> RationalMatrix:
        vs = tuple(sorted(vertices))
        return RationalMatrix(vs, tuple(tuple(self[i, j] for j in vs) for i in vs))

    def as_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


def cartan(diagram: Diagram) -> RationalMatrix:
    vs = diagram.vertices
    rows = tuple(
        tuple(2 if i == j else -diagram.multiplicity(i, j) for j in vs) for i in vs
    )
    return RationalMatrix(vs, rows)


def _gauss_jordan_inverse(m: RationalMatrix) -> RationalMatrix:
    n = len(m.vertices)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return RationalMatrix(m.vertices, tuple(tuple(row[n:]) for row in aug))


def inverse_cartan(diagram: Diagram) -> RationalMatrix:
    """Exact inverse of a finite Cartan matrix by Gaussian elimination."""
    if diagram.affine:
        raise ValueError(f"the Cartan matrix of affine {diagram.name} is singular")
    return _inverse_cartan_cached(diagram.family, diagram.rank)


@lru_cache(maxsize=None)
def _inverse_cartan_cached(family: str, rank: int) -> RationalMatrix:
    return _gauss_jordan_inverse(cartan(build_diagram(family, rank, False)))


_E_INVERSES = {
    6: (3, [[4, 5, 6, 4, 2, 3], [5, 10, 12, 8, 4, 6], [6, 12, 18, 12, 6, 9],
            [4, 8, 12, 10, 5, 6], [2, 4, 6, 5, 4, 3], [3, 6, 9, 6, 3, 6]]),
    7: (2, [[3, 4, 5, 6, 4, 2, 3], [4, 8, 10, 12, 8, 4, 6], [5, 10, 15, 18, 12, 6, 9],
            [6, 12, 18, 24, 16, 8, 12], [4, 8, 12, 16, 12, 6, 8], [2, 4, 6, 8, 6, 4, 4],
            [3, 6, 9, 12, 8, 4, 7]]),
    8: (1, [[2, 3, 4, 5, 6, 4, 2, 3], [3, 6, 8, 10, 12, 8, 4, 6],
            [4, 8, 12, 15, 18, 12, 6, 9], [5, 10, 15, 20, 24, 16, 8, 12],
            [6, 12, 18, 24, 30, 20, 10, 15], [4, 8, 12, 16, 20, 14, 7, 10],
            [2, 4, 6, 8, 10, 7, 4, 5], [3, 6, 9, 12, 15, 10, 5, 8]]),
}


def closed_form_inverse(family: str, rank: int) -> RationalMatrix:
    """Tabulated inverse Cartan matrices (A_l, D_l formulas; literal E_6..E_8)."""
    family = family.upper()
    if not _valid(family, rank):
        raise ValueError(f"no Dynkin diagram of type {family}{rank}")
    l = rank
    idx = range(1, l + 1)
    if family == "A":
        rows = [[Fraction(min(i, j)) - Fraction(i * j, l + 1) for j in idx] for i in idx]
    elif family == "D":
        def entry(i, j):
            if i <= l - 2 and j <= l - 2:
                return Fraction(min(i, j))
            if i <= l - 2:
                return Fraction(i, 2)
            if j <= l - 2:
                return Fraction(j, 2)
            return Fraction(l - 2 * abs(i - j), 4)
        rows = [[entry(i, j) for j in idx] for i in idx]
    else:
        den, table = _E_INVERSES[rank]
        rows = [[Fraction(x, den) for x in row] for row in table]
    return RationalMatrix(tuple(idx), tuple(tuple(r) for r in rows))


def dual_coxeter(diagram: Diagram) -> int:
    if diagram.affine:
        raise ValueError("dual Coxeter number is taken for finite diagrams")
    if diagram.family == "A":
        return diagram.rank + 1
    if diagram.family == "D":
        return 2 * diagram.rank - 2
    return {6: 12, 7: 18, 8: 30}[diagram.rank]


def marks(diagram: Diagram) -> dict[int, int]:
    """Coefficients a_i of the imaginary root delta (a_0 = 1)."""
    if not diagram.affine:
        raise ValueError("marks are defined for affine diagrams")
    l = diagram.rank
    if diagram.family == "A":
        return {i: 1 for i in diagram.vertices}
    if diagram.family == "D":
        return {i: 1 if i in (0, 1, l - 1, l) else 2 for i in diagram.vertices}
    table = {
        6: (1, 1, 2, 3, 2, 1, 2),
        7: (1, 1, 2, 3, 4, 3, 2, 2),
        8: (1, 2, 3, 4, 5, 6, 4, 2, 3),
    }[l]
    return dict(enumerate(table))


def finite_part(diagram: Diagram) -> Diagram:
    """The finite diagram on I' = I minus {0}."""
    if not diagram.affine:
        raise ValueError("finite part is taken of an affine diagram")
    return build_diagram(diagram.family, diagram.rank, False)


# ---------------------------------------------------------------------------
# subdiagrams


def _components(diagram: Diagram, subset) -> list[list[int]]:
    remaining = set(subset)
    comps = []
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        while stack:
            v = stack.pop()
            for w in diagram.neighbors(v):
                if w in remaining and w not in comp:
                    comp.add(w)
                    stack.append(w)
        remaining -= comp
        comps.append(sorted(comp))
    return comps


def _classify(diagram: Diagram, comp: list[int]) -> tuple[Diagram, dict[int, int]]:
    """Identify a connected full subgraph as finite ADE; return it and an embedding.

    The embedding maps component vertices to the standard numbering.
    """
    cs = set(comp)
    nbr = {v: [w for w in diagram.neighbors(v) if w in cs] for v in comp}
    if any(diagram.multiplicity(v, w) != 1 for v in comp for w in nbr[v]):
        raise ValueError("subdiagram is not simply laced")
    n_edges = sum(len(x) for x in nbr.values()) // 2
    if n_edges != len(comp) - 1:
        raise ValueError("subdiagram contains a cycle, so it is not of finite type")
    k = len(comp)
    branch = [v for v in comp if len(nbr[v]) >= 3]

    def walk(start, avoid):
        path, prev, cur = [start], avoid, start
        while True:
            nxt = [w for w in nbr[cur] if w != prev]
            if len(nxt) != 1:
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)

    if not branch:
        ends = [v for v in comp if len(nbr[v]) <= 1]
        path = walk(min(ends), None)
        return build_diagram("A", k, False), {v: i + 1 for i, v in enumerate(path)}
    if len(branch) > 1 or len(nbr[branch[0]]) != 3:
        raise ValueError("subdiagram is not of finite ADE type")
    b = branch[0]
    legs = sorted((walk(w, b) for w in nbr[b]), key=lambda p: (len(p), p))
    lens = tuple(len(p) for p in legs)
    if lens[0] == 1 and lens[1] == 1:
        # D_k: long leg 1..k-3 ending at the branch k-2, short legs k-1 and k
        long_leg = list(reversed(legs[2]))
        order = long_leg + [b, legs[0][0], legs[1][0]]
        return build_diagram("D", k, False), {v: i + 1 for i, v in enumerate(order)}
    if lens[0] == 1 and lens[1] == 2 and lens[2] in (2, 3, 4):
        # E_k: path along the two longer legs through the branch, short leg last
        left = list(reversed(legs[2])) if k != 6 else list(reversed(legs[1]))
        right = legs[1] if k != 6 else legs[2]
        order = left + [b] + right + [legs[0][0]]
        return build_diagram("E", k, False), {v: i + 1 for i, v in enumerate(order)}
    raise ValueError(f"subdiagram with legs {lens} is not of finite ADE type")


@dataclass(frozen=True)
class SubdiagramDecomposition:
    diagram: Diagram
    I0: frozenset[int]
    Iplus: frozenset[int]
    components: tuple[tuple[Diagram, dict[int, int]], ...]
    h: dict[int, int]
    c: dict[int, Fraction]
    # type A only: keyed by I+ vertex (r, l) or I0 vertex (n)
    r: dict[int, int] | None = None
    l: dict[int, int] | None = None
    n: dict[int, int] | None = None
    cfin_inverse: RationalMatrix | None = field(default=None, repr=False)

    def component_of(self, j: int) -> tuple[Diagram, dict[int, int]]:
        for comp in self.components:
            if j in comp[1]:
                return comp
        raise KeyError(j)


def _type_a_gaps(n: int, Iplus) -> tuple[dict, dict, dict]:
    m = n + 1
    plus = sorted(Iplus)
    r, l, runs = {}, {}, {}
    for i in plus:
        j = i + 1
        while j % m not in Iplus:
            j += 1
        r[i] = j - i - 1
        j = i - 1
        while j % m not in Iplus:
            j -= 1
        l[i] = i - j - 1
        # the I0 run to the right of i
        for t in range(i + 1, i + 1 + r[i]):
            runs[t % m] = r[i]
    return r, l, runs


def decompose(diagram: Diagram, I0) -> SubdiagramDecomposition:
    I0 = frozenset(I0)
    verts = frozenset(diagram.vertices)
    if not I0 or I0 == verts:
        raise ValueError("I0 must be a nonempty proper subset of the vertices")
    if not I0 <= verts:
        raise ValueError(f"vertices {sorted(I0 - verts)} are not in {diagram.name}")
    C = cartan(diagram)
    comps, h, c = [], {}, {}
    for comp in _components(diagram, I0):
        fin, emb = _classify(diagram, comp)
        inv = _gauss_jordan_inverse(C.submatrix(comp))
        comps.append((fin, emb))
        for j in comp:
            h[j] = dual_coxeter(fin)
            c[j] = inv.row_sum(j)
    cfin_inv = _gauss_jordan_inverse(C.submatrix(I0))
    r = l = n = None
    if diagram.family == "A" and diagram.affine:
        r, l, n = _type_a_gaps(diagram.rank, verts - I0)
    return SubdiagramDecomposition(
        diagram, I0, verts - I0, tuple(comps), h, c, r, l, n, cfin_inv
    )


def verify_h_cj(diagram: Diagram) -> bool:
    """Check h(I') = 1 + sum over arrows 0 -> j of c_j, exactly."""
    if not diagram.affine:
        raise ValueError("needs an affine diagram")
    dec = decompose(diagram, frozenset(diagram.vertices) - {0})
    rhs = 1 + sum(m * dec.c[j] for j, m in diagram.arrows(0))
    return dual_coxeter(finite_part(diagram)) == rhs


# ---------------------------------------------------------------------------
# weight vectors


@dataclass(frozen=True)
class WeightVector:
    """Rational coordinates over a vertex set in the root (alpha) or weight basis."""

    coords: dict[int, Fraction]
    basis: str  # "alpha" or "lambda"

    def __post_init__(self):
        if self.basis not in ("alpha", "lambda"):
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(
            self, "coords", {i: Fraction(x) for i, x in sorted(self.coords.items())}
        )

    def __getitem__(self, i: int) -> Fraction:
        return self.coords.get(i, Fraction(0))

    def dot(self, other: dict[int, Fraction]) -> Fraction:
        return sum((x * other.get(i, 0) for i, x in self.coords.items()), Fraction(0))


def to_lambda(vec: WeightVector, diagram: Diagram) -> WeightVector:
    """alpha_i = sum_j C_ij Lambda_j (finite diagrams)."""
    if vec.basis == "lambda":
        return vec
    if diagram.affine:
        raise ValueError("basis change needs a finite diagram")
    C = cartan(diagram)
    return WeightVector(
        {j: sum(vec[i] * C[i, j] for i in diagram.vertices) for j in diagram.vertices},
        "lambda",
    )


def to_alpha(vec: WeightVector, diagram: Diagram) -> WeightVector:
    if vec.basis == "alpha":
        return vec
    if diagram.affine:
        raise ValueError("basis change needs a finite diagram")
    inv = inverse_cartan(diagram)
    return WeightVector(
        {j: sum(vec[i] * inv[i, j] for i in diagram.vertices) for j in diagram.vertices},
        "alpha",
    )


def k_vector(diagram: Diagram, Iplus) -> WeightVector:
    """Exponents (in units of 2*pi*i) of the root-of-unity substitution."""
    Iplus = frozenset(Iplus)
    dec = decompose(diagram, frozenset(diagram.vertices) - Iplus)
    k = {}
    for i in diagram.vertices:
        if i in dec.I0:
            k[i] = Fraction(1, dec.h[i] + 1)
        else:
            k[i] = -sum(
                (m * dec.c[j] / (dec.h[j] + 1) for j, m in diagram.arrows(i) if j in dec.I0),
                Fraction(0),
            )
    return WeightVector(k, "lambda")


def ws_from(w: WeightVector, vprime: WeightVector, dec: SubdiagramDecomposition) -> WeightVector:
    """Framing of the collapsing fibre: sum over I0 of <w - v', alpha_i^vee> Lambda_i^fin."""
    if w.basis != "lambda" or vprime.basis != "alpha":
        raise ValueError("w must be in the Lambda basis and v' in the alpha basis")
    C = cartan(dec.diagram)
    verts = dec.diagram.vertices
    ws = {i: w[i] - sum(vprime[j] * C[j, i] for j in verts) for i in sorted(dec.I0)}
    result = WeightVector(ws, "lambda")
    if _lambda_fin_to_alpha(result, dec) != ws_expansion(w, vprime, dec):
        raise ArithmeticError("pairing and expansion formulas for w^s disagree")
    return result


def _lambda_fin_to_alpha(vec: WeightVector, dec: SubdiagramDecomposition) -> dict[int, Fraction]:
    inv = dec.cfin_inverse
    out = {i: Fraction(0) for i in dec.diagram.vertices}
    for j, x in vec.coords.items():
        for k in dec.I0:
            out[k] += x * inv[j, k]
    return out


def ws_expansion(w: WeightVector, vprime: WeightVector, dec: SubdiagramDecomposition) -> dict[int, Fraction]:
    """``w|_{I0} - v' + sum_j v'_j (alpha_j - tilde alpha_j)`` in alpha coordinates over I."""
    C = cartan(dec.diagram)
    verts = dec.diagram.vertices
    total = _lambda_fin_to_alpha(WeightVector({i: w[i] for i in dec.I0}, "lambda"), dec)
    for j in verts:
        total[j] -= vprime[j]
    for j in verts:
        if not vprime[j]:
            continue
        tilde = _lambda_fin_to_alpha(WeightVector({i: C[j, i] for i in dec.I0}, "lambda"), dec)
        total[j] += vprime[j]
        for k in verts:
            total[k] -= vprime[j] * tilde[k]
    return total


def numbering_table(diagram: Diagram) -> list[dict]:
    """One row per vertex: label, neighbours with multiplicity, and mark (affine)."""
    mk = marks(diagram) if diagram.affine else {}
    return [
        {
            "vertex": v,
            "neighbors": [[j, m] for j, m in diagram.arrows(v)],
            **({"mark": mk[v]} if diagram.affine else {}),
        }
        for v in diagram.vertices
    ]
