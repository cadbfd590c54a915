"""Registry of exact verification checks, grouped into suites.

Each check returns ``(ok, detail)``.  Checks that sample take a seed so the
report is reproducible.  ``INVARIANTS`` lists every invariant the package
promises; the registry must cover it exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from . import cyclo, fock, parts, rootsys, series, subst, theta
from .cyclo import Cyclo, RootOfUnity

SUITES = ("cartan", "substitution", "theta", "fibers", "fock")

INVARIANTS = {
    "rootsys.inverse_identity": "C·C^{-1} = I for every finite ADE diagram of rank <= 8",
    "rootsys.closed_forms": "inverse Cartan matrices and dual Coxeter numbers match the closed forms",
    "rootsys.null_vector": "C·δ = 0 for every affine diagram of rank <= 8",
    "rootsys.dual_coxeter_sum": "h = 1 + Σ_{0→j} c_j for every affine diagram of rank <= 8",
    "rootsys.basis_roundtrip": "alpha/Lambda basis changes are mutually inverse",
    "cyclo.ring_axioms": "ring axioms on 200 random triples per order <= 30, inverses on 20 of them",
    "cyclo.cyclotomic_product": "Π_{d|L} Φ_d = x^L - 1 for L <= 60",
    "cyclo.qbinom_at_roots": "[n,k] at primitive (n+1)-th roots equals (-1)^k ξ^{-k(k+1)/2}, n <= 12",
    "cyclo.qbinom_symmetry": "[n,k] = [n,n-k] and [n,k](1) = binomial(n,k)",
    "series.mul_laws": "series product is associative and commutative",
    "series.substitute_homomorphism": "substitution is multiplicative on random pairs",
    "series.truncation_monotone": "truncating a product equals the product of truncations",
    "subst.property2": "s(e^{α_i - ã_i}) = e^{α_i} for all affine diagrams of rank <= 8 and all I0",
    "subst.type_a_equivalence": "generic and type-A constructions agree for n <= 6",
    "subst.c_constant": "c(Λ_0) is a root of unity and matches the type-A closed form for n <= 6",
    "subst.delta": "s(e^{-δ}) = e^{-δ|I+} for all affine diagrams of rank <= 8",
    "parts.projection_closure": "projection is extensive and idempotent; fixed points are the generated partitions",
    "parts.fiber_contains": "λ lies in the fiber of its projection (<= 18 boxes, n <= 3)",
    "parts.fibers_partition": "fibers partition the set of partitions (n <= 3, size <= 10)",
    "parts.conjugation": "mwt_c of the conjugate equals mwt_{-c}",
    "parts.saturation": "quotient enumeration is unchanged when the box cap grows by n+1",
    "parts.fiber_identity": "fiber identity and strip-factor product, generated λ <= 15 boxes, n <= 3",
    "theta.full_support": "theta_full has nonnegative support and equals the partition count (n <= 3, degree 8)",
    "theta.quot_integrality": "theta_quot equals the substituted theta_full and has nonnegative integer coefficients",
    "theta.lattice_completeness": "lattice enumeration agrees with box scans of radius R and R+1",
    "theta.cross_model": "enumeration, substituted enumeration, substituted theta and theta_quot agree (type A)",
    "fock.relations": "all operator relations on 300 seeded samples with <= 20 boxes",
    "fock.cartan_matrix": "a_cc' is 2 / -1 / 0",
    "fock.membership": "kernel membership equals I+-generation for partitions <= 18 boxes",
    "fock.trace_identity": "trace over the I+-generated subspace equals the quotient enumeration",
    "fock.rectangles": "rectangle modules with width+height <= 8: dimension, highest weight, relations, irreducibility",
}


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    run: Callable[[int], tuple[bool, str]]


REGISTRY: list[Check] = []


def check(name: str, suite: str):
    def deco(fn):
        if name not in INVARIANTS:
            raise KeyError(f"unlisted invariant {name}")
        REGISTRY.append(Check(name, suite, fn))
        return fn
    return deco


def finite_diagrams(max_rank: int = 8):
    for fam, lo in (("A", 1), ("D", 4), ("E", 6)):
        for r in range(lo, max_rank + 1):
            if fam == "E" and r > 8:
                continue
            yield rootsys.build_diagram(fam, r, False)


def affine_diagrams(max_rank: int = 8):
    for d in finite_diagrams(max_rank):
        yield rootsys.build_diagram(d.family, d.rank, True)


def proper_subsets(vertices):
    vertices = list(vertices)
    for k in range(1, len(vertices)):
        yield from combinations(vertices, k)


def all_partitions(max_size: int):
    def rec(rem, cap):
        yield ()
        for k in range(min(rem, cap), 0, -1):
            for rest in rec(rem - k, k):
                yield (k,) + rest
    return list(rec(max_size, max_size))


def _fail(items, limit=3) -> tuple[bool, str]:
    if items:
        return False, "; ".join(map(str, items[:limit])) + (f" (+{len(items) - limit} more)" if len(items) > limit else "")
    return True, ""


# ---------------------------------------------------------------------------
# cartan suite


EXPECTED_H = {"A": lambda l: l + 1, "D": lambda l: 2 * l - 2, "E": lambda l: {6: 12, 7: 18, 8: 30}[l]}


@check("rootsys.inverse_identity", "cartan")
def _inverse_identity(seed):
    bad = [d.name for d in finite_diagrams() if not (rootsys.cartan(d) @ rootsys.inverse_cartan(d)).is_identity()]
    return _fail(bad)


@check("rootsys.closed_forms", "cartan")
def _closed_forms(seed):
    bad = []
    for d in finite_diagrams():
        if rootsys.inverse_cartan(d).as_lists() != rootsys.closed_form_inverse(d.family, d.rank).as_lists():
            bad.append(f"{d.name} inverse")
        # simply laced: the dual Coxeter number is also the sum of the affine marks
        marks_sum = sum(rootsys.marks(rootsys.build_diagram(d.family, d.rank, True)).values())
        if not rootsys.dual_coxeter(d) == EXPECTED_H[d.family](d.rank) == marks_sum:
            bad.append(f"{d.name} h")
    return _fail(bad)


@check("rootsys.null_vector", "cartan")
def _null_vector(seed):
    bad = []
    for d in affine_diagrams():
        a = rootsys.marks(d)
        image = rootsys.cartan(d).apply({i: Fraction(x) for i, x in a.items()})
        if any(image.values()):
            bad.append(d.name)
    return _fail(bad)


@check("rootsys.dual_coxeter_sum", "cartan")
def _dual_coxeter_sum(seed):
    return _fail([d.name for d in affine_diagrams() if not rootsys.verify_h_cj(d)])


@check("rootsys.basis_roundtrip", "cartan")
def _basis_roundtrip(seed):
    rng = random.Random(seed)
    bad = []
    for d in finite_diagrams():
        for _ in range(100):
            v = rootsys.WeightVector(
                {i: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in d.vertices}, "alpha"
            )
            back = rootsys.to_alpha(rootsys.to_lambda(v, d), d)
            if back.coords != v.coords:
                bad.append(d.name)
                break
    return _fail(bad)


def _random_cyclo(rng, L):
    return Cyclo(L, {k: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for k in range(L) if rng.random() < 0.5})


@check("cyclo.ring_axioms", "cartan")
def _ring_axioms(seed):
    rng = random.Random(seed)
    bad = []
    for L in range(1, 31):
        for t in range(200):
            a, b, c = (_random_cyclo(rng, L) for _ in range(3))
            ok = (
                (a * b) * c == a * (b * c)
                and a * b == b * a
                and (a + b) + c == a + (b + c)
                and a * (b + c) == a * b + a * c
                and (t >= 20 or a.is_zero() or a * a.inverse() == 1)
            )
            if not ok:
                bad.append(f"L={L}: {a!r}, {b!r}, {c!r}")
    return _fail(bad)


@check("cyclo.cyclotomic_product", "cartan")
def _cyclotomic_product(seed):
    bad = []
    for L in range(1, 61):
        prod = (1,)
        for d in range(1, L + 1):
            if L % d == 0:
                prod = cyclo._poly_mul(prod, cyclo.cyclotomic_poly(d))
        target = (-1,) + (0,) * (L - 1) + (1,)
        if tuple(prod) != target:
            bad.append(L)
    return _fail(bad)


@check("cyclo.qbinom_at_roots", "cartan")
def _qbinom_at_roots(seed):
    bad = []
    for n in range(1, 13):
        for p in range(1, n + 2):
            xi = RootOfUnity.primitive(n + 1, p)
            if not xi.is_primitive(n + 1):
                continue
            for k in range(n + 1):
                try:
                    cyclo.qbinom_at_root(n, k, xi)
                except ArithmeticError as exc:
                    bad.append(str(exc))
    return _fail(bad)


@check("cyclo.qbinom_symmetry", "cartan")
def _qbinom_symmetry(seed):
    from math import comb
    bad = [
        (n, k) for n in range(0, 16) for k in range(n + 1)
        if cyclo.qbinom(n, k) != cyclo.qbinom(n, n - k) or sum(cyclo.qbinom(n, k)) != comb(n, k)
    ]
    return _fail(bad)


# ---------------------------------------------------------------------------
# substitution suite


def _random_series(rng, variables, bound, weights, terms=8, cyclotomic=True):
    out = {}
    for _ in range(terms):
        exp = tuple(rng.randint(0, 2) for _ in variables)
        if cyclotomic:
            coeff = Cyclo.from_root(Fraction(rng.randint(0, 11), 12)).scalar_mul(rng.randint(-3, 3))
        else:
            coeff = rng.randint(-3, 3)
        out[exp] = coeff
    return series.MultiSeries(variables, out, bound, weights)


@check("series.mul_laws", "substitution")
def _mul_laws(seed):
    rng = random.Random(seed)
    bad = []
    for t in range(30):
        vs = (0, 1, 2)
        a, b, c = (_random_series(rng, vs, 5, (1, 1, 2)) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * b != b * a:
            bad.append(t)
    return _fail(bad)


@check("series.substitute_homomorphism", "substitution")
def _substitute_homomorphism(seed):
    rng = random.Random(seed)
    bad = []
    cases = [("A2~", "0"), ("A3~", "1,3"), ("D4~", "0"), ("A1~", "1")]
    for t in range(50):
        name, plus = cases[t % len(cases)]
        d = rootsys.parse_diagram(name)
        Ip = rootsys.parse_subset(plus, d)
        sub = subst.build(d, frozenset(d.vertices) - Ip)
        a_marks = rootsys.marks(d)
        w = tuple(a_marks[i] if i in Ip else 0 for i in d.vertices)
        a, b = (_random_series(rng, d.vertices, 4, w, 6) for _ in range(2))
        lhs = series.substitute(a * b, sub)
        rhs = series.substitute(a, sub) * series.substitute(b, sub)
        if lhs != rhs:
            bad.append(f"{name} I+={plus}")
    return _fail(bad)


@check("series.truncation_monotone", "substitution")
def _truncation_monotone(seed):
    rng = random.Random(seed)
    bad = []
    for t in range(30):
        vs = (0, 1)
        a, b = (_random_series(rng, vs, 6, (1, 1), 10) for _ in range(2))
        for B in range(0, 6):
            if (a * b).truncate(B) != a.truncate(B) * b.truncate(B):
                bad.append((t, B))
    for B in range(0, 8):
        if parts.enumerate_Z_full(2, 8).truncate(B) != parts.enumerate_Z_full(2, B):
            bad.append(("Z_full", B))
    return _fail(bad)


@check("subst.property2", "substitution")
def _property2(seed):
    bad = []
    for d in affine_diagrams():
        for I0 in proper_subsets(d.vertices):
            if not subst.verify_property2(subst.build(d, I0)):
                bad.append(f"{d.name} I0={I0}")
    return _fail(bad)


@check("subst.type_a_equivalence", "substitution")
def _type_a_equivalence(seed):
    bad = []
    for n in range(1, 7):
        d = rootsys.build_diagram("A", n, True)
        for I0 in proper_subsets(d.vertices):
            s1, s2 = subst.build(d, I0), subst.build_type_a(d, I0)
            if s1.k != s2.k or s1.lam_fin != s2.lam_fin:
                bad.append(f"{d.name} I0={I0}")
    return _fail(bad)


@check("subst.c_constant", "substitution")
def _c_constant(seed):
    bad = []
    for d in affine_diagrams():
        for I0 in proper_subsets(d.vertices):
            s = subst.build(d, I0)
            c = subst.c_constant(s, subst.fundamental(0))
            if c ** s.common_order() != 1 or (0 in s.Iplus and c != 1):
                bad.append(f"{d.name} I0={I0}: {c!r}")
            if d.family == "A" and d.rank <= 6 and c != subst.c_constant_type_a(d.rank, s.Iplus):
                bad.append(f"{d.name} I0={I0}: closed form")
    return _fail(bad)


@check("subst.delta", "substitution")
def _delta(seed):
    bad = []
    for d in affine_diagrams():
        for I0 in proper_subsets(d.vertices):
            if not subst.verify_delta(subst.build(d, I0)):
                bad.append(f"{d.name} I0={I0}")
    return _fail(bad)


# ---------------------------------------------------------------------------
# fibers suite


def _plus_sets(n):
    return [frozenset(s) for k in range(1, n + 1) for s in combinations(range(n + 1), k)]


@check("parts.projection_closure", "fibers")
def _projection_closure(seed):
    bad = []
    P = all_partitions(14)
    for n in range(1, 4):
        for Ip in _plus_sets(n) + [frozenset(range(n + 1))]:
            for lam in P:
                mu = parts.project(lam, Ip, n)
                contained = len(mu) >= len(lam) and all(a >= b for a, b in zip(mu, lam))
                if not contained or parts.project(mu, Ip, n) != mu or not parts.is_generated(mu, Ip, n):
                    bad.append((n, sorted(Ip), lam))
                if (mu == lam) != parts.is_generated(lam, Ip, n):
                    bad.append((n, sorted(Ip), lam, "fixed point"))
    return _fail(bad)


@check("parts.fiber_contains", "fibers")
def _fiber_contains(seed):
    bad = []
    P = all_partitions(18)
    for n in range(1, 4):
        for Ip in _plus_sets(n):
            cache = {}
            for lam in P:
                mu = parts.project(lam, Ip, n)
                if mu not in cache:
                    cache[mu] = set(parts.fiber(mu, Ip, n))
                if lam not in cache[mu]:
                    bad.append((n, sorted(Ip), lam))
    return _fail(bad)


@check("parts.fibers_partition", "fibers")
def _fibers_partition(seed):
    B = 10
    P = set(all_partitions(B))
    bad = []
    for n in range(1, 4):
        for Ip in _plus_sets(n):
            weights = tuple(1 if c in Ip else 0 for c in range(n + 1))
            seen: list = []
            for mu, _ in parts.partitions_by_weight(n, weights, B):
                if parts.is_generated(mu, Ip, n):
                    seen.extend(lam for lam in parts.fiber(mu, Ip, n) if sum(lam) <= B)
            if len(seen) != len(P) or set(seen) != P:
                bad.append((n, sorted(Ip), len(seen), len(P)))
    return _fail(bad)


@check("parts.conjugation", "fibers")
def _conjugation(seed):
    bad = []
    for lam in all_partitions(14):
        for n in range(1, 6):
            m = n + 1
            a, b = parts.multiweight(parts.conjugate(lam), n), parts.multiweight(lam, n)
            if any(a[c] != b[(m - c) % m] for c in range(m)):
                bad.append((n, lam))
    return _fail(bad)


@check("parts.saturation", "fibers")
def _saturation(seed):
    bad = []
    W = 6
    for n in range(1, 4):
        for Ip in _plus_sets(n):
            B = parts.box_bound(n, W)
            a = parts.enumerate_Z_quot(n, Ip, W, max_boxes=B)
            b = parts.enumerate_Z_quot(n, Ip, W, max_boxes=B + n + 1)
            c = parts.enumerate_Z_quot(n, Ip, W)
            if a != b or a != c:
                bad.append((n, sorted(Ip)))
    return _fail(bad)


@check("parts.fiber_identity", "fibers")
def _fiber_identity(seed):
    bad = []
    P = all_partitions(15)
    for n in range(1, 4):
        d = rootsys.build_diagram("A", n, True)
        for Ip in _plus_sets(n):
            sub = subst.build(d, frozenset(d.vertices) - Ip)
            c = subst.c_constant(sub, subst.fundamental(0))
            for lam in P:
                if not parts.is_generated(lam, Ip, n):
                    continue
                if not parts.verify_fiber_identity(lam, sub):
                    bad.append((n, sorted(Ip), lam))
                prod = Cyclo.one()
                for f in parts.strip_factors(lam, Ip, n):
                    prod = prod * f.value
                if prod != c:
                    bad.append((n, sorted(Ip), lam, "strips"))
    return _fail(bad)


# ---------------------------------------------------------------------------
# theta suite


@check("theta.full_support", "theta")
def _full_support(seed):
    bad = []
    for n in range(1, 4):
        d = rootsys.build_diagram("A", n, True)
        t = theta.theta_full(d, 8)
        if t != parts.enumerate_Z_full(n, 8):
            bad.append(d.name)
    for name in ("D4~", "E6~"):
        try:
            theta.theta_full(rootsys.parse_diagram(name), 4)
        except ArithmeticError as exc:
            bad.append(f"{name}: {exc}")
    return _fail(bad)


QUOT_DIAGRAMS = ("A1~", "A2~", "A3~", "A4~", "D4~", "D5~", "E6~")


@check("theta.quot_integrality", "theta")
def _quot_integrality(seed):
    bad = []
    for name in QUOT_DIAGRAMS:
        d = rootsys.parse_diagram(name)
        a = rootsys.marks(d)
        for I0 in proper_subsets(d.vertices):
            Ip = frozenset(d.vertices) - frozenset(I0)
            sub = subst.build(d, I0)
            w = tuple(a[i] if i in Ip else 0 for i in d.vertices)
            c = subst.c_constant(sub, subst.fundamental(0))
            lhs = series.substitute(theta.theta_full(d, 6, w), sub).scale(c.inverse())
            tq = theta.theta_quot(d, Ip, 6)
            if lhs != tq:
                bad.append(f"{name} I+={sorted(Ip)}")
            if not all(x.is_integer() and x.as_fraction() >= 0 for _, x in tq.items()):
                bad.append(f"{name} I+={sorted(Ip)} integrality")
    return _fail(bad)


@check("theta.lattice_completeness", "theta")
def _lattice_completeness(seed):
    bad = []
    for name in ("A1~", "A2~", "A3~", "D4~"):
        d = rootsys.parse_diagram(name)
        a = rootsys.marks(d)
        for Ip in [frozenset(d.vertices)] + [frozenset(d.vertices) - frozenset(s) for s in proper_subsets(d.vertices)][:4]:
            w = {i: (a[i] if i in Ip else 0) for i in d.vertices}
            _, _, _, A, b = theta._lattice_data(d, w)
            for bound in (3, 6):
                fast = theta.lattice_points(A, b, bound)
                scan, R = theta.box_scan(A, b, bound)
                wider, _ = theta.box_scan(A, b, bound, R + 1)
                if not (fast == scan == wider):
                    bad.append(f"{name} I+={sorted(Ip)} bound={bound}")
    return _fail(bad)


@check("theta.cross_model", "theta")
def _cross_model(seed):
    bad = []
    W = 8
    for n in range(1, 4):
        d = rootsys.build_diagram("A", n, True)
        for Ip in _plus_sets(n):
            sub = subst.build(d, frozenset(d.vertices) - Ip)
            cinv = subst.c_constant(sub, subst.fundamental(0)).inverse()
            w = tuple(1 if i in Ip else 0 for i in d.vertices)
            quot = parts.enumerate_Z_quot(n, Ip, W)
            from_enum = series.substitute(parts.enumerate_Z_full(n, W, w), sub).scale(cinv)
            from_theta = series.substitute(theta.theta_full(d, W, w), sub).scale(cinv)
            direct = theta.theta_quot(d, Ip, W)
            if not (quot == from_enum == from_theta == direct):
                bad.append(f"{d.name} I+={sorted(Ip)}")
    return _fail(bad)


# ---------------------------------------------------------------------------
# fock suite


@check("fock.relations", "fock")
def _relations(seed):
    bad = []
    for n in (1, 2, 3):
        bad += fock.check_relations(n, 300, 20, seed=seed + n)
    return _fail(bad)


@check("fock.cartan_matrix", "fock")
def _cartan_matrix(seed):
    bad = []
    for c in range(-6, 7):
        for cp in range(-6, 7):
            expect = 2 if c == cp else (-1 if abs(c - cp) == 1 else 0)
            if fock.cartan_entry(c, cp) != expect:
                bad.append((c, cp))
    return _fail(bad)


@check("fock.membership", "fock")
def _membership(seed):
    bad = []
    P = all_partitions(18)
    for n in range(1, 4):
        for Ip in _plus_sets(n):
            for y in P:
                if fock.in_F_Iplus(y, n, Ip) != parts.is_generated(y, Ip, n):
                    bad.append((n, sorted(Ip), y))
    return _fail(bad)


@check("fock.trace_identity", "fock")
def _trace_identity(seed):
    bad = []
    for n in range(1, 4):
        for Ip in _plus_sets(n) + [frozenset(range(n + 1))]:
            if fock.trace_over_FIplus(n, Ip, 8) != parts.enumerate_Z_quot(n, Ip, 8):
                bad.append((n, sorted(Ip)))
    return _fail(bad)


def rectangle_parameters(max_total: int = 8):
    for n in range(1, max_total):
        for a in range(n + 1):
            for b in range(n + 1):
                for c in range(n + 1):
                    m = n + 1
                    w, h = (c - b) % m + 1, (b - a) % m + 1
                    if w + h - 1 <= m and w + h <= max_total:
                        yield n, a, b, c


@check("fock.rectangles", "fock")
def _rectangles(seed):
    bad = []
    for n, a, b, c in rectangle_parameters():
        M = fock.rectangle_module(n, a, b, c)
        problems = M.relation_failures()
        if not M.dimension_ok():
            problems.append("dimension")
        if not M.highest_weight_ok():
            problems.append("highest weight")
        if not M.is_irreducible():
            problems.append("reducible")
        if problems:
            bad.append(f"n={n} (a,b,c)=({a},{b},{c}): {problems[:3]}")
    return _fail(bad)


# ---------------------------------------------------------------------------


def suite_checks(suite: str) -> list[Check]:
    if suite == "all":
        return sorted(REGISTRY, key=lambda c: (SUITES.index(c.suite), REGISTRY.index(c)))
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}, all")
    return [c for c in REGISTRY if c.suite == suite]


def run_suite(suite: str, seed: int = 0) -> list[tuple[Check, bool, str]]:
    results = []
    for c in suite_checks(suite):
        try:
            ok, detail = c.run(seed)
        except Exception as exc:  # an invariant violation surfaces as an exception
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((c, ok, detail))
    return results
