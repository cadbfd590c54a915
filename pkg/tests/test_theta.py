import json
import random
from fractions import Fraction

import pytest

from adesubst.cyclo import Cyclo
from adesubst.parts import enumerate_Z_full, enumerate_Z_quot
from adesubst.rootsys import build_diagram, marks, parse_diagram
from adesubst.series import MultiSeries, substitute
from adesubst.subst import build, c_constant, fundamental
from adesubst.theta import (
    QSeries,
    QuadraticForm,
    box_scan,
    euler_prefactor,
    lattice_points,
    leading_minors,
    q_specialize,
    shifted_theta,
    theta_full,
    theta_quot,
)


def counts(qs):
    return {e: int(c.as_fraction()) for e, c in qs.items()}


def test_theta_of_x_squared():
    # Σ q^{k^2}: 1 + 2q + 2q^4 + 2q^9
    qs = shifted_theta(QuadraticForm([[1]]), 10)
    assert counts(qs) == {0: 1, 1: 2, 4: 2, 9: 2}


def test_theta_half_shift():
    # Σ q^{(k+1/2)^2}: exponents 1/4, 9/4, 25/4, each twice
    qs = shifted_theta(QuadraticForm([[1]], [Fraction(1, 2)]), 7)
    assert counts(qs) == {Fraction(1, 4): 2, Fraction(9, 4): 2, Fraction(25, 4): 2}


def test_theta_a2_against_brute_force():
    g = [[1, Fraction(-1, 2)], [Fraction(-1, 2), 1]]
    z = [Fraction(1, 3), Fraction(2, 3)]
    form = QuadraticForm(g, z)
    qs = shifted_theta(form, 6)
    brute = {}
    for a in range(-12, 13):
        for b in range(-12, 13):
            e = form.value([a + z[0], b + z[1]])
            if e <= 6:
                brute[e] = brute.get(e, 0) + 1
    assert counts(qs) == brute


def test_form_validation():
    with pytest.raises(ValueError):
        QuadraticForm([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        QuadraticForm([[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        QuadraticForm([[1]], [0, 0])
    assert leading_minors([[2, -1], [-1, 2]]) == [2, 3]


def test_lattice_points_match_box_scan():
    rng = random.Random(8)
    for _ in range(40):
        k = rng.randint(1, 3)
        # M M^T + I is positive definite
        M = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)]
        A = [[sum(M[i][t] * M[j][t] for t in range(k)) + (i == j) for j in range(k)] for i in range(k)]
        b = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(k)]
        bound = rng.randint(0, 12)
        pts, _ = box_scan(A, b, bound)
        assert lattice_points(A, b, bound) == pts


def test_lattice_points_empty_cases():
    assert lattice_points([], [], 0) == [()]
    assert lattice_points([[1]], [0], -1) == []


def test_euler_prefactor_is_partition_generating_function():
    pre = euler_prefactor((0,), (1,), 1, 10, (1,))
    p = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert [int(pre.coefficient((k,)).as_fraction()) for k in range(11)] == p


def test_theta_full_equals_enumeration():
    for n in (1, 2, 3):
        d = build_diagram("A", n, True)
        bound = 7
        th = theta_full(d, bound, weights=(1,) * (n + 1))
        assert th == enumerate_Z_full(n, bound)


def test_theta_full_for_d4_has_nonnegative_integer_coefficients():
    th = theta_full(parse_diagram("D4~"), 6)
    for _, c in th.items():
        assert c.is_rational() and c.as_fraction() > 0


def test_theta_quot_equals_enumeration():
    for n, plus in ((1, {0}), (2, {1}), (2, {0, 2}), (3, {1, 3})):
        d = build_diagram("A", n, True)
        th = theta_quot(d, plus, 6)
        assert th == enumerate_Z_quot(n, plus, 6)


def test_theta_quot_is_rescaled_substitution():
    for name, plus in (("A2~", {1}), ("D4~", {0}), ("D4~", {2})):
        d = parse_diagram(name)
        a = marks(d)
        sub = build(d, set(d.vertices) - plus)
        w = tuple(a[i] if i in plus else 0 for i in d.vertices)
        full = theta_full(d, 6, weights=w)
        c = c_constant(sub, fundamental(0))
        assert substitute(full, sub).scale(c.inverse()) == theta_quot(d, plus, 6)


def test_q_specialize():
    d = parse_diagram("A1~")
    qs = q_specialize(theta_quot(d, {0}, 10), marks(d))
    assert counts(qs) == {0: 1, 1: 1, 2: 3, 3: 5, 4: 9, 5: 14, 6: 24, 7: 35, 8: 55, 9: 81, 10: 120}
    with pytest.raises(ValueError):
        q_specialize(MultiSeries.one((0, 1), 3, (1, 2)), {0: 1, 1: 1})


def test_qseries_json():
    qs = QSeries({Fraction(1, 4): 2, 0: Cyclo.from_root(Fraction(1, 3))}, 3)
    data = json.loads(qs.dumps())
    assert [t["exp"] for t in data["terms"]] == ["0", "1/4"]
