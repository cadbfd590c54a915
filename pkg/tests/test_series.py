import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adesubst.cyclo import Cyclo
from adesubst.rootsys import marks, parse_diagram
from adesubst.series import MultiSeries, invert_unit, mul, substitute
from adesubst.subst import build


def geometric(variables, delta, bound, weights=None):
    terms = {}
    k = 0
    while True:
        e = tuple(k * x for x in delta)
        s = MultiSeries(variables, {}, bound, weights)
        if s.degree(e) > bound:
            break
        terms[e] = 1
        k += 1
    return MultiSeries(variables, terms, bound, weights)


def test_construction_drops_zero_and_out_of_range_terms():
    s = MultiSeries((0, 1), {(0, 0): 1, (1, 0): 0, (3, 3): 5}, 4)
    assert dict(s.items()) == {(0, 0): Cyclo.one()}
    with pytest.raises(ValueError):
        MultiSeries((0, 1), {(1,): 1}, 3)


def test_multiply_by_one():
    a = MultiSeries((0, 1), {(0, 0): 2, (1, 2): 3, (2, 0): -1}, 4)
    assert a * MultiSeries.one((0, 1), 4) == a


def test_geometric_series():
    delta = (1, 1)
    g = geometric((0, 1), delta, 10)
    one_minus = MultiSeries((0, 1), {(0, 0): 1, (1, 1): -1}, 10)
    assert one_minus * g == MultiSeries.one((0, 1), 10)
    assert invert_unit(one_minus) == g


def test_invert_one_and_errors():
    one = MultiSeries.one((0,), 5)
    assert invert_unit(one) == one
    with pytest.raises(ZeroDivisionError):
        invert_unit(MultiSeries((0,), {(1,): 1}, 5))
    # a degree-zero non-constant term cannot be inverted within a truncation
    with pytest.raises(ValueError):
        invert_unit(MultiSeries((0, 1), {(0, 0): 1, (1, 0): 1}, 3, weights=(0, 1)))


def test_variable_mismatch_rejected():
    with pytest.raises(ValueError):
        mul(MultiSeries.one((0, 1), 3), MultiSeries.one((0, 2), 3))
    with pytest.raises(ValueError):
        mul(MultiSeries.one((0, 1), 3), MultiSeries.one((0, 1), 3, weights=(1, 2)))


def test_truncation_is_min():
    a = MultiSeries.one((0,), 3)
    b = MultiSeries.one((0,), 7)
    assert (a * b).truncation == 3
    with pytest.raises(ValueError):
        a.truncate(5)


def test_nonnegative_support_check():
    MultiSeries((0,), {(2,): 1}, 3).assert_nonnegative_support()
    with pytest.raises(ArithmeticError):
        MultiSeries((0, 1), {(-1, 2): 1}, 3).assert_nonnegative_support()


def test_json_is_sorted_and_roundtrips():
    s = MultiSeries((0, 1), {(1, 0): Cyclo.from_root(Fraction(1, 3)), (0, 1): 2, (0, 0): 1}, 2)
    data = json.loads(s.dumps())
    assert [t["exp"] for t in data["terms"]] == [[0, 0], [0, 1], [1, 0]]
    assert MultiSeries.from_json(data) == s


def rand_series(rng, variables, bound, weights=None, cyclotomic=True):
    terms = {}
    for _ in range(rng.randint(1, 8)):
        e = tuple(rng.randint(0, 2) for _ in variables)
        if cyclotomic:
            terms[e] = Cyclo.from_root(Fraction(rng.randint(0, 5), 6)).scalar_mul(rng.randint(-2, 2))
        else:
            terms[e] = rng.randint(-3, 3)
    return MultiSeries(variables, terms, bound, weights)


def test_product_of_positive_series_has_positive_support():
    rng = random.Random(1)
    for _ in range(20):
        a = rand_series(rng, (0, 1, 2), 5, cyclotomic=False)
        b = rand_series(rng, (0, 1, 2), 5, cyclotomic=False)
        (a * b).assert_nonnegative_support()


def test_inverse_against_direct_product():
    rng = random.Random(2)
    for _ in range(50):
        a = rand_series(rng, (0, 1), 5)
        # force the constant term to 1 so the series is a unit
        a = a + MultiSeries((0, 1), {(0, 0): 1 - a.coefficient((0, 0))}, 5)
        assert a * invert_unit(a) == MultiSeries.one((0, 1), 5)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_mul_associative_commutative(seed):
    rng = random.Random(seed)
    a, b, c = (rand_series(rng, (0, 1), 4, (1, 2)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 5))
def test_truncation_monotone(seed, bound):
    rng = random.Random(seed)
    a, b = (rand_series(rng, (0, 1, 2), 6) for _ in range(2))
    assert (a * b).truncate(bound) == a.truncate(bound) * b.truncate(bound)


def plus_weights(d, Iplus):
    a = marks(d)
    return tuple(a[i] if i in Iplus else 0 for i in d.vertices)


def test_substitute_one_and_delta():
    for name, plus in (("A1~", {0}), ("A3~", {1, 2}), ("D4~", {0, 3}), ("E6~", {2})):
        d = parse_diagram(name)
        sub = build(d, set(d.vertices) - plus)
        w = plus_weights(d, plus)
        one = MultiSeries.one(d.vertices, 4, w)
        assert dict(substitute(one, sub).items()) == {(0,) * len(plus): Cyclo.one()}
        a = marks(d)
        delta = MultiSeries(d.vertices, {tuple(a[i] for i in d.vertices): 1}, 4, w)
        out = dict(substitute(delta, sub).items())
        assert out == {tuple(a[i] for i in sub.plus_order): Cyclo.one()}


def test_substitute_needs_plus_weighted_truncation():
    d = parse_diagram("A2~")
    sub = build(d, {1})
    with pytest.raises(ValueError):
        substitute(MultiSeries.one(d.vertices, 3), sub)


def test_substitute_is_multiplicative():
    rng = random.Random(5)
    for _ in range(50):
        name, plus = rng.choice([("A2~", {0}), ("A3~", {0, 2}), ("D4~", {2}), ("A1~", {1})])
        d = parse_diagram(name)
        sub = build(d, set(d.vertices) - plus)
        w = plus_weights(d, plus)
        a, b = (rand_series(rng, d.vertices, 4, w) for _ in range(2))
        assert substitute(a * b, sub) == substitute(a, sub) * substitute(b, sub)
