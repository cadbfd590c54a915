import random
from itertools import combinations

import pytest

from adesubst.cyclo import Cyclo
from adesubst.parts import (
    addable_boxes,
    addable_labels,
    box_bound,
    conjugate,
    enumerate_Z_full,
    enumerate_Z_quot,
    fiber,
    fiber_size,
    format_partition,
    is_generated,
    multiweight,
    parse_partition,
    partitions_by_weight,
    project,
    size,
    strip_factors,
    verify_fiber_identity,
)
from adesubst.rootsys import build_diagram
from adesubst.subst import build, c_constant, fundamental

from oracles import addable_by_scan, brute_fiber, contains, label_counts, partitions_upto


def plus_sets(n):
    labels = range(n + 1)
    for k in range(1, n + 1):
        yield from (frozenset(s) for s in combinations(labels, k))


def test_parse_and_format():
    assert parse_partition("3,3,2,2") == (3, 3, 2, 2)
    assert parse_partition("") == ()
    assert format_partition((7, 5)) == "7,5"
    with pytest.raises(ValueError):
        parse_partition("2,3")
    assert parse_partition("2,0") == (2,)


def test_multiweight_examples():
    assert multiweight((), 3) == (0, 0, 0, 0)
    assert multiweight((3, 3, 2, 2), 2) == (3, 4, 3)
    assert multiweight((2,), 1) == (1, 1)
    assert multiweight((1, 1), 1) == (1, 1)


def test_multiweight_matches_oracle():
    for lam in partitions_upto(9):
        for n in (1, 2, 4):
            assert multiweight(lam, n) == label_counts(lam, n)


def test_addable_labels_examples():
    assert addable_labels((), 3) == [0]
    assert sorted(addable_labels((1,), 4)) == [1, 4]
    assert set(addable_labels((3, 3, 2, 2), 2)) <= {0, 2}
    assert is_generated((3, 3, 2, 2), {0, 2}, 2)


def test_addable_boxes_match_scan():
    for lam in partitions_upto(10):
        assert sorted(addable_boxes(lam)) == sorted(addable_by_scan(lam))


def test_empty_generated_iff_zero_in_plus():
    for n in (1, 2, 3):
        for plus in plus_sets(n):
            assert is_generated((), plus, n) == (0 in plus)


def test_project_display_example():
    assert project((7, 5, 4, 4, 3, 1, 1), {1, 2}, 4) == (7, 7, 4, 4, 4, 1, 1, 1)


def test_project_idempotent_and_extensive():
    for lam in partitions_upto(10):
        for n in (1, 2, 3):
            for plus in plus_sets(n):
                mu = project(lam, plus, n)
                assert contains(mu, lam)
                assert is_generated(mu, plus, n)
                assert project(mu, plus, n) == mu
                assert (mu == lam) == is_generated(lam, plus, n)


def grow(rng, lam, k):
    lam = tuple(lam)
    for _ in range(k):
        x, y = rng.choice(addable_boxes(lam))
        rows = list(lam) + [0]
        rows[y] += 1
        lam = tuple(r for r in rows if r)
    return lam


def test_project_monotone_random_pairs():
    rng = random.Random(11)
    small = partitions_upto(12)
    for _ in range(500):
        lam = rng.choice(small)
        bigger = grow(rng, lam, rng.randint(0, 6))
        n = rng.randint(1, 4)
        plus = rng.choice(list(plus_sets(n)))
        assert contains(project(bigger, plus, n), project(lam, plus, n))


def test_fiber_matches_brute_force():
    for n in (1, 2, 3):
        for plus in plus_sets(n):
            for mu in partitions_upto(10):
                if not is_generated(mu, plus, n):
                    continue
                got = sorted(fiber(mu, plus, n))
                assert got == brute_fiber(mu, plus, n, project), (n, plus, mu)
                assert fiber_size(mu, plus, n) == len(got)


def test_fiber_rejects_non_generated():
    with pytest.raises(ValueError):
        fiber((1, 1), {0}, 1)


def test_fiber_of_empty():
    assert fiber((), {0}, 2) == [()]


def test_fibers_cover_every_partition_once():
    for n in (1, 2):
        for plus in plus_sets(n):
            seen = {}
            for lam in partitions_upto(12):
                mu = project(lam, plus, n)
                seen.setdefault(mu, []).append(lam)
            for mu, members in seen.items():
                assert sorted(members) == sorted(fiber(mu, plus, n)) or size(mu) > 12


def test_conjugation_symmetry():
    for lam in partitions_upto(10):
        for n in (1, 2, 3, 4):
            a, b = multiweight(lam, n), multiweight(conjugate(lam), n)
            assert all(b[c] == a[(n + 1 - c) % (n + 1)] for c in range(n + 1))


def test_strip_product_equals_constant():
    rng = random.Random(4)
    for n in range(1, 5):
        d = build_diagram("A", n, True)
        for plus in plus_sets(n):
            sub = build(d, set(d.vertices) - plus)
            target = c_constant(sub, fundamental(0))
            for _ in range(20):
                lam = project(grow(rng, (), rng.randint(0, 14)), plus, n)
                total = Cyclo.one()
                for f in strip_factors(lam, plus, n):
                    total = total * f.value
                assert total == target, (n, plus, lam)


def test_fiber_identity_exhaustive_small():
    for n in range(1, 4):
        d = build_diagram("A", n, True)
        for plus in plus_sets(n):
            sub = build(d, set(d.vertices) - plus)
            for lam in partitions_upto(15):
                if is_generated(lam, plus, n):
                    assert verify_fiber_identity(lam, sub), (n, plus, lam)


def test_fiber_identity_display_example():
    d = build_diagram("A", 4, True)
    sub = build(d, {0, 3, 4})
    assert verify_fiber_identity((7, 7, 4, 4, 4, 1, 1, 1), sub)


def test_enumerate_full_anchors():
    z = enumerate_Z_full(1, 6)
    assert z.coefficient((0, 0)) == 1
    assert z.coefficient((1, 0)) == 1
    assert z.coefficient((1, 1)) == 2
    assert z.coefficient((0, 1)) == 0


def test_enumerate_full_counts_partitions():
    counts = {}
    for lam in partitions_upto(8):
        counts[label_counts(lam, 2)] = counts.get(label_counts(lam, 2), 0) + 1
    z = enumerate_Z_full(2, 8)
    assert {e: int(c.as_fraction()) for e, c in z.items()} == counts


def test_enumerate_quot_constant_term():
    assert enumerate_Z_quot(2, {0, 1}, 3).coefficient((0, 0)) == 1
    # without 0 in I+ the projection of the empty partition is the only
    # generated partition carrying no I+ boxes
    assert project((), {1, 2}, 2) == (1,)
    assert enumerate_Z_quot(2, {1, 2}, 3).coefficient((0, 0)) == 1


def test_enumerate_quot_matches_brute_force():
    n, plus, W = 1, {0}, 5
    counts = {}
    for lam in partitions_upto(2 * W + 4):
        if is_generated(lam, plus, n) and multiweight(lam, n)[0] <= W:
            key = (multiweight(lam, n)[0],)
            counts[key] = counts.get(key, 0) + 1
    z = enumerate_Z_quot(n, plus, W)
    assert {e: int(c.as_fraction()) for e, c in z.items()} == counts


def test_saturation():
    for n in (1, 2, 3):
        for plus in plus_sets(n):
            W = 4
            B = box_bound(n, W)
            assert enumerate_Z_quot(n, plus, W, B) == enumerate_Z_quot(n, plus, W, B + n + 1)
            assert enumerate_Z_quot(n, plus, W) == enumerate_Z_quot(n, plus, W, B)


def test_partitions_by_weight_needs_a_bound():
    with pytest.raises(ValueError):
        list(partitions_by_weight(2, (0, 0, 0), 3))
    with pytest.raises(ValueError):
        list(partitions_by_weight(2, (1, 1), 3))
