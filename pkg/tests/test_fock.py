import random
from itertools import combinations

import pytest

from adesubst.fock import (
    FockVector,
    apply_D,
    apply_E,
    apply_F,
    apply_H,
    apply_periodic,
    check_relations,
    in_F_Iplus,
    periodic_cartan_entry,
    random_partition,
    rectangle_module,
    trace_over_FIplus,
)
from adesubst.parts import enumerate_Z_quot, is_generated, multiweight

from oracles import partitions_upto


def test_vacuum_moves():
    vac = FockVector.vacuum()
    assert apply_F(0, vac) == FockVector.basis((1,))
    assert apply_F(1, vac).is_zero()
    assert apply_E(0, vac).is_zero()
    assert apply_H(0, vac) == vac
    assert apply_H(1, vac).is_zero()


def test_add_then_remove():
    y = (3, 1)
    v = FockVector.basis(y)
    # content 3 is addable at the end of the bottom row
    assert apply_F(3, v) == FockVector.basis((4, 1))
    assert apply_E(3, apply_F(3, v)) == v
    assert apply_E(-1, v) == FockVector.basis((3,))


def test_vector_arithmetic():
    a = FockVector.basis((1,))
    b = FockVector.basis((2,))
    assert (a + b - a) == b
    assert (2 * a - a.scale(2)).is_zero()


def test_relations_on_random_samples():
    for n in (1, 2, 3):
        assert check_relations(n, samples=15, max_boxes=10, seed=n) == []


def test_periodic_cartan():
    assert periodic_cartan_entry(0, 1, 1) == -2
    assert periodic_cartan_entry(0, 3, 3) == -1
    assert periodic_cartan_entry(0, 2, 3) == 0
    assert periodic_cartan_entry(5, 1, 3) == 2


def test_d_counts_labels():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 4)
        y = random_partition(rng, 14)
        v = FockVector.basis(y)
        mwt = multiweight(y, n)
        for label in range(n + 1):
            assert apply_periodic("d", label, n, v) == FockVector.basis(y).scale(mwt[label])
        for c in range(-len(y), (y[0] if y else 0) + 1):
            assert apply_D(c, v) == v.scale(sum(1 for r, row in enumerate(y) for x in range(row) if x - r == c))


def test_membership_is_generation():
    for n in (1, 2, 3):
        for k in range(1, n + 1):
            for plus in combinations(range(n + 1), k):
                for y in partitions_upto(9):
                    assert in_F_Iplus(y, n, plus) == is_generated(y, plus, n)


def test_trace_identity():
    for n, plus in ((1, {0}), (2, {1}), (2, {0, 2}), (3, {0, 2})):
        assert trace_over_FIplus(n, plus, 5) == enumerate_Z_quot(n, plus, 5)


def test_sl2_one_box_rectangle():
    mod = rectangle_module(1, 0, 0, 0)
    assert (mod.width, mod.height) == (1, 1)
    assert mod.basis == [(), (1,)]
    assert mod.dimension_ok()
    assert mod.relation_failures() == []
    assert mod.highest_weight_ok()
    assert mod.is_irreducible()


def test_rectangle_modules_small():
    for n in (2, 3, 4):
        for a in range(n + 1):
            for b in range(n + 1):
                for c in range(n + 1):
                    try:
                        mod = rectangle_module(n, a, b, c)
                    except ValueError:
                        continue
                    assert mod.dimension_ok()
                    assert mod.relation_failures() == []
                    assert mod.highest_weight_ok()
                    assert mod.is_irreducible()


def test_rectangle_rejects_bad_input():
    with pytest.raises(ValueError):
        rectangle_module(2, 0, 3, 0)
    # 3x2 in n=2 needs four distinct diagonals with only three labels
    with pytest.raises(ValueError):
        rectangle_module(2, 0, 1, 0)
