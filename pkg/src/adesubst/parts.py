"""Colored partitions for affine type A_n.

A partition is a tuple of row lengths, bottom row first.  Box (x, y) lies in
row y and column x, its content is x - y and its label is (x - y) mod (n+1).

The boundary of a partition is walked as a step sequence indexed by
integers: step s sits between contents s and s+1 and is either ``R`` (a
horizontal edge) or ``D`` (a vertical edge).  Far to the left every step is
``D``, far to the right every step is ``R``.  A box of content c is addable
exactly when steps (c-1, c) read ``D R`` and removable when they read ``R D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .cyclo import Cyclo, qbinom, evaluate_poly, RootOfUnity
from .series import MultiSeries, from_counts

__all__ = [
    "Partition",
    "parse_partition",
    "format_partition",
    "size",
    "boxes",
    "conjugate",
    "multiweight",
    "restrict_weight",
    "addable_boxes",
    "removable_boxes",
    "addable_labels",
    "is_generated",
    "project",
    "fiber",
    "StripFactor",
    "strip_factors",
    "diagonal_length",
    "partitions_by_weight",
    "enumerate_Z_full",
    "enumerate_Z_quot",
    "box_bound",
    "verify_fiber_identity",
]

Partition = tuple[int, ...]

R, D = "R", "D"


def make_partition(parts) -> Partition:
    lam = tuple(int(p) for p in parts if p)
    if any(p < 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"row lengths must be positive and weakly decreasing: {list(parts)}")
    return lam


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    return make_partition(int(t) for t in text.split(","))


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam))


def size(lam: Partition) -> int:
    return sum(lam)


def boxes(lam: Partition):
    for y, row in enumerate(lam):
        for x in range(row):
            yield x, y


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for row in lam if row > x) for x in range(lam[0]))


def multiweight(lam: Partition, n: int) -> tuple[int, ...]:
    m = n + 1
    counts = [0] * m
    for y, row in enumerate(lam):
        # contents -y .. row-1-y; count each residue class
        full, extra = divmod(row, m)
        for c in range(m):
            counts[c] += full
        for x in range(full * m, row):
            counts[(x - y) % m] += 1
    return tuple(counts)


def restrict_weight(weight, Iplus) -> tuple[int, ...]:
    return tuple(weight[i] for i in sorted(Iplus))


def diagonal_length(lam: Partition, c: int) -> int:
    """Number of boxes of content c."""
    if c >= 0:
        return sum(1 for y, row in enumerate(lam) if row > y + c)
    return sum(1 for y, row in enumerate(lam) if y >= -c and row > y + c)


def addable_boxes(lam: Partition) -> list[tuple[int, int]]:
    out = []
    for y in range(len(lam) + 1):
        x = lam[y] if y < len(lam) else 0
        if y == 0 or lam[y - 1] > x:
            out.append((x, y))
    return out


def removable_boxes(lam: Partition) -> list[tuple[int, int]]:
    out = []
    for y, row in enumerate(lam):
        below_next = lam[y + 1] if y + 1 < len(lam) else 0
        if row > below_next:
            out.append((row - 1, y))
    return out


def addable_labels(lam: Partition, n: int) -> list[int]:
    """Labels of the addable boxes, one per corner, sorted."""
    return sorted((x - y) % (n + 1) for x, y in addable_boxes(lam))


def is_generated(lam: Partition, Iplus, n: int) -> bool:
    Iplus = frozenset(Iplus)
    return all((x - y) % (n + 1) in Iplus for x, y in addable_boxes(lam))


def _add_box(lam: Partition, x: int, y: int) -> Partition:
    rows = list(lam)
    if y == len(rows):
        rows.append(1)
    else:
        rows[y] += 1
    return tuple(rows)


def project(lam: Partition, Iplus, n: int) -> Partition:
    """Smallest I+-generated partition containing lam.

    Any addable box with an I0 label must belong to every I+-generated
    partition containing lam, so adding such boxes until none is left
    reaches the minimum.
    """
    Iplus = frozenset(Iplus)
    if not Iplus:
        raise ValueError("I+ must be nonempty")
    m = n + 1
    while True:
        todo = [(x, y) for x, y in addable_boxes(lam) if (x - y) % m not in Iplus]
        if not todo:
            return lam
        rows = list(lam)
        for x, y in todo:
            if y == len(rows):
                rows.append(1)
            else:
                rows[y] += 1
        lam = tuple(rows)


# ---------------------------------------------------------------------------
# boundary step sequences


def _steps(lam: Partition) -> tuple[int, list[str]]:
    """Steps from index -len(lam) up to lam[0]-1 (exclusive of the constant tails)."""
    k = len(lam)
    seq: list[str] = []
    x = 0
    for y in range(k - 1, -1, -1):
        seq.extend(R * (lam[y] - x))
        x = lam[y]
        seq.append(D)
    return -k, seq


def _step_window(lam: Partition, lo: int, hi: int) -> list[str]:
    start, seq = _steps(lam)
    out = []
    for s in range(lo, hi):
        if s < start:
            out.append(D)
        elif s - start >= len(seq):
            out.append(R)
        else:
            out.append(seq[s - start])
    return out


def _from_steps(lo: int, seq) -> Partition:
    """Rebuild a partition from the steps at indices lo, lo+1, ... (tails implied)."""
    height = -lo
    x = 0
    rows = []
    for step in seq:
        if step == R:
            x += 1
        else:
            height -= 1
            if height < 0:
                raise ValueError("step sequence has the wrong charge")
            rows.append(x)
    if height != 0:
        raise ValueError("step sequence has the wrong charge")
    return make_partition(reversed(rows))


def _plus_diagonals(Iplus, n: int, lo: int, hi: int) -> list[int]:
    """Elements of the lift of I+ to Z covering [lo, hi], one extra on each side."""
    m = n + 1
    Iplus = frozenset(Iplus)
    a = lo - 1
    while a % m not in Iplus:
        a -= 1
    b = hi + 1
    while b % m not in Iplus:
        b += 1
    return [c for c in range(a, b + 1) if c % m in Iplus]


def _windows(lam: Partition, Iplus, n: int):
    """(i0, i1, steps in the window) for the strips between consecutive lifted I+ diagonals."""
    diags = _plus_diagonals(Iplus, n, -len(lam) - 1, (lam[0] if lam else 0) + 1)
    lo, hi = diags[0], diags[-1]
    seq = _step_window(lam, lo, hi)
    out = []
    for i0, i1 in zip(diags, diags[1:]):
        out.append((i0, i1, seq[i0 - lo:i1 - lo]))
    return lo, out


def fiber(mu: Partition, Iplus, n: int) -> list[Partition]:
    """All partitions whose projection is mu, sorted.

    Inside each strip the boundary of an I+-generated partition runs across a
    rectangle (all R steps before all D steps); the fiber consists of every
    rearrangement of those steps, chosen independently per strip.
    """
    if not is_generated(mu, Iplus, n):
        raise ValueError(f"{format_partition(mu)} is not generated by I+={sorted(Iplus)}")
    lo, wins = _windows(mu, Iplus, n)
    choices = []
    for _, _, steps in wins:
        a = steps.count(R)
        w = len(steps)
        if a in (0, w):
            choices.append([steps])
            continue
        opts = []
        for pos in combinations(range(w), a):
            s = [D] * w
            for p in pos:
                s[p] = R
            opts.append(s)
        choices.append(opts)
    out = []
    for pick in product(*choices):
        seq = [st for part in pick for st in part]
        out.append(_from_steps(lo, seq))
    return sorted(out)


def fiber_size(mu: Partition, Iplus, n: int) -> int:
    _, wins = _windows(mu, Iplus, n)
    total = 1
    for _, _, steps in wins:
        total *= comb(len(steps), steps.count(R))
    return total


# ---------------------------------------------------------------------------
# strip factors


@dataclass(frozen=True)
class StripFactor:
    i0: int
    i1: int
    case: int
    value: Cyclo


def _strip_case(i0: int, i1: int) -> int:
    if i0 >= 0:
        return 1
    if i1 <= 0:
        return 2
    return 3


def strip_factors(lam: Partition, Iplus, n: int) -> list[StripFactor]:
    """Per-strip roots of unity whose product is the constant c for Λ_0.

    Strips far from the partition contribute 1 and are left out.  L_i is the
    number of boxes on diagonal i and r = i1 - i0 - 1 the width of the I0 run.
    """
    if not is_generated(lam, Iplus, n):
        raise ValueError(f"{format_partition(lam)} is not generated by I+={sorted(Iplus)}")
    _, wins = _windows(lam, Iplus, n)
    out = []
    for i0, i1, _ in wins:
        r = i1 - i0 - 1
        L0, L1 = diagonal_length(lam, i0), diagonal_length(lam, i1)
        case = _strip_case(i0, i1)
        if case == 1:
            value = Cyclo.rational((-1) ** ((L0 - L1) % 2))
        elif case == 2:
            value = Cyclo.rational((-1) ** ((L1 - L0) % 2))
        else:
            value = Cyclo.from_root(Fraction(i1 * (i1 + 1), 2 * (r + 2))).scalar_mul(
                (-1) ** ((L1 - L0 + i1) % 2)
            )
        out.append(StripFactor(i0, i1, case, value))
    return out


def strip_factor_direct(lam: Partition, i0: int, i1: int, steps) -> Cyclo:
    """Same factor from the rectangle's q-binomial and the box count of the strip."""
    r = i1 - i0 - 1
    xi = RootOfUnity(Fraction(-1, r + 2))
    j = list(steps).count(R)
    delta = evaluate_poly(qbinom(r + 1, j), xi.inverse())
    count = sum(diagonal_length(lam, c) for c in range(i0, i1 + 1))
    return delta * (xi ** count).to_cyclo()


# ---------------------------------------------------------------------------
# enumeration


def box_bound(n: int, W: int) -> int:
    """A generous cap on the size of an I+-generated partition of I+-weight <= W."""
    return (n + 1) * (W + n + 1) * (n + 2)


def partitions_by_weight(n: int, weights, bound: int, max_boxes: int | None = None):
    """Yield (partition, multiweight) for every partition of weighted size <= bound.

    The weighted size is Σ_c weights[c]·mwt_c.  Adding a box never lowers it,
    so a depth-first search over rows (bottom row first) can prune on it.
    Every label must either carry positive weight or be bounded by max_boxes
    through the other labels, otherwise the search would not terminate.
    """
    m = n + 1
    weights = tuple(weights)
    if len(weights) != m:
        raise ValueError("one weight per label is required")
    if not any(weights) and max_boxes is None:
        raise ValueError("all weights are zero and no box bound was given")
    cap = max_boxes

    def row_weight(y: int, length: int):
        return [(x - y) % m for x in range(length)]

    rows: list[int] = []
    counts = [0] * m

    def rec(y: int, limit: int, deg: int, nboxes: int):
        yield tuple(rows), tuple(counts)
        added: list[int] = []
        d = deg
        nb = nboxes
        for length in range(1, limit + 1):
            label = (length - 1 - y) % m
            d += weights[label]
            nb += 1
            if d > bound or (cap is not None and nb > cap):
                break
            counts[label] += 1
            added.append(label)
            rows.append(length)
            yield from rec(y + 1, length, d, nb)
            rows.pop()
        for label in added:
            counts[label] -= 1

    # the first row is unbounded in length; every m consecutive boxes contain
    # every label, so a positive weight somewhere stops it
    first_limit = _first_row_limit(weights, bound, m, cap)
    yield from rec(0, first_limit, 0, 0)


def _first_row_limit(weights, bound, m, cap):
    if cap is not None:
        return cap
    per_cycle = sum(weights)
    return m * (bound // per_cycle + 1)


def enumerate_Z_full(n: int, bound: int, weights=None) -> MultiSeries:
    """Σ e^{-mwt(λ)} over partitions of weighted size <= bound (default: box count)."""
    weights = tuple(weights) if weights is not None else (1,) * (n + 1)
    counts: dict[tuple[int, ...], int] = {}
    for _, wt in partitions_by_weight(n, weights, bound):
        counts[wt] = counts.get(wt, 0) + 1
    return from_counts(range(n + 1), counts, bound, weights)


def enumerate_Z_quot(n: int, Iplus, bound: int, max_boxes: int | None = None) -> MultiSeries:
    """Σ e^{-mwt_{I+}(λ)} over I+-generated λ with Σ_{i∈I+} mwt_i <= bound."""
    Iplus = frozenset(Iplus)
    plus = sorted(Iplus)
    weights = tuple(1 if c in Iplus else 0 for c in range(n + 1))
    counts: dict[tuple[int, ...], int] = {}
    for lam, wt in partitions_by_weight(n, weights, bound, max_boxes):
        if is_generated(lam, Iplus, n):
            key = tuple(wt[i] for i in plus)
            counts[key] = counts.get(key, 0) + 1
    return from_counts(plus, counts, bound)


def verify_fiber_identity(lam: Partition, sub) -> bool:
    """Check s(Σ_{μ in fiber(λ)} e^{-mwt(μ)}) = c·e^{-mwt_{I+}(λ)} exactly."""
    from .subst import c_constant, fundamental

    n = sub.diagram.rank
    Iplus = sub.Iplus
    target = restrict_weight(multiweight(lam, n), Iplus)
    total = Cyclo.zero()
    for mu in fiber(lam, Iplus, n):
        wt = multiweight(mu, n)
        plus, root = sub.image_of_monomial(dict(enumerate(wt)), sign=-1)
        if tuple(plus[i] for i in sorted(Iplus)) != target:
            return False
        total = total + root
    return total == c_constant(sub, fundamental(0))
