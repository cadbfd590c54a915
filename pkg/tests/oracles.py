"""Brute-force reference implementations used only by the tests."""

from itertools import product


def partitions_upto(max_size):
    """All partitions of size <= max_size, as row-length tuples (largest first)."""
    out = [()]

    def rec(prefix, rem, cap):
        for k in range(1, min(rem, cap) + 1):
            lam = prefix + (k,)
            out.append(lam)
            rec(lam, rem - k, k)

    rec((), max_size, max_size)
    return out


def label_counts(lam, n):
    counts = [0] * (n + 1)
    for y, row in enumerate(lam):
        for x in range(row):
            counts[(x - y) % (n + 1)] += 1
    return tuple(counts)


def contains(mu, lam):
    return len(mu) >= len(lam) and all(a >= b for a, b in zip(mu, lam))


def sub_partitions(mu):
    """Every partition contained in mu."""
    if not mu:
        return [()]
    ranges = [range(r + 1) for r in mu]
    out = []
    for rows in product(*ranges):
        if all(a >= b for a, b in zip(rows, rows[1:])):
            out.append(tuple(r for r in rows if r))
    return out


def brute_fiber(mu, Iplus, n, project):
    return sorted(lam for lam in sub_partitions(mu) if project(lam, Iplus, n) == mu)


def addable_by_scan(lam):
    """Addable cells found by testing every cell next to the diagram."""
    cells = {(x, y) for y, row in enumerate(lam) for x in range(row)}
    width = (lam[0] if lam else 0) + 1
    out = []
    for y in range(len(lam) + 1):
        for x in range(width + 1):
            if (x, y) in cells:
                continue
            left = x == 0 or (x - 1, y) in cells
            below = y == 0 or (x, y - 1) in cells
            if left and below:
                out.append((x, y))
    return out
