"""Smith normal form of integer matrices.

``smith_normal_form`` is the dense reference routine.  Boundary matrices of
simplicial complexes are large and very sparse, so ``sparse_invariant_factors``
first eliminates every available unit pivot (a unimodular change of basis,
which leaves the invariant factors unchanged) and only hands the leftover
block to the dense routine.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors ``d1 | d2 | ... | dk`` of an integer matrix."""
    a = [[int(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    if any(len(row) != ncols for row in a):
        raise ValueError("matrix is not rectangular")
    factors: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        pivot = _min_abs_entry(a, t, t)
        if pivot is None:
            break
        _move_to(a, pivot, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = _nearest_quotient(a[i][t], p)
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, ncols):
                            ri[j] -= q * rt[j]
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = _nearest_quotient(a[t][j], p)
                    if q:
                        for i in range(t, nrows):
                            a[i][j] -= q * a[i][t]
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived; it becomes the new pivot
                best = min(
                    [(abs(a[i][t]), i, t) for i in range(t + 1, nrows) if a[i][t]]
                    + [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
                )
                _move_to(a, (best[1], best[2]), t)
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            rb, rt = a[bad], a[t]
            for j in range(t, ncols):
                rt[j] += rb[j]
        factors.append(abs(a[t][t]))
        t += 1
    return tuple(factors)


def _nearest_quotient(x: int, p: int) -> int:
    q, r = divmod(x, p)
    # r carries the sign of p, so stepping q up shrinks the remainder
    return q + 1 if 2 * abs(r) > abs(p) else q


def _min_abs_entry(a, r0, c0):
    best = None
    for i in range(r0, len(a)):
        row = a[i]
        for j in range(c0, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best[1], best[2]
    return None if best is None else (best[1], best[2])


def _move_to(a, pos, t):
    i, j = pos
    a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def determinant_divisors_check(factors: Sequence[int]) -> bool:
    """True when the factors form a positive divisibility chain."""
    return all(f > 0 for f in factors) and all(b % a == 0 for a, b in zip(factors, factors[1:]))


def sparse_invariant_factors(
    columns: Iterable[Mapping[int, int]],
) -> tuple[int, ...]:
    """Invariant factors of a sparse integer matrix given column by column.

    Each column maps row ids to nonzero entries.  Entries equal to +-1 are
    pivoted out greedily (shortest row first) and the remaining block goes
    through :func:`smith_normal_form`.
    """
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, dict[int, int]] = {}
    for c, col in enumerate(columns):
        col = {r: v for r, v in col.items() if v}
        if not col:
            continue
        cols[c] = col
        for r, v in col.items():
            rows.setdefault(r, {})[c] = v
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda k: len(cols[k])):
            col = cols.get(c)
            if not col:
                continue
            pr = None
            plen = 0
            for r, v in col.items():
                if v == 1 or v == -1:
                    ln = len(rows[r])
                    if pr is None or ln < plen:
                        pr, plen = r, ln
            if pr is None:
                continue
            pv = col[pr]
            prow = rows.pop(pr)
            del cols[c]
            for cc in prow:
                if cc != c:
                    del cols[cc][pr]
            for r, v in col.items():
                if r == pr:
                    continue
                row = rows[r]
                del row[c]
                f = v * pv
                for cc, w in prow.items():
                    if cc == c:
                        continue
                    nv = row.get(cc, 0) - f * w
                    if nv:
                        row[cc] = nv
                        cols[cc][r] = nv
                    else:
                        row.pop(cc, None)
                        cols[cc].pop(r, None)
                if not row:
                    del rows[r]
            for cc in list(prow):
                if cc != c and not cols[cc]:
                    del cols[cc]
            units += 1
            progress = True
    if not cols:
        return (1,) * units
    rlist = sorted(rows)
    clist = sorted(cols)
    ridx = {r: i for i, r in enumerate(rlist)}
    dense = [[0] * len(clist) for _ in rlist]
    for j, c in enumerate(clist):
        for r, v in cols[c].items():
            dense[ridx[r]][j] = v
    rest = smith_normal_form(dense)
    return (1,) * units + rest


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
