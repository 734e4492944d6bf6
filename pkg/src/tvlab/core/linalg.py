"""Exact Gaussian elimination over Q and Q(i)."""

from __future__ import annotations

from typing import Sequence

from tvlab.core.scalars import Field, QComplex, Scalar, to_field


def infer_field(m: Sequence[Sequence]) -> Field:
    return Field.C if any(isinstance(x, QComplex) for r in m for x in r) else Field.R


def _as_rows(m: Sequence[Sequence], field: Field | None) -> tuple[list[list[Scalar]], int, Field]:
    rows = [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix is not rectangular")
    field = field or infer_field(rows)
    rows = [[to_field(x, field) for x in r] for r in rows]
    return rows, ncols, field


def rref(m: Sequence[Sequence], field: Field | None = None) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows, ncols, _ = _as_rows(m, field)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: Sequence[Sequence], field: Field | None = None) -> int:
    if not m:
        return 0
    return len(rref(m, field)[1])


def kernel_basis(m: Sequence[Sequence], field: Field | None = None, ncols: int | None = None) -> list[list[Scalar]]:
    """Basis of the right null space ``{v : m v = 0}``.

    ``ncols`` is needed only when ``m`` has no rows.  One basis vector is
    returned per free column, with a 1 in that column.
    """
    if not m:
        if ncols is None:
            raise ValueError("ncols is required for a matrix with no rows")
        zero, one = to_field(0, field or Field.R), to_field(1, field or Field.R)
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    field = field or infer_field(m)
    red, pivots = rref(m, field)
    n = len(m[0])
    zero, one = to_field(0, field), to_field(1, field)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v)), start=0 * v[0] if v else 0) for row in m]
