"""Gauss-Jordan elimination over a :class:`~nullkit.field.FieldCtx`.

Matrices are lists of rows of field codes.  An inconsistent system is a
normal outcome here (``solution is None``), not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import FieldCtx


@dataclass
class LinearSolution:
    solution: list | None
    kernel: list = field(default_factory=list)
    rank: int = 0

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def _rref_prime(rows, ncols, p):
    rank = 0
    pivots = []
    nrows = len(rows)
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[col], p - 2, p)
        if inv != 1:
            prow = [x * inv % p for x in prow]
            rows[rank] = prow
        for i in range(nrows):
            if i != rank:
                f = rows[i][col]
                if f:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return pivots


def _rref_generic(rows, ncols, ctx):
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    rank = 0
    pivots = []
    nrows = len(rows)
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        s = inv(prow[col])
        if s != 1:
            prow = [mul(x, s) for x in prow]
            rows[rank] = prow
        for i in range(nrows):
            if i != rank:
                f = rows[i][col]
                if f:
                    rows[i] = [sub(a, mul(f, b)) if b else a for a, b in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return pivots


def rref(ctx: FieldCtx, matrix, ncols: int | None = None):
    """Reduce a copy of ``matrix`` in place; pivots are searched in the first
    ``ncols`` columns only.  Returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if ctx.k == 1:
        pivots = _rref_prime(rows, ncols, ctx.p)
    else:
        pivots = _rref_generic(rows, ncols, ctx)
    return rows, pivots


def linsolve(ctx: FieldCtx, matrix, rhs=None, ncols: int | None = None) -> LinearSolution:
    """Solve ``matrix @ x = rhs`` exactly.

    Returns a particular solution (free variables set to zero), a kernel basis
    and the rank.  ``rhs=None`` means the homogeneous system.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    nrows = len(matrix)
    if rhs is None:
        rhs = [0] * nrows
    if len(rhs) != nrows:
        raise ValueError("rhs length does not match the row count")
    for row in matrix:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(ctx, aug, ncols)
    rank = len(pivots)
    consistent = all(rows[i][ncols] == 0 for i in range(rank, nrows))
    solution = None
    if consistent:
        solution = [0] * ncols
        for i, c in enumerate(pivots):
            solution[c] = rows[i][ncols]
    pivot_set = set(pivots)
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = ctx.neg(rows[i][free])
        kernel.append(v)
    return LinearSolution(solution, kernel, rank)


def rank(ctx: FieldCtx, matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(rref(ctx, matrix)[1])


def matvec(ctx: FieldCtx, matrix, v) -> list[int]:
    add, mul = ctx.add, ctx.mul
    out = []
    for row in matrix:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return out
