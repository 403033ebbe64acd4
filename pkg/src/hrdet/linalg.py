"""Dense linear algebra over a coefficient field (raw field values)."""

from __future__ import annotations

from collections.abc import Sequence

from .fields import Field, PrimeField


def row_echelon(rows: Sequence[Sequence], field: Field) -> tuple[list[list], list[int], list[int]]:
    """Reduced row echelon form.

    Returns (echelon rows, pivot columns, original indices of the rows that
    became pivots, in order of discovery)."""
    m = [list(r) for r in rows]
    order = list(range(len(m)))
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    pivot_rows: list[int] = []
    r = 0
    p = field.p if isinstance(field, PrimeField) else 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(m)) if not field.is_zero(m[i][c])), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        order[r], order[sel] = order[sel], order[r]
        inv = field.inv(m[r][c])
        if p:
            m[r] = [x * inv % p for x in m[r]]
        else:
            m[r] = [field.mul(x, inv) for x in m[r]]
        piv = m[r]
        for i in range(len(m)):
            if i == r:
                continue
            factor = m[i][c]
            if field.is_zero(factor):
                continue
            row = m[i]
            if p:
                m[i] = [(x - factor * y) % p for x, y in zip(row, piv)]
            else:
                m[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(row, piv)]
        pivots.append(c)
        pivot_rows.append(order[r])
        r += 1
        if r == len(m):
            break
    return m[:r], pivots, pivot_rows


def rank(rows: Sequence[Sequence], field: Field) -> int:
    if not rows or not rows[0]:
        return 0
    return len(row_echelon(rows, field)[1])


def independent_rows(rows: Sequence[Sequence], field: Field, preferred: Sequence[int] | None = None) -> list[int]:
    """Indices of a maximal independent subset of rows, taken greedily in the
    order ``preferred`` (default: natural order)."""
    order = list(preferred) if preferred is not None else list(range(len(rows)))
    chosen: list[int] = []
    basis: list[tuple[int, list]] = []  # (pivot column, reduced row)
    for idx in order:
        v = list(rows[idx])
        for c, b in basis:
            f = v[c]
            if not field.is_zero(f):
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, b)]
        c = next((j for j, x in enumerate(v) if not field.is_zero(x)), None)
        if c is None:
            continue
        inv = field.inv(v[c])
        v = [field.mul(x, inv) for x in v]
        basis.append((c, v))
        chosen.append(idx)
    return chosen


def kernel(rows: Sequence[Sequence], field: Field) -> list[list]:
    """Basis of the right null space {x : rows @ x = 0}."""
    ncols = len(rows[0]) if rows else 0
    ech, pivots, _ = row_echelon(rows, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, c in zip(ech, pivots):
            v[c] = field.neg(row[f])
        out.append(v)
    return out


def det(rows: Sequence[Sequence], field: Field):
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    m = [list(r) for r in rows]
    result = field.one
    for c in range(n):
        sel = next((i for i in range(c, n) if not field.is_zero(m[i][c])), None)
        if sel is None:
            return field.zero
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            result = field.neg(result)
        piv = m[c][c]
        result = field.mul(result, piv)
        inv = field.inv(piv)
        for i in range(c + 1, n):
            f = field.mul(m[i][c], inv)
            if not field.is_zero(f):
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[c])]
    return result


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field) -> list[list]:
    cols = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in cols:
            acc = field.zero
            for x, y in zip(row, col):
                if not field.is_zero(x) and not field.is_zero(y):
                    acc = field.add(acc, field.mul(x, y))
            new.append(acc)
        out.append(new)
    return out


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*a)]
