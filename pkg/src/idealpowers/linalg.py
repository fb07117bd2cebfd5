"""Exact ranks of small integer matrices.

Rows are lists of Python ints. Characteristic 0 uses fraction-free
(Bareiss) elimination; a prime characteristic reduces entries mod p first.
"""

from __future__ import annotations


def bareiss_det(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def rank_integer(rows: list[list[int]]) -> int:
    """Rank over Q by division-free elimination (exact divisions only)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        prow = m[rank]
        for i in range(rank + 1, len(m)):
            row = m[i]
            a = row[col]
            for j in range(col + 1, ncols):
                row[j] = (row[j] * p - a * prow[j]) // prev
            row[col] = 0
        # rows above the pivot row were already reduced at earlier steps
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[col], p - 2, p)
        for j in range(col, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, len(m)):
            row = m[i]
            a = row[col]
            if a:
                for j in range(col, ncols):
                    row[j] = (row[j] - a * prow[j]) % p
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(rows: list[list[int]], characteristic: int = 0) -> int:
    if not rows or not rows[0]:
        return 0
    if characteristic == 0:
        return rank_integer(rows)
    return rank_mod_p(rows, characteristic)
