"""Pure-Python reference kernels. The compiled module mirrors this API exactly."""

from __future__ import annotations

from math import gcd


def poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Product of two sparse exponent->coefficient maps, zero terms dropped."""
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def echelon_diagonal(rows: list[list[int]]) -> list[int]:
    """Integer-row-reduce a copy of ``rows`` and return the pivot entries.

    Only unimodular row operations are used (Euclid on pairs of rows), so the
    gcd of maximal minors equals the absolute product of the returned pivots
    when there is one pivot per column. A column without a pivot yields 0.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        # Euclid down the column until a single nonzero entry remains at/below r.
        while True:
            nz = [i for i in range(r, nrows) if m[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            if len(nz) == 1:
                break
            mp = m[p]
            for i in nz:
                if i == p:
                    continue
                f = m[i][c] // mp[c]
                if f:
                    mi = m[i]
                    for j in range(c, ncols):
                        mi[j] -= f * mp[j]
        nz = [i for i in range(r, nrows) if m[i][c]]
        if not nz:
            pivots.append(0)
            continue
        p = nz[0]
        m[r], m[p] = m[p], m[r]
        pivots.append(m[r][c])
        r += 1
    return pivots


def bareiss_det(mat: list[list[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def gcd_of(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
