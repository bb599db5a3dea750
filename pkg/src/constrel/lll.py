"""All-integer LLL basis reduction (Lovasz parameter 3/4).

Works entirely over integers via the scaled Gram-Schmidt quantities
lam[k][j] = <b_k, b*_j> * d_j and the principal-minor determinants d_j, so no
rational arithmetic is needed and the reduction is exact for arbitrarily large
entries.
"""
from __future__ import annotations

from typing import List


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: List[List[int]]) -> List[List[int]]:
    """Return an LLL-reduced basis of the lattice spanned by the input rows.

    Rows must be linearly independent integer vectors.
    """
    b = [[int(v) for v in row] for row in basis]
    n = len(b)
    if n == 0:
        return []
    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]

    def gram(k):
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                d[k + 1] = u
        if d[k + 1] == 0:
            raise ValueError('basis rows are linearly dependent')

    for k in range(n):
        gram(k)

    def size_reduce(k, j):
        if 2 * abs(lam[k][j]) > d[j + 1]:
            q = (2 * lam[k][j] + d[j + 1]) // (2 * d[j + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[j])]
            lam[k][j] -= q * d[j + 1]
            for i in range(j):
                lam[k][i] -= q * lam[j][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lam_ = lam[k][k - 1]
        new_d = (d[k - 1] * d[k + 1] + lam_ * lam_) // d[k]
        for i in range(k + 1, n):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_ * t) // d[k]
            lam[i][k - 1] = (new_d * t + lam_ * lam[i][k]) // d[k + 1]
        d[k] = new_d

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if 4 * (d[k + 1] * d[k - 1] + lam[k][k - 1] ** 2) < 3 * d[k] ** 2:
            swap(k)
            k = max(1, k - 1)
        else:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
    return b
