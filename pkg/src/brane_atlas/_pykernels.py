"""Pure-Python versions of the hot loops.

Signatures match the compiled module exactly; the selector in
``kernels`` picks one at import time.
"""

from __future__ import annotations

from bisect import bisect_left


def mul_table(perms, key_cols, keys_sorted, key_order, base):
    """Full multiplication table of a permutation group.

    ``perms[a]`` is the permutation of element ``a``; the product ``a*b``
    acts as ``a(b(x))``. An element is identified by the images of the
    columns ``key_cols`` encoded in ``base``; ``keys_sorted`` holds the
    element keys in ascending order and ``key_order[k]`` the element index
    of the k-th sorted key.
    """
    n = len(perms)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        pa = perms[a]
        row = table[a]
        for b in range(n):
            pb = perms[b]
            key = 0
            for c in key_cols:
                key = key * base + pa[pb[c]]
            row[b] = key_order[bisect_left(keys_sorted, key)]
    return table


def twisted_class_labels(mul, inv, sig):
    """Label each element by the smallest index in its twisted-conjugacy orbit."""
    n = len(mul)
    labels = [-1] * n
    for w in range(n):
        if labels[w] >= 0:
            continue
        for v in range(n):
            x = mul[mul[v][w]][inv[sig[v]]]
            if labels[x] < 0:
                labels[x] = w
    return labels


def stabilizer(mul, inv, sig, w):
    """Indices ``v`` with ``v * w * sig(v)^-1 == w``."""
    return [v for v in range(len(mul)) if mul[mul[v][w]][inv[sig[v]]] == w]


def census_count(A, rhs, N, Q):
    """Count ``k`` in ``[0, N)^n`` with ``A k * (Q/N) = rhs (mod Q)`` rowwise.

    ``A`` is a list of integer rows, ``rhs`` an integer vector already
    scaled by ``Q``; ``N`` must divide ``Q``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    step = Q // N
    cols = [[(A[i][j] * step) % Q for i in range(m)] for j in range(n)]
    target = [r % Q for r in rhs]
    acc = [0] * m
    k = [0] * n
    count = 0
    while True:
        if acc == target:
            count += 1
        j = 0
        while j < n:
            col = cols[j]
            if k[j] + 1 < N:
                k[j] += 1
                for i in range(m):
                    acc[i] = (acc[i] + col[i]) % Q
                break
            # wrap this digit back to zero
            for i in range(m):
                acc[i] = (acc[i] - (N - 1) * col[i]) % Q
            k[j] = 0
            j += 1
        if j == n:
            return count
