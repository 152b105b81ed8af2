# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t _search(const long long[:] keys, long long key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


def mul_table(perms, key_cols, keys_sorted, key_order, base):
    cdef int[:, :] p = np.ascontiguousarray(perms, dtype=np.intc)
    cdef int[:] kc = np.ascontiguousarray(key_cols, dtype=np.intc)
    cdef long long[:] ks = np.ascontiguousarray(keys_sorted, dtype=np.int64)
    cdef int[:] ko = np.ascontiguousarray(key_order, dtype=np.intc)
    cdef long long b = base
    cdef Py_ssize_t n = p.shape[0], nk = kc.shape[0]
    out = np.empty((n, n), dtype=np.intc)
    cdef int[:, :] t = out
    cdef Py_ssize_t a, bb, c
    cdef long long key
    with nogil:
        for a in range(n):
            for bb in range(n):
                key = 0
                for c in range(nk):
                    key = key * b + p[a, p[bb, kc[c]]]
                t[a, bb] = ko[_search(ks, key)]
    return out


def twisted_class_labels(mul, inv, sig):
    cdef int[:, :] m = np.ascontiguousarray(mul, dtype=np.intc)
    cdef int[:] iv = np.ascontiguousarray(inv, dtype=np.intc)
    cdef int[:] sg = np.ascontiguousarray(sig, dtype=np.intc)
    cdef Py_ssize_t n = m.shape[0], w, v
    out = np.full(n, -1, dtype=np.intc)
    cdef int[:] lab = out
    cdef int x
    with nogil:
        for w in range(n):
            if lab[w] >= 0:
                continue
            for v in range(n):
                x = m[m[v, w], iv[sg[v]]]
                if lab[x] < 0:
                    lab[x] = <int>w
    return [int(x) for x in out]


def stabilizer(mul, inv, sig, int w):
    cdef int[:, :] m = np.ascontiguousarray(mul, dtype=np.intc)
    cdef int[:] iv = np.ascontiguousarray(inv, dtype=np.intc)
    cdef int[:] sg = np.ascontiguousarray(sig, dtype=np.intc)
    cdef Py_ssize_t n = m.shape[0], v, k = 0
    out = np.empty(n, dtype=np.intc)
    cdef int[:] hits = out
    with nogil:
        for v in range(n):
            if m[m[v, w], iv[sg[v]]] == w:
                hits[k] = <int>v
                k += 1
    return [int(x) for x in out[:k]]


def census_count(A, rhs, long long N, long long Q):
    cdef long long[:, :] a = np.ascontiguousarray(A, dtype=np.int64).reshape(len(A), -1)
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1], i, j
    cdef long long step = Q // N
    cols_arr = np.empty((n, m), dtype=np.int64)
    cdef long long[:, :] cols = cols_arr
    tgt_arr = np.empty(m, dtype=np.int64)
    cdef long long[:] tgt = tgt_arr
    acc_arr = np.zeros(m, dtype=np.int64)
    cdef long long[:] acc = acc_arr
    k_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] k = k_arr
    for j in range(n):
        for i in range(m):
            # C remainder keeps the sign, so shift into [0, Q)
            cols[j, i] = ((((a[i, j] % Q) + Q) % Q) * step) % Q
    for i in range(m):
        tgt[i] = int(rhs[i]) % int(Q)
    cdef long long count = 0
    cdef bint hit
    with nogil:
        while True:
            hit = True
            for i in range(m):
                if acc[i] != tgt[i]:
                    hit = False
                    break
            if hit:
                count += 1
            j = 0
            while j < n:
                if k[j] + 1 < N:
                    k[j] += 1
                    for i in range(m):
                        acc[i] = (acc[i] + cols[j, i]) % Q
                    break
                for i in range(m):
                    acc[i] = ((acc[i] - ((N - 1) * cols[j, i]) % Q) % Q + Q) % Q
                k[j] = 0
                j += 1
            if j == n:
                break
    return int(count)
