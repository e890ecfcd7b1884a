# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels over GF(p^k) with table arithmetic.

Signatures match ``_kernels_py``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline long _add(long a, long b, long p, long k, const long[:, :] tab, bint use_tab) noexcept nogil:
    cdef long res = 0, place = 1, i
    if p == 2:
        return a ^ b
    if k == 1:
        return (a + b) % p
    if use_tab:
        return tab[a, b]
    for i in range(k):
        res += ((a % p + b % p) % p) * place
        a //= p
        b //= p
        place *= p
    return res


def vadd(a, b, long p, long k, addtab):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    shape = a.shape
    cdef const long[:] av = np.ascontiguousarray(a).ravel()
    cdef const long[:] bv = np.ascontiguousarray(b).ravel()
    out = np.empty(av.shape[0], dtype=np.int64)
    cdef long[:] ov = out
    cdef bint use_tab = addtab is not None
    cdef const long[:, :] tab
    if use_tab:
        tab = addtab
    else:
        tab = np.zeros((1, 1), dtype=np.int64)
    cdef Py_ssize_t i, n = av.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _add(av[i], bv[i], p, k, tab, use_tab)
    return out.reshape(shape)


def vmul(a, b, log, exp):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    shape = a.shape
    cdef const long[:] av = np.ascontiguousarray(a).ravel()
    cdef const long[:] bv = np.ascontiguousarray(b).ravel()
    cdef const long[:] lg = log
    cdef const long[:] ex = exp
    out = np.empty(av.shape[0], dtype=np.int64)
    cdef long[:] ov = out
    cdef Py_ssize_t i, n = av.shape[0]
    with nogil:
        for i in range(n):
            if av[i] == 0 or bv[i] == 0:
                ov[i] = 0
            else:
                ov[i] = ex[lg[av[i]] + lg[bv[i]]]
    return out.reshape(shape)


def eval_terms(exps, coeffs, pts, long p, long k, log, exp, addtab):
    """Evaluate sum_t coeffs[t] * prod_i pts[:, i] ** exps[t, i] for every row."""
    cdef const long[:, :] ev = np.ascontiguousarray(exps, dtype=np.int64)
    cdef const long[:] cv = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef const long[:, :] pv = np.ascontiguousarray(pts, dtype=np.int64)
    cdef const long[:] lg = log
    cdef const long[:] ex = exp
    cdef long qm1 = log.shape[0] - 1
    cdef Py_ssize_t n_pts = pv.shape[0], n_terms = ev.shape[0], nv = ev.shape[1]
    out = np.zeros(n_pts, dtype=np.int64)
    cdef long[:] ov = out
    cdef bint use_tab = addtab is not None
    cdef const long[:, :] tab
    if use_tab:
        tab = addtab
    else:
        tab = np.zeros((1, 1), dtype=np.int64)
    cdef Py_ssize_t r, t, i
    cdef long acc, val, x, e, s
    cdef bint dead
    with nogil:
        for r in range(n_pts):
            s = 0
            for t in range(n_terms):
                acc = lg[cv[t]]
                dead = False
                for i in range(nv):
                    e = ev[t, i]
                    if e:
                        x = pv[r, i]
                        if x == 0:
                            dead = True
                            break
                        acc += lg[x] * e
                if dead:
                    continue
                if qm1 > 0:
                    val = ex[acc % qm1]
                else:
                    val = 1
                s = _add(s, val, p, k, tab, use_tab)
            ov[r] = s
    return out
