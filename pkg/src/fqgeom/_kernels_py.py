"""Numpy implementations of the batch kernels.

Same signatures as the compiled ``_kernels`` module; used when the extension
is not built or ``FQGEOM_PURE_PYTHON=1`` is set.

Field elements are integer codes ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``.
``log`` has length q with ``log[0] = -1``; ``exp`` has length ``2*(q-1)`` so
that a sum of two logs never needs reduction.
"""

import numpy as np


def vadd(a, b, p, k, addtab):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if p == 2:
        return a ^ b
    if k == 1:
        return (a + b) % p
    if addtab is not None:
        return addtab[a, b]
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    place = 1
    for _ in range(k):
        out += ((a % p + b % p) % p) * place
        a = a // p
        b = b // p
        place *= p
    return out


def vmul(a, b, log, exp):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    out = exp[log[a] + log[b]]
    out[(a == 0) | (b == 0)] = 0
    return out


def eval_terms(exps, coeffs, pts, p, k, log, exp, addtab):
    """Evaluate sum_t coeffs[t] * prod_i pts[:, i] ** exps[t, i] for every row."""
    pts = np.asarray(pts, dtype=np.int64)
    n_pts = pts.shape[0]
    qm1 = len(log) - 1
    out = np.zeros(n_pts, dtype=np.int64)
    if n_pts == 0:
        return out
    logs = log[pts]
    zero = pts == 0
    for t in range(exps.shape[0]):
        e = exps[t]
        nz = np.nonzero(e)[0]
        acc = np.full(n_pts, log[coeffs[t]], dtype=np.int64)
        if len(nz):
            acc += logs[:, nz] @ e[nz]
            dead = zero[:, nz].any(axis=1)
        else:
            dead = np.zeros(n_pts, dtype=bool)
        val = exp[acc % qm1] if qm1 > 0 else np.ones(n_pts, dtype=np.int64)
        val[dead] = 0
        out = vadd(out, val, p, k, addtab)
    return out
