"""Gaussian elimination over a finite field (matrices are lists of code lists)."""

from __future__ import annotations


def rref(F, rows):
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        if inv != 1:
            M[r] = [F.mul(inv, x) for x in M[r]]
        pr = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = F.neg(M[i][c])
                row = M[i]
                M[i] = [F.add(x, F.mul(f, y)) if y else x for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F, rows, ncols=None):
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    R, piv = rref(F, rows)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][fc])
        basis.append(v)
    return basis


def solve(F, rows, rhs):
    """One solution of rows @ x = rhs, or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(F, aug)
    if ncols in piv:
        return None
    x = [0] * ncols
    for i, pc in enumerate(piv):
        x[pc] = R[i][ncols]
    return x


def det(F, rows) -> int:
    M = [list(r) for r in rows]
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.neg(F.mul(M[i][c], inv))
                M[i] = [F.add(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def matvec(F, rows, v):
    out = []
    for r in rows:
        acc = 0
        for a, b in zip(r, v):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out
