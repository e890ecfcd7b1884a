"""Rational curves on hypersurfaces: membership, Hom equations, splitting
types of the pulled-back tangent bundle, and curve search/interpolation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from . import upoly as U
from .errors import (
    AmbientMismatch,
    DegreeTooSmall,
    DuplicateSupport,
    ImageMeetsSingularLocus,
    NotAMember,
    PointNotOnSurface,
    ValidationError,
)
from .gf import GF, common_field, embedding_array
from .incidence import (
    Line,
    Plane,
    conic_rational_point,
    lines_on,
    parametrize_conic,
    residual_conic,
)
from .mpoly import (
    HomogeneousPoly,
    binary_gcd_many,
    binary_roots,
    iter_projective_chunks,
    sylvester_resultant,
)
from .points import ProjPoint
from .projvar import Hypersurface, enumerate_points, is_smooth_point
from .rcmap import RationalCurveMap

__all__ = [
    "RationalCurveMap", "SplittingType", "HomSystem", "TangentCubic", "SearchResult",
    "verify_member", "hom_equations", "pullback_splitting", "is_free", "is_very_free",
    "h0_twist", "tangent_cubic", "search_curves", "interpolate_to_Pn", "preimage_params",
    "mobius_matching", "curves_through_point",
]


def _check_ambient(X: Hypersurface, f: RationalCurveMap):
    if len(f.coords) != X.nvars:
        raise AmbientMismatch(f"map into P^{f.N} but hypersurface lives in P^{X.nvars - 1}")


def verify_member(X: Hypersurface, f: RationalCurveMap) -> bool:
    """True iff F(f_0, ..., f_N) is the zero binary form."""
    _check_ambient(X, f)
    return f.compose(X.equation).is_zero()


# ---------------------------------------------------------------------------
# Hom_d equations


@dataclass
class HomSystem:
    """Polynomial system in the (N+1)(d+1) coefficients a[i][j] of f_i = sum_j a[i][j] s^(d-j) t^j.

    ``equations`` holds one form per defining equation and per monomial of
    F(f); a coefficient vector is a member iff all of them vanish there.
    The degeneracy locus is the set where sum_i lam_i f_i and sum_j mu_j f_j
    have identically vanishing resultant in (lam, mu).
    """

    field: GF
    N: int
    d: int
    nvars: int
    equations: list
    degeneracy: dict = dc_field(default_factory=dict)

    def variable_index(self, i: int, j: int) -> int:
        return i * (self.d + 1) + j

    def evaluate(self, coeffs) -> list[int]:
        x = tuple(int(c) for c in coeffs)
        return [eq.eval_codes(x) for eq in self.equations]

    def coefficients_of(self, f: RationalCurveMap) -> list[int]:
        return [c for row in f.to_field(self.field).matrix() for c in row]

    def degeneracy_resultant(self, coeffs, lam, mu) -> int:
        """Res(sum lam_i f_i, sum mu_j f_j) as binary forms of formal degree d."""
        F = self.field
        d = self.d
        rows = [list(coeffs[i * (d + 1):(i + 1) * (d + 1)]) for i in range(self.N + 1)]

        def combo(w):
            out = [0] * (d + 1)
            for wi, row in zip(w, rows):
                for j, c in enumerate(row):
                    out[j] = F.add(out[j], F.mul(wi, c))
            # row order is s^d ... t^d; univariate in x = s/t is low-to-high reversed
            return out[::-1]

        g1, g2 = combo(lam), combo(mu)
        if not U.trim(g1) or not U.trim(g2):
            return 0
        return sylvester_resultant(g1, g2, F, d, d).value

    def to_json(self):
        return {
            "field": self.field.literal,
            "N": self.N,
            "d": self.d,
            "variables": self.nvars,
            "equation_count": len(self.equations),
            "equation_degrees": sorted({eq.degree for eq in self.equations}),
            "equations": [str(eq) for eq in self.equations],
            "degeneracy": self.degeneracy,
        }


def hom_equations(X: Hypersurface, d: int) -> HomSystem:
    """Coefficient equations for degree-d maps P^1 -> X."""
    if d < 1:
        raise ValidationError("degree must be at least 1")
    F = X.field
    N = X.nvars - 1
    V = (N + 1) * (d + 1)
    total = V + 2  # coefficient variables, then s, t
    forms = []
    for i in range(N + 1):
        terms = {}
        for j in range(d + 1):
            e = [0] * total
            e[i * (d + 1) + j] = 1
            e[V] = d - j
            e[V + 1] = j
            terms[tuple(e)] = 1
        forms.append(HomogeneousPoly(F, total, d + 1, terms))
    G = X.equation.substitute(forms)
    D = X.degree
    parts = [dict() for _ in range(D * d + 1)]
    for e, c in G.terms.items():
        k = e[V + 1]
        parts[k][e[:V]] = c
    eqs = [HomogeneousPoly(F, V, D, parts[k], check=False) for k in range(D * d + 1)]
    degeneracy = {
        "formula": "Res(sum_i lam_i f_i, sum_j mu_j f_j) == 0 identically in (lam, mu)",
        "degree_in_coefficients": 2 * d,
        "lambda_count": N + 1,
    }
    return HomSystem(F, N, d, V, eqs, degeneracy)


# ---------------------------------------------------------------------------
# splitting type


@dataclass(frozen=True)
class SplittingType:
    """Degrees a_1 >= ... >= a_n of f^*T_X = sum O(a_i)."""

    degrees: tuple

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def free(self) -> bool:
        return min(self.degrees) >= 0

    @property
    def very_free(self) -> bool:
        return min(self.degrees) >= 1

    def h0(self, m: int) -> int:
        return sum(max(0, a + m + 1) for a in self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __repr__(self):
        return f"SplittingType{self.degrees}"


def _gradient_pullback(X: Hypersurface, f: RationalCurveMap):
    E = common_field(X.field, f.field)
    f = f.to_field(E)
    return E, f, [d.to_field(E).substitute(list(f.coords)) if not d.is_zero()
                  else HomogeneousPoly(E, 2, (X.degree - 1) * f.degree)
                  for d in X.partials()]


def _check_pullback(X, f):
    _check_ambient(X, f)
    if not verify_member(X, f):
        raise NotAMember("the curve is not contained in the hypersurface")
    E, f, h = _gradient_pullback(X, f)
    nonzero = [g for g in h if g.terms]
    if not nonzero or binary_gcd_many(nonzero).degree > 0:
        raise ImageMeetsSingularLocus("the partial derivatives share a zero along the curve")
    return E, f, h


def _h_coeffs(h):
    eh = next(g.degree for g in h if g.terms)
    return eh, [[g.terms.get((eh - j, j), 0) for j in range(eh + 1)] if g.terms else [0] * (eh + 1)
                for g in h]


def _mult_matrix(E: GF, hc, eh: int, k: int):
    """Matrix of (g_i) in S_k^r -> sum h_i g_i in S_(k+eh); column i*(k+1)+a is t^a in g_i."""
    rows_n = k + eh + 1
    M = [[0] * (len(hc) * (k + 1)) for _ in range(rows_n)]
    for i, coeffs in enumerate(hc):
        for a in range(k + 1):
            for j, c in enumerate(coeffs):
                if c:
                    M[a + j][i * (k + 1) + a] = c
    return M


def _kernel_basis(E: GF, hc, eh: int, k: int):
    if k < 0:
        return []
    return linalg.nullspace(E, _mult_matrix(E, hc, eh, k))


def _shift(vec, r: int, b: int, k: int, c: int):
    """Multiply a tuple of degree-b forms by s^(k-b-c) t^c."""
    out = [0] * (r * (k + 1))
    for i in range(r):
        for a in range(b + 1):
            out[i * (k + 1) + a + c] = vec[i * (b + 1) + a]
    return out


def _module_generators(E: GF, hc, eh: int, rank_: int):
    """Minimal homogeneous generators (degree, vector) of the syzygy module of h."""
    r = len(hc)
    gens = []
    for k in range(0, eh + 1):
        basis = _kernel_basis(E, hc, eh, k)
        if not basis:
            continue
        span = [_shift(v, r, b, k, c) for b, v in gens for c in range(k - b + 1)]
        have = linalg.rank(E, span) if span else 0
        for v in basis:
            if linalg.rank(E, span + [v]) > have:
                span.append(v)
                have += 1
                gens.append((k, v))
        if len(gens) == rank_:
            break
    return gens


def _syzygy_degrees(E: GF, cs, betas, count: int):
    """Generator degrees of the syzygies of the forms cs (degrees betas)."""
    out = []
    lo = min(betas) - 1

    def zdim(D):
        cols = []
        for c, beta in zip(cs, betas):
            w = D - beta
            if w < 0:
                continue
            for a in range(w + 1):
                col = [0] * (D + 1) if D >= 0 else []
                for j, x in enumerate(c):
                    if x:
                        col[a + j] = x
                cols.append(col)
        if not cols:
            return 0
        if D < 0:
            return len(cols)
        M = [list(r) for r in zip(*cols)]
        return len(cols) - linalg.rank(E, M)

    prev_z = zdim(lo - 1)
    prev_delta = 0
    D = lo
    while len(out) < count:
        z = zdim(D)
        delta = z - prev_z
        out.extend([D] * (delta - prev_delta))
        prev_z, prev_delta = z, delta
        D += 1
        if D > lo + 4 * (max(betas) - lo) + 8:
            raise ValidationError("syzygy degree scan did not terminate")
    return out


def pullback_splitting(X: Hypersurface, f: RationalCurveMap) -> SplittingType:
    """Splitting type of f^*T_X.

    The kernel K of (g_i) -> sum dF_i(f) g_i is free on generators of degrees
    b_j; writing f = sum c_j kappa_j, the quotient K / f is dual to the
    syzygy module of (c_j), whose generator degrees are the a_i.
    """
    E, f, h = _check_pullback(X, f)
    d = f.degree
    eh, hc = _h_coeffs(h)
    r = len(hc)
    gens = _module_generators(E, hc, eh, r - 1)
    if len(gens) != r - 1 or sum(b for b, _ in gens) != eh:
        raise ValidationError("kernel module generators are inconsistent")
    # express f in the generator basis
    target = [0] * (r * (d + 1))
    for i, g in enumerate(f.coords):
        for a in range(d + 1):
            target[i * (d + 1) + a] = g.terms.get((d - a, a), 0)
    cols, owners = [], []
    for j, (b, v) in enumerate(gens):
        for c in range(d - b + 1):
            cols.append(_shift(v, r, b, d, c))
            owners.append((j, c))
    if not cols:
        raise ValidationError("curve is not in the kernel module")
    sol = linalg.solve(E, [list(x) for x in zip(*cols)], target)
    if sol is None:
        raise ValidationError("curve is not in the kernel module")
    betas = [d - b for b, _ in gens]
    cs = [[0] * (beta + 1) if beta >= 0 else [] for beta in betas]
    for (j, c), val in zip(owners, sol):
        cs[j][c] = val
    degrees = _syzygy_degrees(E, cs, betas, X.n)
    st = SplittingType(tuple(sorted(degrees, reverse=True)))
    expected = (X.nvars - X.degree) * d
    if st.total != expected:
        raise ValidationError(f"splitting {st} violates the degree sum {expected}")
    return st


def is_free(X: Hypersurface, f: RationalCurveMap) -> bool:
    return pullback_splitting(X, f).free


def is_very_free(X: Hypersurface, f: RationalCurveMap) -> bool:
    return pullback_splitting(X, f).very_free


def h0_twist(X: Hypersurface, f: RationalCurveMap, m: int, _pre=None) -> int:
    """h^0(f^*T_X(m)) for m >= -2, from the Euler sequence.

    For m >= -1 this is dim K_(m+d) - dim S_m. At m = -2 a correction of 1
    appears when the Cech class f/(st) dies in H^1 of the kernel bundle.
    """
    if m < -2:
        raise ValidationError("twists below -2 are not supported")
    E, f, h = _pre or _check_pullback(X, f)
    d = f.degree
    eh, hc = _h_coeffs(h)
    k = m + d
    dim_k = len(_kernel_basis(E, hc, eh, k)) if k >= 0 else 0
    if m >= -1:
        return dim_k - (m + 1)
    # u_i collects the terms divisible by s (divided by s)
    acc = [0] * (d + eh)
    for coeffs, g in zip(hc, f.coords):
        u = [g.terms.get((d - a, a), 0) for a in range(d)]
        for a, x in enumerate(u):
            if x:
                for j, y in enumerate(coeffs):
                    if y:
                        acc[a + j] = E.add(acc[a + j], E.mul(x, y))
    if acc[0] != 0:
        raise ValidationError("Euler relation failed")
    w = acc[1:]  # (sum h_i u_i) / t, degree 3d - 2 for cubics
    if d - 2 < 0:
        hits = all(x == 0 for x in w)
    else:
        M = _mult_matrix(E, hc, eh, d - 2)
        hits = linalg.solve(E, M, w) is not None
    return dim_k + (1 if hits else 0)


def freeness_by_h0(X: Hypersurface, f: RationalCurveMap) -> tuple[bool, bool]:
    """(free, very free) from the twists -1 and -2 alone."""
    pre = _check_pullback(X, f)
    total = (X.nvars - X.degree) * f.degree
    free = h0_twist(X, f, -1, pre) == total
    very = free and h0_twist(X, f, -2, pre) == total - X.n
    return free, very


# ---------------------------------------------------------------------------
# tangent cubics


@dataclass
class TangentCubic:
    status: str  # IrreducibleCubic, LinePlusConic, ThreeLines, NonReduced
    map: RationalCurveMap | None
    point: ProjPoint


def tangent_plane(S: Hypersurface, p: ProjPoint) -> Plane:
    return Plane(p.field, tuple(S.gradient_at(p)))


def tangent_cubic(S: Hypersurface, p: ProjPoint) -> TangentCubic:
    """Parametrize the tangent-plane section at p by lines through p.

    For a direction D in the tangent plane, F(u p + D) = u Q(D) + C(D), so the
    residual point is Q(D) D - C(D) p. A common factor of Q and C marks a
    line of the section through p, which makes the section reducible.
    """
    if S.nvars != 4 or S.degree != 3:
        raise ValidationError("tangent cubics are defined on cubic surfaces")
    if not S.contains(p):
        raise PointNotOnSurface(f"{p} is not on the surface")
    E = common_field(S.field, p.field)
    p = p.to(E)
    if not is_smooth_point(S, p):
        raise ValidationError(f"{p} is a singular point")
    T = tangent_plane(S, p)
    others = [b for b in T.basis() if linalg.rank(E, [list(b.coords), list(p.coords)]) == 2]
    A = others[0]
    B = next(b for b in others[1:] if linalg.rank(E, [list(A.coords), list(b.coords), list(p.coords)]) == 3)
    D = [HomogeneousPoly(E, 2, 1, {(1, 0): a, (0, 1): b}) for a, b in zip(A.coords, B.coords)]
    F = S.equation.to_field(E)
    cD = F.substitute(D)
    qD = HomogeneousPoly(E, 2, 2)
    for dF, c in zip(F.jacobian(), p.coords):
        if c and not dF.is_zero():
            qD = qD + dF.substitute(D).scale(c)
    status = _tangent_status(qD, cD)
    if status != "IrreducibleCubic":
        return TangentCubic(status, None, p)
    forms = []
    for i in range(4):
        part = HomogeneousPoly(E, 2, 3)
        if qD.terms and D[i].terms:
            part = part + qD * D[i]
        if p.coords[i] and cD.terms:
            part = part - cD.scale(p.coords[i])
        forms.append(part)
    f = RationalCurveMap.from_forms(forms, field=E)
    return TangentCubic("IrreducibleCubic", f, p)


def _tangent_status(qD: HomogeneousPoly, cD: HomogeneousPoly) -> str:
    """Kind of the tangent section from the lines through p it contains."""
    if not cD.terms and not qD.terms:
        return "NonReduced"  # the tangent plane lies in the surface
    g = binary_gcd_many([f for f in (qD, cD) if f.terms])
    if g.degree == 0:
        return "IrreducibleCubic"
    squarefree = binary_gcd_many([g, g.partial(0), g.partial(1)]).degree == 0 if g.degree > 1 else True
    if not squarefree:
        return "NonReduced"
    if g.degree == 1:
        return "LinePlusConic"
    return "ThreeLines"


# ---------------------------------------------------------------------------
# parameter matching


def preimage_params(f: RationalCurveMap, x: ProjPoint) -> list[ProjPoint]:
    """Parameters tau (over the common field) with f(tau) = x."""
    E = common_field(f.field, x.field)
    f = f.to_field(E)
    x = x.to(E)
    minors = []
    n = len(x.coords)
    for j in range(n):
        for k in range(j + 1, n):
            a, b = x.coords[j], x.coords[k]
            m = HomogeneousPoly(E, 2, f.degree)
            if a and f.coords[k].terms:
                m = m + f.coords[k].scale(a)
            if b and f.coords[j].terms:
                m = m - f.coords[j].scale(b)
            minors.append(m)
    nonzero = [m for m in minors if m.terms]
    if not nonzero:
        return []  # constant map onto x: every parameter
    g = binary_gcd_many(nonzero)
    if g.degree == 0:
        return []
    return [r for r, _ in binary_roots(g, 1)]


def mobius_matching(E: GF, src, dst):
    """A matrix [[a, b], [c, e]] over E sending src[i] to dst[i] (up to 3 pairs)."""
    src = [tuple(p.to(E).coords) for p in src]
    dst = [tuple(p.to(E).coords) for p in dst]
    pool = [(1, 0), (0, 1), (1, 1)] + [(x, 1) for x in range(2, E.q)]

    def complete(pts):
        pts = list(pts)
        for cand in pool:
            if len(pts) == 3:
                break
            if all(linalg.rank(E, [list(cand), list(p)]) == 2 for p in pts):
                pts.append(ProjPoint(E, cand).coords)
        return pts

    src3, dst3 = complete(src), complete(dst)

    def frame(pts):
        # columns l1*P1, l2*P2 with l1*P1 + l2*P2 = P3
        sol = linalg.solve(E, [[pts[0][0], pts[1][0]], [pts[0][1], pts[1][1]]],
                           [pts[2][0], pts[2][1]])
        l1, l2 = sol
        return [[E.mul(l1, pts[0][0]), E.mul(l2, pts[1][0])],
                [E.mul(l1, pts[0][1]), E.mul(l2, pts[1][1])]]

    A = frame(src3)
    B = frame(dst3)
    det = E.sub(E.mul(A[0][0], A[1][1]), E.mul(A[0][1], A[1][0]))
    inv = E.inv(det)
    Ainv = [[E.mul(inv, A[1][1]), E.mul(inv, E.neg(A[0][1]))],
            [E.mul(inv, E.neg(A[1][0])), E.mul(inv, A[0][0])]]
    M = [[0, 0], [0, 0]]
    for i in range(2):
        for j in range(2):
            M[i][j] = E.add(E.mul(B[i][0], Ainv[0][j]), E.mul(B[i][1], Ainv[1][j]))
    return M


def match_parameters(f: RationalCurveMap, constraints) -> RationalCurveMap | None:
    """Reparametrize f so that f(t_i) = x_i for up to three constraints, or None."""
    if not constraints:
        return f
    if len(constraints) > 3:
        return None
    E = common_field(f.field, *(t.field for t, _ in constraints), *(x.field for _, x in constraints))
    f = f.to_field(E)
    options = []
    for t, x in constraints:
        pre = preimage_params(f, x)
        if not pre:
            return None
        options.append(pre)
    for taus in itertools.product(*options):
        if len({tau for tau in taus}) != len(taus):
            continue
        M = mobius_matching(E, [t for t, _ in constraints], list(taus))
        g = f.reparametrize(M[0][0], M[0][1], M[1][0], M[1][1])
        if all(g.at(t.to(E)) == x.to(E) for t, x in constraints):
            return g
    return None


# ---------------------------------------------------------------------------
# curve search


@dataclass
class SearchResult:
    curves: list
    marker: str  # Exhausted, BudgetReached, Structured
    examined: int = 0
    strategy: str = ""

    def to_json(self):
        return {"marker": self.marker, "examined": self.examined, "strategy": self.strategy,
                "count": len(self.curves), "curves": [c.to_json() for c in self.curves]}


def _param_set(E: GF, count: int):
    G = E
    while G.q + 1 < count:
        G = G.extension(2)
    pts = [(1, 0)] + [(x, 1) for x in range(G.q)]
    return G, pts[:count]


def _constraint_rows(F: GF, N: int, d: int, constraints):
    """Linear conditions f(t) parallel to x, split into base-field coordinates."""
    rows = []
    for t, x in constraints:
        E = common_field(F, t.field, x.field)
        tt = t.to(E).coords
        xx = x.to(E).coords
        mon = [E.mul(E.pow(tt[0], d - j), E.pow(tt[1], j)) for j in range(d + 1)]
        for a in range(N + 1):
            for b in range(a + 1, N + 1):
                # x_a f_b(t) - x_b f_a(t) = 0
                row = [0] * ((N + 1) * (d + 1))
                for j in range(d + 1):
                    row[b * (d + 1) + j] = E.add(row[b * (d + 1) + j], E.mul(xx[a], mon[j]))
                    row[a * (d + 1) + j] = E.sub(row[a * (d + 1) + j], E.mul(xx[b], mon[j]))
                rows.extend(_split_row(E, F, row))
    return rows


def _split_row(E: GF, F: GF, row):
    """Express one E-linear condition on F-unknowns as [E:F] conditions over F."""
    if E == F:
        return [row]
    k = E.k // F.k
    out = [[0] * len(row) for _ in range(k)]
    for col, c in enumerate(row):
        coords = _coords_over(E, F, c)
        for i in range(k):
            out[i][col] = coords[i]
    return out


_COORD_CACHE: dict = {}


def _coords_over(E: GF, F: GF, c: int):
    """Coordinates of c in an F-basis of E (codes of F)."""
    key = (E, F)
    table = _COORD_CACHE.get(key)
    if table is None:
        k = E.k // F.k
        emb = embedding_array(F, E)
        basis = [E.pow(E.primitive, i) for i in range(k)]
        table = {}
        for combo in itertools.product(range(F.q), repeat=k):
            acc = 0
            for a, b in zip(combo, basis):
                acc = E.add(acc, E.mul(int(emb[a]), b))
            table[acc] = combo
        _COORD_CACHE[key] = table
    return table[c]


def _member_mask(X: Hypersurface, F: GF, N: int, d: int, vecs: np.ndarray) -> np.ndarray:
    """Batch membership: F(f) vanishes at 3d+1 parameter points (exact for degree 3d)."""
    G, params = _param_set(F, X.degree * d + 1)
    emb = embedding_array(F, G) if G != F else None
    P = X.equation
    mask = np.ones(vecs.shape[0], dtype=bool)
    coeffs = vecs if emb is None else emb[vecs]
    for s, t in params:
        idx = np.nonzero(mask)[0]
        if not len(idx):
            break
        mon = [G.mul(G.pow(s, d - j), G.pow(t, j)) for j in range(d + 1)]
        cols = []
        sub = coeffs[idx]
        for i in range(N + 1):
            acc = np.zeros(len(idx), dtype=np.int64)
            for j in range(d + 1):
                if mon[j]:
                    acc = G.vadd(acc, G.vmul(sub[:, i * (d + 1) + j], mon[j]))
            cols.append(acc)
        pts = np.stack(cols, axis=1)
        vals = P.eval_many(pts, G)
        mask[idx[vals != 0]] = False
    return mask


def _vec_to_map(F: GF, N: int, d: int, vec):
    forms = [HomogeneousPoly(F, 2, d, {(d - j, j): int(vec[i * (d + 1) + j]) for j in range(d + 1)})
             for i in range(N + 1)]
    if not any(f.terms for f in forms):
        return None
    g = binary_gcd_many(forms)
    if g.degree > 0:
        return None
    return RationalCurveMap(F, tuple(forms))


def _enumerate_subspace(F: GF, basis, offset=None, chunk: int = 1 << 15):
    """Canonical vectors of span(basis) (projectively), or offset + span if given."""
    basis = np.array(basis, dtype=np.int64).reshape(len(basis), -1)
    k = basis.shape[0]
    if offset is None:
        gen = iter_projective_chunks(F, k, chunk)
    else:
        from .mpoly import iter_affine_chunks
        gen = iter_affine_chunks(F, k, chunk)
    for coeffs in gen:
        acc = np.zeros((coeffs.shape[0], basis.shape[1]), dtype=np.int64)
        if offset is not None:
            acc[:] = np.asarray(offset, dtype=np.int64)
        for i in range(k):
            c = coeffs[:, i:i + 1]
            acc = F.vadd(acc, F.vmul(np.broadcast_to(c, acc.shape), basis[i][None, :]))
        yield acc


def _structured(X: Hypersurface, d: int, constraints, limit: int = 64):
    """Lines, residual conics and tangent cubics, matched to the constraints."""
    out = []
    if X.nvars != 4 or X.degree != 3:
        if d == 1:
            for L in lines_on(X):
                g = match_parameters(L.as_map(), constraints)
                if g is not None:
                    out.append(g)
        return out
    if d == 1:
        for L in lines_on(X):
            g = match_parameters(L.as_map(), constraints)
            if g is not None:
                out.append(g)
    elif d == 2:
        for C in conics_on(X, through=[x for _, x in constraints], limit=limit):
            g = match_parameters(C, constraints)
            if g is not None:
                out.append(g)
    elif d == 3:
        cands = [x for _, x in constraints][:1] or enumerate_points(X)[:limit]
        for p in cands:
            try:
                tc = tangent_cubic(X, p)
            except ValidationError:
                continue
            if tc.map is None:
                continue
            g = match_parameters(tc.map, constraints)
            if g is not None:
                out.append(g)
    return out


def conics_on(X: Hypersurface, through=(), limit: int = 64, lines=None):
    """Smooth conics of a cubic surface residual to its rational lines."""
    F = X.field
    out = []
    lines = lines_on(X) if lines is None else lines
    through = [p for p in through]
    for L in lines:
        if through:
            planes = []
            for p in through:
                if not L.contains_point(p.to(common_field(L.field, p.field))):
                    E = common_field(L.field, p.field)
                    try:
                        planes.append(Plane.through(L.A.to(E), L.B.to(E), p.to(E)))
                    except Exception:
                        continue
            planes = planes[:1]
        else:
            planes = [Plane(F, tuple(v)) for v in _planes_through_line(F, L)]
        for H in planes:
            try:
                rc = residual_conic(X, L, H)
            except Exception:
                continue
            if rc.status != "SmoothConic":
                continue
            u = conic_rational_point(rc.conic)
            f = rc.to_space(parametrize_conic(rc.conic, u))
            out.append(f)
            if len(out) >= limit:
                return out
    return out


def _planes_through_line(F: GF, L: Line):
    """Linear forms of all F-planes containing L."""
    ns = linalg.nullspace(F, [list(r) for r in L.rows])
    a, b = ns
    out = [a] + [[F.add(F.mul(x, ai), bi) for ai, bi in zip(a, b)] for x in range(F.q)]
    return out


def search_curves(X: Hypersurface, d: int, constraints=(), budget: int = 1 << 20,
                  strategies=("structured", "linear"), rng_seed: int = 0) -> SearchResult:
    """Degree-d maps P^1 -> X (over X's field) with f(t_i) = x_i.

    ``Exhausted`` means every candidate in the constrained coefficient space
    was examined; ``BudgetReached`` means sampling stopped at the budget;
    ``Structured`` means only geometric constructions were tried.
    """
    F = X.field
    N = X.nvars - 1
    constraints = list(constraints)
    found = {}
    examined = 0
    if "structured" in strategies:
        for f in _structured(X, d, constraints):
            if f.field == F and verify_member(X, f):
                found[f] = None
        if found and "linear" not in strategies:
            return SearchResult(list(found), "Structured", 0, "structured")
    if "linear" not in strategies:
        return SearchResult(list(found), "Structured", 0, "structured")
    V = (N + 1) * (d + 1)
    rows = _constraint_rows(F, N, d, constraints)
    basis = linalg.nullspace(F, rows, V) if rows else [
        [1 if i == j else 0 for i in range(V)] for j in range(V)]
    k = len(basis)
    size = (F.q ** k - 1) // (F.q - 1) if k else 0
    marker = "Exhausted"
    if k == 0:
        pass
    elif size <= budget:
        for vecs in _enumerate_subspace(F, basis):
            examined += vecs.shape[0]
            mask = _member_mask(X, F, N, d, vecs)
            for vec in vecs[mask].tolist():
                f = _vec_to_map(F, N, d, vec)
                if f is not None and all(f.at(t) == x.to(f.field) for t, x in constraints):
                    found[f] = None
    else:
        marker = "BudgetReached"
        rng = np.random.default_rng(rng_seed)
        B = np.array(basis, dtype=np.int64)
        left = budget
        while left > 0:
            n = min(left, 1 << 15)
            coeffs = rng.integers(0, F.q, size=(n, k), dtype=np.int64)
            acc = np.zeros((n, V), dtype=np.int64)
            for i in range(k):
                acc = F.vadd(acc, F.vmul(np.broadcast_to(coeffs[:, i:i + 1], acc.shape), B[i][None, :]))
            examined += n
            left -= n
            mask = _member_mask(X, F, N, d, acc)
            for vec in acc[mask].tolist():
                f = _vec_to_map(F, N, d, vec)
                if f is not None and all(f.at(t) == x.to(f.field) for t, x in constraints):
                    found[f] = None
    curves = sorted(found, key=lambda f: [[F.key(c) for c in r] for r in f.matrix()])
    return SearchResult(curves, marker, examined, "linear")


def curves_through_point(X: Hypersurface, x: ProjPoint, t: ProjPoint, dmax: int = 3):
    """Structured candidates through x with parameter t, lowest degree first."""
    out = []
    for d in range(1, dmax + 1):
        out.extend(_structured(X, d, [(t, x)]))
    return out


# ---------------------------------------------------------------------------
# interpolation into P^n


def _orbit(p: ProjPoint, base: GF):
    out = [p]
    y = p.frobenius(base)
    while y != p:
        out.append(y)
        y = y.frobenius(base)
    return out


def interpolate_to_Pn(targets, d: int, base: GF | None = None) -> RationalCurveMap:
    """A map P^1 -> P^n over the base field through prescribed closed points.

    ``targets`` is a list of (tau, x): tau a point of P^1 over GF(q^e)
    representing a closed point, x a point of P^n over the same field. The
    values f(tau) = x are imposed as linear conditions over the base field.
    """
    targets = list(targets)
    if not targets:
        raise ValidationError("no interpolation targets")
    F = base or min((t.field for t, _ in targets), key=lambda G: G.k)
    n = len(targets[0][1].coords) - 1
    seen = []
    total_deg = 0
    for tau, x in targets:
        if tau.field.k % F.k or x.field.k % F.k:
            raise ValidationError(f"{tau} is not over an extension of {F}")
        if len(x.coords) != n + 1:
            raise AmbientMismatch("targets live in different projective spaces")
        e = tau.degree_over(F)
        for other in seen:
            G = common_field(other.field, tau.field)
            y = other.to(G)
            if any(y == z for z in _orbit(tau.to(G), F)):
                raise DuplicateSupport(f"closed point {tau} appears twice")
        seen.append(tau)
        total_deg += e
    if d < total_deg - 1:
        raise DegreeTooSmall(f"degree {d} < {total_deg - 1} needed for {total_deg} points")
    V = (n + 1) * (d + 1)
    rows, rhs = [], []
    for tau, x in targets:
        E = common_field(F, tau.field, x.field)
        tt = tau.to(E).coords
        xx = x.to(E).coords
        mon = [E.mul(E.pow(tt[0], d - j), E.pow(tt[1], j)) for j in range(d + 1)]
        for i in range(n + 1):
            row = [0] * V
            for j in range(d + 1):
                row[i * (d + 1) + j] = mon[j]
            split = _split_row(E, F, row)
            vals = _coords_over(E, F, xx[i]) if E != F else (xx[i],)
            rows.extend(split)
            rhs.extend(vals)
    sol = linalg.solve(F, rows, rhs)
    if sol is None:
        raise ValidationError("interpolation system is inconsistent")
    kernel = linalg.nullspace(F, rows, V)
    candidates = [sol]
    for v in kernel[:8]:
        candidates.append([F.add(a, b) for a, b in zip(sol, v)])
    best = None
    for vec in candidates:
        forms = [HomogeneousPoly(F, 2, d, {(d - j, j): vec[i * (d + 1) + j] for j in range(d + 1)})
                 for i in range(n + 1)]
        f = RationalCurveMap.from_forms(forms, field=F)
        if f.degree == d:
            return f
        if best is None:
            best = f
    return best
