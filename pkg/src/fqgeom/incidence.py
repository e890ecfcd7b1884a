"""Lines and planes against hypersurfaces: intersections, censuses, sections,
conjugate secants and residual conics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import (
    DegenerateSpan,
    InseparableProjection,
    LineNotInPlane,
    LineNotInX,
    NoRationalPoint,
    NotFound,
    PlaneContainedInX,
    PointNotOnHypersurface,
    SearchSpaceTooLarge,
    SingularConic,
    ValidationError,
)
from .gf import FIELD_SIZE_CAP, GF, common_field, solve_quadratic_codes
from .mpoly import (
    HomogeneousPoly,
    binary_factor,
    binary_roots,
    iter_projective_chunks,
    restrict_to_line,
)
from .points import ProjPoint, format_elem, lex_sort_rows
from .projvar import Hypersurface, enumerate_points, is_smooth_point
from .rcmap import RationalCurveMap


# ---------------------------------------------------------------------------
# lines and planes


@dataclass(frozen=True)
class Line:
    """A line of projective space stored as its reduced row-echelon 2 x N matrix."""

    field: GF
    rows: tuple

    @classmethod
    def through(cls, A, B) -> "Line":
        if isinstance(A, ProjPoint) or isinstance(B, ProjPoint):
            E = common_field(*(x.field for x in (A, B) if isinstance(x, ProjPoint)))
            a = A.to(E).coords if isinstance(A, ProjPoint) else tuple(A)
            b = B.to(E).coords if isinstance(B, ProjPoint) else tuple(B)
        else:
            raise TypeError("pass ProjPoints or use Line.from_rows")
        return cls.from_rows(E, [a, b])

    @classmethod
    def from_rows(cls, E: GF, rows) -> "Line":
        R, piv = linalg.rref(E, [list(r) for r in rows])
        if len(piv) != 2:
            raise DegenerateSpan("the points do not span a line")
        return cls(E, (tuple(R[0]), tuple(R[1])))

    @property
    def A(self) -> ProjPoint:
        return ProjPoint(self.field, self.rows[0])

    @property
    def B(self) -> ProjPoint:
        return ProjPoint(self.field, self.rows[1])

    @property
    def ambient(self) -> int:
        return len(self.rows[0])

    @property
    def key(self):
        return tuple(tuple(self.field.key(c) for c in r) for r in self.rows)

    def point(self, s: int, t: int, E: GF | None = None) -> ProjPoint:
        E = E or self.field
        a = self.rows[0] if E == self.field else tuple(self.field.embed(c, E) for c in self.rows[0])
        b = self.rows[1] if E == self.field else tuple(self.field.embed(c, E) for c in self.rows[1])
        return ProjPoint(E, tuple(E.add(E.mul(s, x), E.mul(t, y)) for x, y in zip(a, b)))

    def rational_points(self) -> list[ProjPoint]:
        E = self.field
        pts = [self.point(1, 0)] + [self.point(x, 1) for x in range(E.q)]
        return sorted(pts, key=lambda p: p.key)

    def contains_point(self, p: ProjPoint) -> bool:
        E = common_field(self.field, p.field)
        rows = [list(self.to(E).rows[0]), list(self.to(E).rows[1]), list(p.to(E).coords)]
        return linalg.rank(E, rows) == 2

    def to(self, E: GF) -> "Line":
        if E == self.field:
            return self
        return Line.from_rows(E, [[self.field.embed(c, E) for c in r] for r in self.rows])

    def frobenius(self, base: GF, times: int = 1) -> "Line":
        e = base.q ** times
        F = self.field
        return Line.from_rows(F, [[F.pow(c, e) for c in r] for r in self.rows])

    def restrict(self, sub: GF):
        """The line over ``sub`` if its canonical matrix lies there, else None."""
        out = []
        for r in self.rows:
            row = []
            for c in r:
                v = self.field.restrict(c, sub)
                if v is None:
                    return None
                row.append(v)
            out.append(tuple(row))
        return Line(sub, tuple(out))

    def degree_over(self, base: GF) -> int:
        d, L = 1, self.frobenius(base)
        while L != self:
            L = L.frobenius(base)
            d += 1
        return d

    def as_map(self) -> RationalCurveMap:
        """The degree-1 parametrization (s:t) -> s*A + t*B."""
        E = self.field
        forms = [HomogeneousPoly(E, 2, 1, {(1, 0): a, (0, 1): b}) for a, b in zip(*self.rows)]
        return RationalCurveMap(E, tuple(forms))

    def to_json(self):
        return [[format_elem(self.field, c) for c in r] for r in self.rows]

    def __repr__(self):
        return f"Line[{self.A} - {self.B}]"


@dataclass(frozen=True)
class Plane:
    """A hyperplane of P^3 (or any P^N) given by its canonical linear form."""

    field: GF
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", ProjPoint(self.field, self.coeffs).coords)

    @classmethod
    def through(cls, *points: ProjPoint) -> "Plane":
        E = common_field(*(p.field for p in points))
        rows = [list(p.to(E).coords) for p in points]
        ns = linalg.nullspace(E, rows)
        if len(ns) != 1:
            raise DegenerateSpan("points do not span a hyperplane")
        return cls(E, tuple(ns[0]))

    def contains(self, p: ProjPoint) -> bool:
        E = common_field(self.field, p.field)
        h = [self.field.embed(c, E) for c in self.coeffs]
        x = p.to(E).coords
        acc = 0
        for a, b in zip(h, x):
            acc = E.add(acc, E.mul(a, b))
        return acc == 0

    def basis(self) -> list[ProjPoint]:
        return [ProjPoint(self.field, tuple(v)) for v in linalg.nullspace(self.field, [list(self.coeffs)])]

    def form(self) -> HomogeneousPoly:
        return HomogeneousPoly.linear(self.field, list(self.coeffs))


def all_planes(F: GF, N: int = 4) -> list[Plane]:
    pts = [row for chunk in iter_projective_chunks(F, N) for row in chunk.tolist()]
    return [Plane(F, tuple(r)) for r in pts]


# ---------------------------------------------------------------------------
# line-hypersurface intersection


@dataclass
class IntersectionDivisor:
    """Intersection of a line with a hypersurface.

    ``entries`` lists closed points as (Frobenius orbit, multiplicity); the
    orbit is a sorted list of ProjPoints over the field of definition.
    """

    base: GF
    contained: bool
    entries: list = dc_field(default_factory=list)

    @property
    def degree(self) -> int:
        return sum(len(orbit) * mult for orbit, mult in self.entries)

    def support(self) -> list[ProjPoint]:
        return [p for orbit, _ in self.entries for p in orbit]

    def to_json(self):
        if self.contained:
            return {"contained": True}
        return {"contained": False, "entries": [
            {"degree": len(orbit), "multiplicity": mult, "field": orbit[0].field.literal,
             "points": [p.to_json() for p in orbit]} for orbit, mult in self.entries]}


def intersect_line(X: Hypersurface, L: Line) -> IntersectionDivisor:
    """Closed points of X on L with multiplicities, or the Contained marker."""
    E = common_field(X.field, L.field)
    L = L.to(E)
    f = restrict_to_line(X.equation.to_field(E), L)
    if f.is_zero():
        return IntersectionDivisor(E, True)
    entries = []
    for g, mult in binary_factor(f):
        e = g.degree
        roots = binary_roots(g, e)
        Ee = roots[0][0].field
        orbit = sorted((L.point(r[0], r[1], Ee) for r, _ in roots), key=lambda p: p.key)
        entries.append((orbit, mult))
    entries.sort(key=lambda om: (len(om[0]), om[0][0].key))
    return IntersectionDivisor(E, False, entries)


# ---------------------------------------------------------------------------
# containment tests in batch


def _param_points(E: GF, count: int):
    """``count`` distinct points of P^1, in a field containing E."""
    G = E
    while G.q + 1 < count:
        G = G.extension(2) if G.q ** 2 <= FIELD_SIZE_CAP else None
        if G is None:
            raise SearchSpaceTooLarge("no field large enough for containment test")
    pts = [(1, 0)] + [(x, 1) for x in range(min(G.q, count - 1))]
    return G, pts[:count]


def lines_in_batch(P: HomogeneousPoly, A: np.ndarray, B: np.ndarray, E: GF) -> np.ndarray:
    """Mask of rows i with span(A[i], B[i]) inside V(P); A, B are codes in E."""
    G, params = _param_points(E, P.degree + 1)
    if G != E:
        from .gf import embedding_array

        emb = embedding_array(E, G)
        A, B = emb[A], emb[B]
    mask = np.ones(A.shape[0], dtype=bool)
    for s, t in params:
        idx = np.nonzero(mask)[0]
        if not len(idx):
            break
        pts = G.vadd(G.vmul(A[idx], s), G.vmul(B[idx], t))
        vals = P.eval_many(pts, G)
        mask[idx[vals != 0]] = False
    return mask


def _grassmann_patterns(N: int):
    for i, j in itertools.combinations(range(N), 2):
        free0 = [c for c in range(i + 1, N) if c != j]
        free1 = list(range(j + 1, N))
        yield i, j, free0, free1


def grassmannian_size(q: int, N: int) -> int:
    return sum(q ** (len(f0) + len(f1)) for _, _, f0, f1 in _grassmann_patterns(N))


def _grassmann_block(E: GF, N: int, i, j, free0, free1):
    nf = len(free0) + len(free1)
    total = E.q ** nf
    idx = np.arange(total, dtype=np.int64)
    vals = []
    for _ in range(nf):
        vals.append(idx % E.q)
        idx = idx // E.q
    A = np.zeros((total, N), dtype=np.int64)
    B = np.zeros((total, N), dtype=np.int64)
    A[:, i] = 1
    B[:, j] = 1
    k = 0
    vals = vals[::-1]
    for c in free0:
        A[:, c] = vals[k]
        k += 1
    for c in free1:
        B[:, c] = vals[k]
        k += 1
    return A, B


def lines_on(X: Hypersurface, m: int = 1, method: str = "auto") -> list[Line]:
    """Every line of X defined over GF(q^m), sorted by canonical matrix."""
    E = X.field.extension(m) if m > 1 else X.field
    N = X.nvars
    if method == "auto":
        small = N <= 4 and grassmannian_size(E.q, N) <= FIELD_SIZE_CAP
        method = "grassmannian" if small else "section"
    P = X.equation
    found = []
    if method == "grassmannian":
        size = grassmannian_size(E.q, N)
        if size > FIELD_SIZE_CAP:
            raise SearchSpaceTooLarge(f"{size} candidate lines exceed the 2^24 cap")
        for i, j, f0, f1 in _grassmann_patterns(N):
            A, B = _grassmann_block(E, N, i, j, f0, f1)
            mask = lines_in_batch(P, A, B, E)
            for a, b in zip(A[mask].tolist(), B[mask].tolist()):
                found.append(Line(E, (tuple(a), tuple(b))))
    elif method == "section":
        # every line meets the hyperplane x_(N-1) = 0
        XH = Hypersurface(P.to_field(E))
        size = E.q ** (N - 2)
        if size > FIELD_SIZE_CAP:
            raise SearchSpaceTooLarge(f"{size} hyperplane points exceed the 2^24 cap")
        for chunk in iter_projective_chunks(E, N - 1):
            full = np.concatenate([chunk, np.zeros((chunk.shape[0], 1), dtype=np.int64)], axis=1)
            sel = full[XH.equation.eval_many(full, E) == 0]
            for row in sel.tolist():
                found.extend(lines_through_point(XH, ProjPoint(E, tuple(row))))
    elif method == "pairs":
        pts = enumerate_points(X, m)
        if len(pts) ** 2 > FIELD_SIZE_CAP * 4:
            raise SearchSpaceTooLarge(f"{len(pts)} points: pair scan too large")
        arr = np.array([p.coords for p in pts], dtype=np.int64).reshape(len(pts), N)
        seen = set()
        for i in range(len(pts)):
            others = arr[i + 1:]
            if not len(others):
                break
            Ai = np.repeat(arr[i:i + 1], len(others), axis=0)
            mask = lines_in_batch(P, Ai, others, E)
            for b in others[mask].tolist():
                L = Line.from_rows(E, [list(arr[i]), b])
                if L not in seen:
                    seen.add(L)
                    found.append(L)
    else:
        raise ValueError(f"unknown line census method {method!r}")
    found = sorted(set(found), key=lambda L: L.key)
    return found


def lines_through_point(X: Hypersurface, p: ProjPoint, m: int = 1) -> list[Line]:
    """Lines of X through p defined over GF(q^m)."""
    E = common_field(X.field.extension(m) if m > 1 else X.field, p.field)
    p = p.to(E)
    if not X.contains(p):
        raise PointNotOnHypersurface(f"{p} is not on the hypersurface")
    dirs = hyperplane_directions(E, p, X.nvars)
    grad = X.gradient_at(p)
    if any(grad):
        # a line through a smooth point of X lies in its tangent hyperplane
        acc = np.zeros(len(dirs), dtype=np.int64)
        for i, g in enumerate(grad):
            if g:
                acc = E.vadd(acc, E.vmul(dirs[:, i], g))
        dirs = dirs[acc == 0]
    A = np.repeat(np.array([p.coords], dtype=np.int64), len(dirs), axis=0)
    mask = lines_in_batch(X.equation, A, dirs, E)
    out = {Line.from_rows(E, [list(p.coords), b]) for b in dirs[mask].tolist()}
    return sorted(out, key=lambda L: L.key)


def hyperplane_directions(E: GF, p: ProjPoint, N: int) -> np.ndarray:
    """Canonical points of {x_j = 0}, j the first nonzero coordinate of p, in lex order.

    Every line through p meets this hyperplane in exactly one point.
    """
    j = next(i for i, c in enumerate(p.coords) if c)
    size = E.q ** (N - 2)
    if size > FIELD_SIZE_CAP:
        raise SearchSpaceTooLarge(f"{size} directions exceed the 2^24 cap")
    blocks = []
    for chunk in iter_projective_chunks(E, N - 1):
        full = np.insert(chunk, j, 0, axis=1)
        blocks.append(full)
    dirs = np.concatenate(blocks)
    return lex_sort_rows(E, dirs)


# ---------------------------------------------------------------------------
# plane sections


@dataclass
class SectionLine:
    line: Line          # over its minimal field of definition
    degree: int         # [field of definition : base]
    multiplicity: int


@dataclass
class PlaneSection:
    """Factorization type of a plane section of a cubic surface.

    ``kind`` is IrreducibleCubic, LinePlusConic, ThreeLines or NonReduced.
    """

    kind: str
    plane: Plane
    lines: list = dc_field(default_factory=list)
    concurrent: bool = False

    @property
    def conjugate_triple(self) -> bool:
        """Three distinct lines forming a single Frobenius orbit."""
        return (self.kind == "ThreeLines" and len(self.lines) == 3
                and all(sl.degree == 3 for sl in self.lines))

    def to_json(self):
        return {
            "kind": self.kind,
            "plane": [format_elem(self.plane.field, c) for c in self.plane.coeffs],
            "concurrent": self.concurrent,
            "lines": [{"field": sl.line.field.literal, "degree": sl.degree,
                       "multiplicity": sl.multiplicity, "rows": sl.line.to_json()}
                      for sl in self.lines],
        }


def _plane_restriction(X: Hypersurface, basis) -> HomogeneousPoly:
    E = basis[0].field
    images = [HomogeneousPoly(E, 3, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})
              for a, b, c in zip(*(pt.coords for pt in basis))]
    return X.equation.to_field(E).substitute(images)


def _minimal_line(L: Line, base: GF) -> Line:
    """Restrict L to the smallest intermediate field containing its matrix."""
    for d in range(1, L.field.k // base.k + 1):
        if (L.field.k // base.k) % d:
            continue
        sub = base.extension(d) if d > 1 else base
        R = L.restrict(sub)
        if R is not None:
            return R
    return L


def plane_linear_components(G: HomogeneousPoly, emax: int = 3):
    """Lines (in plane coordinates) contained in the plane curve V(G).

    A line component meets a fixed base line M at a root of G|_M, defined over
    the component's field; lines through those roots are scanned over
    GF(q^e), e <= emax. Returns minimal-field Lines in P^2.
    """
    F = G.field
    M = None
    for cand in ([(1, 0, 0), (0, 1, 0)], [(0, 1, 0), (0, 0, 1)], [(1, 0, 0), (0, 0, 1)],
                 [(1, 0, 0), (0, 1, 1)], [(0, 1, 0), (1, 0, 1)], [(0, 0, 1), (1, 1, 0)]):
        Lc = Line.from_rows(F, cand)
        if not restrict_to_line(G, Lc).is_zero():
            M = Lc
            break
    found = set()
    if M is None:
        raise ValidationError("could not find a base line off the curve")
    for e in range(1, emax + 1):
        E = F.extension(e) if e > 1 else F
        g = restrict_to_line(G.to_field(E), M.to(E))
        roots = binary_roots(g, 1)
        for (r, _mult) in roots:
            pt = M.to(E).point(r[0], r[1])
            dirs = hyperplane_directions(E, pt, 3)
            A = np.repeat(np.array([pt.coords], dtype=np.int64), len(dirs), axis=0)
            mask = lines_in_batch(G.to_field(E), A, dirs, E)
            for b in dirs[mask].tolist():
                L = Line.from_rows(E, [list(pt.coords), b])
                found.add(_minimal_line(L, F))
    return sorted(found, key=lambda L: (L.field.k, L.key))


def _vanishing_order_on_line(G: HomogeneousPoly, L: Line) -> int:
    """Largest m with l^m | G, l the linear form of the plane line L.

    Rewrites G in coordinates where l is a variable and reads off the
    smallest power of that variable.
    """
    E = common_field(G.field, L.field)
    g = G.to_field(E)
    a = linalg.nullspace(E, [list(r) for r in L.to(E).rows])[0]
    k = next(i for i, c in enumerate(a) if c)
    inv = E.inv(a[k])
    n = g.nvars
    images = []
    for i in range(n):
        if i != k:
            images.append(HomogeneousPoly.variable(E, n, i))
        else:
            # u_k = (w - sum_{j != k} a_j u_j) / a_k with w stored in slot k
            terms = {}
            for j in range(n):
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = inv if j == k else E.neg(E.mul(a[j], inv))
            images.append(HomogeneousPoly(E, n, 1, terms))
    h = g.substitute(images)
    return min(e[k] for e in h.terms)


def classify_plane_section(X: Hypersurface, H) -> PlaneSection:
    """Factorization type of X cap H for a cubic surface X and plane H."""
    if X.nvars != 4 or X.degree != 3:
        raise ValidationError("plane sections are classified for cubic surfaces only")
    if not isinstance(H, Plane):
        H = Plane(X.field, tuple(H))
    F = common_field(X.field, H.field)
    basis = [b.to(F) for b in Plane(H.field, H.coeffs).basis()]
    G = _plane_restriction(X, basis)
    if G.is_zero():
        raise PlaneContainedInX("the plane lies in the surface")
    comps = plane_linear_components(G)
    lines = []
    for Lp in comps:
        mult = _vanishing_order_on_line(G, Lp)
        # map the plane line to P^3
        Eb = Lp.field
        bas = [b.to(Eb) for b in basis]
        rows = []
        for r in Lp.rows:
            rows.append([Eb.add(Eb.add(Eb.mul(r[0], x), Eb.mul(r[1], y)), Eb.mul(r[2], z))
                         for x, y, z in zip(*(b.coords for b in bas))])
        L3 = Line.from_rows(Eb, rows)
        deg = Eb.k // F.k
        lines.append(SectionLine(L3, deg, mult))
    lines.sort(key=lambda sl: (sl.degree, sl.line.key))
    total = sum(sl.multiplicity for sl in lines)
    if total == 0:
        kind = "IrreducibleCubic"
    elif total == 1:
        kind = "LinePlusConic"
    elif any(sl.multiplicity > 1 for sl in lines):
        kind = "NonReduced"
    else:
        kind = "ThreeLines"
    concurrent = False
    if kind == "ThreeLines" and len(lines) == 3:
        E = common_field(*(sl.line.field for sl in lines))
        rows = [list(r) for sl in lines for r in sl.line.to(E).rows]
        concurrent = linalg.rank(E, rows) == 3 and _common_point(E, [sl.line.to(E) for sl in lines])
    return PlaneSection(kind, H, lines, concurrent)


def _common_point(E: GF, lines) -> bool:
    """Whether coplanar lines pass through one point."""
    a, b, c = lines
    rows = [list(r) for r in a.rows] + [list(r) for r in b.rows]
    if linalg.rank(E, rows) != 3:
        return True
    # intersection point of a and b: combination s*A1 + t*A2 lying in span(b)
    ns = linalg.nullspace(E, [list(col) for col in zip(*rows)])
    s, t = ns[0][0], ns[0][1]
    pt = ProjPoint(E, tuple(E.add(E.mul(s, x), E.mul(t, y)) for x, y in zip(*a.rows)))
    return c.contains_point(pt)


# ---------------------------------------------------------------------------
# conjugate secants


def is_eckardt_point(X: Hypersurface, p: ProjPoint) -> bool:
    """Smooth point of a cubic surface whose tangent section is three concurrent lines through it."""
    if not is_smooth_point(X, p):
        return False
    E = common_field(X.field, p.field)
    H = Plane(E, tuple(X.gradient_at(p.to(E))))
    sec = classify_plane_section(X, H)
    # the tangent section is singular at p, so concurrent lines meet there
    return sec.kind == "ThreeLines" and sec.concurrent


class ConjugateSecant(NamedTuple):
    line: Line
    s: ProjPoint
    s_prime: ProjPoint


def taylor_components(X: Hypersurface, p: ProjPoint):
    """(L, Q, C) with F(s*p + v) = s^2 L(v) + s Q(v) + C(v) for p on a cubic X."""
    T = X.equation.taylor(p)
    return T[1], T[2], T[3]


def _qualifying_mask(E: GF, Lv, Qv, Cv):
    """Directions where L z^2 + Q z + C has a conjugate root pair and L != 0."""
    ok = Lv != 0
    if E.p == 2:
        ok &= Qv != 0
        safe_q = np.where(Qv == 0, 1, Qv)
        beta = E.vmul(E.vmul(Lv, Cv), E.vpow(safe_q, (E.q - 3) % (E.q - 1)))
        tr = np.zeros_like(beta)
        x = beta
        for _ in range(E.k):
            tr = E.vadd(tr, x)
            x = E.vmul(x, x)
        ok &= tr != 0
    else:
        disc = E.vadd(E.vmul(Qv, Qv), E.vneg(E.vmul(E.vmul(np.full_like(Lv, E.from_int(4)), Lv), Cv)))
        chi = E.vpow(disc, (E.q - 1) // 2)
        ok &= (disc != 0) & (chi != 1)
    return ok


def find_conjugate_secant(X: Hypersurface, p: ProjPoint) -> ConjugateSecant:
    """First line through p (lex order of directions) whose residual intersection
    with the cubic X is a pair of smooth points conjugate over GF(q^2)."""
    F = X.field
    if X.degree != 3:
        raise ValidationError("conjugate secants are defined for cubics")
    pr = p.restrict(F) if p.field != F else p
    if pr is None:
        raise ValidationError("p must be a rational point")
    p = pr
    if not is_smooth_point(X, p):
        raise ValidationError(f"{p} is a singular point")
    Lf, Qf, Cf = taylor_components(X, p)
    if F.p == 2 and Qf.is_zero():
        raise InseparableProjection(
            "the quadratic term vanishes identically: projection from p is inseparable")
    dirs = hyperplane_directions(F, p, X.nvars)
    Lv, Qv, Cv = (P.eval_many(dirs, F) if not P.is_zero() else np.zeros(len(dirs), dtype=np.int64)
                  for P in (Lf, Qf, Cf))
    ok = _qualifying_mask(F, Lv, Qv, Cv)
    E2 = F.extension(2)
    p2 = p.to(E2)
    for i in np.nonzero(ok)[0].tolist():
        v = tuple(int(c) for c in dirs[i])
        r1, r2, E, split = solve_quadratic_codes(F, int(Lv[i]), int(Qv[i]), int(Cv[i]))
        if split:  # mask and solver disagree only on a fault
            continue
        v2 = tuple(F.embed(c, E2) for c in v)
        pts = []
        for z in (r1, r2):
            pts.append(ProjPoint(E2, tuple(E2.add(E2.mul(z, a), b) for a, b in zip(p2.coords, v2))))
        if not all(is_smooth_point(X, s) for s in pts):
            continue
        s, s2 = sorted(pts, key=lambda q: q.key)
        return ConjugateSecant(Line.from_rows(F, [list(p.coords), list(v)]), s, s2)
    raise NotFound(f"no conjugate secant through {p} over {F}")


# ---------------------------------------------------------------------------
# conics


def conic_coefficients(Q: HomogeneousPoly):
    """(a, b, c, d, e, f) for a x^2 + b y^2 + c z^2 + d xy + e xz + f yz."""
    g = Q.terms.get
    return (g((2, 0, 0), 0), g((0, 2, 0), 0), g((0, 0, 2), 0),
            g((1, 1, 0), 0), g((1, 0, 1), 0), g((0, 1, 1), 0))


def conic_discriminant(Q: HomogeneousPoly) -> int:
    """4abc + def - af^2 - be^2 - cd^2; zero iff the conic is singular (any characteristic)."""
    F = Q.field
    a, b, c, d, e, f = conic_coefficients(Q)
    m = F.mul
    terms = [m(F.from_int(4), m(a, m(b, c))), m(d, m(e, f))]
    neg = [m(a, m(f, f)), m(b, m(e, e)), m(c, m(d, d))]
    acc = 0
    for t in terms:
        acc = F.add(acc, t)
    for t in neg:
        acc = F.sub(acc, t)
    return acc


def conic_status(Q: HomogeneousPoly) -> str:
    """SmoothConic, TwoLines or DoubleLine (geometric)."""
    if conic_discriminant(Q) != 0:
        return "SmoothConic"
    F = Q.field
    a, b, c, d, e, f = conic_coefficients(Q)
    if F.p == 2:
        return "DoubleLine" if d == e == f == 0 else "TwoLines"
    two = F.from_int(2)
    M = [[F.mul(two, a), d, e], [d, F.mul(two, b), f], [e, f, F.mul(two, c)]]
    return "DoubleLine" if linalg.rank(F, M) <= 1 else "TwoLines"


@dataclass
class ResidualConic:
    """Residual conic of a plane through a line of a cubic surface.

    ``conic`` is a ternary form in plane coordinates (u0, u1, u2) for the
    parametrization u0*basis[0] + u1*basis[1] + u2*basis[2]; the line is u2 = 0.
    """

    conic: HomogeneousPoly
    basis: list
    status: str

    def to_space(self, f: RationalCurveMap) -> RationalCurveMap:
        """Push a plane curve map into P^3 through the basis."""
        E = common_field(f.field, *(b.field for b in self.basis))
        f = f.to_field(E)
        bas = [b.to(E) for b in self.basis]
        forms = []
        for i in range(len(bas[0].coords)):
            acc = HomogeneousPoly(E, 2, f.degree)
            for k in range(3):
                c = bas[k].coords[i]
                if c and f.coords[k].terms:
                    acc = acc + f.coords[k].scale(c)
            forms.append(acc)
        return RationalCurveMap.from_forms(forms, field=E)

    def point_to_space(self, u: ProjPoint) -> ProjPoint:
        E = common_field(u.field, *(b.field for b in self.basis))
        u = u.to(E)
        bas = [b.to(E) for b in self.basis]
        return ProjPoint(E, tuple(
            E.add(E.add(E.mul(u[0], x), E.mul(u[1], y)), E.mul(u[2], z))
            for x, y, z in zip(*(b.coords for b in bas))))


def residual_conic(X: Hypersurface, L: Line, H) -> ResidualConic:
    """Quadratic cofactor of X cap H after removing the line L."""
    if not isinstance(H, Plane):
        H = Plane(X.field, tuple(H))
    E = common_field(X.field, L.field, H.field)
    L = L.to(E)
    if not restrict_to_line(X.equation.to_field(E), L).is_zero():
        raise LineNotInX("the line is not contained in the surface")
    if not (H.contains(L.A) and H.contains(L.B)):
        raise LineNotInPlane("the line does not lie in the plane")
    third = next(b.to(E) for b in Plane(H.field, H.coeffs).basis() if not L.contains_point(b))
    basis = [L.A, L.B, third]
    G = _plane_restriction(X, basis)
    if G.is_zero():
        raise PlaneContainedInX("the plane lies in the surface")
    terms = {}
    for e, c in G.terms.items():
        if e[2] == 0:  # u2 divides G since the line u2 = 0 lies on the section
            raise LineNotInX("section is not divisible by the line")
        terms[(e[0], e[1], e[2] - 1)] = c
    conic = HomogeneousPoly(E, 3, G.degree - 1, terms)
    return ResidualConic(conic, basis, conic_status(conic))


def parametrize_conic(Q: HomogeneousPoly, p0: ProjPoint) -> RationalCurveMap:
    """Degree-2 map P^1 -> V(Q) sending (1:0) to p0, via lines through p0."""
    if Q.nvars != 3 or Q.degree != 2:
        raise ValidationError("expected a ternary quadratic form")
    if conic_discriminant(Q) == 0:
        raise SingularConic("the conic is singular")
    if p0 is None:
        raise NoRationalPoint("a rational point is required")
    E = common_field(Q.field, p0.field)
    Q = Q.to_field(E)
    p0 = p0.to(E)
    if Q.eval_codes(p0.coords, E) != 0:
        raise ValidationError(f"{p0} is not on the conic")
    grad = [d.eval_codes(p0.coords, E) for d in Q.jacobian()]
    tangent = linalg.nullspace(E, [grad])
    A = next(v for v in tangent if linalg.rank(E, [v, list(p0.coords)]) == 2)
    B = next(v for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1]) if _dot(E, grad, v) != 0)
    D = [HomogeneousPoly(E, 2, 1, {(1, 0): a, (0, 1): b}) for a, b in zip(A, B)]
    qD = Q.substitute(D)
    bD = HomogeneousPoly(E, 2, 1, {})
    for g, dform in zip(grad, D):
        if g:
            bD = bD + dform.scale(g)
    forms = []
    for i in range(3):
        part = HomogeneousPoly(E, 2, 2, {})
        if p0.coords[i] and qD.terms:
            part = part + qD.scale(p0.coords[i])
        if bD.terms and D[i].terms:
            part = part - bD * D[i]
        forms.append(part)
    return RationalCurveMap.from_forms(forms, field=E)


def _dot(E: GF, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = E.add(acc, E.mul(a, b))
    return acc


def conic_rational_point(Q: HomogeneousPoly) -> ProjPoint:
    """Lex-first rational point of a conic (always exists over a finite field)."""
    F = Q.field
    hits = [chunk[Q.eval_many(chunk) == 0] for chunk in iter_projective_chunks(F, 3)]
    hits = np.concatenate(hits)
    if not len(hits):
        raise NoRationalPoint("conic without rational points")
    return ProjPoint(F, tuple(int(c) for c in lex_sort_rows(F, hits)[0]))
