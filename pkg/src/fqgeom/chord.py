"""Chord-and-tangent constructions on cubic hypersurfaces and Galois descent
of rational curves through conjugate secants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .curvespace import (
    conics_on,
    match_parameters,
    search_curves,
    tangent_cubic,
    verify_member,
)
from .errors import (
    DegeneratePencil,
    DominanceCertificateNotFound,
    EqualPoints,
    EvenCharacteristic,
    ExtensionSearchExhausted,
    FqGeomError,
    LineContainedInX,
    NotAMember,
    NotDefinedOverBase,
    NotFound,
    PointNotOnHypersurface,
    ReplayMismatch,
    SecantNotFound,
    SquareParameter,
    TangentSectionDegenerate,
    ValidationError,
)
from .gf import GF, common_field
from .incidence import find_conjugate_secant, lines_on, lines_through_point
from .mpoly import HomogeneousPoly, binary_divide, binary_gcd_many
from .points import ProjPoint, format_elem
from .projvar import Hypersurface, enumerate_points, is_smooth_point
from .rcmap import RationalCurveMap

__all__ = [
    "third_point", "third_point_symbolic", "descend", "WeilRestrictionModel", "weil_restrict_p1",
    "DescentCertificate", "descend_set_map", "replay_certificate", "UnirationalMap",
    "unirational_map_surface",
]


def _dot(E: GF, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = E.add(acc, E.mul(a, b))
    return acc


# ---------------------------------------------------------------------------
# pointwise


def third_point(X: Hypersurface, p: ProjPoint, p2: ProjPoint) -> ProjPoint:
    """Residual intersection of the line p p2 with a cubic X.

    With c21 = grad F(p) . p2 and c12 = grad F(p2) . p the restriction of F to
    the line is s t (c21 s + c12 t), so the third point is c12 p - c21 p2.
    """
    if X.degree != 3:
        raise ValidationError("the third-point map needs a cubic")
    E = common_field(X.field, p.field, p2.field)
    p, p2 = p.to(E), p2.to(E)
    if p == p2:
        raise EqualPoints(f"{p} given twice")
    for pt in (p, p2):
        if not X.contains(pt):
            raise PointNotOnHypersurface(f"{pt} is not on the hypersurface")
    c21 = _dot(E, X.gradient_at(p), p2.coords)
    c12 = _dot(E, X.gradient_at(p2), p.coords)
    if c21 == 0 and c12 == 0:
        raise LineContainedInX(f"the line through {p} and {p2} lies on the hypersurface")
    return ProjPoint(E, tuple(E.sub(E.mul(c12, a), E.mul(c21, b))
                              for a, b in zip(p.coords, p2.coords)))


# ---------------------------------------------------------------------------
# symbolic


def _pair_coefficients(X: Hypersurface, P: RationalCurveMap, Q: RationalCurveMap, E: GF):
    """(grad F(P) . Q, grad F(Q) . P) as binary forms."""
    dP = [g.to_field(E) for g in X.partials()]

    def contract(grad_at, other):
        acc = None
        for g, o in zip(grad_at, other.coords):
            if g.terms and o.terms:
                term = g * o
                acc = term if acc is None else acc + term
        return acc

    gP = [g.substitute(list(P.coords)) if g.terms else None for g in dP]
    gQ = [g.substitute(list(Q.coords)) if g.terms else None for g in dP]
    c21 = contract([g or HomogeneousPoly(E, 2, 2 * P.degree) for g in gP], Q)
    c12 = contract([g or HomogeneousPoly(E, 2, 2 * Q.degree) for g in gQ], P)
    deg21 = 2 * P.degree + Q.degree
    deg12 = 2 * Q.degree + P.degree
    return (c21 or HomogeneousPoly(E, 2, deg21)), (c12 or HomogeneousPoly(E, 2, deg12))


def _combine(E: GF, a: HomogeneousPoly, P: RationalCurveMap, b: HomogeneousPoly,
             Q: RationalCurveMap):
    """The forms a*P - b*Q."""
    deg = a.degree + P.degree
    out = []
    for f, g in zip(P.coords, Q.coords):
        acc = HomogeneousPoly(E, 2, deg)
        if a.terms and f.terms:
            acc = acc + a * f
        if b.terms and g.terms:
            acc = acc - b * g
        out.append(acc)
    return out


def third_point_symbolic(X: Hypersurface, P: RationalCurveMap, Q: RationalCurveMap) -> RationalCurveMap:
    """The curve t -> third_point(P(t), Q(t)), with common factors removed."""
    if X.degree != 3:
        raise ValidationError("the third-point map needs a cubic")
    E = common_field(X.field, P.field, Q.field)
    P, Q = P.to_field(E), Q.to_field(E)
    for f in (P, Q):
        if not verify_member(X, f):
            raise NotAMember("input curve is not on the hypersurface")
    c21, c12 = _pair_coefficients(X, P, Q, E)
    if not c21.terms and not c12.terms:
        raise DegeneratePencil("the pencil of chords lies on the hypersurface")
    forms = _combine(E, c12, P, c21, Q)
    if not any(f.terms for f in forms):
        raise DegeneratePencil("the two curves agree pointwise")
    return RationalCurveMap.from_forms(forms, field=E)


def _tangential(X: Hypersurface, P: RationalCurveMap) -> RationalCurveMap:
    """Third point of the tangent line to P at each parameter: c03 P - c12 D,
    with D a derivative of P (so the chord coefficient c21 vanishes)."""
    E = P.field
    last = None
    for var in (0, 1):
        D = [f.partial(var) if f.terms and f.degree > 0 else HomogeneousPoly(E, 2, max(P.degree - 1, 0))
             for f in P.coords]
        if not any(f.terms for f in D):
            continue
        Dm = RationalCurveMap(E, tuple(D))
        cube = X.equation.to_field(E).substitute(list(Dm.coords))
        # grad F(D) . P is the coefficient of u v^2 in F(uP + vD)
        c, _ = _pair_coefficients(X, Dm, P, E)
        forms = _combine(E, cube, P, c, Dm)
        if any(f.terms for f in forms):
            try:
                return RationalCurveMap.from_forms(forms, field=E)
            except ValidationError as exc:
                last = exc
    raise DegeneratePencil(f"tangential construction degenerates ({last})")


def descend(X: Hypersurface, phi2: RationalCurveMap) -> RationalCurveMap:
    """A curve over the base field of X from a curve over its quadratic extension.

    The chord through phi2(t) and its Frobenius conjugate meets X in a third
    point; the result is Frobenius invariant. A curve already defined over
    the base field uses its tangent lines instead.
    """
    F = X.field
    E = phi2.field
    if E != F and not (E.p == F.p and E.k == 2 * F.k):
        raise ValidationError(f"curve must be over {F} or its quadratic extension")
    if not verify_member(X, phi2):
        raise NotAMember("the curve is not on the hypersurface")
    conj = phi2.frobenius(F) if E != F else phi2
    if conj == phi2:
        base = phi2.restrict_coeffs(F)
        out = _tangential(X, base)
    else:
        out = third_point_symbolic(X, phi2, conj)
    res = out.restrict_coeffs(F)
    if res is None:
        raise NotDefinedOverBase("descended curve is not defined over the base field")
    return res


# ---------------------------------------------------------------------------
# Weil restriction of P^1


@dataclass
class WeilRestrictionModel:
    """P^1 over GF(q^2) = GF(q)(sqrt a) as the quadric u3^2 - a u4^2 = 4 u1 u2 in P^3."""

    base: GF
    a: int
    ext: GF
    sqrt_a: int
    equation: HomogeneousPoly

    @property
    def q(self) -> int:
        return self.base.q

    def _split(self, x: int):
        """(x1, x2) in the base field with x = x1 + sqrt(a) x2."""
        E, F = self.ext, self.base
        xs = E.frobenius(x, F.k)
        half = E.inv(E.from_int(2))
        x1 = E.mul(E.add(x, xs), half)
        x2 = E.div(E.mul(E.sub(x, xs), half), self.sqrt_a)
        return E.restrict(x1, F), E.restrict(x2, F)

    def to_model(self, pt: ProjPoint) -> ProjPoint:
        F, E = self.base, self.ext
        pt = pt.to(E)
        X, Y = pt.coords
        x1, x2 = self._split(X)
        y1, y2 = self._split(Y)
        a = self.a
        two = F.from_int(2)
        u1 = F.sub(F.mul(x1, x1), F.mul(a, F.mul(x2, x2)))
        u2 = F.sub(F.mul(y1, y1), F.mul(a, F.mul(y2, y2)))
        u3 = F.mul(two, F.sub(F.mul(x1, y1), F.mul(a, F.mul(x2, y2))))
        u4 = F.mul(two, F.sub(F.mul(x2, y1), F.mul(x1, y2)))
        return ProjPoint(F, (u1, u2, u3, u4))

    def from_model(self, u: ProjPoint) -> ProjPoint:
        F, E = self.base, self.ext
        if len(u.coords) != 4 or u.field != F:
            raise ValidationError("model points live in P^3 over the base field")
        if self.equation.eval_codes(u.coords, F) != 0:
            raise ValidationError(f"{u} is not on the model quadric")
        u1, u2, u3, u4 = (F.embed(c, E) for c in u.coords)
        if u1 == 0:
            return ProjPoint(E, (0, 1))
        half = E.inv(E.from_int(2))
        y = E.mul(E.sub(u3, E.mul(self.sqrt_a, u4)), half)
        return ProjPoint(E, (u1, y))

    def model_points(self) -> list[ProjPoint]:
        return enumerate_points(Hypersurface(self.equation))

    def to_json(self):
        return {"base": self.base.literal, "a": format_elem(self.base, self.a),
                "extension": self.ext.literal, "equation": str(self.equation),
                "variables": ["u1", "u2", "u3", "u4"]}


def weil_restrict_p1(q: int, a: int | None = None) -> WeilRestrictionModel:
    """Model of the Weil restriction of P^1 from GF(q^2) to GF(q), q odd."""
    F = GF.of_size(q)
    if F.p == 2:
        raise EvenCharacteristic("the quadric model needs odd characteristic")
    if a is None:
        a = next(x for x in range(1, F.q) if not F.is_square(x))
    a = int(a)
    if a == 0 or F.is_square(a):
        raise SquareParameter(f"{format_elem(F, a)} is a square in {F}")
    E = F.extension(2)
    ae = F.embed(a, E)
    root = E.sqrt(ae)
    two = F.from_int(2)
    four = F.mul(two, two)
    eq = HomogeneousPoly(F, 4, 2, {
        (0, 0, 2, 0): 1,
        (0, 0, 0, 2): F.neg(a),
        (1, 1, 0, 0): F.neg(four),
    })
    return WeilRestrictionModel(F, a, E, root, eq)


# ---------------------------------------------------------------------------
# descent of set maps


@dataclass
class DescentCertificate:
    """Replayable record of a set-map extension."""

    equation: str
    base: str
    table: list
    secants: list
    lift: list
    phi2: RationalCurveMap
    phi: RationalCurveMap
    transcript: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "kind": "DescentCertificate",
            "hypersurface": self.equation,
            "base": self.base,
            "table": self.table,
            "secants": self.secants,
            "lift": self.lift,
            "phi2": self.phi2.to_json(),
            "phi": self.phi.to_json(),
            "transcript": self.transcript,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "DescentCertificate":
        if data.get("kind") != "DescentCertificate":
            raise ValidationError("not a descent certificate")
        return cls(data["hypersurface"], data["base"], data["table"], data["secants"],
                   data["lift"], RationalCurveMap.from_json(data["phi2"]),
                   RationalCurveMap.from_json(data["phi"]), data.get("transcript", []))


def _candidate_lifts(X: Hypersurface, E: GF, constraints, dmax: int, budget: int):
    """Curves over E through the lifted points, cheapest constructions first."""
    XE = X.base_change(E)
    s0 = constraints[0][1]
    seen = set()

    def emit(f):
        if f is None or f in seen:
            return None
        seen.add(f)
        return f

    if len(constraints) <= 3:
        for L in lines_through_point(XE, s0):
            g = emit(match_parameters(L.as_map(), constraints))
            if g is not None:
                yield g
        if dmax >= 2:
            base_lines = [L.to(E) for L in lines_on(X)]
            for C in conics_on(XE, through=[s0], limit=16, lines=base_lines):
                g = emit(match_parameters(C, constraints))
                if g is not None:
                    yield g
        if dmax >= 3 and XE.nvars == 4:
            try:
                tc = tangent_cubic(XE, s0)
            except FqGeomError:
                tc = None
            if tc is not None and tc.map is not None:
                g = emit(match_parameters(tc.map, constraints))
                if g is not None:
                    yield g
    for d in range(1, dmax + 1):
        res = search_curves(XE, d, constraints, budget=budget, strategies=("linear",))
        for f in res.curves:
            g = emit(f)
            if g is not None:
                yield g


def _parse_table(X: Hypersurface, table):
    F = X.field
    rows = []
    for t, x in (table.items() if isinstance(table, dict) else table):
        t = t if isinstance(t, ProjPoint) else ProjPoint(F, tuple(t))
        x = x if isinstance(x, ProjPoint) else ProjPoint(F, tuple(x))
        if t.field != F or x.field != F:
            raise ValidationError("table entries must be rational over the base field")
        rows.append((t, x))
    if not rows:
        raise ValidationError("empty table")
    if len({t for t, _ in rows}) != len(rows):
        raise ValidationError("a parameter appears twice in the table")
    return rows


def descend_set_map(X: Hypersurface, table, dmax: int = 6, budget: int = 1 << 16) -> DescentCertificate:
    """Extend a set map P^1(GF(q)) -> X(GF(q)) to a nonconstant morphism.

    Each image point is lifted to a root of a conjugate secant over GF(q^2);
    a curve through the lifts is searched over GF(q^2) and descended.
    """
    F = X.field
    if X.degree != 3:
        raise ValidationError("set-map descent needs a cubic")
    rows = _parse_table(X, table)
    E = F.extension(2)
    secants, lift, constraints = [], [], []
    for t, x in rows:
        if not X.contains(x):
            raise PointNotOnHypersurface(f"{x} is not on the hypersurface")
        if not is_smooth_point(X, x):
            raise ValidationError(f"{x} is a singular point")
        try:
            sec = find_conjugate_secant(X, x)
        except NotFound as exc:
            raise SecantNotFound(f"no conjugate secant through {x}") from exc
        s = sec.s.to(E)
        secants.append({"point": x.to_json(), "line": sec.line.to_json(),
                        "s": s.to_json(), "s_prime": sec.s_prime.to(E).to_json()})
        lift.append({"t": t.to_json(), "s": s.to_json()})
        constraints.append((t.to(E), s))
    attempts = 0
    partial = {"field": F.literal, "secants": secants, "lift": lift, "dmax": dmax,
               "budget": budget, "attempts": 0}
    for phi2 in _candidate_lifts(X, E, constraints, dmax, budget):
        attempts += 1
        try:
            phi = descend(X, phi2)
        except FqGeomError:
            continue
        if phi.degree == 0 or not verify_member(X, phi):
            continue
        if not all(phi.at(t) == x for t, x in rows):
            continue
        cert = DescentCertificate(
            X.to_text(), F.literal, [[t.to_json(), x.to_json()] for t, x in rows],
            secants, lift, phi2, phi)
        cert.transcript = replay_certificate(X, cert)
        return cert
    partial["attempts"] = attempts
    raise ExtensionSearchExhausted(
        f"no curve of degree <= {dmax} over {E} through the lifted points descends", partial)


def replay_certificate(X: Hypersurface | None, cert) -> list:
    """Recheck every claim of a certificate; raises ReplayMismatch on failure."""
    if isinstance(cert, dict):
        cert = DescentCertificate.from_json(cert)
    if X is None:
        X = Hypersurface.from_text(cert.equation)
    F = X.field
    E = F.extension(2)
    log = []

    def check(name, ok):
        log.append({"check": name, "ok": bool(ok)})
        if not ok:
            raise ReplayMismatch(f"replay failed: {name}")

    check("hypersurface matches", Hypersurface.from_text(cert.equation) == X)
    phi2 = cert.phi2.to_field(E) if cert.phi2.field != E else cert.phi2
    check("lift curve on X", verify_member(X, phi2))
    check("descended curve on X", verify_member(X, cert.phi))
    check("descended curve over base", cert.phi.field == F)
    for (tj, xj), sec, lf in zip(cert.table, cert.secants, cert.lift):
        t = ProjPoint.from_json(F, tj)
        x = ProjPoint.from_json(F, xj)
        s = ProjPoint.from_json(E, sec["s"])
        s2 = ProjPoint.from_json(E, sec["s_prime"])
        check(f"{x} on X", X.contains(x))
        check(f"conjugate pair at {x}", s2 == s.frobenius(F) and s != s2)
        check(f"third point of the secant at {x}", third_point(X, s, s2) == x.to(E))
        check(f"lift at {t}", phi2.at(t.to(E)) == s)
        check(f"value at {t}", cert.phi.at(t) == x)
    check("descent reproduces the curve", descend(X, phi2) == cert.phi)
    return log


# ---------------------------------------------------------------------------
# unirational parametrization of cubic surfaces


@dataclass
class UnirationalMap:
    """(s:t) x (s':t') -> S, bihomogeneous coordinates in variables x0, x1 | x2, x3."""

    field: GF
    coords: tuple
    bidegree: tuple
    certificate: dict

    def at(self, a: ProjPoint, b: ProjPoint) -> ProjPoint:
        E = common_field(self.field, a.field, b.field)
        x = a.to(E).coords + b.to(E).coords
        vals = tuple(f.eval_codes(x, E) if f.terms else 0 for f in self.coords)
        if not any(vals):
            raise ValidationError(f"({a}, {b}) is a base point of the map")
        return ProjPoint(E, vals)

    def to_json(self):
        return {"field": self.field.literal, "bidegree": list(self.bidegree),
                "coords": [str(f) for f in self.coords], "certificate": self.certificate}


def _lift_forms(f: RationalCurveMap, first: bool):
    """Binary forms as forms in four variables, on (x0, x1) or (x2, x3)."""
    out = []
    for g in f.coords:
        terms = {}
        for (a, b), c in g.terms.items():
            terms[(a, b, 0, 0) if first else (0, 0, a, b)] = c
        out.append(HomogeneousPoly(f.field, 4, f.degree, terms, check=False))
    return out


def _bidegree(P: HomogeneousPoly):
    e = next(iter(P.terms))
    return e[0] + e[1], e[2] + e[3]


def _clear_content(E: GF, forms):
    """Divide out binary factors in either variable pair shared by all coordinates."""
    for pair in ((0, 1), (2, 3)):
        other = (2, 3) if pair == (0, 1) else (0, 1)
        groups = []
        for P in forms:
            by = {}
            for e, c in P.terms.items():
                by.setdefault((e[other[0]], e[other[1]]), {})[(e[pair[0]], e[pair[1]])] = c
            groups.append(by)
        parts = []
        for by in groups:
            for k, terms in by.items():
                deg = sum(next(iter(terms)))
                parts.append(HomogeneousPoly(E, 2, deg, terms, check=False))
        if not parts:
            continue
        g = binary_gcd_many(parts)
        if g.degree == 0:
            continue
        new = []
        for P, by in zip(forms, groups):
            terms = {}
            for k, t in by.items():
                deg = sum(next(iter(t)))
                q = binary_divide(HomogeneousPoly(E, 2, deg, t, check=False), g)
                for (a, b), c in q.terms.items():
                    e = [0, 0, 0, 0]
                    e[pair[0]], e[pair[1]] = a, b
                    e[other[0]], e[other[1]] = k
                    terms[tuple(e)] = c
            new.append(HomogeneousPoly(E, 4, P.degree - g.degree, terms, check=False)
                       if terms else None)
        deg = next(f.degree for f in new if f is not None)
        forms = [f if f is not None else HomogeneousPoly(E, 4, deg) for f in new]
    return forms


def _jacobian_certificate(E0: GF, coords, max_samples: int):
    """First sample (t, t') with a rank-2 affine Jacobian, or None."""
    d1 = [P.partial(1) if P.terms else P for P in coords]
    d3 = [P.partial(3) if P.terms else P for P in coords]
    tried = 0
    G = E0
    while tried < max_samples:
        grid = np.array([(1, a, 1, b) for a in range(G.q) for b in range(G.q)], dtype=np.int64)
        grid = grid[: max_samples - tried]
        for start in range(0, len(grid), 512):
            pts = grid[start:start + 512]
            vals = [P.eval_many(pts, G) if P.terms else np.zeros(len(pts), dtype=np.int64)
                    for P in coords]
            der1 = [P.eval_many(pts, G) if P.terms else np.zeros(len(pts), dtype=np.int64)
                    for P in d1]
            der3 = [P.eval_many(pts, G) if P.terms else np.zeros(len(pts), dtype=np.int64)
                    for P in d3]
            for r in range(len(pts)):
                tried += 1
                v = [int(x[r]) for x in vals]
                j = next((i for i, x in enumerate(v) if x), None)
                if j is None:
                    continue
                M = []
                for i in range(len(v)):
                    if i == j:
                        continue
                    M.append([G.sub(G.mul(int(der[i][r]), v[j]), G.mul(v[i], int(der[j][r])))
                              for der in (der1, der3)])
                if linalg.rank(G, M) == 2:
                    return {"field": G.literal, "t": format_elem(G, int(pts[r][1])),
                            "t_prime": format_elem(G, int(pts[r][3])), "chart": j,
                            "jacobian_rank": 2, "samples": tried}
        if G.q * G.q >= max_samples:
            break
        G = G.extension(2)
    return None


def unirational_map_surface(S: Hypersurface, p: ProjPoint, p2: ProjPoint,
                            max_samples: int = 10_000) -> UnirationalMap:
    """Third point of f(t) and g(t'), f and g the tangent cubics at p and p2."""
    if S.nvars != 4 or S.degree != 3:
        raise ValidationError("expected a cubic surface")
    tc1 = tangent_cubic(S, p)
    tc2 = tangent_cubic(S, p2)
    for tc in (tc1, tc2):
        if tc.map is None:
            raise TangentSectionDegenerate(f"tangent section at {tc.point} is {tc.status}")
    E = common_field(S.field, tc1.map.field, tc2.map.field)
    f = _lift_forms(tc1.map.to_field(E), True)
    g = _lift_forms(tc2.map.to_field(E), False)
    dP = [P.to_field(E) for P in S.partials()]

    def contract(at, other):
        acc = None
        for P, o in zip(dP, other):
            if P.terms and o.terms:
                val = P.substitute(at)
                if val.terms:
                    term = val * o
                    acc = term if acc is None else acc + term
        return acc

    c21 = contract(f, g)
    c12 = contract(g, f)
    if c21 is None and c12 is None:
        raise TangentSectionDegenerate("the two tangent cubics span a pencil on the surface")
    deg = 12
    coords = []
    for fi, gi in zip(f, g):
        acc = HomogeneousPoly(E, 4, deg)
        if c12 is not None and fi.terms:
            acc = acc + c12 * fi
        if c21 is not None and gi.terms:
            acc = acc - c21 * gi
        coords.append(acc)
    if not any(P.terms for P in coords):
        raise TangentSectionDegenerate("composite map vanishes identically")
    coords = _clear_content(E, coords)
    if not S.equation.to_field(E).substitute(coords).is_zero():
        raise NotAMember("composite map leaves the surface")
    cert = _jacobian_certificate(E, coords, max_samples)
    if cert is None:
        raise DominanceCertificateNotFound(f"no rank-2 Jacobian in {max_samples} samples")
    nz = next(P for P in coords if P.terms)
    return UnirationalMap(E, tuple(coords), _bidegree(nz), cert)
