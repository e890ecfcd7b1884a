from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fermat, random_smooth_cubic_surface
from fqgeom.chord import (
    DescentCertificate,
    descend,
    descend_set_map,
    replay_certificate,
    third_point,
    third_point_symbolic,
    unirational_map_surface,
    weil_restrict_p1,
)
from fqgeom import linalg
from fqgeom.curvespace import conics_on, tangent_cubic, verify_member
from fqgeom.errors import (
    DegeneratePencil,
    EqualPoints,
    EvenCharacteristic,
    ExtensionSearchExhausted,
    LineContainedInX,
    NotAMember,
    PointNotOnHypersurface,
    ReplayMismatch,
    SquareParameter,
    TangentSectionDegenerate,
    ValidationError,
)
from fqgeom.gf import GF, parse_field_literal
from fqgeom.incidence import lines_on
from fqgeom.mpoly import parse_poly
from fqgeom.points import ProjPoint, format_elem, parse_elem
from fqgeom.projvar import Hypersurface, enumerate_points
from fqgeom.rcmap import RationalCurveMap
from oracles import NaiveGF, count_prime, eval_terms_naive, projective_points_naive


def random_pairs(X, rng, count):
    pts = enumerate_points(X)
    out = []
    while len(out) < count:
        a, b = rng.sample(pts, 2)
        try:
            third_point(X, a, b)
        except LineContainedInX:
            continue
        out.append((a, b))
    return out


def surface_with_lines(F, rng, m=2, minimum=2):
    while True:
        X = random_smooth_cubic_surface(F, rng)
        lines = lines_on(X, m)
        if len(lines) >= minimum:
            return X, lines


# -- pointwise third point ------------------------------------------------------------

def test_third_point_on_plane_cubic():
    F = GF.get(5)
    X = Hypersurface(parse_poly("x1^2*x2+4*x0^3+x0*x2^2", F))  # y^2 z = x^3 - x z^2
    r = third_point(X, ProjPoint(F, (0, 0, 1)), ProjPoint(F, (1, 0, 1)))
    assert r == ProjPoint(F, (4, 0, 1))


def test_third_point_errors():
    X = fermat(4)
    L = lines_on(X)[0]
    a, b = L.rational_points()[:2]
    with pytest.raises(LineContainedInX):
        third_point(X, a, b)
    with pytest.raises(EqualPoints):
        third_point(X, a, a)
    with pytest.raises(PointNotOnHypersurface):
        third_point(X, a, ProjPoint(X.field, (1, 0, 0, 0)))


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.sampled_from([5, 7, 9]))
def test_third_point_lies_on_x_and_the_chord(seed, q):
    rng = random.Random(seed)
    X = random_smooth_cubic_surface(GF.of_size(q), rng)
    for a, b in random_pairs(X, rng, 10):
        r = third_point(X, a, b)
        assert X.contains(r)
        # r, a, b are collinear: the 3 x 4 matrix has rank 2
        assert linalg.rank(X.field, [list(a.coords), list(b.coords), list(r.coords)]) == 2
        assert third_point(X, b, a) == r
        if r not in (a, b):
            assert third_point(X, a, r) == b


def test_third_point_matches_root_oracle():
    """Residual root of the restricted cubic, found by exhaustive search."""
    rng = random.Random(11)
    X = random_smooth_cubic_surface(GF.get(7), rng)
    F = X.field
    for a, b in random_pairs(X, rng, 40):
        roots = []
        for s, t in [(1, 0)] + [(x, 1) for x in range(7)]:
            pt = tuple((s * u + t * v) % 7 for u, v in zip(a.coords, b.coords))
            if X.contains(ProjPoint(F, pt)):
                roots.append(ProjPoint(F, pt))
        r = third_point(X, a, b)
        assert r in roots
        if len(roots) == 3:
            assert set(roots) - {a, b} == {r}


# -- symbolic third point -----------------------------------------------------------------

def test_symbolic_agrees_with_pointwise_on_constants():
    rng = random.Random(3)
    X = random_smooth_cubic_surface(GF.get(7), rng)
    for a, b in random_pairs(X, rng, 10):
        P, Q = RationalCurveMap.constant(a), RationalCurveMap.constant(b)
        R = third_point_symbolic(X, P, Q)
        assert R.degree == 0 and R.at((1, 0)) == third_point(X, a, b)


def test_symbolic_output_is_pointwise_third_point():
    rng = random.Random(5)
    X, lines = surface_with_lines(GF.of_size(9), rng)
    E = GF.of_size(81)
    P, Q = lines[0].as_map().to_field(E), lines[1].as_map().to_field(E)
    R = third_point_symbolic(X, P, Q)
    assert verify_member(X, R)
    for t in [(1, 0)] + [(x, 1) for x in range(0, 81, 7)]:
        a, b = P.at(t), Q.at(t)
        if a == b:
            continue
        try:
            expected = third_point(X, a, b)
        except LineContainedInX:
            continue
        assert R.at(t) == expected


def test_same_line_pencil_is_degenerate():
    X = fermat(4)
    L = lines_on(X)[0].as_map()
    with pytest.raises(DegeneratePencil):
        third_point_symbolic(X, L, L.reparametrize(0, 1, 1, 0))


def test_symbolic_requires_members():
    X = fermat(5)
    F = X.field
    bad = RationalCurveMap.constant(ProjPoint(F, (1, 0, 0, 0)))
    with pytest.raises(NotAMember):
        third_point_symbolic(X, bad, bad)


# -- descent -----------------------------------------------------------------------------

def _check_descent(X, phi2):
    F = X.field
    phi = descend(X, phi2)
    assert phi.field == F and verify_member(X, phi)
    conj = phi2.frobenius(F)
    E = phi2.field
    for t in [ProjPoint(F, (1, 0))] + [ProjPoint(F, (x, 1)) for x in range(F.q)]:
        a, b = phi2.at(t), conj.at(t)
        if a == b:
            continue
        try:
            expected = third_point(X, a, b)
        except LineContainedInX:
            continue
        assert phi.at(t).to(E) == expected
    return phi


def test_descent_of_conjugate_lines():
    rng = random.Random(8)
    F = GF.of_size(9)
    while True:
        X, lines = surface_with_lines(F, rng)
        lines = [L for L in lines if L.frobenius(F) != L]
        if lines:
            break
    for L in lines[:6]:
        _check_descent(X, L.as_map())


def test_descent_of_conics():
    rng = random.Random(12)
    F = GF.of_size(9)
    while True:
        X, lines = surface_with_lines(F, rng)
        moving = [L for L in lines if L.frobenius(F) != L]
        if moving:
            break
    XE = X.base_change(F.extension(2))
    conics = [C for C in conics_on(XE, limit=12, lines=moving) if C.frobenius(F) != C]
    assert conics
    for C in conics[:4]:
        _check_descent(X, C)


def test_descent_of_rational_curve_uses_tangents():
    X = fermat(5)
    L = lines_on(X)[0].as_map()
    # a line on X has constant tangent: the tangent construction degenerates or stays on X
    try:
        phi = descend(X, L)
        assert verify_member(X, phi)
    except DegeneratePencil:
        pass
    rng = random.Random(4)
    S = random_smooth_cubic_surface(GF.of_size(9), rng)
    C = next(iter(conics_on(S, limit=4)))
    phi = descend(S, C)
    assert phi.field == S.field and verify_member(S, phi)


def test_descent_rejects_wrong_fields():
    X = fermat(5)
    L = lines_on(X)[0].as_map().to_field(GF.get(5, 3))
    with pytest.raises(ValidationError):
        descend(X, L)


# -- Weil restriction -------------------------------------------------------------------

@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_weil_model_counts_and_round_trip(q):
    W = weil_restrict_p1(q)
    pts = W.model_points()
    assert len(pts) == q * q + 1
    F = W.base
    if F.k == 1:
        assert count_prime(W.equation.terms, 4, q) == q * q + 1
    else:
        G = NaiveGF(F.p, F.k, F.modulus)
        assert sum(1 for x in projective_points_naive(G, 4)
                   if eval_terms_naive(G, W.equation.terms, x) == 0) == q * q + 1
    E = W.ext
    line = [ProjPoint(E, (1, 0))] + [ProjPoint(E, (x, 1)) for x in range(E.q)]
    images = [W.to_model(x) for x in line]
    assert set(images) == set(pts)
    assert all(W.from_model(W.to_model(x)) == x for x in line)
    assert all(W.to_model(W.from_model(u)) == u for u in pts)


def test_weil_model_examples():
    W = weil_restrict_p1(3, 2)
    E = W.ext
    assert W.to_model(ProjPoint(E, (1, 0))).coords == (1, 0, 0, 0)
    with pytest.raises(EvenCharacteristic):
        weil_restrict_p1(4)
    with pytest.raises(SquareParameter):
        weil_restrict_p1(5, 4)
    with pytest.raises(ValidationError):
        W.from_model(ProjPoint(W.base, (1, 1, 1, 1)))


@pytest.mark.parametrize("q", [3, 5, 7])
def test_weil_model_frobenius_is_sign_flip(q):
    W = weil_restrict_p1(q)
    E, F = W.ext, W.base
    for x in [ProjPoint(E, (a, 1)) for a in range(E.q)]:
        u = W.to_model(x)
        v = W.to_model(x.frobenius(F))
        assert v == ProjPoint(F, (u[0], u[1], u[2], F.neg(u[3])))


# -- set maps -------------------------------------------------------------------------

def test_single_point_set_map_and_replay():
    rng = random.Random(4)
    S = random_smooth_cubic_surface(GF.of_size(9), rng)
    x0 = enumerate_points(S)[0]
    cert = descend_set_map(S, [(ProjPoint(S.field, (1, 0)), x0)])
    assert cert.phi.degree >= 1 and cert.phi.at(ProjPoint(S.field, (1, 0))) == x0
    assert verify_member(S, cert.phi)
    data = json.loads(cert.dumps())
    assert DescentCertificate.from_json(data).phi == cert.phi
    log = replay_certificate(None, data)
    assert all(c["ok"] for c in log)
    F = S.field
    data["phi"]["coeffs"][0][0] = format_elem(F, F.add(parse_elem(F, data["phi"]["coeffs"][0][0]), 1))
    with pytest.raises((ReplayMismatch, ValidationError)):
        replay_certificate(S, data)


def test_sd_full_table_is_exhausted(sd):
    p = ProjPoint(sd.field, (0, 0, 0, 1))
    table = [(ProjPoint(sd.field, t), p) for t in [(1, 0), (0, 1), (1, 1)]]
    with pytest.raises(ExtensionSearchExhausted) as exc:
        descend_set_map(sd, table, dmax=4)
    assert exc.value.certificate["attempts"] >= 0


def test_set_map_input_checks():
    X = fermat(5)
    p = enumerate_points(X)[0]
    with pytest.raises(ValidationError):
        descend_set_map(X, [((1, 0), p.coords), ((1, 0), p.coords)])
    with pytest.raises(PointNotOnHypersurface):
        descend_set_map(X, [((1, 0), (1, 0, 0, 0))])


# -- unirational parametrization ---------------------------------------------------------

def _eval_terms(G, terms, x):
    acc = 0
    for e, c in terms.items():
        v = c
        for xi, a in zip(x, e):
            v = G.mul(v, G.pow(xi, a))
        acc = G.add(acc, v)
    return acc


def _derivative_terms(G, terms, var):
    out = {}
    for e, c in terms.items():
        if e[var] % G.p:
            f = list(e)
            f[var] -= 1
            out[tuple(f)] = G.mul(c, G.from_int(e[var]))
    return out


def test_unirational_map_on_fermat_gf7():
    S = fermat(7)
    E = GF.of_size(49)
    SE = S.base_change(E)
    good = [p for p in enumerate_points(SE) if tangent_cubic(SE, p).map is not None]
    U = unirational_map_surface(S, good[0], good[1])
    assert U.bidegree == (6, 6)
    assert S.equation.to_field(U.field).substitute(list(U.coords)).is_zero()
    cert = U.certificate
    assert cert["jacobian_rank"] == 2 and cert["samples"] <= 10_000
    # recompute the affine-chart Jacobian at the certified sample with hand-rolled derivatives
    G = parse_field_literal(cert["field"])
    x = (1, parse_elem(G, cert["t"]), 1, parse_elem(G, cert["t_prime"]))
    coords = [P.to_field(G).terms for P in U.coords]
    vals = [_eval_terms(G, T, x) for T in coords]
    j = cert["chart"]
    assert vals[j] != 0
    rows = []
    for i in range(4):
        if i != j:
            rows.append([G.sub(G.mul(_eval_terms(G, _derivative_terms(G, coords[i], v), x), vals[j]),
                               G.mul(vals[i], _eval_terms(G, _derivative_terms(G, coords[j], v), x)))
                         for v in (1, 3)])
    assert linalg.rank(G, rows) == 2
    # a dominant map has an image far larger than any curve of its degree could hold
    image = set()
    for a in range(0, 49, 2):
        for b in range(0, 49, 2):
            try:
                image.add(U.at(ProjPoint(E, (1, a)), ProjPoint(E, (1, b))))
            except ValidationError:
                pass
    assert all(SE.contains(p) for p in image)
    assert len(image) > 200


def test_eckardt_point_has_degenerate_tangent_section():
    S = fermat(4)
    p, p2 = enumerate_points(S)[:2]
    with pytest.raises(TangentSectionDegenerate):
        unirational_map_surface(S, p, p2)
