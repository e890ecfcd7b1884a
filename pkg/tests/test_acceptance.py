"""The fifteen acceptance criteria, one test each.

Every test records PASS or FAIL with its runtime; the terminal summary prints
one line per criterion.
"""

from __future__ import annotations

import functools
import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE, fermat, random_form, random_smooth_cubic_surface
from fqgeom import linalg
from fqgeom.chord import descend, third_point, unirational_map_surface, weil_restrict_p1
from fqgeom.curvespace import (
    conics_on,
    interpolate_to_Pn,
    pullback_splitting,
    search_curves,
    tangent_cubic,
    verify_member,
)
from fqgeom.errors import InseparableProjection, LineContainedInX
from fqgeom.gallery import bothmer_affine, bothmer_hypersurface, swinnerton_dyer_surface
from fqgeom.gf import GF, parse_field_literal
from fqgeom.incidence import (
    all_planes,
    classify_plane_section,
    find_conjugate_secant,
    grassmannian_size,
    lines_on,
)
from fqgeom.points import ProjPoint, parse_elem
from fqgeom.projvar import (
    Hypersurface,
    count_points,
    count_windows,
    enumerate_points,
    is_probe_smooth,
    is_smooth_point,
    projective_count,
    singular_locus_probe,
)
from oracles import count_prime, eval_terms_prime


def criterion(n: int, title: str, budget: float):
    """Record the outcome of criterion n and enforce its time budget."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
                secs = time.perf_counter() - t0
                assert secs < budget, f"took {secs:.1f} s, budget {budget} s"
            except BaseException:
                ACCEPTANCE[n] = (title, "FAIL", time.perf_counter() - t0)
                raise
            ACCEPTANCE[n] = (title, "PASS", secs)

        return run

    return wrap


def p1_points(F):
    return [ProjPoint(F, (1, 0))] + [ProjPoint(F, (a, 1)) for a in range(F.q)]


def random_valid_pairs(X, rng, count):
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


@criterion(1, "SD surface has exactly one GF(2)-point", 1.0)
def test_criterion_01_sd_point_count():
    X = swinnerton_dyer_surface().hypersurface
    pts = enumerate_points(X)
    assert [p.coords for p in pts] == [(0, 0, 0, 1)]
    assert count_prime(X.equation.terms, 4, 2) == 1


@criterion(2, "SD line census: 0 over GF(2), 27 over GF(8)", 10.0)
def test_criterion_02_sd_lines():
    X = swinnerton_dyer_surface().hypersurface
    assert grassmannian_size(8, 4) == 4745
    assert lines_on(X) == []
    lines = lines_on(X, 3, "grassmannian")
    assert len(lines) == 27
    assert set(lines) == set(lines_on(X, 3, "section"))


@criterion(3, "SD plane sections avoiding the point are conjugate line triples", 5.0)
def test_criterion_03_sd_plane_sections():
    X = swinnerton_dyer_surface().hypersurface
    p = ProjPoint(X.field, (0, 0, 0, 1))
    planes = [H for H in all_planes(X.field) if not H.contains(p)]
    assert len(planes) == 8
    E = X.field.extension(3)
    census = lines_on(X, 3)
    for H in planes:
        sec = classify_plane_section(X, H)
        assert sec.kind == "ThreeLines" and sec.conjugate_triple
        # the three lines are census lines inside H, none defined over GF(2)
        inside = [L for L in census if H.contains(L.A) and H.contains(L.B)]
        assert len(inside) == 3
        assert all(L.frobenius(X.field) != L for L in inside)
        assert all(L.field == E for L in inside)


@criterion(4, "Fermat surface: 27 GF(4)-lines; every rational point on a line for q in {2,4,16}", 60.0)
def test_criterion_04_fermat_lines():
    assert len(lines_on(fermat(4))) == 27
    for q in (2, 4, 16):
        X = fermat(q)
        covered = {p for L in lines_on(X) for p in L.rational_points()}
        assert set(enumerate_points(X)) <= covered


@criterion(5, "Bothmer hypersurfaces n=2,3,4: unique point, h = H, probe clean", 120.0)
def test_criterion_05_bothmer():
    for n in (2, 3, 4):
        X = bothmer_hypersurface(n).hypersurface
        assert [p.coords for p in enumerate_points(X)] == [(1,) * (n + 2)]
        for x in itertools.product(range(2), repeat=n + 2):
            assert eval_terms_prime(X.equation.terms, x, 2) == bothmer_affine(n, x)
        rep = singular_locus_probe(X, 3 if n == 4 else 4)
        assert rep.verdict == "none-found"


@criterion(6, "Chevalley-Warning floor on 100 random cubic hypersurfaces", 120.0)
def test_criterion_06_chevalley_warning():
    rng = random.Random(6)
    violations = 0
    for i in range(100):
        n = (2, 3)[i % 2]
        q = (2, 3, 4, 5)[(i // 2) % 4]
        X = Hypersurface(random_form(GF.of_size(q), rng, n + 2, 3))
        N = count_points(X)
        if GF.of_size(q).k == 1:
            assert N == count_prime(X.equation.terms, n + 2, q)
        floor = projective_count(q, n - 2)
        violations += N < floor
        assert count_windows(X, N).cw_pass == (N >= floor)
    assert violations == 0


@criterion(7, "Point-count window on 20 random probe-smooth cubic surfaces", 120.0)
def test_criterion_07_weil_window():
    rng = random.Random(7)
    fields = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    for i in range(20):
        q = fields[i % len(fields)]
        X = random_smooth_cubic_surface(GF.of_size(q), rng)
        assert is_probe_smooth(X, 2)
        N = count_points(X)
        w = count_windows(X, N, smooth_assumed=True)
        # independent recomputation: |N - (q^2 + q + 1)| <= 27 q
        assert abs(N - (q * q + q + 1)) <= 27 * q
        assert w.dw_pass


@criterion(8, "Weil restriction quadric: q^2+1 points and exact round trip", 10.0)
def test_criterion_08_weil_restriction():
    for q in (3, 5, 7, 9):
        W = weil_restrict_p1(q)
        model = W.model_points()
        assert len(model) == q * q + 1
        line = p1_points(W.ext)
        images = [W.to_model(x) for x in line]
        assert len(set(images)) == len(line) and set(images) == set(model)
        assert all(W.from_model(u) == x for u, x in zip(images, line))
        assert all(W.to_model(W.from_model(u)) == u for u in model)
        u = W.equation
        assert all(u.eval_codes(x.coords) == 0 for x in images)


@criterion(9, "Third-point properties on 200 random pairs over GF(5), GF(7), GF(9)", 30.0)
def test_criterion_09_third_point():
    for q in (5, 7, 9):
        rng = random.Random(q)
        X = random_smooth_cubic_surface(GF.of_size(q), rng)
        F = X.field
        for a, b in random_valid_pairs(X, rng, 200):
            r = third_point(X, a, b)
            assert X.contains(r)
            assert linalg.rank(F, [list(a.coords), list(b.coords), list(r.coords)]) == 2
            assert third_point(X, b, a) == r
            if r != a:
                assert third_point(X, a, r) == b


@criterion(10, "Splitting types: lines (2,-1), degree sum rule, a free conic over GF(9)", 120.0)
def test_criterion_10_splitting():
    X = fermat(4)
    for L in lines_on(X):
        s = pullback_splitting(X, L.as_map())
        assert s.degrees == (2, -1)
    rng = random.Random(10)
    F = GF.of_size(9)
    free_found = False
    for _ in range(40):
        S = random_smooth_cubic_surface(F, rng)
        curves = [L.as_map() for L in lines_on(S)] + conics_on(S, limit=6)
        for f in curves:
            s = pullback_splitting(S, f)
            assert s.total == (S.nvars - S.degree) * f.degree
            if f.degree == 2 and s.free:
                free_found = True
        if free_found:
            break
    assert free_found


def _phi2_candidates(X, rng, want):
    F = X.field
    E = F.extension(2)
    moving = [L for L in lines_on(X, 2) if L.frobenius(F) != L]
    out = [L.as_map() for L in moving]
    if moving:
        out += [C for C in conics_on(X.base_change(E), lines=moving, limit=12) if C.frobenius(F) != C]
    extra = []
    for f in out:
        a, b, c = (rng.randrange(1, E.q) for _ in range(3))
        g = f.reparametrize(a, b, 0, c)
        if g.frobenius(F) != g:
            extra.append(g)
    return (out + extra)[:want]


@criterion(11, "Descent of 50 conjugate curves per field for q in {9,11,13}", 300.0)
def test_criterion_11_descent():
    for q in (9, 11, 13):
        rng = random.Random(100 + q)
        F = GF.of_size(q)
        checked = 0
        while checked < 50:
            X = random_smooth_cubic_surface(F, rng)
            for phi2 in _phi2_candidates(X, rng, 50 - checked):
                phi = descend(X, phi2)
                assert phi.field == F and verify_member(X, phi)
                conj = phi2.frobenius(F)
                for t in p1_points(F):
                    a, b = phi2.at(t), conj.at(t)
                    if a == b:
                        continue
                    try:
                        expected = third_point(X, a, b)
                    except LineContainedInX:
                        continue
                    assert phi.at(t).to(phi2.field) == expected
                checked += 1
        assert checked == 50


@criterion(12, "Conjugate secants through 200 smooth points per field, q in {8,9,11,13}", 300.0)
def test_criterion_12_conjugate_secants():
    for q in (8, 9, 11, 13):
        rng = random.Random(200 + q)
        F = GF.of_size(q)
        tested = 0
        while tested < 200:
            X = random_smooth_cubic_surface(F, rng)
            for p in enumerate_points(X):
                if tested == 200:
                    break
                if not is_smooth_point(X, p):
                    continue
                try:
                    sec = find_conjugate_secant(X, p)
                except InseparableProjection:
                    pytest.fail(f"inseparable projection at {p} over GF({q})")
                assert sec.s != sec.s_prime and sec.s.frobenius(F) == sec.s_prime
                assert is_smooth_point(X, sec.s) and is_smooth_point(X, sec.s_prime)
                assert third_point(X, sec.s, sec.s_prime) == p.to(sec.s.field)
                tested += 1


@criterion(13, "No rational curve of degree <= 4 on the SD surface", 600.0)
def test_criterion_13_sd_no_curves():
    X = swinnerton_dyer_surface().hypersurface
    for d in range(1, 5):
        res = search_curves(X, d, strategies=("linear",), budget=1 << 21)
        assert res.marker == "Exhausted" and res.curves == []
        assert res.examined == 2 ** (4 * (d + 1)) - 1


@criterion(14, "Every table on P^1(GF(q)) extends at degree q, q in {2,3}, n in {2,3}", 60.0)
def test_criterion_14_interpolation():
    for q, n in itertools.product((2, 3), (2, 3)):
        F = GF.get(q)
        rng = random.Random(q * 10 + n)
        targets = [ProjPoint(F, x) for x in itertools.product(range(q), repeat=n + 1) if any(x)]
        targets = sorted(set(targets))
        for _ in range(50):
            ts = p1_points(F)
            xs = [rng.choice(targets) for _ in ts]
            f = interpolate_to_Pn(list(zip(ts, xs)), q, base=F)
            assert f.field == F and f.degree <= q
            assert [f.at(t) for t in ts] == xs


@criterion(15, "Dominance certificate for the two-point map on the Fermat surface over GF(7)", 120.0)
def test_criterion_15_dominance():
    S = fermat(7)
    E = GF.of_size(49)
    SE = S.base_change(E)
    good = [p for p in enumerate_points(SE) if tangent_cubic(SE, p).map is not None]
    U = unirational_map_surface(S, good[0], good[1], max_samples=10_000)
    assert S.equation.to_field(U.field).substitute(list(U.coords)).is_zero()
    cert = U.certificate
    assert cert["jacobian_rank"] == 2 and cert["samples"] <= 10_000
    # re-derive the rank at the certified sample through the package's own partials
    G = parse_field_literal(cert["field"])
    x = (1, parse_elem(G, cert["t"]), 1, parse_elem(G, cert["t_prime"]))
    coords = [P.to_field(G) for P in U.coords]
    vals = [P.eval_codes(x, G) if P.terms else 0 for P in coords]
    j = cert["chart"]

    def d(P, v):
        D = P.partial(v) if P.terms else P
        return D.eval_codes(x, G) if D.terms else 0

    rows = [[G.sub(G.mul(d(coords[i], v), vals[j]), G.mul(vals[i], d(coords[j], v))) for v in (1, 3)]
            for i in range(4) if i != j]
    assert linalg.rank(G, rows) == 2
