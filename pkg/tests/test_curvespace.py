from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fermat, random_form, random_smooth_cubic_surface
from fqgeom.curvespace import (
    SplittingType,
    conics_on,
    curves_through_point,
    freeness_by_h0,
    h0_twist,
    hom_equations,
    interpolate_to_Pn,
    is_free,
    is_very_free,
    match_parameters,
    pullback_splitting,
    search_curves,
    tangent_cubic,
    tangent_plane,
    verify_member,
)
from fqgeom.errors import (
    AmbientMismatch,
    DegreeTooSmall,
    DuplicateSupport,
    NotAMember,
    PointNotOnSurface,
    ValidationError,
)
from fqgeom.gf import GF
from fqgeom.incidence import Line, lines_on, lines_through_point
from fqgeom.mpoly import HomogeneousPoly
from fqgeom.points import ProjPoint
from fqgeom.projvar import Hypersurface, enumerate_points
from fqgeom.rcmap import RationalCurveMap


def random_map(F, rng, nvars, d):
    while True:
        forms = [random_form(F, rng, 2, d) for _ in range(nvars)]
        try:
            f = RationalCurveMap.from_forms(forms, field=F)
        except ValidationError:
            continue
        if f.degree == d:
            return f


def p1_points(F):
    return [ProjPoint(F, (1, 0))] + [ProjPoint(F, (a, 1)) for a in range(F.q)]


# -- membership and Hom equations ---------------------------------------------------

def test_membership_examples(sd):
    X = fermat(4)
    assert all(verify_member(X, L.as_map()) for L in lines_on(X))
    F = sd.field
    f = RationalCurveMap.from_forms([HomogeneousPoly(F, 2, 1, {(1, 0): 1}),
                                     HomogeneousPoly(F, 2, 1, {(0, 1): 1}),
                                     HomogeneousPoly(F, 2, 1), HomogeneousPoly(F, 2, 1)], field=F)
    assert not verify_member(sd, f)
    with pytest.raises(AmbientMismatch):
        verify_member(sd, RationalCurveMap.constant(ProjPoint(F, (1, 0, 0))))


@pytest.mark.parametrize("nvars,d,eqs,unknowns", [(4, 1, 4, 8), (5, 2, 7, 15), (4, 3, 10, 16)])
def test_hom_equation_shape(nvars, d, eqs, unknowns):
    X = fermat(5, nvars)
    H = hom_equations(X, d)
    assert len(H.equations) == eqs and H.nvars == unknowns
    assert all(eq.degree == 3 for eq in H.equations if eq.terms)
    assert H.to_json()["equation_count"] == eqs


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_hom_equations_vanish_exactly_on_members(seed):
    rng = random.Random(seed)
    X = fermat(rng.choice([2, 4]))
    F = X.field
    H = hom_equations(X, 1)
    lines = lines_on(X)
    if lines and rng.random() < 0.5:
        f = lines[rng.randrange(len(lines))].as_map()
        f = f.reparametrize(*[1, rng.randrange(F.q), 0, 1])
    else:
        f = random_map(F, rng, 4, 1)
    vals = H.evaluate(H.coefficients_of(f))
    assert (not any(vals)) == verify_member(X, f)


def test_hom_equations_reject_degree_zero():
    with pytest.raises(ValidationError):
        hom_equations(fermat(2), 0)


def test_degeneracy_resultant_flags_constant_maps():
    X = fermat(5)
    H = hom_equations(X, 1)
    L = lines_on(X)[0].as_map()
    coeffs = H.coefficients_of(L)
    lam, mu = (1, 0, 0, 0), (0, 1, 0, 0)
    # for a genuine line the generic pencil has nonzero resultant somewhere
    values = {H.degeneracy_resultant(coeffs, (1, a, b, 0), (0, 1, c, 1))
              for a in range(5) for b in range(5) for c in range(5)}
    assert values != {0}
    # a map with proportional rows is degenerate for every choice
    p = enumerate_points(X)[0]
    const = [c for x in p.coords for c in (x, x)]
    assert H.degeneracy_resultant(const, lam, mu) == 0


# -- splitting types -------------------------------------------------------------------

def test_lines_on_cubic_surfaces_split_as_two_and_minus_one():
    for q in (4, 5):
        X = fermat(q)
        for L in lines_on(X)[:5]:
            s = pullback_splitting(X, L.as_map())
            assert s.degrees == (2, -1) and not s.free
            assert freeness_by_h0(X, L.as_map()) == (False, False)


def test_conics_on_cubic_surfaces_are_free_but_not_very_free():
    X = fermat(5)
    for C in conics_on(X, limit=6):
        s = pullback_splitting(X, C)
        assert s.degrees == (2, 0)
        assert is_free(X, C) and not is_very_free(X, C)
        assert freeness_by_h0(X, C) == (True, False)


def test_line_on_cubic_threefold():
    X = fermat(4, 5)
    L = Line.through(ProjPoint(X.field, (1, 1, 0, 0, 0)), ProjPoint(X.field, (0, 0, 1, 1, 0)))
    f = L.as_map()
    assert verify_member(X, f)
    s = pullback_splitting(X, f)
    assert s.total == 2 and len(s.degrees) == 3


def _splitting_cases():
    rng = random.Random(17)
    cases = []
    for q in (5, 7):
        X = random_smooth_cubic_surface(GF.get(q), rng)
        cases += [(X, L.as_map()) for L in lines_on(X)]
        cases += [(X, C) for C in conics_on(X, limit=4)]
        for p in enumerate_points(X)[:6]:
            tc = tangent_cubic(X, p)
            if tc.map is not None:
                cases.append((X, tc.map))
    return cases


@pytest.mark.parametrize("case", range(12))
def test_syzygy_and_cohomology_routes_agree(case):
    cases = _splitting_cases()
    if case >= len(cases):
        pytest.skip("fewer curves than slots")
    X, f = cases[case]
    s = pullback_splitting(X, f)
    assert s.total == (X.nvars - X.degree) * f.degree
    pre = None
    for m in (-2, -1, 0, 1):
        assert h0_twist(X, f, m, pre) == s.h0(m)
    assert freeness_by_h0(X, f) == (s.free, s.very_free)


def test_splitting_requires_membership():
    X = fermat(5)
    f = random_map(X.field, random.Random(1), 4, 1)
    with pytest.raises(NotAMember):
        pullback_splitting(X, f)


def test_splitting_type_helpers():
    s = SplittingType((2, 0))
    assert s.total == 2 and s.free and not s.very_free
    assert s.h0(-1) == 2 and s.h0(-2) == 1


# -- tangent cubics ---------------------------------------------------------------------

def _lines_through(X, p):
    """Lines of the surface through p defined over extensions of degree at most 3."""
    return (len(lines_through_point(X, p, 2)) + len(lines_through_point(X, p, 3))
            - len(lines_through_point(X, p, 1)))


def test_tangent_status_matches_lines_through_the_point():
    rng = random.Random(1)
    X = random_smooth_cubic_surface(GF.get(5), rng)
    expected = {0: {"IrreducibleCubic"}, 1: {"LinePlusConic", "NonReduced"},
                2: {"ThreeLines", "NonReduced"}, 3: {"ThreeLines", "NonReduced"}}
    for p in enumerate_points(X):
        assert tangent_cubic(X, p).status in expected[_lines_through(X, p)]


def test_eckardt_points_have_three_line_tangent_sections():
    X = fermat(4)
    for p in enumerate_points(X):
        tc = tangent_cubic(X, p)
        assert tc.status == "ThreeLines" and tc.map is None


def test_tangent_cubic_parametrizes_the_tangent_section():
    rng = random.Random(3)
    X = random_smooth_cubic_surface(GF.get(7), rng)
    for p in enumerate_points(X):
        tc = tangent_cubic(X, p)
        if tc.map is None:
            continue
        f = tc.map
        assert f.degree == 3 and verify_member(X, f)
        T = tangent_plane(X, p)
        image = {f.at(t) for t in p1_points(X.field.extension(2))}
        assert all(T.contains(x) for x in image)
        # p is the node of the section; its branches are defined over GF(q^2) at worst
        assert p.to(f.field.extension(2)) in image
        assert pullback_splitting(X, f).total == 3


def test_tangent_cubic_errors():
    X = fermat(5)
    with pytest.raises(PointNotOnSurface):
        tangent_cubic(X, ProjPoint(X.field, (1, 0, 0, 0)))
    with pytest.raises(ValidationError):
        tangent_cubic(fermat(5, 5), ProjPoint(X.field, (1, 4, 0, 0, 0)))


# -- parameter matching -------------------------------------------------------------------

def test_match_parameters_hits_three_constraints():
    X = fermat(5)
    F = X.field
    L = lines_on(X)[0]
    pts = L.rational_points()
    ts = [ProjPoint(F, (0, 1)), ProjPoint(F, (1, 1)), ProjPoint(F, (1, 0))]
    g = match_parameters(L.as_map(), list(zip(ts, pts[:3])))
    assert g is not None and [g.at(t) for t in ts] == pts[:3]
    off = next(x for x in enumerate_points(X) if not L.contains_point(x))
    assert match_parameters(L.as_map(), [(ts[0], off)]) is None


# -- curve search --------------------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 4])
def test_linear_search_finds_every_parametrized_line(q):
    """Each rational line has |PGL2(GF(q))| = q^3 - q parametrizations."""
    X = fermat(q)
    res = search_curves(X, 1, strategies=("linear",))
    assert res.marker == "Exhausted"
    assert len(res.curves) == (q ** 3 - q) * len(lines_on(X))
    assert all(verify_member(X, f) for f in res.curves)


def test_sd_has_no_low_degree_curves(sd):
    for d in (1, 2, 3):
        res = search_curves(sd, d)
        assert res.curves == [] and res.marker == "Exhausted"


def test_constrained_search_respects_constraints():
    X = fermat(4)
    F = X.field
    x = enumerate_points(X)[0]
    t = ProjPoint(F, (1, 0))
    res = search_curves(X, 1, [(t, x)])
    assert res.curves and all(f.at(t) == x for f in res.curves)
    assert len({f for f in res.curves}) == len(res.curves)
    assert curves_through_point(X, x, t, dmax=2)


def test_budget_marker():
    X = fermat(5)
    res = search_curves(X, 2, budget=1000, strategies=("linear",))
    assert res.marker == "BudgetReached" and res.examined == 1000
    assert all(verify_member(X, f) for f in res.curves)


# -- interpolation -------------------------------------------------------------------------

def test_interpolation_through_rational_points():
    F = GF.get(7)
    rng = np.random.default_rng(0)
    ts = [ProjPoint(F, (a, 1)) for a in range(4)]
    xs = [ProjPoint(F, tuple(int(v) for v in rng.integers(1, 7, size=3))) for _ in range(4)]
    f = interpolate_to_Pn(list(zip(ts, xs)), 3)
    assert f.field == F and all(f.at(t) == x for t, x in zip(ts, xs))


def test_interpolation_through_closed_points():
    F = GF.get(5)
    E = F.extension(2)
    tau = ProjPoint(E, (E.primitive, 1))
    x = ProjPoint(E, (1, E.primitive, E.pow(E.primitive, 3)))
    r = ProjPoint(F, (1, 0))
    y = ProjPoint(F, (0, 1, 2))
    f = interpolate_to_Pn([(tau, x), (r, y)], 2, base=F)
    assert f.field == F
    assert f.at(tau) == x and f.at(tau.frobenius(F)) == x.frobenius(F)
    assert f.at(r) == y


def test_interpolation_errors():
    F = GF.get(5)
    E = F.extension(2)
    tau = ProjPoint(E, (E.primitive, 1))
    x = ProjPoint(E, (1, 1, 1))
    with pytest.raises(DuplicateSupport):
        interpolate_to_Pn([(tau, x), (tau.frobenius(F), x.frobenius(F))], 4, base=F)
    with pytest.raises(DegreeTooSmall):
        interpolate_to_Pn([(ProjPoint(F, (a, 1)), ProjPoint(F, (1, a, 0))) for a in range(4)], 2)
    with pytest.raises(AmbientMismatch):
        interpolate_to_Pn([(ProjPoint(F, (0, 1)), ProjPoint(F, (1, 0, 0))),
                           (ProjPoint(F, (1, 0)), ProjPoint(F, (1, 0)))], 2)


def test_linear_search_matches_line_census_on_random_cubics():
    rng = random.Random(2)
    for _ in range(4):
        X = Hypersurface(random_form(GF.get(3), rng, 4, 3))
        res = search_curves(X, 1, strategies=("linear",))
        assert len(res.curves) == 24 * len(lines_on(X, 1, "pairs"))
