from __future__ import annotations

import itertools

import pytest

from fqgeom.errors import NotAGenerator, NotInIdeal, ParameterOutOfRange, UnknownClaim
from fqgeom.gallery import (
    CLAIM_IDS,
    DEFAULT_CLAIMS,
    bothmer_affine,
    bothmer_hypersurface,
    build,
    fermat_cubic,
    in_frobenius_ideal,
    mystery_form,
    norm_hypersurface,
    norm_hypersurface_twisted,
    swinnerton_dyer_surface,
    verify_all,
    verify_claim,
)
from fqgeom.gf import GF
from fqgeom.mpoly import parse_poly
from fqgeom.projvar import count_points, enumerate_points
from fqgeom.store import Store
from oracles import NaiveGF, count_prime, eval_terms_naive, eval_terms_prime, projective_points_naive


# -- constructions ------------------------------------------------------------------

def test_sd_equation_by_oracle():
    X = swinnerton_dyer_surface().hypersurface
    assert count_prime(X.equation.terms, 4, 2) == 1
    assert eval_terms_prime(X.equation.terms, (0, 0, 0, 1), 2) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bothmer_form_agrees_with_affine_polynomial(n):
    X = bothmer_hypersurface(n).hypersurface
    assert X.degree == n + 1 and X.nvars == n + 2
    for x in itertools.product(range(2), repeat=n + 2):
        assert eval_terms_prime(X.equation.terms, x, 2) == bothmer_affine(n, x)
    assert [p.coords for p in enumerate_points(X)] == [(1,) * (n + 2)]
    assert count_prime(X.equation.terms, n + 2, 2) == 1


def test_bothmer_range():
    with pytest.raises(ParameterOutOfRange):
        bothmer_hypersurface(5)


@pytest.mark.parametrize("q,m", [(2, 3), (3, 3), (2, 4), (5, 2)])
def test_norm_form_has_one_point(q, m):
    X = norm_hypersurface(q, m).hypersurface
    assert X.degree == m and X.nvars == m + 1
    assert all(e[0] == 0 for e in X.equation.terms)  # a cone over (1:0:...:0)
    F = X.field
    if F.k == 1:
        assert count_prime(X.equation.terms, m + 1, q) == 1
    assert [p.coords for p in enumerate_points(X)] == [(1,) + (0,) * m]


def test_norm_form_requires_a_generator():
    F = GF.get(2)
    E = F.extension(4)
    sub = F.embed(1, E)  # 1 lies in the prime field
    with pytest.raises(NotAGenerator):
        norm_hypersurface(2, 4, sub)
    with pytest.raises(ParameterOutOfRange):
        norm_hypersurface(2, 1)


def test_frobenius_ideal_membership():
    F = GF.get(2)
    assert in_frobenius_ideal(parse_poly("x0^2*x1+x0*x1^2", F, 4))
    assert in_frobenius_ideal(parse_poly("x0^2*x1*x2+x0*x1^2*x2", F, 4))
    assert not in_frobenius_ideal(parse_poly("x0^3", F, 4))
    assert not in_frobenius_ideal(parse_poly("x0*x1", F, 4))


def test_twisted_norm_form_keeps_the_rational_points():
    X0 = norm_hypersurface(2, 3).hypersurface
    X = norm_hypersurface_twisted(2, 3, "x0^2*x1+x0*x1^2").hypersurface
    assert X.equation != X0.equation
    assert count_prime(X.equation.terms, 4, 2) == count_prime(X0.equation.terms, 4, 2) == 1
    with pytest.raises(NotInIdeal):
        norm_hypersurface_twisted(2, 3, "x0^3")
    with pytest.raises(ParameterOutOfRange):
        norm_hypersurface_twisted(3, 3, "x0^3")


@pytest.mark.parametrize("n,m", [(1, 3), (2, 3), (2, 2)])
def test_mystery_form_vanishes_on_rational_points(n, m):
    X = mystery_form(n, m).hypersurface
    E = GF.get(2, n)
    G = NaiveGF(2, n, E.modulus)
    P = X.equation.to_field(E)
    assert all(eval_terms_naive(G, P.terms, x) == 0 for x in projective_points_naive(G, m + 1))


def test_mystery_form_is_not_identically_zero():
    assert not mystery_form(1, 3).hypersurface.equation.is_zero()


def test_fermat_cubic_entries():
    assert count_points(fermat_cubic(2, 2).hypersurface) == 7
    with pytest.raises(ParameterOutOfRange):
        fermat_cubic(2, 9)


def test_build_ids():
    assert build("sd").hypersurface == swinnerton_dyer_surface().hypersurface
    assert build("fermat(3,5)").hypersurface.nvars == 5
    assert build("bothmer(3)").identifier == "bothmer(3)"
    assert build("mystery(1,3)").hypersurface.degree == 3
    for bad in ("nothing", "bothmer(x)", "norm(2)"):
        with pytest.raises(UnknownClaim):
            build(bad)


# -- claims ---------------------------------------------------------------------------

def test_default_claims_cover_every_registered_checker():
    stems = {c.split("(")[0] for c in DEFAULT_CLAIMS}
    assert stems == {c.split("(")[0] for c in CLAIM_IDS}


@pytest.mark.parametrize("claim", [c for c in DEFAULT_CLAIMS if c != "SD_no_low_degree_curves"])
def test_default_claims_pass(claim):
    rec = verify_claim(claim)
    assert rec.outcome == "Pass", rec.to_json()


@pytest.mark.slow
def test_sd_curve_claim_passes():
    assert verify_claim("SD_no_low_degree_curves").passed


def test_unknown_claims_are_rejected():
    for bad in ("NOPE", "BOTHMER_unique", "NORM_unique(2)", "CW_bound", "BOTHMER_unique(a)"):
        with pytest.raises(UnknownClaim):
            verify_claim(bad)


def test_infeasible_claims_report_a_reason():
    rec = verify_claim("BOTHMER_unique(9)")
    assert rec.outcome.startswith("Infeasible(ParameterOutOfRange")
    rec = verify_claim("H_VANISH_EXERCISE(2,2,3)")
    assert rec.outcome.startswith("Infeasible(")


def test_claim_records_land_in_the_store(tmp_path):
    store = Store(tmp_path)
    recs = verify_all(store, ["SD_unique_point", "MYSTERY_vanishes(1,3)"])
    assert [r.passed for r in recs] == [True, True]
    stored = list(store.records("claim"))
    assert [r["payload"]["claim"] for r in stored] == ["SD_unique_point", "MYSTERY_vanishes(1,3)"]
    assert "runtime" not in stored[0]["payload"]
