from __future__ import annotations

import os
import random
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from fqgeom.gf import GF  # noqa: E402
from fqgeom.mpoly import HomogeneousPoly, monomials  # noqa: E402
from fqgeom.projvar import Hypersurface, is_probe_smooth  # noqa: E402


settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")


def random_form(F: GF, rng: random.Random, nvars: int, degree: int) -> HomogeneousPoly:
    while True:
        P = HomogeneousPoly(F, nvars, degree, {e: rng.randrange(F.q) for e in monomials(nvars, degree)})
        if not P.is_zero():
            return P


def random_smooth_cubic_surface(F: GF, rng: random.Random, kmax: int = 2) -> Hypersurface:
    while True:
        S = Hypersurface(random_form(F, rng, 4, 3))
        if is_probe_smooth(S, kmax):
            return S


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(scope="session")
def sd():
    from fqgeom.gallery import swinnerton_dyer_surface

    return swinnerton_dyer_surface().hypersurface


def fermat(q: int, nvars: int = 4) -> Hypersurface:
    from fqgeom.gallery import fermat_cubic

    return fermat_cubic(nvars - 2, q).hypersurface


# -- acceptance reporting ------------------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, status, secs = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}  ({secs:.2f} s)")
