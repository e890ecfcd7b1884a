from __future__ import annotations

import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_form
from fqgeom import kernels
from fqgeom.gf import GF
from fqgeom.mpoly import iter_projective_chunks

IMPLS = kernels.backends()


def test_backend_selection_reports_a_known_backend():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in IMPLS


def test_pure_python_switch():
    env = dict(os.environ, FQGEOM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import fqgeom; print(fqgeom.BACKEND)"],
                         capture_output=True, text=True, env=env, timeout=60)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif("cython" not in IMPLS, reason="compiled extension not built")
@settings(max_examples=40)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4, 5, 8, 9, 25, 49, 256]))
def test_backends_agree(seed, q):
    rng = random.Random(seed)
    F = GF.of_size(q)
    nv = rng.randint(2, 4)
    P = random_form(F, rng, nv, rng.randint(1, 4))
    exps = np.array(list(P.terms), dtype=np.int64)
    coeffs = np.array(list(P.terms.values()), dtype=np.int64)
    pts = next(iter(iter_projective_chunks(F, nv)))[:2000]
    results = [m.eval_terms(exps, coeffs, pts, F.p, F.k, F.log_arr, F.exp_arr, F.addtab)
               for m in IMPLS.values()]
    assert all(np.array_equal(results[0], r) for r in results[1:])
    a = np.array([rng.randrange(q) for _ in range(200)], dtype=np.int64)
    b = np.array([rng.randrange(q) for _ in range(200)], dtype=np.int64)
    sums = [m.vadd(a, b, F.p, F.k, F.addtab) for m in IMPLS.values()]
    prods = [m.vmul(a, b, F.log_arr, F.exp_arr) for m in IMPLS.values()]
    assert np.array_equal(sums[0], sums[-1]) and np.array_equal(prods[0], prods[-1])
    assert [int(x) for x in sums[0]] == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert [int(x) for x in prods[0]] == [F.mul(int(x), int(y)) for x, y in zip(a, b)]


def test_benchmark_script_runs():
    root = os.path.dirname(os.path.dirname(__file__))
    out = subprocess.run([sys.executable, os.path.join(root, "benchmarks", "bench_kernels.py"),
                          "--repeat", "1"], capture_output=True, text=True, timeout=600)
    assert out.returncode == 0, out.stderr
    assert "speedup" in out.stdout
