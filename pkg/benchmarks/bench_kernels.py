"""Compare the compiled and numpy kernel backends on point-count workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fqgeom import kernels
from fqgeom.gf import GF
from fqgeom.mpoly import iter_projective_chunks, parse_poly

CASES = [
    ("cubic surface over GF(11^2)", 11, 2, "x0^3+x1^3+x2^3+x3^3+x0*x1*x2", 4),
    ("cubic surface over GF(2^8)", 2, 8, "x0^3+x1^3+x2^3+x3^3+x1*x2*x3", 4),
    ("cubic threefold over GF(5^2)", 5, 2, "x0^3+x1^3+x2^3+x3^3+x4^3+x0*x1*x4", 5),
]


def _workload(F, P, nvars):
    exps = np.array(list(P.terms.keys()), dtype=np.int64)
    coeffs = np.array(list(P.terms.values()), dtype=np.int64)
    pts = np.concatenate(list(iter_projective_chunks(F, nvars)))
    return exps, coeffs, pts


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'case':32} {'points':>9} " + " ".join(f"{n:>10}" for n in impls) + "   speedup")
    for label, p, k, text, nvars in CASES:
        F = GF.get(p, k)
        P = parse_poly(text, F, nvars)
        exps, coeffs, pts = _workload(F, P, nvars)
        times, results = {}, {}
        for name, mod in impls.items():
            times[name], results[name] = _time(
                lambda m=mod: m.eval_terms(exps, coeffs, pts, F.p, F.k, F.log_arr, F.exp_arr,
                                           F.addtab), args.repeat)
        ref = results["python"]
        for name, res in results.items():
            if not np.array_equal(res, ref):
                raise SystemExit(f"backend {name} disagrees with numpy on {label}")
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        cols = " ".join(f"{times[n] * 1e3:8.1f}ms" for n in impls)
        print(f"{label:32} {len(pts):>9} {cols}   {speed:6.2f}x")


if __name__ == "__main__":
    main()
