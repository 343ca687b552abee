"""Time the compiled and pure-Python enumeration kernels on the same inputs.

Run with ``python3 benchmarks/bench_kernels.py``.  Results from both backends
are compared before timing so a speedup never hides a wrong answer.
"""
import argparse
import time

from toridegen import kernels
from toridegen.fan import face_fan
from toridegen.lattice import integer_inverse
from toridegen.mirror import _split_basis
from toridegen.polytope import build_delta_star


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    p = build_delta_star(4)
    n = p.lattice_dim
    lo = [min(v[k] for v in p.vertices) for k in range(n)]
    hi = [max(v[k] for v in p.vertices) for k in range(n)]
    normals = [list(f.normal) for f in p.facets]
    offsets = [f.offset for f in p.facets]
    yield "box_points Delta*_4", lambda b: kernels.box_points(lo, hi, normals, offsets, backend=b)
    # third dilate: same facets, offsets and box scaled by 3
    lo3, hi3, off3 = [3 * a for a in lo], [3 * a for a in hi], [3 * o for o in offsets]
    yield "box_points 3*Delta*_4", lambda b: kernels.box_points(lo3, hi3, normals, off3, backend=b)

    yield "contingency_tables d=4 m=6", lambda b: kernels.contingency_tables(4, 6, backend=b)

    f = face_fan(build_delta_star(3))
    free, basis = _split_basis(f)
    adj, det = integer_inverse([f.rays[i] for i in basis])
    fv = [f.rays[i] for i in free]
    ones = [1] * len(free)

    def rel(b):
        return kernels.nonneg_relations(fv, ones, adj, det, [1] * len(basis), 18, backend=b)

    yield "nonneg_relations Sigma_3 bound 18", rel


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.backends())
    if "cython" not in names:
        print("compiled kernels not built; timing the Python backend only")
    print(f"{'kernel':36s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases():
        outputs = {n: fn(n) for n in names}
        first = outputs[names[0]]
        if any(o != first for o in outputs.values()):
            raise SystemExit(f"backends disagree on {label}")
        times = {n: _time(lambda: fn(n), args.repeat) for n in names}
        row = f"{label:36s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
