"""Time the compiled and pure-Python column kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Both kernels must produce identical columns; the script exits 1 otherwise.
"""

import argparse
import sys
import time

from webcat import _kernel_py
from webcat.evaluation import _layers, space_for
from webcat.relations import generate_suite
from webcat.web_terms import crossing_expand, multi_merge, multi_split, then

try:
    from webcat import _kernel as compiled
except ImportError:
    compiled = None


def workloads():
    yield "crossing_expand(3,3) n=3", crossing_expand(3, 3), 3
    yield "explode/contract 1^4 n=3", then(multi_merge([1] * 4), multi_split([1] * 4)), 3
    braid = [i for i in generate_suite("glweb", 3, 2) if i.name == "Braid"][-1]
    yield f"{braid.label()} n=3", braid.lhs, 3


def time_kernel(kernel, basis, layer_lists, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = [kernel.push_columns(basis, layers) for layers in layer_lists]
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if compiled is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` with Cython available")
        return 1
    print(f"{'workload':45} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for name, m, n in workloads():
        basis = space_for(m.dom, n, m.flavor).basis()
        layer_lists = [_layers(t, n) for t in m.terms]
        t_py, r_py = time_kernel(_kernel_py, basis, layer_lists, args.repeat)
        t_cy, r_cy = time_kernel(compiled, basis, layer_lists, args.repeat)
        if r_py != r_cy:
            print(f"{name}: kernels disagree")
            return 1
        print(f"{name:45} {t_py:9.3f} {t_cy:9.3f} {t_py / t_cy:7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
