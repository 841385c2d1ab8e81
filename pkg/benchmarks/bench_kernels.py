#!/usr/bin/env python3
"""Benchmark the compiled search kernels against the pure-Python fallback.

Runs each workload once per backend and prints a small table.  Workloads are
exhaustive nim searches: the hot loop the compiled extension exists for.

Usage: python benchmarks/bench_kernels.py [--heavy]
"""

import argparse
import time

from hullgames import _kernels
from hullgames.graphgames import symmetry_group
from hullgames.lattice import LatticeGraph, facet_masks
from hullgames.tensor import face_index_lists, starting_tensor, tensor_symmetry_perms

try:
    from hullgames import _speedups
except ImportError:
    _speedups = None


def mask_workload(dims, is_dnt):
    g = LatticeGraph(dims)
    args = (g.num_vertices, facet_masks(g), symmetry_group(g), is_dnt, 10**8)
    label = f"grid {'x'.join(map(str, dims))} {'avoid' if is_dnt else 'achieve'}"
    return label, "mask_nim_search", args


def tensor_workload(dims, is_dnt):
    t = starting_tensor(dims)
    args = (
        t.entries,
        face_index_lists(t.ndim),
        tensor_symmetry_perms(t.ndim),
        is_dnt,
        10**8,
    )
    label = f"tensor {'x'.join(map(str, dims))} {'avoid' if is_dnt else 'achieve'}"
    return label, "tensor_nim_search", args


def run(module, func, args):
    start = time.perf_counter()
    nim, states = getattr(module, func)(*args)
    return nim, states, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--heavy",
        action="store_true",
        help="include the 3x3x3 tensor search (minutes on the pure backend)",
    )
    opts = parser.parse_args()

    workloads = [
        mask_workload((3, 5), True),
        mask_workload((4, 4), False),
        mask_workload((4, 5), True),
        tensor_workload((4, 5), False),
        tensor_workload((5, 5), True),
    ]
    if opts.heavy:
        workloads.append(tensor_workload((3, 3, 3), False))

    if _speedups is None:
        print("compiled backend unavailable; timing the pure kernels only")

    header = f"{'workload':<28}{'nim':>4}{'states':>10}{'pure (s)':>10}{'compiled':>10}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, func, args in workloads:
        nim_p, states_p, sec_p = run(_kernels, func, args)
        if _speedups is not None:
            nim_c, states_c, sec_c = run(_speedups, func, args)
            assert (nim_p, states_p) == (nim_c, states_c), "backend disagreement"
            speedup = f"{sec_p / sec_c:8.1f}x" if sec_c > 0 else "     n/a"
            print(
                f"{label:<28}{nim_p:>4}{states_p:>10}{sec_p:>10.3f}{sec_c:>10.3f}{speedup:>9}"
            )
        else:
            print(f"{label:<28}{nim_p:>4}{states_p:>10}{sec_p:>10.3f}{'-':>10}{'-':>9}")


if __name__ == "__main__":
    main()
