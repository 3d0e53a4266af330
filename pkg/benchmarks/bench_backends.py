#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

The backend is fixed at import time, so the parent process re-executes
itself once per backend (MULTITURAN_KERNEL=c / py) and prints a comparison
table. Workloads are seeded and deterministic.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import itertools
import os
import random
import subprocess
import sys
import time


def workloads():
    from multituran.constructions import ruzsa_szemeredi_construction, sts_lower_bound
    from multituran.graphs import _TURAN_MEMO, clique, path, star, turan_number_exact
    from multituran.hypergraphs import LinearHypergraph, contains_berge, to_copy_system
    from multituran.solver import max_packing, multicolor_turan_exact
    from multituran.systems import find_multicolor

    def unique_triangle_verification():
        report = ruzsa_szemeredi_construction(12)
        assert find_multicolor(report.system, clique(3)) is None

    def star_solver_sweep():
        for n in range(3, 10):
            assert multicolor_turan_exact(n, clique(3), star(3)).optimal

    def rainbow_path_solver():
        assert multicolor_turan_exact(7, path(3), path(4)).optimal

    def ordinary_turan_mantel():
        _TURAN_MEMO.clear()
        assert turan_number_exact(7, clique(3))[0] == 12

    def triangle_packing_k8():
        assert max_packing(clique(8), clique(3)).value == 8

    def berge_sweep():
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randint(6, 9)
            candidates = list(itertools.combinations(range(n), 3))
            rng.shuffle(candidates)
            chosen = []
            for cand in candidates:
                if all(len(set(cand) & set(o)) <= 1 for o in chosen):
                    chosen.append(cand)
                if len(chosen) >= 8:
                    break
            h = LinearHypergraph(n, 3, chosen)
            system = to_copy_system(h)
            for target in (clique(3), clique(4)):
                assert (contains_berge(h, target) is None) == (
                    find_multicolor(system, target) is None
                )

    def steiner_certificate():
        assert sts_lower_bound(13, 8).verified in (True, False)

    return [
        ("rs-unique-triangles(k=12)", unique_triangle_verification),
        ("exact-star-sweep(n<=9)", star_solver_sweep),
        ("exact-path-target(n=7)", rainbow_path_solver),
        ("ordinary-turan(n=7,K3)", ordinary_turan_mantel),
        ("triangle-packing(K8)", triangle_packing_k8),
        ("berge-sweep(60 hypergraphs)", berge_sweep),
        ("steiner-rainbow-check(n=13)", steiner_certificate),
    ]


def run_child(repeat):
    import multituran

    sys.stderr.write(f"backend: {multituran.backend_name()}\n")
    for name, fn in workloads():
        fn()  # warm caches (plans, memo parity across backends)
        best = min(_timed(fn) for _ in range(repeat))
        print(f"{name}\t{best:.4f}")


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def run_parent(repeat):
    results = {}
    for backend in ("c", "py"):
        env = dict(os.environ, MULTITURAN_KERNEL=backend)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child", "--repeat", str(repeat)],
            capture_output=True,
            text=True,
            env=env,
        )
        if proc.returncode != 0:
            if backend == "c":
                print("compiled kernel unavailable, skipping comparison")
                print(proc.stderr)
                continue
            raise SystemExit(proc.stderr)
        for line in proc.stdout.splitlines():
            name, seconds = line.split("\t")
            results.setdefault(name, {})[backend] = float(seconds)

    width = max(len(name) for name in results)
    print(f"{'workload'.ljust(width)}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for name, timings in results.items():
        c = timings.get("c")
        py = timings.get("py")
        if c is None:
            print(f"{name.ljust(width)}  {'-':>10}  {py:>10.4f}  {'-':>8}")
        else:
            print(
                f"{name.ljust(width)}  {c:>10.4f}  {py:>10.4f}  {py / c:>7.1f}x"
            )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--child", action="store_true")
    args = parser.parse_args()
    if args.child:
        run_child(args.repeat)
    else:
        run_parent(args.repeat)


if __name__ == "__main__":
    main()
