"""Time the compiled kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Each workload runs on every available backend; results must agree exactly.
"""
import argparse
import time

from qtl.fqoracle import field_for, kernel, oracle

WORKLOADS = [
    ("profile_tally n=5 a=2 GF(4)", lambda impl, F4, F9: kernel.profile_tally(5, 2, F4, impl)),
    ("profile_tally n=4 a=2 GF(9)", lambda impl, F4, F9: kernel.profile_tally(4, 2, F9, impl)),
    ("t_fiber_tally (2,2,1) w=(1,1,0) GF(4)",
     lambda impl, F4, F9: kernel.t_fiber_tally((2, 2, 1), (1, 1, 0), F4, impl)),
    ("t_fiber_tally (1,1,1,1) w=(0,1,1,0) GF(9)",
     lambda impl, F4, F9: kernel.t_fiber_tally((1, 1, 1, 1), (0, 1, 1, 0), F9, impl)),
    ("flag_tally (2,2,1) normal pair GF(4)", None),
]


def _flag_workload(impl, F4, F9):
    shape = (2, 2, 1)
    W, im, ker, t = oracle.normal_pair(5, 2, 1)
    return kernel.flag_tally(shape, W, im, ker, t, F4, impl)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    F4, F9 = field_for(2), field_for(3)
    impls = kernel.backends()
    if "compiled" not in impls:
        print("compiled kernel not built; timing the Python fallback only")
    print(f"{'workload':42s}" + "".join(f"{name:>12s}" for name in impls) + "     speedup")
    for name, fn in WORKLOADS:
        fn = fn or _flag_workload
        times, results = {}, {}
        for key, impl in impls.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[key] = fn(impl, F4, F9)
                best = min(best, time.perf_counter() - t0)
            times[key] = best
        if len({repr(sorted(r.items())) if isinstance(r, dict) else repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {name}")
        speed = f"{times['python'] / times['compiled']:10.1f}x" if "compiled" in times else ""
        print(f"{name:42s}" + "".join(f"{times[k]:11.4f}s" for k in impls) + speed)


if __name__ == "__main__":
    main()
