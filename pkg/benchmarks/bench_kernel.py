"""Compare the pure-Python and compiled pivot kernels.

    python benchmarks/bench_kernel.py [--repeat N] [--quick]

Each workload is run under every available backend; the median of N runs
is reported along with the speedup of the compiled backend.  Results are
checked to be identical across backends before timing is reported.
"""

import argparse
import random
import statistics
import time

from lcplab import kernel
from lcplab.labgen import run_suite


def _tableau(rng, m, n, bound):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def pivot_sweep(seed, m, n, bound):
    """Pivot a random tableau on a sequence of nonzero entries."""
    rng = random.Random(seed)
    T = _tableau(rng, m, n, bound)
    d = 1
    for k in range(min(m, n - 1)):
        c = next((j for j in range(n - 1) if T[k][j] != 0), None)
        if c is None:
            continue
        d = kernel.pivot(T, k, c, d)
    return d, T


def det_batch(seed, size, count, bound):
    rng = random.Random(seed)
    return [kernel.bareiss_det(_tableau(rng, size, size, bound)) for _ in range(count)]


def suite_run(trials):
    rep = run_suite("T3.10", trials, n_max=4, seed=0)
    return rep.to_json()


def workloads(quick):
    scale = 1 if quick else 4
    return [
        ("pivot 24x48 small ints", lambda: pivot_sweep(1, 24, 48, 9), 5 * scale),
        ("pivot 12x24 big ints", lambda: pivot_sweep(2, 12, 24, 2 ** 40), 5 * scale),
        ("bareiss det 10x10 x50", lambda: det_batch(3, 10, 50, 9), 3 * scale),
        ("suite T3.10, 40 trials", lambda: suite_run(40), 1 * scale),
    ]


def _time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=None, help="override the per-workload repeat")
    ap.add_argument("--quick", action="store_true", help="fewer repetitions")
    args = ap.parse_args(argv)

    backends = kernel.available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is timed")
    original = kernel.backend()
    print(f"{'workload':28s}" + "".join(f"{b:>14s}" for b in backends) + "   speedup")
    try:
        for name, fn, repeat in workloads(args.quick):
            outputs, timings = {}, {}
            for b in backends:
                kernel.use_backend(b)
                outputs[b] = fn()
                timings[b] = _time(fn, args.repeat or repeat)
            if len({repr(o) for o in outputs.values()}) != 1:
                raise SystemExit(f"backends disagree on workload {name!r}")
            row = f"{name:28s}" + "".join(f"{timings[b] * 1e3:11.2f} ms" for b in backends)
            if "compiled" in timings:
                row += f"   {timings['python'] / timings['compiled']:6.2f}x"
            print(row)
    finally:
        kernel.use_backend(original)


if __name__ == "__main__":
    main()
