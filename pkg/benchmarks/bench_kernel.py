"""Compare the compiled kernel with the pure-Python fallback.

Each backend runs in its own interpreter (the kernel is chosen at import), so
this script re-invokes itself with ``--worker`` and ``DAHALIMIT_PURE_PYTHON``
set or cleared.

    python benchmarks/bench_kernel.py [--repeat 5]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit


def _workloads():
    from dahalimit import kernel as K
    from dahalimit.suites import run_suite

    rng = random.Random(7)

    def rand_poly(terms, deg):
        return {K.pack(rng.randrange(deg), rng.randrange(deg)): rng.randrange(-9, 10) or 1
                for _ in range(terms)}

    f, g = rand_poly(60, 12), rand_poly(60, 12)
    big = [(rand_poly(8, 6), {i: rand_poly(10, 6) for i in range(40)}) for _ in range(30)]
    return {
        "pmul 60x60 terms": lambda: K.pmul(f, g),
        "ppow (1+q+t)^12": lambda: K.ppow({0: 1, K.pack(1, 0): 1, K.pack(0, 1): 1}, 12),
        "xlincomb 30 x 40": lambda: K.xlincomb(big),
        "suite spectra |nu|<=3": lambda: run_suite("spectra", max_size=3, max_n=3),
        "suite restriction n<=5": lambda: run_suite("restriction", max_n=5),
    }


def worker(repeat):
    from dahalimit import BACKEND

    out = {"backend": BACKEND, "timings": {}}
    for name, fn in _workloads().items():
        if name.startswith("suite"):
            # suites memoize E_nu and friends, so only the first (cold) run is meaningful
            out["timings"][name] = timeit.timeit(fn, number=1)
            continue
        fn()
        out["timings"][name] = min(timeit.repeat(fn, number=50, repeat=repeat)) / 50
    print(json.dumps(out))


def run_backend(pure, repeat):
    env = dict(os.environ)
    env["DAHALIMIT_PURE_PYTHON"] = "1" if pure else ""
    res = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeat)
        return
    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    if fast["backend"] != "compiled":
        print("note: compiled kernel not built; both columns use the Python fallback")
    print(f"{'workload':28s} {'compiled':>12s} {'python':>12s} {'speedup':>8s}")
    for name, t_fast in fast["timings"].items():
        t_slow = slow["timings"][name]
        print(f"{name:28s} {t_fast * 1e3:10.3f}ms {t_slow * 1e3:10.3f}ms {t_slow / t_fast:7.2f}x")


if __name__ == "__main__":
    main()
