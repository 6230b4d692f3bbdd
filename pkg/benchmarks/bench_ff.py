"""Compare the compiled and pure-Python GF(p) kernels.

Run with ``python3 benchmarks/bench_ff.py``. Each workload is timed under
both backends; the last column is the speedup of the compiled core.
"""
import argparse
import random
import timeit

from consys import ff
from consys.localanalyzer import analyze_local
from consys.polysynth import local_block


def _rand(rng, n, p):
    return [rng.randrange(p) for _ in range(n)] + [1]


def workloads(rng):
    p = 10007
    a, b, m = _rand(rng, 200, p), _rand(rng, 200, p), _rand(rng, 60, p)
    f2 = _rand(rng, 40, 2)
    F = list(local_block(3, 4, 3).coeffs)
    return {
        "mul deg 200, p=10007": lambda: ff.mul(a, b, p),
        "divmod deg 400 / 60": lambda: ff.divmod_(ff.mul(a, b, p), m, p),
        "powmod X^(p^3) mod deg 60": lambda: ff.powmod([0, 1], p**3, m, p),
        "gcd deg 200": lambda: ff.gcd(a, b, p),
        "factor deg 40 over GF(2)": lambda: ff.factor(f2, 2),
        "analyze block e=4 f=3 at 3": lambda: analyze_local(F, 3),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        from consys import _ffcore  # noqa: F401
    except ImportError:
        print("compiled core not built; only the python backend is available")
        return 1
    jobs = workloads(random.Random(1))
    original = ff.BACKEND
    print(f"{'workload':34} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    try:
        for name, fn in jobs.items():
            times = {}
            for backend in ("python", "cython"):
                ff.use_backend(backend)
                best = min(timeit.repeat(fn, repeat=args.repeat, number=args.number))
                times[backend] = 1000 * best / args.number
            ratio = times["python"] / times["cython"]
            print(f"{name:34} {times['python']:12.3f} {times['cython']:12.3f} {ratio:7.1f}x")
    finally:
        ff.use_backend(original)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
