"""Timed comparison of the compiled and pure-Python arithmetic kernels.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 16,32,64 --repeat 7

Reports the best wall time per kernel and size; exact integer results
are compared between the two implementations on every run, so this also
doubles as a stress parity check.
"""

import argparse
import random
import time

from hadpi import _kernel_py

try:
    from hadpi import _kernel
except ImportError:
    _kernel = None


def rand_flat(rng, count, digits):
    lim = 10**digits
    return [rng.randint(-lim, lim) for _ in range(count)]


def best_time(fn, args, repeat):
    out = None
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_one(name, py_fn, c_fn, args, repeat):
    t_py, out_py = best_time(py_fn, args, repeat)
    if c_fn is None:
        print(f"{name:<22} py {t_py * 1e3:8.2f} ms   (no compiled kernel)")
        return
    t_c, out_c = best_time(c_fn, args, repeat)
    assert out_py == out_c, f"{name}: backends disagree"
    print(
        f"{name:<22} py {t_py * 1e3:8.2f} ms   c {t_c * 1e3:8.2f} ms"
        f"   speedup {t_py / t_c:5.1f}x"
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="16,32,64", help="matrix sizes, comma separated")
    ap.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    ap.add_argument("--digits", type=int, default=8, help="coefficient magnitude")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(0)

    if _kernel is None:
        print("compiled kernel not built; timing the fallback only\n")

    for n in sizes:
        flat = [rand_flat(rng, n * n, args.digits) for _ in range(4)]
        bench_one(
            f"mat_mul n={n}",
            _kernel_py.mat_mul_nums,
            _kernel.mat_mul_nums if _kernel else None,
            (n, *flat),
            args.repeat,
        )
    for n1, n2 in [(8, 8), (8, 16), (16, 16)]:
        a = (rand_flat(rng, n1 * n1, args.digits), rand_flat(rng, n1 * n1, args.digits))
        b = (rand_flat(rng, n2 * n2, args.digits), rand_flat(rng, n2 * n2, args.digits))
        bench_one(
            f"kron {n1}x{n2}",
            _kernel_py.kron_nums,
            _kernel.kron_nums if _kernel else None,
            (n1, *a, n2, *b),
            args.repeat,
        )
    for n in sizes:
        aa = [a * 16 for a in rand_flat(rng, n * n, args.digits)]
        bb = rand_flat(rng, n * n, args.digits)
        bench_one(
            f"reduce n={n} k=4",
            lambda k, a, b: _kernel_py.reduce_nums(k, list(a), list(b)),
            (lambda k, a, b: _kernel.reduce_nums(k, list(a), list(b)))
            if _kernel
            else None,
            (4, aa, bb),
            args.repeat,
        )


if __name__ == "__main__":
    main()
