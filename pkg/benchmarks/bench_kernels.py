"""Compare the numba kernels with their numpy fallbacks.

    python benchmarks/bench_kernels.py            # default sizes
    python benchmarks/bench_kernels.py -n 500 4000 --repeat 5

Each row reports the best wall time over ``--repeat`` runs (after one warm-up
call, so jit compilation is excluded) and checks that both backends return
identical results.
"""
import argparse
import timeit

import numpy as np

from subseq import _kernels
from subseq._backend import HAVE_NUMBA
from subseq.generators import GeneratorSpec, generate
from subseq.interpolant import audit_grid


def _inputs(n):
    u = generate(GeneratorSpec("subadditive-via-envelope", n, seed=n)).values
    raw = generate(GeneratorSpec("uniform-random", n, seed=n)).values
    return u, raw


def _cases(n, audit_step):
    u, raw = _inputs(n)
    cases = [
        ("envelope", (raw,), _kernels.envelope_jit, _kernels.envelope_np),
        ("subadditivity scan", (u, 1e-9), _kernels.first_subadditive_violation_jit,
         _kernels.first_subadditive_violation_np),
    ]
    if audit_step:
        m = min(n, 200)
        ua = u[:m]
        grid = audit_grid(m, audit_step)
        fgrid = _kernels.interp_np(ua, grid)
        cases.append((f"audit (N={m}, {grid.size} pts)", (ua, grid, fgrid, 1e-9),
                      _kernels.audit_grid_jit, _kernels.audit_grid_np))
    return cases


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def _best(func, args, repeat):
    func(*args)
    return min(timeit.repeat(lambda: func(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", "--sizes", type=int, nargs="+", default=[250, 1000, 2000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--audit-step", type=float, default=0.1,
                    help="grid step for the audit kernel (0 skips it)")
    args = ap.parse_args(argv)

    if not HAVE_NUMBA:
        print("numba is not available (or SUBSEQ_BACKEND=numpy); only numpy timings are shown")
    print(f"{'kernel':<32}{'N':>7}{'numpy [s]':>12}{'numba [s]':>12}{'speed-up':>10}  match")
    for n in args.sizes:
        for name, fargs, jit, npy in _cases(n, args.audit_step):
            t_np = _best(npy, fargs, args.repeat)
            if HAVE_NUMBA:
                t_jit = _best(jit, fargs, args.repeat)
                match = _same(jit(*fargs), npy(*fargs))
                print(f"{name:<32}{n:>7}{t_np:>12.4f}{t_jit:>12.4f}{t_np / t_jit:>9.1f}x  {match}")
            else:
                print(f"{name:<32}{n:>7}{t_np:>12.4f}{'-':>12}{'-':>10}  -")


if __name__ == "__main__":
    main()
