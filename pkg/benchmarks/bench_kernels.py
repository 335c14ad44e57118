"""Timing comparison of the compiled and pure-numpy product kernels.

Run directly:  python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from jordancone import _kernels
from jordancone.algebra import herm_complex, spin_factor, sym_real


def _time(fn, *args, repeat: int, number: int) -> float:
    best = min(timeit.repeat(lambda: fn(*args), repeat=repeat, number=number))
    return best / number


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args()

    if not _kernels.HAS_NUMBA:
        print("numba backend unavailable (JORDAN_CONE_NO_NUMBA set or import "
              "failed); only the numpy path can be timed")

    cases = [sym_real(4), sym_real(8), herm_complex(4), spin_factor(16)]
    kernels = [("product", 2), ("l_matrix", 1), ("u_matrix", 1), ("ub_matrix", 2)]

    header = f"{'algebra':<12}{'dim':>5}  {'kernel':<10}{'numpy':>12}{'numba':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    rng = np.random.default_rng(0)
    for alg in cases:
        C = alg.structure_tensor
        x = rng.standard_normal(alg.dim)
        y = rng.standard_normal(alg.dim)
        for name, arity in kernels:
            np_fn = getattr(_kernels, f"_{name}_np")
            args_np = (C, x, y)[: arity + 1]
            # warm both paths so jit compilation stays out of the timing
            np_fn(*args_np)
            t_np = _time(np_fn, *args_np, repeat=args.repeat, number=args.number)
            if _kernels.HAS_NUMBA:
                nb_fn = getattr(_kernels, f"_{name}_nb")
                nb_fn(*args_np)
                t_nb = _time(nb_fn, *args_np, repeat=args.repeat, number=args.number)
                ratio = f"{t_np / t_nb:8.2f}x"
                nb_col = f"{t_nb * 1e6:10.1f}us"
            else:
                nb_col, ratio = f"{'n/a':>12}", f"{'n/a':>9}"
            print(f"{alg.label():<12}{alg.dim:>5}  {name:<10}"
                  f"{t_np * 1e6:10.1f}us{nb_col}{ratio}")


if __name__ == "__main__":
    main()
