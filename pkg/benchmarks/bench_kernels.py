"""Time the numba kernels against the pure-numpy fallback on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from subsums import _kernels


def workloads(rng):
    w = rng.integers(1, 10**6, size=22).astype(np.int64)
    groups = [rng.integers(-10**6, 10**6, size=6).astype(np.int64) for _ in range(9)]
    flat = np.concatenate(groups)
    offsets = np.zeros(len(groups) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([g.size for g in groups])
    zw = np.concatenate([rng.integers(1, 400, size=16), -rng.integers(1, 400, size=16)]).astype(np.int64)
    keys = np.unique(rng.integers(0, 200_000, size=60_000)).astype(np.int64)
    shifts = rng.integers(1, 5_000, size=2_000).astype(np.int64)
    return {
        "subset_sums": (w, 1 << 40),
        "minkowski_sums": (flat, offsets, 1 << 40),
        "zero_sum_masks": (zw,),
        "spectre_scan": (keys, shifts),
    }


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    np_impl = _kernels.numpy_impl()
    nb_impl = _kernels.numba_impl() if _kernels.HAVE_NUMBA else None
    print(f"{'kernel':<16}{'numpy s':>12}{'numba s':>12}{'speedup':>10}  same")
    for name, inputs in workloads(np.random.default_rng(args.seed)).items():
        t_np, out_np = best_of(np_impl[name], inputs, args.repeat)
        if nb_impl is None:
            print(f"{name:<16}{t_np:>12.4f}{'n/a':>12}{'':>10}")
            continue
        nb_impl[name](*inputs)  # compile outside the timing
        t_nb, out_nb = best_of(nb_impl[name], inputs, args.repeat)
        print(f"{name:<16}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x  {_same(out_np, out_nb)}")


if __name__ == "__main__":
    main()
