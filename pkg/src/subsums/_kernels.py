"""Integer kernels behind the exact set computations.

Every exact computation that dominates runtime is reduced to int64 arrays by
:mod:`subsums.lattice` and handed to one of these kernels:

* ``subset_sums``    -- sorted distinct subset sums of a weight vector
* ``minkowski_sums`` -- sorted distinct sums picking one value per group
* ``zero_sum_masks`` -- bitmasks of all subsets with zero sum
* ``spectre_scan``   -- for each shift ``s``, whether ``k+s`` or ``k-s`` lies
  in a key set for every key ``k`` (first failing key otherwise)

Each kernel exists as a numba ``@njit`` function and as a pure-numpy
function.  ``SUBSUMS_JIT=0`` in the environment (or a missing numba) selects
the numpy path; both paths return identical arrays.  Inputs whose estimated
work is below ``JIT_MIN_WORK`` also take the numpy path: loading or compiling
a jitted kernel costs far more than the numpy call at that size.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    if "NUMBA_THREADING_LAYER" not in os.environ:
        numba.config.THREADING_LAYER = "workqueue"
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("SUBSUMS_JIT", "1").strip().lower() not in ("0", "false", "no", "off")

JIT_MIN_WORK = 1 << 16

__all__ = ["USE_NUMBA", "JIT_MIN_WORK", "subset_sums", "minkowski_sums", "zero_sum_masks", "spectre_scan", "numpy_impl", "numba_impl", "set_threads"]


# ---------------------------------------------------------------------------
# numpy reference path


def _subset_sums_np(weights: np.ndarray, cap: int):
    cur = np.zeros(1, dtype=np.int64)
    for w in weights:
        if w == 0:
            continue
        cur = np.union1d(cur, cur + w)
        if cur.size > cap:
            return cur, False
    return cur, True


def _minkowski_np(values: np.ndarray, offsets: np.ndarray, cap: int):
    cur = np.zeros(1, dtype=np.int64)
    for g in range(offsets.size - 1):
        choices = values[offsets[g] : offsets[g + 1]]
        cur = np.unique((cur[:, None] + choices[None, :]).ravel())
        if cur.size > cap:
            return cur, False
    return cur, True


def _all_sums_np(weights: np.ndarray) -> np.ndarray:
    # sums[mask] for every mask over ``weights`` (bit i <-> weights[i])
    sums = np.zeros(1, dtype=np.int64)
    for w in weights:
        sums = np.concatenate([sums, sums + w])
    return sums


def _zero_sum_masks_np(weights: np.ndarray) -> np.ndarray:
    n = weights.size
    h = n // 2
    left = _all_sums_np(weights[:h])
    right = _all_sums_np(weights[h:])
    order = np.argsort(right, kind="stable")
    rs = right[order]
    lo = np.searchsorted(rs, -left, side="left")
    hi = np.searchsorted(rs, -left, side="right")
    counts = hi - lo
    lmask = np.repeat(np.arange(left.size, dtype=np.int64), counts)
    starts = np.repeat(lo, counts)
    offs = np.arange(counts.sum(), dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    rmask = order[starts + offs].astype(np.int64)
    return np.sort(lmask | (rmask << h))


def _spectre_scan_np(keys: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    out = np.full(shifts.size, -1, dtype=np.int64)
    n = keys.size
    for t in range(shifts.size):
        s = abs(int(shifts[t]))
        plus = keys + s
        minus = keys - s
        ip = np.minimum(np.searchsorted(keys, plus), n - 1)
        im = np.minimum(np.searchsorted(keys, minus), n - 1)
        ok = (keys[ip] == plus) | (keys[im] == minus)
        if not ok.all():
            out[t] = int(np.argmin(ok))
    return out


# ---------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:
    from numba import njit, prange

    @njit(cache=True)
    def _merge_unique(a, b, out):
        # a and b sorted ascending, both duplicate-free; returns used length
        i = j = m = 0
        na, nb = a.size, b.size
        while i < na or j < nb:
            if j >= nb or (i < na and a[i] < b[j]):
                v = a[i]
                i += 1
            elif i >= na or b[j] < a[i]:
                v = b[j]
                j += 1
            else:
                v = a[i]
                i += 1
                j += 1
            out[m] = v
            m += 1
        return m

    @njit(cache=True)
    def _subset_sums_nb(weights, cap):
        cur = np.zeros(1, dtype=np.int64)
        for t in range(weights.size):
            w = weights[t]
            if w == 0:
                continue
            out = np.empty(cur.size * 2, dtype=np.int64)
            m = _merge_unique(cur, cur + w, out)
            cur = out[:m].copy()
            if cur.size > cap:
                return cur, False
        return cur, True

    @njit(cache=True)
    def _minkowski_nb(values, offsets, cap):
        cur = np.zeros(1, dtype=np.int64)
        for g in range(offsets.size - 1):
            choices = values[offsets[g] : offsets[g + 1]]
            if choices.size == 0:
                return np.zeros(0, dtype=np.int64), True
            # cur + c is sorted for each choice, so merge instead of sorting
            acc = cur + choices[0]
            for t in range(1, choices.size):
                out = np.empty(acc.size + cur.size, dtype=np.int64)
                m = _merge_unique(acc, cur + choices[t], out)
                acc = out[:m]
            cur = acc.copy()
            if cur.size > cap:
                return cur, False
        return cur, True

    @njit(cache=True)
    def _all_sums_nb(weights):
        sums = np.zeros(np.int64(1) << weights.size, dtype=np.int64)
        size = 1
        for w in weights:
            for m in range(size):
                sums[size + m] = sums[m] + w
            size *= 2
        return sums

    @njit(cache=True)
    def _zero_sum_masks_nb(weights):
        # meet in the middle; walking right masks in order with a stable
        # left order emits the masks already sorted
        h = weights.size // 2
        left = _all_sums_nb(weights[:h])
        right = _all_sums_nb(weights[h:])
        order = np.argsort(left, kind="mergesort")
        ls = left[order]
        lo = np.searchsorted(ls, -right, side="left")
        hi = np.searchsorted(ls, -right, side="right")
        out = np.empty((hi - lo).sum(), dtype=np.int64)
        c = 0
        for r in range(right.size):
            for j in range(lo[r], hi[r]):
                out[c] = order[j] | (np.int64(r) << h)
                c += 1
        return out

    @njit(cache=True)
    def _scan_one(keys, s):
        n = keys.size
        ip = 0
        im = 0
        for t in range(n):
            k = keys[t]
            while ip < n and keys[ip] < k + s:
                ip += 1
            if ip < n and keys[ip] == k + s:
                continue
            while im < n and keys[im] < k - s:
                im += 1
            if im < n and keys[im] == k - s:
                continue
            return t
        return -1

    @njit(cache=True, parallel=True)
    def _spectre_scan_nb(keys, shifts):
        out = np.empty(shifts.size, dtype=np.int64)
        for t in prange(shifts.size):
            out[t] = _scan_one(keys, abs(shifts[t]))
        return out


def numpy_impl():
    return {"subset_sums": _subset_sums_np, "minkowski_sums": _minkowski_np, "zero_sum_masks": _zero_sum_masks_np, "spectre_scan": _spectre_scan_np}


def numba_impl():
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    return {"subset_sums": _subset_sums_nb, "minkowski_sums": _minkowski_nb, "zero_sum_masks": _zero_sum_masks_nb, "spectre_scan": _spectre_scan_nb}


def _jit(work: int) -> bool:
    return USE_NUMBA and work >= JIT_MIN_WORK


def _as_i64(a) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64))


def subset_sums(weights, cap: int):
    """Sorted distinct subset sums; ``(sums, ok)`` with ``ok`` False once ``cap`` is exceeded."""
    w = _as_i64(weights)
    if _jit(min(1 << min(int(np.count_nonzero(w)), 62), cap)):
        return _subset_sums_nb(w, cap)
    return _subset_sums_np(w, cap)


def minkowski_sums(groups, cap: int):
    """Sorted distinct sums choosing one value from each group; ``(sums, ok)`` as in :func:`subset_sums`."""
    sizes = [len(g) for g in groups]
    offsets = np.zeros(len(groups) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum(sizes)
    flat = _as_i64([v for g in groups for v in g]) if groups else np.zeros(0, dtype=np.int64)
    work = 1.0
    for n in sizes:
        work *= n
    if _jit(int(min(work, cap))):
        return _minkowski_nb(flat, offsets, cap)
    return _minkowski_np(flat, offsets, cap)


def zero_sum_masks(weights) -> np.ndarray:
    """Sorted bitmasks of all subsets of ``weights`` summing to zero (at most 62 weights)."""
    w = _as_i64(weights)
    if w.size > 62:
        raise ValueError("zero_sum_masks supports at most 62 weights")
    if _jit(1 << (w.size - w.size // 2)):
        return _zero_sum_masks_nb(w)
    return _zero_sum_masks_np(w)


def spectre_scan(keys, shifts) -> np.ndarray:
    """Per shift: -1 when every key moves into the set by +s or -s, else the first failing key index."""
    k = _as_i64(keys)
    s = _as_i64(shifts)
    if k.size == 0 or s.size == 0:
        return np.full(s.size, -1, dtype=np.int64)
    if _jit(k.size * s.size):
        return _spectre_scan_nb(k, s)
    return _spectre_scan_np(k, s)


def set_threads(n: int) -> None:
    """Set the worker count used by the parallel numba kernels."""
    if USE_NUMBA and n and n > 0:
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
