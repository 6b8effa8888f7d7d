import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

from subsums import _kernels
from subsums.errors import DepthBudgetExceeded
from subsums.lattice import KeySet, minkowski_sum_vectors, subset_sum_vectors
from subsums.scalar import ZERO, Scalar

NP = _kernels.numpy_impl()
needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _brute_subset_sums(w):
    return sorted({sum(c) for r in range(len(w) + 1) for c in itertools.combinations(w, r)})


@pytest.mark.parametrize("seed", range(20))
def test_numpy_subset_sums_oracle(seed):
    rng = np.random.default_rng(seed)
    w = rng.integers(-50, 50, size=int(rng.integers(0, 11))).astype(np.int64)
    sums, ok = NP["subset_sums"](w, 1 << 20)
    assert ok and sums.tolist() == _brute_subset_sums(w.tolist())


@needs_numba
@pytest.mark.parametrize("seed", range(20))
def test_backends_agree(seed):
    NB = _kernels.numba_impl()
    rng = np.random.default_rng(100 + seed)
    w = rng.integers(-10**6, 10**6, size=int(rng.integers(1, 16))).astype(np.int64)
    a, oka = NP["subset_sums"](w, 1 << 20)
    b, okb = NB["subset_sums"](w, 1 << 20)
    assert oka == okb and np.array_equal(a, b)

    groups = [rng.integers(-20, 20, size=int(rng.integers(1, 5))) for _ in range(int(rng.integers(1, 7)))]
    offsets = np.zeros(len(groups) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(g) for g in groups])
    flat = np.concatenate(groups).astype(np.int64)
    a, _ = NP["minkowski_sums"](flat, offsets, 1 << 20)
    b, _ = NB["minkowski_sums"](flat, offsets, 1 << 20)
    assert np.array_equal(a, b)
    brute = sorted({sum(c) for c in itertools.product(*[g.tolist() for g in groups])})
    assert a.tolist() == brute

    zw = rng.integers(-6, 7, size=int(rng.integers(1, 15))).astype(np.int64)
    a = NP["zero_sum_masks"](zw)
    b = NB["zero_sum_masks"](zw)
    assert np.array_equal(a, b)
    brute = [m for m in range(1 << zw.size) if sum(int(zw[i]) for i in range(zw.size) if m >> i & 1) == 0]
    assert a.tolist() == brute

    keys = np.unique(rng.integers(-30, 30, size=int(rng.integers(1, 25)))).astype(np.int64)
    shifts = np.arange(-8, 9, dtype=np.int64)
    assert np.array_equal(NP["spectre_scan"](keys, shifts), NB["spectre_scan"](keys, shifts))


def test_spectre_scan_semantics():
    keys = np.array([0, 1, 2], dtype=np.int64)
    res = NP["spectre_scan"](keys, np.array([0, 1, 2, 3], dtype=np.int64))
    # shift 2 fails at key 1 (neither -1 nor 3 is present)
    assert res.tolist() == [-1, -1, 1, 0]


def test_cap_reported():
    sums, ok = NP["subset_sums"](np.array([1, 2, 4, 8], dtype=np.int64), 10)
    assert not ok


def test_subset_sum_vectors_exact():
    r2 = Scalar("sqrt(2)")
    vecs = [(Scalar("1/2"), r2), (Scalar("1/3"), -r2), (Scalar("1/6"), ZERO)]
    got = subset_sum_vectors(vecs, 2)
    brute = set()
    for r in range(4):
        for c in itertools.combinations(vecs, r):
            brute.add((sum((v[0] for v in c), ZERO), sum((v[1] for v in c), ZERO)))
    assert got == sorted(brute)


def test_minkowski_sum_vectors():
    groups = [[(Scalar(0),), (Scalar("1/3"),)], [(Scalar(0),), (Scalar("2/9"),), (Scalar("4/9"),)]]
    got = [v[0] for v in minkowski_sum_vectors(groups, 1)]
    assert got == sorted({a[0] + b[0] for a in groups[0] for b in groups[1]})


def test_budget():
    vecs = [(Scalar(2) ** -i,) for i in range(1, 12)]
    with pytest.raises(DepthBudgetExceeded):
        subset_sum_vectors(vecs, 1, cap=1000)


def test_keyset_shifts():
    pts = [(Scalar(i) / 4, Scalar(j) / 4) for i in range(3) for j in range(2)]
    ks = KeySet(pts, 2)
    assert ks.ok
    s = ks.shift_of((Scalar("1/4"), ZERO))
    assert ks.vector_of_shift(s) == (Scalar("1/4"), ZERO)


def test_env_flag_selects_numpy():
    env = dict(os.environ, SUBSUMS_JIT="0")
    out = subprocess.run(
        [sys.executable, "-c", "from subsums import _kernels; print(_kernels.USE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "False"


@pytest.mark.parametrize("size", ["small", "large"])
def test_public_dispatch_matches_numpy(size):
    # small inputs stay on numpy, large ones cross JIT_MIN_WORK
    rng = np.random.default_rng(11)
    big = size == "large"
    w = rng.integers(-10**5, 10**5, size=20 if big else 8).astype(np.int64)
    assert np.array_equal(_kernels.subset_sums(w, 1 << 30)[0], NP["subset_sums"](w, 1 << 30)[0])
    groups = [rng.integers(-10**4, 10**4, size=5).astype(np.int64) for _ in range(8 if big else 3)]
    offsets = np.concatenate([[0], np.cumsum([g.size for g in groups])]).astype(np.int64)
    assert np.array_equal(_kernels.minkowski_sums(groups, 1 << 30)[0], NP["minkowski_sums"](np.concatenate(groups), offsets, 1 << 30)[0])
    zw = np.concatenate([rng.integers(1, 50, size=17 if big else 5), -rng.integers(1, 50, size=17 if big else 5)]).astype(np.int64)
    assert np.array_equal(_kernels.zero_sum_masks(zw), NP["zero_sum_masks"](zw))
    keys = np.unique(rng.integers(0, 4000, size=3000 if big else 40)).astype(np.int64)
    shifts = np.arange(1, 200 if big else 20, dtype=np.int64)
    assert np.array_equal(_kernels.spectre_scan(keys, shifts), NP["spectre_scan"](keys, shifts))
