import numpy as np
import pytest
from hypothesis import given, settings, strategies as hst

from coact import _kernels as K


def rank_oracle(rows):
    """Rank over F2 via bitmask elimination."""
    basis = []
    for r in rows:
        v = int("".join(map(str, r[::-1])) or "0", 2)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


matrices = hst.integers(1, 9).flatmap(
    lambda n: hst.lists(hst.lists(hst.integers(0, 1), min_size=n, max_size=n), min_size=1, max_size=9))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_oracle(rows):
    assert K.rank(np.array(rows, dtype=np.uint8)) == rank_oracle(rows)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(rows):
    A = np.array(rows, dtype=np.uint8)
    N = K.nullspace(A)
    assert len(N) == A.shape[1] - rank_oracle(rows)
    for v in N:
        assert not ((A.astype(int) @ v.astype(int)) % 2).any()


@settings(max_examples=100, deadline=None)
@given(matrices, hst.randoms())
def test_solve_consistent_systems(rows, rnd):
    A = np.array(rows, dtype=np.uint8)
    x0 = np.array([rnd.randint(0, 1) for _ in range(A.shape[1])], dtype=np.uint8)
    b = (A.astype(int) @ x0.astype(int)) % 2
    x = K.solve(A, b)
    assert x is not None
    assert np.array_equal((A.astype(int) @ x.astype(int)) % 2, b)


def test_solve_inconsistent():
    A = np.array([[1, 1], [1, 1]], dtype=np.uint8)
    assert K.solve(A, np.array([1, 0])) is None


def test_pack_roundtrip_wide():
    rng = np.random.default_rng(3)
    d = (rng.random((5, 130)) < 0.5).astype(np.uint8)
    assert np.array_equal(K.unpack_rows(K.pack_rows(d), 130), d)


@pytest.mark.skipif(not K._HAVE_NUMBA, reason="numba not importable")
def test_backends_agree():
    rng = np.random.default_rng(7)
    for n in (3, 40, 70, 150):
        d = (rng.random((n, n + 11)) < 0.4).astype(np.uint8)
        W = K.pack_rows(d)
        Ra, pa = K._rref_numpy(W, d.shape[1])
        Rb, pb = K._rref_numba(W, d.shape[1])
        assert np.array_equal(pa, pb) and np.array_equal(Ra, Rb)
    degs = np.array([1, 2, 3, 7, 15], dtype=np.int64)
    hts = np.array([0, 2, 0, 4, 1], dtype=np.int64)
    assert np.array_equal(K._series_product_numpy(degs, hts, 60), K._series_product_numba(degs, hts, 60))


def series_oracle(degs, heights, n):
    out = [1] + [0] * n
    for d, h in zip(degs, heights):
        factor = [0] * (n + 1)
        k = 0
        while k * d <= n and (h == 0 or k < h):
            factor[k * d] = 1
            k += 1
        out = [sum(out[i] * factor[j - i] for i in range(j + 1)) for j in range(n + 1)]
    return out


def test_series_product_oracle():
    degs, hts = [1, 3, 2, 7], [4, 2, 0, 0]
    assert list(K.series_product(degs, hts, 30)) == series_oracle(degs, hts, 30)


def test_series_product_rejects_degree_zero():
    with pytest.raises(ValueError):
        K.series_product([0], [0], 4)


def test_backend_flag(monkeypatch):
    import importlib
    monkeypatch.setenv("COACT_NUMBA", "0")
    mod = importlib.reload(K)
    try:
        assert mod.backend() == "numpy"
        assert mod.rank(np.eye(4, dtype=np.uint8)) == 4
    finally:
        monkeypatch.delenv("COACT_NUMBA")
        importlib.reload(K)
