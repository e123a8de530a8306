"""Dense linear algebra over F2 and power-series kernels.

Matrices are packed row-wise into uint64 words.  Two interchangeable
backends exist: numba-compiled loops and a vectorised numpy fallback.
Set ``COACT_NUMBA=0`` to force the numpy path (the numba path is also
skipped when numba cannot be imported).
"""
import os

import numpy as np

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def _env_wants_numba():
    flag = os.environ.get("COACT_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


USE_NUMBA = _HAVE_NUMBA and _env_wants_numba()


def backend():
    return "numba" if USE_NUMBA else "numpy"


# packing

def pack_rows(dense):
    """Pack a 0/1 matrix (rows x cols) into uint64 words, bit j of row i at word j//64."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    if dense.ndim != 2:
        raise ValueError("expected a 2d array")
    nrows, ncols = dense.shape
    nwords = max(1, (ncols + 63) // 64)
    padded = np.zeros((nrows, nwords * 64), dtype=np.uint8)
    padded[:, :ncols] = dense
    bits = padded.reshape(nrows, nwords, 64).astype(np.uint64)
    weights = np.left_shift(np.uint64(1), np.arange(64, dtype=np.uint64))
    return (bits * weights).sum(axis=2, dtype=np.uint64)


def unpack_rows(packed, ncols):
    packed = np.asarray(packed, dtype=np.uint64)
    nrows, nwords = packed.shape
    shifts = np.arange(64, dtype=np.uint64)
    bits = (packed[:, :, None] >> shifts) & np.uint64(1)
    return bits.reshape(nrows, nwords * 64)[:, :ncols].astype(np.uint8)


# numpy backend

def _rref_numpy(W, ncols):
    W = W.copy()
    nrows = W.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        w, b = divmod(c, 64)
        mask = np.uint64(1) << np.uint64(b)
        col = (W[r:, w] & mask) != 0
        hits = np.nonzero(col)[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            W[[r, p]] = W[[p, r]]
        others = np.nonzero((W[:, w] & mask) != 0)[0]
        others = others[others != r]
        if others.size:
            W[others] ^= W[r]
        pivots.append(c)
        r += 1
    return W, np.array(pivots, dtype=np.int64)


# numba backend

if _HAVE_NUMBA:
    @njit(cache=True)
    def _rref_numba(W, ncols):
        W = W.copy()
        nrows, nwords = W.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            w = c // 64
            mask = np.uint64(1) << np.uint64(c % 64)
            p = -1
            for i in range(r, nrows):
                if W[i, w] & mask:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for k in range(nwords):
                    t = W[r, k]
                    W[r, k] = W[p, k]
                    W[p, k] = t
            for i in range(nrows):
                if i != r and (W[i, w] & mask):
                    for k in range(nwords):
                        W[i, k] ^= W[r, k]
            pivots[r] = c
            r += 1
        return W, pivots[:r]

    @njit(cache=True)
    def _series_product_numba(degs, heights, n):
        out = np.zeros(n + 1, dtype=np.int64)
        out[0] = 1
        for j in range(degs.shape[0]):
            d = degs[j]
            h = heights[j]
            # multiply by 1/(1 - t^d)
            for i in range(d, n + 1):
                out[i] += out[i - d]
            # then by (1 - t^{h d}) when truncated
            if h > 0:
                hd = h * d
                for i in range(n, hd - 1, -1):
                    out[i] -= out[i - hd]
        return out


def _series_product_numpy(degs, heights, n):
    out = np.zeros(n + 1, dtype=np.int64)
    out[0] = 1
    for d, h in zip(degs, heights):
        d = int(d)
        # 1/(1 - t^d) as a strided cumulative sum
        for start in range(d):
            seg = out[start::d]
            np.cumsum(seg, out=seg)
        if h > 0:
            hd = int(h) * d
            if hd <= n:
                shifted = out[:n + 1 - hd].copy()
                out[hd:] -= shifted
    return out


# public API

def rref(dense):
    """Row-reduce a dense 0/1 matrix; returns (reduced dense matrix, pivot columns)."""
    dense = np.asarray(dense, dtype=np.uint8)
    nrows, ncols = dense.shape
    if nrows == 0 or ncols == 0:
        return dense.copy(), np.zeros(0, dtype=np.int64)
    W = pack_rows(dense)
    if USE_NUMBA:
        R, piv = _rref_numba(W, ncols)
    else:
        R, piv = _rref_numpy(W, ncols)
    return unpack_rows(R, ncols), piv


def rank(dense):
    dense = np.asarray(dense, dtype=np.uint8)
    if dense.size == 0:
        return 0
    return int(len(rref(dense)[1]))


def nullspace(dense):
    """Basis (as rows) of {v : dense @ v = 0} over F2."""
    dense = np.asarray(dense, dtype=np.uint8)
    nrows, ncols = dense.shape
    if ncols == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    if nrows == 0:
        return np.eye(ncols, dtype=np.uint8)
    R, piv = rref(dense)
    piv = list(piv)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(piv):
            if R[i, f]:
                basis[k, p] = 1
    return basis


def solve(dense, rhs):
    """One solution x of dense @ x = rhs over F2, or None."""
    dense = np.asarray(dense, dtype=np.uint8)
    rhs = np.asarray(rhs, dtype=np.uint8).reshape(-1, 1)
    nrows, ncols = dense.shape
    aug = np.concatenate([dense, rhs], axis=1)
    R, piv = rref(aug)
    if len(piv) and piv[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.uint8)
    for i, p in enumerate(piv):
        x[p] = R[i, ncols]
    return x


def series_product(degs, heights, n):
    """Coefficients to t^n of prod_j (1 - t^{h_j d_j}) / (1 - t^{d_j}); h_j = 0 means untruncated."""
    degs = np.asarray(degs, dtype=np.int64)
    heights = np.asarray(heights, dtype=np.int64)
    if np.any(degs <= 0):
        raise ValueError("generator degrees must be positive")
    if USE_NUMBA:
        return _series_product_numba(degs, heights, int(n))
    return _series_product_numpy(degs, heights, int(n))
