"""Dense rank computation over a prime field F_p, p < 2^31.

Residues live in int64 and every intermediate product of two reduced
residues stays below 2^62, so int64 arithmetic is exact here.  The hot
kernel has a numba-compiled variant and a vectorized numpy fallback; set
COARSEHOM_DISABLE_NUMBA=1 to force the fallback (the import failure path
takes it automatically).
"""

import os

import numpy as np

try:
    if os.environ.get("COARSEHOM_DISABLE_NUMBA"):
        raise ImportError("numba disabled by COARSEHOM_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def deco(func):
            return func

        return deco


def _pow_mod(a, e, p):
    r = 1
    a %= p
    while e:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


@njit(cache=True)
def _rank_mod_jit(a, p):  # pragma: no cover - exercised via dispatch
    m, n = a.shape
    rank = 0
    for col in range(n):
        pivot = -1
        for r in range(rank, m):
            if a[r, col] % p != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for c in range(col, n):
                tmp = a[pivot, c]
                a[pivot, c] = a[rank, c]
                a[rank, c] = tmp
        # normalize pivot row to a leading 1 (Fermat inverse)
        inv = 1
        base = a[rank, col] % p
        e = p - 2
        while e:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for c in range(col, n):
            a[rank, c] = (a[rank, c] * inv) % p
        for r in range(m):
            if r == rank:
                continue
            f = a[r, col] % p
            if f == 0:
                continue
            for c in range(col, n):
                a[r, c] = (a[r, c] - f * a[rank, c]) % p
        rank += 1
        if rank == m:
            break
    return rank


def _rank_mod_numpy(a, p):
    m, n = a.shape
    rank = 0
    for col in range(n):
        live = np.nonzero(a[rank:, col] % p)[0]
        if live.size == 0:
            continue
        pivot = rank + live[0]
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = _pow_mod(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        factors = a[:, col].copy()
        factors[rank] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(factors[rows], a[rank])) % p
        rank += 1
        if rank == m:
            break
    return rank


def rank_mod(dense, p):
    """Rank of an integer matrix mod p.  `dense` is any 2-d int array-like."""
    a = np.array(dense, dtype=np.int64)
    if a.size == 0:
        return 0
    a %= p
    if HAS_NUMBA:
        return int(_rank_mod_jit(a, np.int64(p)))
    return int(_rank_mod_numpy(a, p))
