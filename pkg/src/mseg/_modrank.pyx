# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Row-echelon rank over a prime field; fixed-width kernel for p < 2**62.

Mirrors :mod:`mseg._modrank_py`; products are taken in 128-bit registers so
any modulus below 2**62 is safe.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64


cdef inline u64 mulmod(u64 a, u64 b, u64 p) nogil:
    return <u64> ((<u128> a * <u128> b) % p)


cdef u64 invmod(u64 a, u64 p) nogil:
    # Fermat inverse; p is prime and a nonzero mod p.
    cdef u64 r = 1
    cdef u64 b = a % p
    cdef u64 e = p - 2
    while e:
        if e & 1:
            r = mulmod(r, b, p)
        b = mulmod(b, b, p)
        e >>= 1
    return r


def rank_mod(entries, Py_ssize_t rows, Py_ssize_t cols, u64 p):
    """Rank of a rows x cols matrix over GF(p); entries row-major in [0, p)."""
    if rows == 0 or cols == 0:
        return 0
    cdef u64 *m = <u64 *> malloc(rows * cols * sizeof(u64))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t k, r, c, j, piv, rank
    cdef u64 inv, g, tmp
    try:
        for k in range(rows * cols):
            m[k] = entries[k]
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            piv = -1
            for r in range(rank, rows):
                if m[r * cols + c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(c, cols):
                    tmp = m[rank * cols + j]
                    m[rank * cols + j] = m[piv * cols + j]
                    m[piv * cols + j] = tmp
            inv = invmod(m[rank * cols + c], p)
            for r in range(rank + 1, rows):
                if m[r * cols + c] != 0:
                    g = mulmod(m[r * cols + c], inv, p)
                    for j in range(c, cols):
                        m[r * cols + j] = (
                            m[r * cols + j] + p - mulmod(g, m[rank * cols + j], p)
                        ) % p
            rank += 1
        return rank
    finally:
        free(m)
