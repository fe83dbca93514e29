# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Gaussian elimination modulo 62-bit primes.

Arithmetic uses Montgomery multiplication so the inner loop has no division.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    typedef unsigned __int128 u128_t;
    static inline uint64_t mont_redc(u128_t t, uint64_t p, uint64_t pneg) {
        uint64_t m = (uint64_t)t * pneg;
        u128_t u = (t + (u128_t)m * p) >> 64;
        uint64_t r = (uint64_t)u;
        return r >= p ? r - p : r;
    }
    static inline uint64_t mulmod128(uint64_t a, uint64_t b, uint64_t p) {
        return (uint64_t)(((u128_t)a * b) % p);
    }
    static inline uint64_t mont_mul(uint64_t a, uint64_t b, uint64_t p, uint64_t pneg) {
        return mont_redc((u128_t)a * b, p, pneg);
    }
    """
    uint64_t mulmod128(uint64_t a, uint64_t b, uint64_t p) nogil
    uint64_t mont_mul(uint64_t a, uint64_t b, uint64_t p, uint64_t pneg) nogil

PRIME_BITS = 62


cdef uint64_t _neg_inverse(uint64_t p) nogil:
    # -p^{-1} mod 2^64 by Newton iteration
    cdef uint64_t x = p
    cdef int i
    for i in range(6):
        x = x * (2 - p * x)
    return <uint64_t>0 - x


cdef uint64_t _powmod(uint64_t a, uint64_t e, uint64_t p) nogil:
    cdef uint64_t r = 1
    a = a % p
    while e:
        if e & 1:
            r = mulmod128(r, a, p)
        a = mulmod128(a, a, p)
        e >>= 1
    return r


def rank_mod_p(rows, unsigned long long p):
    """Rank of an integer matrix (list of lists of ints) modulo the odd prime p < 2**63."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return 0
    cdef Py_ssize_t n = len(rows[0])
    cdef uint64_t *a = <uint64_t *> malloc(m * n * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r, piv
    cdef uint64_t pneg = _neg_inverse(p)
    # R^2 mod p, used to move scalars into Montgomery form
    cdef uint64_t R1 = <uint64_t>((<object>1 << 64) % p)
    cdef uint64_t R2 = mulmod128(R1, R1, p)
    cdef uint64_t inv, f, x, t
    cdef uint64_t *arow
    cdef uint64_t *prow
    try:
        for i in range(m):
            row = rows[i]
            for j in range(n):
                a[i * n + j] = <uint64_t>(row[j] % p)
        with nogil:
            r = 0
            for c in range(n):
                if r == m:
                    break
                piv = -1
                for i in range(r, m):
                    if a[i * n + c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for j in range(c, n):
                        t = a[piv * n + j]
                        a[piv * n + j] = a[r * n + j]
                        a[r * n + j] = t
                prow = a + r * n
                inv = _powmod(prow[c], p - 2, p)
                # Montgomery form of the inverse: inv * R
                inv = mont_mul(inv, R2, p, pneg)
                for i in range(r + 1, m):
                    arow = a + i * n
                    if arow[c] == 0:
                        continue
                    # f = a_ic / a_rc, kept in Montgomery form
                    f = mont_mul(arow[c], inv, p, pneg)
                    f = mont_mul(f, R2, p, pneg)
                    arow[c] = 0
                    for j in range(c + 1, n):
                        x = prow[j]
                        if x == 0:
                            continue
                        x = mont_mul(f, x, p, pneg)
                        t = arow[j]
                        arow[j] = t - x if t >= x else t + (p - x)
                r += 1
        return r
    finally:
        free(a)
