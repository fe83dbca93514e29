"""Pure-Python (numpy) fallback for the compiled modular kernels.

Primes stay below 2**31 so that products fit in int64.
"""

import numpy as np

PRIME_BITS = 31


def rank_mod_p(rows, p):
    m = len(rows)
    if m == 0:
        return 0
    a = np.array([[v % p for v in row] for row in rows], dtype=np.int64)
    n = a.shape[1]
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        below = a[r + 1:, c]
        idx = np.nonzero(below)[0] + r + 1
        if idx.size:
            f = (a[idx, c] * inv) % p
            a[idx, c:] = (a[idx, c:] - (f[:, None] * a[r, c:]) % p) % p
        r += 1
    return r
