"""Exact linear algebra over Q and over general exact fields.

Rational matrices go through fraction-free Bareiss elimination on integer
rows.  Matrices over other fields (Q(sqrt5), ...) use plain Gauss-Jordan.
Large rank computations use a multimodular method whose answer is exact: a
nonzero minor mod p is nonzero over Z, and agreement over enough primes rules
out larger minors by the Hadamard bound.
"""

from math import gcd

from .rational import Q, Z


def _lcm(a, b):
    return a // gcd(a, b) * b


def _is_rational(x):
    return isinstance(x, int) or hasattr(x, "denominator")


def integer_rows(M):
    """Scale each row by the lcm of its denominators; return Python ints."""
    out = []
    for row in M:
        L = 1
        for x in row:
            d = int(Q(x).denominator)
            if d != 1:
                L = _lcm(L, d)
        r = [int(Q(x) * L) for x in row]
        g = 0
        for v in r:
            g = gcd(g, v)
        if g > 1:
            r = [v // g for v in r]
        out.append(r)
    return out


def bareiss(A):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(E, pivots)``; ``E`` is a new matrix, the input is untouched.
    """
    A = [[Z(v) for v in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    prev = Z(1)
    r = 0
    for c in range(n):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if A[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        Ar = A[r]
        for i in range(r + 1, m):
            Ai = A[i]
            f = Ai[c]
            for j in range(c + 1, n):
                Ai[j] = (Ai[j] * piv - f * Ar[j]) // prev
            Ai[c] = Z(0)
            if f == 0:
                # rows with a zero in the pivot column still need scaling
                pass
        # entries left of c in rows below are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots


def mat_rank(M):
    """Exact rank of a matrix with rational (or integer) entries."""
    if not M or not M[0]:
        return 0
    if all(_is_rational(x) for row in M for x in row):
        _, piv = bareiss(integer_rows(M))
        return len(piv)
    _, piv = rref(M)
    return len(piv)


def mat_det(M):
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("square matrix required")
    if all(_is_rational(x) for row in M for x in row):
        scale = Q(1)
        rows = []
        for row in M:
            L = 1
            for x in row:
                L = _lcm(L, int(Q(x).denominator))
            scale /= L
            rows.append([int(Q(x) * L) for x in row])
        A = [[Z(v) for v in r] for r in rows]
        sign = 1
        prev = Z(1)
        for k in range(n):
            if A[k][k] == 0:
                for i in range(k + 1, n):
                    if A[i][k] != 0:
                        A[k], A[i] = A[i], A[k]
                        sign = -sign
                        break
                else:
                    return Q(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return Q(sign * A[n - 1][n - 1]) * scale
    R = [list(r) for r in M]
    det = R[0][0] ** 0
    for k in range(n):
        p = next((i for i in range(k, n) if R[i][k] != 0), None)
        if p is None:
            return det * 0
        if p != k:
            R[k], R[p] = R[p], R[k]
            det = -det
        det = det * R[k][k]
        inv = 1 / R[k][k]
        for i in range(k + 1, n):
            f = R[i][k] * inv
            if f != 0:
                for j in range(k, n):
                    R[i][j] = R[i][j] - f * R[k][j]
    return det


def rref(M):
    """Reduced row echelon form over an exact field.  Returns (R, pivots)."""
    R = [[Q(x) if isinstance(x, int) else x for x in row] for row in M]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def primitive_integer(vec):
    """Rational vector -> primitive integer vector, first nonzero entry positive."""
    L = 1
    for x in vec:
        L = _lcm(L, int(Q(x).denominator))
    iv = [int(Q(x) * L) for x in vec]
    g = 0
    for v in iv:
        g = gcd(g, v)
    if g == 0:
        return iv
    iv = [v // g for v in iv]
    for v in iv:
        if v != 0:
            if v < 0:
                iv = [-w for w in iv]
            break
    return iv


def mat_nullspace(M, ncols=None):
    """Basis of the right nullspace.

    Over Q the vectors are primitive integer vectors with first nonzero entry
    positive; over other fields each vector has a 1 in its free coordinate.
    """
    n = len(M[0]) if M else ncols
    if n is None:
        raise ValueError("cannot infer column count")
    R, piv = rref(M) if M else ([], [])
    free = [c for c in range(n) if c not in piv]
    rational = all(_is_rational(x) for row in M for x in row)
    basis = []
    for f in free:
        v = [Q(0)] * n if rational else [None] * n
        one = Q(1)
        if not rational:
            zero = next(x for row in M for x in row) * 0
            v = [zero] * n
            one = zero + 1
        v[f] = one
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(primitive_integer(v) if rational else v)
    return basis


def row_space_canonical(M):
    """Canonical form of a row space: reduced echelon rows as a tuple of tuples."""
    R, _ = rref(M)
    return tuple(tuple(row) for row in R)


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), row[0] * 0) for col in Bt] for row in A]


def solve(A, b):
    """Unique solution of A x = b over an exact field (A square, invertible)."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, piv = rref(aug)
    if len(piv) != n or piv[-1] == n:
        raise ValueError("singular system")
    return [R[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# multimodular rank


def _log2_upper(n):
    """Upper bound for log2 of the nonnegative integer n (n >= 1)."""
    return n.bit_length()


def hadamard_bits(A, k):
    """Upper bound (bits) on |det| of any k x k minor of the integer matrix A."""
    def norms(rows):
        out = []
        for r in rows:
            s = sum(v * v for v in r)
            out.append((_log2_upper(s) + 1) // 2 + 1 if s else 0)
        out.sort(reverse=True)
        return sum(out[:k])

    cols = list(zip(*A))
    return min(norms(A), norms(cols))


def _scaled_integer_matrix(M):
    """Integer matrix of the same rank, scaling rows or columns (smaller bound)."""
    by_rows = integer_rows(M)
    cols = [list(c) for c in zip(*M)]
    by_cols_t = integer_rows(cols)
    by_cols = [list(r) for r in zip(*by_cols_t)]
    k = min(len(M), len(M[0]))
    if hadamard_bits(by_rows, k) <= hadamard_bits(by_cols, k):
        return by_rows
    return by_cols


class RankCertificate:
    """Outcome of a certified multimodular rank computation."""

    def __init__(self, rank, primes, bound_bits, prime_bits):
        self.rank = rank
        self.primes = primes
        self.bound_bits = bound_bits
        self.prime_bits = prime_bits

    def __repr__(self):
        return "RankCertificate(rank=%d, primes=%d, bound_bits=%d)" % (
            self.rank, self.primes, self.bound_bits)


def certified_rank(M, kernels=None):
    """Exact rank of a rational matrix by the multimodular method.

    For primes p, rank_p(A) <= rank(A), and equality fails only if p divides
    every maximal nonzero minor.  If every tried prime gives rank <= r and the
    product of the primes exceeds the Hadamard bound for (r+1)-minors, then
    all (r+1)-minors vanish, so the rank is exactly r.
    """
    from .. import kernels as _k

    kern = kernels or _k
    if not M or not M[0]:
        return RankCertificate(0, 0, 0, 0)
    A = _scaled_integer_matrix(M)
    m, n = len(A), len(A[0])
    full = min(m, n)
    r = -1
    bits = 0
    need = 0
    used = 0
    for p in kern.primes():
        rp = kern.rank_mod_p(A, p)
        used += 1
        bits += p.bit_length() - 1
        if rp > r:
            r = rp
            need = hadamard_bits(A, r + 1) + 1 if r < full else 0
        if r == full or bits > need:
            break
    return RankCertificate(r, used, need, kern.PRIME_BITS)
