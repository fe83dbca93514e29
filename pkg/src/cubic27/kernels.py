"""Kernel selection: the compiled extension when built, numpy otherwise.

Set ``CUBIC27_PURE=1`` to force the fallback.
"""

import os

from .exact.rational import HAVE_GMPY2

BACKEND = "python"
if not os.environ.get("CUBIC27_PURE"):
    try:
        from . import _modp as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = None
else:
    _impl = None

if _impl is None:
    from . import _modp_py as _impl

PRIME_BITS = _impl.PRIME_BITS
rank_mod_p = _impl.rank_mod_p


def _prev_prime(n):
    if HAVE_GMPY2:
        import gmpy2
        if hasattr(gmpy2, "prev_prime"):
            return int(gmpy2.prev_prime(n))
        n -= 1
        while not gmpy2.is_prime(n):
            n -= 1
        return n
    n -= 1
    while not _is_probable_prime(n):
        n -= 1
    return n


def _is_probable_prime(n):
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIME_CACHE = {}


def primes(bits=None):
    """Deterministic descending sequence of primes just below 2**bits."""
    bits = bits or PRIME_BITS
    cache = _PRIME_CACHE.setdefault(bits, [])
    i = 0
    while True:
        if i == len(cache):
            start = cache[-1] if cache else (1 << bits)
            cache.append(_prev_prime(start))
        yield cache[i]
        i += 1


def backend_for(name):
    """Return a module-like object for a named backend (used by benchmarks)."""
    if name == "compiled":
        from . import _modp as mod
    else:
        from . import _modp_py as mod

    class _B:
        PRIME_BITS = mod.PRIME_BITS
        rank_mod_p = staticmethod(mod.rank_mod_p)

        @staticmethod
        def primes():
            return primes(mod.PRIME_BITS)

    return _B
