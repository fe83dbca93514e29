"""Rational scalar type used throughout the package.

gmpy2's mpq is an order of magnitude faster than fractions.Fraction and hashes
compatibly with it, so it is preferred when importable.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q, mpz as Z
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction
    Z = int
    HAVE_GMPY2 = False


def q(x, d=1):
    """Coerce ``x / d`` to the package rational type."""
    if isinstance(x, str):
        return Q(Fraction(x)) / d
    return Q(x, d) if d != 1 else Q(x)


def numden(x):
    """Numerator and denominator of a rational as Python ints."""
    return int(x.numerator), int(x.denominator)


def as_fraction(x):
    n, d = numden(Q(x))
    return Fraction(n, d)
