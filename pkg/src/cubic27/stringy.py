"""Numerical stringy integrals on the segment and the triangle, and their field theory limits.

Endpoint singularities x^(s-1) are removed by splitting at 1/2 and substituting
x = t^(1/s) near each endpoint.
"""

from math import exp, lgamma, log, log1p

from scipy import integrate


class QuadratureError(RuntimeError):
    pass


class StringyResult:
    def __init__(self, estimate, error, exact):
        self.estimate = estimate
        self.error = error
        self.exact = exact

    @property
    def relative(self):
        return abs(self.estimate - self.exact) / abs(self.exact)

    def agrees(self, tol):
        return abs(self.estimate - self.exact) <= max(10 * self.error, tol * abs(self.exact))


def beta_exact(s1, s2):
    return exp(lgamma(s1) + lgamma(s2) - lgamma(s1 + s2))


def simplex_exact(s1, s2, s3):
    return exp(lgamma(s1) + lgamma(s2) + lgamma(s3) - lgamma(s1 + s2 + s3))


def _half_maps(s_left, s_right):
    """Two substitutions covering [0,1/2] and [1/2,1]: t -> (log x, log(1-x), log dx/dt).

    Near 0 we set x = t^(1/s_left), near 1 we set 1 - x = t^(1/s_right), both
    for t in (0, 2^-s).  Logs are formed analytically to avoid cancellation.
    """
    def left(t):
        lx = log(t) / s_left
        return lx, log1p(-exp(lx)), (1.0 / s_left - 1) * log(t) - log(s_left)

    def right(t):
        l1 = log(t) / s_right
        return log1p(-exp(l1)), l1, (1.0 / s_right - 1) * log(t) - log(s_right)

    return [(0.5 ** s_left, left), (0.5 ** s_right, right)]


def beta_numeric(s1, s2):
    """Integral of x^s1 (1-x)^s2 dx/(x(1-x)) against the Beta function."""
    if s1 <= 0 or s2 <= 0:
        raise ValueError("parameters must be positive")
    total = err = 0.0
    for hi, m in _half_maps(s1, s2):
        def g(t, m=m):
            lx, l1, lj = m(t)
            return exp((s1 - 1) * lx + (s2 - 1) * l1 + lj)
        v, e = integrate.quad(g, 0.0, hi, epsabs=0, epsrel=1e-12, limit=200)
        total += v
        err += e
    return StringyResult(total, err, beta_exact(s1, s2))


def log_triangle_integrand(s, lu1, lu2, lu3):
    """log of u1^s1 u2^s2 u3^s3 / (u1 u2 u3)."""
    return (s[0] - 1) * lu1 + (s[1] - 1) * lu2 + (s[2] - 1) * lu3


def triangle_numeric(s):
    """Two-dimensional quadrature over the simplex, via u1 = a, u2 = (1-a) b, u3 = (1-a)(1-b)."""
    s = tuple(float(x) for x in s)
    if any(x <= 0 for x in s):
        raise ValueError("parameters must be positive")
    s1, s2, s3 = s
    total = err = 0.0
    for ahi, ma in _half_maps(s1, s2 + s3):
        for bhi, mb in _half_maps(s2, s3):
            def g(tb, ta, ma=ma, mb=mb):
                la, l1a, lja = ma(ta)
                lb, l1b, ljb = mb(tb)
                lf = log_triangle_integrand(s, la, l1a + lb, l1a + l1b)
                # dA of the simplex map is (1 - a) da db
                return exp(lf + l1a + lja + ljb)
            v, e = integrate.dblquad(g, 0.0, ahi, 0.0, bhi, epsabs=0, epsrel=1e-10)
            total += v
            err += e
    return StringyResult(total, err, simplex_exact(*s))


def richardson(values, hs):
    """Polynomial extrapolation to h = 0 through (h_i, values_i), by Neville's scheme."""
    p = list(values)
    n = len(p)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (hs[i + k] * p[i] - hs[i] * p[i + 1]) / (hs[i + k] - hs[i])
    return p[0]


class LimitResult:
    def __init__(self, alphas, samples, extrapolated, expected, errors):
        self.alphas = alphas
        self.samples = samples
        self.extrapolated = extrapolated
        self.expected = expected
        self.errors = errors

    @property
    def deviation(self):
        return abs(self.extrapolated - self.expected)


DEFAULT_ALPHAS = (0.1, 0.05, 0.025)
TRIANGLE_ALPHAS = (0.1, 0.05, 0.025, 0.0125)


def beta_limit(s=(1.0, 1.0), alphas=DEFAULT_ALPHAS):
    """alpha' B(alpha' s1, alpha' s2) extrapolated to alpha' = 0."""
    s1, s2 = s
    samples = [a * beta_numeric(a * s1, a * s2).estimate for a in alphas]
    expected = (s1 + s2) / (s1 * s2)
    ext = richardson(samples, list(alphas))
    errs = [abs(x - expected) for x in samples]
    return LimitResult(tuple(alphas), samples, ext, expected, errs)


def triangle_limit(s=(1.0, 1.0, 1.0), alphas=TRIANGLE_ALPHAS):
    """alpha'^2 I(alpha' s) on the triangle extrapolated to alpha' = 0."""
    s1, s2, s3 = s
    samples = [a * a * triangle_numeric((a * s1, a * s2, a * s3)).estimate for a in alphas]
    expected = (s1 + s2 + s3) / (s1 * s2 * s3)
    ext = richardson(samples, list(alphas))
    errs = [abs(x - expected) for x in samples]
    return LimitResult(tuple(alphas), samples, ext, expected, errs)
