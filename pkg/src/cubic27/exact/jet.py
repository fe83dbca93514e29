"""First-order jets: a value together with its partial derivatives.

Arithmetic on jets is exact forward-mode differentiation, so Jacobians of
rational maps can be computed without symbolic algebra.
"""

from .rational import Q


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


class Jet:
    __slots__ = ("val", "d")

    def __init__(self, val, d):
        self.val = val
        self.d = tuple(d)

    @classmethod
    def seed(cls, values):
        """Independent variables: jet i has derivative e_i."""
        n = len(values)
        one, zero = Q(1), Q(0)
        return [cls(v, [one if j == i else zero for j in range(n)]) for i, v in enumerate(values)]

    @classmethod
    def constant(cls, v, n):
        return cls(v, [v * 0] * n)

    def _lift(self, o):
        if isinstance(o, Jet):
            return o
        return Jet(o, [self.val * 0] * len(self.d))

    def __add__(self, o):
        if isinstance(o, Jet):
            return Jet(self.val + o.val, [a + b for a, b in zip(self.d, o.d)])
        return Jet(self.val + o, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, [-a for a in self.d])

    def __sub__(self, o):
        if isinstance(o, Jet):
            return Jet(self.val - o.val, [a - b for a, b in zip(self.d, o.d)])
        return Jet(self.val - o, self.d)

    def __rsub__(self, o):
        return Jet(o - self.val, [-a for a in self.d])

    def __mul__(self, o):
        if isinstance(o, Jet):
            u, v = self.val, o.val
            return Jet(u * v, [u * b + v * a for a, b in zip(self.d, o.d)])
        return Jet(self.val * o, [a * o for a in self.d])

    __rmul__ = __mul__

    def inverse(self):
        if self.val == 0:
            raise PoleError("jet evaluated at a pole")
        inv = 1 / self.val
        f = -inv * inv
        return Jet(inv, [a * f for a in self.d])

    def __truediv__(self, o):
        if isinstance(o, Jet):
            return self * o.inverse()
        if o == 0:
            raise PoleError("division by zero")
        inv = 1 / Q(o) if isinstance(o, int) else 1 / o
        return Jet(self.val * inv, [a * inv for a in self.d])

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, k):
        if k == 0:
            return Jet.constant(self.val ** 0, len(self.d))
        if k < 0:
            return self.inverse() ** (-k)
        r = self
        for _ in range(k - 1):
            r = r * self
        return r

    def __eq__(self, o):
        if isinstance(o, Jet):
            return self.val == o.val and self.d == o.d
        return self.val == o and all(a == 0 for a in self.d)

    def __ne__(self, o):
        return not self.__eq__(o)

    __hash__ = None

    def __repr__(self):
        return "Jet(%s, %s)" % (self.val, list(self.d))


def Jet4(val, d):
    if len(d) != 4:
        raise ValueError("Jet4 needs four partials")
    return Jet(val, d)


def jet_eval(f, point):
    """Evaluate ``f`` at a list of jets.

    ``f`` is an MPoly or a ``(numerator, denominator)`` pair of MPolys.
    A vanishing denominator raises PoleError.
    """
    if isinstance(f, tuple):
        num, den = f
        dv = den.eval(point)
        dval = dv.val if isinstance(dv, Jet) else dv
        if dval == 0:
            raise PoleError("denominator vanishes")
        return _as_jet(num.eval(point), point) / dv
    return _as_jet(f.eval(point), point)


def _as_jet(v, point):
    # constants evaluate to scalars
    return v if isinstance(v, Jet) else Jet.constant(v, len(point[0].d))


def jacobian(outputs):
    """Matrix of partials of a list of jets (rows = outputs)."""
    return [list(o.d) for o in outputs]
