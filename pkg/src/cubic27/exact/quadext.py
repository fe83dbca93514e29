"""Exact arithmetic in Q(sqrt 5)."""

from .rational import Q


class QuadExt5:
    """The number ``a + b*sqrt(5)`` with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Q(a)
        self.b = Q(b)

    @staticmethod
    def _c(o):
        return o if isinstance(o, QuadExt5) else QuadExt5(o)

    def __add__(self, o):
        o = self._c(o)
        return QuadExt5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt5(-self.a, -self.b)

    def __sub__(self, o):
        o = self._c(o)
        return QuadExt5(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return QuadExt5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self):
        return QuadExt5(self.a, -self.b)

    def norm(self):
        return self.a * self.a - 5 * self.b * self.b

    def __truediv__(self, o):
        o = self._c(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        p = self * o.conj()
        return QuadExt5(p.a / n, p.b / n)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __pow__(self, k):
        if k < 0:
            return QuadExt5(1) / (self ** (-k))
        r = QuadExt5(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def sign(self):
        """Exact sign of the real number a + b*sqrt(5)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 5 b^2
        d = self.a * self.a - 5 * self.b * self.b
        return sa if d > 0 else (sb if d < 0 else 0)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __repr__(self):
        return "QuadExt5(%s, %s)" % (self.a, self.b)


SQRT5 = QuadExt5(0, 1)
