"""Deterministic rational sample points.

Each point is drawn from a counter-based generator (numpy's Philox) keyed by
``(seed, index)``, so point ``index`` of a panel does not depend on how many
points were drawn before it.
"""

import numpy as np

from .rational import Q

RETRY_BUDGET = 64


class SamplingExhausted(RuntimeError):
    """No admissible point found within the retry budget."""


def _generator(seed, index):
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _admissible(point, avoid):
    for f in avoid:
        try:
            v = f.eval(point) if hasattr(f, "eval") else f(point)
        except ZeroDivisionError:
            return False
        if v == 0:
            return False
    return True


def sample_point(seed, dim, avoid=(), bound=50, index=0, positive=False, integer=False):
    """A rational point of Q^dim avoiding the zero sets of ``avoid``.

    Numerators are uniform in [-bound, bound] (or [1, bound] when positive) and
    denominators uniform in [1, bound] unless ``integer`` is set.
    """
    rng = _generator(seed, index)
    lo = 1 if positive else -bound
    for _ in range(RETRY_BUDGET):
        nums = rng.integers(lo, bound + 1, size=dim)
        if integer:
            dens = np.ones(dim, dtype=np.int64)
        else:
            dens = rng.integers(1, bound + 1, size=dim)
        point = tuple(Q(int(a), int(b)) for a, b in zip(nums, dens))
        if _admissible(point, avoid):
            return point
    raise SamplingExhausted("no admissible point after %d draws" % RETRY_BUDGET)


def sample_panel(seed, dim, count, avoid=(), bound=50, start=0, **kw):
    """Points ``start .. start+count-1`` of the stream keyed by ``seed``."""
    return [sample_point(seed, dim, avoid, bound, index=start + i, **kw) for i in range(count)]


def log_uniform_positive(seed, count, dim, spread=8.0):
    """Positive dyadic rationals with log-uniform magnitudes, as a float array.

    Floats are exact dyadic rationals, so exact re-evaluation is possible.
    """
    rng = _generator(seed, 0x5EED)
    return np.exp(rng.uniform(-spread, spread, size=(count, dim)))
