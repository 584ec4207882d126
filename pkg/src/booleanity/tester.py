"""Randomized sublinear testers for Booleanity and for image-in-set."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import InvalidArgumentError
from .hypercube import ValueSet
from .oracle import Oracle
from .rng import fresh_seed, make_rng

_CHUNK = 4096


def sample_count(k, d, eps) -> int:
    """Number of uniform samples ``ceil((k+d)**d / d! * ln(1/eps))``.

    For ``d = 2`` this is ``ceil(0.5 (k+2)**2 ln(1/eps))``.  The product is
    formed in exact rationals (``ln(1/eps)`` enters as its float value), so
    the ceiling never overshoots through rounding and huge arguments cannot
    overflow.
    """
    for name, v in (("k", k), ("d", d)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise InvalidArgumentError(f"{name} must be a positive integer, got {v!r}")
    if not 0 < eps < 1:
        raise InvalidArgumentError(f"eps must lie in (0, 1), got {eps!r}")
    ratio = Fraction((k + d) ** d, math.factorial(d))
    return math.ceil(ratio * Fraction(-math.log(eps)))


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    witness: tuple[int, float] | None
    queries_used: int
    seed: int
    budget: int

    def to_dict(self):
        d = asdict(self)
        d["witness"] = None if self.witness is None else {"point": self.witness[0], "value": self.witness[1]}
        return d


def _run(oracle: Oracle, budget: int, outside, seed) -> Verdict:
    if seed is None:
        seed = fresh_seed()
    rng = make_rng(seed)
    upper = 1 << oracle.n
    start = oracle.query_count
    remaining = budget
    while remaining:
        chunk = min(remaining, _CHUNK)
        remaining -= chunk
        for x in rng.integers(0, upper, size=chunk).tolist():
            v = oracle.query(x)
            if outside(v):
                return Verdict(False, (x, v), oracle.query_count - start, seed, budget)
    return Verdict(True, None, oracle.query_count - start, seed, budget)


def test_image_in_set(oracle: Oracle, k: int, D, eps: float, seed=None) -> Verdict:
    """Test whether a k-sparse oracle maps every point into ``D``.

    Draws ``sample_count(k, |D|, eps)`` uniform points with replacement and
    rejects at the first value outside ``D``, which is reported as the
    witness.  Functions with image in ``D`` are always accepted; any other
    k-sparse function is rejected with probability at least ``1 - eps``.
    Sparsity is a promise and is not checked.
    """
    if not isinstance(D, ValueSet):
        D = ValueSet(D)
    budget = sample_count(k, len(D), eps)
    elements, tol = D.elements, D.tolerance

    def outside(v):
        for e in elements:
            if abs(v - e) <= tol:
                return False
        return True

    return _run(oracle, budget, outside, seed)


def test_booleanity(oracle: Oracle, k: int, eps: float, seed=None, tolerance=None) -> Verdict:
    """:func:`test_image_in_set` with ``D = {-1, 1}``."""
    D = ValueSet.boolean() if tolerance is None else ValueSet.boolean(tolerance)
    return test_image_in_set(oracle, k, D, eps, seed)


# keep pytest from collecting the public testers as test functions
test_image_in_set.__test__ = False
test_booleanity.__test__ = False
