"""Functions on the hypercube Z_2^n and the measures defined on them.

Points of Z_2^n are plain Python ints (bit masks).  Bit ``j`` of a mask
holds coordinate ``j + 1``; a clear bit is the hypercube value +1 and a
set bit is -1, so the group operation is XOR and the character
``chi_y(x)`` is ``(-1) ** popcount(x & y)``.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError

#: Largest dimension for which dense arrays are materialized by default
#: (2**26 doubles = 512 MiB).
DENSE_CAP = 26

#: Sparse coefficients with smaller magnitude are dropped on construction.
COEFFICIENT_THRESHOLD = 1e-12

#: Default membership radius of a :class:`ValueSet`.
MEMBERSHIP_TOL = 1e-9

#: Default magnitude threshold for counting support under float arithmetic.
SUPPORT_TOL = 1e-9

# above this many terms to_dense switches from direct summation to the butterfly
_DIRECT_EVAL_MAX_TERMS = 64


def check_dimension(n, cap=None):
    """Validate ``n`` as a dimension, optionally against a dense cap."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidArgumentError(f"dimension must be a nonnegative integer, got {n!r}")
    n = int(n)
    if cap is not None and n > cap:
        raise ResourceLimitError(f"dimension n={n} exceeds the dense cap {cap}")
    return n


def check_point(x, n):
    """Validate ``x`` as a mask in Z_2^n and return it as an int."""
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise InvalidArgumentError(f"group point must be an integer mask, got {x!r}")
    x = int(x)
    if x < 0 or x >> n:
        raise InvalidArgumentError(f"mask {x} is not a point of Z_2^{n}")
    return x


def point_from_bits(bits: str) -> int:
    """Parse a printed point such as ``"100"`` (first digit is coordinate 1).

    >>> point_from_bits("100"), point_from_bits("011")
    (1, 6)
    """
    if not bits or any(c not in "01" for c in bits):
        raise InvalidArgumentError(f"not a binary point: {bits!r}")
    return sum(1 << j for j, c in enumerate(bits) if c == "1")


def point_to_bits(x: int, n: int) -> str:
    """Inverse of :func:`point_from_bits` for a point of Z_2^n."""
    return "".join("1" if (x >> j) & 1 else "0" for j in range(n))


def parity(masks):
    """Popcount parity (0 or 1) of an integer array, elementwise."""
    return np.bitwise_count(np.asarray(masks)) & 1


def character_vector(y: int, n: int) -> np.ndarray:
    """Dense values of ``chi_y`` over all of Z_2^n, as float64."""
    x = np.arange(1 << n, dtype=np.int64)
    return 1.0 - 2.0 * parity(x & y)


class DenseFunction:
    """A real function on Z_2^n stored as its table of 2**n values.

    The table is copied on construction and made read-only, so instances
    can be shared freely.
    """

    __slots__ = ("n", "values")

    def __init__(self, values, n=None):
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 1:
            raise InvalidArgumentError("values must be one-dimensional")
        size = arr.shape[0]
        if size == 0 or size & (size - 1):
            raise InvalidArgumentError(f"table length {size} is not a power of two")
        inferred = size.bit_length() - 1
        if n is not None and check_dimension(n) != inferred:
            raise InvalidArgumentError(f"table length {size} does not match n={n}")
        if not np.all(np.isfinite(arr)):
            raise InvalidArgumentError("function values must be finite")
        arr.setflags(write=False)
        self.n = inferred
        self.values = arr

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros(1 << check_dimension(n, DENSE_CAP)))

    @classmethod
    def constant(cls, n, c=1.0):
        return cls(np.full(1 << check_dimension(n, DENSE_CAP), float(c)))

    @classmethod
    def delta(cls, n):
        """The unit impulse at the identity, which is the spectrum of 1."""
        v = np.zeros(1 << check_dimension(n, DENSE_CAP))
        v[0] = 1.0
        return cls(v)

    @classmethod
    def character(cls, n, y):
        n = check_dimension(n, DENSE_CAP)
        return cls(character_vector(check_point(y, n), n))

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, x):
        return float(self.values[x])

    def __add__(self, other):
        _same_dimension(self, other)
        return DenseFunction(self.values + other.values)

    def __sub__(self, other):
        _same_dimension(self, other)
        return DenseFunction(self.values - other.values)

    def __neg__(self):
        return DenseFunction(-self.values)

    def __mul__(self, c):
        if isinstance(c, DenseFunction):
            return pointwise_product(self, c)
        return DenseFunction(self.values * float(c))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return DenseFunction(self.values / float(c))

    def __eq__(self, other):
        if not isinstance(other, DenseFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None

    def allclose(self, other, atol=1e-12):
        _same_dimension(self, other)
        return bool(np.max(np.abs(self.values - other.values)) <= atol)

    def __repr__(self):
        return f"DenseFunction(n={self.n}, values={np.array2string(self.values, threshold=8)})"


class SparseFunction:
    """A Fourier spectrum ``{mask: coefficient}``, i.e. a multilinear polynomial.

    Coefficients below :data:`COEFFICIENT_THRESHOLD` in magnitude are dropped,
    so ``len(f)`` is the sparsity.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        self.n = check_dimension(n)
        items = terms.items() if isinstance(terms, Mapping) else terms
        canon = {}
        for y, c in items:
            y = check_point(y, self.n)
            c = float(c)
            if not math.isfinite(c):
                raise InvalidArgumentError(f"coefficient of {y} is not finite")
            canon[y] = canon.get(y, 0.0) + c
        self.terms = {y: c for y, c in canon.items() if abs(c) >= COEFFICIENT_THRESHOLD}

    @property
    def sparsity(self):
        return len(self.terms)

    def __len__(self):
        return len(self.terms)

    def __call__(self, x):
        return sparse_eval(self, x)

    def __eq__(self, other):
        if not isinstance(other, SparseFunction):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{point_to_bits(y, self.n)}: {c:g}" for y, c in self.terms.items())
        return f"SparseFunction(n={self.n}, {{{body}}})"


class ValueSet:
    """A finite target set D of reals with a membership radius."""

    __slots__ = ("elements", "tolerance")

    def __init__(self, elements, tolerance=MEMBERSHIP_TOL):
        elems = tuple(sorted(float(e) for e in elements))
        if not elems:
            raise InvalidArgumentError("value set must be nonempty")
        if tolerance < 0:
            raise InvalidArgumentError("tolerance must be nonnegative")
        if not all(math.isfinite(e) for e in elems):
            raise InvalidArgumentError("value set elements must be finite")
        gaps = np.diff(elems)
        if gaps.size and gaps.min() <= 2 * tolerance:
            raise InvalidArgumentError("value set elements must be separated by more than 2*tolerance")
        self.elements = elems
        self.tolerance = float(tolerance)

    @classmethod
    def boolean(cls, tolerance=MEMBERSHIP_TOL):
        return cls((-1.0, 1.0), tolerance)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v):
        return any(abs(v - e) <= self.tolerance for e in self.elements)

    def outside_mask(self, values) -> np.ndarray:
        """Boolean array marking values farther than the radius from every element."""
        values = np.asarray(values, dtype=np.float64)
        out = np.ones(values.shape, dtype=bool)
        for e in self.elements:
            out &= np.abs(values - e) > self.tolerance
        return out

    def __repr__(self):
        return f"ValueSet({list(self.elements)}, tolerance={self.tolerance:g})"


def _same_dimension(f, g):
    if f.n != g.n:
        raise InvalidArgumentError(f"dimension mismatch: {f.n} != {g.n}")


def char_eval(y, x, n) -> int:
    """Evaluate the character ``chi_y`` at ``x``; returns +1 or -1."""
    n = check_dimension(n)
    y = check_point(y, n)
    x = check_point(x, n)
    return -1 if (x & y).bit_count() & 1 else 1


def sparse_eval(f: SparseFunction, x) -> float:
    """Evaluate the Fourier expansion of ``f`` at the point ``x``."""
    x = check_point(x, f.n)
    total = 0.0
    for y, c in f.terms.items():
        total += -c if (x & y).bit_count() & 1 else c
    return total


def to_dense(f: SparseFunction, cap=DENSE_CAP) -> DenseFunction:
    """Tabulate ``f`` on all 2**n points.

    Up to 64 terms the table is accumulated term by term in the same order
    as :func:`sparse_eval`, so the two agree bit for bit.  Denser spectra go
    through the inverse transform instead.
    """
    n = check_dimension(f.n, cap)
    if len(f.terms) > _DIRECT_EVAL_MAX_TERMS:
        from .wht import fwht

        spec = np.zeros(1 << n)
        for y, c in f.terms.items():
            spec[y] = c
        return DenseFunction(fwht(spec))
    x = np.arange(1 << n, dtype=np.int64)
    values = np.zeros(1 << n)
    for y, c in f.terms.items():
        values += np.where(parity(x & y) == 1, -c, c)
    return DenseFunction(values)


def dense_spectrum_to_sparse(fhat: DenseFunction, tol=COEFFICIENT_THRESHOLD) -> SparseFunction:
    """Collect the entries of a dense spectrum with magnitude above ``tol``."""
    idx = np.flatnonzero(np.abs(fhat.values) > tol)
    return SparseFunction(fhat.n, {int(i): float(fhat.values[i]) for i in idx})


def l2_norm(f: DenseFunction) -> float:
    """Euclidean norm of the value table (a sum over points, not a mean)."""
    return float(np.sqrt(np.sum(f.values * f.values)))


def support(f: DenseFunction, tol=0.0) -> set[int]:
    """Points where ``|f(x)| > tol``."""
    if tol < 0:
        raise InvalidArgumentError("tol must be nonnegative")
    return {int(i) for i in np.flatnonzero(np.abs(f.values) > tol)}


def support_size(f: DenseFunction, tol=0.0) -> int:
    if tol < 0:
        raise InvalidArgumentError("tol must be nonnegative")
    return int(np.count_nonzero(np.abs(f.values) > tol))


def entropy_of_values(values, axis=-1):
    """``-sum v^2 log2 v^2`` along ``axis``, taking 0 log 0 = 0."""
    p = np.square(np.asarray(values, dtype=np.float64))
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -np.sum(terms, axis=axis)


def entropy(f: DenseFunction) -> float:
    """Entropy of the squared values of ``f``; callers normalize first."""
    return float(entropy_of_values(f.values))


def normalized(f: DenseFunction) -> DenseFunction:
    norm = l2_norm(f)
    if norm == 0:
        raise InvalidArgumentError("cannot normalize the zero function")
    return f / norm


def boolean_distance(f: DenseFunction) -> float:
    """Root-mean-square distance of ``f**2`` from the constant 1."""
    sq = f.values * f.values - 1.0
    return float(np.sqrt(np.mean(sq * sq)))


def non_boolean_fraction(f: DenseFunction, D: ValueSet | Iterable[float] | None = None) -> float:
    """Fraction of points whose value lies outside ``D`` (default {-1, 1})."""
    if D is None:
        D = ValueSet.boolean()
    elif not isinstance(D, ValueSet):
        D = ValueSet(D)
    return float(np.mean(D.outside_mask(f.values)))


def pointwise_product(f: DenseFunction, g: DenseFunction) -> DenseFunction:
    _same_dimension(f, g)
    return DenseFunction(f.values * g.values)
