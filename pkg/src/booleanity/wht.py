"""Walsh-Hadamard transform and convolution over Z_2^n.

The forward transform carries the whole 1/2**n factor and the inverse is
unnormalized::

    fhat(x) = 2**-n * sum_y f(y) chi_y(x)        f(x) = sum_y fhat(y) chi_y(x)

With this pair ``(f * g)^ = 2**n * fhat * ghat`` and ``(f g)^ = fhat * ghat``.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .hypercube import DenseFunction

#: Largest dimension accepted by :func:`convolve_naive` (4**n work).
NAIVE_CAP = 14


def fwht_inplace(a: np.ndarray) -> np.ndarray:
    """Unnormalized butterfly transform of ``a`` along its last axis, in place.

    Stage ``j`` combines the pairs of entries whose index differs only in
    bit ``j``; stages run in ascending bit order.  ``a`` must be a writable
    float array whose last axis has length 2**n; the caller owns it for
    the duration of the call.
    """
    size = a.shape[-1]
    if size & (size - 1):
        raise InvalidArgumentError(f"last axis length {size} is not a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        view = a.reshape(*lead, size // (2 * h), 2, h)
        lo = view[..., 0, :]
        hi = view[..., 1, :]
        tmp = lo - hi
        lo += hi
        hi[...] = tmp
        h *= 2
    return a


def fwht(values, axis=-1) -> np.ndarray:
    """Unnormalized transform (the inverse direction) on a fresh copy."""
    a = np.array(values, dtype=np.float64)
    if axis not in (-1, a.ndim - 1):
        a = np.moveaxis(a, axis, -1)
        return np.moveaxis(fwht_inplace(np.ascontiguousarray(a)), -1, axis)
    return fwht_inplace(a)


def forward_array(values) -> np.ndarray:
    """:func:`wht_forward` on raw arrays, batched over leading axes."""
    a = fwht(values)
    a /= a.shape[-1]
    return a


def convolve_array(f, g) -> np.ndarray:
    """XOR convolution of arrays along the last axis via the transform."""
    fh = fwht(f)
    fh *= fwht(g)
    fwht_inplace(fh)
    fh /= fh.shape[-1]
    return fh


def wht_forward(f: DenseFunction) -> DenseFunction:
    """Fourier transform, normalized by 1/2**n."""
    return DenseFunction(forward_array(f.values))


def wht_inverse(fhat: DenseFunction) -> DenseFunction:
    """Fourier expansion: sum the characters weighted by the spectrum."""
    return DenseFunction(fwht(fhat.values))


def _check_pair(f, g):
    if f.n != g.n:
        raise InvalidArgumentError(f"dimension mismatch: {f.n} != {g.n}")


def convolve_naive(f: DenseFunction, g: DenseFunction, cap=NAIVE_CAP) -> DenseFunction:
    """``[f*g](x) = sum_y f(y) g(x ^ y)`` straight from the definition, O(4**n)."""
    _check_pair(f, g)
    if f.n > cap:
        raise ResourceLimitError(f"naive convolution capped at n={cap}, got n={f.n}")
    size = len(f)
    idx = np.arange(size, dtype=np.int64)
    out = np.empty(size)
    rows = max(1, (1 << 22) // size)
    for start in range(0, size, rows):
        x = idx[start:start + rows, None]
        out[start:start + rows] = g.values[x ^ idx[None, :]] @ f.values
    return DenseFunction(out)


def convolve_fast(f: DenseFunction, g: DenseFunction) -> DenseFunction:
    """Convolution through the transform: forward, multiply, scale by 2**n, inverse."""
    _check_pair(f, g)
    fh = forward_array(f.values)
    gh = forward_array(g.values)
    prod = fh * gh * len(f)
    return DenseFunction(fwht(prod))


def self_convolution_power(f: DenseFunction, k: int) -> DenseFunction:
    """``f^(k)``: ``f`` convolved with itself ``k`` times, ``f^(0) = delta``."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise InvalidArgumentError(f"power must be a nonnegative integer, got {k!r}")
    result = DenseFunction.delta(f.n)
    for _ in range(int(k)):
        result = convolve_fast(f, result)
    return result

