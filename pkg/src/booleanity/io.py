"""Plain-text formats for functions on Z_2^n.

Sparse (a spectrum)::

    # x1 - 2 x2 x3 + 3.5 x1 x2
    n=3
    100 1
    011 -2
    110 3.5

Each term line is a point printed as n binary digits, first digit being
coordinate 1 (mask bit 0), then its coefficient.  Dense: the ``n=<int>``
header followed by 2**n values in mask order.  ``#`` lines and blank lines
are ignored in both.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, ParseError, ResourceLimitError
from .hypercube import DENSE_CAP, DenseFunction, SparseFunction, point_from_bits, point_to_bits


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _parse_float(token, lineno):
    try:
        v = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", lineno) from None
    if not math.isfinite(v):
        raise ParseError(f"value must be finite: {token!r}", lineno)
    return v


def parse_function(text: str, cap=DENSE_CAP):
    """Parse either format; returns a :class:`SparseFunction` or :class:`DenseFunction`.

    The body is sparse when its lines have two fields and dense when they
    have one.  A header with no body is the zero spectrum.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input: missing 'n=<int>' header", 1)
    lineno, header = lines[0]
    key, sep, value = header.replace(" ", "").partition("=")
    if key != "n" or not sep:
        raise ParseError(f"expected header 'n=<int>', got {header!r}", lineno)
    try:
        n = int(value)
    except ValueError:
        raise ParseError(f"dimension is not an integer: {value!r}", lineno) from None
    if n < 0:
        raise ParseError(f"dimension must be nonnegative, got {n}", lineno)
    body = lines[1:]
    if not body or len(body[0][1].split()) == 2:
        return _parse_sparse(n, body)
    if n > cap:
        raise ResourceLimitError(f"dense file with n={n} exceeds the cap {cap}")
    return _parse_dense(n, body)


def _parse_sparse(n, body):
    terms = {}
    for lineno, line in body:
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected '<point> <coefficient>', got {line!r}", lineno)
        bits, coef = fields
        if len(bits) != n or any(c not in "01" for c in bits):
            raise ParseError(f"point must be {n} binary digits, got {bits!r}", lineno)
        y = point_from_bits(bits) if n else 0
        terms[y] = terms.get(y, 0.0) + _parse_float(coef, lineno)
    return SparseFunction(n, terms)


def _parse_dense(n, body):
    size = 1 << n
    values = []
    for lineno, line in body:
        fields = line.split()
        if len(fields) != 1:
            raise ParseError(f"dense line must hold one value, got {line!r}", lineno)
        if len(values) == size:
            raise ParseError(f"more than 2^{n} = {size} values", lineno)
        values.append(_parse_float(fields[0], lineno))
    if len(values) != size:
        raise ParseError(f"expected {size} values, found {len(values)}", body[-1][0] + 1)
    return DenseFunction(np.array(values))


def load_function(path, cap=DENSE_CAP):
    return parse_function(Path(path).read_text(), cap)


def format_sparse(f: SparseFunction) -> str:
    lines = [f"n={f.n}"]
    for y in sorted(f.terms):
        lines.append(f"{point_to_bits(y, f.n)} {f.terms[y]!r}")
    return "\n".join(lines) + "\n"


def format_dense(f: DenseFunction) -> str:
    return f"n={f.n}\n" + "".join(f"{v!r}\n" for v in f.values.tolist())


def format_function(f) -> str:
    if isinstance(f, SparseFunction):
        return format_sparse(f)
    if isinstance(f, DenseFunction):
        return format_dense(f)
    raise InvalidArgumentError(f"cannot format {type(f).__name__}")


def save_function(f, path):
    Path(path).write_text(format_function(f))


def parse_config(text: str) -> dict:
    """``key=value`` lines (``#`` comments allowed) into a dict of strings."""
    config = {}
    for lineno, line in _content_lines(text):
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ParseError(f"expected 'key=value', got {line!r}", lineno)
        config[key.strip()] = value.strip()
    return config
