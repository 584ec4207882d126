"""Shared fixtures and brute-force reference computations.

The ``brute_*`` helpers are written straight from the definitions with
Python ints and loops; they never touch the butterfly code they check.
"""
import math

import numpy as np
import pytest

from booleanity import DenseFunction, SparseFunction, point_from_bits


def brute_chi(y, x):
    return -1 if bin(x & y).count("1") % 2 else 1


def brute_forward(values):
    size = len(values)
    return [sum(values[y] * brute_chi(y, x) for y in range(size)) / size for x in range(size)]


def brute_inverse(spectrum):
    size = len(spectrum)
    return [sum(spectrum[y] * brute_chi(y, x) for y in range(size)) for x in range(size)]


def brute_convolve(f, g):
    size = len(f)
    return [sum(f[y] * g[x ^ y] for y in range(size)) for x in range(size)]


def brute_entropy(values):
    return -sum(v * v * math.log2(v * v) for v in values if v != 0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def intro_poly():
    """x1 - 2 x2 x3 + 3.5 x1 x2 on n = 3."""
    return SparseFunction(3, {point_from_bits("100"): 1.0, point_from_bits("011"): -2.0,
                              point_from_bits("110"): 3.5})


def x1_plus_x2():
    return DenseFunction.character(2, 1) + DenseFunction.character(2, 2)


def majority3():
    return SparseFunction(3, {1: 0.5, 2: 0.5, 4: 0.5, 7: -0.5})


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, passed, detail)."""

    def record(number, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
