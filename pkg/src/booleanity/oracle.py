"""Black-box point evaluators with a query counter."""
from __future__ import annotations

from typing import Callable, Sequence

from .errors import InvalidArgumentError
from .hypercube import DenseFunction, SparseFunction, check_dimension, sparse_eval


class Oracle:
    """Point-evaluation access to a function on Z_2^n.

    Each call to :meth:`query` counts once, whether or not the point was
    asked before.  Subclasses implement :meth:`_evaluate`, which must be a
    deterministic function of the point.
    """

    def __init__(self, n):
        self.n = check_dimension(n)
        self.query_count = 0

    def query(self, x) -> float:
        if x < 0 or x >> self.n:
            raise InvalidArgumentError(f"mask {x} is not a point of Z_2^{self.n}")
        self.query_count += 1
        return self._evaluate(x)

    __call__ = query

    def _evaluate(self, x) -> float:
        raise NotImplementedError


class FunctionOracle(Oracle):
    """Wraps any Python callable ``mask -> float``."""

    def __init__(self, n, fn: Callable[[int], float]):
        super().__init__(n)
        self._fn = fn

    def _evaluate(self, x):
        return float(self._fn(x))


class DenseOracle(Oracle):
    def __init__(self, f: DenseFunction):
        super().__init__(f.n)
        self.function = f
        self._table = f.values.tolist()

    def _evaluate(self, x):
        return self._table[x]


class SparseOracle(Oracle):
    def __init__(self, f: SparseFunction):
        super().__init__(f.n)
        self.function = f

    def _evaluate(self, x):
        return sparse_eval(self.function, x)


class JuntaOracle(Oracle):
    """A function of the parities ``<x, v_1>, ..., <x, v_m>``.

    The value at ``x`` is ``table[b]`` where bit ``i`` of ``b`` is the parity
    of ``x & directions[i]``.  Its spectrum lies in the span of the
    directions, so it is at most ``2**m``-sparse.
    """

    def __init__(self, n, directions: Sequence[int], table: Sequence[float]):
        super().__init__(n)
        self.directions = tuple(int(v) for v in directions)
        if len(table) != 1 << len(self.directions):
            raise InvalidArgumentError("table length must be 2**len(directions)")
        for v in self.directions:
            if v < 0 or v >> self.n:
                raise InvalidArgumentError(f"direction {v} is not a point of Z_2^{self.n}")
        self.table = [float(t) for t in table]

    def _evaluate(self, x):
        b = 0
        for i, v in enumerate(self.directions):
            b |= ((x & v).bit_count() & 1) << i
        return self.table[b]
