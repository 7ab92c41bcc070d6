"""Polygonal numbers as bounded sums of increasing integer quotients.

Two index conventions coexist and both are exposed: quotient_sum uses the
upper bound k*(n+1) and equals polygonal_closed; quotient_sum_shifted uses
k*n and enumerates the familiar named streams (squares, pentagonal numbers,
hexagonal numbers, and for k=1 the triangular numbers).
"""

from __future__ import annotations

from typing import Callable

from .counting import sigma
from .errors import PreconditionError
from .oracles import polygonal_closed  # noqa: F401  (re-exported: the closed-form side)


def _check_k(k: int) -> None:
    if k < 1:
        raise PreconditionError(f"polygonal order parameter k must be >= 1, got {k}")


def quotient_sum(k: int, n: int) -> int:
    """sum_{i=0}^{k*(n+1)} i // k; equals polygonal_closed(k, n)."""
    _check_k(k)
    return sigma(0, k * (n + 1), lambda i: i // k)


def quotient_sum_shifted(k: int, n: int) -> int:
    """sum_{i=0}^{k*n} i // k; 0, 1, then the named polygonal streams."""
    _check_k(k)
    return sigma(0, k * n, lambda i: i // k)


def verify_block_split(x: int, y: int, f: Callable[[int], int]) -> bool:
    """sum_{i=0}^{(x+1)(y+1)} f(i) == sum_{i=0}^{x(y+1)+y} f(i) + f((x+1)(y+1))."""
    lhs = sigma(0, (x + 1) * (y + 1), f)
    rhs = sigma(0, x * (y + 1) + y, f) + f((x + 1) * (y + 1))
    return lhs == rhs


def verify_double_reindex(x: int, y: int, f: Callable[[int], int]) -> bool:
    """sum_{i=0}^{x(y+1)+y} f(i) == sum_{i=0}^{x} sum_{j=0}^{y} f(i(y+1)+j)."""
    lhs = sigma(0, x * (y + 1) + y, f)
    rhs = sigma(0, x, lambda i: sigma(0, y, lambda j: f(i * (y + 1) + j)))
    return lhs == rhs
