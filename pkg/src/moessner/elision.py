"""Index maps for striking every (j+1)-st element out of a stream.

keep_index(j, .) enumerates the surviving positions, drop_index(j, .) the
struck ones, and together they partition the naturals. stair and splice_index
describe where the survivors land; both return None at struck positions
(an explicit absence, never a sentinel integer, because callers splice
values at those holes and a fake index would corrupt the splice).
"""

from __future__ import annotations

from typing import Optional

from .errors import PreconditionError


def _check_j(j: int) -> None:
    if j < 1:
        raise PreconditionError(f"period parameter j must be >= 1, got {j}")


def keep_index(j: int, x: int) -> int:
    """Position of the x-th survivor: (j+1)*x // j, equivalently x + x // j."""
    _check_j(j)
    return (j + 1) * x // j


def drop_index(j: int, x: int) -> int:
    """Position of the x-th struck element: (j+1)*x + j."""
    _check_j(j)
    return (j + 1) * x + j


def is_dropped(j: int, x: int) -> bool:
    """True iff position x is struck under period j+1."""
    _check_j(j)
    return x % (j + 1) == j


def stair(j: int, x: int) -> Optional[int]:
    """j * (x // (j+1)) at surviving positions, None at struck ones."""
    _check_j(j)
    if is_dropped(j, x):
        return None
    return j * (x // (j + 1))


def splice_index(j: int, x: int) -> Optional[int]:
    """Rank of a surviving position once the holes are closed up; None if struck.

    Surviving positions enumerate 0, 1, 2, ... in order: j full steps per
    block of j+1 plus the offset inside the block.
    """
    _check_j(j)
    if is_dropped(j, x):
        return None
    return j * (x // (j + 1)) + x % (j + 1)
