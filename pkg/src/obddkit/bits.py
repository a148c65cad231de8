"""Bit strings and variable orders.

Inputs are plain strings over {'0','1'}; positions are 1-based
throughout (bit 1 is the leftmost character), and an input of length n
read as a binary number has bit 1 most significant.  A variable order
is a tuple permutation of (1, ..., n): the j-th level of a program
tests the variable at ``order[j-1]``.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence, Tuple

Order = Tuple[int, ...]


def check_bits(sigma: str, length: int | None = None) -> str:
    if not isinstance(sigma, str) or any(c not in "01" for c in sigma):
        raise ValueError(f"not a bit string: {sigma!r}")
    if length is not None and len(sigma) != length:
        raise ValueError(f"expected {length} bits, got {len(sigma)}: {sigma!r}")
    return sigma


def bit_at(sigma: str, i: int) -> int:
    """The i-th bit, 1-based."""
    return int(sigma[i - 1])


def weight(sigma: str) -> int:
    """Number of 1s."""
    return sigma.count("1")


def bits_to_index(sigma: str) -> int:
    """Index of sigma in the truth table (bit 1 most significant)."""
    return int(sigma, 2) if sigma else 0


def index_to_bits(index: int, n: int) -> str:
    return format(index, f"0{n}b") if n else ""


def all_inputs(n: int) -> Iterable[str]:
    for index in range(1 << n):
        yield index_to_bits(index, n)


def natural_order(n: int) -> Order:
    return tuple(range(1, n + 1))


def check_order(order: Sequence[int], n: int) -> Order:
    order = tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {order}")
    return order


def all_orders(n: int) -> Iterable[Order]:
    return permutations(range(1, n + 1))


def scatter(order: Order, prefix: str, suffix: str) -> str:
    """Assemble a full input from a prefix on the first ``len(prefix)``
    order positions and a suffix on the remaining ones."""
    n = len(order)
    k = len(prefix)
    if k + len(suffix) != n:
        raise ValueError(
            f"prefix ({k}) + suffix ({len(suffix)}) must cover {n} variables"
        )
    out = [""] * n
    for j, var in enumerate(order):
        out[var - 1] = prefix[j] if j < k else suffix[j - k]
    return "".join(out)
