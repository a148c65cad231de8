"""Boolean functions: named families and explicit truth tables.

The named families are the symmetric counting functions (EXACT, notEXACT,
MOD, AND) and the permutation-matrix test notPERM.  Named instances
evaluate by counting (no table materialisation), so they stay usable
above the enumeration cap; table-backed operations are capped.

notPERM reads its n = m*m input bits in row-major order: bit position
(i-1)*m + j is entry (i, j) of the 0-1 matrix.
"""

from __future__ import annotations

import numpy as np

from . import bits as bt
from .config import check_enumerable


class BooleanFunction:
    """An n-ary Boolean function; immutable."""

    def __init__(self, n: int, kind: str, *, k=None, p=None, m=None, table=None):
        self.n = n
        self.kind = kind
        self.k = k
        self.p = p
        self.m = m
        if table is not None:
            table = np.asarray(table, dtype=np.uint8)
            if table.shape != (1 << n,):
                raise ValueError(f"table must have 2^{n} entries")
        self._table = table

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_table(cls, table) -> "BooleanFunction":
        if isinstance(table, str):
            table = [int(c) for c in table]
        size = len(table)
        n = size.bit_length() - 1
        if 1 << n != size:
            raise ValueError(f"table length {size} is not a power of two")
        return cls(n, "table", table=table)

    @classmethod
    def constant(cls, n: int, value: int) -> "BooleanFunction":
        check_enumerable(n, "constant-function table")
        return cls(n, "table", table=np.full(1 << n, 1 if value else 0, np.uint8))

    @classmethod
    def exact(cls, n: int, k: int) -> "BooleanFunction":
        """1 iff the input has exactly k ones."""
        if not 0 <= k <= n:
            raise ValueError(f"EXACT requires 0 <= k <= n, got k={k}, n={n}")
        return cls(n, "exact", k=k)

    @classmethod
    def not_exact(cls, n: int, k: int) -> "BooleanFunction":
        """1 iff the input does not have exactly k ones."""
        if not 0 <= k <= n:
            raise ValueError(f"notEXACT requires 0 <= k <= n, got k={k}, n={n}")
        return cls(n, "notexact", k=k)

    @classmethod
    def mod(cls, n: int, p: int) -> "BooleanFunction":
        """1 iff the number of ones is divisible by p."""
        if not 1 <= p <= n:
            raise ValueError(f"MOD requires 1 <= p <= n, got p={p}, n={n}")
        return cls(n, "mod", p=p)

    @classmethod
    def and_(cls, n: int) -> "BooleanFunction":
        """1 iff all bits are 1."""
        if n < 1:
            raise ValueError("AND requires n >= 1")
        return cls(n, "and")

    @classmethod
    def not_perm(cls, m: int) -> "BooleanFunction":
        """1 iff the m*m input, read row-major, is NOT a permutation matrix."""
        if m < 1:
            raise ValueError("notPERM requires m >= 1")
        return cls(m * m, "notperm", m=m)

    # -- evaluation -----------------------------------------------------

    def evaluate(self, sigma: str) -> int:
        bt.check_bits(sigma, self.n)
        if self.kind == "table":
            return int(self._table[bt.bits_to_index(sigma)])
        if self.kind == "exact":
            return 1 if bt.weight(sigma) == self.k else 0
        if self.kind == "notexact":
            return 0 if bt.weight(sigma) == self.k else 1
        if self.kind == "mod":
            return 1 if bt.weight(sigma) % self.p == 0 else 0
        if self.kind == "and":
            return 1 if bt.weight(sigma) == self.n else 0
        if self.kind == "notperm":
            return 0 if self._is_perm(sigma) else 1
        raise AssertionError(self.kind)

    __call__ = evaluate

    def _is_perm(self, sigma: str) -> bool:
        m = self.m
        for i in range(m):
            if sigma[i * m:(i + 1) * m].count("1") != 1:
                return False
            if sigma[i::m].count("1") != 1:
                return False
        return True

    # -- tables and restriction ------------------------------------------

    def table(self) -> np.ndarray:
        """The full truth table as a uint8 array of length 2^n.

        Entry ``i`` is the value on the input whose binary expansion is
        ``i`` (bit 1 most significant).
        """
        if self._table is not None:
            return self._table
        check_enumerable(self.n, f"truth table of {self.name()}")
        n = self.n
        if self.kind in ("exact", "notexact", "mod", "and"):
            idx = np.arange(1 << n, dtype=np.int64)
            counts = np.zeros(1 << n, dtype=np.uint8)
            for shift in range(n):
                counts += ((idx >> shift) & 1).astype(np.uint8)
            if self.kind == "exact":
                out = (counts == self.k)
            elif self.kind == "notexact":
                out = (counts != self.k)
            elif self.kind == "mod":
                out = (counts % self.p == 0)
            else:
                out = (counts == n)
            table = out.astype(np.uint8)
        else:
            table = np.fromiter(
                (self.evaluate(s) for s in bt.all_inputs(n)),
                dtype=np.uint8, count=1 << n,
            )
        self._table = table
        return table

    def restrict(self, order, prefix: str) -> "BooleanFunction":
        """The subfunction after assigning ``prefix`` to the first
        ``len(prefix)`` positions of ``order``.

        The result is a table-backed function of the remaining n-k
        variables, taken in order.
        """
        order = bt.check_order(order, self.n)
        k = len(prefix)
        if not 0 < k < self.n:
            raise ValueError(f"cut must satisfy 0 < k < n, got k={k}, n={self.n}")
        bt.check_bits(prefix, k)
        rest = self.n - k
        check_enumerable(rest, "subfunction table")
        table = [
            self.evaluate(bt.scatter(order, prefix, gamma))
            for gamma in bt.all_inputs(rest)
        ]
        return BooleanFunction.from_table(table)

    def name(self) -> str:
        if self.kind == "exact":
            return f"EXACT^{self.k}_{self.n}"
        if self.kind == "notexact":
            return f"notEXACT^{self.k}_{self.n}"
        if self.kind == "mod":
            return f"MOD^{self.p}_{self.n}"
        if self.kind == "and":
            return f"AND_{self.n}"
        if self.kind == "notperm":
            return f"notPERM_{self.n}"
        return f"table_{self.n}"

    def __repr__(self):
        return f"BooleanFunction({self.name()})"

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        if self.n != other.n:
            return False
        return bool(np.array_equal(self.table(), other.table()))

    def __hash__(self):
        return hash((self.n, self.table().tobytes()))


def distinguishes(f: BooleanFunction, order, cut: int,
                  gamma: str, sigma: str, sigma_prime: str) -> bool:
    """True iff gamma separates sigma from sigma_prime at the cut:
    the completion of sigma evaluates to 1 and the completion of
    sigma_prime evaluates to 0.  Not symmetric."""
    order = bt.check_order(order, f.n)
    bt.check_bits(sigma, cut)
    bt.check_bits(sigma_prime, cut)
    bt.check_bits(gamma, f.n - cut)
    return (
        f.evaluate(bt.scatter(order, sigma, gamma)) == 1
        and f.evaluate(bt.scatter(order, sigma_prime, gamma)) == 0
    )
