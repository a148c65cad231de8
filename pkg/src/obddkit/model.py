"""Leveled-program model: transition matrices, state vectors, programs.

One container covers all the semantics (deterministic, reversible,
nondeterministic, probabilistic, unitary): a program of width d over n
variables holds one (on-0, on-1) matrix pair per level, an initial
state, and an accepting subset of the d basis states.

Matrices and states are kept in *structured* form so the exact backend
never has to add unrelated irrational amplitudes:

* rational matrices (covers 0-1 transition functions, permutations and
  stochastic matrices) act on rational / basis / subset states by exact
  fraction arithmetic;
* 2x2 rotations by rational multiples of pi act on unit vectors stored
  as an angle, turning evolution into integer angle addition;
* block-diagonal matrices act blockwise on weighted block states
  (direct sums);
* Kronecker matrices act factorwise on product states (tensor
  products).

Every structured object can still materialise its exact entry grid and
a float shadow, so generic code sees the plain "grid of scalars" view.

State indices are 0-based internally; the on-disk format and all
rendered output use the 1-based labels q1..qd.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from typing import Optional, Sequence, Tuple

import numpy as np

from . import bits as bt
from .scalars import ONE, ZERO, ExactProbability, ExactScalar

FloatArray = np.ndarray

# Rational unit pairs (cos, sin) that can be folded into an angle state:
# the four axis directions, i.e. angles 0, pi/2, pi, 3pi/2.
_AXIS_ANGLES = {
    (Fraction(1), Fraction(0)): Fraction(0),
    (Fraction(0), Fraction(1)): Fraction(1, 2),
    (Fraction(-1), Fraction(0)): Fraction(1),
    (Fraction(0), Fraction(-1)): Fraction(3, 2),
}


class Semantics(enum.Enum):
    DETERMINISTIC = "deterministic"
    REVERSIBLE = "reversible"
    NONDETERMINISTIC = "nondeterministic"
    PROBABILISTIC = "probabilistic"
    UNITARY = "unitary"


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Base class; subclasses are immutable value objects."""

    rows: int
    cols: int

    def entry(self, r: int, c: int) -> ExactScalar:
        raise NotImplementedError

    def entries(self) -> Tuple[Tuple[ExactScalar, ...], ...]:
        return tuple(
            tuple(self.entry(r, c) for c in range(self.cols))
            for r in range(self.rows)
        )

    def to_floats(self) -> FloatArray:
        """Float shadow of the exact entries."""
        return np.array(
            [[float(self.entry(r, c)) for c in range(self.cols)]
             for r in range(self.rows)],
            dtype=np.float64,
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.entries() == other.entries()

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries()))


class RationalMatrix(Matrix):
    """Dense matrix with rational entries."""

    def __init__(self, entries: Sequence[Sequence]):
        self.grid = tuple(
            tuple(Fraction(x) for x in row) for row in entries
        )
        self.rows = len(self.grid)
        self.cols = len(self.grid[0]) if self.grid else 0
        if any(len(row) != self.cols for row in self.grid):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, d: int) -> "RationalMatrix":
        return cls([[1 if r == c else 0 for c in range(d)] for r in range(d)])

    @classmethod
    def from_column_map(cls, d: int, col_to_row) -> "RationalMatrix":
        """0-1 matrix sending basis state c to basis state col_to_row[c]."""
        grid = [[0] * d for _ in range(d)]
        for c in range(d):
            grid[col_to_row[c]][c] = 1
        return cls(grid)

    def entry(self, r, c):
        return ExactScalar(self.grid[r][c])

    def is_zero_one(self) -> bool:
        return all(x in (0, 1) for row in self.grid for x in row)

    def column_map(self) -> Optional[Tuple[int, ...]]:
        """For a 0-1 matrix with exactly one 1 per column, the map
        column -> row; otherwise None."""
        if not self.is_zero_one() or self.rows != self.cols:
            return None
        out = []
        for c in range(self.cols):
            hits = [r for r in range(self.rows) if self.grid[r][c] == 1]
            if len(hits) != 1:
                return None
            out.append(hits[0])
        return tuple(out)

    def is_permutation(self) -> bool:
        cm = self.column_map()
        return cm is not None and len(set(cm)) == self.rows

    def is_column_stochastic(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            all(self.grid[r][c] >= 0 for r in range(self.rows))
            and sum(self.grid[r][c] for r in range(self.rows)) == 1
            for c in range(self.cols)
        )

    def is_orthogonal(self) -> bool:
        """Exact check of M^T M = I."""
        if self.rows != self.cols:
            return False
        d = self.rows
        for i in range(d):
            for j in range(i, d):
                dot = sum(self.grid[r][i] * self.grid[r][j] for r in range(d))
                if dot != (1 if i == j else 0):
                    return False
        return True

    def axis_rotation(self) -> Optional[Fraction]:
        """If this is a rotation by a multiple of pi/2, that angle
        (in multiples of pi); otherwise None."""
        if (self.rows, self.cols) != (2, 2):
            return None
        a, b = self.grid[0][0], self.grid[1][0]
        if self.grid[0][1] != -b or self.grid[1][1] != a:
            return None
        return _AXIS_ANGLES.get((a, b))

    def axis_reflection(self) -> Optional[Fraction]:
        """If this is [[cos t, sin t], [sin t, -cos t]] for t a multiple
        of pi/2, that t; such a matrix maps the unit vector at angle x
        to the unit vector at angle t - x."""
        if (self.rows, self.cols) != (2, 2):
            return None
        a, b = self.grid[0][0], self.grid[1][0]
        if self.grid[0][1] != b or self.grid[1][1] != -a:
            return None
        return _AXIS_ANGLES.get((a, b))


class Rotation2(Matrix):
    """2x2 rotation by pi * angle (counter-clockwise)."""

    rows = cols = 2

    def __init__(self, angle):
        self.angle = Fraction(angle) % 2

    def entry(self, r, c):
        cos = ExactScalar.cospi(self.angle)
        sin = ExactScalar.sinpi(self.angle)
        return ((cos, -sin), (sin, cos))[r][c]


class BlockDiagMatrix(Matrix):
    """Direct sum of square blocks."""

    def __init__(self, blocks: Sequence[Matrix]):
        self.blocks = tuple(blocks)
        if any(b.rows != b.cols for b in self.blocks):
            raise ValueError("blocks must be square")
        self.rows = self.cols = sum(b.rows for b in self.blocks)

    def entry(self, r, c):
        offset = 0
        for b in self.blocks:
            if r < offset + b.rows:
                if offset <= c < offset + b.rows:
                    return b.entry(r - offset, c - offset)
                return ZERO
            offset += b.rows
        raise IndexError((r, c))


class KronMatrix(Matrix):
    """Kronecker product of square factors (first factor most
    significant in the index)."""

    def __init__(self, factors: Sequence[Matrix]):
        self.factors = tuple(factors)
        if any(f.rows != f.cols for f in self.factors):
            raise ValueError("factors must be square")
        self.rows = self.cols = 1
        for f in self.factors:
            self.rows *= f.rows
        self.cols = self.rows

    def entry(self, r, c):
        value = ONE
        for f in reversed(self.factors):
            value = value * f.entry(r % f.rows, c % f.cols)
            r //= f.rows
            c //= f.cols
        return value

    def materialize_rational(self) -> Optional[RationalMatrix]:
        """Flatten to a RationalMatrix when every factor is rational."""
        if not all(isinstance(f, RationalMatrix) for f in self.factors):
            return None
        grid = [[Fraction(1)]]
        for f in self.factors:
            grid = [
                [a * b for a in row_a for b in row_b]
                for row_a in grid for row_b in f.grid
            ]
        return RationalMatrix(grid)


class DenseMatrix(Matrix):
    """Escape hatch: an explicit grid of exact scalars.  Exact
    application is attempted entrywise and may raise if sums of
    unrelated irrational terms appear."""

    def __init__(self, entries: Sequence[Sequence[ExactScalar]]):
        self.grid = tuple(tuple(row) for row in entries)
        self.rows = len(self.grid)
        self.cols = len(self.grid[0]) if self.grid else 0

    def entry(self, r, c):
        return self.grid[r][c]


def as_rational_matrix(mat: Matrix) -> Optional[RationalMatrix]:
    """Flatten structured matrices with rational entries; None if the
    matrix has irrational entries."""
    if isinstance(mat, RationalMatrix):
        return mat
    if isinstance(mat, KronMatrix):
        return mat.materialize_rational()
    if isinstance(mat, BlockDiagMatrix):
        blocks = [as_rational_matrix(b) for b in mat.blocks]
        if any(b is None for b in blocks):
            return None
        grid = [[Fraction(0)] * mat.cols for _ in range(mat.rows)]
        off = 0
        for b in blocks:
            for r in range(b.rows):
                for c in range(b.cols):
                    grid[off + r][off + c] = b.grid[r][c]
            off += b.rows
        return RationalMatrix(grid)
    if isinstance(mat, Rotation2):
        axis = {Fraction(0): ((1, 0), (0, 1)),
                Fraction(1, 2): ((0, -1), (1, 0)),
                Fraction(1): ((-1, 0), (0, -1)),
                Fraction(3, 2): ((0, 1), (-1, 0))}.get(mat.angle)
        return RationalMatrix(axis) if axis is not None else None
    try:
        grid = [
            [mat.entry(r, c).as_fraction() for c in range(mat.cols)]
            for r in range(mat.rows)
        ]
    except ArithmeticError:
        return None
    return RationalMatrix(grid)


def rotation_angle(mat: Matrix) -> Optional[Fraction]:
    """The rotation angle (in multiples of pi) if the matrix is a 2x2
    rotation by a rational multiple of pi; None otherwise."""
    if isinstance(mat, Rotation2):
        return mat.angle
    if isinstance(mat, RationalMatrix):
        return mat.axis_rotation()
    return None


# ---------------------------------------------------------------------------
# states


class State:
    """Base class for structured state vectors."""

    dim: int

    def entries(self) -> Tuple[ExactScalar, ...]:
        raise NotImplementedError

    def to_floats(self) -> FloatArray:
        return np.array([float(x) for x in self.entries()], dtype=np.float64)

    def norm_squared(self) -> ExactProbability:
        return ExactProbability(tuple(x * x for x in self.entries()))

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.dim == other.dim and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())


class BasisState(State):
    def __init__(self, dim: int, index: int):
        if not 0 <= index < dim:
            raise ValueError(f"basis index {index} out of range for dim {dim}")
        self.dim = dim
        self.index = index

    def entries(self):
        return tuple(ONE if i == self.index else ZERO for i in range(self.dim))

    def norm_squared(self):
        return ExactProbability.one()


class SubsetState(State):
    """0-1 vector marking the nondeterministically reachable states."""

    def __init__(self, dim: int, indices):
        self.dim = dim
        self.indices = frozenset(indices)
        if any(not 0 <= i < dim for i in self.indices):
            raise ValueError("subset index out of range")

    def entries(self):
        return tuple(ONE if i in self.indices else ZERO for i in range(self.dim))


class RationalState(State):
    def __init__(self, values: Sequence):
        self.values = tuple(Fraction(x) for x in values)
        self.dim = len(self.values)

    def entries(self):
        return tuple(ExactScalar(x) for x in self.values)


class AngleState(State):
    """The unit vector (cos(pi*angle), sin(pi*angle)) in dimension 2."""

    dim = 2

    def __init__(self, angle):
        self.angle = Fraction(angle) % 2

    def entries(self):
        return (ExactScalar.cospi(self.angle), ExactScalar.sinpi(self.angle))

    def norm_squared(self):
        return ExactProbability.one()


class BlockState(State):
    """Weighted concatenation of block states (direct-sum vector)."""

    def __init__(self, parts: Sequence[Tuple[ExactScalar, State]]):
        self.parts = tuple(parts)
        self.dim = sum(s.dim for _, s in self.parts)

    def entries(self):
        out = []
        for w, s in self.parts:
            out.extend(w * x for x in s.entries())
        return tuple(out)

    def norm_squared(self):
        total = ExactProbability.zero()
        for w, s in self.parts:
            total = total + s.norm_squared().scaled(w * w)
        return total


class ProductState(State):
    """Tensor product of factor states (first factor most significant)."""

    def __init__(self, factors: Sequence[State]):
        self.factors = tuple(factors)
        self.dim = 1
        for f in self.factors:
            self.dim *= f.dim

    def entries(self):
        factor_entries = [f.entries() for f in self.factors]
        out = []
        for combo in _cartesian(*factor_entries):
            value = ONE
            for x in combo:
                value = value * x
            out.append(value)
        return tuple(out)

    def norm_squared(self):
        total = ExactProbability.one()
        for f in self.factors:
            total = total * f.norm_squared()
        return total


class DenseState(State):
    def __init__(self, values: Sequence[ExactScalar]):
        self.values = tuple(values)
        self.dim = len(self.values)

    def entries(self):
        return self.values


# ---------------------------------------------------------------------------
# programs


@dataclass(frozen=True)
class Level:
    """One instruction: test variable ``var`` (1-based), then apply
    ``on0`` or ``on1``."""

    var: int
    on0: Matrix
    on1: Matrix

    def matrix(self, bit: int) -> Matrix:
        return self.on1 if bit else self.on0


@dataclass(frozen=True)
class CompositionRecord:
    """Width accounting for a union / intersection / negation."""

    operation: str
    left_width: int
    right_width: int
    result_width: int
    order: Tuple[int, ...]


@dataclass(frozen=True)
class LeveledProgram:
    """A width-d, n-level branching program under one of the five
    semantics.  Level j (1-based) tests variable ``order[j-1]``."""

    semantics: Semantics
    n: int
    width: int
    order: Tuple[int, ...]
    levels: Tuple[Level, ...]
    initial: State
    accepting: frozenset
    name: str = ""
    provenance: Optional[CompositionRecord] = None

    def __post_init__(self):
        bt.check_order(self.order, self.n)
        if len(self.levels) != self.n:
            raise ValueError(f"expected {self.n} levels, got {len(self.levels)}")
        for j, level in enumerate(self.levels):
            if level.var != self.order[j]:
                raise ValueError(
                    f"level {j + 1} tests x{level.var} but the order says "
                    f"x{self.order[j]}"
                )
            for mat in (level.on0, level.on1):
                if (mat.rows, mat.cols) != (self.width, self.width):
                    raise ValueError(
                        f"level {j + 1} matrix is {mat.rows}x{mat.cols}, "
                        f"want {self.width}x{self.width}"
                    )
        if self.initial.dim != self.width:
            raise ValueError("initial state dimension != width")
        if any(not 0 <= a < self.width for a in self.accepting):
            raise ValueError("accepting state out of range")

    def level(self, j: int) -> Level:
        """1-based level access."""
        return self.levels[j - 1]

    def describe(self) -> str:
        label = self.name or "program"
        return (
            f"{label}: {self.semantics.value}, n={self.n}, "
            f"width={self.width}, accepting={{{', '.join(f'q{a + 1}' for a in sorted(self.accepting))}}}"
        )


def make_program(semantics, n, width, order, level_matrices, initial,
                 accepting, name="", provenance=None) -> LeveledProgram:
    """Convenience constructor from a list of (on0, on1) pairs."""
    order = bt.check_order(order, n)
    levels = tuple(
        Level(order[j], on0, on1)
        for j, (on0, on1) in enumerate(level_matrices)
    )
    return LeveledProgram(
        semantics=semantics, n=n, width=width, order=order, levels=levels,
        initial=initial, accepting=frozenset(accepting), name=name,
        provenance=provenance,
    )
