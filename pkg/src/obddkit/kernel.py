"""Exhaustive-evaluation kernels.

Exhaustive checks (every input in {0,1}^n against an oracle table) are
the hot loop of this package.  Programs whose levels reduce to integer
state updates are compiled into flat tables:

* ``perm``: basis-state evolution through 0-1 column functions
  (deterministic, reversible, and lifted-reversible unitary programs);
* ``nd``: subset evolution through 0-1 matrices, packed into uint64
  bit masks (nondeterministic programs of width <= 63);
* ``rot``: width-2 rotation machines; the state is an integer angle
  numerator in units of pi/D and the zero test is a congruence mod D.

The loops themselves live in ``obddkit._speedups`` (compiled extension)
with a numpy fallback in ``obddkit._speedups_py``; the import below
picks whichever is available.  Set ``OBDDKIT_PURE=1`` to force the
fallback.  Both backends perform the same level-by-level evolution and
are exact: for these program classes the integer tables *are* the exact
semantics, so kernel verdicts are certified.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

import numpy as np

from .config import check_enumerable
from .model import (
    AngleState,
    BasisState,
    LeveledProgram,
    ProductState,
    RationalState,
    Semantics,
    SubsetState,
    as_rational_matrix,
    rotation_angle,
)

if os.environ.get("OBDDKIT_PURE") == "1":
    from . import _speedups_py as _backend

    BACKEND = "python"
else:
    try:
        from . import _speedups as _backend  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _speedups_py as _backend

        BACKEND = "python"


def backend_name() -> str:
    """Which loop implementation is active: 'compiled' or 'python'."""
    return BACKEND


def load_backend(name: str):
    """Explicitly load one backend module (used by the benchmark)."""
    if name == "python":
        from . import _speedups_py

        return _speedups_py
    if name == "compiled":
        from . import _speedups  # type: ignore[attr-defined]

        return _speedups
    raise ValueError(f"unknown backend {name!r}")


@dataclass(frozen=True)
class TableProgram:
    """A program compiled to integer tables (see module docstring)."""

    kind: str
    n: int
    shifts: np.ndarray  # shifts[j] = n - var_j: bit j extraction shift
    # perm
    next0: Optional[np.ndarray] = None
    next1: Optional[np.ndarray] = None
    init_state: int = 0
    accept_vec: Optional[np.ndarray] = None
    # nd
    mask0: Optional[np.ndarray] = None
    mask1: Optional[np.ndarray] = None
    init_mask: int = 0
    accept_mask: int = 0
    # rot
    inc0: Optional[np.ndarray] = None
    inc1: Optional[np.ndarray] = None
    init_units: int = 0
    denom: int = 1
    accept_case: str = ""


def _initial_angle(state) -> Optional[Fraction]:
    if isinstance(state, AngleState):
        return state.angle
    if isinstance(state, BasisState) and state.dim == 2:
        return Fraction(0) if state.index == 0 else Fraction(1, 2)
    return None


def _initial_basis_index(state) -> Optional[int]:
    if isinstance(state, BasisState):
        return state.index
    if isinstance(state, ProductState):
        combined = 0
        for f in state.factors:
            sub = _initial_basis_index(f)
            if sub is None:
                return None
            combined = combined * f.dim + sub
        return combined
    if isinstance(state, RationalState):
        hot = [i for i, v in enumerate(state.values) if v != 0]
        if len(hot) == 1 and state.values[hot[0]] == 1:
            return hot[0]
    return None


def _initial_subset(state) -> Optional[frozenset]:
    if isinstance(state, SubsetState):
        return state.indices
    if isinstance(state, BasisState):
        return frozenset((state.index,))
    if isinstance(state, RationalState):
        if all(v in (0, 1) for v in state.values):
            return frozenset(i for i, v in enumerate(state.values) if v)
    return None


def compile_tables(program: LeveledProgram) -> Optional[TableProgram]:
    """Compile to integer tables, or None if the program is not of a
    kernel-supported shape (the generic exact runner handles it then)."""
    n = program.n
    shifts = np.array([n - lv.var for lv in program.levels], dtype=np.int64)
    sem = program.semantics

    if sem == Semantics.UNITARY:
        rot = _compile_rot(program, shifts)
        if rot is not None:
            return rot
        return _compile_perm(program, shifts)
    if sem in (Semantics.DETERMINISTIC, Semantics.REVERSIBLE):
        return _compile_perm(program, shifts)
    if sem == Semantics.NONDETERMINISTIC:
        return _compile_nd(program, shifts)
    return None


def _compile_perm(program, shifts) -> Optional[TableProgram]:
    init = _initial_basis_index(program.initial)
    if init is None:
        return None
    d = program.width
    next0 = np.empty((program.n, d), dtype=np.int32)
    next1 = np.empty((program.n, d), dtype=np.int32)
    for j, level in enumerate(program.levels):
        for target, mat in ((next0, level.on0), (next1, level.on1)):
            flat = as_rational_matrix(mat)
            cm = flat.column_map() if flat is not None else None
            if cm is None:
                return None
            target[j] = cm
    accept = np.zeros(d, dtype=np.uint8)
    for a in program.accepting:
        accept[a] = 1
    return TableProgram(
        kind="perm", n=program.n, shifts=shifts,
        next0=next0, next1=next1,
        init_state=init, accept_vec=accept,
    )


def _compile_nd(program, shifts) -> Optional[TableProgram]:
    d = program.width
    if d > 63:
        return None
    init = _initial_subset(program.initial)
    if init is None:
        return None
    mask0 = np.zeros((program.n, d), dtype=np.uint64)
    mask1 = np.zeros((program.n, d), dtype=np.uint64)
    for j, level in enumerate(program.levels):
        for target, mat in ((mask0, level.on0), (mask1, level.on1)):
            flat = as_rational_matrix(mat)
            if flat is None or not flat.is_zero_one():
                return None
            for c in range(d):
                m = 0
                for r in range(d):
                    if flat.grid[r][c]:
                        m |= 1 << r
                target[j, c] = m
    init_mask = 0
    for i in init:
        init_mask |= 1 << i
    accept_mask = 0
    for a in program.accepting:
        accept_mask |= 1 << a
    return TableProgram(
        kind="nd", n=program.n, shifts=shifts,
        mask0=mask0, mask1=mask1,
        init_mask=init_mask, accept_mask=accept_mask,
    )


def _compile_rot(program, shifts) -> Optional[TableProgram]:
    if program.width != 2:
        return None
    init = _initial_angle(program.initial)
    if init is None:
        return None
    angles0, angles1 = [], []
    for level in program.levels:
        a0 = rotation_angle(level.on0)
        a1 = rotation_angle(level.on1)
        if a0 is None or a1 is None:
            return None
        angles0.append(a0)
        angles1.append(a1)
    denom = lcm(init.denominator, *(a.denominator for a in angles0 + angles1)) \
        if angles0 else init.denominator
    units = lambda t: int(t * denom)  # noqa: E731 - exact by construction
    acc = program.accepting
    case = {frozenset((1,)): "sin", frozenset((0,)): "cos",
            frozenset((0, 1)): "all", frozenset(): "none"}[frozenset(acc)]
    return TableProgram(
        kind="rot", n=program.n, shifts=shifts,
        inc0=np.array([units(a) for a in angles0], dtype=np.int64),
        inc1=np.array([units(a) for a in angles1], dtype=np.int64),
        init_units=units(init), denom=denom, accept_case=case,
    )


# ---------------------------------------------------------------------------
# evaluation over all inputs


def final_rot_units(tables: TableProgram, backend=None) -> np.ndarray:
    """Final angle numerators (units of pi/denom) for all 2^n inputs."""
    assert tables.kind == "rot"
    check_enumerable(tables.n, "kernel enumeration")
    be = backend or _backend
    return be.rot_units(
        tables.shifts, tables.inc0, tables.inc1, tables.init_units
    )


def accept_bits(tables: TableProgram, backend=None) -> np.ndarray:
    """Threshold-0 accept bit for every input, as uint8[2^n] indexed by
    the input read as a binary number."""
    check_enumerable(tables.n, "kernel enumeration")
    be = backend or _backend
    if tables.kind == "perm":
        return be.perm_accept(
            tables.shifts, tables.next0, tables.next1,
            tables.init_state, tables.accept_vec,
        )
    if tables.kind == "nd":
        return be.nd_accept(
            tables.shifts, tables.mask0, tables.mask1,
            np.uint64(tables.init_mask), np.uint64(tables.accept_mask),
        )
    if tables.kind == "rot":
        u = final_rot_units(tables, backend=be)
        d = tables.denom
        if tables.accept_case == "sin":
            return (u % d != 0).astype(np.uint8)
        if tables.accept_case == "cos":
            return ((2 * u) % (2 * d) != d).astype(np.uint8)
        if tables.accept_case == "all":
            return np.ones(1 << tables.n, dtype=np.uint8)
        return np.zeros(1 << tables.n, dtype=np.uint8)
    raise AssertionError(tables.kind)


def probability_binary_bits(tables: TableProgram, backend=None) -> np.ndarray:
    """For each input, whether the acceptance probability is exactly 0
    or 1 (bool[2^n]).  Basis-evolution and subset kinds are binary by
    construction."""
    check_enumerable(tables.n, "kernel enumeration")
    size = 1 << tables.n
    if tables.kind in ("perm", "nd"):
        return np.ones(size, dtype=bool)
    u = final_rot_units(tables, backend=backend or _backend)
    d = tables.denom
    amp_zero = (u % d == 0)            # sin(pi*u/d) = 0
    amp_one = ((2 * u) % (2 * d) == d)  # |sin(pi*u/d)| = 1
    if tables.accept_case in ("sin", "cos"):
        return amp_zero | amp_one
    return np.ones(size, dtype=bool)
