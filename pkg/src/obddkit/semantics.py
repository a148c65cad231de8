"""Execution of leveled programs under each semantics.

The exact backend evolves structured states (see :mod:`obddkit.model`)
and certifies the threshold-0 verdict: acceptance probability is a sum
of squared amplitudes whose zero test reduces to integer congruences.
The float backend runs the float shadows with a 1e-9 threshold and
flags its answers as uncertified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from . import bits as bt
from .config import FLOAT_EPS, check_enumerable
from .functions import BooleanFunction
from .model import (
    AngleState,
    as_rational_matrix,
    BasisState,
    BlockDiagMatrix,
    BlockState,
    DenseMatrix,
    DenseState,
    KronMatrix,
    LeveledProgram,
    Matrix,
    ProductState,
    RationalMatrix,
    RationalState,
    Rotation2,
    Semantics,
    State,
    SubsetState,
)
from .scalars import (
    ONE,
    ZERO,
    ExactProbability,
    ExactScalar,
    InexactArithmeticError,
)

MODES = ("nondeterministic", "exact", "deterministic")


class InvalidProgramError(ValueError):
    """A program failed its semantic validity check."""


# ---------------------------------------------------------------------------
# exact evolution


def _dense_matvec(mat: Matrix, state: State) -> State:
    vec = state.entries()
    out = []
    for r in range(mat.rows):
        acc = ZERO
        for c in range(mat.cols):
            acc = acc + mat.entry(r, c) * vec[c]
        out.append(acc)
    if all(x.is_rational() for x in out):
        return RationalState([x.q for x in out])
    return DenseState(out)


def _as_scaled_angle(state: State):
    """Express a 2-dimensional state as weight * unit-vector-at-angle,
    or return None."""
    if isinstance(state, AngleState):
        return ONE, state.angle
    if isinstance(state, BasisState) and state.dim == 2:
        return ONE, (Fraction(0) if state.index == 0 else Fraction(1, 2))
    if isinstance(state, RationalState) and state.dim == 2:
        a, b = state.values
        if b == 0 and a != 0:
            return ExactScalar(a), Fraction(0)
        if a == 0 and b != 0:
            return ExactScalar(b), Fraction(1, 2)
    if isinstance(state, BlockState) and len(state.parts) == 1:
        w, inner = state.parts[0]
        got = _as_scaled_angle(inner)
        if got is not None:
            return w * got[0], got[1]
    return None


def _scaled_angle_state(weight: ExactScalar, angle: Fraction) -> State:
    if weight == ONE:
        return AngleState(angle)
    return BlockState(((weight, AngleState(angle)),))


def _split_indices(blocks, total_dim):
    offsets = []
    off = 0
    for b in blocks:
        offsets.append((off, b.rows))
        off += b.rows
    assert off == total_dim
    return offsets


def apply_matrix(mat: Matrix, state: State, semantics: Semantics) -> State:
    """One exact evolution step; raises InexactArithmeticError when the
    combination cannot be tracked in the exact scalar tower."""
    if mat.cols != state.dim:
        raise ValueError(f"matrix is {mat.rows}x{mat.cols}, state dim {state.dim}")

    if isinstance(mat, Rotation2):
        got = _as_scaled_angle(state)
        if got is None:
            return _dense_matvec(mat, state)
        weight, angle = got
        return _scaled_angle_state(weight, angle + mat.angle)

    if isinstance(mat, RationalMatrix):
        if isinstance(state, SubsetState):
            reachable = {
                r
                for c in state.indices
                for r in range(mat.rows)
                if mat.grid[r][c] != 0
            }
            return SubsetState(mat.rows, reachable)
        if isinstance(state, BasisState):
            column = [mat.grid[r][state.index] for r in range(mat.rows)]
            hot = [r for r, x in enumerate(column) if x != 0]
            if len(hot) == 1 and column[hot[0]] == 1:
                return BasisState(mat.rows, hot[0])
            return RationalState(column)
        if isinstance(state, RationalState):
            return RationalState(
                [
                    sum(mat.grid[r][c] * state.values[c] for c in range(mat.cols))
                    for r in range(mat.rows)
                ]
            )
        got = _as_scaled_angle(state)
        if got is not None:
            weight, angle = got
            turn = mat.axis_rotation()
            if turn is not None:
                return _scaled_angle_state(weight, angle + turn)
            refl = mat.axis_reflection()
            if refl is not None:
                return _scaled_angle_state(weight, refl - angle)
        return _dense_matvec(mat, state)

    if isinstance(mat, BlockDiagMatrix):
        offsets = _split_indices(mat.blocks, state.dim)
        if isinstance(state, BlockState) and tuple(
            s.dim for _, s in state.parts
        ) == tuple(b.rows for b in mat.blocks):
            return BlockState(
                tuple(
                    (w, apply_matrix(b, s, semantics))
                    for b, (w, s) in zip(mat.blocks, state.parts)
                )
            )
        if isinstance(state, SubsetState):
            reachable = set()
            for b, (off, size) in zip(mat.blocks, offsets):
                local = {i - off for i in state.indices if off <= i < off + size}
                if local:
                    sub = apply_matrix(b, SubsetState(size, local), semantics)
                    reachable |= {off + i for i in sub.indices}
            return SubsetState(state.dim, reachable)
        if isinstance(state, BasisState):
            for b, (off, size) in zip(mat.blocks, offsets):
                if off <= state.index < off + size:
                    sub = apply_matrix(
                        b, BasisState(size, state.index - off), semantics
                    )
                    if isinstance(sub, BasisState):
                        return BasisState(state.dim, off + sub.index)
                    parts = tuple(
                        (ONE, sub) if blk is b else (ZERO, BasisState(blk.rows, 0))
                        for blk in mat.blocks
                    )
                    return BlockState(parts)
            raise AssertionError("unreachable")
        if isinstance(state, RationalState):
            parts = []
            for b, (off, size) in zip(mat.blocks, offsets):
                sub = RationalState(state.values[off:off + size])
                parts.append((ONE, apply_matrix(b, sub, semantics)))
            if all(isinstance(s, RationalState) for _, s in parts):
                flat = []
                for _, s in parts:
                    flat.extend(s.values)
                return RationalState(flat)
            return BlockState(tuple(parts))
        return _dense_matvec(mat, state)

    if isinstance(mat, KronMatrix):
        if isinstance(state, ProductState) and tuple(
            f.dim for f in state.factors
        ) == tuple(f.rows for f in mat.factors):
            return ProductState(
                tuple(
                    apply_matrix(m, s, semantics)
                    for m, s in zip(mat.factors, state.factors)
                )
            )
        if isinstance(state, BasisState):
            digits = []
            idx = state.index
            for f in reversed(mat.factors):
                digits.append(idx % f.rows)
                idx //= f.rows
            digits.reverse()
            subs = [
                apply_matrix(m, BasisState(m.rows, d), semantics)
                for m, d in zip(mat.factors, digits)
            ]
            if all(isinstance(s, BasisState) for s in subs):
                combined = 0
                for m, s in zip(mat.factors, subs):
                    combined = combined * m.rows + s.index
                return BasisState(state.dim, combined)
            return ProductState(tuple(subs))
        flat = mat.materialize_rational()
        if flat is not None:
            return apply_matrix(flat, state, semantics)
        return _dense_matvec(mat, state)

    return _dense_matvec(mat, state)


# ---------------------------------------------------------------------------
# acceptance


def unitary_probability(state: State, accepting: frozenset) -> ExactProbability:
    """Squared norm of the projection onto the accepting basis states."""
    if isinstance(state, BasisState):
        return (
            ExactProbability.one()
            if state.index in accepting
            else ExactProbability.zero()
        )
    if isinstance(state, AngleState):
        terms = []
        if 0 in accepting:
            c = ExactScalar.cospi(state.angle)
            terms.append(c * c)
        if 1 in accepting:
            s = ExactScalar.sinpi(state.angle)
            terms.append(s * s)
        return ExactProbability(terms)
    if isinstance(state, BlockState):
        total = ExactProbability.zero()
        off = 0
        for w, s in state.parts:
            local = frozenset(
                i - off for i in accepting if off <= i < off + s.dim
            )
            if local and not w.is_zero():
                total = total + unitary_probability(s, local).scaled(w * w)
            off += s.dim
        return total
    entries = state.entries()
    return ExactProbability(
        tuple(entries[i] * entries[i] for i in sorted(accepting))
    )


def acceptance_probability(program: LeveledProgram, final: State) -> ExactProbability:
    sem = program.semantics
    acc = program.accepting
    if sem in (Semantics.UNITARY, Semantics.REVERSIBLE):
        return unitary_probability(final, acc)
    if sem == Semantics.DETERMINISTIC:
        if isinstance(final, BasisState):
            return (
                ExactProbability.one()
                if final.index in acc
                else ExactProbability.zero()
            )
        raise InvalidProgramError("deterministic run left the basis states")
    if sem == Semantics.NONDETERMINISTIC:
        if isinstance(final, SubsetState):
            return (
                ExactProbability.one()
                if final.indices & acc
                else ExactProbability.zero()
            )
        raise InvalidProgramError("nondeterministic run lost its subset form")
    if sem == Semantics.PROBABILISTIC:
        if isinstance(final, BasisState):
            return (
                ExactProbability.one()
                if final.index in acc
                else ExactProbability.zero()
            )
        if isinstance(final, RationalState):
            return ExactProbability.of_fraction(
                sum(final.values[i] for i in acc) if acc else Fraction(0)
            )
        raise InvalidProgramError("probabilistic run left the rational states")
    raise AssertionError(sem)


@dataclass(frozen=True)
class RunTrace:
    """States after each level (length n+1) plus the final acceptance
    probability.  ``certified`` is False for the float backend."""

    states: Tuple
    probability: Union[ExactProbability, float]
    certified: bool

    def final_state(self):
        return self.states[-1]


def _coerce_initial(program: LeveledProgram) -> State:
    state = program.initial
    if program.semantics == Semantics.NONDETERMINISTIC and isinstance(
        state, (BasisState, RationalState)
    ):
        entries = state.entries()
        return SubsetState(
            state.dim, {i for i, x in enumerate(entries) if not x.is_zero()}
        )
    return state


def run(program: LeveledProgram, sigma: str, backend: str = "exact") -> RunTrace:
    """Evolve the program on the input and report the trace."""
    bt.check_bits(sigma, program.n)
    if backend == "float":
        return _run_float(program, sigma)
    if backend != "exact":
        raise ValueError(f"unknown backend {backend!r}")
    state = _coerce_initial(program)
    states = [state]
    for level in program.levels:
        bit = bt.bit_at(sigma, level.var)
        state = apply_matrix(level.matrix(bit), state, program.semantics)
        states.append(state)
    return RunTrace(
        states=tuple(states),
        probability=acceptance_probability(program, state),
        certified=True,
    )


def run_prefix(program: LeveledProgram, prefix: str, backend: str = "exact") -> State:
    """State after feeding ``prefix`` to the first len(prefix) levels.
    Position j of the prefix is the value of the variable tested at
    level j+1 (i.e. an assignment to the order's prefix)."""
    if backend == "float":
        vec = program.initial.to_floats()
        for j, c in enumerate(prefix):
            mat = _float_matrix(program.levels[j].matrix(int(c)))
            vec = mat @ vec
        return vec
    state = _coerce_initial(program)
    for j, c in enumerate(prefix):
        state = apply_matrix(
            program.levels[j].matrix(int(c)), state, program.semantics
        )
    return state


def _float_matrix(mat: Matrix) -> np.ndarray:
    got = mat.__dict__.get("_floats")
    if got is None:
        got = mat.to_floats()
        mat.__dict__["_floats"] = got
    return got


def _run_float(program: LeveledProgram, sigma: str) -> RunTrace:
    sem = program.semantics
    vec = _coerce_initial(program).to_floats()
    states = [vec]
    for level in program.levels:
        bit = bt.bit_at(sigma, level.var)
        mat = _float_matrix(level.matrix(bit))
        vec = mat @ vec
        if sem == Semantics.NONDETERMINISTIC:
            vec = (vec > 0).astype(np.float64)
        states.append(vec)
    acc = sorted(program.accepting)
    if sem in (Semantics.UNITARY, Semantics.REVERSIBLE, Semantics.DETERMINISTIC):
        probability = float(np.sum(vec[acc] ** 2)) if acc else 0.0
    elif sem == Semantics.NONDETERMINISTIC:
        probability = 1.0 if acc and np.any(vec[acc] > 0) else 0.0
    else:
        probability = float(np.sum(vec[acc])) if acc else 0.0
    return RunTrace(states=tuple(states), probability=probability, certified=False)


@dataclass(frozen=True)
class ThresholdVerdict:
    """Outcome of the threshold-0 acceptance test."""

    accepts: bool
    certified: bool
    probability: Union[ExactProbability, float]


def accepts_nondeterministically(
    program: LeveledProgram, sigma: str, backend: str = "exact"
) -> ThresholdVerdict:
    """True iff the acceptance probability is (exactly) nonzero.  The
    float backend compares against 1e-9 and is flagged uncertified."""
    trace = run(program, sigma, backend=backend)
    if backend == "exact":
        return ThresholdVerdict(
            accepts=not trace.probability.is_zero(),
            certified=True,
            probability=trace.probability,
        )
    return ThresholdVerdict(
        accepts=trace.probability > FLOAT_EPS,
        certified=False,
        probability=trace.probability,
    )


# ---------------------------------------------------------------------------
# whole-function verification


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    mode: str
    n: int
    checked: int
    counterexample: Optional[str] = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def computes_function(
    program: LeveledProgram,
    f: BooleanFunction,
    mode: str,
    use_kernel: bool = True,
) -> VerificationReport:
    """Exhaustively compare the program against ``f``.

    Modes: ``nondeterministic`` checks prob > 0 iff f = 1; ``exact``
    additionally requires the probability to be 0 or 1 everywhere;
    ``deterministic`` is ``exact`` restricted to deterministic and
    reversible programs.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if program.n != f.n:
        raise ValueError(f"arity mismatch: program n={program.n}, f n={f.n}")
    if mode == "deterministic" and program.semantics not in (
        Semantics.DETERMINISTIC,
        Semantics.REVERSIBLE,
    ):
        return VerificationReport(
            False, mode, program.n, 0,
            detail="deterministic mode requires a deterministic or reversible program",
        )
    check_enumerable(program.n, "function verification")
    problems = validate(program)
    if problems:
        raise InvalidProgramError("; ".join(problems))

    table = f.table()
    if use_kernel:
        from . import kernel

        tables = kernel.compile_tables(program)
        if tables is not None:
            accept = kernel.accept_bits(tables)
            want = table.astype(bool)
            got = accept.astype(bool)
            mismatch = np.flatnonzero(want != got)
            if mismatch.size:
                idx = int(mismatch[0])
                sigma = bt.index_to_bits(idx, program.n)
                return VerificationReport(
                    False, mode, program.n, 1 << program.n, sigma,
                    detail=f"f({sigma})={int(want[idx])} but program "
                    f"{'accepts' if got[idx] else 'rejects'}",
                )
            if mode in ("exact", "deterministic"):
                binary = kernel.probability_binary_bits(tables)
                bad = np.flatnonzero(~binary)
                if bad.size:
                    idx = int(bad[0])
                    sigma = bt.index_to_bits(idx, program.n)
                    return VerificationReport(
                        False, mode, program.n, 1 << program.n, sigma,
                        detail=f"acceptance probability on {sigma} is not 0 or 1",
                    )
            return VerificationReport(True, mode, program.n, 1 << program.n)

    for idx in range(1 << program.n):
        sigma = bt.index_to_bits(idx, program.n)
        trace = run(program, sigma)
        prob = trace.probability
        want = int(table[idx])
        if mode == "nondeterministic":
            ok = (not prob.is_zero()) == bool(want)
        else:
            value = prob.as_fraction()
            if value not in (0, 1):
                return VerificationReport(
                    False, mode, program.n, 1 << program.n, sigma,
                    detail=f"acceptance probability on {sigma} is "
                    f"{prob.render()}, not 0 or 1",
                )
            ok = (value == 1) == bool(want)
        if not ok:
            return VerificationReport(
                False, mode, program.n, 1 << program.n, sigma,
                detail=f"f({sigma})={want} but program probability is "
                f"{prob.render()}",
            )
    return VerificationReport(True, mode, program.n, 1 << program.n)


# ---------------------------------------------------------------------------
# validity


def _certify_unitary(mat: Matrix) -> Optional[bool]:
    """True / False when decidable, None when not certifiable here."""
    if isinstance(mat, Rotation2):
        return True  # cos^2 + sin^2 = 1 symbolically
    if isinstance(mat, RationalMatrix):
        return mat.is_orthogonal()
    if isinstance(mat, BlockDiagMatrix):
        results = [_certify_unitary(b) for b in mat.blocks]
        if all(r is True for r in results):
            return True
        if any(r is False for r in results):
            return False
        return None
    if isinstance(mat, KronMatrix):
        results = [_certify_unitary(f) for f in mat.factors]
        if all(r is True for r in results):
            return True
        if any(r is False for r in results):
            return False
        return None
    # dense: attempt M^T M = I within the exact tower; column norms go
    # through the sum-of-squares form so sin^2 + cos^2 pairs merge
    try:
        d = mat.rows
        cols = [[mat.entry(r, i) for r in range(d)] for i in range(d)]
        for col in cols:
            norm = ExactProbability(tuple(x * x for x in col)).as_fraction()
            if norm is None:
                return None
            if norm != 1:
                return False
        for i in range(d):
            for j in range(i + 1, d):
                dot = ZERO
                for r in range(d):
                    dot = dot + cols[i][r] * cols[j][r]
                if not dot.is_zero():
                    return False
        return True
    except (InexactArithmeticError, ValueError):
        return None


def _matrix_is_01(mat: Matrix) -> bool:
    flat = as_rational_matrix(mat)
    return flat is not None and flat.is_zero_one()


def validate(program: LeveledProgram) -> List[str]:
    """Check the semantics-specific invariants; an empty list means the
    program is valid."""
    violations = []
    sem = program.semantics
    for j, level in enumerate(program.levels, start=1):
        for tag, mat in (("on0", level.on0), ("on1", level.on1)):
            if sem in (Semantics.UNITARY, Semantics.REVERSIBLE):
                verdict = _certify_unitary(mat)
                if verdict is False:
                    violations.append(f"level {j} {tag}: non-unitary level")
                elif verdict is None:
                    violations.append(
                        f"level {j} {tag}: unitarity not certifiable in the "
                        "exact tower"
                    )
                if sem == Semantics.REVERSIBLE:
                    flat = as_rational_matrix(mat)
                    if flat is None or not flat.is_permutation():
                        violations.append(
                            f"level {j} {tag}: not a 0-1 permutation matrix"
                        )
            elif sem == Semantics.DETERMINISTIC:
                flat = as_rational_matrix(mat)
                if flat is None or flat.column_map() is None:
                    violations.append(
                        f"level {j} {tag}: not a 0-1 matrix with exactly one "
                        "1 per column"
                    )
            elif sem == Semantics.NONDETERMINISTIC:
                if not _matrix_is_01(mat):
                    violations.append(f"level {j} {tag}: not a 0-1 matrix")
            elif sem == Semantics.PROBABILISTIC:
                flat = as_rational_matrix(mat)
                if flat is None or not flat.is_column_stochastic():
                    violations.append(
                        f"level {j} {tag}: not column-stochastic"
                    )
    violations.extend(_validate_initial(program))
    return violations


def _validate_initial(program: LeveledProgram) -> List[str]:
    sem = program.semantics
    state = program.initial
    out = []
    if sem in (Semantics.UNITARY, Semantics.REVERSIBLE):
        norm = state.norm_squared().as_fraction()
        if norm is None:
            out.append("initial state norm not certifiable")
        elif norm != 1:
            out.append(f"initial state norm^2 is {norm}, want exactly 1")
        if sem == Semantics.REVERSIBLE and not isinstance(state, BasisState):
            entries = state.entries()
            hot = [i for i, x in enumerate(entries) if not x.is_zero()]
            if len(hot) != 1 or entries[hot[0]] != ONE:
                out.append("reversible initial state must be a basis vector")
    elif sem == Semantics.DETERMINISTIC:
        if not isinstance(state, BasisState):
            entries = state.entries()
            hot = [i for i, x in enumerate(entries) if not x.is_zero()]
            if len(hot) != 1 or entries[hot[0]] != ONE:
                out.append("deterministic initial state must be a basis vector")
    elif sem == Semantics.NONDETERMINISTIC:
        entries = state.entries()
        if not all(x == 0 or x == 1 for x in entries):
            out.append("nondeterministic initial state must be a 0-1 vector")
        elif all(x == 0 for x in entries):
            out.append("nondeterministic initial state must mark some state")
    elif sem == Semantics.PROBABILISTIC:
        if isinstance(state, (BasisState,)):
            return out
        if not isinstance(state, RationalState):
            out.append("probabilistic initial state must be rational")
        else:
            if any(v < 0 for v in state.values):
                out.append("probabilistic initial state has a negative entry")
            if sum(state.values) != 1:
                out.append("probabilistic initial state entries must sum to 1")
    return out
