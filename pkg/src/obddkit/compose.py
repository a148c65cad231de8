"""Closure operations: union by direct sum, intersection by tensor
product, negation by complementing the accepting set.

Union and intersection need operands of the same arity and variable
order under matching semantics; reversible operands are accepted
wherever unitary ones are (permutation matrices are unitary) and
deterministic operands wherever nondeterministic ones are.  Orders are
never reconciled - composing programs with different orders is an
error, not a reordering.
"""

from __future__ import annotations

from .config import check_enumerable
from .model import (
    BasisState,
    BlockDiagMatrix,
    BlockState,
    CompositionRecord,
    KronMatrix,
    LeveledProgram,
    ProductState,
    Semantics,
    SubsetState,
    make_program,
)
from .scalars import ExactScalar

_SQRT_HALF = ExactScalar.sqrt2_power(-1)


class CompositionError(ValueError):
    """Operands cannot be composed."""


def lift(program: LeveledProgram, semantics: Semantics) -> LeveledProgram:
    """Retag a program under a weaker-constraint semantics.

    Reversible programs are unitary; deterministic and reversible
    programs are nondeterministic.  Anything else is refused.
    """
    if semantics == program.semantics:
        return program
    allowed = {
        (Semantics.REVERSIBLE, Semantics.UNITARY),
        (Semantics.DETERMINISTIC, Semantics.NONDETERMINISTIC),
        (Semantics.REVERSIBLE, Semantics.NONDETERMINISTIC),
        (Semantics.DETERMINISTIC, Semantics.PROBABILISTIC),
    }
    if (program.semantics, semantics) not in allowed:
        raise CompositionError(
            f"cannot lift {program.semantics.value} to {semantics.value}"
        )
    initial = program.initial
    if semantics == Semantics.NONDETERMINISTIC and isinstance(initial, BasisState):
        initial = SubsetState(initial.dim, {initial.index})
    return LeveledProgram(
        semantics=semantics, n=program.n, width=program.width,
        order=program.order, levels=program.levels, initial=initial,
        accepting=program.accepting,
        name=f"{program.name} as {semantics.value}" if program.name else "",
        provenance=program.provenance,
    )


def _align(a: LeveledProgram, b: LeveledProgram, op: str):
    if a.n != b.n:
        raise CompositionError(f"{op}: operand arities differ ({a.n} vs {b.n})")
    if a.order != b.order:
        raise CompositionError(
            f"{op}: operands read variables in different orders"
        )
    pair = {a.semantics, b.semantics}
    if pair <= {Semantics.UNITARY, Semantics.REVERSIBLE}:
        target = Semantics.UNITARY
    elif pair <= {Semantics.NONDETERMINISTIC, Semantics.DETERMINISTIC,
                  Semantics.REVERSIBLE}:
        target = Semantics.NONDETERMINISTIC
    else:
        raise CompositionError(
            f"{op}: operands must both be unitary(-liftable) or both "
            f"nondeterministic(-liftable), got {a.semantics.value} and "
            f"{b.semantics.value}"
        )
    return lift(a, target), lift(b, target), target


def union(a: LeveledProgram, b: LeveledProgram) -> LeveledProgram:
    """Direct-sum machine of width c + d accepting (with nonzero
    probability) exactly the union of the operands' accepted sets.

    Unitary case: the initial state is the 1/sqrt(2)-weighted
    concatenation, so both halves run with equal amplitude and the
    acceptance probability is the average of the operands'.
    """
    a, b, target = _align(a, b, "union")
    width = a.width + b.width
    pairs = [
        (BlockDiagMatrix((la.on0, lb.on0)), BlockDiagMatrix((la.on1, lb.on1)))
        for la, lb in zip(a.levels, b.levels)
    ]
    if target == Semantics.UNITARY:
        initial = BlockState(((_SQRT_HALF, a.initial), (_SQRT_HALF, b.initial)))
    else:
        left = _subset_of(a.initial)
        right = _subset_of(b.initial)
        initial = SubsetState(width, left | {a.width + i for i in right})
    accepting = set(a.accepting) | {a.width + i for i in b.accepting}
    record = CompositionRecord("union", a.width, b.width, width, a.order)
    return make_program(
        semantics=target, n=a.n, width=width, order=a.order,
        level_matrices=pairs, initial=initial, accepting=accepting,
        name=_compose_name("union", a, b), provenance=record,
    )


def intersection(a: LeveledProgram, b: LeveledProgram) -> LeveledProgram:
    """Tensor-product machine of width c * d; acceptance probability is
    the exact product of the operands' probabilities, so it accepts with
    nonzero probability exactly the intersection."""
    a, b, target = _align(a, b, "intersection")
    width = a.width * b.width
    pairs = [
        (KronMatrix((la.on0, lb.on0)), KronMatrix((la.on1, lb.on1)))
        for la, lb in zip(a.levels, b.levels)
    ]
    if target == Semantics.UNITARY:
        initial = ProductState((a.initial, b.initial))
    else:
        left = _subset_of(a.initial)
        right = _subset_of(b.initial)
        initial = SubsetState(
            width, {i * b.width + j for i in left for j in right}
        )
    accepting = {
        i * b.width + j for i in a.accepting for j in b.accepting
    }
    record = CompositionRecord("intersection", a.width, b.width, width, a.order)
    return make_program(
        semantics=target, n=a.n, width=width, order=a.order,
        level_matrices=pairs, initial=initial, accepting=accepting,
        name=_compose_name("intersection", a, b), provenance=record,
    )


def complement_accepting(program: LeveledProgram,
                         certify_cap: bool = True) -> LeveledProgram:
    """Same machine with the accepting set complemented; computes the
    negated function.

    Sound only when acceptance probability is 0 or 1 on every input:
    deterministic and reversible programs qualify structurally, unitary
    and probabilistic programs are certified exact by enumeration first,
    and nondeterministic programs are refused (complementation does not
    commute with threshold-0 acceptance).
    """
    sem = program.semantics
    if sem == Semantics.NONDETERMINISTIC:
        raise CompositionError(
            "cannot negate a nondeterministic program by complementing "
            "accepting states"
        )
    if sem in (Semantics.UNITARY, Semantics.PROBABILISTIC):
        _certify_exactness(program, certify_cap)
    complemented = frozenset(range(program.width)) - program.accepting
    record = CompositionRecord(
        "negation", program.width, program.width, program.width, program.order
    )
    return LeveledProgram(
        semantics=sem, n=program.n, width=program.width, order=program.order,
        levels=program.levels, initial=program.initial,
        accepting=complemented,
        name=f"not({program.name})" if program.name else "",
        provenance=record,
    )


def _certify_exactness(program: LeveledProgram, certify_cap: bool) -> None:
    from . import bits as bt
    from .semantics import run

    if certify_cap:
        check_enumerable(program.n, "exactness certification")
    for sigma in bt.all_inputs(program.n):
        prob = run(program, sigma).probability.as_fraction()
        if prob not in (0, 1):
            raise CompositionError(
                f"program is not exact: probability on {sigma} is not 0 or 1"
            )


def _subset_of(state) -> set:
    if isinstance(state, SubsetState):
        return set(state.indices)
    if isinstance(state, BasisState):
        return {state.index}
    entries = state.entries()
    return {i for i, x in enumerate(entries) if not x.is_zero()}


def _compose_name(op, a, b) -> str:
    la = a.name or f"width-{a.width}"
    lb = b.name or f"width-{b.width}"
    return f"{op}({la}, {lb})"
