from fractions import Fraction

import pytest

from obddkit import (
    BooleanFunction,
    CompositionError,
    Semantics,
    accepts_nondeterministically,
    build_and_nobdd,
    build_exact_deterministic,
    build_mod,
    build_not_exact,
    complement_accepting,
    computes_function,
    intersection,
    lift,
    make_program,
    run,
    union,
    validate,
)
from obddkit.bits import all_inputs, natural_order, weight
from obddkit.model import BasisState, RationalMatrix


def nd_accepts(program, sigma):
    return accepts_nondeterministically(program, sigma).accepts


def test_union_width_and_law():
    a = build_not_exact(6, 2)
    b = build_not_exact(6, 4)
    u = union(a, b)
    assert u.width == 4
    assert u.provenance.operation == "union"
    assert u.provenance.result_width == 4
    assert validate(u) == []
    for sigma in all_inputs(6):
        assert nd_accepts(u, sigma) == (nd_accepts(a, sigma) or nd_accepts(b, sigma))


def test_union_example_membership():
    u = union(build_not_exact(6, 2), build_not_exact(6, 4))
    assert nd_accepts(u, "001100")  # two 1s: second operand fires
    assert not nd_accepts(u, "110100") or weight("110100") not in (2, 4)


def test_union_idempotent_on_language():
    p = build_not_exact(4, 2)
    u = union(p, p)
    for sigma in all_inputs(4):
        assert nd_accepts(u, sigma) == nd_accepts(p, sigma)


def test_union_of_nobdds():
    a = build_and_nobdd(3)
    u = union(a, a)
    assert u.width == 4
    assert u.semantics == Semantics.NONDETERMINISTIC
    assert computes_function(u, BooleanFunction.and_(3),
                             "nondeterministic").passed


def test_union_initial_norm_is_one():
    u = union(build_not_exact(4, 1), build_not_exact(4, 3))
    assert u.initial.norm_squared().as_fraction() == 1


def test_intersection_probability_factorizes_exactly():
    a = build_not_exact(4, 1)
    b = build_not_exact(4, 2)
    t = intersection(a, b)
    assert t.width == 4
    assert validate(t) == []
    for sigma in all_inputs(4):
        left = run(a, sigma).probability
        right = run(b, sigma).probability
        assert run(t, sigma).probability == left * right


def test_intersection_of_lifted_mod_counters():
    m2 = lift(build_mod(12, 2), Semantics.UNITARY)
    m3 = lift(build_mod(12, 3), Semantics.UNITARY)
    t = intersection(m2, m3)
    assert t.width == 6
    assert computes_function(t, BooleanFunction.mod(12, 6), "exact").passed


def test_intersection_with_always_accept_is_identity():
    one = RationalMatrix.identity(1)
    always = make_program(
        Semantics.UNITARY, 4, 1, natural_order(4), [(one, one)] * 4,
        BasisState(1, 0), {0},
    )
    p = build_not_exact(4, 2)
    t = intersection(p, always)
    for sigma in all_inputs(4):
        assert run(t, sigma).probability == run(p, sigma).probability


def test_mixed_angle_tensor_is_tracked_exactly():
    # operands with coprime angle denominators still run exactly: the
    # product state keeps the factors separate
    a = build_not_exact(4, 1)   # step pi/5
    b = build_not_exact(4, 3)   # step pi/5 as well; build one with pi/7 flavor
    c = make_not_exact_with_denominator(4, 2, 7)
    t = intersection(a, c)
    for sigma in all_inputs(4):
        assert run(t, sigma).probability == (
            run(a, sigma).probability * run(c, sigma).probability
        )
    assert validate(t) == []
    assert t.width == 4
    del b


def make_not_exact_with_denominator(n, k, den):
    from obddkit.model import AngleState, Rotation2

    beta = Fraction(1, den)
    return make_program(
        Semantics.UNITARY, n, 2, natural_order(n),
        [(Rotation2(0), Rotation2(beta))] * n,
        AngleState(-k * beta), {1},
    )


def test_order_mismatch_refused():
    a = build_mod(4, 2)
    reversed_order = tuple(reversed(natural_order(4)))
    step = RationalMatrix.from_column_map(2, [1, 0])
    stay = RationalMatrix.identity(2)
    b = make_program(
        Semantics.REVERSIBLE, 4, 2, reversed_order, [(stay, step)] * 4,
        BasisState(2, 0), {0},
    )
    with pytest.raises(CompositionError):
        union(a, b)
    with pytest.raises(CompositionError):
        intersection(a, b)


def test_semantics_mismatch_refused():
    with pytest.raises(CompositionError):
        union(build_not_exact(4, 2), build_and_nobdd(4))


def test_arity_mismatch_refused():
    with pytest.raises(CompositionError):
        union(build_not_exact(4, 2), build_not_exact(6, 2))


def test_lift_rules():
    rev = build_mod(4, 2)
    assert lift(rev, Semantics.UNITARY).semantics == Semantics.UNITARY
    assert lift(rev, Semantics.NONDETERMINISTIC).semantics == \
        Semantics.NONDETERMINISTIC
    det = build_exact_deterministic(4, 1)
    assert lift(det, Semantics.NONDETERMINISTIC).semantics == \
        Semantics.NONDETERMINISTIC
    with pytest.raises(CompositionError):
        lift(build_and_nobdd(3), Semantics.UNITARY)
    with pytest.raises(CompositionError):
        lift(det, Semantics.UNITARY)  # trap state is not reversible


def test_complement_of_mod_counts_nonmultiples():
    c = complement_accepting(build_mod(6, 3))
    for sigma in all_inputs(6):
        want = 0 if weight(sigma) % 3 == 0 else 1
        assert run(c, sigma).probability.as_fraction() == want


def test_double_complement_restores_language():
    p = build_mod(5, 2)
    cc = complement_accepting(complement_accepting(p))
    assert computes_function(cc, BooleanFunction.mod(5, 2), "exact").passed


def test_complement_refusals():
    with pytest.raises(CompositionError):
        complement_accepting(build_not_exact(4, 2))  # not exact
    with pytest.raises(CompositionError):
        complement_accepting(build_and_nobdd(3))  # nondeterministic


def test_complement_accepts_certified_exact_unitary():
    # a reversible machine lifted to unitary is exact and may be negated
    p = lift(build_mod(4, 2), Semantics.UNITARY)
    c = complement_accepting(p)
    for sigma in all_inputs(4):
        want = 0 if weight(sigma) % 2 == 0 else 1
        assert run(c, sigma).probability.as_fraction() == want


def test_composed_unitary_programs_stay_valid():
    a = build_not_exact(5, 2)
    b = lift(build_mod(5, 2), Semantics.UNITARY)
    assert validate(union(a, b)) == []
    assert validate(intersection(a, b)) == []
    assert validate(union(union(a, b), a)) == []
