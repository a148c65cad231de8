"""Acceptance criteria, one test per criterion.

Each test prints a single [PASS]/[FAIL] line (visible with ``pytest -s``
or in failure output).  Criterion 9 is expected to fail: the claimed
deterministic width for the balanced case k = n/2 is off by one, and the
test documents the discrepancy with a machine-checked witness instead of
weakening the assertion; see tests/test_bounds.py
(test_det_min_width_boundary_k_equals_half_n) for the witness.
"""

import time

import numpy as np
import pytest

from obddkit import (
    BooleanFunction,
    Semantics,
    build_and_nobdd,
    build_exact_deterministic,
    build_exact_unitary,
    build_mod,
    build_not_exact,
    build_not_perm,
    computes_function,
    counting_span_prefixes,
    det_min_width_fixed_order,
    hierarchy_report,
    intersection,
    lift,
    nuobdd_lower_bound,
    run,
    search_max_fooling_set,
    span_dimension,
    union,
    validate,
    verify_fooling_set,
)
from obddkit.bits import all_inputs, bits_to_index
from obddkit.cli import main as cli_main
from obddkit.kernel import accept_bits, compile_tables, final_rot_units


def report(ok: bool, line: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {line}")
    assert ok, line


def test_criterion_1_notperm_exhaustive(oracles):
    started = time.perf_counter()
    for m in (2, 3):
        program = build_not_perm(m)
        tables = compile_tables(program)
        assert tables.kind == "rot"  # zero test is an integer congruence
        bits = accept_bits(tables)
        oracle = oracles["notperm"](m)
        for index, sigma in enumerate(all_inputs(m * m)):
            assert bits[index] == oracle(sigma), (m, sigma)
    elapsed = time.perf_counter() - started
    report(elapsed < 5.0,
           f"criterion 1: notPERM m=2,3 exhaustive vs row/column-sum oracle "
           f"({elapsed:.2f}s < 5s)")


def test_criterion_2_exact_families_to_n12(oracles):
    started = time.perf_counter()
    for n in range(1, 13):
        table_cache = {}
        for k in range(0, n + 1):
            f = BooleanFunction.exact(n, k)
            table = table_cache.setdefault(k, f.table())
            unitary = build_exact_unitary(n, k)
            assert unitary.width == max(k + 1, n - k + 1), (n, k)
            assert validate(unitary) == []
            # the compiled tables *are* the exact basis-index evolution,
            # so acceptance probability is the 0/1 indicator by
            # construction; agreement with the counting oracle below
            tables = compile_tables(unitary)
            assert tables.kind == "perm"
            assert np.array_equal(accept_bits(tables), table), (n, k)
            det = build_exact_deterministic(n, k)
            assert det.width == min(k + 1, n - k + 1) + 1, (n, k)
            assert validate(det) == []
            assert np.array_equal(accept_bits(compile_tables(det)), table)
        if n <= 9:
            # independent of the kernel: exact structured runs report a
            # probability that is exactly 0 or 1 on every input
            for k in (0, n // 2, n):
                unitary = build_exact_unitary(n, k)
                for sigma in all_inputs(n):
                    assert run(unitary, sigma).probability.as_fraction() in (0, 1)
    elapsed = time.perf_counter() - started
    report(elapsed < 60.0,
           f"criterion 2: EXACT unitary/deterministic exhaustive n<=12, "
           f"all k ({elapsed:.2f}s < 60s)")


def test_criterion_3_mod_to_n12(oracles):
    for n in range(1, 13):
        for p in range(1, n + 1):
            program = build_mod(n, p)
            assert program.width == p
            assert validate(program) == []
            bits = accept_bits(compile_tables(program))
            assert np.array_equal(bits, BooleanFunction.mod(n, p).table()), (n, p)
    report(True, "criterion 3: MOD counters exhaustive n<=12, all p")


def test_criterion_4_mod_fooling_certificates():
    for n in range(2, 11):
        for p in range(1, n // 2 + 1):
            f = BooleanFunction.mod(n, p)
            cut = n - p + 1 if p > 1 else n // 2
            found = search_max_fooling_set(f, cut=cut)
            assert found.optimal and found.verified, (n, p)
            assert found.size() == p, (n, p, found.size())
            assert verify_fooling_set(f, found)
            cert = nuobdd_lower_bound(f)
            assert cert.value == p and cert.verified == "yes", (n, p)
            assert build_mod(n, p).width == p
    report(True, "criterion 4: fooling-set lower bound = p = constructed "
                 "upper for MOD^p_n, n<=10, p<=n/2")


def test_criterion_5_span_tightness():
    for n in range(2, 11):
        for k in range(0, n + 1):
            program = build_exact_unitary(n, k)
            level, prefixes = counting_span_prefixes(n, k)
            witness = span_dimension(program, level, prefixes)
            assert witness.certified
            assert witness.rank == max(k, n - k) + 1 == program.width, (n, k)
    report(True, "criterion 5: span rank = max(k, n-k)+1 = width on the "
                 "counting machines, n<=10, all k")


def test_criterion_6_composition_laws():
    # union is exact logical OR; intersection probability factorizes:
    # exhaustive at n = 8 on rotation operands and permutation operands
    n = 8
    rot_a, rot_b = build_not_exact(n, 2), build_not_exact(n, 5)
    perm_a = lift(build_mod(n, 2), Semantics.UNITARY)
    perm_b = lift(build_mod(n, 3), Semantics.UNITARY)
    for a, b in ((rot_a, rot_b), (perm_a, perm_b), (rot_a, perm_b)):
        u, t = union(a, b), intersection(a, b)
        assert validate(u) == [] and validate(t) == []
        for sigma in all_inputs(n):
            pa, pb = run(a, sigma).probability, run(b, sigma).probability
            assert run(u, sigma).probability.is_zero() == (
                pa.is_zero() and pb.is_zero()
            )
            assert run(t, sigma).probability == pa * pb

    composed = intersection(
        lift(build_mod(12, 2), Semantics.UNITARY),
        lift(build_mod(12, 3), Semantics.UNITARY),
    )
    assert composed.width == 6  # lcm(2, 3)
    assert computes_function(composed, BooleanFunction.mod(12, 6), "exact").passed
    cert = nuobdd_lower_bound(BooleanFunction.mod(12, 6))
    assert cert.value == 6 and cert.verified == "yes"
    report(True, "criterion 6: union OR-law and intersection factorization "
                 "exhaustive at n=8; MOD^2*MOD^3 at n=12 gives MOD^6 with "
                 "width 6 = lcm(2,3) and fooling lower bound 6")


def test_criterion_7_literal_parameter_regressions(tmp_path):
    # the literal step angle with k = n fails verification with a
    # concrete counterexample; the shipped correction passes
    lit = tmp_path / "notexact-literal.json"
    ok = tmp_path / "notexact.json"
    assert cli_main(["build", "notexact", "--n", "4", "--k", "4", "--literal",
                     "--out", str(lit)]) == 0
    assert cli_main(["verify", str(lit), "notexact", "--n", "4", "--k", "4",
                     "--mode", "nondeterministic"]) == 1
    assert cli_main(["build", "notexact", "--n", "4", "--k", "4",
                     "--out", str(ok)]) == 0
    assert cli_main(["verify", str(ok), "notexact", "--n", "4", "--k", "4",
                     "--mode", "nondeterministic"]) == 0

    # the literal exponent variant scales every accumulated encoding by
    # m+1, which is invertible modulo t_max, so it still verifies; the
    # shipped shift is what makes the accumulated rotation equal
    # T(A) * alpha (see test_constructions for that invariant)
    for m in ("2", "3"):
        lit_np = tmp_path / f"notperm-literal-{m}.json"
        assert cli_main(["build", "notperm", "--m", m, "--literal",
                         "--out", str(lit_np)]) == 0
        assert cli_main(["verify", str(lit_np), "notperm", "--m", m,
                         "--mode", "nondeterministic"]) == 0
    corrected = tmp_path / "notperm.json"
    assert cli_main(["build", "notperm", "--m", "3",
                     "--out", str(corrected)]) == 0
    assert cli_main(["verify", str(corrected), "notperm", "--m", "3",
                     "--mode", "nondeterministic"]) == 0
    report(True, "criterion 7: literal angle fails verification with "
                 "counterexample 0000, corrections pass (literal exponents "
                 "verify either way; divergence documented)")


def test_criterion_8_notexact_to_n14(oracles):
    started = time.perf_counter()
    for n in range(1, 15):
        for k in range(0, n + 1):
            program = build_not_exact(n, k)
            assert program.width == 2
            bits = accept_bits(compile_tables(program))
            assert np.array_equal(
                bits, BooleanFunction.not_exact(n, k).table()
            ), (n, k)
    elapsed = time.perf_counter() - started
    report(True, f"criterion 8: notEXACT width-2 machines exhaustive "
                 f"n<=14, all k ({elapsed:.2f}s)")


def test_criterion_9_deterministic_width_oracle():
    for n in range(2, 11):
        assert det_min_width_fixed_order(BooleanFunction.and_(n)) == 2
    mismatches = []
    for n in range(2, 11):
        for k in range(1, n):
            got = det_min_width_fixed_order(BooleanFunction.exact(n, k))
            want = min(k + 1, n - k + 1) + 1
            if got != want:
                mismatches.append((n, k, got, want))
    ok = not mismatches
    report(ok,
           "criterion 9: detMinWidthFixedOrder(EXACT^k_n) = "
           "min(k+1, n-k+1)+1 for 2<=n<=10, 0<k<n"
           + ("" if ok else
              f" -- UNATTAINABLE at the balanced points {mismatches}: the "
              "subfunction count at k = n/2 is k+1 (a width-(k+1) OBDD is "
              "constructed and machine-verified in test_bounds), so the "
              "expected k+2 overstates the minimal width by one"))


def test_criterion_10_cited_claims_and_property_substitutes():
    # the universal claims appear in reports as cited, never as verified
    rep = hierarchy_report(9, 2, 5)
    cited = [c for c in rep.incomparability if c.verified == "cited"]
    assert any(c.function == "AND_9" for c in cited)
    notperm_rows = [c for c in rep.incomparability
                    if c.function == "notPERM_9"]
    assert any(c.verified == "cited" and c.bound == "lower"
               for c in notperm_rows)
    assert any(c.verified == "yes" and c.bound == "upper" and c.value == 2
               for c in notperm_rows)

    # substitute property suites: every shipped machine validates, and
    # the exact invariants hold level by level on every input
    machines = [
        build_mod(6, 3), build_exact_unitary(6, 2),
        build_exact_deterministic(6, 4), build_not_exact(6, 3),
        build_not_perm(2), build_and_nobdd(6),
        union(build_not_exact(6, 1), build_not_exact(6, 5)),
        intersection(lift(build_mod(6, 2), Semantics.UNITARY),
                     build_not_exact(6, 3)),
    ]
    for program in machines:
        assert validate(program) == [], program.name
    for program in machines:
        if program.semantics in (Semantics.UNITARY, Semantics.REVERSIBLE):
            for sigma in all_inputs(program.n):
                trace = run(program, sigma)
                for state in trace.states:
                    assert state.norm_squared().as_fraction() == 1
    report(True, "criterion 10: universal bounds carried as cited claims; "
                 "validity and exact norm conservation verified on every "
                 "shipped machine")
