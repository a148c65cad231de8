import json
from fractions import Fraction

import pytest

from obddkit import (
    Semantics,
    build_and_nobdd,
    build_exact_deterministic,
    build_exact_unitary,
    build_mod,
    build_not_exact,
    build_not_perm,
    computes_function,
    intersection,
    lift,
    run,
    union,
)
from obddkit.bits import all_inputs
from obddkit.io import (
    ProgramFileError,
    load_program,
    program_from_json,
    program_to_json,
    save_program,
    save_report,
)
from obddkit.bounds import bound_certificates
from obddkit.model import AngleState, BlockState, ProductState


def shipped_programs():
    yield build_mod(6, 3)
    yield build_not_perm(2)
    yield build_not_exact(5, 2)
    yield build_exact_unitary(6, 2)
    yield build_exact_deterministic(6, 2)
    yield build_and_nobdd(4)
    yield union(build_not_exact(5, 1), build_not_exact(5, 4))
    yield intersection(
        lift(build_mod(6, 2), Semantics.UNITARY),
        lift(build_mod(6, 3), Semantics.UNITARY),
    )
    yield intersection(build_not_exact(4, 1), build_not_exact(4, 2))


@pytest.mark.parametrize("program", list(shipped_programs()),
                         ids=lambda p: p.name or "anon")
def test_round_trip_is_identity_on_canonical_form(tmp_path, program):
    path = tmp_path / "program.json"
    save_program(program, path)
    loaded = load_program(path)
    assert program_to_json(loaded) == program_to_json(program)
    # behavioural identity on a sample of inputs
    for sigma in list(all_inputs(program.n))[:16]:
        assert run(loaded, sigma).probability == run(program, sigma).probability


def test_round_trip_twice_is_stable(tmp_path):
    program = union(build_not_exact(4, 1), build_not_exact(4, 3))
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_program(program, p1)
    save_program(load_program(p1), p2)
    assert p1.read_text() == p2.read_text()


def test_file_is_newline_terminated_utf8(tmp_path):
    path = tmp_path / "m.json"
    save_program(build_mod(4, 2), path)
    text = path.read_text(encoding="utf-8")
    assert text.endswith("\n")
    doc = json.loads(text)
    assert doc["format"] == "obdd-program"
    assert doc["accepting"] == [1]  # 1-based in the file
    assert doc["order"] == [1, 2, 3, 4]


def test_rotation_levels_use_rot2_shorthand(tmp_path):
    path = tmp_path / "ne.json"
    save_program(build_not_exact(4, 2), path)
    doc = json.loads(path.read_text())
    assert doc["levels"][0]["on1"] == {"kind": "rot2", "num": 1, "den": 5}
    # the initial state is the (cos, sin) pair record of angle -2pi/5
    assert doc["initial"] == [{"kind": "trig", "num": 8, "den": 5}]


def test_loaded_rotation_program_keeps_exact_angles(tmp_path):
    path = tmp_path / "ne.json"
    save_program(build_not_exact(4, 2), path)
    loaded = load_program(path)
    assert isinstance(loaded.initial, AngleState)
    assert loaded.initial.angle == Fraction(8, 5)
    assert run(loaded, "0011").probability.is_zero()


def test_composed_states_round_trip_structurally(tmp_path):
    u = union(build_not_exact(4, 1), build_not_exact(4, 3))
    path = tmp_path / "u.json"
    save_program(u, path)
    loaded = load_program(path)
    assert isinstance(loaded.initial, BlockState)
    t = intersection(build_not_exact(4, 1), build_not_exact(4, 2))
    save_program(t, path)
    assert isinstance(load_program(path).initial, ProductState)


def test_dense_rotation_matrix_is_recognised(tmp_path):
    # a hand-written file spelling the rotation out entrywise still
    # parses into an exactly runnable machine
    doc = {
        "format": "obdd-program", "version": 1, "semantics": "unitary",
        "n": 1, "width": 2, "order": [1],
        "initial": [{"kind": "trig", "num": 0, "den": 1}],
        "levels": [{
            "var": 1,
            "on0": {"kind": "rot2", "num": 0, "den": 1},
            "on1": {"kind": "matrix", "rows": [
                [{"kind": "scalar", "num": 1, "den": 1, "sqrt2": 0,
                  "factors": [{"fn": "cos", "num": 1, "den": 3}]},
                 {"kind": "scalar", "num": -1, "den": 1, "sqrt2": 0,
                  "factors": [{"fn": "sin", "num": 1, "den": 3}]}],
                [{"kind": "scalar", "num": 1, "den": 1, "sqrt2": 0,
                  "factors": [{"fn": "sin", "num": 1, "den": 3}]},
                 {"kind": "scalar", "num": 1, "den": 1, "sqrt2": 0,
                  "factors": [{"fn": "cos", "num": 1, "den": 3}]}],
            ]},
        }],
        "accepting": [2],
    }
    program = program_from_json(doc)
    prob = run(program, "1").probability
    assert prob.render() == "sin^2(1*pi/3)"


def test_malformed_documents_rejected():
    with pytest.raises(ProgramFileError):
        program_from_json({"format": "something-else"})
    base = program_to_json(build_mod(4, 2))
    wrong_var = json.loads(json.dumps(base))
    wrong_var["levels"][0]["var"] = 3
    with pytest.raises(ProgramFileError):
        program_from_json(wrong_var)
    bad_width = json.loads(json.dumps(base))
    bad_width["width"] = 5
    with pytest.raises(ProgramFileError):
        program_from_json(bad_width)
    bad_scalar = json.loads(json.dumps(base))
    bad_scalar["initial"] = [{"kind": "complex", "re": 1}]
    with pytest.raises(ProgramFileError):
        program_from_json(bad_scalar)


def test_fractions_in_files_are_reduced(tmp_path):
    program = build_not_perm(2)
    path = tmp_path / "np.json"
    save_program(program, path)
    doc = json.loads(path.read_text())

    def walk(node):
        if isinstance(node, dict):
            if "den" in node:
                assert node["den"] > 0
                from math import gcd
                assert gcd(abs(node.get("num", 0)), node["den"]) == 1
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    walk(doc)


def test_report_file_shape(tmp_path):
    certs = bound_certificates("mod", n=6, p=3)
    path = tmp_path / "report.json"
    save_report(certs, path, title="mod bounds")
    doc = json.loads(path.read_text())
    assert doc["format"] == "obdd-report"
    assert doc["title"] == "mod bounds"
    entries = doc["entries"]
    assert any(e["evidence"] == "fooling-set" and e["verified"] == "yes"
               for e in entries)
    fooling = [e for e in entries if e["evidence"] == "fooling-set"][0]
    assert "pairs" in fooling["detail"]  # reproducible evidence
    cited = [e for e in entries if e["verified"] == "cited"]
    assert all("statement" in e["detail"] for e in cited)


def test_verified_rows_are_reproducible(tmp_path):
    # re-run the referenced operation from the serialized evidence
    from obddkit import FoolingSet, verify_fooling_set
    from obddkit.functions import BooleanFunction

    certs = bound_certificates("mod", n=6, p=3)
    path = tmp_path / "report.json"
    save_report(certs, path)
    doc = json.loads(path.read_text())
    fooling = [e for e in doc["entries"] if e["evidence"] == "fooling-set"][0]
    detail = fooling["detail"]
    fs = FoolingSet(
        order=tuple(detail["order"]), cut=detail["cut"],
        pairs=tuple((s, g) for s, g in detail["pairs"]),
    )
    assert verify_fooling_set(BooleanFunction.mod(6, 3), fs)
    assert fs.size() == fooling["value"]
