"""Program and report files.

Programs are stored as JSON (UTF-8, newline-terminated, human-diffable).
Scalar records are ``{"kind": "int", "value": v}``,
``{"kind": "rat", "num": p, "den": q}``, and - inside state lists -
``{"kind": "trig", "num": a, "den": b}``, which stands for the pair
(cos(pi*a/b), sin(pi*a/b)) and therefore contributes two consecutive
entries.  Rotation levels may use the shorthand
``{"kind": "rot2", "num": a, "den": b}``.  Composed machines use the
structural records ``blockdiag`` / ``kron`` (matrices) and ``blocks`` /
``product`` (states), and a general single-scalar record ``scalar``
carries a rational coefficient, a sqrt(2) exponent, and trig factors.

Files round-trip losslessly on canonical forms: fractions are reduced
with positive denominators, angles lie in [0, 2), and accepting states
are sorted 1-based indices.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .model import (
    AngleState,
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
    make_program,
)
from .scalars import COS, SIN, ExactScalar

PROGRAM_FORMAT = "obdd-program"
REPORT_FORMAT = "obdd-report"
FORMAT_VERSION = 1


class ProgramFileError(ValueError):
    """Malformed program file."""


# ---------------------------------------------------------------------------
# scalars


def scalar_to_record(x: ExactScalar) -> dict:
    if x.is_rational():
        q = x.q
        if q.denominator == 1:
            return {"kind": "int", "value": int(q)}
        return {"kind": "rat", "num": q.numerator, "den": q.denominator}
    record = {
        "kind": "scalar",
        "num": x.q.numerator,
        "den": x.q.denominator,
        "sqrt2": x.e,
        "factors": [
            {"fn": fn, "num": t.numerator, "den": t.denominator}
            for fn, t in x.factors
        ],
    }
    return record


def scalar_from_record(rec: dict) -> ExactScalar:
    kind = rec.get("kind")
    if kind == "int":
        return ExactScalar(int(rec["value"]))
    if kind == "rat":
        return ExactScalar(Fraction(int(rec["num"]), int(rec["den"])))
    if kind == "scalar":
        factors = tuple(
            (f["fn"], Fraction(int(f["num"]), int(f["den"])))
            for f in rec.get("factors", ())
        )
        for fn, _ in factors:
            if fn not in (COS, SIN):
                raise ProgramFileError(f"unknown trig factor {fn!r}")
        return ExactScalar(
            Fraction(int(rec["num"]), int(rec["den"])),
            int(rec.get("sqrt2", 0)),
            factors,
        )
    raise ProgramFileError(f"unknown scalar record kind {kind!r}")


def _fraction_of(rec: dict) -> Fraction:
    return Fraction(int(rec["num"]), int(rec["den"]))


# ---------------------------------------------------------------------------
# matrices


def matrix_to_record(mat: Matrix) -> dict:
    if isinstance(mat, Rotation2):
        return {
            "kind": "rot2",
            "num": mat.angle.numerator,
            "den": mat.angle.denominator,
        }
    if isinstance(mat, BlockDiagMatrix):
        return {"kind": "blockdiag",
                "blocks": [matrix_to_record(b) for b in mat.blocks]}
    if isinstance(mat, KronMatrix):
        return {"kind": "kron",
                "factors": [matrix_to_record(f) for f in mat.factors]}
    grid = [
        [scalar_to_record(mat.entry(r, c)) for c in range(mat.cols)]
        for r in range(mat.rows)
    ]
    return {"kind": "matrix", "rows": grid}


def _infer_rotation(grid) -> Rotation2 | None:
    if len(grid) != 2 or any(len(r) != 2 for r in grid):
        return None
    e00 = grid[0][0]
    if len(e00.factors) != 1 or e00.factors[0][0] != COS:
        return None
    base = e00.factors[0][1]
    for angle in (base, base + 1):  # cos(pi(t+1)) = -cos(pi t)
        want = Rotation2(angle)
        if all(
            grid[r][c] == want.entry(r, c) for r in range(2) for c in range(2)
        ):
            return want
    return None


def matrix_from_record(rec: dict) -> Matrix:
    kind = rec.get("kind")
    if kind == "rot2":
        return Rotation2(_fraction_of(rec))
    if kind == "blockdiag":
        return BlockDiagMatrix([matrix_from_record(b) for b in rec["blocks"]])
    if kind == "kron":
        return KronMatrix([matrix_from_record(f) for f in rec["factors"]])
    if kind == "matrix":
        grid = [
            [scalar_from_record(x) for x in row] for row in rec["rows"]
        ]
        if all(x.is_rational() for row in grid for x in row):
            return RationalMatrix([[x.q for x in row] for row in grid])
        rot = _infer_rotation(grid)
        if rot is not None:
            return rot
        return DenseMatrix(grid)
    raise ProgramFileError(f"unknown matrix record kind {kind!r}")


# ---------------------------------------------------------------------------
# states


def state_to_records(state: State) -> list:
    """The spec-level flat list when representable, else one structured
    record."""
    if isinstance(state, AngleState):
        return [{
            "kind": "trig",
            "num": state.angle.numerator,
            "den": state.angle.denominator,
        }]
    if isinstance(state, (BasisState, SubsetState, RationalState)):
        return [scalar_to_record(x) for x in state.entries()]
    if isinstance(state, BlockState):
        return [{
            "kind": "blocks",
            "parts": [
                {"weight": scalar_to_record(w), "state": _nested_state(s)}
                for w, s in state.parts
            ],
        }]
    if isinstance(state, ProductState):
        return [{
            "kind": "product",
            "factors": [_nested_state(f) for f in state.factors],
        }]
    return [scalar_to_record(x) for x in state.entries()]


def _nested_state(state: State) -> dict:
    if isinstance(state, AngleState):
        return {"kind": "angle", "num": state.angle.numerator,
                "den": state.angle.denominator}
    if isinstance(state, BasisState):
        return {"kind": "basis", "dim": state.dim, "index": state.index + 1}
    if isinstance(state, SubsetState):
        return {"kind": "subset", "dim": state.dim,
                "indices": sorted(i + 1 for i in state.indices)}
    if isinstance(state, RationalState):
        return {"kind": "rational",
                "values": [scalar_to_record(ExactScalar(v)) for v in state.values]}
    if isinstance(state, BlockState):
        return {"kind": "blocks", "parts": [
            {"weight": scalar_to_record(w), "state": _nested_state(s)}
            for w, s in state.parts
        ]}
    if isinstance(state, ProductState):
        return {"kind": "product",
                "factors": [_nested_state(f) for f in state.factors]}
    return {"kind": "dense",
            "values": [scalar_to_record(x) for x in state.entries()]}


def _nested_state_from(rec: dict) -> State:
    kind = rec.get("kind")
    if kind == "angle":
        return AngleState(_fraction_of(rec))
    if kind == "basis":
        return BasisState(int(rec["dim"]), int(rec["index"]) - 1)
    if kind == "subset":
        return SubsetState(int(rec["dim"]),
                           {int(i) - 1 for i in rec["indices"]})
    if kind == "rational":
        return RationalState(
            [scalar_from_record(v).as_fraction() for v in rec["values"]]
        )
    if kind == "blocks":
        return BlockState(tuple(
            (scalar_from_record(p["weight"]), _nested_state_from(p["state"]))
            for p in rec["parts"]
        ))
    if kind == "product":
        return ProductState(tuple(
            _nested_state_from(f) for f in rec["factors"]
        ))
    if kind == "dense":
        return DenseState(tuple(scalar_from_record(v) for v in rec["values"]))
    raise ProgramFileError(f"unknown state record kind {kind!r}")


def state_from_records(records: list, semantics: Semantics, width: int) -> State:
    if len(records) == 1 and records[0].get("kind") in (
        "blocks", "product", "basis", "subset", "rational", "dense", "angle",
    ):
        state = _nested_state_from(records[0])
    elif len(records) == 1 and records[0].get("kind") == "trig":
        state = AngleState(_fraction_of(records[0]))
    else:
        entries: list[ExactScalar] = []
        for rec in records:
            if rec.get("kind") == "trig":
                t = _fraction_of(rec)
                entries.append(ExactScalar.cospi(t))
                entries.append(ExactScalar.sinpi(t))
            else:
                entries.append(scalar_from_record(rec))
        if all(x.is_rational() for x in entries):
            values = [x.q for x in entries]
            hot = [i for i, v in enumerate(values) if v != 0]
            if semantics == Semantics.NONDETERMINISTIC and all(
                v in (0, 1) for v in values
            ):
                state = SubsetState(len(values), set(hot))
            elif len(hot) == 1 and values[hot[0]] == 1:
                state = BasisState(len(values), hot[0])
            else:
                state = RationalState(values)
        else:
            state = DenseState(tuple(entries))
    if state.dim != width:
        raise ProgramFileError(
            f"initial state has dimension {state.dim}, want {width}"
        )
    return state


# ---------------------------------------------------------------------------
# programs


def program_to_json(program: LeveledProgram) -> dict:
    doc = {
        "format": PROGRAM_FORMAT,
        "version": FORMAT_VERSION,
        "semantics": program.semantics.value,
        "n": program.n,
        "width": program.width,
        "order": list(program.order),
        "initial": state_to_records(program.initial),
        "levels": [
            {
                "var": level.var,
                "on0": matrix_to_record(level.on0),
                "on1": matrix_to_record(level.on1),
            }
            for level in program.levels
        ],
        "accepting": sorted(a + 1 for a in program.accepting),
    }
    if program.name:
        doc["name"] = program.name
    return doc


def program_from_json(doc: dict) -> LeveledProgram:
    if doc.get("format") != PROGRAM_FORMAT:
        raise ProgramFileError(
            f"not an {PROGRAM_FORMAT} document: format={doc.get('format')!r}"
        )
    if int(doc.get("version", 0)) > FORMAT_VERSION:
        raise ProgramFileError(f"unsupported version {doc.get('version')}")
    try:
        semantics = Semantics(doc["semantics"])
        n = int(doc["n"])
        width = int(doc["width"])
        order = tuple(int(v) for v in doc["order"])
        initial = state_from_records(doc["initial"], semantics, width)
        pairs = [
            (matrix_from_record(level["on0"]), matrix_from_record(level["on1"]))
            for level in doc["levels"]
        ]
        level_vars = [int(level["var"]) for level in doc["levels"]]
        accepting = {int(a) - 1 for a in doc["accepting"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ProgramFileError(f"malformed program file: {exc}") from exc
    if tuple(level_vars) != order:
        raise ProgramFileError("level variables disagree with the order")
    return make_program(
        semantics=semantics, n=n, width=width, order=order,
        level_matrices=pairs, initial=initial, accepting=accepting,
        name=doc.get("name", ""),
    )


def save_program(program: LeveledProgram, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(program_to_json(program), handle, indent=2)
        handle.write("\n")


def load_program(path) -> LeveledProgram:
    with open(path, "r", encoding="utf-8") as handle:
        return program_from_json(json.load(handle))


# ---------------------------------------------------------------------------
# reports


def certificates_to_json(certificates, title: str = "") -> dict:
    entries = []
    for cert in certificates:
        rec = cert.as_record()
        detail = _evidence_detail(cert)
        if detail:
            rec["detail"] = detail
        entries.append(rec)
    doc = {"format": REPORT_FORMAT, "version": FORMAT_VERSION,
           "entries": entries}
    if title:
        doc["title"] = title
    return doc


def _evidence_detail(cert) -> dict | None:
    from .bounds import CitedClaim, FoolingSet, SpanWitness

    ev = cert.evidence
    if isinstance(ev, FoolingSet):
        return {
            "order": list(ev.order),
            "cut": ev.cut,
            "pairs": [[s, g] for s, g in ev.pairs],
            "optimal": ev.optimal,
        }
    if isinstance(ev, SpanWitness):
        return {
            "level": ev.level,
            "prefixes": list(ev.prefixes),
            "rank": ev.rank,
            "method": ev.method,
        }
    if isinstance(ev, LeveledProgram):
        return {"program": ev.name or "construction", "width": ev.width}
    if isinstance(ev, CitedClaim):
        return {"statement": ev.statement}
    return None


def save_report(certificates, path, title: str = "") -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(certificates_to_json(certificates, title), handle, indent=2)
        handle.write("\n")
