"""Executable width bounds.

Lower bounds come in three machine-checkable flavours:

* strong 1-fooling sets: a set of (prefix, suffix) pairs, each
  completing to a 1 of the function, with every cross completion a 0.
  Its size lower-bounds the width of any threshold-0 unitary program
  reading in that order.  ``search_max_fooling_set`` phrases the search
  as maximum clique on the cross-zero compatibility graph of the cut
  matrix's 1-cells and solves it by branch and bound with a greedy
  colouring bound.
* span dimension: the exact rank of the reachable state vectors of a
  given program at a level, computed fraction-free over the rationals
  (or by angle-class counting for rotation machines).
* subfunction counting: the exact minimal deterministic OBDD width for
  a fixed order is the maximal number of distinct subfunctions over any
  level; ``minimal_obdd`` materialises the witnessing machine.

Claims that cannot be re-verified at desk scale (universal bounds over
all machines, read-once branching program results from the literature)
are carried as cited claims and are flagged as such in certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm, log2
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import bits as bt
from .config import check_enumerable
from .functions import BooleanFunction
from .model import (
    BasisState,
    LeveledProgram,
    RationalMatrix,
    Semantics,
    make_program,
)
from .semantics import run_prefix

DEFAULT_SEARCH_BUDGET = 200_000
ALL_ORDERS_CAP = 8


# ---------------------------------------------------------------------------
# fooling sets


@dataclass
class FoolingSet:
    """A cut, an order, and (prefix, suffix) pairs; carries its own
    verification status (never assumed)."""

    order: Tuple[int, ...]
    cut: int
    pairs: Tuple[Tuple[str, str], ...]
    verified: Optional[bool] = None
    optimal: bool = False

    def size(self) -> int:
        return len(self.pairs)


def verify_fooling_set(f: BooleanFunction, fs: FoolingSet) -> bool:
    """Check the strong 1-fooling conditions by brute evaluation."""
    order = bt.check_order(fs.order, f.n)
    k = fs.cut
    if not 0 < k < f.n:
        raise ValueError(f"cut must satisfy 0 < k < n, got {k}")
    for sigma, gamma in fs.pairs:
        bt.check_bits(sigma, k)
        bt.check_bits(gamma, f.n - k)
    prefixes = [s for s, _ in fs.pairs]
    if len(set(prefixes)) != len(prefixes):
        return False
    for sigma, gamma in fs.pairs:
        if f.evaluate(bt.scatter(order, sigma, gamma)) != 1:
            return False
    for i, (si, gi) in enumerate(fs.pairs):
        for sj, gj in fs.pairs[i + 1:]:
            if f.evaluate(bt.scatter(order, si, gj)) != 0:
                return False
            if f.evaluate(bt.scatter(order, sj, gi)) != 0:
                return False
    return True


def mod_fooling_pairs(n: int, p: int) -> FoolingSet:
    """The standard fooling set for MOD^p_n at cut n-p+1: prefixes
    0...01^i with suffixes 0^(i-1)1^(p-i), i = 1..p (any order works for
    a symmetric function; the natural one is attached)."""
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    if n - 2 * p + 1 < 0:
        # the largest prefix 1^p must fit into the cut n-p+1
        raise ValueError(f"cut n-p+1 cannot host 1^p for p={p}, n={n}")
    k = n - p + 1
    pairs = tuple(
        ("0" * (k - i) + "1" * i, "0" * (i - 1) + "1" * (p - i))
        for i in range(1, p + 1)
    )
    return FoolingSet(order=bt.natural_order(n), cut=k, pairs=pairs)


def _cut_cells(f: BooleanFunction, order, k: int):
    """All 1-cells of the cut matrix: by-index prefix/suffix parts of
    every input with f = 1, plus the bit masks to rebuild cross inputs."""
    n = f.n
    table = f.table()
    ones = np.flatnonzero(table).astype(np.int64)
    pre_positions = [n - order[j] for j in range(k)]
    mask_pre = np.int64(sum(1 << s for s in pre_positions))
    pre = ones & mask_pre
    suf = ones & ~mask_pre
    return table, ones, pre, suf


def search_max_fooling_set(
    f: BooleanFunction,
    order=None,
    cut: Optional[int] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> FoolingSet:
    """Largest strong 1-fooling set found within the node budget at one
    cut (branch and bound over cross-zero-compatible 1-cells).  The
    result is re-verified; ``optimal`` is set iff the search completed.
    """
    order = bt.natural_order(f.n) if order is None else bt.check_order(order, f.n)
    if cut is None:
        raise ValueError("cut position required (use nuobdd_lower_bound to scan)")
    if not 0 < cut < f.n:
        raise ValueError(f"cut must satisfy 0 < cut < n, got {cut}")
    check_enumerable(f.n, "fooling-set search")
    table, ones, pre, suf = _cut_cells(f, order, cut)
    v = len(ones)
    if v == 0:
        return FoolingSet(order, cut, (), verified=True, optimal=True)
    cross = table[(pre[:, None] | suf[None, :])]
    compat = (cross == 0) & (cross.T == 0)
    np.fill_diagonal(compat, False)
    adj = [
        int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        for row in compat
    ]
    chosen, complete = _max_clique(adj, budget)
    pairs = tuple(sorted(_cell_to_pair(f.n, order, cut, int(ones[c])) for c in chosen))
    fs = FoolingSet(order, cut, pairs, optimal=complete)
    fs.verified = verify_fooling_set(f, fs)
    return fs


def _cell_to_pair(n, order, k, index) -> Tuple[str, str]:
    sigma_bits = bt.index_to_bits(index, n)
    sigma = "".join(sigma_bits[order[j] - 1] for j in range(k))
    gamma = "".join(sigma_bits[order[j] - 1] for j in range(k, n))
    return sigma, gamma


def _max_clique(adj: List[int], budget: int) -> Tuple[List[int], bool]:
    """Deterministic branch-and-bound maximum clique over bitset
    adjacency; returns (clique, search_completed)."""
    v = len(adj)
    full = (1 << v) - 1
    # greedy seed: descending degree, lexicographic tie-break
    by_degree = sorted(range(v), key=lambda u: (-bin(adj[u]).count("1"), u))
    seed, allowed = [], full
    for u in by_degree:
        if (allowed >> u) & 1:
            seed.append(u)
            allowed &= adj[u]
    state = {"best": seed, "nodes": 0, "complete": True}

    def coloring(candidates: int):
        sequence, bounds = [], []
        color = 0
        remaining = candidates
        while remaining:
            color += 1
            pool = remaining
            while pool:
                u = (pool & -pool).bit_length() - 1
                bit = 1 << u
                pool &= ~bit & ~adj[u]
                remaining &= ~bit
                sequence.append(u)
                bounds.append(color)
        return sequence, bounds

    def expand(clique: List[int], candidates: int):
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["complete"] = False
            return
        sequence, bounds = coloring(candidates)
        for i in range(len(sequence) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(state["best"]):
                return
            u = sequence[i]
            clique.append(u)
            sub = candidates & adj[u]
            if sub:
                expand(clique, sub)
            elif len(clique) > len(state["best"]):
                state["best"] = clique.copy()
            clique.pop()
            candidates &= ~(1 << u)

    expand([], full)
    return state["best"], state["complete"]


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CitedClaim:
    """A bound quoted from the literature, not re-verified here."""

    statement: str


@dataclass
class WidthCertificate:
    """A lower- or upper-bound claim with its evidence attached.

    ``verified`` is "yes" only for machine-checked evidence (a fooling
    set that re-verifies, a span witness with exact rank, a constructed
    program that passes exhaustive verification, a subfunction count);
    "cited" marks literature claims; "no" marks degraded rows.
    """

    function: str
    model: str
    bound: str
    value: int
    evidence_kind: str
    verified: str
    note: str = ""
    evidence: object = field(default=None, repr=False)

    def as_record(self) -> dict:
        rec = {
            "function": self.function,
            "model": self.model,
            "bound": self.bound,
            "value": self.value,
            "evidence": self.evidence_kind,
            "verified": self.verified,
        }
        if self.note:
            rec["note"] = self.note
        return rec


def nuobdd_lower_bound(
    f: BooleanFunction,
    orders="natural",
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> WidthCertificate:
    """Fooling-set width certificate.

    For a single order (or an explicit list) the value is the largest
    verified fooling set over all cuts, a bound valid for machines
    reading in the witnessing order.  For ``orders="all"`` every order
    of the (<= 8)-variable function is scanned and the value is the
    *minimum* over orders of the per-order maximum, which is the bound
    valid for every machine regardless of order.
    """
    if orders == "natural":
        order_list = [bt.natural_order(f.n)]
        scope = "natural order"
        universal = False
    elif orders == "all":
        if f.n > ALL_ORDERS_CAP:
            raise ValueError(f"all-orders scan capped at n={ALL_ORDERS_CAP}")
        order_list = list(bt.all_orders(f.n))
        scope = "all orders"
        universal = True
    else:
        order_list = [bt.check_order(o, f.n) for o in orders]
        scope = f"{len(order_list)} given order(s)"
        universal = False

    all_complete = True
    per_order: List[Tuple[int, FoolingSet]] = []
    for order in order_list:
        best_for_order: Optional[FoolingSet] = None
        for cut in range(1, f.n):
            fs = search_max_fooling_set(f, order, cut, budget=budget)
            if not fs.optimal:
                all_complete = False
            if not fs.verified:
                continue
            if best_for_order is None or fs.size() > best_for_order.size():
                best_for_order = fs
        if best_for_order is None:
            best_for_order = FoolingSet(order, 1, (), verified=True, optimal=True)
        per_order.append((best_for_order.size(), best_for_order))

    if universal:
        value, witness = min(per_order, key=lambda t: t[0])
    else:
        value, witness = max(per_order, key=lambda t: t[0])
    value = max(value, 1)  # width is at least 1
    return WidthCertificate(
        function=f.name(), model="NUOBDD", bound="lower", value=value,
        evidence_kind="fooling-set",
        verified="yes" if all_complete else "no",
        note=f"scope: {scope}; witness cut {witness.cut}, size {witness.size()}",
        evidence=witness,
    )


# ---------------------------------------------------------------------------
# span dimension


@dataclass
class SpanWitness:
    """Reachable states at a level whose exact rank lower-bounds the
    program width."""

    level: int
    prefixes: Tuple[str, ...]
    rank: int
    certified: bool
    method: str


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    if not rows:
        return 0
    den = 1
    frac = [[Fraction(x) for x in row] for row in rows]
    for row in frac:
        for x in row:
            den = lcm(den, x.denominator)
    a = [[int(x * den) for x in row] for row in frac]
    n_rows, n_cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(rank + 1, n_rows):
            for j in range(c + 1, n_cols):
                a[i][j] = (a[i][j] * a[rank][c] - a[i][c] * a[rank][j]) // prev
            a[i][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == n_rows:
            break
    return rank


def span_dimension(
    program: LeveledProgram, level: int, prefixes: Sequence[str]
) -> SpanWitness:
    """Exact dimension of the span of the states reached by the given
    prefixes (length = level).  Falls back to a float rank (tolerance
    1e-9, flagged uncertified) when the states leave the exactly
    rankable forms."""
    if not 0 <= level <= program.n:
        raise ValueError(f"level must be in 0..{program.n}")
    prefixes = tuple(prefixes)
    for p in prefixes:
        bt.check_bits(p, level)
    states = [run_prefix(program, p) for p in prefixes]

    if all(isinstance(s, BasisState) for s in states):
        rank = len({s.index for s in states})
        return SpanWitness(level, prefixes, rank, True, "distinct basis states")

    from .semantics import _as_scaled_angle

    angles = [_as_scaled_angle(s) for s in states]
    if all(a is not None for a in angles):
        lines = {ang % 1 for w, ang in angles if not w.is_zero()}
        rank = min(2, len(lines))
        return SpanWitness(level, prefixes, rank, True, "angle classes mod pi")

    entry_rows = [s.entries() for s in states]
    if all(x.is_rational() for row in entry_rows for x in row):
        rank = exact_rank([[x.q for x in row] for row in entry_rows])
        return SpanWitness(level, prefixes, rank, True, "fraction-free elimination")

    floats = np.array([[float(x) for x in row] for row in entry_rows])
    rank = int(np.linalg.matrix_rank(floats, tol=1e-9))
    return SpanWitness(level, prefixes, rank, False, "float rank (uncertified)")


def counting_span_prefixes(n: int, k: int) -> Tuple[int, Tuple[str, ...]]:
    """The prefix family 1^j 0^(l-j), j = 0..l at level l = max(k, n-k),
    which drives a counter for EXACT^k_n through l+1 distinct states."""
    level = max(k, n - k)
    prefixes = tuple("1" * j + "0" * (level - j) for j in range(level + 1))
    return level, prefixes


def span_lower_bound(program: LeveledProgram, level: int,
                     prefixes: Sequence[str],
                     function_name: str = "") -> WidthCertificate:
    witness = span_dimension(program, level, prefixes)
    return WidthCertificate(
        function=function_name or program.name, model="NUOBDD", bound="lower",
        value=witness.rank, evidence_kind="span-dimension",
        verified="yes" if witness.certified else "no",
        note=f"rank of {len(witness.prefixes)} reachable states at level "
        f"{witness.level} ({witness.method})",
        evidence=witness,
    )


# ---------------------------------------------------------------------------
# deterministic width oracles


def _ordered_table_cube(f: BooleanFunction, order) -> np.ndarray:
    n = f.n
    cube = f.table().reshape((2,) * n) if n else f.table()
    axes = [o - 1 for o in order]
    return cube.transpose(axes)


def _level_subfunction_count(flat: np.ndarray, n: int, level: int) -> int:
    rows = flat.reshape(1 << level, 1 << (n - level))
    return len({rows[i].tobytes() for i in range(rows.shape[0])})


def det_min_width_fixed_order(f: BooleanFunction, order=None) -> int:
    """Minimal deterministic OBDD width for the order: the maximum over
    levels of the number of distinct subfunctions of the prefix
    assignments."""
    order = bt.natural_order(f.n) if order is None else bt.check_order(order, f.n)
    check_enumerable(f.n, "subfunction enumeration")
    flat = _ordered_table_cube(f, order).reshape(-1)
    return max(
        _level_subfunction_count(flat, f.n, level) for level in range(f.n + 1)
    )


def det_min_width_all_orders(f: BooleanFunction) -> Tuple[int, Tuple[int, ...]]:
    """Minimum of :func:`det_min_width_fixed_order` over all n! orders
    with a witnessing order (n <= 8).

    The subfunction count at a level depends only on the *set* of
    prefix variables, so the scan is a minimax path over the subset
    lattice rather than literal n! enumeration.
    """
    n = f.n
    if n > ALL_ORDERS_CAP:
        raise ValueError(f"all-orders scan capped at n={ALL_ORDERS_CAP}")
    cube = f.table().reshape((2,) * n)
    counts = {}
    for mask in range(1 << n):
        prefix_vars = [i for i in range(n) if mask >> i & 1]
        suffix_vars = [i for i in range(n) if not mask >> i & 1]
        arr = cube.transpose(prefix_vars + suffix_vars).reshape(
            1 << len(prefix_vars), -1
        )
        counts[mask] = len({arr[i].tobytes() for i in range(arr.shape[0])})

    full = (1 << n) - 1
    best_cost = {full: counts[full]}
    best_next = {}
    by_popcount = sorted(range(1 << n), key=lambda m: -bin(m).count("1"))
    for mask in by_popcount:
        if mask == full:
            continue
        options = []
        for i in range(n):
            if not mask >> i & 1:
                options.append((best_cost[mask | (1 << i)], i))
        tail, via = min(options)
        best_cost[mask] = max(counts[mask], tail)
        best_next[mask] = via
    order = []
    mask = 0
    while mask != full:
        via = best_next[mask]
        order.append(via + 1)
        mask |= 1 << via
    return best_cost[0], tuple(order)


def minimal_obdd(f: BooleanFunction, order=None) -> LeveledProgram:
    """The canonical minimal-width deterministic OBDD for the order:
    one state per distinct subfunction at each level."""
    order = bt.natural_order(f.n) if order is None else bt.check_order(order, f.n)
    check_enumerable(f.n, "minimal OBDD construction")
    n = f.n
    flat = _ordered_table_cube(f, order).reshape(-1)
    level_ids: List[dict] = []
    level_classes: List[np.ndarray] = []
    for level in range(n + 1):
        rows = flat.reshape(1 << level, 1 << (n - level))
        ids: dict = {}
        classes = np.empty(1 << level, dtype=np.int64)
        for i in range(rows.shape[0]):
            key = rows[i].tobytes()
            if key not in ids:
                ids[key] = len(ids)
            classes[i] = ids[key]
        level_ids.append(ids)
        level_classes.append(classes)
    width = max(len(ids) for ids in level_ids)

    pairs = []
    for level in range(n):
        classes = level_classes[level]
        nxt = level_classes[level + 1]
        reps = {}
        for i in range(classes.shape[0]):
            reps.setdefault(int(classes[i]), i)
        maps = {0: list(range(width)), 1: list(range(width))}
        for cls, rep in reps.items():
            maps[0][cls] = int(nxt[2 * rep])
            maps[1][cls] = int(nxt[2 * rep + 1])
        pairs.append((
            RationalMatrix.from_column_map(width, maps[0]),
            RationalMatrix.from_column_map(width, maps[1]),
        ))

    accepting = {
        cls for key, cls in level_ids[n].items() if key == b"\x01"
    }
    return make_program(
        semantics=Semantics.DETERMINISTIC, n=n, width=width, order=order,
        level_matrices=pairs, initial=BasisState(width, 0),
        accepting=accepting,
        name=f"minimal OBDD for {f.name()}",
    )


# ---------------------------------------------------------------------------
# report assembly


def _construction_upper(program: LeveledProgram, f: BooleanFunction,
                        model: str, mode: str) -> WidthCertificate:
    from .semantics import computes_function

    report = computes_function(program, f, mode)
    return WidthCertificate(
        function=f.name(), model=model, bound="upper", value=program.width,
        evidence_kind="construction",
        verified="yes" if report.passed else "no",
        note="" if report.passed else f"verification failed: {report.detail}",
        evidence=program,
    )


def notperm_nobdd_cited(n: int) -> WidthCertificate:
    """The read-once branching program bound: any nondeterministic OBDD
    for the not-a-permutation test needs width at least
    sqrt(n) - (5/4) log2(n) - 1.  Cited, not re-verified."""
    raw = n ** 0.5 - 1.25 * log2(n) - 1
    return WidthCertificate(
        function=f"notPERM_{n}", model="NOBDD", bound="lower",
        value=max(1, int(np.ceil(raw))), evidence_kind="cited-claim",
        verified="cited",
        note=f"sqrt(n) - (5/4)*log2(n) - 1 = {raw:.3f}",
        evidence=CitedClaim("width >= sqrt(n) - (5/4)log2(n) - 1 for any "
                            "NOBDD computing notPERM"),
    )


def bound_certificates(family: str, *, n=None, k=None, p=None, m=None,
                       orders="natural",
                       budget: int = DEFAULT_SEARCH_BUDGET) -> List[WidthCertificate]:
    """The certificate bundle behind the ``bound`` CLI command."""
    from .constructions import (
        build_and_nobdd,
        build_exact_deterministic,
        build_exact_unitary,
        build_mod,
        build_not_exact,
        build_not_perm,
    )

    certs: List[WidthCertificate] = []
    if family == "mod":
        f = BooleanFunction.mod(n, p)
        certs.append(_construction_upper(
            build_mod(n, p), f, "NUOBDD", "exact"))
        certs.append(nuobdd_lower_bound(f, orders=orders, budget=budget))
        if 2 * p > n:
            program = build_mod(n, p)
            level = p - 1
            prefixes = tuple("1" * j + "0" * (level - j) for j in range(p))
            certs.append(span_lower_bound(program, level, prefixes, f.name()))
        certs.append(WidthCertificate(
            function=f.name(), model="NOBDD", bound="lower", value=p,
            evidence_kind="cited-claim", verified="cited",
            note="counting argument for p <= n/2; not re-verified",
            evidence=CitedClaim("width >= p for any NOBDD computing MOD^p_n, "
                                "p <= n/2"),
        ))
    elif family in ("exact", "exact-u", "exact-d"):
        f = BooleanFunction.exact(n, k)
        quantum = build_exact_unitary(n, k)
        certs.append(_construction_upper(quantum, f, "exact-UOBDD", "exact"))
        level, prefixes = counting_span_prefixes(n, k)
        certs.append(span_lower_bound(quantum, level, prefixes, f.name()))
        certs.append(_construction_upper(
            build_exact_deterministic(n, k), f, "OBDD", "deterministic"))
        certs.append(WidthCertificate(
            function=f.name(), model="OBDD", bound="lower",
            value=det_min_width_fixed_order(f),
            evidence_kind="subfunction-count", verified="yes",
            note="exact minimal width for the natural order",
        ))
        certs.append(WidthCertificate(
            function=f.name(), model="NUOBDD", bound="lower",
            value=max(k + 1, n - k + 1), evidence_kind="cited-claim",
            verified="cited",
            note="universal over machines; the span witness above checks "
                 "tightness on the shipped machine",
            evidence=CitedClaim("width >= max(k+1, n-k+1) for any NUOBDD "
                                "computing EXACT^k_n"),
        ))
    elif family == "notexact":
        f = BooleanFunction.not_exact(n, k)
        certs.append(_construction_upper(
            build_not_exact(n, k), f, "NUOBDD", "nondeterministic"))
        certs.append(nuobdd_lower_bound(f, orders=orders, budget=budget))
    elif family == "and":
        f = BooleanFunction.and_(n)
        certs.append(_construction_upper(
            build_and_nobdd(n), f, "NOBDD", "nondeterministic"))
        certs.append(_construction_upper(
            build_exact_unitary(n, n), f, "exact-UOBDD", "exact"))
        certs.append(WidthCertificate(
            function=f.name(), model="NUOBDD", bound="lower", value=n + 1,
            evidence_kind="cited-claim", verified="cited",
            note="AND_n = EXACT^n_n; universal over machines",
            evidence=CitedClaim("width >= n+1 for any NUOBDD computing AND_n"),
        ))
    elif family == "notperm":
        f = BooleanFunction.not_perm(m)
        certs.append(_construction_upper(
            build_not_perm(m), f, "NUOBDD", "nondeterministic"))
        certs.append(notperm_nobdd_cited(m * m))
    else:
        raise ValueError(f"unknown bound family {family!r}")
    return certs


@dataclass
class HierarchyRow:
    d: int
    function: str
    certificates: Tuple[WidthCertificate, ...]

    def verified_fully(self) -> bool:
        return all(c.verified == "yes" for c in self.certificates
                   if c.evidence_kind != "cited-claim")


@dataclass
class HierarchyReport:
    n: int
    d_range: Tuple[int, int]
    rows: Tuple[HierarchyRow, ...]
    incomparability: Tuple[WidthCertificate, ...]

    def all_certificates(self) -> List[WidthCertificate]:
        out = []
        for row in self.rows:
            out.extend(row.certificates)
        out.extend(self.incomparability)
        return out


def hierarchy_report(n: int, d_min: int, d_max: int,
                     budget: int = DEFAULT_SEARCH_BUDGET) -> HierarchyReport:
    """Separating-function table for widths d_min..d_max over n
    variables: MOD^d_n for 2d <= n, EXACT^(d-1)_n above, each with a
    verified upper bound (constructed machine) and the strongest
    checkable lower bound (fooling set or span witness), plus the
    incomparability certificates on AND_n and notPERM.
    """
    from .constructions import build_exact_unitary, build_mod

    check_enumerable(n, "hierarchy report")
    if not 2 <= d_min <= d_max <= n:
        raise ValueError(f"need 2 <= d_min <= d_max <= n, got {d_min}..{d_max}")
    rows = []
    for d in range(d_min, d_max + 1):
        certs: List[WidthCertificate] = []
        if 2 * d <= n:
            f = BooleanFunction.mod(n, d)
            certs.append(_construction_upper(build_mod(n, d), f, "NUOBDD", "exact"))
            certs.append(nuobdd_lower_bound(f, budget=budget))
        else:
            k = d - 1
            f = BooleanFunction.exact(n, k)
            program = build_exact_unitary(n, k)
            upper = _construction_upper(program, f, "exact-UOBDD", "exact")
            if program.width != d:
                upper.verified = "no"
                upper.note = (
                    f"construction has width {program.width} != {d}; the "
                    "d-width membership claim degrades to a cited claim at "
                    "this boundary"
                )
            certs.append(upper)
            level, prefixes = counting_span_prefixes(n, k)
            certs.append(span_lower_bound(program, level, prefixes, f.name()))
        rows.append(HierarchyRow(d=d, function=f.name(),
                                 certificates=tuple(certs)))

    extras: List[WidthCertificate] = []
    f_and = BooleanFunction.and_(n)
    from .constructions import build_and_nobdd, build_not_perm

    extras.append(_construction_upper(
        build_and_nobdd(n), f_and, "NOBDD", "nondeterministic"))
    extras.append(WidthCertificate(
        function=f_and.name(), model="NUOBDD", bound="lower", value=n + 1,
        evidence_kind="cited-claim", verified="cited",
        note="AND_n = EXACT^n_n; universal over machines",
        evidence=CitedClaim("width >= n+1 for any NUOBDD computing AND_n"),
    ))
    m = isqrt(n)
    if m * m == n and m >= 2:
        f_np = BooleanFunction.not_perm(m)
        extras.append(_construction_upper(
            build_not_perm(m), f_np, "NUOBDD", "nondeterministic"))
        extras.append(notperm_nobdd_cited(n))
    return HierarchyReport(
        n=n, d_range=(d_min, d_max), rows=tuple(rows),
        incomparability=tuple(extras),
    )
