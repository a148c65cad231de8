"""Builders for the explicit width-optimal machines.

Every builder returns a validated :class:`LeveledProgram` over the
natural variable order whose width equals the advertised bound.  The
rotation machines store their angles as exact rational multiples of pi,
so the threshold-0 verdict reduces to an integer congruence.

Two builders accept a ``literal`` flag that reproduces an uncorrected
parameter choice (kept for regression tests; see the individual
docstrings).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bits import natural_order
from .model import (
    AngleState,
    BasisState,
    LeveledProgram,
    RationalMatrix,
    Rotation2,
    Semantics,
    SubsetState,
    make_program,
)

FAMILIES = ("notperm", "exact-u", "exact-d", "notexact", "mod", "and-nobdd")


@dataclass(frozen=True)
class PermEncoding:
    """Base-(m+1) digit encoding of the row and column sums of an
    m x m 0-1 matrix.

    ``t_perm`` is the value whose 2m digits are all 1 - exactly the
    encodings of permutation matrices - and ``t_max`` the all-m value.
    ``alpha`` is the rotation quantum pi/t_max as a fraction of pi.
    """

    m: int
    base: int
    t_max: int
    t_perm: int
    alpha: Fraction

    @classmethod
    def for_side(cls, m: int) -> "PermEncoding":
        if m < 1:
            raise ValueError("matrix side must be >= 1")
        base = m + 1
        t_max = base ** (2 * m) - 1
        t_perm = sum(base ** i for i in range(2 * m))
        return cls(m=m, base=base, t_max=t_max, t_perm=t_perm,
                   alpha=Fraction(1, t_max))

    def digit_weight(self, i: int, j: int, literal: bool = False) -> int:
        """Contribution of a set entry (i, j), 1-based, to the encoding:
        base^(i-1) for row i plus base^(m+j-1) for column j."""
        shift = 0 if literal else 1
        return self.base ** (i - shift) + self.base ** (self.m + j - shift)


def encode_t(rows) -> int:
    """Encode an m x m 0-1 matrix as the base-(m+1) integer whose low m
    digits are the row sums and high m digits the column sums."""
    rows = [list(r) for r in rows]
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("matrix must be square")
    if any(x not in (0, 1) for r in rows for x in r):
        raise ValueError("matrix entries must be 0 or 1")
    enc = PermEncoding.for_side(m)
    total = 0
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if rows[i - 1][j - 1]:
                total += enc.digit_weight(i, j)
    return total


def build_not_perm(m: int, literal: bool = False) -> LeveledProgram:
    """Width-2 rotation machine accepting (with nonzero probability)
    exactly the m*m inputs that are not permutation matrices.

    The initial vector sits at angle -t_perm * alpha; reading a set
    entry (i, j) rotates by its digit weight times alpha, so the final
    angle is (T(A) - t_perm) * alpha and the accepting amplitude
    vanishes iff T(A) = t_perm, i.e. iff A is a permutation matrix.

    ``literal=True`` drops the -1 exponent shift, which scales every
    accumulated encoding by (m+1); kept for regression tests.

    For m = 1 the base case degenerates (t_perm = t_max, so the zero
    matrix would collide with the permutation on the circle) and the
    quantum is widened to pi/(t_max + 1).
    """
    enc = PermEncoding.for_side(m)
    n = m * m
    alpha = enc.alpha if m > 1 else Fraction(1, enc.t_max + 1)
    pairs = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            turn = enc.digit_weight(i, j, literal=literal) * alpha
            pairs.append((Rotation2(0), Rotation2(turn)))
    return make_program(
        semantics=Semantics.UNITARY, n=n, width=2,
        order=natural_order(n), level_matrices=pairs,
        initial=AngleState(-enc.t_perm * alpha),
        accepting={1},
        name=f"notPERM_{n} width-2 NUOBDD" + (" (literal exponents)" if literal else ""),
    )


def build_exact_unitary(n: int, k: int) -> LeveledProgram:
    """Reversible cyclic counter computing EXACT^k_n exactly with width
    max(k+1, n-k+1): count 1s modulo k+1 when 2k >= n, otherwise count
    0s modulo n-k+1 (ties count 1s)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n < 1:
        raise ValueError("n must be >= 1")
    count_ones = 2 * k >= n
    d = k + 1 if count_ones else n - k + 1
    target = k if count_ones else n - k
    step = RationalMatrix.from_column_map(d, [(i + 1) % d for i in range(d)])
    stay = RationalMatrix.identity(d)
    on_pair = (stay, step) if count_ones else (step, stay)
    return make_program(
        semantics=Semantics.REVERSIBLE, n=n, width=d,
        order=natural_order(n), level_matrices=[on_pair] * n,
        initial=BasisState(d, 0), accepting={target},
        name=f"EXACT^{k}_{n} width-{d} exact UOBDD",
    )


def build_exact_deterministic(n: int, k: int) -> LeveledProgram:
    """Deterministic minority counter with a saturating trap state;
    computes EXACT^k_n with width min(k+1, n-k+1) + 1."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n < 1:
        raise ValueError("n must be >= 1")
    count_ones = k <= n - k
    target = k if count_ones else n - k
    d = target + 2  # counts 0..target plus the trap
    trap = d - 1
    step = RationalMatrix.from_column_map(
        d, [min(i + 1, trap) for i in range(d)]
    )
    stay = RationalMatrix.identity(d)
    on_pair = (stay, step) if count_ones else (step, stay)
    return make_program(
        semantics=Semantics.DETERMINISTIC, n=n, width=d,
        order=natural_order(n), level_matrices=[on_pair] * n,
        initial=BasisState(d, 0), accepting={target},
        name=f"EXACT^{k}_{n} width-{d} OBDD",
    )


def build_not_exact(n: int, k: int, literal: bool = False) -> LeveledProgram:
    """Width-2 rotation machine for notEXACT^k_n: start at angle
    -k*beta, rotate by beta per 1 read, accept on the sine component.

    The step is beta = pi/(n+1), so the final angle (#1 - k) * beta is
    a multiple of pi iff #1 = k.  ``literal=True`` uses pi/n instead,
    which breaks the boundary cases k in {0, n} (a member input can
    then reach a full pi turn); kept for regression tests.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n < 1:
        raise ValueError("n must be >= 1")
    beta = Fraction(1, n if literal else n + 1)
    return make_program(
        semantics=Semantics.UNITARY, n=n, width=2,
        order=natural_order(n),
        level_matrices=[(Rotation2(0), Rotation2(beta))] * n,
        initial=AngleState(-k * beta), accepting={1},
        name=f"notEXACT^{k}_{n} width-2 NUOBDD" + (" (literal angle)" if literal else ""),
    )


def build_mod(n: int, p: int) -> LeveledProgram:
    """Width-p reversible counter for MOD^p_n: cycle on 1, hold on 0,
    accept in the start state."""
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    step = RationalMatrix.from_column_map(p, [(i + 1) % p for i in range(p)])
    stay = RationalMatrix.identity(p)
    return make_program(
        semantics=Semantics.REVERSIBLE, n=n, width=p,
        order=natural_order(n), level_matrices=[(stay, step)] * n,
        initial=BasisState(p, 0), accepting={0},
        name=f"MOD^{p}_{n} width-{p} ROBDD",
    )


def build_and_nobdd(n: int) -> LeveledProgram:
    """Width-2 NOBDD for AND_n: stay in the live state on 1, fall into
    the dead state on 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    die = RationalMatrix([[0, 0], [1, 1]])
    stay = RationalMatrix.identity(2)
    return make_program(
        semantics=Semantics.NONDETERMINISTIC, n=n, width=2,
        order=natural_order(n), level_matrices=[(die, stay)] * n,
        initial=SubsetState(2, {0}), accepting={0},
        name=f"AND_{n} width-2 NOBDD",
    )


def build_family(family: str, *, n=None, k=None, p=None, m=None,
                 literal: bool = False) -> LeveledProgram:
    """Dispatch by family name (the CLI surface)."""
    if family == "notperm":
        if m is None:
            raise ValueError("notperm requires m")
        return build_not_perm(m, literal=literal)
    if family == "exact-u":
        _need(n, k, "exact-u requires n and k")
        return build_exact_unitary(n, k)
    if family == "exact-d":
        _need(n, k, "exact-d requires n and k")
        return build_exact_deterministic(n, k)
    if family == "notexact":
        _need(n, k, "notexact requires n and k")
        return build_not_exact(n, k, literal=literal)
    if family == "mod":
        _need(n, p, "mod requires n and p")
        return build_mod(n, p)
    if family == "and-nobdd":
        if n is None:
            raise ValueError("and-nobdd requires n")
        return build_and_nobdd(n)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def _need(a, b, message):
    if a is None or b is None:
        raise ValueError(message)


def family_function(family: str, *, n=None, k=None, p=None, m=None):
    """The Boolean function a family's builder is supposed to compute."""
    from .functions import BooleanFunction

    if family == "notperm":
        return BooleanFunction.not_perm(m)
    if family in ("exact-u", "exact-d"):
        return BooleanFunction.exact(n, k)
    if family == "notexact":
        return BooleanFunction.not_exact(n, k)
    if family == "mod":
        return BooleanFunction.mod(n, p)
    if family == "and-nobdd":
        return BooleanFunction.and_(n)
    raise ValueError(f"unknown family {family!r}")
