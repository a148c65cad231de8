"""Exact scalar arithmetic for amplitude bookkeeping.

A scalar has the form

    q * sqrt(2)**e * prod_i  fn_i(pi * t_i)

with ``q`` rational, ``e`` an integer (canonically 0 or 1 after folding
powers of two into ``q``), and each factor a cosine or sine of a rational
multiple of pi.  The representation is closed under multiplication and
negation, and under addition of scalars with the *same* irrational part.
That is exactly what the permutation machines, rotation machines, and
their direct sums / tensor products need; anything beyond that raises
:class:`InexactArithmeticError` rather than silently approximating.

Zero tests are decided by integer congruence: sin(pi*a/b) = 0 iff b | a,
cos(pi*a/b) = 0 iff a/b - 1/2 is an integer.  Special angles fold into
the rational coefficient on construction, so a scalar is zero iff q = 0.

Angles are canonicalised into [0, 1): fn(pi*(t+1)) = -fn(pi*t) for both
sine and cosine, so the wrap extracts a sign.  Equality is structural on
the canonical form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

COS = "cos"
SIN = "sin"

RationalLike = Union[int, Fraction]


class InexactArithmeticError(ArithmeticError):
    """The requested operation would leave the exact scalar tower."""


def _normalize_factor(fn: str, turns: Fraction):
    """Canonicalise one trig factor.

    Returns ``(sign, factor_or_None, is_zero)`` where ``factor`` is a
    ``(fn, turns)`` pair with turns in [0, 1), or None if the factor
    folded to +-1.
    """
    t = turns % 2
    sign = 1
    if t >= 1:
        t -= 1
        sign = -sign
    if fn == SIN:
        if t == 0:
            return sign, None, True
        if t == Fraction(1, 2):
            return sign, None, False
    else:
        if t == 0:
            return sign, None, False
        if t == Fraction(1, 2):
            return sign, None, True
    return sign, (fn, t), False


class ExactScalar:
    """Immutable exact real scalar (see module docstring)."""

    __slots__ = ("q", "e", "factors")

    def __init__(self, q, e: int = 0, factors: Iterable = ()):
        q = Fraction(q)
        fs = []
        if q != 0:
            for fn, turns in factors:
                sign, factor, is_zero = _normalize_factor(fn, Fraction(turns))
                if is_zero:
                    q = Fraction(0)
                    break
                q *= sign
                if factor is not None:
                    fs.append(factor)
        if q == 0:
            e = 0
            fs = []
        else:
            # fold whole powers of two out of sqrt(2)**e
            if e >= 2 or e < 0:
                q *= Fraction(2) ** (e // 2)
                e -= 2 * (e // 2)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "factors", tuple(sorted(fs)))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, value: RationalLike) -> "ExactScalar":
        return cls(Fraction(value))

    @classmethod
    def cospi(cls, turns: RationalLike) -> "ExactScalar":
        """cos(pi * turns)."""
        return cls(1, 0, ((COS, Fraction(turns)),))

    @classmethod
    def sinpi(cls, turns: RationalLike) -> "ExactScalar":
        """sin(pi * turns)."""
        return cls(1, 0, ((SIN, Fraction(turns)),))

    @classmethod
    def sqrt2_power(cls, e: int) -> "ExactScalar":
        """sqrt(2)**e (e may be negative; 1/sqrt(2) is e = -1)."""
        return cls(1, e)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.q == 0

    def is_rational(self) -> bool:
        return not self.factors and self.e == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InexactArithmeticError(f"{self} is not rational")
        return self.q

    # -- arithmetic ----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        elif not isinstance(other, ExactScalar):
            return NotImplemented
        if self.q == 0 or other.q == 0:
            return ZERO
        return ExactScalar(
            self.q * other.q, self.e + other.e, self.factors + other.factors
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        elif not isinstance(other, ExactScalar):
            return NotImplemented
        if other.q == 0:
            raise ZeroDivisionError("division by exact zero")
        if self.q == 0:
            return ZERO
        remaining = list(self.factors)
        for f in other.factors:
            try:
                remaining.remove(f)
            except ValueError:
                raise InexactArithmeticError(
                    f"cannot divide {self} by {other}: factor {f} not present"
                ) from None
        return ExactScalar(self.q / other.q, self.e - other.e, remaining)

    def __neg__(self):
        return ExactScalar(-self.q, self.e, self.factors)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        elif not isinstance(other, ExactScalar):
            return NotImplemented
        if other.q == 0:
            return self
        if self.q == 0:
            return other
        if self.e != other.e or self.factors != other.factors:
            raise InexactArithmeticError(
                f"cannot add {self} and {other} exactly "
                "(irrational parts differ)"
            )
        return ExactScalar(self.q + other.q, self.e, self.factors)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        elif not isinstance(other, ExactScalar):
            return NotImplemented
        return self + (-other)

    # -- comparisons / hashing ------------------------------------------

    def _key(self):
        return (self.q, self.e, self.factors)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.q == other
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self.is_rational():
            return hash(self.q)
        return hash(self._key())

    # -- conversions ------------------------------------------------------

    def __float__(self):
        value = float(self.q) * math.sqrt(2.0) ** self.e
        for fn, turns in self.factors:
            angle = math.pi * float(turns)
            value *= math.cos(angle) if fn == COS else math.sin(angle)
        return value

    def __repr__(self):
        return f"ExactScalar({self.render()})"

    def render(self) -> str:
        """Human-readable exact form, e.g. ``-1/2*sin^2(2*pi/5)``."""
        if self.q == 0:
            return "0"
        parts = []
        if self.q != 1 or (not self.factors and self.e == 0):
            parts.append(str(self.q))
        if self.e:
            parts.append("sqrt(2)" if self.e == 1 else f"sqrt(2)^{self.e}")
        # group repeated factors into powers
        grouped = []
        for f in self.factors:
            if grouped and grouped[-1][0] == f:
                grouped[-1][1] += 1
            else:
                grouped.append([f, 1])
        for (fn, turns), power in grouped:
            arg = f"{turns.numerator}*pi" if turns.denominator == 1 else (
                f"{turns.numerator}*pi/{turns.denominator}"
            )
            head = fn if power == 1 else f"{fn}^{power}"
            parts.append(f"{head}({arg})")
        if parts and parts[0] == "-1" and len(parts) > 1:
            return "-" + "*".join(parts[1:])
        return "*".join(parts)


ZERO = ExactScalar(0)
ONE = ExactScalar(1)


class ExactProbability:
    """A finite sum of nonnegative exact terms (squared amplitudes).

    Because every term is a square, the sum is zero iff every term is
    zero, so the threshold-0 test never needs to decide cancellation
    between different irrational values.  ``sin^2 + cos^2`` pairs with a
    common cofactor are merged into the cofactor, which is enough to
    recognise the probabilities 0 and 1 produced by the machines built
    here.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[ExactScalar]):
        merged: dict = {}
        for t in terms:
            if t.q == 0:
                continue
            if t.q < 0:
                raise ValueError(f"probability term {t} is negative")
            key = (t.e, t.factors)
            if key in merged:
                merged[key] = ExactScalar(merged[key].q + t.q, t.e, t.factors)
            else:
                merged[key] = t
        object.__setattr__(self, "terms", self._merge_pythagorean(merged))

    def __setattr__(self, name, value):
        raise AttributeError("ExactProbability is immutable")

    @staticmethod
    def _merge_pythagorean(merged: dict) -> tuple:
        # c*R*sin^2(t) + c*R*cos^2(t)  ->  c*R, iterated to fixpoint
        changed = True
        while changed:
            changed = False
            for (e, factors) in list(merged.keys()):
                for fn, turns in factors:
                    if fn != SIN or factors.count((SIN, turns)) < 2:
                        continue
                    rest = list(factors)
                    rest.remove((SIN, turns))
                    rest.remove((SIN, turns))
                    partner = tuple(sorted(rest + [(COS, turns), (COS, turns)]))
                    key, pkey = (e, factors), (e, partner)
                    if pkey not in merged or pkey == key:
                        continue
                    a, b = merged[key], merged[pkey]
                    common = min(a.q, b.q)
                    base = ExactScalar(common, e, rest)
                    for k, keep in ((key, a.q - common), (pkey, b.q - common)):
                        if keep == 0:
                            del merged[k]
                        else:
                            merged[k] = ExactScalar(keep, e, k[1])
                    if base.q != 0:
                        bkey = (base.e, base.factors)
                        if bkey in merged:
                            prev = merged[bkey]
                            merged[bkey] = ExactScalar(
                                prev.q + base.q, base.e, base.factors
                            )
                        else:
                            merged[bkey] = base
                    changed = True
                    break
                if changed:
                    break
        return tuple(sorted(merged.values(), key=lambda s: s._key()))

    @classmethod
    def zero(cls) -> "ExactProbability":
        return cls(())

    @classmethod
    def one(cls) -> "ExactProbability":
        return cls((ONE,))

    @classmethod
    def of_fraction(cls, value) -> "ExactProbability":
        return cls((ExactScalar(Fraction(value)),))

    def is_zero(self) -> bool:
        return not self.terms

    def as_fraction(self):
        """The value as a Fraction, or None if an irrational term remains."""
        total = Fraction(0)
        for t in self.terms:
            if not t.is_rational():
                return None
            total += t.q
        return total

    def __mul__(self, other):
        if not isinstance(other, ExactProbability):
            return NotImplemented
        return ExactProbability(
            tuple(a * b for a in self.terms for b in other.terms)
        )

    def __add__(self, other):
        if not isinstance(other, ExactProbability):
            return NotImplemented
        return ExactProbability(self.terms + other.terms)

    def scaled(self, by: ExactScalar) -> "ExactProbability":
        return ExactProbability(tuple(by * t for t in self.terms))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        if not isinstance(other, ExactProbability):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __float__(self):
        return sum((float(t) for t in self.terms), 0.0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(t.render() for t in self.terms)

    def __repr__(self):
        return f"ExactProbability({self.render()})"
