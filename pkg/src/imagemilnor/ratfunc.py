"""Exact rational functions in the unfolding parameter ``t``.

Elements of Q(t) are stored as reduced fractions of dense univariate
polynomials with :class:`fractions.Fraction` coefficients, with a monic
denominator.  Anything that turns out to be constant collapses to a plain
``Fraction`` so that Q embeds into Q(t) without ceremony.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple, Union

UPoly = Tuple[Fraction, ...]  # coefficients, lowest degree first

PARAMETER = "t"


def _trim(p: Sequence[Fraction]) -> UPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a: UPoly) -> UPoly:
    return tuple(-c for c in a)


def _pmul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _pscale(a: UPoly, c: Fraction) -> UPoly:
    return _trim([x * c for x in a])


def _pdivmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        c = rem[-1] / lead
        q[shift] = c
        for i, cb in enumerate(b):
            rem[shift + i] -= c * cb
        rem = list(_trim(rem))
    return _trim(q), _trim(rem)


def _pgcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    return _pscale(a, 1 / a[-1])


def _peval(a: UPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pformat(a: UPoly) -> str:
    if not a:
        return "0"
    parts = []
    for deg in range(len(a) - 1, -1, -1):
        c = a[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if deg == 0:
            body = str(mag)
        else:
            mono = PARAMETER if deg == 1 else f"{PARAMETER}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class RationalFunction:
    """A non-constant element of Q(t) in canonical form.

    Use :func:`make` (or arithmetic) rather than the constructor; it
    normalises and collapses constants to ``Fraction``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: UPoly, den: UPoly):
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def make(num: Sequence, den: Sequence = (1,)) -> "Coefficient":
        num = _trim([Fraction(c) for c in num])
        den = _trim([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return Fraction(0)
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pscale(den, 1 / lead)
        if len(den) == 1 and len(num) == 1:
            return num[0]
        return RationalFunction(num, den)

    @staticmethod
    def parameter() -> "RationalFunction":
        return RationalFunction((Fraction(0), Fraction(1)), (Fraction(1),))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _parts(x) -> Tuple[UPoly, UPoly]:
        if isinstance(x, RationalFunction):
            return x.num, x.den
        if isinstance(x, (int, Fraction)):
            return _trim((Fraction(x),)), (Fraction(1),)
        raise TypeError(f"unsupported coefficient {x!r}")

    def __add__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        if b == self.den:
            return RationalFunction.make(_padd(self.num, a), b)
        return RationalFunction.make(_padd(_pmul(self.num, b), _pmul(a, self.den)), _pmul(self.den, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den)

    def __sub__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return self + RationalFunction.make(_pneg(a), b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return RationalFunction.make(_pmul(self.num, a), _pmul(self.den, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        if not a:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RationalFunction.make(_pmul(self.num, b), _pmul(self.den, a))

    def __rtruediv__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return RationalFunction.make(_pmul(a, self.den), _pmul(b, self.num))

    def __pow__(self, e: int):
        if e < 0:
            return (1 / self) ** (-e)
        out: Coefficient = Fraction(1)
        for _ in range(e):
            out = out * self
        return out

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False  # constants never stay RationalFunction
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return True

    # -- evaluation and display --------------------------------------------

    def evaluate(self, value) -> Fraction:
        value = Fraction(value)
        d = _peval(self.den, value)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {PARAMETER}={value}")
        return _peval(self.num, value) / d

    def __str__(self):
        num = _pformat(self.num)
        if self.den == (Fraction(1),):
            return num
        return f"({num})/({_pformat(self.den)})"

    def __repr__(self):
        return f"RationalFunction({self})"


Coefficient = Union[Fraction, RationalFunction]


def coerce(c) -> Coefficient:
    """Normalise ints and Fractions; pass rational functions through."""
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    raise TypeError(f"not an exact coefficient: {c!r}")


def specialize_coefficient(c: Coefficient, value) -> Fraction:
    if isinstance(c, RationalFunction):
        return c.evaluate(value)
    return c


def is_parametric(c: Coefficient) -> bool:
    return isinstance(c, RationalFunction)


def format_coefficient(c: Coefficient) -> str:
    return str(c)
