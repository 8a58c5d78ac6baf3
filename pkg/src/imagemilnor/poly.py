"""Sparse exact multivariate polynomials over Q and Q(t).

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients, tied to an ambient variable list.  Coefficients are
``Fraction`` or :class:`~imagemilnor.ratfunc.RationalFunction`; the
parameter ``t`` never appears as an ambient variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .ratfunc import Coefficient, coerce, specialize_coefficient

Monomial = Tuple[int, ...]


class AmbientMismatch(ValueError):
    """Two polynomials (or a polynomial and a point) disagree on variables."""


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-reverse-lexicographic order, global or local.

    ``degrevlex`` has 1 as its smallest monomial; ``negdegrevlex`` (the local
    order ``ds``) has 1 as its largest.  Variable precedence follows the
    ambient variable list.
    """

    name: str

    def __post_init__(self):
        if self.name not in ("degrevlex", "negdegrevlex"):
            raise ValueError(f"unknown monomial order {self.name!r}")

    @property
    def is_local(self) -> bool:
        return self.name == "negdegrevlex"

    def key(self, m: Monomial) -> tuple:
        tail = tuple(-e for e in reversed(m))
        deg = sum(m)
        return (-deg if self.is_local else deg, tail)

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b):
            raise AmbientMismatch("monomials live in different ambients")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


DEGREVLEX = MonomialOrder("degrevlex")
NEG_DEGREVLEX = MonomialOrder("negdegrevlex")


def compare_monomials(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    return order.compare(a, b)


class Polynomial:
    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] = None):
        self.variables = tuple(variables)
        clean: Dict[Monomial, Coefficient] = {}
        if terms:
            nv = len(self.variables)
            for m, c in terms.items():
                if len(m) != nv:
                    raise AmbientMismatch(f"exponent {m} does not fit ambient {self.variables}")
                c = coerce(c)
                if c != 0:
                    clean[tuple(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Monomial, Coefficient]) -> "Polynomial":
        p = cls.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise AmbientMismatch(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Coefficient]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (the order of vanishing at 0)."""
        return min((sum(m) for m in self._terms), default=-1)

    def constant_term(self) -> Coefficient:
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def linear_coefficient(self, v: str) -> Coefficient:
        i = self._index(v)
        exps = tuple(1 if j == i else 0 for j in range(len(self.variables)))
        return self._terms.get(exps, Fraction(0))

    def is_parametric(self) -> bool:
        from .ratfunc import RationalFunction

        return any(isinstance(c, RationalFunction) for c in self._terms.values())

    def support(self) -> set:
        """Names of variables that actually occur."""
        used = set()
        for m in self._terms:
            used.update(v for v, e in zip(self.variables, m) if e)
        return used

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_term(self, order: MonomialOrder) -> Tuple[Monomial, Coefficient]:
        m = self.leading_monomial(order)
        return m, self._terms[m]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self._terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def _index(self, v: str) -> int:
        try:
            return self.variables.index(v)
        except ValueError:
            raise AmbientMismatch(f"unknown variable {v!r} in ambient {self.variables}") from None

    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise AmbientMismatch(f"ambient {self.variables} differs from {other.variables}")

    # -- ring operations ---------------------------------------------------

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = coerce(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        out: Dict[Monomial, Coefficient] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                s = out.get(m, 0) + ca * cb
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial._raw(self.variables, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = coerce(c)
        if c == 0:
            return Polynomial.zero(self.variables)
        return Polynomial._raw(self.variables, {m: v * c for m, v in self._terms.items()})

    def __truediv__(self, c):
        c = coerce(c)
        return self.scale(1 / c)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.variables, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        c = coerce(c)
        return Polynomial._raw(
            self.variables,
            {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in self._terms.items()},
        )

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * len(self.variables): Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------------

    def diff(self, v: str) -> "Polynomial":
        i = self._index(v)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.variables, out)

    def evaluate(self, point: Mapping[str, object]) -> Coefficient:
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise AmbientMismatch(f"unbound variables {missing}")
        vals = [coerce(point[v]) for v in self.variables]
        total: Coefficient = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for val, e in zip(vals, m):
                if e:
                    term = term * val ** e
            total = total + term
        return total

    def substitute(self, bindings: Mapping[str, "Polynomial"], target: Sequence[str] = None) -> "Polynomial":
        """Replace bound variables by polynomials over a common target ambient.

        Unbound variables are carried over by name, so they must exist in the
        target ambient.
        """
        images = list(bindings.values())
        if target is None:
            target = images[0].variables if images else self.variables
        target = tuple(target)
        for v, img in bindings.items():
            self._index(v)
            if img.variables != target:
                raise AmbientMismatch(f"image of {v!r} is not over {target}")
        factors = []
        for v in self.variables:
            if v in bindings:
                factors.append(bindings[v])
            elif v in target:
                factors.append(Polynomial.variable(target, v))
            else:
                raise AmbientMismatch(f"variable {v!r} is neither bound nor in the target ambient")
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = factors[i] ** e
            return powers[key]

        out = Polynomial.zero(target)
        for m, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def embed(self, target: Sequence[str], rename: Mapping[str, str] = None) -> "Polynomial":
        """Re-express over a larger ambient, optionally renaming variables."""
        rename = rename or {}
        target = tuple(target)
        idx = []
        for v in self.variables:
            name = rename.get(v, v)
            if name not in target:
                raise AmbientMismatch(f"{name!r} missing from target ambient")
            idx.append(target.index(name))
        out = {}
        for m, c in self._terms.items():
            new = [0] * len(target)
            for i, e in zip(idx, m):
                new[i] += e
            out[tuple(new)] = c
        return Polynomial._raw(target, out)

    def specialize_parameter(self, value) -> "Polynomial":
        return Polynomial(self.variables, {m: specialize_coefficient(c, value) for m, c in self._terms.items()})

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.variables, {m: fn(c) for m, c in self._terms.items()})

    # -- display -----------------------------------------------------------

    def to_text(self, order: MonomialOrder = DEGREVLEX) -> str:
        from .ratfunc import RationalFunction

        if not self._terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, m) if e
            )
            if isinstance(c, RationalFunction):
                sign, body = "+", f"({c})" + (f"*{mono}" if mono else "")
            else:
                sign = "-" if c < 0 else "+"
                mag = -c if c < 0 else c
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            chunks.append((sign, body))
        text = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, {self.variables})"


def variables(names: Iterable[str]) -> Tuple[Polynomial, ...]:
    """Convenience: the coordinate functions of an ambient."""
    names = tuple(names)
    return tuple(Polynomial.variable(names, v) for v in names)
