"""Corank-1 multi-germs, their validation and specialization.

A branch lives in its own source coordinates ``(x_1, ..., x_{n-1}, y)`` (the
last listed variable is ``y``) with base point at the origin.  Components
are arbitrary, but n-1 of them must be the bare coordinate functions x_i in
some positions; the remaining p-n+1 components carry the geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .localalg import field_rank
from .poly import Polynomial
from .ratfunc import is_parametric


@dataclass(frozen=True)
class Branch:
    label: str
    variables: Tuple[str, ...]
    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "components", tuple(self.components))
        for c in self.components:
            if c.variables != self.variables:
                raise ValueError(f"branch {self.label}: component over {c.variables}, expected {self.variables}")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return len(self.components)

    @property
    def x_vars(self) -> Tuple[str, ...]:
        return self.variables[:-1]

    @property
    def y_var(self) -> str:
        return self.variables[-1]

    def is_parametric(self) -> bool:
        return any(c.is_parametric() for c in self.components)

    def x_positions(self) -> Optional[Dict[int, str]]:
        """Map component index -> x variable for the coordinate components.

        Returns None if some x_i is not a bare component (not adapted).
        """
        taken: Dict[int, str] = {}
        for v in self.x_vars:
            target = Polynomial.variable(self.variables, v)
            pos = next((i for i, c in enumerate(self.components) if i not in taken and c == target), None)
            if pos is None:
                return None
            taken[pos] = v
        return taken

    def geometric_components(self) -> List[Polynomial]:
        """The non-coordinate components G (those that are not some x_i)."""
        pos = self.x_positions() or {}
        return [c for i, c in enumerate(self.components) if i not in pos]


def differential_rank(b: Branch) -> int:
    rows = [[c.linear_coefficient(v) for v in b.variables] for c in b.components]
    return field_rank(rows)


def multiplicity(b: Branch) -> Union[int, float]:
    """min over geometric components of ord_y G(0, y); inf when all vanish."""
    best: Union[int, float] = math.inf
    for g in b.geometric_components():
        for mono in g.terms:
            if all(e == 0 for e in mono[:-1]):
                best = min(best, mono[-1])
    return best


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    branch: Optional[str] = None

    def __str__(self):
        where = f"branch {self.branch}: " if self.branch else ""
        return f"{self.code}: {where}{self.message}"


@dataclass(frozen=True)
class MultiGerm:
    n: int
    p: int
    branches: Tuple[Branch, ...]
    has_opsu: bool = False
    declares_parameter: bool = False
    probes: Tuple[Fraction, ...] = ()
    name: Optional[str] = None
    inherited: Tuple[Diagnostic, ...] = ()  # diagnostics carried over from the family

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        object.__setattr__(self, "probes", tuple(Fraction(q) for q in self.probes))
        object.__setattr__(self, "inherited", tuple(self.inherited))

    @property
    def s(self) -> int:
        return len(self.branches)

    @property
    def has_parameter(self) -> bool:
        return self.declares_parameter or any(b.is_parametric() for b in self.branches)

    def is_parametric(self) -> bool:
        return any(b.is_parametric() for b in self.branches)

    def branch(self, label: str) -> Branch:
        for b in self.branches:
            if b.label == label:
                return b
        raise KeyError(label)


@dataclass(frozen=True)
class BranchReport:
    label: str
    rank: int
    kernel_in_y: bool
    adapted: bool
    x_positions: Tuple[int, ...]
    multiplicity: Union[int, float]


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: Tuple[Diagnostic, ...]
    branches: Tuple[BranchReport, ...]

    @property
    def valid(self) -> bool:
        return not self.diagnostics

    def lines(self) -> List[str]:
        out = []
        for br in self.branches:
            mult = "inf" if br.multiplicity == math.inf else str(br.multiplicity)
            coords = ",".join(str(i + 1) for i in br.x_positions) or "-"
            out.append(
                f"branch {br.label}: rank {br.rank}, kernel {'y' if br.kernel_in_y else 'not y'}, "
                f"adapted {'yes' if br.adapted else 'no'} (x at components {coords}), multiplicity {mult}"
            )
        out.extend(str(d) for d in self.diagnostics)
        out.append("valid: yes" if self.valid else "valid: no")
        return out


class InvalidGermError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(str(d) for d in report.diagnostics))
        self.report = report


def validate(g: MultiGerm) -> ValidationReport:
    diags: List[Diagnostic] = list(g.inherited)
    reports: List[BranchReport] = []
    if g.n < 1 or g.n >= g.p:
        diags.append(Diagnostic("dimension", f"need 1 <= n < p, got n={g.n}, p={g.p}"))
    if not g.branches:
        diags.append(Diagnostic("no-branches", "a germ needs at least one branch"))
    seen = set()
    for b in g.branches:
        if b.label in seen:
            diags.append(Diagnostic("duplicate-label", "label used twice", b.label))
        seen.add(b.label)
        if b.n != g.n:
            diags.append(Diagnostic("source-dimension", f"{b.n} source variables, expected {g.n}", b.label))
            continue
        if b.p != g.p:
            diags.append(Diagnostic("component-count", f"expected {g.p} components, found {b.p}", b.label))
            continue
        for i, c in enumerate(b.components):
            if c.constant_term() != 0:
                diags.append(
                    Diagnostic("not-origin-preserving", f"component {i + 1} does not vanish at the base point", b.label)
                )
        rank = differential_rank(b)
        kernel_y = rank >= g.n or all(c.linear_coefficient(b.y_var) == 0 for c in b.components)
        if rank < g.n - 1:
            diags.append(Diagnostic("corank", f"differential rank {rank} < n-1 = {g.n - 1}", b.label))
        elif not kernel_y:
            diags.append(Diagnostic("kernel-not-y", "kernel of the differential is not the y-direction", b.label))
        pos = b.x_positions()
        if pos is None:
            diags.append(
                Diagnostic("not-adapted", "not in adapted form: each x_i must appear as a bare component", b.label)
            )
        reports.append(
            BranchReport(b.label, rank, kernel_y, pos is not None, tuple(sorted(pos or ())), multiplicity(b))
        )
    return ValidationReport(tuple(diags), tuple(reports))


def require_valid(g: MultiGerm) -> ValidationReport:
    rep = validate(g)
    if not rep.valid:
        raise InvalidGermError(rep)
    return rep


GENERIC = "generic"


def specialize(g: MultiGerm, at: Union[str, int, Fraction]) -> MultiGerm:
    """Fix the parameter at a rational value, or keep it generic (Q(t)).

    Diagnostics that fail for the family as a whole (a component leaving the
    origin for some t) are inherited by every specialization.
    """
    if at == GENERIC:
        return g
    value = Fraction(at)
    family_diags = tuple(d for d in validate(g).diagnostics if d.code == "not-origin-preserving")
    branches = []
    for b in g.branches:
        comps = tuple(c.specialize_parameter(value) for c in b.components)
        branches.append(Branch(b.label, b.variables, comps))
    name = f"{g.name}@t={value}" if g.name else None
    return replace(g, branches=tuple(branches), inherited=tuple(dict.fromkeys(g.inherited + family_diags)), name=name)
