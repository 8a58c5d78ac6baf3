"""Unfolding multiple point spaces of corank-1 multi-germs.

Each k-tuple of source points is grouped by branch into blocks.  Inside a
block of size m the slots share their x-coordinates and carry one y each;
the block contributes the divided differences V^m_1..V^m_{m-1} of every
geometric component.  Distinct blocks are glued by the p equations saying
their images agree, with V^m_0 playing the role of the common image value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .germ import Branch, MultiGerm, require_valid
from .localalg import (
    DEFAULT_BUDGET,
    INFINITE,
    Budget,
    Ideal,
    MilnorResult,
    Verdict,
    is_smooth_germ,
    krull_dimension,
    milnor_icis,
    quotient_vector_dimension,
)
from .poly import Polynomial
from .symmetry import CycleType, YoungClass, YoungSubgroup


class NotAdaptedError(ValueError):
    pass


# -- divided differences -------------------------------------------------------


def divide_by_difference(p: Polynomial, u: str, v: str) -> Polynomial:
    """Exact quotient of ``p`` by ``u - v``; raises if it does not divide."""
    iu = p.variables.index(u)
    iv = p.variables.index(v)
    by_power: Dict[int, Dict] = {}
    for mono, c in p.items():
        rest = mono[:iu] + (0,) + mono[iu + 1:]
        by_power.setdefault(mono[iu], {})[rest] = c
    if not by_power:
        return p
    top = max(by_power)
    quotient: Dict = {}
    carry: Dict = {}  # q_e, as a term dict free of u
    for e in range(top, 0, -1):
        # q_{e-1} = c_e + v * q_e
        nxt = dict(by_power.get(e, {}))
        for mono, c in carry.items():
            shifted = mono[:iv] + (mono[iv] + 1,) + mono[iv + 1:]
            val = nxt.get(shifted, 0) + c
            if val == 0:
                nxt.pop(shifted, None)
            else:
                nxt[shifted] = val
        carry = nxt
        for mono, c in carry.items():
            quotient[mono[:iu] + (e - 1,) + mono[iu + 1:]] = c
    remainder = dict(by_power.get(0, {}))
    for mono, c in carry.items():
        shifted = mono[:iv] + (mono[iv] + 1,) + mono[iv + 1:]
        val = remainder.get(shifted, 0) + c
        if val == 0:
            remainder.pop(shifted, None)
        else:
            remainder[shifted] = val
    if remainder:
        raise ArithmeticError(f"{u} - {v} does not divide the polynomial")
    return Polynomial(p.variables, quotient)


def newton_coefficients(values: Sequence[Polynomial], nodes: Sequence[str]) -> List[Polynomial]:
    """d_j = G[y_1, ..., y_{j+1}] from the values G(x, y_a) at the nodes."""
    column = list(values)
    out = [column[0]]
    for level in range(1, len(nodes)):
        column = [
            divide_by_difference(column[a + 1] - column[a], nodes[a + level], nodes[a])
            for a in range(len(column) - 1)
        ]
        out.append(column[0])
    return out


def vandermonde_coefficients(values: Sequence[Polynomial], nodes: Sequence[str]) -> List[Polynomial]:
    """Coefficients V_0..V_{k-1} of the interpolating polynomial in Y."""
    d = newton_coefficients(values, nodes)
    amb = values[0].variables
    coeffs = [d[-1]]
    for j in range(len(d) - 2, -1, -1):
        node = Polynomial.variable(amb, nodes[j])
        shifted = [Polynomial.zero(amb)] + coeffs  # times Y
        for i, c in enumerate(coeffs):
            shifted[i] = shifted[i] - node * c
        shifted[0] = shifted[0] + d[j]
        coeffs = shifted
    return coeffs


def divided_differences(b: Branch, k: int) -> List[List[Polynomial]]:
    """V^k_0..V^k_{k-1} of every geometric component of ``b``.

    The ambient is (x_1..x_{n-1}, y1..yk) with the branch's own names.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if b.x_positions() is None:
        raise NotAdaptedError(f"branch {b.label} is not in adapted form")
    ynames = _slot_names(b.y_var, range(1, k + 1))
    ambient = b.x_vars + tuple(ynames)
    out = []
    for g in b.geometric_components():
        values = [g.embed(ambient, {b.y_var: yn}) for yn in ynames]
        out.append(vandermonde_coefficients(values, ynames))
    return out


def _slot_names(base: str, slots) -> List[str]:
    sep = "_" if base[-1].isdigit() else ""
    return [f"{base}{sep}{s}" for s in slots]


# -- components ----------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    branch: str
    slots: Tuple[int, ...]  # 0-based tuple slots
    x_names: Tuple[str, ...]
    y_names: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class MpsComponent:
    k: int
    n: int
    p: int
    blocks: Tuple[Block, ...]
    ideal: Ideal
    expected_dim: int
    dropped: Tuple[str, ...] = ()

    @property
    def assignment(self) -> Tuple[str, ...]:
        return tuple(b.branch for b in self.blocks for _ in b.slots)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(b.size for b in self.blocks)

    @property
    def isotropy(self) -> YoungSubgroup:
        return YoungSubgroup(self.block_sizes)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ideal.variables

    @property
    def generators(self) -> Tuple[Polynomial, ...]:
        return self.ideal.generators

    def label(self) -> str:
        return "".join(f"[{b.branch}^{b.size}]" if b.size > 1 else f"[{b.branch}]" for b in self.blocks)

    def identity(self) -> "PartitionRestriction":
        return restrict_partition(self, tuple(CycleType((1,) * b.size) for b in self.blocks))


def expected_dimension(n: int, p: int, sizes: Sequence[int], cycles: Optional[Sequence[int]] = None) -> int:
    cycles = sizes if cycles is None else cycles
    g = len(sizes)
    return sum(n - 1 + c for c in cycles) - sum((p - n + 1) * (m - 1) for m in sizes) - (g - 1) * p


def _ambient_names(g: MultiGerm, groups: Sequence[Tuple[int, int]]) -> Tuple[List[List[str]], List[List[str]]]:
    """Per block (branch index, size): x names and y names; always distinct."""
    single = len(groups) == 1
    xs, ys, slot = [], [], 1
    for j, (bi, m) in enumerate(groups, start=1):
        b = g.branches[bi]
        xs.append([v if single else f"{v}_{j}" for v in b.x_vars])
        ys.append(_slot_names(b.y_var, range(slot, slot + m)))
        slot += m
    flat = [v for block in xs for v in block] + [v for block in ys for v in block]
    if len(set(flat)) == len(flat) and "t" not in flat:
        return xs, ys
    xs, ys, slot = [], [], 1
    for j, (bi, m) in enumerate(groups, start=1):
        xs.append([f"x{i}_{j}" for i in range(1, g.n)])
        ys.append([f"y_{s}" for s in range(slot, slot + m)])
        slot += m
    return xs, ys


def _component(g: MultiGerm, groups: Sequence[Tuple[int, int]]) -> MpsComponent:
    xs, ys = _ambient_names(g, groups)
    ambient = tuple(v for xb, yb in zip(xs, ys) for v in xb + yb)
    gens: List[Polynomial] = []
    dropped: List[str] = []
    reps: List[List[Polynomial]] = []
    blocks = []
    slot = 0
    for j, ((bi, m), xb, yb) in enumerate(zip(groups, xs, ys), start=1):
        b = g.branches[bi]
        pos = b.x_positions()
        if pos is None:
            raise NotAdaptedError(f"branch {b.label} is not in adapted form")
        rename = dict(zip(b.x_vars, xb))
        rep: List[Polynomial] = []
        for q, comp in enumerate(b.components):
            if q in pos:
                rep.append(Polynomial.variable(ambient, rename[pos[q]]))
                continue
            values = [comp.embed(ambient, {**rename, b.y_var: yn}) for yn in yb]
            coeffs = vandermonde_coefficients(values, yb)
            rep.append(coeffs[0])
            for i in range(1, m):
                if coeffs[i]:
                    gens.append(coeffs[i])
                else:
                    dropped.append(f"V^{m}_{i} of component {q + 1} of branch {b.label}")
        reps.append(rep)
        blocks.append(Block(b.label, tuple(range(slot, slot + m)), tuple(xb), tuple(yb)))
        slot += m
    for j in range(1, len(reps)):
        for q in range(g.p):
            diff = reps[0][q] - reps[j][q]
            if diff:
                gens.append(diff)
            else:
                dropped.append(f"equality of component {q + 1} between blocks 1 and {j + 1}")
    e = expected_dimension(g.n, g.p, [m for _, m in groups])
    k = sum(m for _, m in groups)
    return MpsComponent(k, g.n, g.p, tuple(blocks), Ideal(ambient, tuple(gens)), e, tuple(dropped))


def build_components(g: MultiGerm, k: int) -> List[MpsComponent]:
    """One component per nondecreasing assignment of branches to k slots."""
    if k < 1:
        raise ValueError("k must be positive")
    require_valid(g)
    out = []
    for combo in itertools.combinations_with_replacement(range(g.s), k):
        groups = [(bi, len(list(run))) for bi, run in itertools.groupby(combo)]
        out.append(_component(g, groups))
    return out


# -- partition restrictions -----------------------------------------------------


@dataclass(frozen=True)
class PartitionRestriction:
    parent: MpsComponent
    types: Tuple[CycleType, ...]
    ideal: Ideal
    expected_dim: int

    @property
    def k(self) -> int:
        return self.parent.k

    def is_identity(self) -> bool:
        return all(t.is_identity() for t in self.types)

    def partition(self) -> CycleType:
        return CycleType(tuple(p for t in self.types for p in t.parts))

    def label(self) -> str:
        return "".join(str(t) for t in self.types)


def restrict_partition(c: MpsComponent, types: Sequence[CycleType]) -> PartitionRestriction:
    """Identify the y's of consecutive slots within each cycle of each block."""
    types = tuple(types)
    if len(types) != len(c.blocks) or any(t.k != b.size for t, b in zip(types, c.blocks)):
        raise ValueError(f"cycle types {[str(t) for t in types]} do not fit blocks {c.block_sizes}")
    merge: Dict[str, str] = {}
    for t, b in zip(types, c.blocks):
        start = 0
        for length in t.parts:
            head = b.y_names[start]
            for name in b.y_names[start + 1:start + length]:
                merge[name] = head
            start += length
    if not merge:
        return PartitionRestriction(c, types, c.ideal, c.expected_dim)
    target = tuple(v for v in c.variables if v not in merge)
    bindings = {v: Polynomial.variable(target, merge.get(v, v)) for v in c.variables}
    gens = tuple(gen.substitute(bindings, target) for gen in c.generators)
    e = expected_dimension(c.n, c.p, c.block_sizes, [t.cycles for t in types])
    return PartitionRestriction(c, types, Ideal(target, gens), e)


def restrictions(c: MpsComponent) -> List[Tuple[YoungClass, PartitionRestriction]]:
    return [(cls, restrict_partition(c, cls.types)) for cls in c.isotropy.classes()]


def germ_nonempty(x) -> bool:
    """All generators vanish at the base tuple (the origin of the ambient)."""
    return all(gen.constant_term() == 0 for gen in x.ideal.generators)


def disentanglement_nonempty(r: PartitionRestriction) -> bool:
    return germ_nonempty(r) and r.expected_dim >= 0


def k_bound(n: int, p: int) -> int:
    """Largest k with possibly nonempty D^k of a stable perturbation, plus one."""
    return p // (p - n) + 1


# -- verdicts ------------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    k: int
    component: str
    reason: str

    def __str__(self):
        return f"k={self.k} component {self.component}: {self.reason}"


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    failure: Optional[Failure] = None


@dataclass(frozen=True)
class FindetVerdict:
    finitely_determined: bool
    failure: Optional[Failure] = None
    milnor: Tuple[Tuple[int, str, MilnorResult], ...] = ()


def _components_upto(g: MultiGerm, components=None):
    kmax = k_bound(g.n, g.p)
    for k in range(2, kmax + 1):
        comps = components(k) if components else build_components(g, k)
        for c in comps:
            yield k, c


def smooth_of_expected_dim(c) -> bool:
    gens = c.ideal.generators
    return len(gens) == len(c.ideal.variables) - c.expected_dim and is_smooth_germ(c.ideal)


def stability_check(g: MultiGerm, components=None) -> StabilityVerdict:
    """Stable iff every germ-nonempty component is smooth of dimension e.

    ``components`` optionally maps k to prebuilt components (a cache).
    """
    require_valid(g)
    for k, c in _components_upto(g, components):
        if not germ_nonempty(c):
            continue
        if not smooth_of_expected_dim(c):
            if c.dropped:
                why = f"identically zero generators ({len(c.dropped)} dropped)"
            elif c.expected_dim < 0:
                why = f"nonempty with negative expected dimension {c.expected_dim}"
            else:
                why = f"singular at the base tuple (expected dimension {c.expected_dim})"
            return StabilityVerdict(False, Failure(k, c.label(), why))
    return StabilityVerdict(True)


def component_milnor(c, *, seed: int = 0, budget: Budget = DEFAULT_BUDGET) -> MilnorResult:
    """ICIS verdict for a component or restriction of expected dimension >= 0."""
    if not germ_nonempty(c):
        return MilnorResult(Verdict.EMPTY)
    if c.expected_dim < 0:
        return MilnorResult(Verdict.NOT_ICIS, reason=f"negative expected dimension {c.expected_dim}")
    kd = krull_dimension(c.ideal, budget=budget)
    if kd != c.expected_dim:
        return MilnorResult(Verdict.NOT_ICIS, reason=f"wrong dimension: {kd} instead of {c.expected_dim}")
    return milnor_icis(c.ideal, c.expected_dim, seed=seed, budget=budget)


def finite_determinacy_check(
    g: MultiGerm, components=None, *, seed: int = 0, budget: Budget = DEFAULT_BUDGET
) -> FindetVerdict:
    require_valid(g)
    found = []
    for k, c in _components_upto(g, components):
        if not germ_nonempty(c):
            continue
        if c.expected_dim >= 0:
            res = component_milnor(c, seed=seed, budget=budget)
            found.append((k, c.label(), res))
            if not res.ok:
                return FindetVerdict(False, Failure(k, c.label(), res.reason or res.verdict.value), tuple(found))
        elif quotient_vector_dimension(c.ideal, budget=budget) == INFINITE:
            return FindetVerdict(
                False, Failure(k, c.label(), "not supported at the base tuple"), tuple(found)
            )
    return FindetVerdict(True, None, tuple(found))
