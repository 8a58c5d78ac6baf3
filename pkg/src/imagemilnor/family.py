"""One-parameter unfoldings: compare t=0 with generic t and probes.

"For all t near 0" is read as: the member over Q(t) (t transcendental)
agrees with t=0.  Rational probes are extra evidence and are listed when
they disagree with the generic member.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .germ import GENERIC, InvalidGermError, MultiGerm, require_valid, specialize
from .invariants import InvariantReport, compute_report
from .localalg import DEFAULT_BUDGET, Budget

HYP_S_LE_D = "s<=d everywhere"
HYP_SD_CONSTANT = "s,d constant"
HYP_NEITHER = "neither"

ZERO_STABLES = "0-stables constant"
INSTABILITY = "instability locus is T"
EXCELLENT = "excellent"


@dataclass(frozen=True)
class Verdict:
    name: str
    fired: bool
    hypotheses: Tuple[Tuple[str, bool], ...]

    def text(self) -> str:
        if self.fired:
            return self.name
        missing = ", ".join(h for h, ok in self.hypotheses if not ok)
        return f"{self.name}: hypothesis not established ({missing})"


@dataclass(frozen=True)
class Assessment:
    satisfied: bool
    checked: Tuple[str, ...]
    violations: Tuple[str, ...]


@dataclass
class FamilyReport:
    name: Optional[str]
    has_opsu: bool
    members: Dict[str, InvariantReport]
    errors: Dict[str, str] = field(default_factory=dict)
    s_constant: bool = False
    d_constant: bool = False
    hypothesis: str = HYP_NEITHER
    mu_I_constant: bool = False
    mu_alt_constant: Dict[int, bool] = field(default_factory=dict)
    strata_constant: bool = False
    zero_stables_constant: bool = False
    disagreeing_probes: List[str] = field(default_factory=list)
    semicontinuity: Optional[Assessment] = None
    verdicts: List[Verdict] = field(default_factory=list)

    @property
    def t0(self) -> Optional[InvariantReport]:
        return self.members.get("t0")

    @property
    def generic(self) -> Optional[InvariantReport]:
        return self.members.get("generic")

    @property
    def hypothesis_holds(self) -> bool:
        return self.hypothesis != HYP_NEITHER


def _census_key(r: InvariantReport) -> Counter:
    return Counter((c.k, c.partition.parts, c.count) for c in r.census)


def _summary(r: InvariantReport) -> tuple:
    return (
        r.stable,
        r.finitely_determined,
        r.d,
        r.mu_I,
        tuple(sorted((k, row.total) for k, row in r.alt.items())),
        tuple(sorted(_census_key(r).items())),
    )


def analyze_family(
    g: MultiGerm,
    probes: Sequence = (),
    *,
    good_asserted: bool = False,
    seed: int = 0,
    budget: Budget = DEFAULT_BUDGET,
) -> FamilyReport:
    require_valid(g)
    members: Dict[str, InvariantReport] = {}
    errors: Dict[str, str] = {}
    if g.is_parametric():
        todo = [("t0", specialize(g, 0)), ("generic", specialize(g, GENERIC))]
        for q in tuple(g.probes) + tuple(Fraction(x) for x in probes):
            try:
                todo.append((f"t={q}", specialize(g, q)))
            except ZeroDivisionError as exc:
                errors[f"t={q}"] = str(exc)
        for label, member in todo:
            try:
                members[label] = compute_report(member, seed=seed, budget=budget)
            except InvalidGermError as exc:
                errors[label] = str(exc)
    else:
        only = compute_report(g, seed=seed, budget=budget)
        members = {"t0": only, "generic": only}
    rep = FamilyReport(g.name, g.has_opsu, members, errors)
    _compare(rep)
    rep.semicontinuity = semicontinuity_check(rep)
    rep.verdicts = excellence_verdict(rep, good_asserted)
    return rep


def _compare(rep: FamilyReport):
    t0, gen = rep.t0, rep.generic
    if t0 is None or gen is None:
        return
    everyone = list(rep.members.values())
    rep.s_constant = len({r.s for r in everyone}) == 1
    rep.d_constant = len({r.d for r in everyone}) == 1
    if all(r.d is not None and r.s <= r.d for r in everyone):
        rep.hypothesis = HYP_S_LE_D
    elif rep.s_constant and rep.d_constant and t0.d is not None:
        rep.hypothesis = HYP_SD_CONSTANT
    else:
        rep.hypothesis = HYP_NEITHER
    rep.mu_I_constant = t0.mu_I is not None and t0.mu_I == gen.mu_I
    for k in sorted(set(t0.alt) | set(gen.alt)):
        a, b = t0.alt.get(k), gen.alt.get(k)
        rep.mu_alt_constant[k] = a is not None and b is not None and a.total == b.total
    rep.strata_constant = sorted(t0.strata) == sorted(gen.strata)
    rep.zero_stables_constant = t0.finitely_determined and _census_key(t0) == _census_key(gen)
    rep.disagreeing_probes = [
        label for label, r in rep.members.items() if label not in ("t0", "generic") and _summary(r) != _summary(gen)
    ]


def semicontinuity_check(rep: FamilyReport) -> Assessment:
    """Upper semicontinuity of mu_k^alt and (under the hypothesis) of mu_I."""
    t0, gen = rep.t0, rep.generic
    checked, bad = [], []
    if t0 is None or gen is None or not t0.finitely_determined or not gen.finitely_determined:
        return Assessment(False, (), ("t=0 or generic member is not finitely determined",))
    for k in sorted(set(t0.alt) & set(gen.alt)):
        a, b = t0.alt[k].total, gen.alt[k].total
        checked.append(f"mu_{k}^alt: {b} <= {a}")
        if b > a:
            bad.append(f"mu_{k}^alt(generic) = {b} > mu_{k}^alt(0) = {a}")
    if rep.hypothesis_holds:
        checked.append(f"mu_I: {gen.mu_I} <= {t0.mu_I}")
        if gen.mu_I > t0.mu_I:
            bad.append(f"mu_I(generic) = {gen.mu_I} > mu_I(0) = {t0.mu_I}")
    return Assessment(not bad, tuple(checked), tuple(bad))


def excellence_verdict(rep: FamilyReport, good_asserted: bool) -> List[Verdict]:
    hyp = (f"hypothesis class {rep.hypothesis}", rep.hypothesis_holds)
    const = ("mu_I constant", rep.mu_I_constant)
    opsu = ("has one-parameter stable unfolding", rep.has_opsu)
    good = ("good asserted", good_asserted)
    out = [
        Verdict(ZERO_STABLES, const[1] and hyp[1], (const, hyp)),
        Verdict(INSTABILITY, const[1] and hyp[1] and opsu[1], (const, hyp, opsu)),
        Verdict(EXCELLENT, good[1] and const[1], (good, const)),
    ]
    return out


def verdict_lines(rep: FamilyReport) -> List[str]:
    lines = [v.text() for v in rep.verdicts]
    lines.append(f"s(f_t) constant at sampled members: {'yes' if rep.s_constant else 'no'}")
    return lines
