"""Alternating Milnor numbers, image Milnor number and spectral sequence pages.

For each orbit of base tuples (a branch-assignment component with isotropy
group H) the alternating Milnor number collects

    (1/|H|) * ( sum over classes with nonempty stratum of size * mu
                + (-1)^(e+1) * sum over classes with empty stratum of size * sign )

where e is the expected dimension of the component itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .germ import MultiGerm, require_valid
from .localalg import DEFAULT_BUDGET, Budget, MilnorResult
from .mps import (
    FindetVerdict,
    MpsComponent,
    PartitionRestriction,
    StabilityVerdict,
    build_components,
    component_milnor,
    disentanglement_nonempty,
    finite_determinacy_check,
    k_bound,
    restrictions,
    stability_check,
)
from .symmetry import CycleType


class NotFinitelyDeterminedError(ValueError):
    """The germ failed the finite determinacy check; invariants are undefined."""


class InvariantViolation(AssertionError):
    """An orbit contribution came out non-integral or negative."""


class GermAnalysis:
    """Caches components and Milnor numbers for one germ."""

    def __init__(self, g: MultiGerm, *, seed: int = 0, budget: Budget = DEFAULT_BUDGET):
        require_valid(g)
        self.germ = g
        self.seed = seed
        self.budget = budget
        self._components: Dict[int, List[MpsComponent]] = {}
        self._milnor: Dict[Tuple[int, str, str], MilnorResult] = {}
        self._stability: Optional[StabilityVerdict] = None
        self._findet: Optional[FindetVerdict] = None

    def components(self, k: int) -> List[MpsComponent]:
        if k not in self._components:
            self._components[k] = build_components(self.germ, k)
        return self._components[k]

    def milnor(self, r: PartitionRestriction) -> MilnorResult:
        key = (r.k, r.parent.label(), r.label())
        if key not in self._milnor:
            self._milnor[key] = component_milnor(r, seed=self.seed, budget=self.budget)
        return self._milnor[key]

    def stability(self) -> StabilityVerdict:
        if self._stability is None:
            self._stability = stability_check(self.germ, self.components)
        return self._stability

    def findet(self) -> FindetVerdict:
        if self._findet is None:
            if self.stability().stable:
                self._findet = FindetVerdict(True)
            else:
                self._findet = finite_determinacy_check(
                    self.germ, self.components, seed=self.seed, budget=self.budget
                )
        return self._findet

    def require_findet(self):
        verdict = self.findet()
        if not verdict.finitely_determined:
            raise NotFinitelyDeterminedError(f"not finitely determined: {verdict.failure}")


def _analysis(g, **kw) -> GermAnalysis:
    return g if isinstance(g, GermAnalysis) else GermAnalysis(g, **kw)


def d_of(g) -> int:
    a = _analysis(g)
    d = 1
    for k in range(2, a.germ.p // (a.germ.p - a.germ.n) + 1):
        if any(disentanglement_nonempty(c.identity()) for c in a.components(k)):
            d = k
    return d


def mu_alt_top(g) -> int:
    a = _analysis(g)
    s, d = a.germ.s, d_of(a)
    return abs(sum((-1) ** l * math.comb(s, l) for l in range(d + 1, s + 1)))


@dataclass(frozen=True)
class ClassEntry:
    types: str
    size: int
    sign: int
    expected_dim: int
    nonempty: bool
    mu: Optional[int]


@dataclass(frozen=True)
class OrbitContribution:
    component: str
    isotropy_order: int
    expected_dim: int
    mu_sum: int
    sign_sum: int
    contribution: int
    classes: Tuple[ClassEntry, ...]


@dataclass(frozen=True)
class AltRow:
    k: int
    total: int
    orbits: Tuple[OrbitContribution, ...]


def orbit_contribution(a: GermAnalysis, c: MpsComponent) -> OrbitContribution:
    entries = []
    mu_sum = sign_sum = 0
    for cls, r in restrictions(c):
        if disentanglement_nonempty(r):
            res = a.milnor(r)
            if not res.ok:
                raise NotFinitelyDeterminedError(
                    f"k={c.k} component {c.label()} stratum {r.label()}: {res.describe()}"
                )
            mu_sum += cls.size * res.mu
            entries.append(ClassEntry(r.label(), cls.size, cls.sign, r.expected_dim, True, res.mu))
        else:
            sign_sum += cls.size * cls.sign
            entries.append(ClassEntry(r.label(), cls.size, cls.sign, r.expected_dim, False, None))
    order = c.isotropy.order
    numerator = mu_sum + (-1) ** (c.expected_dim + 1) * sign_sum
    if numerator % order or numerator < 0:
        raise InvariantViolation(
            f"k={c.k} component {c.label()}: contribution {numerator}/{order} is not a nonnegative integer"
        )
    return OrbitContribution(c.label(), order, c.expected_dim, mu_sum, sign_sum, numerator // order, tuple(entries))


def mu_alt_k(g, k: int) -> AltRow:
    a = _analysis(g)
    a.require_findet()
    if k < 2:
        raise ValueError("alternating Milnor numbers start at k=2")
    orbits = tuple(orbit_contribution(a, c) for c in a.components(k))
    return AltRow(k, sum(o.contribution for o in orbits), orbits)


def mu_image(g) -> int:
    a = _analysis(g)
    a.require_findet()
    return sum(mu_alt_k(a, k).total for k in range(2, d_of(a) + 1)) + mu_alt_top(a)


@dataclass(frozen=True)
class CensusEntry:
    k: int
    partition: CycleType
    component: str
    stratum: str
    count: int


def zero_stable_census(g) -> List[CensusEntry]:
    """Zero-dimensional strata of the disentanglement with their point counts."""
    a = _analysis(g)
    a.require_findet()
    out = []
    for k in range(2, d_of(a) + 1):
        for c in a.components(k):
            for _, r in restrictions(c):
                if r.expected_dim == 0 and disentanglement_nonempty(r):
                    res = a.milnor(r)
                    if not res.ok:
                        raise NotFinitelyDeterminedError(f"k={k} {c.label()} {r.label()}: {res.describe()}")
                    out.append(CensusEntry(k, r.partition(), c.label(), r.label(), res.mu + 1))
    return out


@dataclass(frozen=True)
class IcssPage:
    page: int
    entries: Dict[Tuple[int, int], int]  # (r, q) -> rank, nonzero only
    annotations: Tuple[str, ...] = ()

    def rows(self) -> int:
        return max((q for _, q in self.entries), default=0) + 1

    def columns(self) -> int:
        return max((r for r, _ in self.entries), default=0) + 1


def stable_dimension(n: int, p: int, k: int) -> int:
    return n * k - p * (k - 1)


def icss_pages(g, rows: Optional[Dict[int, AltRow]] = None):
    """E1 and E2 pages of the pair (versal unfolding, disentanglement).

    Returns (E1, E2, cohomology) where cohomology maps a reduced degree to
    its rank.
    """
    a = _analysis(g)
    a.require_findet()
    n, p, s = a.germ.n, a.germ.p, a.germ.s
    d = d_of(a)
    rows = rows or {k: mu_alt_k(a, k) for k in range(2, d + 1)}
    e1: Dict[Tuple[int, int], int] = {}
    e2: Dict[Tuple[int, int], int] = {}
    cohom: Dict[int, int] = {}
    for k in range(2, d + 1):
        rank = rows[k].total
        if rank:
            e1[(k - 1, stable_dimension(n, p, k) + 1)] = rank
            e2[(k - 1, stable_dimension(n, p, k) + 1)] = rank
            degree = p - (p - n - 1) * k - 1
            cohom[degree] = cohom.get(degree, 0) + rank
    notes = []
    for k in range(d + 1, s + 1):
        e1[(k - 1, 0)] = math.comb(s, k)
    if s > d:
        notes.append(f"bottom row: binomials C({s},k) for {d} < k <= {s}")
    top = mu_alt_top(a)
    if top:
        e2[(d, 0)] = top
        cohom[d - 1] = cohom.get(d - 1, 0) + top
    e2_notes = ("collapses at E2",) + ((f"bottom row survivor at r={d}",) if top else ())
    return IcssPage(1, e1, tuple(notes)), IcssPage(2, e2, e2_notes), dict(sorted(cohom.items()))


@dataclass
class InvariantReport:
    name: Optional[str]
    n: int
    p: int
    s: int
    stable: bool
    stability_failure: Optional[str]
    finitely_determined: bool
    findet_failure: Optional[str]
    d: Optional[int] = None
    alt: Dict[int, AltRow] = field(default_factory=dict)
    mu_alt_top: Optional[int] = None
    mu_I: Optional[int] = None
    census: List[CensusEntry] = field(default_factory=list)
    e1: Optional[IcssPage] = None
    e2: Optional[IcssPage] = None
    cohomology: Dict[int, int] = field(default_factory=dict)
    strata: List[Tuple[int, str, str, int, str]] = field(default_factory=list)  # k, comp, stratum, e_P, verdict


def compute_report(g, *, seed: int = 0, budget: Budget = DEFAULT_BUDGET) -> InvariantReport:
    a = _analysis(g, seed=seed, budget=budget)
    st = a.stability()
    fd = a.findet()
    rep = InvariantReport(
        name=a.germ.name,
        n=a.germ.n,
        p=a.germ.p,
        s=a.germ.s,
        stable=st.stable,
        stability_failure=str(st.failure) if st.failure else None,
        finitely_determined=fd.finitely_determined,
        findet_failure=str(fd.failure) if fd.failure else None,
    )
    if not fd.finitely_determined:
        return rep
    rep.d = d_of(a)
    rep.alt = {k: mu_alt_k(a, k) for k in range(2, rep.d + 1)}
    rep.mu_alt_top = mu_alt_top(a)
    rep.mu_I = sum(r.total for r in rep.alt.values()) + rep.mu_alt_top
    rep.census = zero_stable_census(a)
    rep.e1, rep.e2, rep.cohomology = icss_pages(a, rep.alt)
    for k in range(2, rep.d + 1):
        for c in a.components(k):
            for _, r in restrictions(c):
                if disentanglement_nonempty(r):
                    rep.strata.append((k, c.label(), r.label(), r.expected_dim, a.milnor(r).describe()))
    return rep
