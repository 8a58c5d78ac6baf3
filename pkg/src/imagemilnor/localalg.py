"""Local standard bases, quotient dimensions and Milnor numbers of ICIS.

Standard bases are computed with Mora's tangent-cone normal form under the
local order ``negdegrevlex``; for the global ``degrevlex`` order the same
code degenerates to ordinary Buchberger top-reduction.  Everything is exact.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import NEG_DEGREVLEX, Monomial, MonomialOrder, Polynomial

INFINITE = math.inf


class ResourceLimitError(RuntimeError):
    """A standard basis computation exceeded its configured budget."""


class GenericityError(RuntimeError):
    """Every seeded random generator combination failed the Lê–Greuel chain."""


@dataclass(frozen=True)
class Budget:
    max_terms: int = 200_000
    max_steps: int = 2_000_000
    max_basis: int = 5_000


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Ideal:
    variables: Tuple[str, ...]
    generators: Tuple[Polynomial, ...]
    base_point: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.variables != self.variables:
                raise ValueError(f"generator over {g.variables}, ideal over {self.variables}")
        if self.base_point is not None:
            bp = tuple(Fraction(b) for b in self.base_point)
            if len(bp) != len(self.variables):
                raise ValueError("base point has the wrong length")
            object.__setattr__(self, "base_point", bp)

    def at_origin(self) -> "Ideal":
        if self.base_point is None or not any(self.base_point):
            return Ideal(self.variables, self.generators)
        shift = {
            v: Polynomial.variable(self.variables, v) + b
            for v, b in zip(self.variables, self.base_point)
        }
        return Ideal(self.variables, tuple(g.substitute(shift, self.variables) for g in self.generators))

    @property
    def nonzero_generators(self) -> Tuple[Polynomial, ...]:
        return tuple(g for g in self.generators if g)

    def is_unit(self) -> bool:
        """True if some generator does not vanish at the base point."""
        return any(g.constant_term() != 0 for g in self.at_origin().generators)

    def fingerprint(self) -> str:
        text = ",".join(self.variables) + "|" + ";".join(g.to_text() for g in self.generators)
        return hashlib.sha256(text.encode()).hexdigest()

    def with_generators(self, gens: Sequence[Polynomial]) -> "Ideal":
        return Ideal(self.variables, tuple(gens), self.base_point)


@dataclass(frozen=True)
class StandardBasis:
    variables: Tuple[str, ...]
    generators: Tuple[Polynomial, ...]
    order: MonomialOrder
    staircase: Tuple[Monomial, ...]  # minimal leading monomials

    @property
    def is_unit(self) -> bool:
        return any(not any(m) for m in self.staircase)


# -- Mora normal form on raw term dicts --------------------------------------


class _Elt:
    __slots__ = ("terms", "lm", "lc", "ecart")

    def __init__(self, terms: Dict[Monomial, object], key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.ecart = max(sum(m) for m in terms) - sum(self.lm)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Counter:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.steps = 0

    def tick(self, terms: Dict):
        self.steps += 1
        if self.steps > self.budget.max_steps:
            raise ResourceLimitError(f"reduction step budget {self.budget.max_steps} exceeded")
        if len(terms) > self.budget.max_terms:
            raise ResourceLimitError(f"term budget {self.budget.max_terms} exceeded")


def _reduce_in_place(h: Dict, lm: Monomial, g: _Elt, bound: Optional[int]) -> None:
    """h -= (h[lm]/lc(g)) * (lm/lm(g)) * g, dropping terms of degree >= bound."""
    factor = h[lm] / g.lc
    shift = tuple(a - b for a, b in zip(lm, g.lm))
    for m, c in g.terms.items():
        mm = tuple(a + b for a, b in zip(m, shift))
        if bound is not None and sum(mm) >= bound:
            continue
        v = h.get(mm, 0) - factor * c
        if v == 0:
            h.pop(mm, None)
        else:
            h[mm] = v


def _truncate(h: Dict, bound: Optional[int]) -> Dict:
    if bound is None:
        return h
    return {m: c for m, c in h.items() if sum(m) < bound}


def _mora_nf(h: Dict, basis: List[_Elt], key, counter: _Counter, bound: Optional[int] = None) -> Dict:
    h = _truncate(dict(h), bound)
    reducers = list(basis)
    while h:
        lm = max(h, key=key)
        best = None
        for g in reducers:
            if _divides(g.lm, lm) and (best is None or g.ecart < best.ecart):
                best = g
                if g.ecart == 0:
                    break
        if best is None:
            return h
        h_ecart = max(sum(m) for m in h) - sum(lm)
        if best.ecart > h_ecart:
            reducers.append(_Elt(dict(h), key))
        _reduce_in_place(h, lm, best, bound)
        counter.tick(h)
    return h


def _spoly(f: _Elt, g: _Elt) -> Dict:
    lcm = tuple(max(a, b) for a, b in zip(f.lm, g.lm))
    sf = tuple(a - b for a, b in zip(lcm, f.lm))
    sg = tuple(a - b for a, b in zip(lcm, g.lm))
    out: Dict = {}
    for m, c in f.terms.items():
        out[tuple(a + b for a, b in zip(m, sf))] = c / f.lc
    for m, c in g.terms.items():
        mm = tuple(a + b for a, b in zip(m, sg))
        v = out.get(mm, 0) - c / g.lc
        if v == 0:
            out.pop(mm, None)
        else:
            out[mm] = v
    return out


def _corner_bound(basis: Sequence[_Elt], nv: int) -> Optional[int]:
    """D with m^D inside the ideal, once every variable has a pure-power lead.

    Leading monomials x_i^{a_i} cover every monomial of degree sum(a_i - 1) + 1;
    by Nakayama that power of the maximal ideal lies in the local ideal.
    """
    powers = [None] * nv
    for e in basis:
        support = [i for i, a in enumerate(e.lm) if a]
        if len(support) == 1:
            i = support[0]
            if powers[i] is None or e.lm[i] < powers[i]:
                powers[i] = e.lm[i]
    if any(a is None for a in powers):
        return None
    return sum(a - 1 for a in powers) + 1


def standard_basis(ideal: Ideal, order: MonomialOrder = NEG_DEGREVLEX, budget: Budget = DEFAULT_BUDGET) -> StandardBasis:
    """Standard basis of ``ideal`` (translated to the origin for local orders).

    For local orders, once the ideal is seen to contain a power m^D of the
    maximal ideal, all terms of degree >= D are discarded; the generators
    returned are then correct modulo m^D, which the ideal contains.
    """
    local = order.is_local
    if local:
        ideal = ideal.at_origin()
    key = order.key
    counter = _Counter(budget)
    nv = len(ideal.variables)
    one = (0,) * nv
    basis: List[_Elt] = []
    pairs: List[Tuple[int, int, int]] = []
    bound: Optional[int] = None

    def add(h: Dict) -> bool:
        nonlocal bound, basis
        elt = _Elt(h, key)
        idx = len(basis)
        for j, other in enumerate(basis):
            if other is None:
                continue
            lcm = tuple(max(a, b) for a, b in zip(other.lm, elt.lm))
            heapq.heappush(pairs, (sum(lcm), j, idx))
        basis.append(elt)
        if len(basis) > budget.max_basis:
            raise ResourceLimitError(f"basis size budget {budget.max_basis} exceeded")
        if local and nv:
            found = _corner_bound([e for e in basis if e is not None], nv)
            if found is not None and (bound is None or found < bound):
                bound = found
                for pos, e in enumerate(basis):
                    if e is None:
                        continue
                    if sum(e.lm) >= bound:
                        cut = {e.lm: e.lc}  # the lead alone lies in m^D
                    else:
                        cut = _truncate(e.terms, bound)
                    basis[pos] = _Elt(cut, key)
        return elt.lm == one

    def live() -> List[_Elt]:
        return [e for e in basis if e is not None]

    unit = False
    for g in ideal.generators:
        if not g:
            continue
        h = _mora_nf(dict(g.items()), live(), key, counter, bound)
        if h and add(h):
            unit = True
            break
    while pairs and not unit:
        _, i, j = heapq.heappop(pairs)
        f, g = basis[i], basis[j]
        if f is None or g is None:
            continue
        if all(a == 0 or b == 0 for a, b in zip(f.lm, g.lm)):
            continue  # coprime leading monomials
        h = _mora_nf(_spoly(f, g), live(), key, counter, bound)
        if h and add(h):
            unit = True

    if unit:
        gens = (Polynomial.constant(ideal.variables, 1),)
        return StandardBasis(ideal.variables, gens, order, (one,))
    elts = live()
    keep: List[_Elt] = []
    for i, e in enumerate(elts):
        dominated = any(
            _divides(o.lm, e.lm) and (o.lm != e.lm or j < i) for j, o in enumerate(elts) if j != i
        )
        if not dominated:
            keep.append(e)
    keep.sort(key=lambda e: key(e.lm), reverse=True)
    gens = tuple(Polynomial(ideal.variables, e.terms) for e in keep)
    return StandardBasis(ideal.variables, gens, order, tuple(e.lm for e in keep))


# -- staircase invariants ------------------------------------------------------


def _staircase_of(obj, order: MonomialOrder, budget: Budget) -> Tuple[int, Tuple[Monomial, ...]]:
    if isinstance(obj, StandardBasis):
        return len(obj.variables), obj.staircase
    sb = standard_basis(obj, order, budget)
    return len(sb.variables), sb.staircase


def count_standard_monomials(nvars: int, staircase: Sequence[Monomial]):
    """Number of monomials outside the monomial ideal, or INFINITE."""
    if any(not any(m) for m in staircase):
        return 0
    for i in range(nvars):
        if not any(m[i] > 0 and sum(m) == m[i] for m in staircase):
            return INFINITE
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        nxt = []
        for mono in frontier:
            for i in range(nvars):
                cand = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                if cand in seen or any(_divides(s, cand) for s in staircase):
                    continue
                seen.add(cand)
                nxt.append(cand)
        frontier = nxt
    return len(seen)


def monomial_ideal_dimension(nvars: int, staircase: Sequence[Monomial]) -> int:
    """Krull dimension of k[x]/(staircase); -1 for the unit ideal."""
    if any(not any(m) for m in staircase):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in staircase]
    for size in range(nvars, -1, -1):
        for free in itertools.combinations(range(nvars), size):
            free = frozenset(free)
            if all(not s <= free for s in supports):
                return size
    return 0


def quotient_vector_dimension(ideal, order: MonomialOrder = NEG_DEGREVLEX, budget: Budget = DEFAULT_BUDGET):
    """dim_Q of the local quotient ring, or ``INFINITE``."""
    nv, stair = _staircase_of(ideal, order, budget)
    return count_standard_monomials(nv, stair)


def krull_dimension(ideal, order: MonomialOrder = NEG_DEGREVLEX, budget: Budget = DEFAULT_BUDGET) -> int:
    nv, stair = _staircase_of(ideal, order, budget)
    return monomial_ideal_dimension(nv, stair)


# -- linear algebra over the coefficient field --------------------------------


def field_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix with Fraction / Q(t) entries (Gaussian elimination)."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / p
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def jacobian_at_origin(gens: Sequence[Polynomial], variables: Sequence[str]) -> List[List]:
    return [[g.linear_coefficient(v) for v in variables] for g in gens]


def jacobian_matrix(gens: Sequence[Polynomial], variables: Sequence[str]) -> List[List[Polynomial]]:
    return [[g.diff(v) for v in variables] for g in gens]


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along rows, memoised on column subsets."""
    n = len(matrix)
    memo: Dict[Tuple[int, Tuple[int, ...]], Polynomial] = {}

    def det(row: int, cols: Tuple[int, ...]) -> Polynomial:
        if row == n:
            return Polynomial.constant(matrix[0][0].variables, 1)
        hit = memo.get((row, cols))
        if hit is not None:
            return hit
        total = Polynomial.zero(matrix[0][0].variables)
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = det(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[(row, cols)] = total
        return total

    return det(0, tuple(range(len(matrix[0]))))


def maximal_minors(matrix: Sequence[Sequence[Polynomial]]) -> List[Polynomial]:
    r = len(matrix)
    if r == 0:
        return []
    ncols = len(matrix[0])
    out = []
    for cols in itertools.combinations(range(ncols), r):
        sub = [[row[c] for c in cols] for row in matrix]
        d = determinant(sub)
        if d:
            out.append(d)
    return out


def is_smooth_germ(ideal: Ideal) -> bool:
    """Jacobian of the generators at the base point has full row rank.

    An empty generator list is the whole (smooth) ambient; a generator that
    is a unit at the base point makes the germ empty, reported as False.
    """
    ideal = ideal.at_origin()
    gens = ideal.nonzero_generators
    if len(gens) != len(ideal.generators):
        return False
    if any(g.constant_term() != 0 for g in gens):
        return False
    if len(gens) > len(ideal.variables):
        return False
    return field_rank(jacobian_at_origin(gens, ideal.variables)) == len(gens)


# -- Milnor numbers --------------------------------------------------------------


class Verdict(str, Enum):
    EMPTY = "empty"
    SMOOTH = "smooth"
    ICIS = "icis"
    NOT_ICIS = "not_icis"
    UNIT_IDEAL = "unit_ideal"


@dataclass(frozen=True)
class MilnorResult:
    verdict: Verdict
    mu: Optional[int] = None
    reason: Optional[str] = None
    degree: Optional[int] = None  # length of a zero-dimensional germ
    attempts: int = 0  # 0: generators used as given
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.verdict in (Verdict.SMOOTH, Verdict.ICIS)

    def describe(self) -> str:
        if self.verdict in (Verdict.SMOOTH, Verdict.ICIS):
            return f"{self.verdict.value} mu={self.mu}"
        if self.reason:
            return f"{self.verdict.value} ({self.reason})"
        return self.verdict.value


def derive_seed(seed: int, fingerprint: str) -> int:
    digest = hashlib.sha256(f"{seed}:{fingerprint}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _random_invertible(rng: random.Random, size: int) -> List[List[int]]:
    while True:
        mat = [[rng.randint(-4, 4) for _ in range(size)] for _ in range(size)]
        if field_rank([[Fraction(x) for x in row] for row in mat]) == size:
            return mat


def _combine(mat: List[List[int]], gens: Sequence[Polynomial]) -> List[Polynomial]:
    out = []
    for row in mat:
        acc = Polynomial.zero(gens[0].variables)
        for a, g in zip(row, gens):
            if a:
                acc = acc + g.scale(a)
        out.append(acc)
    return out


def le_greuel_chain(gens: Sequence[Polynomial], variables: Sequence[str], budget: Budget = DEFAULT_BUDGET) -> Optional[int]:
    """Milnor number via the Lê–Greuel recursion, or None if a link fails.

    Link j contributes mu(X_j) + mu(X_{j-1}) = dim O/((g_1..g_{j-1}) + j-minors
    of the Jacobian of g_1..g_j), starting from the smooth ambient (mu = 0).
    """
    variables = tuple(variables)
    prev = 0
    for j in range(1, len(gens) + 1):
        minors = maximal_minors(jacobian_matrix(gens[:j], variables))
        q = quotient_vector_dimension(Ideal(variables, tuple(gens[: j - 1]) + tuple(minors)), budget=budget)
        if q == INFINITE:
            return None
        mu = q - prev
        if mu < 0:
            return None
        prev = mu
    return prev


def milnor_icis(
    ideal: Ideal,
    expected_dim: Optional[int] = None,
    *,
    seed: int = 0,
    budget: Budget = DEFAULT_BUDGET,
    max_retries: int = 8,
) -> MilnorResult:
    """Milnor number of the germ at the base point of a complete intersection.

    Zero-dimensional germs of length d get mu = d - 1 (the Milnor fibre is d
    points).  Positive-dimensional ones go through the Lê–Greuel chain; if
    the given generator order fails, seeded random invertible integer
    combinations are tried before giving up.
    """
    ideal = ideal.at_origin()
    variables = ideal.variables
    gens = list(ideal.nonzero_generators)
    m, c = len(variables), len(gens)
    if any(g.constant_term() != 0 for g in gens):
        return MilnorResult(Verdict.EMPTY)
    e = m - c if expected_dim is None else expected_dim
    if m - c != e or len(ideal.generators) != c:
        return MilnorResult(
            Verdict.NOT_ICIS,
            reason=f"generator-count mismatch: {c} nonzero generators in {m} variables, expected dimension {e}",
        )
    if e < 0:
        return MilnorResult(Verdict.NOT_ICIS, reason=f"wrong dimension: expected dimension {e} is negative")
    if c == 0 or field_rank(jacobian_at_origin(gens, variables)) == c:
        return MilnorResult(Verdict.SMOOTH, mu=0)
    if e == 0:
        d = quotient_vector_dimension(ideal, budget=budget)
        if d == INFINITE:
            return MilnorResult(Verdict.NOT_ICIS, reason="wrong dimension: zero-dimensional presentation with a positive-dimensional germ")
        return MilnorResult(Verdict.ICIS, mu=d - 1, degree=d)

    mu = le_greuel_chain(gens, variables, budget)
    if mu is not None:
        return MilnorResult(Verdict.ICIS, mu=mu)

    kd = krull_dimension(ideal, budget=budget)
    if kd != e:
        return MilnorResult(Verdict.NOT_ICIS, reason=f"wrong dimension: Krull dimension {kd}, expected {e}")
    singular = Ideal(variables, tuple(gens) + tuple(maximal_minors(jacobian_matrix(gens, variables))))
    if quotient_vector_dimension(singular, budget=budget) == INFINITE:
        return MilnorResult(Verdict.NOT_ICIS, reason="non-isolated singular locus")

    derived = derive_seed(seed, ideal.fingerprint())
    rng = random.Random(derived)
    for attempt in range(1, max_retries + 1):
        mixed = _combine(_random_invertible(rng, c), gens)
        mu = le_greuel_chain(mixed, variables, budget)
        if mu is not None:
            return MilnorResult(Verdict.ICIS, mu=mu, attempts=attempt, seed=derived)
    raise GenericityError(
        f"Lê–Greuel chain failed for all {max_retries} seeded combinations (seed {derived})"
    )
