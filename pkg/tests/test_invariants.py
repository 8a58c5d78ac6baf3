import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from imagemilnor.germ import Branch, MultiGerm
from imagemilnor.germfile import parse_germ_file
from imagemilnor.invariants import (
    GermAnalysis,
    InvariantViolation,
    NotFinitelyDeterminedError,
    compute_report,
    d_of,
    icss_pages,
    mu_alt_k,
    mu_alt_top,
    mu_image,
    orbit_contribution,
    stable_dimension,
    zero_stable_census,
)
from imagemilnor.poly import Polynomial

from conftest import CORPUS

VALID_CORPUS = [p.stem for p in sorted(CORPUS.glob("*.germ")) if p.stem != "movedplane"]


def load(name):
    return parse_germ_file((CORPUS / f"{name}.germ").read_text())


def test_d_examples():
    assert d_of(load("crosscap")) == 2
    assert d_of(load("quadruple")) == 3
    assert d_of(parse_germ_file("germ { n = 1; p = 2; branch a(y) { y, y^2 } }")) == 1


def test_s1_alternating_number():
    row = mu_alt_k(load("s1"), 2)
    assert row.total == 1
    (orbit,) = row.orbits
    mus = {e.types: e.mu for e in orbit.classes}
    assert mus == {"(1,1)": 1, "(2)": 1}


def test_cusp_uses_the_sign_branch():
    (orbit,) = mu_alt_k(load("cusp"), 2).orbits
    assert orbit.expected_dim == 0
    assert orbit.mu_sum == 1 and orbit.sign_sum == -1
    assert orbit.contribution == 1


def test_top_term():
    assert mu_alt_top(load("quadruple")) == 1
    assert mu_alt_top(load("triple")) == 0
    assert mu_alt_top(load("s1")) == 0


def test_image_milnor_numbers():
    expected = {"crosscap": 0, "triple": 0, "cusp": 1, "s1": 1, "s2": 2, "s3": 3, "h2": 2, "h3": 3,
                "quadruple": 1, "c3c4": 2, "plane": 0}
    assert {name: mu_image(load(name)) for name in expected} == expected


def test_not_finitely_determined_raises():
    with pytest.raises(NotFinitelyDeterminedError):
        mu_image(load("degenerate"))
    rep = compute_report(load("degenerate"))
    assert not rep.finitely_determined and rep.mu_I is None


def test_census():
    (entry,) = zero_stable_census(load("triple"))
    assert (entry.k, entry.partition.parts, entry.count) == (3, (1, 1, 1), 1)
    (entry,) = zero_stable_census(load("cusp"))
    assert (entry.k, entry.partition.parts, entry.count) == (2, (1, 1), 2)
    assert zero_stable_census(load("plane")) == []


def test_quadruple_pages():
    e1, e2, cohomology = icss_pages(load("quadruple"))
    assert e1.entries == {(3, 0): 1}
    assert e2.entries == {(3, 0): 1}
    assert cohomology == {2: 1}


def test_pages_place_alternating_numbers():
    g = load("h2")
    e1, e2, cohomology = icss_pages(g)
    assert e1.entries == {(1, stable_dimension(2, 3, 2) + 1): 1, (2, stable_dimension(2, 3, 3) + 1): 1}
    assert cohomology == {2: 2}
    assert sum(cohomology.values()) == mu_image(g)


def test_cusp_cohomology_degree():
    assert icss_pages(load("cusp"))[2] == {1: 1}


class OffByOne(GermAnalysis):
    """Reports one more than the true Milnor number of the identity strata."""

    def milnor(self, r):
        honest = super().milnor(r)
        if not r.is_identity():
            return honest
        return type(honest)(honest.verdict, honest.mu + 1, honest.reason, honest.degree)


def test_contribution_must_divide():
    a = OffByOne(load("s1"))
    (c,) = a.components(2)
    with pytest.raises(InvariantViolation):
        orbit_contribution(a, c)


@pytest.mark.parametrize("name", VALID_CORPUS)
def test_corpus_orbit_contributions_are_nonnegative_integers(name):
    rep = compute_report(load(name))
    if not rep.finitely_determined:
        return
    for row in rep.alt.values():
        for orbit in row.orbits:
            numerator = orbit.mu_sum + (-1) ** (orbit.expected_dim + 1) * orbit.sign_sum
            assert numerator >= 0 and numerator % orbit.isotropy_order == 0
            assert orbit.contribution * orbit.isotropy_order == numerator
    assert rep.mu_I == sum(r.total for r in rep.alt.values()) + rep.mu_alt_top


# -- random corank-1 germs (C^2,0) -> (C^3,0) ---------------------------------------

XY = ("x", "y")
TAILS = [(1, 1), (2, 1), (0, 3), (1, 2), (0, 4), (1, 3), (0, 5), (3, 1), (2, 2)]


@st.composite
def plane_to_space_germs(draw):
    second = {(0, 2): 1} if draw(st.booleans()) else {(0, 3): 1, (1, 1): draw(st.integers(-2, 2))}
    third = {}
    for mono in draw(st.lists(st.sampled_from(TAILS), min_size=1, max_size=3, unique=True)):
        third[mono] = draw(st.sampled_from([-2, -1, 1, 2, 3]))
    comps = (Polynomial.variable(XY, "x"), Polynomial(XY, second), Polynomial(XY, third))
    return MultiGerm(2, 3, (Branch("a", XY, comps),), name="random")


@settings(max_examples=110, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(plane_to_space_germs())
def test_random_orbit_contributions_are_nonnegative_integers(g):
    a = GermAnalysis(g)
    assume(a.findet().finitely_determined)
    total = 0
    for k in range(2, d_of(a) + 1):
        row = mu_alt_k(a, k)  # raises InvariantViolation on a fractional or negative orbit
        assert row.total >= 0
        total += row.total
    assert mu_image(a) == total + mu_alt_top(a)
