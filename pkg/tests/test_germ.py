import random
from fractions import Fraction

import pytest

from imagemilnor.germ import (
    GENERIC,
    Branch,
    InvalidGermError,
    MultiGerm,
    differential_rank,
    multiplicity,
    require_valid,
    specialize,
    validate,
)
from imagemilnor.germfile import parse_germ_file

from conftest import CORPUS, poly


def branch(label, variables, *comps):
    return Branch(label, tuple(variables), tuple(poly(c, variables) for c in comps))


def germ(n, p, *branches, **kw):
    return MultiGerm(n, p, tuple(branches), **kw)


def codes(g):
    return {d.code for d in validate(g).diagnostics}


def test_crosscap_is_valid_with_kernel_y():
    b = branch("a", "xy", "x", "y^2", "x*y")
    rep = validate(germ(2, 3, b))
    assert rep.valid
    assert rep.branches[0].rank == 1
    assert rep.branches[0].kernel_in_y
    assert rep.lines()[-1] == "valid: yes"


def test_rank_one_with_pure_power():
    rep = validate(germ(2, 3, branch("a", "xy", "x", "y^3+x^2", "x*y")))
    assert rep.valid
    assert rep.branches[0].rank == 1 and rep.branches[0].kernel_in_y


def test_immersion_branch():
    b = branch("a", ["y"], "y", "y^2")
    assert differential_rank(b) == 1
    assert validate(germ(1, 2, b)).valid


def test_differential_ranks():
    assert differential_rank(branch("a", "xy", "x", "y^2", "x*y")) == 1
    assert differential_rank(branch("a", "xy", "x", "y", "0")) == 2
    assert differential_rank(branch("a", "xy", "x^2", "y^2", "x*y")) == 0


def test_diagnostics_are_named():
    assert "corank" in codes(germ(2, 3, branch("a", "xy", "x^2", "y^2", "x*y")))
    assert "not-origin-preserving" in codes(germ(2, 3, branch("a", "xy", "x", "y^2", "1+x*y")))
    assert "kernel-not-y" in codes(germ(2, 3, branch("a", "xy", "y", "x^2", "x*y")))
    assert "dimension" in codes(germ(3, 3, branch("a", "xyz", "x", "y", "z")))
    assert "not-adapted" in codes(germ(2, 3, branch("a", "xy", "x+y^2", "y^2", "x*y")))
    twice = germ(2, 3, branch("a", "xy", "x", "y^2", "x*y"), branch("a", "xy", "x", "y", "0"))
    assert "duplicate-label" in codes(twice)


def test_require_valid_raises_with_report():
    with pytest.raises(InvalidGermError) as info:
        require_valid(germ(2, 3, branch("a", "xy", "x", "y^2", "1")))
    assert not info.value.report.valid


def test_multiplicity():
    assert multiplicity(branch("a", "xy", "x", "y^2", "y^3+x*y")) == 2
    assert multiplicity(branch("a", "xy", "x", "x*y", "x^2*y")) == float("inf")


def test_specialize_examples():
    g = parse_germ_file("germ { n = 1; p = 2; branch a(x) { x^2, x^3 + t*x } }")
    at0 = specialize(g, 0)
    assert [c.to_text() for c in at0.branches[0].components] == ["x^2", "x^3"]
    assert not at0.is_parametric()
    assert specialize(g, GENERIC).is_parametric()
    plain = parse_germ_file("germ { n = 2; p = 3; branch a(x, y) { x, y^2, x*y } }")
    assert specialize(plain, GENERIC) == plain


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.germ")), ids=lambda p: p.stem)
def test_specialization_never_repairs_an_invalid_germ(path):
    g = parse_germ_file(path.read_text())
    if validate(g).valid:
        return
    for at in (0, 1, Fraction(-1, 2), GENERIC):
        assert not validate(specialize(g, at)).valid


def test_moved_plane_family_inherits_its_diagnostic():
    g = parse_germ_file((CORPUS / "movedplane.germ").read_text())
    assert "not-origin-preserving" in codes(g)
    # at t=0 the plane passes through the origin, but the family does not
    assert "not-origin-preserving" in codes(specialize(g, 0))


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*fam*.germ")), ids=lambda p: p.stem)
def test_generic_rank_matches_random_rational_t(path):
    g = parse_germ_file(path.read_text())
    rng = random.Random(path.stem)
    for b_index, b in enumerate(g.branches):
        generic = differential_rank(b)
        for _ in range(5):
            t = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 30))
            assert differential_rank(specialize(g, t).branches[b_index]) == generic
