import dataclasses

import pytest

from imagemilnor.family import (
    EXCELLENT,
    HYP_NEITHER,
    HYP_S_LE_D,
    INSTABILITY,
    ZERO_STABLES,
    analyze_family,
    semicontinuity_check,
    verdict_lines,
)
from imagemilnor.germ import InvalidGermError
from imagemilnor.germfile import parse_germ_file

from conftest import CORPUS


def load(name):
    return parse_germ_file((CORPUS / f"{name}.germ").read_text())


@pytest.fixture(scope="module")
def cusp_family():
    return analyze_family(load("cuspfam"))


def test_cusp_family_opens_up(cusp_family):
    rep = cusp_family
    assert rep.t0.mu_I == 1
    assert rep.generic.mu_I == 0
    assert rep.generic.stable
    assert rep.semicontinuity.satisfied
    assert not any(v.fired for v in rep.verdicts)
    assert rep.hypothesis == HYP_S_LE_D
    assert not rep.mu_I_constant
    assert set(rep.members) == {"t0", "generic", "t=1", "t=-2", "t=1/3"}
    assert rep.disagreeing_probes == []


def test_unfired_verdicts_name_the_missing_hypothesis(cusp_family):
    lines = verdict_lines(cusp_family)
    assert lines[0] == f"{ZERO_STABLES}: hypothesis not established (mu_I constant)"
    assert lines[-1] == "s(f_t) constant at sampled members: yes"


def test_trivial_family_with_stable_unfolding():
    rep = analyze_family(load("s1fam"), good_asserted=True)
    assert [v.name for v in rep.verdicts if v.fired] == [ZERO_STABLES, INSTABILITY, EXCELLENT]
    assert rep.mu_I_constant and rep.zero_stables_constant


def test_excellence_needs_the_good_assertion():
    rep = analyze_family(load("s1fam"))
    fired = {v.name for v in rep.verdicts if v.fired}
    assert fired == {ZERO_STABLES, INSTABILITY}


def test_parameter_free_germ_is_its_own_family():
    rep = analyze_family(load("crosscap"))
    assert rep.t0 is rep.generic
    assert rep.mu_I_constant


def test_moving_base_point_is_rejected():
    with pytest.raises(InvalidGermError):
        analyze_family(load("movedplane"))


def test_extra_probe_is_evaluated():
    rep = analyze_family(load("cuspfam"), probes=["5/2"])
    assert "t=5/2" in rep.members


def test_tampered_report_is_flagged(cusp_family):
    rep = dataclasses.replace(cusp_family, members=dict(cusp_family.members))
    rep.members["generic"] = dataclasses.replace(rep.generic, mu_I=7)
    verdict = semicontinuity_check(rep)
    assert not verdict.satisfied
    assert verdict.violations == ("mu_I(generic) = 7 > mu_I(0) = 1",)


def test_no_hypothesis_means_mu_I_is_not_compared(cusp_family):
    rep = dataclasses.replace(cusp_family, hypothesis=HYP_NEITHER)
    assert all("mu_I" not in c for c in semicontinuity_check(rep).checked)
