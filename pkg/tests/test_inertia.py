from collections import Counter

import pytest

import oracles
from godeaux.config import builtin_config
from godeaux.groups import GroupElement, ambient_group, quotient_by_torsion
from godeaux.inertia import (
    acts_trivially,
    choose_representatives,
    effective_components,
    embedded_automorphism_groups,
    fixed_stratum,
    inertia_components,
    nonabelian_families,
    raw_components,
    subcomponent_automorphisms,
)
from godeaux.strata import collapse_orbits, hasse, pipeline, strata_table


def E(nu, *t):
    return GroupElement.from_tuple(nu, t)


@pytest.mark.parametrize("nu", [4, 5])
def test_fixed_stratum_matches_oracle(nu):
    case = builtin_config(nu)
    for e in quotient_by_torsion(ambient_group(nu)).elements:
        assert fixed_stratum(e, case).key() == oracles.fixed(nu, e.as_tuple()), str(e)


@pytest.mark.parametrize(
    "nu,t,vanished,ratios",
    [
        (5, (0, 0, 0, 0), (), ()),
        (5, (0, 0, 1, 0), ("b1", "b2", "b3", "c1", "c2", "c3"), ()),
        (4, (2, 2, 0, 0), ("b1", "b3"), ()),
        (4, (0, 0, 0, 1), (), (("b3", "b1", 0), ("c3", "c1", 0), ("d3", "d1", 0))),
    ],
)
def test_fixed_stratum_examples(nu, t, vanished, ratios):
    s = fixed_stratum(E(nu, *t), builtin_config(nu))
    assert s.vanished == vanished
    assert s.ratios == ratios


@pytest.mark.parametrize("nu", [3, 4, 5])
def test_aut_membership_is_fixed_locus_containment(nu):
    case = builtin_config(nu)
    quotient = quotient_by_torsion(ambient_group(nu)).elements
    for s in strata_table(nu).strata:
        for e in quotient:
            assert (e in s.group) == s.stratum.contained_in(fixed_stratum(e, case)), (s.name, str(e))
            assert acts_trivially(e, case, s.stratum) == (e in s.group)


@pytest.mark.parametrize("nu,order", [(3, 2), (4, 32), (5, 100)])
def test_one_component_per_quotient_element(nu, order):
    case = builtin_config(nu)
    comps = inertia_components(case)
    assert len(comps) == order
    assert len({c.element for c in comps}) == order
    assert len(raw_components(case)) == order
    for c in comps:
        assert c.fixed == fixed_stratum(c.element, case)


def test_quintic_histogram():
    comps = inertia_components(builtin_config(5))
    assert Counter(c.family for c in comps) == {"affmod": 1, "Q": 1, "P": 2, "H": 4, "O": 92}
    assert not any(c.bad for c in comps)


def test_quintic_elements():
    comps = {c.element.as_tuple(): c.family for c in inertia_components(builtin_config(5))}
    assert comps[(0, 0, 0, 0)] == "affmod"
    assert comps[(0, 0, 0, 2)] == "Q"
    assert {t for t, f in comps.items() if f == "P"} == {(0, 0, 0, 1), (0, 0, 0, 3)}
    assert {t for t, f in comps.items() if f == "H"} == {(0, 0, i, 0) for i in (1, 2, 3, 4)}


def test_quintic_centralizer_of_the_involution():
    (c,) = [c for c in inertia_components(builtin_config(5)) if c.element.as_tuple() == (0, 0, 0, 2)]
    assert (c.centralizer_label.order, c.centralizer_label.index) == (20, 1)


# frozen from the brute-force centralizer count in H_5/G
def test_quintic_centralizers_on_o():
    comps = inertia_components(builtin_config(5))
    got = Counter(c.centralizer_label.order for c in comps if c.family == "O")
    assert dict(got) == {50: 4, 25: 16, 20: 4, 10: 20, 4: 48}


def test_quartic_effective_components():
    eff = effective_components(builtin_config(4))
    assert len(eff) == 20
    assert Counter(c.component_name for c in eff) == {
        "affmod": 1, "R_1": 1, "W": 1, "R_4": 1, "R_{2,3}": 1, "S_5": 1, "R_5": 2, "S_4": 2, "S_6": 2,
        "S_{2,3}": 2, "T_{2,3}": 2, "T_4": 4,
    }
    assert not any(c.bad for c in eff)


def test_cubic_components():
    comps = inertia_components(builtin_config(3))
    assert [c.bad for c in comps] == [False, True]
    assert len(effective_components(builtin_config(3))) == 1


# The chosen S_{6,0} lies in R_{5,0} while the chosen S_{7,0} lies in R_{5,2},
# so whichever R_5 member is picked, one literal edge below it fails.
BROKEN_EDGES = {5: set(), 4: {("R_5", "S_6")}}


@pytest.mark.parametrize("nu", [4, 5])
def test_chosen_representatives_follow_literal_edges(nu):
    case, _, table = pipeline(nu)
    comps = collapse_orbits(table, case)
    choice = choose_representatives(comps)
    names = {c.name for c in choice.components}
    broken = set()
    for ed in hasse(list(choice.components)):
        if ed.quotient_only or not {ed.upper, ed.lower} <= names:
            continue
        if not choice.of(ed.lower).stratum.contained_in(choice.of(ed.upper).stratum):
            broken.add((ed.upper, ed.lower))
    assert broken == BROKEN_EDGES[nu]


def test_quintic_embedded_groups():
    gens = embedded_automorphism_groups(builtin_config(5))
    assert [g.as_tuple() for g in gens["Q"]] == [(0, 0, 0, 2)]
    assert [g.as_tuple() for g in gens["P"]] == [(0, 0, 0, 1)]
    assert [g.as_tuple() for g in gens["H"]] == [(0, 0, 1, 0)]


def test_subcomponents_of_the_dihedral_family():
    case = builtin_config(4)
    assert "S_7" in nonabelian_families(case)
    rep = subcomponent_automorphisms(case, "S_7")
    assert (rep.group_label.order, rep.group_label.index) == (8, 3)
    assert [(name, (lab.order, lab.index)) for name, lab in rep.rows] == [
        ("(affmod,(0,0,0,0))", (8, 3)),
        ("(R_1,(2,2,0,0))", (8, 3)),
        ("(W,(0,0,0,1))", (4, 2)),
        ("(R_4,(2,2,0,1))", (4, 2)),
        ("(R_{2,3},(0,2,0,0))", (4, 2)),
        ("(S_5,(2,0,0,0))", (4, 2)),
        ("(R_5,(0,2,0,1))", (4, 1)),
        ("(R_5,(2,0,0,1))", (4, 1)),
    ]
