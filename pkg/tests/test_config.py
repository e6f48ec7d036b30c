import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from godeaux.config import (
    ConfigError,
    LinearForm,
    MultiplierInconsistent,
    builtin_config,
    check_config,
    compute_equations,
    param_action,
    param_permutation,
    parse_monomial,
    twist_for_unit,
)
from godeaux.groups import GroupElement, ambient_group, embed, torsion_subgroup


@pytest.mark.parametrize("nu", [4, 5])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_param_action_matches_hand_monomials(nu, data):
    case = builtin_config(nu)
    e = data.draw(st.sampled_from(ambient_group(nu).elements))
    pi, scale = param_action(case, e)
    expected = oracles.action(nu, e.as_tuple())
    assert {s: (pi[s], scale[s]) for s in case.mod_pars} == expected


@pytest.mark.parametrize("nu,include_h", [(3, True), (3, False), (4, True), (5, True)])
def test_torsion_acts_trivially(nu, include_h):
    case = builtin_config(nu, include_h)
    for g in torsion_subgroup(nu):
        pi, scale = param_action(case, g)
        assert all(pi[s] == s and scale[s] == 0 for s in case.mod_pars)


def test_tampered_multiplier_is_caught():
    case = builtin_config(4)
    broken = dataclasses.replace(case, multipliers=(("q0", LinearForm()), ("q2", LinearForm())))
    with pytest.raises(MultiplierInconsistent):
        check_config(broken)


def test_wrong_degree_is_caught():
    case = builtin_config(5)
    rel = case.relations[0]
    term = dataclasses.replace(rel.terms[0], mono=(4, 0, 0, 0))
    broken = dataclasses.replace(case, relations=(dataclasses.replace(rel, terms=(term,) + rel.terms[1:]),))
    with pytest.raises(ConfigError):
        check_config(broken)


def test_unsupported_case():
    with pytest.raises(ValueError):
        builtin_config(6)


def test_digest_is_stable_and_sensitive():
    assert builtin_config(3).digest() == builtin_config(3).digest()
    assert builtin_config(3).digest() != builtin_config(3, include_h=False).digest()
    assert len({builtin_config(n).digest() for n in (3, 4, 5)}) == 3


def test_parse_monomial():
    assert parse_monomial("x1^2 x3", ("x1", "x2", "x3")) == (2, 0, 1)
    with pytest.raises(ValueError):
        parse_monomial("z^2", ("x1",))


def test_twist_units():
    case = builtin_config(5)
    assert [twist_for_unit(case, u) for u in (1, 2, 4, 3)] == [0, 1, 2, 3]
    # multiplication by 4 reverses the coefficient pairs b1<->b4, b2<->b3
    pi = param_permutation(case, twist_for_unit(case, 4))
    assert pi["b1"] == "b4" and pi["b2"] == "b3" and pi["c1"] == "c4"


def test_generated_equation_provenance():
    case = builtin_config(5)
    eqs = compute_equations(case)
    h = twist_for_unit(case, 4)
    (eq,) = eqs[(h, ("b4", "b1"))]
    # -n_{1,4} = i2 + 3 i3 + i4, written as lhs = 0
    assert {k: v % 5 for k, v in eq.normalized().lhs.mapping.items()} == {"i2": 1, "i3": 3, "i4": 1, "n_1_4": 1}


# The degree-two coordinates of the quartic case, in the order
# x1^2, x2^2, x3^2, x2 x3, x1 x3, x1 x2, y1, y3, carry the diagonal
# (2 i1, 0, 2 i3, i3, i1 + i3, i1, -j1, j1) and the swap (1 3)(4 6)(7 8).
DEG2 = [(2, 0, 0, 0, 0), (0, 2, 0, 0, 0), (0, 0, 2, 0, 0), (0, 1, 1, 0, 0), (1, 0, 1, 0, 0), (1, 1, 0, 0, 0),
        (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]
SWAP = [2, 1, 0, 5, 4, 3, 7, 6]


def test_degree_two_image_of_the_quartic_case():
    for e in ambient_group(4).elements:
        i1, i3, j1 = e.exps
        m = embed(e)
        got = [m.monomial_image(mono) for mono in DEG2]
        expected_diag = [2 * i1, 0, 2 * i3, i3, i1 + i3, i1, -j1, j1]
        for k, (mono_img, xi) in enumerate(got):
            target = SWAP[k] if e.twist else k
            assert mono_img == DEG2[target]
            assert xi % 4 == expected_diag[k] % 4


def test_printed_torsion_generator_lies_in_g():
    assert GroupElement.from_tuple(4, (1, 3, 1, 0)) in torsion_subgroup(4)
