import pytest

from doublepoint.classifier import (
    alpha,
    candidate_submodule,
    classify,
    hurewicz_profile,
    is_power_of_two,
    standard_height2_classes,
)
from doublepoint.dpoint import xi_push
from doublepoint.gf2 import membership
from doublepoint.qmo import class_coords, h2_project, primitive_submodule, qmo_basis


def test_alpha():
    assert [alpha(m) for m in (1, 2, 3, 4, 7, 9)] == [1, 1, 2, 1, 3, 2]
    assert is_power_of_two(8) and not is_power_of_two(12)


def _spans_equal(k, classes_a, classes_b):
    basis = qmo_basis(k, 2 * k + 2)
    va = [class_coords(c, basis) for c in classes_a]
    vb = [class_coords(c, basis) for c in classes_b]
    return all(membership(v, va) for v in vb) and all(membership(v, vb) for v in va)


def test_candidates_even_k():
    for k in range(2, 13, 2):
        names = standard_height2_classes(k)
        cand = candidate_submodule(k)
        assert _spans_equal(k, list(cand.basis), [names["a"] + names["b"]])
        assert cand.excluded is None


def test_candidates_k_1_mod_4():
    for k in (5, 9, 13):
        names = standard_height2_classes(k)
        cand = candidate_submodule(k)
        assert _spans_equal(
            k, list(cand.basis), [names["a"] + names["b"], names["c"]]
        )


def test_candidates_k_3_mod_4():
    for k in (3, 7, 11, 15):
        names = standard_height2_classes(k)
        cand = candidate_submodule(k)
        assert _spans_equal(
            k,
            list(cand.basis),
            [names["a"] + names["b"], names["a"] + names["c"]],
        )
        # The flagged candidate is the primitive square class, and the
        # surviving odd-image candidate appears verbatim in the basis.
        assert cand.excluded == names["b"] + names["c"]
        assert cand.suspension_chain is not None and cand.suspension_chain.ok
        assert names["a"] + names["c"] in cand.basis
        marked = [e for e in cand.span_analysis if e.excluded_by_chain]
        assert len(marked) == 1 and marked[0].primitive


def test_candidate_k1():
    cand = candidate_submodule(1)
    assert [c.render() for c in cand.basis] == ["Q^3(e[1])"]


def test_candidates_inside_projected_primitives():
    for k in range(1, 10):
        basis = qmo_basis(k, 2 * k + 2)
        proj = [
            class_coords(h2_project(p), basis)
            for p in primitive_submodule(k, 2 * k + 2)
        ]
        for c in candidate_submodule(k).basis:
            assert membership(class_coords(c, basis), proj)


def test_even_k_images_vanish():
    for k in range(2, 13, 2):
        for c in candidate_submodule(k).basis:
            assert xi_push(c).is_zero


def test_higher_constraints_do_not_shrink():
    for k in range(1, 14):
        assert not candidate_submodule(k).higher_constraints_shrink


def test_classify_verdicts():
    assert classify(2).forced_parity == "even"
    assert not classify(2).odd_achievable
    assert classify(5).odd_achievable
    assert classify(5).forced_parity == "unconstrained"
    r7 = classify(7)
    assert r7.odd_achievable and r7.forced_parity == "depends-on-M"
    assert r7.criterion == "wbar2*wbar7[M]"
    r11 = classify(11)
    assert not r11.odd_achievable and r11.forced_parity == "even"


def test_classify_fact_logging():
    assert classify(4).existence_facts_used == ()
    assert classify(11).existence_facts_used == ("brown_embedding",)
    assert "dold_realization" in classify(7).existence_facts_used
    assert "sphere_double_points" in classify(9).existence_facts_used


def test_truth_table():
    for k in range(1, 33):
        expected = (k % 4 == 1) or is_power_of_two(k + 1)
        assert classify(k).odd_achievable == expected, k


def test_report_dict_is_stable():
    d1 = classify(7).to_dict()
    d2 = classify(7).to_dict()
    assert d1 == d2
    assert d1["criterion"] == "wbar2*wbar7[M]"


# ---------------------------------------------------------------------------
# Hurewicz profiles


def test_profile_even_k_with_witness():
    p = hurewicz_profile(6, "RP(4)xRP(4)")
    assert p.branch_value == 1
    assert p.cases[0].parity == "even"
    assert "e[1,1,1,1,1,1]*e[1,1,1,1,2,2]" in p.cases[0].formula
    assert "e[1,1,1,1,1,2]*e[1,1,1,1,1,2]" in p.cases[0].formula


def test_profile_even_k_boundary():
    p = hurewicz_profile(6, "boundary")
    assert p.branch_value == 0
    assert p.cases == (type(p.cases[0])("even", "h_S"),)


def test_profile_k7_dold():
    p = hurewicz_profile(7, "Dold(r=3)")
    assert p.branch_value == 1
    (case,) = p.cases
    assert case.parity == "odd"
    assert case.formula == (
        "h_S + e[1,1,1,1,1,1,1]*e[1,1,1,1,1,2,2] + Q^9(e[1,1,1,1,1,1,1])"
    )


def test_profile_k3_boundary():
    p = hurewicz_profile(3, "boundary")
    (case,) = p.cases
    assert case == type(case)("even", "h_S")


def test_profile_k2_triple_points():
    p = hurewicz_profile(2, "RP(2)xRP(2)")
    assert p.branch_value == 1
    (case,) = p.cases
    assert case.formula == "e[3,3] + e[1,1]*e[2,2] + e[1,2]*e[1,2] + e[1,1]*e[1,1]*e[1,1]"
    assert any("triple points" in a for a in p.annotations)


def test_profile_k1_quadruple_points():
    p = hurewicz_profile(1, "boundary")
    parities = {c.parity: c.formula for c in p.cases}
    assert parities["even"] == "0"
    assert parities["odd"] == "Q^3(e[1]) + e[1]*e[1]*e[1]*e[1]"
    assert any("quadruple points" in a for a in p.annotations)


def test_profile_k_1_mod_4_both_cases():
    p = hurewicz_profile(5, "boundary")
    parities = {c.parity for c in p.cases}
    assert parities == {"even", "odd"}


def test_profile_dimension_guard():
    with pytest.raises(ValueError):
        hurewicz_profile(6, "Dold(r=3)")
    with pytest.raises(ValueError):
        hurewicz_profile(4, "RP(4)xRP(4)")
