from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitclosure import catalog
from orbitclosure.groebner import ComputeBudget, is_zero
from orbitclosure.orbit import (
    ClosureCache,
    DimensionMismatch,
    EliminationPlan,
    Form,
    GroupAnsatz,
    Outcome,
    PlanMismatch,
    build_graph_ideal,
    closure_ideal,
    coefficient_names,
    in_orbit,
    in_orbit_closure,
    sub_elim_sub,
)
from orbitclosure.invariants import (
    dimension_pretest,
    singular_invariants,
    stabilizer_orbit_dimension,
    tangent_orbit_dimension,
)

from conftest import forms, invertible_matrices

BINARY_SOURCE = Form.parse("x1^3 + x1*x2^2", 2)
BINARY_TARGET = Form.parse("x1^2*x2", 2)


# ---------------------------------------------------------------- forms and graph ideals


def test_coefficient_names_follow_monomial_order():
    names = [n for n, _ in coefficient_names(3, 3)]
    assert names[:4] == ["c300", "c210", "c120", "c030"]
    assert len(names) == 10


def test_form_validation():
    with pytest.raises(ValueError):
        Form.parse("x1^2 + x2", 2)
    with pytest.raises(ValueError):
        Form.parse("0", 2)


def test_graph_ideal_generator_count_binary_cubic():
    graph = build_graph_ideal(BINARY_SOURCE)
    assert len(graph) == 4
    assert set(graph.ring.variables) == {"c30", "c21", "c12", "c03", "g11", "g12", "g21", "g22"}


def test_partial_ansatz_reduces_free_entries():
    plan = catalog.plan_for("7B", "6C").plan
    assert len(GroupAnsatz.full(4).free_names()) == 16
    assert len(plan.ansatz.free_names()) == 12
    assert plan.ansatz.to_json() == GroupAnsatz.from_json(plan.ansatz.to_json()).to_json()


def test_plan_check_rejects_wrong_values():
    w = catalog.lookup("7B").form
    plan = catalog.plan_for("7B", "6C").plan
    plan.check(w)
    bad = EliminationPlan(dict(plan.pre), plan.ansatz, dict(plan.post))
    key = next(iter(bad.pre))
    bad.pre[key] = Fraction(99)
    with pytest.raises(PlanMismatch):
        bad.check(w)


def test_shape_mismatch_is_an_error():
    with pytest.raises(DimensionMismatch):
        in_orbit_closure(BINARY_SOURCE, catalog.lookup("1A").form)


# ---------------------------------------------------------------- orbit membership


def test_reflexive_in_orbit_on_small_forms():
    for label in ("1A", "2A", "3A", "4B", "4C", "4D", "5A", "6B", "7A"):
        f = catalog.lookup(label).form
        assert in_orbit(f, f).outcome is Outcome.IN_ORBIT, label


@pytest.mark.nightly
@pytest.mark.parametrize("label", ["4A", "6A", "6C", "7B"])
def test_reflexive_in_orbit_on_large_forms(label):
    f = catalog.lookup(label).form
    assert in_orbit(f, f, budget=ComputeBudget(max_wall_seconds=1800)).outcome is Outcome.IN_ORBIT


def test_orbit_non_membership_of_rank_three_form():
    v = Form.parse("x1*x3*x4 + x3^3", 4)
    w = Form.parse("x1^3 + x2^3 + x3^3", 4)
    assert in_orbit(v, w).outcome is Outcome.NOT_IN_ORBIT


def test_strict_mode_is_the_determinant_one_slice():
    v = Form.parse("x1^2*x2", 2)
    # diag(2, 1/2) has det 1 and sends x1^2*x2 to 2*x1^2*x2
    assert in_orbit(v, v.scaled(2), "strict").outcome is Outcome.IN_ORBIT
    # the stabilizer of x1^3 + x2^3 is finite, so reaching 2*u forces det = 2^(2/3) * (root of unity)
    u = Form.parse("x1^3 + x2^3", 2)
    assert in_orbit(u, u.scaled(2), "strict").outcome is Outcome.NOT_IN_ORBIT
    assert in_orbit(u, u.scaled(2), "projective").outcome is Outcome.IN_ORBIT


@settings(max_examples=10)
@given(forms(2, 3, max_terms=3), invertible_matrices(2, -1, 2), st.sampled_from([Fraction(5), Fraction(-1, 3)]))
def test_projective_mode_ignores_target_scaling(v, g, scale):
    w = Form(v.compose(g))
    a = in_orbit(v, w, "projective").outcome
    b = in_orbit(v, w.scaled(scale), "projective").outcome
    assert a is b is Outcome.IN_ORBIT


# ---------------------------------------------------------------- closures


def test_binary_cubic_closure_pair():
    assert in_orbit_closure(BINARY_SOURCE, BINARY_TARGET).outcome is Outcome.IN_CLOSURE
    assert in_orbit_closure(BINARY_TARGET, BINARY_SOURCE).outcome is Outcome.NOT_IN_CLOSURE


def test_closure_of_generic_binary_cubic_is_everything():
    assert is_zero(closure_ideal(BINARY_SOURCE).ideal)


@pytest.mark.parametrize("source", ["x2^2*x3", "x2*x3^2"])
def test_line_times_square_does_not_degenerate_to_rank_three_form(source):
    """Ternary restriction: x1*x3*x4 + x3^3 is not in the closure of a binary product (x1,x3,x4 -> x1,x2,x3)."""
    v = Form.parse(source, 3)
    w = Form.parse("x1*x2*x3 + x2^3", 3)
    assert in_orbit_closure(v, w).outcome is Outcome.NOT_IN_CLOSURE


def test_cache_round_trip_gives_identical_verdicts(tmp_path):
    cache = ClosureCache(str(tmp_path))
    assert cache.entries() == []
    cold = in_orbit_closure(BINARY_TARGET, BINARY_SOURCE, cache=cache)
    assert len(cache.entries()) == 1
    assert cache.entries()[0]["key"] == BINARY_TARGET.content_hash()
    warm = in_orbit_closure(BINARY_TARGET, BINARY_SOURCE, cache=cache)
    assert cold.outcome is warm.outcome
    assert (cold.stats["cache"], warm.stats["cache"]) == ("miss", "hit")
    first = closure_ideal(BINARY_TARGET, cache=cache).ideal.text_lines()
    assert first == closure_ideal(BINARY_TARGET).ideal.text_lines()
    assert cache.purge() == 1
    assert cache.entries() == []


def test_budget_exceeded_is_not_a_negative_verdict():
    v, w = catalog.lookup("6C").form, catalog.lookup("7B").form
    verdict = in_orbit_closure(v, w, ComputeBudget(max_pairs=5))
    assert verdict.outcome is Outcome.BUDGET_EXCEEDED
    assert verdict.contained is None


# ---------------------------------------------------------------- sub-elim-sub


def test_ternary_plans_with_everything_substituted_first():
    for row, col in [("2A", "4C"), ("2A", "4D"), ("2A", "5A"), ("2A", "6B"), ("2A", "7A")]:
        rec = catalog.plan_for(row, col)
        v, w = rec.forms()
        assert sub_elim_sub(v, w, rec.plan).outcome is Outcome.CONTAINMENT_PROVEN, (row, col)


def test_sub_elim_sub_never_says_no():
    # target outside the closure: the schedule can only fail to certify
    w = Form.parse("x1^3 + x1*x2^2", 2)
    v = Form.parse("x1^2*x2", 2)
    plan = EliminationPlan.from_target(w, ["c30"])
    verdict = sub_elim_sub(v, w, plan)
    assert verdict.outcome is Outcome.INCONCLUSIVE
    assert verdict.contained is None


@settings(max_examples=15)
@given(forms(2, 3, max_terms=3), forms(2, 3, max_terms=2),
       st.lists(st.sampled_from(["c30", "c21", "c12", "c03"]), unique=True))
def test_certificate_implies_closure_membership(v, w, pre):
    plan = EliminationPlan.from_target(w, pre)
    if sub_elim_sub(v, w, plan).outcome is Outcome.CONTAINMENT_PROVEN:
        assert in_orbit_closure(v, w).outcome is Outcome.IN_CLOSURE


# ---------------------------------------------------------------- invariants


def test_tangent_dimensions_match_registry():
    for nf in catalog.normal_forms():
        assert tangent_orbit_dimension(nf.form) == nf.orbit_dim, nf.label


@settings(max_examples=15)
@given(forms(3, 3), invertible_matrices(3, -1, 1))
def test_orbit_invariants_are_substitution_invariant(f, g):
    moved = Form(f.compose(g))
    assert tangent_orbit_dimension(moved) == tangent_orbit_dimension(f)
    assert singular_invariants(moved) == singular_invariants(f)


@pytest.mark.parametrize("label", ["1A", "2A", "3A", "4B", "4C", "4D", "5A"])
def test_stabilizer_dimension_small_forms(label):
    nf = catalog.lookup(label)
    assert stabilizer_orbit_dimension(nf.form) == nf.orbit_dim


def test_dimension_pretest():
    assert dimension_pretest(10, 10).outcome is Outcome.NOT_IN_CLOSURE
    assert dimension_pretest(8, 10).outcome is Outcome.NOT_IN_CLOSURE
    assert dimension_pretest(10, 8) is None
    assert dimension_pretest(10, 10, same_orbit=True) is None


def test_singular_invariants_match_locus_dimension():
    for nf in catalog.normal_forms():
        assert singular_invariants(nf.form).dim == nf.singular_dim, nf.label
