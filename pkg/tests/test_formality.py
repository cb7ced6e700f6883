"""Twist derivation, twisted total model, and the formality criterion."""

import random
import re
from fractions import Fraction

import pytest

from conftest import random_unimodular_spec
from solvform import (
    InputError,
    build_minimal_model,
    build_twisted_model,
    formality_from_twisted,
    k_formality,
    nilpotent_log,
    total_model_dump,
)
from solvform.exterior import derivation_apply
from solvform.formality import degree_one_restatement


def _theta_by_rho(tm):
    """Map rho-value string of each closed degree-1 generator to its twist string."""
    model = tm.model
    return {
        str(g.rho): model.poly_str(tm.theta[g.gid])
        for g in model.gens
        if g.closed and g.degree == 1
    }


def test_s6_twist_chain(s6):
    tm = build_twisted_model(s6, build_minimal_model(s6, 2))
    chain = _theta_by_rho(tm)
    # rho a1 -> the generator realizing a2 -> the one realizing a3 -> 0
    names = {str(g.rho): g.name for g in tm.model.gens}
    assert chain["a1"] == names["a2"]
    assert chain["a2"] == names["a3"]
    assert chain["a3"] == chain["a4"] == chain["a5"] == "0"


def test_s6_total_model_dump(s6):
    tm = build_twisted_model(s6, build_minimal_model(s6, 2))
    dump = total_model_dump(tm)
    assert dump.splitlines() == [
        "total model with twist generator A, degree bound 2",
        "D(A) = 0, tau(A) = a6",
        "D(g1) = 0, tau(g1) = a3",
        "D(g2) = 0, tau(g2) = a4",
        "D(g3) = 0, tau(g3) = a5",
        "D(g4) = g1*A, tau(g4) = a2",
        "D(g5) = g4*A, tau(g5) = a1",
    ]


def test_s8_degree_one_twist(s8):
    tm = build_twisted_model(s8, build_minimal_model(s8, 1))
    dump = total_model_dump(tm)
    assert "D(g1) = 0" in dump
    assert "D(g2) = g1*A" in dump
    assert "D(g3) = g2*A" in dump


def test_torus_twist_vanishes(torus3, torus4):
    for spec in (torus3, torus4):
        tm = build_twisted_model(spec, build_minimal_model(spec, 3))
        assert all(not poly for poly in tm.theta.values())
        verdict = formality_from_twisted(tm, 3)
        assert verdict.passed
        assert "formal through degree 3" in verdict.summary()


def test_formality_verdicts(s6, s8, heisenberg3):
    for spec in (s6, s8, heisenberg3):
        verdict = k_formality(spec, 1)
        assert not verdict.passed
        assert verdict.first_fail_degree == 1
        status = verdict.statuses[0]
        assert status.witness is not None and status.witness_twist is not None


def test_witness_is_closed_with_nonzero_twist(s6, s8):
    for spec in (s6, s8):
        model = build_minimal_model(spec, 2)
        tm = build_twisted_model(spec, model)
        verdict = formality_from_twisted(tm, 2)
        for status in verdict.statuses:
            if status.passed:
                continue
            assert not model.d_poly(status.witness)
            assert tm.theta_poly(status.witness) == status.witness_twist
            assert status.witness_twist


def test_degree_one_restatement_agrees(s6, s8, torus3, torus4, heisenberg3):
    rng = random.Random(71)
    specs = [s6, s8, torus3, torus4, heisenberg3]
    specs += [random_unimodular_spec(rng, n_max=5) for _ in range(10)]
    for spec in specs:
        verdict = k_formality(spec, 1)
        assert verdict.statuses[0].passed == degree_one_restatement(spec)


def test_twist_commutes_with_differential_everywhere(s6, s8, heisenberg3):
    rng = random.Random(72)
    specs = [s6, s8, heisenberg3] + [random_unimodular_spec(rng, n_max=5) for _ in range(10)]
    cases = 0
    for spec in specs:
        model = build_minimal_model(spec, 3)
        tm = build_twisted_model(spec, model)
        for g in model.gens:
            lhs = tm.theta_poly(g.differential)
            rhs = model.d_poly(tm.theta.get(g.gid, {}))
            assert model.p_add(lhs, model.p_scale(-1, rhs)) == {}
            cases += 1
        for _ in range(8):
            k = rng.randint(1, 3)
            monos = model.monomials(k)
            if not monos:
                continue
            poly = {m: Fraction(rng.randint(-2, 2)) for m in rng.sample(monos, min(3, len(monos)))}
            lhs = tm.theta_poly(model.d_poly(poly))
            rhs = model.d_poly(tm.theta_poly(poly))
            assert model.p_add(lhs, model.p_scale(-1, rhs)) == {}
            cases += 1
    assert cases >= 100


def test_twist_realizes_shift_on_closed_generators(s6, s8):
    for spec in (s6, s8):
        model = build_minimal_model(spec, 3)
        tm = build_twisted_model(spec, model)
        shift = nilpotent_log(spec)
        for g in model.gens:
            if not g.closed:
                continue
            expected = derivation_apply(shift, g.rho)
            if tm.theta[g.gid]:
                assert model.rho_poly(tm.theta[g.gid]) == expected
            else:
                assert expected.is_zero()


def test_twist_is_nilpotent_per_degree(s6, s8):
    for spec in (s6, s8):
        model = build_minimal_model(spec, 3)
        tm = build_twisted_model(spec, model)
        for k in range(1, 4):
            for mono in model.monomials(k):
                poly = {mono: Fraction(1)}
                for _ in range(len(model.monomials(k)) + 1):
                    poly = tm.theta_poly(poly)
                    if not poly:
                        break
                assert poly == {}


def test_products_of_closed_elements_stay_closed_when_formal(torus4):
    model = build_minimal_model(torus4, 3)
    tm = build_twisted_model(torus4, model)
    assert formality_from_twisted(tm, 3).passed
    gens = [g for g in model.gens if g.closed]
    for a in gens:
        for b in gens:
            prod = tm.model.p_mul({(a.gid,): Fraction(1)}, {(b.gid,): Fraction(1)})
            assert not model.d_poly(prod)
            assert not tm.theta_poly(prod)


def test_higher_degree_twist_on_closed_generators():
    # two symbolic Jordan blocks of opposite eigenvalue: no invariant
    # 1-forms, four non-product 2-form classes carrying a nonzero twist;
    # formal in degree 1 but not in degree 2
    from solvform import parse_spec

    doc = """{"n": 4, "symbols": ["b"],
              "blocks": [{"kind": "real", "size": 2, "re": "b"},
                         {"kind": "real", "size": 2, "re": "-b"}]}"""
    spec = parse_spec(doc)
    model = build_minimal_model(spec, 2)
    assert model.generator_counts()[2] == (4, 0)
    tm = build_twisted_model(spec, model)
    assert any(tm.theta[g.gid] for g in model.gens)
    for g in model.gens:
        for mono in tm.theta.get(g.gid, {}):
            assert all(other < g.gid for other in mono)  # strictly triangular
    verdict = formality_from_twisted(tm, 2)
    assert verdict.statuses[0].passed  # no closed degree-1 elements at all
    assert not verdict.statuses[1].passed
    assert verdict.first_fail_degree == 2


def test_paired_shift_in_complex_jordan_block():
    from solvform import parse_spec
    from solvform.monodromy import nilpotent_submodule, nilpotent_submodule_oracle, spans_match

    doc = '{"n": 4, "blocks": [{"kind": "complex", "size": 2, "re": "0", "im_resonant": "1"}]}'
    spec = parse_spec(doc)
    shift = nilpotent_log(spec)
    assert str(shift.image_of(1)) == "a3" and str(shift.image_of(2)) == "a4"
    assert shift.image_of(3).is_zero() and shift.image_of(4).is_zero()
    for k in range(5):
        assert spans_match(nilpotent_submodule(spec, k), nilpotent_submodule_oracle(spec, k))
    verdict = k_formality(spec, 1)
    assert not verdict.passed


def test_formality_bound_errors(s6):
    model = build_minimal_model(s6, 2)
    tm = build_twisted_model(s6, model)
    with pytest.raises(InputError):
        formality_from_twisted(tm, 3)


def test_verdict_summary_carries_bound(s8):
    verdict = k_formality(s8, 1, d_max=2)
    assert re.search(r"model bound 2", verdict.summary())
    assert re.search(r"not 1-formal", verdict.summary())
