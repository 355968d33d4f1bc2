import dataclasses
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abacal.lawcheck import (
    FAMILIES,
    POOL,
    LawConfig,
    LawInstance,
    check_instance,
    check_laws,
    enumerate_axioms,
    random_morphism,
    random_poly,
    selected,
)
from abacal.machine import evaluate, sample_states, semantic_eq
from abacal.poly import poly
from abacal.structural import id_poly, lwhisk, rwhisk
from abacal.term import Comp, MorphismType, Pred, Succ, Sum, infer_type

REQUIRED = (
    [f"S{i}" for i in range(1, 17)]
    + [f"N{i}" for i in range(1, 12)]
    + [f"TR{i}" for i in range(1, 7)]
    + [f"RS{i}" for i in range(1, 15)]
    + ["UNIF", "A8"]
)
GROUP_SIZES = {"A2": 10, "A3": 16, "A4": 9, "A5": 3, "A6": 5, "A7": 4}


def test_every_listed_law_has_a_family():
    assert set(REQUIRED) <= set(FAMILIES)
    for group, parts in GROUP_SIZES.items():
        assert sum(selected(f, (group,)) for f in FAMILIES) == parts
    assert len(FAMILIES) == len(set(FAMILIES))


def test_family_filter():
    assert selected("A3.iv", ("A3",))
    assert not selected("A3.iv", ("A",))
    assert selected("N1", ("N1",)) and not selected("N10", ("N1",))
    assert selected("S4", None)
    assert not selected("S4", ())


def test_empty_filter_gives_empty_report():
    report = check_laws(LawConfig(families=()))
    assert report.results == [] and not report.failures
    assert "total: 0 instances" in report.to_text()


def test_instances_are_well_typed_pairs():
    for inst in enumerate_axioms(LawConfig(instances=3)):
        assert infer_type(inst.lhs) == infer_type(inst.rhs), inst.name
        if inst.premise is not None:
            a, b = inst.premise
            assert infer_type(a) == infer_type(b)


def test_counter_laws_cover_all_bindings():
    n1 = enumerate_axioms(LawConfig(families=("N1",)))
    assert [i.binding for i in n1][:2] == ["U=0 V=0", "U=0 V=1"]
    assert len(n1) == 9
    assert len(enumerate_axioms(LawConfig(families=("N7",)))) == 27


def test_default_config_meets_minimums():
    cfg = LawConfig()
    assert (cfg.samples, cfg.fuel, cfg.max_counter) == (200, 10_000, 5)
    assert cfg.instances >= 8


def test_enumeration_is_deterministic():
    cfg = LawConfig(seed=7, instances=4, families=("S", "A3"))
    a = [(i.name, i.binding, i.lhs) for i in enumerate_axioms(cfg)]
    b = [(i.name, i.binding, i.lhs) for i in enumerate_axioms(cfg)]
    assert a == b


def test_n1_holds_with_few_samples():
    report = check_laws(LawConfig(families=("N1",), samples=50))
    assert not report.failures and len(report.results) == 9


def test_n3_mutation_is_caught():
    inst = enumerate_axioms(LawConfig(families=("N3",)))[4]
    extra = inst.lhs.g  # the second succ of the commuted pair
    bad = dataclasses.replace(inst, lhs=Comp(inst.lhs, extra))
    res = check_instance(bad)
    assert not res.ok and res.witness is not None
    assert res.lhs != res.rhs


def test_s6_swaps_twice():
    inst = enumerate_axioms(LawConfig(families=("S6",), instances=1))[0]
    ty = infer_type(inst.rhs)
    assert inst.rhs == id_poly(ty.dom)


def test_interchange_example():
    f, g = Succ(0, 0), Pred(0, 0)
    p = q = poly(1)
    r, s = poly(1), poly(0, 1)
    lhs = Comp(rwhisk(f, r), lwhisk(q, g))
    rhs = Comp(lwhisk(p, g), rwhisk(f, s))
    assert infer_type(lhs) == MorphismType(p * r, q * s)
    assert semantic_eq(lhs, rhs)


def test_uniformity_premise_is_checked():
    results = check_laws(LawConfig(families=("UNIF",), instances=4)).results
    assert all(r.premise_ok is True for r in results)


def test_broken_premise_is_reported():
    inst = enumerate_axioms(LawConfig(families=("UNIF",), instances=1))[0]
    a, _ = inst.premise
    assert check_instance(dataclasses.replace(inst, premise=(a, a))).ok
    twice = Comp(Succ(0, 0), Succ(0, 0))
    res = check_instance(LawInstance("X#0", "X", Succ(0, 0), Succ(0, 0), "", (Succ(0, 0), twice)))
    assert res.premise_ok is False and not res.ok


def test_mismatched_sides_rejected():
    with pytest.raises(TypeError):
        LawInstance("x", "x", Succ(0, 0), Succ(0, 1), "")


def test_report_formats():
    cfg = LawConfig(families=("S1", "N2"), instances=3)
    report = check_laws(cfg)
    text = report.to_text()
    assert text.splitlines()[0].startswith("laws seed=0 samples=200")
    assert text.endswith("failures\n")
    doc = json.loads(report.to_json())
    assert doc["families"]["N2"]["instances"] == 9
    assert doc["failures"] == [] and doc["total"] == 12


def test_parallel_matches_serial():
    cfg = LawConfig(families=("S", "TR"), instances=3, samples=40)
    assert check_laws(cfg).to_text() == check_laws(dataclasses.replace(cfg, jobs=2)).to_text()


def test_seed_changes_bindings():
    a = enumerate_axioms(LawConfig(seed=1, instances=6, families=("A3.i",)))
    b = enumerate_axioms(LawConfig(seed=2, instances=6, families=("A3.i",)))
    assert [i.lhs for i in a] != [i.lhs for i in b]


def test_pool_terms_are_well_typed():
    assert len(POOL) >= 16
    for t in POOL.values():
        infer_type(t)


@given(st.integers(0, 10**6))
def test_random_morphism_has_requested_type(seed):
    rng = random.Random(seed)
    p, q = random_poly(rng), random_poly(rng)
    f = random_morphism(rng, p, q)
    assert infer_type(f) == MorphismType(p, q)


@given(st.integers(0, 10**6))
def test_non_growing_morphisms_never_increase_total(seed):
    rng = random.Random(seed)
    p, q = random_poly(rng, 1, 2), random_poly(rng, 1, 2)
    f = random_morphism(rng, p, q, grow=False)
    for s in sample_states(p, 4, 30, rng):
        out = evaluate(f, s, 5000)
        if hasattr(out, "state"):
            assert sum(out.state.counters) <= sum(s.counters)


def test_detection_power_against_random_perturbation():
    # every family whose codomain starts with a counter must notice a stray succ there
    caught = tried = 0
    for inst in enumerate_axioms(LawConfig(instances=1)):
        ty = infer_type(inst.rhs)
        if not ty.cod or ty.cod[0] == 0:
            continue
        bump = Succ(0, ty.cod[0] - 1)
        if len(ty.cod) > 1:
            bump = Sum(bump, id_poly(ty.cod[1:]))
        tried += 1
        bad = dataclasses.replace(inst, rhs=Comp(inst.rhs, bump))
        caught += not check_instance(bad, LawConfig(samples=60)).ok
    assert tried > 20
    # a few families only reach other summands or diverge on sampled states
    assert caught >= 0.9 * tried, (caught, tried)
