import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abacal.lawcheck import random_morphism, random_poly
from abacal.machine import EqConfig, Halted, OutOfFuel, evaluate, sample_states, semantic_eq, state
from abacal.recfun import CORPUS, Value, compile_recfun, copy, discard, discard_at, move, oracle_eval
from abacal.structural import copair, dagger, id_poly, numeral, tensor_all
from abacal.term import Comp, IdMono, infer_type


def halted_at(out):
    return out.state if isinstance(out, Halted) else out


CFG = EqConfig(max_counter=4, samples=80, fuel=5_000)


@given(st.integers(0, 2**32))
def test_dagger_unfolds_once(seed):
    rng = random.Random(seed)
    a = random_poly(rng, 1, 2)
    x = random_poly(rng, 1, 2)
    f = random_morphism(rng, a, x + a, grow=False)
    d = dagger(f)
    assert semantic_eq(d, Comp(f, copair(id_poly(x), d)), CFG)


@given(st.integers(0, 2**32))
def test_evaluation_is_functorial(seed):
    rng = random.Random(seed)
    p, q, r = (random_poly(rng, 1, 2) for _ in range(3))
    f, g = random_morphism(rng, p, q), random_morphism(rng, q, r)
    for s in sample_states(p, 4, 10, rng):
        mid = evaluate(f, s, 5_000)
        if not isinstance(mid, Halted):
            continue
        end = evaluate(g, mid.state, 5_000)
        if isinstance(end, Halted):
            whole = evaluate(Comp(f, g), s, 10_000)
            assert isinstance(whole, Halted) and whole.state == end.state
        assert halted_at(evaluate(id_poly(q), mid.state, 1)) == mid.state


@given(st.integers(0, 2**32))
def test_more_fuel_never_changes_a_result(seed):
    rng = random.Random(seed)
    p, q = random_poly(rng, 1, 2), random_poly(rng, 1, 2)
    f = random_morphism(rng, p, q)
    for s in sample_states(p, 4, 10, rng):
        out = evaluate(f, s, 3_000)
        assert evaluate(f, s, 3_000) == out
        if isinstance(out, Halted):
            for fuel in (out.steps, out.steps + 1, 6_000):
                assert evaluate(f, s, max(fuel, 1)) == out
        else:
            assert isinstance(out, OutOfFuel)


def test_copy_move_discard_identities():
    cfg = EqConfig(max_counter=20)
    doubling = Comp(copy(), move())
    for n in range(21):
        assert halted_at(evaluate(copy(), state(0, n), 10_000)) == state(0, n, n)
        assert halted_at(evaluate(doubling, state(0, n), 10_000)) == state(0, 2 * n)
    assert semantic_eq(Comp(copy(), discard_at(1, 2)), IdMono(1), cfg)
    assert semantic_eq(Comp(copy(), discard_at(0, 2)), IdMono(1), cfg)
    assert semantic_eq(Comp(numeral(3), discard()), IdMono(0), cfg)


@pytest.mark.parametrize(
    "name, bound", [("add", 4), ("mult", 3), ("pred", 6), ("monus", 4), ("const3", 4), ("square_plus", 3)]
)
def test_numeral_inputs_give_numeral_outputs(name, bound):
    e = CORPUS[name]
    term = compile_recfun(e)
    n = infer_type(term).dom[0]
    for ks in itertools.product(range(bound + 1), repeat=n):
        want = oracle_eval(e, ks, 10**6)
        assert isinstance(want, Value)
        lhs = Comp(tensor_all([numeral(k) for k in ks]), term)
        assert halted_at(evaluate(lhs, state(0), 10**6)) == state(0, want.value)
        assert semantic_eq(lhs, numeral(want.value), EqConfig(fuel=10**6))

