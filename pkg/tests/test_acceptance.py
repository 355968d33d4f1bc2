"""The eight acceptance criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import itertools
import os
import random
import subprocess
import sys
import time

from abacal.lawcheck import FAMILIES, LawConfig, check_laws, random_morphism, random_poly, random_term
from abacal.machine import (
    EqConfig,
    Halted,
    MachineState,
    OutOfFuel,
    evaluate,
    sample_states,
    semantic_eq,
    state,
)
from abacal.poly import UNIT, Polynomial
from abacal.recfun import CORPUS, Value, compile_recfun, discard_at, move, oracle_eval
from abacal.structural import (
    coalg_unfold,
    copair,
    copair_all,
    delta_l,
    delta_l_inv,
    delta_l_perm,
    id_poly,
    inj,
    iota,
    iota_inv,
    nno_iterate,
    numeral,
    tensor,
)
from abacal.syntax import parse_term, print_term
from abacal.term import Comp, IdMono, Pred, Succ, Sum, Zero, comp, infer_type
from conftest import ACCEPTANCE


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.append((f"[{number}] {title}", ok, detail))
    print(f"{'PASS' if ok else 'FAIL'}  [{number}] {title}  {detail}")
    assert ok, detail


def test_1_law_suite_green():
    cfg = LawConfig()
    start = time.perf_counter()
    rep = check_laws(cfg)
    elapsed = time.perf_counter() - start
    fams = rep.families()
    wanted = (
        [f"S{i}" for i in range(1, 17)]
        + [f"N{i}" for i in range(1, 12)]
        + [f"TR{i}" for i in range(1, 7)]
        + [f"RS{i}" for i in range(1, 15)]
    )
    covered = set(wanted) <= set(fams) and all(
        any(f.startswith(group) for f in fams) for group in ("A2", "A3", "A4", "A5", "A6", "A7", "A8")
    )
    enough = min(len(rs) for rs in fams.values()) >= 8
    defaults = (cfg.samples, cfg.max_counter, cfg.fuel) == (200, 5, 10_000)
    ok = not rep.failures and covered and enough and defaults and elapsed < 120 and len(fams) == len(FAMILIES)
    report(
        1,
        "law suite green",
        ok,
        f"{len(rep.results)} instances / {len(fams)} families, {len(rep.failures)} failures, {elapsed:.1f}s",
    )


def test_2_move_program():
    bad = []
    for x, y in itertools.product(range(11), repeat=2):
        out = evaluate(move(), state(0, x, y), 1000)
        if not (isinstance(out, Halted) and out.state == state(0, x + y)):
            bad.append((x, y, out))
    report(2, "move program adds", not bad, f"121 inputs, {len(bad)} wrong")


def test_3_iota_isomorphism():
    cfg = EqConfig(max_counter=16)
    a = semantic_eq(Comp(iota(), iota_inv()), id_poly(Polynomial((0, 1))), cfg)
    b = semantic_eq(Comp(iota_inv(), iota()), IdMono(1), cfg)
    ok = bool(a) and bool(b) and a.checked == 18 and b.checked == 17
    report(3, "iota isomorphism", ok, f"{getattr(a, 'checked', a)} + {getattr(b, 'checked', b)} states")


def test_4_numerals_strong():
    values = []
    for n in range(21):
        out = evaluate(numeral(n), state(0), 1000)
        values.append(out.state.counters[0] if isinstance(out, Halted) and out.state.summand == 0 else None)
    exact = values == list(range(21))
    distinct = all(
        not semantic_eq(numeral(i), numeral(j)) for i, j in itertools.combinations(range(21), 2)
    )
    report(4, "numerals exact and distinct", exact and distinct, "n = 0..20, 210 pairs")


def _nno_instance(rng: random.Random):
    b_dom = random_poly(rng, 1, 2)
    a_obj = random_poly(rng, 1, 2)
    b = random_morphism(rng, b_dom, a_obj)
    a = random_morphism(rng, a_obj, a_obj)
    return b_dom, b, a


def _counting_beta(rng: random.Random):
    """``beta : A -> I + A`` that tests one counter per summand and reshuffles on nonzero."""
    obj = Polynomial(tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 2))))
    arms = []
    for u in obj:
        i = rng.randrange(u)
        drop = comp(*(discard_at(0, j) for j in range(u - 1, 0, -1))) if u > 1 else IdMono(0)
        done = Comp(drop, inj(0, UNIT, obj))
        step = Comp(random_morphism(rng, Polynomial((u,)), obj, grow=False), inj(1, UNIT, obj))
        arms.append(Comp(Pred(i, u - 1 - i), copair(done, step)))
    return obj, copair_all(arms)


def _nontrivial_beta(rng: random.Random, cfg: EqConfig):
    # redraw until the unfold halts somewhere with a count of at least 2
    while True:
        obj, beta = _counting_beta(rng)
        h = coalg_unfold(beta)
        for s in sample_states(obj, cfg.max_counter, 50, rng):
            out = evaluate(h, s, cfg.fuel)
            if isinstance(out, Halted) and out.state.counters[0] >= 2:
                return beta, h


def test_5_nno_and_coalgebra_squares():
    cfg = EqConfig(max_counter=5, samples=200, fuel=10_000, seed=5)
    rng = random.Random(2024)
    nno_ok = 0
    for _ in range(8):
        bdom, b, a = _nno_instance(rng)
        h = nno_iterate(b, a)
        # (iota ⊗ 1_B) h = [b, h a]; the right distributor is an identity here
        square = semantic_eq(Comp(tensor(iota(), id_poly(bdom)), h), copair(b, Comp(h, a)), cfg)
        zero = semantic_eq(Comp(tensor(Zero(0, 0), id_poly(bdom)), h), b, cfg)
        succ = semantic_eq(Comp(tensor(Succ(0, 0), id_poly(bdom)), h), Comp(h, a), cfg)
        nno_ok += bool(square) and bool(zero) and bool(succ)
    co_ok = 0
    for _ in range(8):
        beta, h = _nontrivial_beta(rng, cfg)
        unfolded = Comp(Comp(beta, Sum(IdMono(0), h)), iota())
        square = semantic_eq(Comp(h, iota_inv()), Comp(beta, Sum(IdMono(0), h)), cfg)
        co_ok += bool(semantic_eq(h, unfolded, cfg)) and bool(square)
    report(5, "NNO and coalgebra squares", nno_ok == 8 and co_ok == 8, f"NNO {nno_ok}/8, coalgebra {co_ok}/8")


def _agree(name: str, bound: int, fuel: int = 10**6):
    e = CORPUS[name]
    term = compile_recfun(e)
    n = infer_type(term).dom[0]
    bad = []
    for args in itertools.product(range(bound + 1), repeat=n):
        want = oracle_eval(e, args, fuel)
        got = evaluate(term, MachineState(0, args), fuel)
        got = Value(got.state.counters[0]) if isinstance(got, Halted) else got
        if want != got:
            bad.append((args, want, got))
    return bad


def test_6_compiler_differential():
    total_bad = []
    for name, bound in (("add", 8), ("mult", 5), ("pred", 8), ("monus", 8), ("fact", 6)):
        total_bad += _agree(name, bound)
    half = compile_recfun(CORPUS["half"])
    half_ok = True
    for x in range(11):
        got = evaluate(half, state(0, x), 10**6)
        want = oracle_eval(CORPUS["half"], (x,), 10**6)
        if x % 2 == 0:
            half_ok &= isinstance(got, Halted) and got.state == state(0, x // 2)
            half_ok &= want == Value(x // 2)
        else:
            half_ok &= isinstance(got, OutOfFuel) and isinstance(want, OutOfFuel)
    report(
        6,
        "compiler agrees with oracle",
        not total_bad and half_ok,
        f"{len(total_bad)} disagreements, half {'ok' if half_ok else 'wrong'}",
    )


def _polys(max_len: int):
    for n in range(max_len + 1):
        for powers in itertools.product(range(3), repeat=n):
            yield Polynomial(powers)


def _realized(t):
    ty = infer_type(t)
    out = []
    for i, k in enumerate(ty.dom):
        res = evaluate(t, MachineState(i, tuple(range(1, k + 1))), 10_000)
        assert res.state.counters == tuple(range(1, k + 1))
        out.append(res.state.summand)
    return out


def test_7_left_distributor_inverse():
    cfg = EqConfig(max_counter=2, samples=200, fuel=10_000)
    triples = bad = 0
    for p in _polys(4):
        for q in _polys(4 - len(p)):
            for r in _polys(4 - len(p) - len(q)):
                triples += 1
                d, e = delta_l(p, q, r), delta_l_inv(p, q, r)
                perm, back = _realized(d), _realized(e)
                as_perm = perm == delta_l_perm(p, q, r) and [back[j] for j in perm] == list(range(len(perm)))
                sem = semantic_eq(Comp(d, e), id_poly(p * (q + r)), cfg)
                bad += not (as_perm and sem)
    report(7, "left distributor inverse", bad == 0, f"{triples} triples, {bad} failures")


def test_8_round_trip_and_determinism(tmp_path):
    rng = random.Random(8)
    mismatches = 0
    for _ in range(1000):
        t = random_term(rng)
        mismatches += parse_term(print_term(t)) != t
    outputs = []
    for hash_seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        env.pop("ABACAL_SEED", None)
        summary = tmp_path / f"laws{hash_seed}.json"
        res = subprocess.run(
            [sys.executable, "-m", "abacal", "laws", "--seed", "42", "--json", str(summary)],
            capture_output=True,
            env=env,
        )
        outputs.append((res.returncode, res.stdout, summary.read_bytes()))
    same = outputs[0] == outputs[1] and outputs[0][0] == 0
    report(8, "round-trip and determinism", mismatches == 0 and same, f"{mismatches}/1000 round-trip mismatches")


if __name__ == "__main__":
    # a fresh interpreter, so pytest sees hypothesis before anything imports it
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-q", "-p", "no:cacheprovider"]))
