"""Concrete instances of the equational theory, checked in the counter-machine model.

Every family is a generator that, given a seeded random source, picks
metavariables (monomials, polynomials, small morphisms) and returns both sides
of the equation.  Checking an instance means comparing the two sides with
:func:`abacal.machine.semantic_eq`.

Morphism metavariables come either from a fixed pool of named small terms or
from :func:`random_morphism`.  Morphisms placed inside a feedback loop are
drawn so that they never increase the total of all counters; together with the
evaluator's loop-state memo this keeps every check finite and fast.
"""

from __future__ import annotations

import json
import random
import zlib
from dataclasses import dataclass, field
from typing import Callable

from .machine import Distinguished, EqConfig, Halted, semantic_eq
from .poly import Polynomial, as_poly, poly
from .recfun import discard_at, move, rearrange
from .structural import (
    copair,
    copair_all,
    delta_l,
    delta_l_inv,
    diverge,
    eta_poly,
    id_poly,
    inj_at,
    iota,
    lwhisk,
    lwhisk_mono,
    mu_poly,
    numeral,
    pred_rep,
    rwhisk,
    rwhisk_mono,
    sigma_poly,
    tensor,
    trace_poly,
)
from .term import (
    Comp,
    IdMono,
    IdZero,
    MuMono,
    Pred,
    SigmaMono,
    Succ,
    Sum,
    Term,
    Zero,
    comp,
    infer_type,
)

POOL_VERSION = 1


def _pool() -> dict[str, Term]:
    only_zero = Comp(Pred(0, 0), Sum(Zero(0, 0), diverge(poly(1), poly(1))))
    return {
        "succ": Succ(0, 0),
        "succ01": Succ(0, 1),
        "succ10": Succ(1, 0),
        "zero": Zero(0, 0),
        "zero01": Zero(0, 1),
        "zero10": Zero(1, 0),
        "pred": Pred(0, 0),
        "pred01": Pred(0, 1),
        "pred10": Pred(1, 0),
        "id1": IdMono(1),
        "id2": IdMono(2),
        "mu1": MuMono(1),
        "sigma01": SigmaMono(0, 1),
        "iota": iota(),
        "predrep": pred_rep(),
        "num2": numeral(2),
        "move": move(),
        "discard": discard_at(0, 1),
        "only_zero": only_zero,
        "succ_or_zero": Sum(Succ(0, 0), Zero(0, 0)),
    }


POOL: dict[str, Term] = _pool()


# -- random morphisms --------------------------------------------------------


def _mono_map(rng: random.Random, p: int, q: int, grow: bool) -> Term:
    k = rng.randint(0, min(p, q))
    outs = rng.sample(range(q), k)
    ins = rng.sample(range(p), k)
    dest: list[list[int]] = [[] for _ in range(p)]
    for i, o in zip(ins, outs):
        dest[i] = [o]
    t = rearrange(p, dest, q)
    if grow and q:
        for _ in range(rng.randint(0, 2)):
            i = rng.randrange(q)
            t = Comp(t, Succ(i, q - 1 - i))
    return t


def _into(t: Term, j: int, cod: Polynomial) -> Term:
    return t if len(cod) == 1 else Comp(t, inj_at(j, cod))


def random_morphism(
    rng: random.Random, dom, cod, grow: bool = True, depth: int = 2
) -> Term:
    """A random term of type ``dom -> cod``.

    With ``grow`` false no counter is ever incremented, so the sum of all
    counters never increases.  Branches on ``pred`` appear up to ``depth``
    levels deep and occasionally lead into a divergent arm.
    """
    dom, cod = as_poly(dom), as_poly(cod)
    if not dom:
        return eta_poly(cod)
    if not cod:
        return diverge(dom, cod)
    parts = []
    for p in dom:
        if depth > 0 and p >= 1 and rng.random() < 0.35:
            i = rng.randrange(p)
            zero_arm = random_morphism(rng, poly(p - 1), cod, grow, depth - 1)
            if rng.random() < 0.15:
                pos_arm = diverge(poly(p), cod)
            else:
                pos_arm = random_morphism(rng, poly(p), cod, grow, depth - 1)
            parts.append(Comp(Pred(i, p - 1 - i), copair(zero_arm, pos_arm)))
        else:
            j = rng.randrange(len(cod))
            parts.append(_into(_mono_map(rng, p, cod[j], grow), j, cod))
    return copair_all(parts)


def random_poly(rng: random.Random, lo: int = 0, hi: int = 2, power: int = 2) -> Polynomial:
    return Polynomial(tuple(rng.randint(0, power) for _ in range(rng.randint(lo, hi))))


def random_term(rng: random.Random) -> Term:
    """A random well-typed term for round-trip and typing tests."""
    roll = rng.random()
    if roll < 0.2:
        return rng.choice(list(POOL.values()))
    if roll < 0.3:
        a, b = random_term(rng), random_term(rng)
        return Sum(a, b)
    if roll < 0.4:
        f = random_term(rng)
        return Comp(f, random_morphism(rng, infer_type(f).cod, random_poly(rng, 1)))
    if roll < 0.5:
        r = random_poly(rng, 1, 1)
        return trace_poly(r, _loop_body(rng, random_poly(rng), random_poly(rng, 1), r))
    return random_morphism(rng, random_poly(rng), random_poly(rng))


def _loop_body(rng: random.Random, p: Polynomial, q: Polynomial, r: Polynomial) -> Term:
    # f : P + R -> Q + R whose feedback part never increases the counter total
    out = q + r
    if not out:
        return id_poly(p + r)
    steps = [random_morphism(rng, poly(k), out, grow=False) for k in r]
    if not p:
        return copair_all(steps) if steps else IdZero()
    entry = random_morphism(rng, p, out)
    return copair_all([entry] + steps) if steps else entry


# -- instances ---------------------------------------------------------------


@dataclass(frozen=True)
class LawInstance:
    name: str
    family: str
    lhs: Term
    rhs: Term
    binding: str
    premise: tuple[Term, Term] | None = None

    def __post_init__(self):
        lt, rt = infer_type(self.lhs), infer_type(self.rhs)
        if lt != rt:
            raise TypeError(f"{self.name}: sides have types {lt} and {rt}")


class _Gen:
    """Metavariable source for one instance."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.notes: list[str] = []

    def note(self, key: str, value) -> None:
        if isinstance(value, Polynomial):
            value = list(value)
        self.notes.append(f"{key}={value}")

    def mono(self, key: str, lo: int = 0) -> int:
        u = self.rng.randint(lo, 2)
        self.note(key, u)
        return u

    def poly(self, key: str, lo: int = 0, hi: int = 2) -> Polynomial:
        p = random_poly(self.rng, lo, hi)
        self.note(key, p)
        return p

    def morph(self, key: str, dom, cod, grow: bool = True) -> Term:
        dom, cod = as_poly(dom), as_poly(cod)
        if grow:
            fits = [n for n, t in POOL.items() if infer_type(t).dom == dom and infer_type(t).cod == cod]
            if fits and self.rng.random() < 0.4:
                name = self.rng.choice(fits)
                self.note(key, name)
                return POOL[name]
        self.note(key, f"random {list(dom)}->{list(cod)}")
        return random_morphism(self.rng, dom, cod, grow)

    def any_morph(self, key: str) -> Term:
        if self.rng.random() < 0.5:
            name = self.rng.choice(sorted(POOL))
            self.note(key, name)
            return POOL[name]
        return self.morph(key, self.poly(key + ".dom", 1), self.poly(key + ".cod", 1))

    def loop(self, key: str, p, q, r) -> Term:
        self.note(key, f"loop {list(p)}+{list(r)}->{list(q)}+{list(r)}")
        return _loop_body(self.rng, as_poly(p), as_poly(q), as_poly(r))

    def binding(self) -> str:
        return " ".join(self.notes)


Family = Callable[[_Gen], "tuple[Term, Term] | tuple[Term, Term, tuple[Term, Term]]"]
_FAMILIES: dict[str, Family] = {}


def family(name: str):
    def register(fn: Family) -> Family:
        _FAMILIES[name] = fn
        return fn

    return register


# symmetric monoidal, cocartesian and traced structure of +


@family("S1")
def _s1(g: _Gen):
    P, Q, R, S = (g.poly(k, 1) for k in "PQRS")
    f, h, k = g.morph("f", P, Q), g.morph("g", Q, R), g.morph("h", R, S)
    return Comp(Comp(f, h), k), Comp(f, Comp(h, k))


@family("S2")
def _s2(g: _Gen):
    P, Q = g.poly("P", 1), g.poly("Q", 1)
    f = g.morph("f", P, Q)
    if g.rng.random() < 0.5:
        return Comp(id_poly(P), f), f
    return Comp(f, id_poly(Q)), f


@family("S3")
def _s3(g: _Gen):
    P, Q, R, P2, Q2, R2 = (g.poly(k, 1, 1) for k in ("P", "Q", "R", "P'", "Q'", "R'"))
    f, h = g.morph("f", P, Q), g.morph("h", Q, R)
    k, m = g.morph("g", P2, Q2), g.morph("k", Q2, R2)
    return Comp(Sum(f, k), Sum(h, m)), Sum(Comp(f, h), Comp(k, m))


@family("S4")
def _s4(g: _Gen):
    f = g.any_morph("f")
    if g.rng.random() < 0.5:
        return Sum(IdZero(), f), f
    return Sum(f, IdZero()), f


@family("S5")
def _s5(g: _Gen):
    f, h, k = g.any_morph("f"), g.any_morph("g"), g.any_morph("h")
    return Sum(Sum(f, h), k), Sum(f, Sum(h, k))


@family("S6")
def _s6(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return Comp(sigma_poly(P, Q), sigma_poly(Q, P)), id_poly(P + Q)


@family("S7")
def _s7(g: _Gen):
    P, P2, Q = g.poly("P", 1), g.poly("P'", 1), g.poly("Q")
    f = g.morph("f", P, P2)
    return Comp(Sum(f, id_poly(Q)), sigma_poly(P2, Q)), Comp(sigma_poly(P, Q), Sum(id_poly(Q), f))


@family("S8")
def _s8(g: _Gen):
    P = g.poly("P", 1)
    m, i = mu_poly(P), id_poly(P)
    return Comp(Sum(m, i), m), Comp(Sum(i, m), m)


@family("S9")
def _s9(g: _Gen):
    P = g.poly("P", 1)
    return Comp(sigma_poly(P, P), mu_poly(P)), mu_poly(P)


@family("S10")
def _s10(g: _Gen):
    P = g.poly("P", 1)
    return Comp(Sum(eta_poly(P), id_poly(P)), mu_poly(P)), id_poly(P)


@family("S11")
def _s11(g: _Gen):
    P, Q = g.poly("P", 1), g.poly("Q", 1)
    f = g.morph("f", P, Q)
    return Comp(Sum(f, f), mu_poly(Q)), Comp(mu_poly(P), f)


@family("S12")
def _s12(g: _Gen):
    P, Q = g.poly("P", 1), g.poly("Q", 1)
    f = g.morph("f", P, Q)
    return Comp(eta_poly(P), f), eta_poly(Q)


def _naturality(g: _Gen, r_lo: int = 1):
    P2, P, Q, Q2 = (g.poly(k, 1) for k in ("P'", "P", "Q", "Q'"))
    R = g.poly("R", r_lo)
    f = g.loop("f", P, Q, R)
    a, b = g.morph("g", P2, P), g.morph("h", Q, Q2)
    lhs = comp(a, trace_poly(R, f), b)
    rhs = trace_poly(R, comp(Sum(a, id_poly(R)), f, Sum(b, id_poly(R))))
    return lhs, rhs


def _superposing(g: _Gen):
    S, P, Q, R = g.poly("S"), g.poly("P"), g.poly("Q", 1), g.poly("R", 1)
    f = g.loop("f", P, Q, R)
    return Sum(id_poly(S), trace_poly(R, f)), trace_poly(R, Sum(id_poly(S), f))


def _sliding(g: _Gen):
    # f : P + R -> Q + R' and h : R' -> R
    P, Q, R, R2 = g.poly("P"), g.poly("Q", 1), g.poly("R", 1), g.poly("R'", 1)
    entry = random_morphism(g.rng, P, Q + R2) if P else None
    steps = [random_morphism(g.rng, poly(k), Q + R2, grow=False) for k in R]
    f = copair_all(([entry] if entry is not None else []) + steps)
    h = g.morph("h", R2, R, grow=False)
    g.note("f", f"loop {list(P)}+{list(R)}->{list(Q)}+{list(R2)}")
    lhs = trace_poly(R2, Comp(Sum(id_poly(P), h), f))
    rhs = trace_poly(R, Comp(f, Sum(id_poly(Q), h)))
    return lhs, rhs


def _yanking(g: _Gen):
    P = g.poly("P")
    return trace_poly(P, sigma_poly(P, P)), id_poly(P)


family("S13")(_naturality)
family("S14")(_superposing)
family("S15")(_sliding)
family("S16")(_yanking)


# succ / zero / pred


def _n1(u, v, w=None):
    k = u + v
    lhs = comp(Sum(Zero(u, v), Succ(u, v)), MuMono(k + 1), Pred(u, v))
    return lhs, id_poly(poly(k, k + 1))


def _n2(u, v, w=None):
    k = u + v
    return comp(Pred(u, v), Sum(Zero(u, v), Succ(u, v)), MuMono(k + 1)), IdMono(k + 1)


def _n3(u, v, w):
    a, b = Succ(u, v + 1 + w), Succ(u + 1 + v, w)
    return Comp(a, b), Comp(b, a)


def _n4(u, v, w):
    return (
        Comp(Succ(u, v + w), Zero(u + 1 + v, w)),
        Comp(Zero(u + 1 + v, w), Succ(u, v + 1 + w)),
    )


def _n5(u, v, w):
    return (
        Comp(Zero(u, v + 1 + w), Succ(u + 1 + v, w)),
        Comp(Succ(u + v, w), Zero(u, v + 1 + w)),
    )


def _n6(u, v, w):
    return (
        Comp(Zero(u, v + w), Zero(u + 1 + v, w)),
        Comp(Zero(u + v, w), Zero(u, v + 1 + w)),
    )


def _n7(u, v, w):
    return (
        Comp(Succ(u, v + 1 + w), Pred(u + 1 + v, w)),
        Comp(Pred(u + 1 + v, w), Sum(Succ(u, v + w), Succ(u, v + 1 + w))),
    )


def _n8(u, v, w):
    return (
        Comp(Zero(u, v + 1 + w), Pred(u + 1 + v, w)),
        Comp(Pred(u + v, w), Sum(Zero(u, v + w), Zero(u, v + 1 + w))),
    )


def _n9(u, v, w):
    return (
        Comp(Succ(u + 1 + v, w), Pred(u, v + 1 + w)),
        Comp(Pred(u, v + 1 + w), Sum(Succ(u + v, w), Succ(u + 1 + v, w))),
    )


def _n10(u, v, w):
    return (
        Comp(Zero(u + 1 + v, w), Pred(u, v + 1 + w)),
        Comp(Pred(u, v + w), Sum(Zero(u + v, w), Zero(u + 1 + v, w))),
    )


def _n11(u, v, w):
    n = u + v + w + 2
    lhs = Comp(Pred(u, v + 1 + w), Sum(Pred(u + v, w), Pred(u + 1 + v, w)))
    swap = Sum(Sum(IdMono(n - 2), SigmaMono(n - 1, n - 1)), IdMono(n))
    rhs = comp(Pred(u + 1 + v, w), Sum(Pred(u, v + w), Pred(u, v + 1 + w)), swap)
    return lhs, rhs


_COUNTER_LAWS = {
    "N1": (_n1, 2),
    "N2": (_n2, 2),
    "N3": (_n3, 3),
    "N4": (_n4, 3),
    "N5": (_n5, 3),
    "N6": (_n6, 3),
    "N7": (_n7, 3),
    "N8": (_n8, 3),
    "N9": (_n9, 3),
    "N10": (_n10, 3),
    "N11": (_n11, 3),
}


# trace operator axioms over whole polynomials


@family("TR1")
def _tr1(g: _Gen):
    P, Q = g.poly("P", 1), g.poly("Q", 1)
    f = g.morph("f", P, Q)
    return trace_poly(poly(), f), f


@family("TR2")
def _tr2(g: _Gen):
    A, B, C, D = g.poly("A"), g.poly("B", 1), g.poly("C", 1, 1), g.poly("D", 1, 1)
    f = g.loop("f", A, B, C + D)
    return trace_poly(C + D, f), trace_poly(C, trace_poly(D, f))


family("TR3")(lambda g: _naturality(g, 1))
family("TR4")(_superposing)
family("TR5")(_sliding)
family("TR6")(_yanking)


@family("UNIF")
def _unif(g: _Gen):
    # witness: k : A + D -> B + C, h : C -> D, f = (1_A + h)k, g = k(1_B + h)
    A, B, C, D = g.poly("A"), g.poly("B", 1), g.poly("C", 1), g.poly("D", 1)
    entry = random_morphism(g.rng, A, B + C) if A else None
    steps = [random_morphism(g.rng, poly(k), B + C, grow=False) for k in D]
    k = copair_all(([entry] if entry is not None else []) + steps)
    h = g.morph("h", C, D, grow=False)
    g.note("k", f"random {list(A + D)}->{list(B + C)}")
    f = Comp(Sum(id_poly(A), h), k)
    gg = Comp(k, Sum(id_poly(B), h))
    premise = (Comp(f, Sum(id_poly(B), h)), Comp(Sum(id_poly(A), h), gg))
    return trace_poly(C, f), trace_poly(D, gg), premise


# the right-strict distributive list


@family("RS1")
def _rs1(g: _Gen):
    return tensor(g.any_morph("f"), IdZero()), IdZero()


@family("RS2")
def _rs2(g: _Gen):
    return tensor(IdZero(), g.any_morph("f")), IdZero()


@family("RS3")
def _rs3(g: _Gen):
    f, h, k = g.any_morph("f"), g.any_morph("g"), g.any_morph("h")
    return tensor(Sum(f, h), k), Sum(tensor(f, k), tensor(h, k))


@family("RS4")
def _rs4(g: _Gen):
    A, B = g.poly("A"), g.poly("B")
    return delta_l(poly(), A, B), IdZero()


@family("RS5")
def _rs5(g: _Gen):
    A, B = g.poly("A"), g.poly("B")
    return delta_l(A, poly(), B), id_poly(A * B)


@family("RS6")
def _rs6(g: _Gen):
    A, B = g.poly("A"), g.poly("B")
    return delta_l(A, B, poly()), id_poly(A * B)


@family("RS7")
def _rs7(g: _Gen):
    A, B = g.poly("A"), g.poly("B")
    return delta_l(poly(0), A, B), id_poly(A + B)


@family("RS8")
def _rs8(g: _Gen):
    A, B, C = g.poly("A"), g.poly("B"), g.poly("C")
    lhs = Comp(delta_l(A, B, C), sigma_poly(A * B, A * C))
    rhs = Comp(tensor(id_poly(A), sigma_poly(B, C)), delta_l(A, C, B))
    return lhs, rhs


@family("RS9")
def _rs9(g: _Gen):
    A, B, C = g.poly("A"), g.poly("B"), g.poly("C")
    return sigma_poly(A * C, B * C), tensor(sigma_poly(A, B), id_poly(C))


@family("RS10")
def _rs10(g: _Gen):
    A, B, C, D = (g.poly(k) for k in "ABCD")
    lhs = Comp(delta_l(A, B + C, D), Sum(delta_l(A, B, C), id_poly(A * D)))
    rhs = Comp(delta_l(A, B, C + D), Sum(id_poly(A * B), delta_l(A, C, D)))
    return lhs, rhs


@family("RS11")
def _rs11(g: _Gen):
    A, B, C, D = (g.poly(k) for k in "ABCD")
    rhs = Comp(tensor(id_poly(A), delta_l(B, C, D)), delta_l(A, B * C, B * D))
    return delta_l(A * B, C, D), rhs


@family("RS12")
def _rs12(g: _Gen):
    A, B, C, D = (g.poly(k) for k in "ABCD")
    return delta_l(A, B * D, C * D), tensor(delta_l(A, B, C), id_poly(D))


@family("RS13")
def _rs13(g: _Gen):
    A, B, C, D = (g.poly(k) for k in "ABCD")
    rhs = Comp(
        Sum(delta_l(A, C, D), delta_l(B, C, D)),
        Sum(Sum(id_poly(A * C), sigma_poly(A * D, B * C)), id_poly(B * D)),
    )
    return delta_l(A + B, C, D), rhs


@family("RS14")
def _rs14(g: _Gen):
    A, A2, B, B2, C, C2 = (g.poly(k, 1) for k in ("A", "A'", "B", "B'", "C", "C'"))
    f, h, k = g.morph("f", A, A2), g.morph("g", B, B2), g.morph("h", C, C2)
    lhs = Comp(delta_l(A, B, C), Sum(tensor(f, h), tensor(f, k)))
    rhs = Comp(tensor(f, Sum(h, k)), delta_l(A2, B2, C2))
    return lhs, rhs


# monomial whiskering


def _a2(item: str):
    def register(fn):
        family(f"A2.{item}")(lambda g: fn(g, g.mono("U")))
        return fn

    return register


@_a2("i")
def _a2_1(g: _Gen, U: int):
    Q = g.poly("Q")
    return lwhisk_mono(U, id_poly(Q)), id_poly(poly(U) * Q)


@_a2("ii")
def _a2_2(g: _Gen, U: int):
    Q, R = g.poly("Q"), g.poly("R")
    return lwhisk_mono(U, sigma_poly(Q, R)), sigma_poly(poly(U) * Q, poly(U) * R)


@_a2("iii")
def _a2_3(g: _Gen, U: int):
    Q = g.poly("Q")
    return lwhisk_mono(U, eta_poly(Q)), eta_poly(poly(U) * Q)


@_a2("iv")
def _a2_4(g: _Gen, U: int):
    Q = g.poly("Q")
    return lwhisk_mono(U, mu_poly(Q)), mu_poly(poly(U) * Q)


@_a2("v")
def _a2_5(g: _Gen, U: int):
    R, S, Q = g.poly("R"), g.poly("S", 1), g.poly("Q", 1)
    f = g.loop("f", R, S, Q)
    return lwhisk_mono(U, trace_poly(Q, f)), trace_poly(poly(U) * Q, lwhisk_mono(U, f))


@_a2("vi")
def _a2_6(g: _Gen, U: int):
    Q = g.poly("Q")
    return rwhisk_mono(id_poly(Q), U), id_poly(Q * poly(U))


@_a2("vii")
def _a2_7(g: _Gen, U: int):
    P, Q = g.poly("P"), g.poly("Q")
    return rwhisk_mono(sigma_poly(P, Q), U), sigma_poly(P * poly(U), Q * poly(U))


@_a2("viii")
def _a2_8(g: _Gen, U: int):
    Q = g.poly("Q")
    return rwhisk_mono(eta_poly(Q), U), eta_poly(Q * poly(U))


@_a2("ix")
def _a2_9(g: _Gen, U: int):
    Q = g.poly("Q")
    return rwhisk_mono(mu_poly(Q), U), mu_poly(Q * poly(U))


@_a2("x")
def _a2_10(g: _Gen, U: int):
    P, Q, R = g.poly("P"), g.poly("Q", 1), g.poly("R", 1)
    f = g.loop("f", P, Q, R)
    return rwhisk_mono(trace_poly(R, f), U), trace_poly(R * poly(U), rwhisk_mono(f, U))


# polynomial whiskering


@family("A3.i")
def _a3_1(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return lwhisk(P, id_poly(Q)), id_poly(P * Q)


@family("A3.ii")
def _a3_2(g: _Gen):
    P, Q, R = g.poly("P"), g.poly("Q"), g.poly("R")
    lhs = Comp(lwhisk(P, sigma_poly(Q, R)), delta_l(P, R, Q))
    rhs = Comp(delta_l(P, Q, R), sigma_poly(P * Q, P * R))
    return lhs, rhs


@family("A3.iii")
def _a3_3(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return lwhisk(P, eta_poly(Q)), eta_poly(P * Q)


@family("A3.iv")
def _a3_4(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return lwhisk(P, mu_poly(Q)), Comp(delta_l(P, Q, Q), mu_poly(P * Q))


@family("A3.v")
def _a3_5(g: _Gen):
    P, R, S, Q = g.poly("P", 1), g.poly("R"), g.poly("S", 1), g.poly("Q", 1, 1)
    f = g.loop("f", R, S, Q)
    lhs = lwhisk(P, trace_poly(Q, f))
    rhs = trace_poly(P * Q, comp(delta_l_inv(P, R, Q), lwhisk(P, f), delta_l(P, S, Q)))
    return lhs, rhs


@family("A3.vi")
def _a3_6(g: _Gen):
    return lwhisk(g.poly("P"), IdZero()), IdZero()


@family("A3.vii")
def _a3_7(g: _Gen):
    P, A, B, C = g.poly("P", 1), g.poly("A", 1), g.poly("B", 1), g.poly("C", 1)
    t, s = g.morph("t", A, B), g.morph("s", B, C)
    return lwhisk(P, Comp(t, s)), Comp(lwhisk(P, t), lwhisk(P, s))


@family("A3.viii")
def _a3_8(g: _Gen):
    P, P1, P2, Q1, Q2 = (g.poly(k, 1) for k in ("P", "P1", "P2", "Q1", "Q2"))
    t, s = g.morph("t", P1, Q1), g.morph("s", P2, Q2)
    lhs = Comp(lwhisk(P, Sum(t, s)), delta_l(P, Q1, Q2))
    rhs = Comp(delta_l(P, P1, P2), Sum(lwhisk(P, t), lwhisk(P, s)))
    return lhs, rhs


@family("A3.ix")
def _a3_9(g: _Gen):
    Q, P = g.poly("Q"), g.poly("P")
    return rwhisk(id_poly(Q), P), id_poly(Q * P)


@family("A3.x")
def _a3_10(g: _Gen):
    P, Q, R = g.poly("P"), g.poly("Q"), g.poly("R")
    return rwhisk(sigma_poly(P, Q), R), sigma_poly(P * R, Q * R)


@family("A3.xi")
def _a3_11(g: _Gen):
    Q, P = g.poly("Q"), g.poly("P")
    return rwhisk(eta_poly(Q), P), eta_poly(Q * P)


@family("A3.xii")
def _a3_12(g: _Gen):
    Q, P = g.poly("Q"), g.poly("P")
    return rwhisk(mu_poly(Q), P), mu_poly(Q * P)


@family("A3.xiii")
def _a3_13(g: _Gen):
    P, Q, R, S = g.poly("P"), g.poly("Q", 1), g.poly("R", 1), g.poly("S", 1)
    f = g.loop("f", P, Q, R)
    return rwhisk(trace_poly(R, f), S), trace_poly(R * S, rwhisk(f, S))


@family("A3.xiv")
def _a3_14(g: _Gen):
    return rwhisk(IdZero(), g.poly("P")), IdZero()


@family("A3.xv")
def _a3_15(g: _Gen):
    P, A, B, C = g.poly("P", 1), g.poly("A", 1), g.poly("B", 1), g.poly("C", 1)
    t, s = g.morph("t", A, B), g.morph("s", B, C)
    return rwhisk(Comp(t, s), P), Comp(rwhisk(t, P), rwhisk(s, P))


@family("A3.xvi")
def _a3_16(g: _Gen):
    P = g.poly("P", 1)
    t, s = g.any_morph("t"), g.any_morph("s")
    return rwhisk(Sum(t, s), P), Sum(rwhisk(t, P), rwhisk(s, P))


# left distributors


@family("A4.i")
def _a4_1(g: _Gen):
    return delta_l(poly(), g.poly("P"), g.poly("Q")), IdZero()


@family("A4.ii")
def _a4_2(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return delta_l(P, poly(), Q), id_poly(P * Q)


@family("A4.iii")
def _a4_3(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return delta_l(P, Q, poly()), id_poly(P * Q)


@family("A4.iv")
def _a4_4(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return delta_l(poly(0), P, Q), id_poly(P + Q)


@family("A4.v")
def _a4_5(g: _Gen):
    P, Q, R, S = (g.poly(k) for k in "PQRS")
    rhs = Comp(
        Sum(delta_l(P, R, S), delta_l(Q, R, S)),
        Sum(Sum(id_poly(P * R), sigma_poly(P * S, Q * R)), id_poly(Q * S)),
    )
    return delta_l(P + Q, R, S), rhs


@family("A4.vi")
def _a4_6(g: _Gen):
    P, Q, R, S = (g.poly(k) for k in "PQRS")
    lhs = Comp(delta_l(P, Q + R, S), Sum(delta_l(P, Q, R), id_poly(P * S)))
    rhs = Comp(delta_l(P, Q, R + S), Sum(id_poly(P * Q), delta_l(P, R, S)))
    return lhs, rhs


@family("A4.vii")
def _a4_7(g: _Gen):
    P, Q, R, S = (g.poly(k) for k in "PQRS")
    return delta_l(P * Q, R, S), Comp(lwhisk(P, delta_l(Q, R, S)), delta_l(P, Q * R, Q * S))


@family("A4.viii")
def _a4_8(g: _Gen):
    P, Q, R, S = (g.poly(k) for k in "PQRS")
    return delta_l(P, Q * S, R * S), rwhisk(delta_l(P, Q, R), S)


@family("A4.ix")
def _a4_9(g: _Gen):
    P, Q, Q2, R, R2 = (g.poly(k, 1) for k in ("P", "Q", "Q'", "R", "R'"))
    f, h = g.morph("f", Q, Q2), g.morph("g", R, R2)
    lhs = Comp(delta_l(P, Q, R), Sum(lwhisk(P, f), lwhisk(P, h)))
    rhs = Comp(lwhisk(P, Sum(f, h)), delta_l(P, Q2, R2))
    return lhs, rhs


# whiskering by products of monomials


@family("A5.i")
def _a5_1(g: _Gen):
    U, V, f = g.mono("U"), g.mono("V"), g.any_morph("f")
    return lwhisk_mono(U + V, f), lwhisk_mono(U, lwhisk_mono(V, f))


@family("A5.ii")
def _a5_2(g: _Gen):
    U, V, f = g.mono("U"), g.mono("V"), g.any_morph("f")
    return rwhisk_mono(f, U + V), rwhisk_mono(rwhisk_mono(f, U), V)


@family("A5.iii")
def _a5_3(g: _Gen):
    U, V, f = g.mono("U"), g.mono("V"), g.any_morph("f")
    return rwhisk_mono(lwhisk_mono(U, f), V), lwhisk_mono(U, rwhisk_mono(f, V))


# polynomial coherence


@family("A6.i")
def _a6_1(g: _Gen):
    f = g.any_morph("f")
    return lwhisk(poly(0), f), f


@family("A6.ii")
def _a6_2(g: _Gen):
    f = g.any_morph("f")
    return rwhisk(f, poly(0)), f


@family("A6.iii")
def _a6_3(g: _Gen):
    P, Q, f = g.poly("P"), g.poly("Q"), g.any_morph("f")
    return lwhisk(P * Q, f), lwhisk(P, lwhisk(Q, f))


@family("A6.iv")
def _a6_4(g: _Gen):
    P, Q, f = g.poly("P"), g.poly("Q"), g.any_morph("f")
    return rwhisk(f, P * Q), rwhisk(rwhisk(f, P), Q)


@family("A6.v")
def _a6_5(g: _Gen):
    P, Q, f = g.poly("P"), g.poly("Q"), g.any_morph("f")
    return rwhisk(lwhisk(P, f), Q), lwhisk(P, rwhisk(f, Q))


# the tensor of morphisms


@family("A7.i")
def _a7_1(g: _Gen):
    P, Q = g.poly("P"), g.poly("Q")
    return tensor(id_poly(P), id_poly(Q)), id_poly(P * Q)


@family("A7.ii")
def _a7_2(g: _Gen):
    P, Q, T, R, S, H = (g.poly(k, 1, 1) for k in "PQTRSH")
    f, h = g.morph("f", P, Q), g.morph("h", Q, T)
    k, m = g.morph("g", R, S), g.morph("k", S, H)
    return Comp(tensor(f, k), tensor(h, m)), tensor(Comp(f, h), Comp(k, m))


@family("A7.iii")
def _a7_3(g: _Gen):
    f, h, k = g.any_morph("f"), g.any_morph("g"), g.any_morph("h")
    return tensor(tensor(f, h), k), tensor(f, tensor(h, k))


@family("A7.iv")
def _a7_4(g: _Gen):
    f = g.any_morph("f")
    if g.rng.random() < 0.5:
        return tensor(f, IdMono(0)), f
    return tensor(IdMono(0), f), f


@family("A8")
def _a8(g: _Gen):
    f, h = g.any_morph("f"), g.any_morph("g")
    P, Q = infer_type(f).dom, infer_type(f).cod
    R, S = infer_type(h).dom, infer_type(h).cod
    return Comp(rwhisk(f, R), lwhisk(Q, h)), Comp(lwhisk(P, h), rwhisk(f, S))


def _counter_family(name: str, law, nargs: int) -> None:
    def fam(g: _Gen, k: int):
        combos = [(u, v, w) for u in range(3) for v in range(3) for w in range(3 if nargs == 3 else 1)]
        u, v, w = combos[k]
        g.note("U", u)
        g.note("V", v)
        if nargs == 3:
            g.note("W", w)
        return law(u, v, w)

    fam.indexed = True  # type: ignore[attr-defined]
    fam.count = 9 if nargs == 2 else 27  # type: ignore[attr-defined]
    _FAMILIES[name] = fam


for _name, (_law, _n) in _COUNTER_LAWS.items():
    _counter_family(_name, _law, _n)


def _order(name: str):
    head = name.rstrip("0123456789.ivx")
    rest = name[len(head) :]
    major, _, minor = rest.partition(".")
    roman = {"i": 1, "v": 5, "x": 10}

    def val(r: str) -> int:
        total = 0
        for a, b in zip(r, r[1:] + " "):
            total += -roman[a] if roman.get(b, 0) > roman[a] else roman[a]
        return total

    prefix_rank = ["S", "N", "TR", "UNIF", "RS", "A"].index(head.rstrip(".") or head)
    return (prefix_rank, int(major) if major else 0, val(minor) if minor else 0)


FAMILIES: tuple[str, ...] = tuple(sorted(_FAMILIES, key=_order))

UNFALSIFIABLE = (
    "UNIF: uniformity is a universally quantified implication; only witnessed "
    "instances (f, g, h with the premise constructed to hold) are checked, so the "
    "schema itself is not falsifiable by sampling"
)


# -- configuration and checking ----------------------------------------------


@dataclass(frozen=True)
class LawConfig:
    seed: int = 0
    samples: int = 200
    fuel: int = 10_000
    max_counter: int = 5
    instances: int = 24
    families: tuple[str, ...] | None = None
    jobs: int = 1


def selected(name: str, wanted: tuple[str, ...] | None) -> bool:
    if wanted is None:
        return True
    return any(name == w or name.startswith(w + ".") for w in wanted)


def _family_instances(name: str, cfg: LawConfig) -> list[LawInstance]:
    fam = _FAMILIES[name]
    # counter laws enumerate every monomial binding exactly once
    count = fam.count if getattr(fam, "indexed", False) else cfg.instances
    out = []
    for k in range(count):
        g = _Gen(random.Random(f"{cfg.seed}:{name}:{k}"))
        res = fam(g, k) if getattr(fam, "indexed", False) else fam(g)
        lhs, rhs = res[0], res[1]
        premise = res[2] if len(res) > 2 else None
        out.append(LawInstance(f"{name}#{k}", name, lhs, rhs, g.binding(), premise))
    return out


def enumerate_axioms(cfg: LawConfig = LawConfig()) -> list[LawInstance]:
    out: list[LawInstance] = []
    for name in FAMILIES:
        if selected(name, cfg.families):
            out.extend(_family_instances(name, cfg))
    return out


@dataclass(frozen=True)
class LawResult:
    name: str
    family: str
    binding: str
    seed: int
    checked: int
    witness: str | None = None
    lhs: str | None = None
    rhs: str | None = None
    premise_ok: bool | None = None

    @property
    def ok(self) -> bool:
        return self.witness is None and self.premise_ok is not False


def _outcome(o) -> str:
    return str(o.state) if isinstance(o, Halted) else "out-of-fuel"


def _instance_seed(seed: int, name: str) -> int:
    return zlib.crc32(f"{seed}:{name}".encode())


def check_instance(inst: LawInstance, cfg: LawConfig = LawConfig()) -> LawResult:
    seed = _instance_seed(cfg.seed, inst.name)
    eq = EqConfig(cfg.max_counter, cfg.samples, cfg.fuel, seed)
    premise_ok = None
    if inst.premise is not None:
        premise_ok = bool(semantic_eq(inst.premise[0], inst.premise[1], eq))
    verdict = semantic_eq(inst.lhs, inst.rhs, eq)
    if isinstance(verdict, Distinguished):
        return LawResult(
            inst.name, inst.family, inst.binding, seed, 0,
            str(verdict.witness), _outcome(verdict.lhs), _outcome(verdict.rhs), premise_ok,
        )
    return LawResult(inst.name, inst.family, inst.binding, seed, verdict.checked, premise_ok=premise_ok)


def _check_family(args: tuple[str, LawConfig]) -> list[LawResult]:
    name, cfg = args
    return [check_instance(i, cfg) for i in _family_instances(name, cfg)]


@dataclass
class LawReport:
    config: LawConfig
    results: list[LawResult] = field(default_factory=list)
    notes: tuple[str, ...] = ()

    @property
    def failures(self) -> list[LawResult]:
        return [r for r in self.results if not r.ok]

    def families(self) -> dict[str, list[LawResult]]:
        out: dict[str, list[LawResult]] = {}
        for r in self.results:
            out.setdefault(r.family, []).append(r)
        return out

    def to_text(self) -> str:
        c = self.config
        lines = [
            f"laws seed={c.seed} samples={c.samples} fuel={c.fuel} "
            f"max_counter={c.max_counter} pool=v{POOL_VERSION}",
            f"{'family':<10} {'instances':>9} {'states':>7} {'failures':>8}",
        ]
        for fam, rs in self.families().items():
            bad = sum(not r.ok for r in rs)
            states = sum(r.checked for r in rs)
            lines.append(f"{fam:<10} {len(rs):>9} {states:>7} {bad:>8}")
        for r in self.failures:
            if r.premise_ok is False:
                lines.append(f"FAIL {r.name} premise does not hold [{r.binding}]")
            else:
                lines.append(
                    f"FAIL {r.name} at {r.witness}: lhs {r.lhs} rhs {r.rhs} [{r.binding}]"
                )
        lines.extend(f"note: {n}" for n in self.notes)
        lines.append(
            f"total: {len(self.results)} instances, {len(self.families())} families, "
            f"{len(self.failures)} failures"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        c = self.config
        doc = {
            "config": {
                "seed": c.seed,
                "samples": c.samples,
                "fuel": c.fuel,
                "max_counter": c.max_counter,
                "instances": c.instances,
                "pool_version": POOL_VERSION,
            },
            "families": {
                fam: {"instances": len(rs), "failures": sum(not r.ok for r in rs)}
                for fam, rs in self.families().items()
            },
            "failures": [
                {
                    "name": r.name,
                    "binding": r.binding,
                    "seed": r.seed,
                    "witness": r.witness,
                    "lhs": r.lhs,
                    "rhs": r.rhs,
                    "premise_ok": r.premise_ok,
                }
                for r in self.failures
            ],
            "notes": list(self.notes),
            "total": len(self.results),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def check_laws(cfg: LawConfig = LawConfig()) -> LawReport:
    names = [n for n in FAMILIES if selected(n, cfg.families)]
    if cfg.jobs > 1 and len(names) > 1:
        from multiprocessing import Pool

        with Pool(cfg.jobs) as pool:
            chunks = pool.map(_check_family, [(n, cfg) for n in names])
    else:
        chunks = [_check_family((n, cfg)) for n in names]
    results = [r for chunk in chunks for r in chunk]
    notes = (UNFALSIFIABLE,) if "UNIF" in names else ()
    return LawReport(cfg, results, notes)


__all__ = [
    "FAMILIES",
    "LawConfig",
    "LawInstance",
    "LawReport",
    "LawResult",
    "POOL",
    "check_instance",
    "check_laws",
    "enumerate_axioms",
    "random_morphism",
    "random_term",
]
