"""Counter-machine semantics of abacus terms.

A state of a polynomial ``P`` is a summand index plus one counter per ``N`` in
that summand.  :func:`evaluate` runs a term on a state under a fuel budget:
every generator application and every trace re-entry costs one unit, while
``Sum`` dispatch and ``Comp`` sequencing are free.

Terms are compiled once into nested closures (cached on the term) and the
closures are what actually run.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .poly import Polynomial
from .term import (
    Comp,
    EtaMono,
    IdMono,
    IdZero,
    MuMono,
    Pred,
    SigmaMono,
    Succ,
    Sum,
    Term,
    TraceMono,
    Zero,
    infer_type,
)


@dataclass(frozen=True, slots=True)
class MachineState:
    summand: int
    counters: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"#{self.summand}: " + ",".join(str(c) for c in self.counters)

    def valid_for(self, p: Polynomial) -> bool:
        return (
            0 <= self.summand < len(p)
            and len(self.counters) == p[self.summand]
            and all(isinstance(c, int) and c >= 0 for c in self.counters)
        )


def state(summand: int, *counters: int) -> MachineState:
    return MachineState(summand, tuple(counters))


class StateSyntaxError(ValueError):
    pass


def parse_state(text: str) -> MachineState:
    """Parse a state literal such as ``#0: 3,2`` (or ``#0:`` for no counters)."""
    s = text.strip()
    if not s.startswith("#") or ":" not in s:
        raise StateSyntaxError(f"bad state literal {text!r}; expected '#i: c1,c2,...'")
    head, _, tail = s[1:].partition(":")
    try:
        idx = int(head.strip())
        tail = tail.strip()
        counters = tuple(int(x) for x in tail.split(",")) if tail else ()
    except ValueError:
        raise StateSyntaxError(f"bad state literal {text!r}") from None
    if idx < 0 or any(c < 0 for c in counters):
        raise StateSyntaxError(f"negative value in state literal {text!r}")
    return MachineState(idx, counters)


@dataclass(frozen=True, slots=True)
class Halted:
    state: MachineState
    steps: int


@dataclass(frozen=True, slots=True)
class OutOfFuel:
    steps_used: int


EvalOutcome = Halted | OutOfFuel


class Panic(RuntimeError):
    """The evaluator reached a state that well-typed terms can never produce."""


class InvalidState(ValueError):
    pass


class _Exhausted(Exception):
    pass


class _Budget:
    __slots__ = ("left",)

    def __init__(self, left: int):
        self.left = left


Code = Callable[[int, tuple, _Budget], tuple[int, tuple]]


def _compile(t: Term, log: list | None = None) -> Code:
    if log is None:
        code = t.__dict__.get("_code")
        if code is not None:
            return code
    code = _build(t, log)
    if log is None:
        object.__setattr__(t, "_code", code)
    return code


def _build(t: Term, log: list | None) -> Code:
    match t:
        case Succ(u, _):

            def run(i, c, b):
                b.left -= 1
                if b.left < 0:
                    raise _Exhausted
                return 0, c[:u] + (c[u] + 1,) + c[u + 1 :]

        case Zero(u, _):

            def run(i, c, b):
                b.left -= 1
                if b.left < 0:
                    raise _Exhausted
                return 0, c[:u] + (0,) + c[u:]

        case Pred(u, _):

            def run(i, c, b):
                b.left -= 1
                if b.left < 0:
                    raise _Exhausted
                x = c[u]
                if x == 0:
                    return 0, c[:u] + c[u + 1 :]
                return 1, c[:u] + (x - 1,) + c[u + 1 :]

        case IdMono(_):

            def run(i, c, b):
                b.left -= 1
                if b.left < 0:
                    raise _Exhausted
                return i, c

        case MuMono(_):

            def run(i, c, b):
                b.left -= 1
                if b.left < 0:
                    raise _Exhausted
                return 0, c

        case SigmaMono(_, _):

            def run(i, c, b):
                b.left -= 1
                if b.left < 0:
                    raise _Exhausted
                return 1 - i, c

        case EtaMono(_) | IdZero():

            def run(i, c, b):
                raise Panic(f"reached {t!r}, whose domain has no states")

        case Comp():
            chain = []
            node: Term = t
            while isinstance(node, Comp):
                chain.append(node.g)
                node = node.f
            chain.append(node)
            codes = [_compile(x, log) for x in reversed(chain)]

            def run(i, c, b):
                for code in codes:
                    i, c = code(i, c, b)
                return i, c

        case Sum(f, g):
            m = len(infer_type(f).dom)
            n = len(infer_type(f).cod)
            rf = _compile(f, log)
            rg = _compile(g, log)

            def run(i, c, b):
                if i < m:
                    return rf(i, c, b)
                j, c = rg(i - m, c, b)
                return j + n, c

        case TraceMono(_, f):
            ft = infer_type(f)
            entry = len(ft.dom) - 1
            feedback = len(ft.cod) - 1
            rf = _compile(f, log)

            def run(i, c, b):
                j, c = rf(i, c, b)
                if j != feedback:
                    return j, c
                seen = set()
                while j == feedback:
                    b.left -= 1
                    if b.left < 0:
                        raise _Exhausted
                    # deterministic body: a repeated loop-head state never exits
                    if c in seen:
                        b.left = -1
                        raise _Exhausted
                    seen.add(c)
                    j, c = rf(entry, c, b)
                return j, c

        case _:
            raise TypeError(f"not a term: {t!r}")

    if log is not None and isinstance(t, (Succ, Zero, Pred)):
        inner = run
        label = type(t).__name__.lower() + f" {t.u} {t.v}"

        def run(i, c, b):
            j, c2 = inner(i, c, b)
            log.append((label, MachineState(i, c), MachineState(j, c2)))
            return j, c2

    return run


def evaluate(
    t: Term, s: MachineState, fuel: int, log: list | None = None
) -> EvalOutcome:
    """Run ``t`` on ``s`` with at most ``fuel`` units of work.

    With ``log`` given, every succ/zero/pred step is appended to it as a
    ``(label, before, after)`` triple.
    """
    ty = infer_type(t)
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    if not s.valid_for(ty.dom):
        raise InvalidState(f"state {s} is not valid for domain {list(ty.dom)}")
    code = _compile(t, log)
    budget = _Budget(fuel)
    try:
        j, c = code(s.summand, s.counters, budget)
    except _Exhausted:
        return OutOfFuel(fuel)
    out = MachineState(j, c)
    if not out.valid_for(ty.cod):
        raise Panic(f"result {out} is not valid for codomain {list(ty.cod)}")
    return Halted(out, fuel - budget.left)


def states(p: Polynomial, max_counter: int) -> Iterator[MachineState]:
    """Every state of ``p`` with counters in ``0..max_counter``, in order."""
    for i, k in enumerate(p):
        for cs in itertools.product(range(max_counter + 1), repeat=k):
            yield MachineState(i, cs)


EXHAUSTIVE_LIMIT = 64


def sample_states(
    p: Polynomial, max_counter: int, samples: int, rng: random.Random
) -> list[MachineState]:
    """Exhaustive when ``p`` has at most 64 bounded states, else random and deduplicated."""
    if not len(p):
        return []
    if p.num_states(max_counter) <= EXHAUSTIVE_LIMIT:
        return list(states(p, max_counter))
    seen: dict[MachineState, None] = {}
    for _ in range(samples):
        i = rng.randrange(len(p))
        cs = tuple(rng.randint(0, max_counter) for _ in range(p[i]))
        seen[MachineState(i, cs)] = None
    return list(seen)


@dataclass(frozen=True)
class EqConfig:
    max_counter: int = 8
    samples: int = 200
    fuel: int = 10_000
    seed: int = 0


@dataclass(frozen=True)
class Equal:
    checked: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Distinguished:
    witness: MachineState
    lhs: EvalOutcome
    rhs: EvalOutcome

    def __bool__(self):
        return False


def compare_at(f: Term, g: Term, s: MachineState, fuel: int) -> Distinguished | None:
    """Compare ``f`` and ``g`` on one state; ``None`` means no disagreement found.

    Both run at ``fuel``.  If exactly one halts, and it did so within half the
    budget, the other gets ten times the budget before being declared divergent.
    """
    a = evaluate(f, s, fuel)
    b = evaluate(g, s, fuel)
    if isinstance(a, Halted) and isinstance(b, Halted):
        return None if a.state == b.state else Distinguished(s, a, b)
    if isinstance(a, OutOfFuel) and isinstance(b, OutOfFuel):
        return None
    if isinstance(a, Halted):
        if a.steps > fuel // 2:
            return None
        b = evaluate(g, s, 10 * fuel)
    else:
        if b.steps > fuel // 2:
            return None
        a = evaluate(f, s, 10 * fuel)
    if isinstance(a, Halted) and isinstance(b, Halted) and a.state == b.state:
        return None
    return Distinguished(s, a, b)


def semantic_eq(f: Term, g: Term, cfg: EqConfig = EqConfig()) -> Equal | Distinguished:
    """Sampled semantic equality of two terms of the same type."""
    tf, tg = infer_type(f), infer_type(g)
    if tf != tg:
        raise TypeError(f"type mismatch: {tf} vs {tg}")
    rng = random.Random(cfg.seed)
    candidates = sample_states(tf.dom, cfg.max_counter, cfg.samples, rng)
    for s in candidates:
        d = compare_at(f, g, s, cfg.fuel)
        if d is not None:
            return d
    return Equal(len(candidates))
