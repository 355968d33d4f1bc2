"""Partial recursive functions: syntax, a big-step oracle, and a compiler to abacus terms.

The schema is Kleene's: ``ZeroC`` (the 0-ary constant zero), ``SuccF``,
projections ``Proj(i, n)`` (1-based), strict composition, primitive recursion
with the recursion argument first, and minimization over the last argument.

Compiled programs take their ``n`` arguments as the counters of the single
summand of ``[n]`` and leave the result as the one counter of ``[1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .machine import OutOfFuel
from .structural import coalg_unfold, nno_iterate, numeral, tensor, tensor_all
from .term import (
    Comp,
    IdMono,
    MuMono,
    Pred,
    Succ,
    Sum,
    Term,
    TraceMono,
    Zero,
    comp,
)


class RecFun:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class ZeroC(RecFun):
    pass


@dataclass(frozen=True, slots=True)
class SuccF(RecFun):
    pass


@dataclass(frozen=True, slots=True)
class Proj(RecFun):
    i: int
    n: int


@dataclass(frozen=True, slots=True)
class Compose(RecFun):
    f: RecFun
    gs: tuple[RecFun, ...]

    def __post_init__(self):
        object.__setattr__(self, "gs", tuple(self.gs))


@dataclass(frozen=True, slots=True)
class PrimRec(RecFun):
    f: RecFun
    g: RecFun


@dataclass(frozen=True, slots=True)
class Mu(RecFun):
    f: RecFun


class ArityError(ValueError):
    """Ill-formed RecFun; ``path`` lists child indices from the root (``gs`` count from 1)."""

    def __init__(self, message: str, path: tuple[int, ...] = ()):
        self.message = message
        self.path = tuple(path)
        where = "/".join(map(str, self.path)) or "<root>"
        super().__init__(f"at {where}: {message}")

    def under(self, index: int) -> ArityError:
        return ArityError(self.message, (index,) + self.path)


def _sub_arity(e: RecFun, index: int) -> int:
    try:
        return arity(e)
    except ArityError as exc:
        raise exc.under(index) from None


def arity(e: RecFun) -> int:
    match e:
        case ZeroC():
            return 0
        case SuccF():
            return 1
        case Proj(i, n):
            if not (isinstance(i, int) and isinstance(n, int) and 1 <= i <= n):
                raise ArityError(f"projection index {i} out of range 1..{n}")
            return n
        case Compose(f, gs):
            if not gs:
                raise ArityError("composition needs at least one inner function")
            fa = _sub_arity(f, 0)
            if fa != len(gs):
                raise ArityError(f"outer function has arity {fa} but {len(gs)} inner functions given")
            ns = {_sub_arity(g, k + 1) for k, g in enumerate(gs)}
            if len(ns) != 1:
                raise ArityError(f"inner functions disagree on arity: {sorted(ns)}")
            return ns.pop()
        case PrimRec(f, g):
            n = _sub_arity(f, 0)
            if _sub_arity(g, 1) != n + 2:
                raise ArityError(f"step function must have arity {n + 2}, has {arity(g)}")
            return n + 1
        case Mu(f):
            n = _sub_arity(f, 0)
            if n < 1:
                raise ArityError("minimization needs a function of arity at least 1")
            return n - 1
    raise ArityError(f"not a recursive function: {e!r}")


# -- oracle ------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Value:
    value: int


class _Exhausted(Exception):
    pass


def oracle_eval(e: RecFun, args, fuel: int) -> Value | OutOfFuel:
    """Big-step evaluation charging one unit per call and per minimization candidate."""
    args = tuple(args)
    n = arity(e)
    if len(args) != n:
        raise ArityError(f"expected {n} arguments, got {len(args)}")
    if any(not isinstance(a, int) or a < 0 for a in args):
        raise ValueError("arguments must be natural numbers")
    left = [fuel]

    def tick():
        left[0] -= 1
        if left[0] < 0:
            raise _Exhausted

    def ev(e: RecFun, xs: tuple[int, ...]) -> int:
        tick()
        match e:
            case ZeroC():
                return 0
            case SuccF():
                return xs[0] + 1
            case Proj(i, _):
                return xs[i - 1]
            case Compose(f, gs):
                return ev(f, tuple(ev(g, xs) for g in gs))
            case PrimRec(f, g):
                y, rest = xs[0], xs[1:]
                acc = ev(f, rest)
                for i in range(y):
                    acc = ev(g, (i, acc) + rest)
                return acc
            case Mu(f):
                y = 0
                while True:
                    tick()
                    if ev(f, xs + (y,)) == 0:
                        return y
                    y += 1
        raise ArityError(f"not a recursive function: {e!r}")

    try:
        return Value(ev(e, args))
    except _Exhausted:
        return OutOfFuel(fuel)


# -- counter layout ----------------------------------------------------------


def discard_at(i: int, k: int) -> Term:
    """Forget counter ``i`` of ``[k]`` by draining it: ``[k] -> [k-1]``."""
    return TraceMono(k, Comp(MuMono(k), Pred(i, k - 1 - i)))


def _drain(s: int, targets: list[int], n: int) -> Term:
    # loop on [n]: while counter s is nonzero, decrement it and bump every target
    body = comp(*(Succ(t, n - 1 - t) for t in targets)) if targets else IdMono(n)
    return TraceMono(n, comp(MuMono(n), Pred(s, n - 1 - s), Sum(IdMono(n - 1), body)))


def _stayers(dest: list[list[int]]) -> set[int]:
    # inputs with a single destination whose output order agrees with input
    # order can stay put; choose a longest such chain
    cands = [(i, d[0]) for i, d in enumerate(dest) if len(d) == 1]
    best: list[list[int]] = []
    for k, (i, o) in enumerate(cands):
        prev = [best[j] for j in range(k) if cands[j][1] < o]
        chain = max(prev, key=len, default=[]) + [i]
        best.append(chain)
    return set(max(best, key=len, default=[]))


def rearrange(k: int, dest: list[list[int]], m: int) -> Term:
    """Counter shuffle ``[k] -> [m]``.

    Input counter ``i`` is added to each output counter in ``dest[i]``; outputs
    nobody writes to start at zero, and inputs with no destination are
    discarded.  Each output must have at most one source.
    """
    if len(dest) != k:
        raise ValueError("one destination list per input counter")
    owner: dict[int, int] = {}
    for i, d in enumerate(dest):
        for o in d:
            if not 0 <= o < m or o in owner:
                raise ValueError(f"bad destination {o}")
            owner[o] = i
    stay = _stayers(dest)

    # final arrangement of slots, with consumed inputs still present
    layout: list[tuple[str, int]] = []
    placed: set[int] = set()

    def flush(upto: int):
        for o in range(upto):
            if o not in placed:
                placed.add(o)
                layout.append(("out", o))

    for i in range(k):
        if i in stay:
            o = dest[i][0]
            flush(o)
            placed.add(o)
            layout.append(("out", o))
        else:
            layout.append(("in", i))
    flush(m)

    steps: list[Term] = []
    n = k
    for pos, (kind, idx) in enumerate(layout):
        if kind == "out" and not (idx in owner and owner[idx] in stay):
            steps.append(Zero(pos, n - pos))
            n += 1
    for i in reversed(range(k)):
        if i in stay:
            continue
        s = layout.index(("in", i))
        targets = [layout.index(("out", o)) for o in dest[i]]
        steps.append(_drain(s, targets, n))
        del layout[s]
        n -= 1
    return comp(*steps) if steps else IdMono(k)


# -- liveness ----------------------------------------------------------------


@lru_cache(maxsize=None)
def uses(e: RecFun) -> frozenset[int]:
    """0-based argument positions whose value can influence ``e``, including its definedness."""
    match e:
        case ZeroC():
            return frozenset()
        case SuccF():
            return frozenset({0})
        case Proj(i, _):
            return frozenset({i - 1})
        case Compose(f, gs):
            # composition is strict, so every inner function counts
            return frozenset().union(*(uses(g) for g in gs))
        case PrimRec(f, g):
            ug = uses(g)
            return frozenset({0} | {a + 1 for a in uses(f)} | {a - 1 for a in ug if a >= 2})
        case Mu(f):
            return frozenset(range(arity(e)))
    raise ArityError(f"not a recursive function: {e!r}")


# -- compiler ----------------------------------------------------------------


def compile_recfun(e: RecFun) -> Term:
    """Abacus program ``[n] -> [1]`` strongly representing ``e``."""
    arity(e)
    return _compile(e)


@lru_cache(maxsize=None)
def _compile(e: RecFun) -> Term:
    match e:
        case ZeroC():
            return numeral(0)
        case SuccF():
            return Succ(0, 0)
        case Proj(i, n):
            return tensor_all([IdMono(1) if j == i - 1 else discard_at(0, 1) for j in range(n)])
        case Compose(f, gs):
            return _compile_compose(f, gs)
        case PrimRec(f, g):
            return _compile_primrec(f, g)
        case Mu(f):
            return _compile_mu(f)
    raise ArityError(f"not a recursive function: {e!r}")


def _compile_compose(f: RecFun, gs: tuple[RecFun, ...]) -> Term:
    n, k = arity(gs[0]), len(gs)
    # each inner function receives its own block of n counters; dead slots stay zero
    dest = [[j * n + a for j, g in enumerate(gs) if a in uses(g)] for a in range(n)]
    return comp(rearrange(n, dest, k * n), tensor_all([_compile(g) for g in gs]), _compile(f))


def _compile_primrec(f: RecFun, g: RecFun) -> Term:
    # carrier [n+2] holds (x_1..x_n, i, acc); the loop index counts up from 0
    n = arity(f)
    uf, ug = uses(f), uses(g)
    keep = [a + 2 in ug for a in range(n)]

    seed_dest = [([a] if keep[a] else []) + ([n + a] if a in uf else []) for a in range(n)]
    b = comp(rearrange(n, seed_dest, 2 * n), tensor(IdMono(n), _compile(f)), Zero(n, 1))

    # step: (x, i, acc) -> (x, i, i', acc, x') -> (x, i, g(i, acc, x)) -> (x, i+1, ...)
    step_dest = [([a] if keep[a] else []) + ([n + 3 + a] if keep[a] else []) for a in range(n)]
    step_dest.append([n] + ([n + 1] if 0 in ug else []))
    step_dest.append([n + 2] if 1 in ug else [])
    a = comp(
        rearrange(n + 2, step_dest, 2 * n + 3),
        tensor(IdMono(n + 1), _compile(g)),
        Succ(n, 1),
    )
    project = rearrange(n + 2, [[] for _ in range(n + 1)] + [[0]], 1)
    return Comp(nno_iterate(b, a), project)


def _compile_mu(f: RecFun) -> Term:
    # state (x_1..x_n, y); beta tests f(x, y) and either stops or bumps y
    n = arity(f) - 1
    uf = uses(f)
    dest = [[a] + ([n + 1 + a] if a in uf else []) for a in range(n + 1)]
    beta = comp(
        rearrange(n + 1, dest, 2 * n + 2),
        tensor(IdMono(n + 1), _compile(f)),
        Pred(n + 1, 0),
        Sum(rearrange(n + 1, [[] for _ in range(n + 1)], 0), Comp(discard_at(n + 1, n + 2), Succ(n, 0))),
    )
    return Comp(Zero(n, 0), coalg_unfold(beta))


# -- standard programs -------------------------------------------------------


def _z1() -> RecFun:
    return PrimRec(ZeroC(), Proj(2, 2))


def _corpus() -> dict[str, RecFun]:
    add = PrimRec(Proj(1, 1), Compose(SuccF(), (Proj(2, 3),)))
    mult = PrimRec(_z1(), Compose(add, (Proj(3, 3), Proj(2, 3))))
    pred = PrimRec(ZeroC(), Proj(1, 2))
    # m(y, x) = x - y, so monus(x, y) = m(y, x)
    m = PrimRec(Proj(1, 1), Compose(pred, (Proj(2, 3),)))
    monus = Compose(m, (Proj(2, 2), Proj(1, 2)))
    fact = PrimRec(
        Compose(SuccF(), (ZeroC(),)),
        Compose(mult, (Compose(SuccF(), (Proj(1, 2),)), Proj(2, 2))),
    )
    double_y = Compose(add, (Proj(2, 2), Proj(2, 2)))
    x = Proj(1, 2)
    gap = Compose(add, (Compose(monus, (x, double_y)), Compose(monus, (double_y, x))))
    half = Mu(gap)
    const3 = Compose(SuccF(), (Compose(SuccF(), (Compose(SuccF(), (_z1(),)),)),))
    square_plus = Compose(add, (Compose(mult, (Proj(1, 2), Proj(1, 2))), Proj(2, 2)))
    return {
        "add": add,
        "mult": mult,
        "pred": pred,
        "monus": monus,
        "fact": fact,
        "half": half,
        "const3": const3,
        "square_plus": square_plus,
    }


CORPUS: dict[str, RecFun] = _corpus()


def move() -> Term:
    """``(x, y) -> x + y``: drain the first counter into the second."""
    return TraceMono(2, comp(MuMono(2), Pred(0, 1), Sum(IdMono(1), Succ(1, 0))))


def discard() -> Term:
    return discard_at(0, 1)


def copy() -> Term:
    """``n -> (n, n)``: two fresh counters, then one loop feeding both."""
    loop = TraceMono(
        3, comp(MuMono(3), Pred(0, 2), Sum(IdMono(2), Comp(Succ(1, 1), Succ(2, 0))))
    )
    return comp(Zero(1, 0), Zero(2, 0), loop)


STDLIB_NAMES = ("discard", "copy", "move", "add", "monus", "mult")


def stdlib(name: str) -> Term:
    match name:
        case "discard":
            return discard()
        case "copy":
            return copy()
        case "move":
            return move()
        case "add" | "monus" | "mult":
            return compile_recfun(CORPUS[name])
    raise KeyError(f"unknown standard program {name!r}; expected one of {', '.join(STDLIB_NAMES)}")
