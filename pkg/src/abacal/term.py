"""Morphism terms of the abacus category and their type inference.

Composition is written in diagrammatic order: ``Comp(f, g)`` runs ``f`` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .poly import Monomial, Polynomial, ZERO, check_monomial, poly_add


class Term:
    """Base class of all term nodes."""

    __slots__ = ()

    def children(self) -> tuple[Term, ...]:
        return ()

    def __getstate__(self):
        # compiled closures are cached on the instance and cannot be pickled
        return {k: v for k, v in self.__dict__.items() if k != "_code"}


@dataclass(frozen=True, eq=True)
class Succ(Term):
    u: Monomial
    v: Monomial


@dataclass(frozen=True, eq=True)
class Zero(Term):
    u: Monomial
    v: Monomial


@dataclass(frozen=True, eq=True)
class Pred(Term):
    u: Monomial
    v: Monomial


@dataclass(frozen=True, eq=True)
class IdMono(Term):
    u: Monomial


@dataclass(frozen=True, eq=True)
class EtaMono(Term):
    u: Monomial


@dataclass(frozen=True, eq=True)
class MuMono(Term):
    u: Monomial


@dataclass(frozen=True, eq=True)
class IdZero(Term):
    pass


@dataclass(frozen=True, eq=True)
class SigmaMono(Term):
    u: Monomial
    w: Monomial


@dataclass(frozen=True, eq=True)
class Comp(Term):
    f: Term
    g: Term

    def children(self):
        return (self.f, self.g)


@dataclass(frozen=True, eq=True)
class Sum(Term):
    f: Term
    g: Term

    def children(self):
        return (self.f, self.g)


@dataclass(frozen=True, eq=True)
class TraceMono(Term):
    w: Monomial
    f: Term

    def children(self):
        return (self.f,)


GENERATORS = (Succ, Zero, Pred, IdMono, EtaMono, MuMono, IdZero, SigmaMono)


@dataclass(frozen=True)
class MorphismType:
    dom: Polynomial
    cod: Polynomial

    def __str__(self):
        return f"{_fmt(self.dom)} -> {_fmt(self.cod)}"


def _fmt(p: Polynomial) -> str:
    return "(poly" + "".join(f" {k}" for k in p) + ")"


class TermTypeError(TypeError):
    """Ill-typed term.  ``path`` lists child indices from the root to the culprit."""

    def __init__(self, message: str, subterm: Term, path: tuple[int, ...] = ()):
        self.message = message
        self.subterm = subterm
        self.path = tuple(path)
        super().__init__(self._render())

    def _render(self) -> str:
        where = "/".join(str(i) for i in self.path) or "<root>"
        return f"at {where}: {self.message}"

    def under(self, index: int) -> TermTypeError:
        return TermTypeError(self.message, self.subterm, (index,) + self.path)


def _p(*powers: int) -> Polynomial:
    return Polynomial(powers)


def _generator_type(t: Term) -> MorphismType:
    match t:
        case Succ(u, v):
            k = check_monomial(u) + 1 + check_monomial(v)
            return MorphismType(_p(k), _p(k))
        case Zero(u, v):
            k = check_monomial(u) + check_monomial(v)
            return MorphismType(_p(k), _p(k + 1))
        case Pred(u, v):
            k = check_monomial(u) + check_monomial(v)
            return MorphismType(_p(k + 1), _p(k, k + 1))
        case IdMono(u):
            return MorphismType(_p(check_monomial(u)), _p(u))
        case EtaMono(u):
            return MorphismType(ZERO, _p(check_monomial(u)))
        case MuMono(u):
            return MorphismType(_p(check_monomial(u), u), _p(u))
        case IdZero():
            return MorphismType(ZERO, ZERO)
        case SigmaMono(u, w):
            check_monomial(u)
            check_monomial(w)
            return MorphismType(_p(u, w), _p(w, u))
    raise TermTypeError(f"not a term: {t!r}", t)


def infer_type(t: Term) -> MorphismType:
    """Domain and codomain of ``t``; raises :class:`TermTypeError` when ill-typed."""
    cached = t.__dict__.get("_type")
    if cached is not None:
        return cached
    if isinstance(t, Comp):
        ft = _child_type(t.f, 0)
        gt = _child_type(t.g, 1)
        if ft.cod != gt.dom:
            raise TermTypeError(
                f"cannot compose: codomain {_fmt(ft.cod)} of first factor "
                f"differs from domain {_fmt(gt.dom)} of second",
                t,
            )
        ty = MorphismType(ft.dom, gt.cod)
    elif isinstance(t, Sum):
        ft = _child_type(t.f, 0)
        gt = _child_type(t.g, 1)
        ty = MorphismType(poly_add(ft.dom, gt.dom), poly_add(ft.cod, gt.cod))
    elif isinstance(t, TraceMono):
        check_monomial(t.w)
        ft = _child_type(t.f, 0)
        if not ft.dom.summands or ft.dom.summands[-1] != t.w:
            raise TermTypeError(
                f"trace over N^{t.w}: domain {_fmt(ft.dom)} does not end with it", t
            )
        if not ft.cod.summands or ft.cod.summands[-1] != t.w:
            raise TermTypeError(
                f"trace over N^{t.w}: codomain {_fmt(ft.cod)} does not end with it", t
            )
        ty = MorphismType(ft.dom[:-1], ft.cod[:-1])
    else:
        try:
            ty = _generator_type(t)
        except ValueError as exc:
            raise TermTypeError(str(exc), t) from None
    object.__setattr__(t, "_type", ty)
    return ty


def _child_type(t: Term, index: int) -> MorphismType:
    try:
        return infer_type(t)
    except TermTypeError as exc:
        raise exc.under(index) from None


def dom(t: Term) -> Polynomial:
    return infer_type(t).dom


def cod(t: Term) -> Polynomial:
    return infer_type(t).cod


def walk(t: Term) -> Iterator[Term]:
    """Pre-order traversal, left to right."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def size(t: Term) -> int:
    return sum(1 for _ in walk(t))


def comp(*terms: Term) -> Term:
    """Left-associated n-ary composition."""
    if not terms:
        raise ValueError("comp needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = Comp(out, t)
    return out


def plus(*terms: Term) -> Term:
    """Left-associated n-ary sum; the empty sum is ``IdZero``."""
    if not terms:
        return IdZero()
    out = terms[0]
    for t in terms[1:]:
        out = Sum(out, t)
    return out
