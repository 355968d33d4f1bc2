"""Derived morphisms, all macro-expanded into core terms.

Identities, symmetries, the (co)monoid maps and traces on whole polynomials are
built by structural induction on the polynomial.  On top of those sit
copairing, left distributors, whiskering, the tensor of morphisms, the
natural-numbers isomorphism and its numerals, and the two iteration
constructions that turn the trace into a weak natural numbers object and a
weakly final coalgebra.

Right distributors and annihilators are identities on this object
representation, so no constructors exist for them.
"""

from __future__ import annotations

from .poly import N, UNIT, ZERO, Polynomial, as_poly, poly, poly_add, poly_mul
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
    TermTypeError,
    TraceMono,
    Zero,
    comp,
    infer_type,
)


def _plus(*terms: Term) -> Term:
    """Right-nested sum that drops ``1_0`` operands."""
    kept = [t for t in terms if not isinstance(t, IdZero)]
    if not kept:
        return IdZero()
    out = kept[-1]
    for t in reversed(kept[:-1]):
        out = Sum(t, out)
    return out


def id_poly(p) -> Term:
    p = as_poly(p)
    if not p:
        return IdZero()
    if len(p) == 1:
        return IdMono(p[0])
    return Sum(IdMono(p[0]), id_poly(p[1:]))


def _sigma_mono(u: int, q: Polynomial) -> Term:
    # sigma_{U,V+Q} = (sigma_{U,V} + 1_Q)(1_V + sigma_{U,Q})
    if not q:
        return IdMono(u)
    v, rest = q[0], q[1:]
    if not rest:
        return SigmaMono(u, v)
    return Comp(_plus(SigmaMono(u, v), id_poly(rest)), _plus(IdMono(v), _sigma_mono(u, rest)))


def sigma_poly(p, q) -> Term:
    """Symmetry ``p + q -> q + p``."""
    p, q = as_poly(p), as_poly(q)
    if not p:
        return id_poly(q)
    u, rest = p[0], p[1:]
    if not rest:
        return _sigma_mono(u, q)
    # sigma_{U+P,Q} = (1_U + sigma_{P,Q})(sigma_{U,Q} + 1_P)
    return Comp(_plus(IdMono(u), sigma_poly(rest, q)), _plus(_sigma_mono(u, q), id_poly(rest)))


def eta_poly(p) -> Term:
    p = as_poly(p)
    if not p:
        return IdZero()
    if len(p) == 1:
        return EtaMono(p[0])
    return Sum(EtaMono(p[0]), eta_poly(p[1:]))


def mu_poly(p) -> Term:
    """Codiagonal ``p + p -> p``."""
    p = as_poly(p)
    if not p:
        return IdZero()
    u, rest = p[0], p[1:]
    if not rest:
        return MuMono(u)
    # mu_{U+P} = (1_U + sigma_{P,U} + 1_P)(mu_U + mu_P)
    return Comp(
        _plus(IdMono(u), sigma_poly(rest, poly(u)), id_poly(rest)),
        Sum(MuMono(u), mu_poly(rest)),
    )


def trace_poly(r, f: Term) -> Term:
    """Trace of ``f : P + r -> Q + r`` over the whole polynomial ``r``."""
    r = as_poly(r)
    ty = infer_type(f)
    if not (ty.dom.endswith(r) and ty.cod.endswith(r)):
        raise TermTypeError(f"cannot trace over {list(r)}: f has type {ty}", f)
    return _trace(r, f)


def _trace(r: Polynomial, f: Term) -> Term:
    # Tr^{W+R}(f) = Tr^W(Tr^R(f))
    if not r:
        return f
    return TraceMono(r[0], _trace(r[1:], f))


def copair(f: Term, g: Term) -> Term:
    cf, cg = infer_type(f).cod, infer_type(g).cod
    if cf != cg:
        raise TermTypeError(f"copair needs equal codomains, got {list(cf)} and {list(cg)}", g)
    return Comp(Sum(f, g), mu_poly(cf))


def inj(i: int, p, q) -> Term:
    """Coprojection of ``p`` (``i == 0``) or ``q`` (``i == 1``) into ``p + q``."""
    p, q = as_poly(p), as_poly(q)
    if i == 0:
        return _plus(id_poly(p), eta_poly(q)) if q else id_poly(p)
    if i == 1:
        return _plus(eta_poly(p), id_poly(q)) if p else id_poly(q)
    raise ValueError("coprojection index must be 0 or 1")


def inj_at(j: int, p) -> Term:
    """Coprojection of the ``j``-th summand into the whole of ``p``."""
    p = as_poly(p)
    return _plus(eta_poly(p[:j]), IdMono(p[j]), eta_poly(p[j + 1 :]))


def copair_all(terms: list[Term]) -> Term:
    """n-ary copairing; all terms must share a codomain."""
    if len(terms) == 1:
        return terms[0]
    return copair(terms[0], copair_all(terms[1:]))


def delta_l(p, q, r) -> Term:
    """Left distributor ``p(q + r) -> pq + pr``."""
    p, q, r = as_poly(p), as_poly(q), as_poly(r)
    if not p:
        return IdZero()
    u, rest = poly(p[0]), p[1:]
    if not rest:
        return id_poly(u * (q + r))
    uq, ur, pq, pr = u * q, u * r, rest * q, rest * r
    return Comp(
        _plus(id_poly(uq + ur), delta_l(rest, q, r)),
        _plus(id_poly(uq), sigma_poly(ur, pq), id_poly(pr)),
    )


def delta_l_inv(p, q, r) -> Term:
    """Inverse of :func:`delta_l`, ``pq + pr -> p(q + r)``."""
    p, q, r = as_poly(p), as_poly(q), as_poly(r)
    if not p:
        return IdZero()
    u, rest = poly(p[0]), p[1:]
    if not rest:
        return id_poly(u * (q + r))
    uq, ur, pq, pr = u * q, u * r, rest * q, rest * r
    return Comp(
        _plus(id_poly(uq), sigma_poly(pq, ur), id_poly(pr)),
        _plus(id_poly(uq + ur), delta_l_inv(rest, q, r)),
    )


def delta_l_perm(p, q, r) -> list[int]:
    """Summand permutation of the left distributor, computed from index arithmetic.

    Entry ``k`` is where summand ``k`` of ``p(q + r)`` lands in ``pq + pr``.
    """
    p, q, r = as_poly(p), as_poly(q), as_poly(r)
    width = len(q) + len(r)
    out = []
    for k in range(len(p) * width):
        i, j = divmod(k, width)
        if j < len(q):
            out.append(i * len(q) + j)
        else:
            out.append(len(p) * len(q) + i * len(r) + (j - len(q)))
    return out


def lwhisk_mono(u: int, f: Term) -> Term:
    """``U ⋉ f``: prepend ``u`` untouched counters to every summand."""
    match f:
        case Succ(v, w):
            return Succ(u + v, w)
        case Zero(v, w):
            return Zero(u + v, w)
        case Pred(v, w):
            return Pred(u + v, w)
        case IdMono(v):
            return IdMono(u + v)
        case EtaMono(v):
            return EtaMono(u + v)
        case MuMono(v):
            return MuMono(u + v)
        case IdZero():
            return f
        case SigmaMono(v, w):
            return SigmaMono(u + v, u + w)
        case Comp(g, h):
            return Comp(lwhisk_mono(u, g), lwhisk_mono(u, h))
        case Sum(g, h):
            return Sum(lwhisk_mono(u, g), lwhisk_mono(u, h))
        case TraceMono(w, g):
            return TraceMono(u + w, lwhisk_mono(u, g))
    raise TypeError(f"not a term: {f!r}")


def rwhisk_mono(f: Term, u: int) -> Term:
    """``f ⋊ U``: append ``u`` untouched counters to every summand."""
    match f:
        case Succ(v, w):
            return Succ(v, w + u)
        case Zero(v, w):
            return Zero(v, w + u)
        case Pred(v, w):
            return Pred(v, w + u)
        case IdMono(v):
            return IdMono(v + u)
        case EtaMono(v):
            return EtaMono(v + u)
        case MuMono(v):
            return MuMono(v + u)
        case IdZero():
            return f
        case SigmaMono(v, w):
            return SigmaMono(v + u, w + u)
        case Comp(g, h):
            return Comp(rwhisk_mono(g, u), rwhisk_mono(h, u))
        case Sum(g, h):
            return Sum(rwhisk_mono(g, u), rwhisk_mono(h, u))
        case TraceMono(w, g):
            return TraceMono(w + u, rwhisk_mono(g, u))
    raise TypeError(f"not a term: {f!r}")


def lwhisk(p, f: Term) -> Term:
    """Polynomial left whiskering ``p ⋉ f : p·dom f -> p·cod f``."""
    p = as_poly(p)
    infer_type(f)
    if not p:
        return IdZero()
    if len(p) == 1:
        return lwhisk_mono(p[0], f)
    return Sum(lwhisk_mono(p[0], f), lwhisk(p[1:], f))


def rwhisk(f: Term, p) -> Term:
    """Polynomial right whiskering ``f ⋊ p : dom f·p -> cod f·p``."""
    p = as_poly(p)
    ty = infer_type(f)
    if not p:
        return IdZero()
    if len(p) == 1:
        return rwhisk_mono(f, p[0])
    u, rest = poly(p[0]), p[1:]
    return comp(
        delta_l(ty.dom, u, rest),
        Sum(rwhisk_mono(f, p[0]), rwhisk(f, rest)),
        delta_l_inv(ty.cod, u, rest),
    )


def tensor(f: Term, g: Term) -> Term:
    """``f ⊗ g = (f ⋊ dom g)(cod f ⋉ g)``."""
    tf, tg = infer_type(f), infer_type(g)
    return Comp(rwhisk(f, tg.dom), lwhisk(tf.cod, g))


def tensor_all(terms: list[Term]) -> Term:
    """Left-nested tensor of a list; the empty tensor is ``1_I``."""
    if not terms:
        return IdMono(0)
    out = terms[0]
    for t in terms[1:]:
        out = tensor(out, t)
    return out


def iota() -> Term:
    """``[zero, succ] : I + N -> N``."""
    return Comp(Sum(Zero(0, 0), Succ(0, 0)), MuMono(1))


def iota_inv() -> Term:
    return Pred(0, 0)


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are natural numbers")
    return comp(Zero(0, 0), *([Succ(0, 0)] * n))


def dagger(f: Term) -> Term:
    """Iteration ``f† = Tr^A(μ_A f)`` of ``f : A -> X + A``."""
    ty = infer_type(f)
    a = ty.dom
    if not ty.cod.endswith(a):
        raise TermTypeError(f"dagger needs f : A -> X + A, got {ty}", f)
    return trace_poly(a, Comp(mu_poly(a), f))


def nno_iterate(b: Term, a: Term) -> Term:
    """Iterator ``h : N·B -> A`` with ``h(n, β) = aⁿ(b(β))`` for ``b : B -> A``, ``a : A -> A``."""
    tb, ta = infer_type(b), infer_type(a)
    if tb.cod != ta.dom or ta.dom != ta.cod:
        raise TermTypeError(f"nno_iterate needs b : B -> A and a : A -> A, got {tb} and {ta}", a)
    carrier = ta.dom
    body = Comp(
        copair(tensor(IdMono(1), b), tensor(IdMono(1), a)),
        tensor(iota_inv(), id_poly(carrier)),
    )
    return trace_poly(N * carrier, body)


def coalg_unfold(beta: Term) -> Term:
    """Mediating map ``h : A -> N`` into ``ι⁻¹`` for ``beta : A -> I + A``; counts unfoldings."""
    ty = infer_type(beta)
    if ty.cod != UNIT + ty.dom:
        raise TermTypeError(f"coalg_unfold needs beta : A -> I + A, got {ty}", beta)
    a = ty.dom
    body = Comp(
        copair(tensor(id_poly(a), Zero(0, 0)), tensor(id_poly(a), Succ(0, 0))),
        tensor(beta, IdMono(1)),
    )
    return trace_poly(a * N, body)


def pred_rep() -> Term:
    """Total predecessor ``ι⁻¹[z, 1_N] : N -> N``."""
    return Comp(iota_inv(), copair(Zero(0, 0), IdMono(1)))


def diverge(p, q) -> Term:
    """The nowhere-defined morphism ``p -> q``."""
    p, q = as_poly(p), as_poly(q)
    return dagger(inj(1, q, p))


__all__ = [
    "ZERO",
    "coalg_unfold",
    "copair",
    "copair_all",
    "dagger",
    "delta_l",
    "delta_l_inv",
    "delta_l_perm",
    "diverge",
    "eta_poly",
    "id_poly",
    "inj",
    "inj_at",
    "iota",
    "iota_inv",
    "lwhisk",
    "lwhisk_mono",
    "mu_poly",
    "nno_iterate",
    "numeral",
    "poly_add",
    "poly_mul",
    "pred_rep",
    "rwhisk",
    "rwhisk_mono",
    "sigma_poly",
    "tensor",
    "tensor_all",
    "trace_poly",
]
