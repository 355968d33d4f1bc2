"""S-expression syntax for polynomials, terms and recursive functions.

Term files hold one term.  Core forms print back exactly; derived forms such as
``(tensor f g)`` are expanded into core terms while parsing, so printing a parsed
file shows the expansion.  ``;`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import structural as st
from .poly import Polynomial
from .recfun import ArityError, Compose, Mu, PrimRec, Proj, RecFun, SuccF, ZeroC, arity, stdlib
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
    infer_type,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass(frozen=True, slots=True)
class Atom:
    text: str
    line: int
    col: int


@dataclass(frozen=True, slots=True)
class SList:
    items: tuple
    line: int
    col: int


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def read_all(text: str) -> list:
    """All top-level s-expressions in ``text``."""
    stack: list[tuple[list, int, int]] = []
    out: list = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok, pos = m.group(), m.start()
        col = pos - line_start + 1
        if tok == "(":
            stack.append(([], line, col))
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", line, col)
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
            (stack[-1][0] if stack else out).append(node)
        elif not tok[0].isspace() and tok[0] != ";":
            (stack[-1][0] if stack else out).append(Atom(tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError("unclosed '('", l0, c0)
    return out


def read_one(text: str):
    forms = read_all(text)
    if len(forms) != 1:
        where = forms[1] if len(forms) > 1 else None
        if where is None:
            raise ParseError("expected one expression, found none", 1, 1)
        raise ParseError("expected a single expression", where.line, where.col)
    return forms[0]


def _nat(x) -> int:
    if not isinstance(x, Atom) or not x.text.isdigit():
        raise ParseError("expected a natural number", x.line, x.col)
    return int(x.text)


def _poly(x) -> Polynomial:
    if not isinstance(x, SList) or not x.items or _head(x) != "poly":
        raise ParseError("expected (poly k ...)", x.line, x.col)
    return Polynomial(tuple(_nat(a) for a in x.items[1:]))


def _head(x: SList) -> str | None:
    h = x.items[0] if x.items else None
    return h.text if isinstance(h, Atom) else None


def parse_poly(text: str) -> Polynomial:
    return _poly(read_one(text))


# -- terms -------------------------------------------------------------------

# form name -> (argument kinds, builder); kinds: n natural, p polynomial, t term
_TERM_FORMS = {
    "succ": ("nn", Succ),
    "zero": ("nn", Zero),
    "pred": ("nn", Pred),
    "id": ("n", IdMono),
    "eta": ("n", EtaMono),
    "mu": ("n", MuMono),
    "id0": ("", IdZero),
    "sigma": ("nn", SigmaMono),
    "tr": ("nt", TraceMono),
    "idp": ("p", st.id_poly),
    "sigmap": ("pp", st.sigma_poly),
    "etap": ("p", st.eta_poly),
    "mup": ("p", st.mu_poly),
    "trp": ("pt", st.trace_poly),
    "copair": ("tt", st.copair),
    "inj": ("npp", st.inj),
    "dl": ("ppp", st.delta_l),
    "dlinv": ("ppp", st.delta_l_inv),
    "lw": ("pt", st.lwhisk),
    "rw": ("tp", st.rwhisk),
    "tensor": ("tt", st.tensor),
    "iota": ("", st.iota),
    "iotainv": ("", st.iota_inv),
    "numeral": ("n", st.numeral),
    "dagger": ("t", st.dagger),
    "nno-it": ("tt", st.nno_iterate),
    "unfold": ("t", st.coalg_unfold),
}


def _term(x) -> Term:
    if not isinstance(x, SList) or not x.items:
        raise ParseError("expected a term form '(name ...)'", x.line, x.col)
    name = _head(x)
    args = x.items[1:]
    if name in ("comp", "sum"):
        if not args:
            raise ParseError(f"({name} ...) needs at least one term", x.line, x.col)
        node = Comp if name == "comp" else Sum
        out = _term(args[0])
        for a in args[1:]:
            out = node(out, _term(a))
        return out
    if name == "std":
        if len(args) != 1 or not isinstance(args[0], Atom):
            raise ParseError("expected (std name)", x.line, x.col)
        try:
            return stdlib(args[0].text)
        except KeyError as exc:
            raise ParseError(exc.args[0], args[0].line, args[0].col) from None
    if name not in _TERM_FORMS:
        raise ParseError(f"unknown term form {name!r}", x.line, x.col)
    kinds, build = _TERM_FORMS[name]
    if len(args) != len(kinds):
        raise ParseError(f"({name} ...) takes {len(kinds)} arguments, got {len(args)}", x.line, x.col)
    vals = [{"n": _nat, "p": _poly, "t": _term}[k](a) for k, a in zip(kinds, args)]
    if name == "inj" and vals[0] not in (0, 1):
        raise ParseError("injection index must be 0 or 1", args[0].line, args[0].col)
    try:
        return build(*vals)
    except TermTypeError as exc:
        # derived forms check the types of their arguments
        raise ParseError(f"ill-typed ({name} ...): {exc.message}", x.line, x.col) from None


def parse_term(text: str) -> Term:
    """Parse one term; raises :class:`ParseError` with a source position."""
    return _term(read_one(text))


def _flat(t: Term, node: type) -> list[Term]:
    out = []
    while isinstance(t, node):
        out.append(t.g)
        t = t.f
    out.append(t)
    return out[::-1]


def _atoms(t: Term) -> str | None:
    match t:
        case Succ(u, v):
            return f"(succ {u} {v})"
        case Zero(u, v):
            return f"(zero {u} {v})"
        case Pred(u, v):
            return f"(pred {u} {v})"
        case IdMono(u):
            return f"(id {u})"
        case EtaMono(u):
            return f"(eta {u})"
        case MuMono(u):
            return f"(mu {u})"
        case IdZero():
            return "(id0)"
        case SigmaMono(u, w):
            return f"(sigma {u} {w})"
    return None


def _parts(t: Term) -> tuple[str, list[Term]]:
    match t:
        case Comp():
            return "comp", _flat(t, Comp)
        case Sum():
            return "sum", _flat(t, Sum)
        case TraceMono(w, f):
            return f"tr {w}", [f]
    raise TypeError(f"not a term: {t!r}")


def print_term(t: Term, width: int = 80) -> str:
    """Canonical text; lines are broken only when a form exceeds ``width``."""
    flat_cache: dict[int, str] = {}

    def flat(t: Term) -> str:
        key = id(t)
        if key not in flat_cache:
            a = _atoms(t)
            if a is None:
                head, kids = _parts(t)
                a = f"({head} " + " ".join(flat(k) for k in kids) + ")"
            flat_cache[key] = a
        return flat_cache[key]

    def pretty(t: Term, indent: int) -> str:
        s = flat(t)
        if indent + len(s) <= width or _atoms(t) is not None:
            return s
        head, kids = _parts(t)
        pad = " " * (indent + 2)
        body = "\n".join(pad + pretty(k, indent + 2) for k in kids)
        return f"({head}\n{body})"

    return pretty(t, 0)


# -- recursive functions -----------------------------------------------------


def _rec(x) -> RecFun:
    if isinstance(x, Atom):
        if x.text == "Z":
            return ZeroC()
        if x.text == "S":
            return SuccF()
        raise ParseError(f"unknown function {x.text!r}", x.line, x.col)
    name = _head(x)
    args = x.items[1:]
    match name:
        case "proj" if len(args) == 2:
            i, n = _nat(args[0]), _nat(args[1])
            if not 1 <= i <= n:
                raise ParseError(f"projection index {i} out of range 1..{n}", x.line, x.col)
            return Proj(i, n)
        case "comp" if len(args) >= 2:
            return Compose(_rec(args[0]), tuple(_rec(a) for a in args[1:]))
        case "primrec" if len(args) == 2:
            return PrimRec(_rec(args[0]), _rec(args[1]))
        case "mu" if len(args) == 1:
            return Mu(_rec(args[0]))
    raise ParseError(f"malformed function form ({name} ...)", x.line, x.col)


def parse_recfun(text: str) -> RecFun:
    """Parse one recursive function and check its arities."""
    form = read_one(text)
    e = _rec(form)
    try:
        arity(e)
    except ArityError as exc:
        raise ParseError(str(exc), form.line, form.col) from None
    return e


def print_recfun(e: RecFun) -> str:
    match e:
        case ZeroC():
            return "Z"
        case SuccF():
            return "S"
        case Proj(i, n):
            return f"(proj {i} {n})"
        case Compose(f, gs):
            return "(comp " + " ".join(print_recfun(x) for x in (f, *gs)) + ")"
        case PrimRec(f, g):
            return f"(primrec {print_recfun(f)} {print_recfun(g)})"
        case Mu(f):
            return f"(mu {print_recfun(f)})"
    raise TypeError(f"not a recursive function: {e!r}")


def print_poly(p: Polynomial) -> str:
    return "(poly" + "".join(f" {k}" for k in p) + ")"


def check_term_text(text: str) -> Term:
    """Parse and type-check; both kinds of error propagate."""
    t = parse_term(text)
    infer_type(t)
    return t
