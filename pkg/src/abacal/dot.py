"""Flowchart rendering of abacus terms as Graphviz DOT.

Only succ, zero and pred occurrences become instruction nodes; the structural
generators merely rewire control flow.  The graph is built backwards from the
exits: each subterm receives the targets its codomain summands lead to and
returns the targets its domain summands enter at.  A trace hands its body a
placeholder for the feedback summand and patches it once the body's feedback
entry is known; edges into a placeholder are drawn as back-edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

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

_GLYPH = {Succ: "X+", Zero: "X0", Pred: "X−"}


@dataclass(slots=True)
class _Node:
    op: str
    counter: int
    out: list[tuple[str, object]] = field(default_factory=list)


@dataclass(frozen=True, slots=True)
class _Exit:
    index: int


class _Hole:
    """Feedback target of a trace, filled in after its body is built."""

    __slots__ = ("target",)

    def __init__(self):
        self.target = None


class _Spin:
    """A loop with no instructions in it: control never leaves."""


class _Graph:
    def __init__(self):
        self.nodes: list[_Node] = []

    def build(self, t: Term, conts: list) -> list:
        match t:
            case Succ(u, _) | Zero(u, _):
                node = _Node(_GLYPH[type(t)], u, [("", conts[0])])
                self.nodes.append(node)
                return [node]
            case Pred(u, _):
                node = _Node(_GLYPH[Pred], u, [("0", conts[0]), (">0", conts[1])])
                self.nodes.append(node)
                return [node]
            case IdMono(_):
                return [conts[0]]
            case MuMono(_):
                return [conts[0], conts[0]]
            case SigmaMono(_, _):
                return [conts[1], conts[0]]
            case EtaMono(_) | IdZero():
                return []
            case Comp(f, g):
                return self.build(f, self.build(g, conts))
            case Sum(f, g):
                n = len(infer_type(f).cod)
                return self.build(f, conts[:n]) + self.build(g, conts[n:])
            case TraceMono(_, f):
                hole = _Hole()
                ins = self.build(f, conts + [hole])
                entry = _resolve(ins[-1])
                hole.target = _Spin() if entry is hole else entry
                return ins[:-1]
        raise TypeError(f"not a term: {t!r}")


def _resolve(x):
    while isinstance(x, _Hole) and x.target is not None:
        x = x.target
    return x


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(t: Term, name: str = "abacus") -> str:
    """DOT source for ``t``; instruction locations are named ``L0``, ``L1``, ... in visiting order."""
    ty = infer_type(t)
    g = _Graph()
    entries = g.build(t, [_Exit(j) for j in range(len(ty.cod))])

    # number locations breadth-first from the entries so names follow control
    # flow; unreachable instructions (e.g. behind an eta) come last
    names: dict[int, str] = {}
    spins: dict[int, str] = {}
    for root in [*entries, *reversed(g.nodes)]:
        queue = deque([_resolve(root)])
        while queue:
            x = queue.popleft()
            if isinstance(x, _Node) and id(x) not in names:
                names[id(x)] = f"L{len(names)}"
                queue.extend(_resolve(tgt) for _, tgt in x.out)

    def ref(x) -> str:
        x = _resolve(x)
        match x:
            case _Exit(j):
                return f"out{j}"
            case _Node():
                return names[id(x)]
            case _Spin():
                return spins.setdefault(id(x), f"spin{len(spins)}")
        raise AssertionError(x)

    lines = [f"digraph {_quote(name)} {{", "  rankdir=TB;", "  node [shape=box];"]
    body: list[str] = []
    for node in sorted(g.nodes, key=lambda n: int(names[id(n)][1:])):
        me = names[id(node)]
        body.append(f"  {me} [label={_quote(f'{me}: {node.op}')}, tooltip={_quote(f'counter {node.counter}')}];")
        for label, tgt in node.out:
            attrs = []
            if label:
                attrs.append(f"label={_quote(label)}")
            if isinstance(tgt, _Hole):
                attrs += ["style=dashed", "constraint=false"]
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            body.append(f"  {me} -> {ref(tgt)}{suffix};")
    arrows: list[str] = []
    for i, e in enumerate(entries):
        arrows.append(f"  in{i} [shape=point];")
        arrows.append(f"  in{i} -> {ref(e)};")
    for j in range(len(ty.cod)):
        arrows.append(f"  out{j} [shape=doublecircle, label={_quote(f'exit {j}')}];")
    for s in spins.values():
        arrows.append(f"  {s} [shape=circle, label={_quote('loop')}];")
        arrows.append(f"  {s} -> {s};")
    lines += body + arrows + ["}"]
    return "\n".join(lines) + "\n"
