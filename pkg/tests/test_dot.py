import random
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abacal.dot import emit_dot
from abacal.lawcheck import random_term
from abacal.poly import poly
from abacal.recfun import copy, move
from abacal.structural import diverge, numeral
from abacal.term import IdZero, Pred, SigmaMono, Succ, Sum, walk

NODE = re.compile(r"^  (L\d+) \[label=\"L\d+: (X[+0−])\"", re.M)
EDGE = re.compile(r"^  (\w+) -> (\w+)(?: \[(.*)\])?;$", re.M)


def nodes(dot):
    return NODE.findall(dot)


def edges(dot):
    return EDGE.findall(dot)


def test_numeral_is_a_chain():
    dot = emit_dot(numeral(2))
    assert nodes(dot) == [("L0", "X0"), ("L1", "X+"), ("L2", "X+")]
    assert [(a, b) for a, b, _ in edges(dot)] == [("L0", "L1"), ("L1", "L2"), ("L2", "out0"), ("in0", "L0")]


def test_move_has_one_back_edge():
    dot = emit_dot(move())
    assert nodes(dot) == [("L0", "X−"), ("L1", "X+")]
    back = [e for e in edges(dot) if "dashed" in e[2]]
    assert back == [("L1", "L0", "style=dashed, constraint=false")]
    labels = sorted(attrs for a, _, attrs in edges(dot) if a == "L0")
    assert labels == ['label="0"', 'label=">0"']


def test_empty_domain_has_no_nodes():
    dot = emit_dot(IdZero())
    assert nodes(dot) == [] and "in0" not in dot and "->" not in dot


def test_structural_generators_only_rewire():
    dot = emit_dot(SigmaMono(0, 1))
    assert nodes(dot) == []
    assert ("in0", "out1", "") in edges(dot) and ("in1", "out0", "") in edges(dot)


def test_empty_loop_becomes_a_spin_node():
    dot = emit_dot(diverge(poly(1), poly(1)))
    assert "spin0 -> spin0;" in dot and "in0 -> spin0;" in dot


def test_copy_graph():
    dot = emit_dot(copy())
    assert [op for _, op in nodes(dot)] == ["X0", "X0", "X−", "X+", "X+"]


def test_sum_dispatches_to_both_branches():
    dot = emit_dot(Sum(Succ(0, 0), Pred(0, 0)))
    assert ("in0", "L0", "") in edges(dot) and ("in1", "L1", "") in edges(dot)


@given(st.integers(0, 10**6))
def test_one_node_per_counter_instruction(seed):
    t = random_term(random.Random(seed))
    dot = emit_dot(t)
    count = sum(isinstance(x, (Succ, Pred)) or type(x).__name__ == "Zero" for x in walk(t))
    assert len(nodes(dot)) == count
    names = [n for n, _ in nodes(dot)]
    assert names == [f"L{i}" for i in range(count)]
    assert dot.startswith("digraph") and dot.endswith("}\n")
    assert dot.count("{") == dot.count("}")
    preds = sum(op == "X−" for _, op in nodes(dot))
    labelled = sum('label="0"' in a or 'label=">0"' in a for _, _, a in edges(dot))
    assert labelled == 2 * preds


def test_output_parses_as_dot():
    pydot = pytest.importorskip("pydot")
    for t in (numeral(2), move(), copy(), IdZero(), diverge(poly(1), poly(1))):
        (graph,) = pydot.graph_from_dot_data(emit_dot(t))
        assert graph.get_name() == '"abacus"'
        found = {n.get_name() for n in graph.get_nodes()}
        assert {n for n, _ in nodes(emit_dot(t))} <= found
