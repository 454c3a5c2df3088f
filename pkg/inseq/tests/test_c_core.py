from itertools import product

import pytest
from hypothesis import given, settings

from algebra.c_core import (
    accessibility,
    c0_behavior_at,
    c0_to_c,
    c_behavior_at,
    c_left,
    c_right,
    c_to_c0,
    c_to_cp,
    cp_behavior_at,
    cp_to_c,
    exits,
    max_jump,
    reachable,
    remove_unreachable,
    rev,
)
from algebra.thread_core import approximate, bisimilar, to_tree
from models.c import CInSeq
from models.instructions import (
    ABORT,
    BACKWARD,
    HALT,
    AbortInstr,
    BasicInstr,
    HaltInstr,
    JumpInstr,
    basic,
    branch,
    jump,
)
from models.thread import ThreadSpec
from tests.strategies import c0_inseqs, c_inseqs, cp_inseqs
from utils.parser import parse_c, parse_inseq, parse_spec

DEAD = ThreadSpec.dead()


class TestExtraction:
    def test_basic_then_nothing(self):
        assert bisimilar(c_left(parse_c("/a")), parse_spec("P0 = a . P1 ; P1 = D"))

    def test_test_and_backward_jump(self):
        expected = parse_spec("P0 = a . P1 ; P1 = a ? P2 : P0 ; P2 = S")
        assert bisimilar(c_left(parse_c("/a;+/a;!;\\#3")), expected)

    def test_backward_negative_test(self):
        X = parse_c("\\#2;-\\c")
        assert c_left(X) == DEAD
        assert bisimilar(c_right(X), parse_spec("P0 = c . P1 ; P1 = D"))

    def test_jump_loop(self, jump_loop):
        assert c_left(jump_loop) == DEAD
        assert bisimilar(c_right(jump_loop), parse_spec("P0 = a . P1 ; P1 = D"))

    def test_out_of_range_positions(self):
        X = parse_c("!")
        assert c_behavior_at(X, 0) == DEAD
        assert c_behavior_at(X, 2) == DEAD
        assert c_behavior_at(X, -7) == DEAD

    def test_jump_zero_variant(self):
        X = parse_inseq("/a;/#0", "c0")
        assert bisimilar(c0_behavior_at(X, 1), parse_spec("P0 = a . P1 ; P1 = D"))
        assert c0_behavior_at(X, 2) == DEAD

    def test_postconditional_test(self):
        X = parse_inseq("!;+?a;!", "cp")
        assert bisimilar(cp_behavior_at(X, 2), parse_spec("P0 = a . P1 ; P1 = S"))
        Y = parse_inseq("+?a;!", "cp")
        assert bisimilar(cp_behavior_at(Y, 1), parse_spec("P0 = a ? P1 : P2 ; P1 = D ; P2 = S"))


class TestAccessibility:
    def test_edges(self):
        graph = accessibility(parse_c("+/a;!"))
        assert set(graph.edges) == {(1, 2), (1, 3)}

    def test_exits(self):
        assert exits(parse_c("/a")) == {1}
        assert exits(parse_c("!")) == set()
        assert exits(parse_c("\\#1;!;/#2")) == {1, 3}

    def test_reachable(self):
        assert reachable(parse_c("!;/a"), 1) == {1}
        assert reachable(parse_c("/#2;#;!"), 1) == {1, 3}

    def test_remove_unreachable(self):
        assert remove_unreachable(parse_c("!;/a"), 1) == (parse_c("!"), 1)
        assert remove_unreachable(parse_c("/#2;#;!"), 1) == (parse_c("/#1;!"), 1)

    def test_remove_unreachable_shifts_the_start(self):
        X = parse_c("#;/#2;#;!")
        Y, start = remove_unreachable(X, 2)
        assert (str(Y), start) == ("/#1;!", 1)
        assert bisimilar(c_behavior_at(X, 2), c_behavior_at(Y, start))

    def test_remove_unreachable_needs_a_position(self):
        with pytest.raises(ValueError):
            remove_unreachable(parse_c("!"), 3)


class TestTransformations:
    def test_rev(self):
        assert str(rev(parse_c("+/a;!;\\#2"))) == "/#2;!;+\\a"

    def test_c_to_cp(self):
        assert str(c_to_cp(parse_c("/a"))) == "/a;/#4;#;#;\\#4"
        assert len(c_to_cp(parse_c("/a;-\\b;!"))) == 15

    def test_cp_to_c(self):
        assert str(cp_to_c(parse_inseq("+?a", "cp"))) == "+/a;\\#2;/#2;\\#3"

    def test_jump_zero_swaps_with_abort(self):
        X = parse_c("/a;#;!")
        assert str(c_to_c0(X)) == "/a;/#0;!"
        assert c0_to_c(c_to_c0(X)) == X

    def test_max_jump(self):
        assert max_jump(parse_c("/#2;\\#5;!")) == 5
        assert max_jump(parse_c("!")) == 0


@settings(max_examples=200, deadline=None)
@given(c_inseqs())
def test_rev_mirrors_behavior(X):
    Y = rev(X)
    for i in range(0, len(X) + 2):
        assert bisimilar(c_behavior_at(X, i), c_behavior_at(Y, len(X) + 1 - i))


@settings(max_examples=200, deadline=None)
@given(c_inseqs())
def test_c_to_cp_is_uniform(X):
    Y = c_to_cp(X)
    assert len(Y) == 5 * len(X)
    for i in range(1, len(X) + 1):
        expected = c_behavior_at(X, i)
        assert bisimilar(expected, cp_behavior_at(Y, 5 * (i - 1) + 1))
        assert bisimilar(expected, cp_behavior_at(Y, 5 * i))


@settings(max_examples=200, deadline=None)
@given(cp_inseqs())
def test_cp_to_c_is_uniform(X):
    Y = cp_to_c(X)
    assert len(Y) == 4 * len(X)
    for i in range(1, len(X) + 1):
        expected = cp_behavior_at(X, i)
        assert bisimilar(expected, c_behavior_at(Y, 4 * (i - 1) + 1))
        assert bisimilar(expected, c_behavior_at(Y, 4 * i))


@settings(max_examples=100, deadline=None)
@given(c0_inseqs())
def test_jump_zero_variant_is_pointwise(X):
    Y = c0_to_c(X)
    assert c_to_c0(Y) == X
    for i in range(1, len(X) + 1):
        assert bisimilar(c0_behavior_at(X, i), c_behavior_at(Y, i))


@settings(max_examples=200, deadline=None)
@given(c_inseqs())
def test_remove_unreachable_keeps_behavior(X):
    Y, start = remove_unreachable(X, 1)
    assert len(Y) <= len(X)
    assert bisimilar(c_left(X), c_behavior_at(Y, start))
    assert reachable(Y, start) - {0, len(Y) + 1} == set(range(1, len(Y) + 1))


def _unroll(X: CInSeq, position: int, depth: int):
    """Tree of the first `depth` actions from `position`, read straight off the instructions."""
    if depth == 0:
        return "D"
    seen = set()
    while X.in_range(position) and isinstance(X.inst(position), JumpInstr):
        if position in seen:
            return "D"
        seen.add(position)
        instr = X.inst(position)
        position += instr.direction.sign * instr.counter
    if not X.in_range(position):
        return "D"
    instr = X.inst(position)
    if isinstance(instr, HaltInstr):
        return "S"
    if isinstance(instr, AbortInstr):
        return "D"
    sign = instr.direction.sign
    if isinstance(instr, BasicInstr):
        yes = no = position + sign
    elif instr.positive:
        yes, no = position + sign, position + 2 * sign
    else:
        yes, no = position + 2 * sign, position + sign
    return (instr.action, _unroll(X, yes, depth - 1), _unroll(X, no, depth - 1))


ONE_ACTION = [
    basic("a"),
    basic("a", BACKWARD),
    branch("a"),
    branch("a", False),
    branch("a", True, BACKWARD),
    branch("a", False, BACKWARD),
    *(jump(counter) for counter in (1, 2, 3)),
    *(jump(counter, BACKWARD) for counter in (1, 2, 3)),
    ABORT,
    HALT,
]


@pytest.mark.parametrize("length", [1, 2, 3])
def test_extraction_matches_unrolling(length):
    for instrs in product(ONE_ACTION, repeat=length):
        X = CInSeq(instrs=instrs)
        depth = 2 * length + 2
        for i in range(1, length + 1):
            assert to_tree(approximate(c_behavior_at(X, i), depth)) == _unroll(X, i, depth), str(X)
