"""The bidirectional instruction sequences of C and its two variants."""

import logging
from typing import Callable, List, Set, Tuple

import networkx as nx

from algebra.thread_core import DEADLOCK, STOP, Emit, Step, Transfer, extract
from models.c import C0InSeq, CInSeq, CpInSeq
from models.inseq import InSeq
from models.instructions import (
    ABORT,
    BACKWARD,
    FORWARD,
    JUMP_ZERO,
    AbortInstr,
    BasicInstr,
    HaltInstr,
    JumpInstr,
    JumpZeroInstr,
    PostTestInstr,
    TestInstr,
    branch,
    jump,
    post_test,
)
from models.thread import ThreadSpec

logger = logging.getLogger(__name__)


def c_step(instr, position: int) -> Step:
    """One application of the C extraction equations at `position`."""
    if isinstance(instr, BasicInstr):
        following = position + instr.direction.sign
        return Emit(instr.action, following, following)
    if isinstance(instr, TestInstr):
        sign = instr.direction.sign
        near, far = position + sign, position + 2 * sign
        if instr.positive:
            return Emit(instr.action, near, far)
        return Emit(instr.action, far, near)
    if isinstance(instr, JumpInstr):
        return Transfer(position + instr.direction.sign * instr.counter)
    if isinstance(instr, JumpZeroInstr):
        return Transfer(position)
    if isinstance(instr, PostTestInstr):
        if instr.positive:
            return Emit(instr.action, position - 1, position + 1)
        return Emit(instr.action, position + 1, position - 1)
    if isinstance(instr, HaltInstr):
        return STOP
    return DEADLOCK


def _step_function(X: InSeq) -> Callable[[int], Step]:
    def step(position: int) -> Step:
        if not X.in_range(position):
            return DEADLOCK
        return c_step(X.inst(position), position)

    return step


def c_behavior_at(X: CInSeq, i: int) -> ThreadSpec:
    return extract(_step_function(X), i)


def c_left(X: CInSeq) -> ThreadSpec:
    return c_behavior_at(X, 1)


def c_right(X: CInSeq) -> ThreadSpec:
    return c_behavior_at(X, len(X))


def c0_behavior_at(X: C0InSeq, i: int) -> ThreadSpec:
    return extract(_step_function(X), i)


def cp_behavior_at(X: CpInSeq, i: int) -> ThreadSpec:
    return extract(_step_function(X), i)


def _clamp(X: InSeq, position: int) -> int:
    return min(max(position, 0), len(X) + 1)


def accessibility(X: InSeq) -> nx.DiGraph:
    """Position graph of one extraction step; 0 and len(X)+1 stand for every out-of-range position."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(X) + 2))
    for position, instr in X.positions():
        move = c_step(instr, position)
        if isinstance(move, Emit):
            graph.add_edge(position, _clamp(X, move.yes))
            graph.add_edge(position, _clamp(X, move.no))
        elif isinstance(move, Transfer):
            graph.add_edge(position, _clamp(X, move.target))
    return graph


def reachable(X: InSeq, i: int) -> Set[int]:
    start = _clamp(X, i)
    return nx.descendants(accessibility(X), start) | {start}


def exits(X: InSeq) -> Set[int]:
    graph = accessibility(X)
    outside = {0, len(X) + 1}
    return {
        position
        for position in range(1, len(X) + 1)
        if any(target in outside for target in graph.successors(position))
    }


def _without(X: CInSeq, removed: int) -> CInSeq:
    """Drop one position, shortening every jump that crosses it."""
    instrs = []
    for position, instr in X.positions():
        if position == removed:
            continue
        if isinstance(instr, JumpInstr):
            target = position + instr.direction.sign * instr.counter
            crosses = min(position, target) < removed < max(position, target)
            if crosses:
                instr = jump(instr.counter - 1, instr.direction)
        instrs.append(instr)
    return CInSeq(instrs=tuple(instrs))


def remove_unreachable(X: CInSeq, i: int) -> Tuple[CInSeq, int]:
    """Remove every instruction that cannot be reached from position i.

    Args:
        X: a C instruction sequence
        i: a position of X

    Returns:
        Tuple[CInSeq, int]: the shorter sequence and the new start position
    """
    if not X.in_range(i):
        raise ValueError(f"start position {i} is outside 1..{len(X)}")
    keep = reachable(X, i)
    unreachable = [position for position in range(len(X), 0, -1) if position not in keep]
    for position in unreachable:
        X = _without(X, position)
    start = i - sum(1 for position in unreachable if position < i)
    logger.debug(f"removed {len(unreachable)} unreachable positions, start {i} -> {start}")
    return X, start


def dual(instr):
    return instr.dual()


def rev(X: InSeq) -> InSeq:
    return type(X)(instrs=tuple(dual(instr) for instr in reversed(X.instrs)))


def c_to_c0(X: CInSeq) -> C0InSeq:
    return C0InSeq(instrs=tuple(JUMP_ZERO if isinstance(u, AbortInstr) else u for u in X.instrs))


def c0_to_c(X: C0InSeq) -> CInSeq:
    return CInSeq(instrs=tuple(ABORT if isinstance(u, JumpZeroInstr) else u for u in X.instrs))


def _c_to_cp_block(u) -> List:
    if isinstance(u, BasicInstr):
        if u.forward:
            return [u, jump(4), ABORT, ABORT, jump(4, BACKWARD)]
        return [jump(4), ABORT, ABORT, jump(4, BACKWARD), u]
    if isinstance(u, TestInstr):
        test = post_test(u.action, u.positive)
        if u.forward:
            return [jump(2), jump(4), test, jump(7), jump(2, BACKWARD)]
        return [jump(2), jump(2, BACKWARD), test, jump(9, BACKWARD), jump(2, BACKWARD)]
    if isinstance(u, JumpInstr):
        if u.forward:
            return [jump(5 * u.counter), ABORT, ABORT, ABORT, jump(4, BACKWARD)]
        return [jump(4), ABORT, ABORT, ABORT, jump(5 * u.counter, BACKWARD)]
    if isinstance(u, HaltInstr):
        return [u, ABORT, ABORT, ABORT, u]
    return [ABORT] * 5


def c_to_cp(X: CInSeq) -> CpInSeq:
    """Replace directional tests by postconditional ones, five instructions per instruction.

    Position i of X behaves like positions 5(i-1)+1 and 5i of the result.
    """
    return CpInSeq(instrs=tuple(v for u in X.instrs for v in _c_to_cp_block(u)))


def _cp_to_c_block(u) -> List:
    if isinstance(u, BasicInstr):
        if u.forward:
            return [u, jump(3), ABORT, jump(3, BACKWARD)]
        return [jump(3), ABORT, jump(3, BACKWARD), u]
    if isinstance(u, PostTestInstr):
        return [branch(u.action, u.positive, FORWARD), jump(2, BACKWARD), jump(2), jump(3, BACKWARD)]
    if isinstance(u, JumpInstr):
        if u.forward:
            return [jump(4 * u.counter), ABORT, ABORT, jump(3, BACKWARD)]
        return [jump(3), ABORT, ABORT, jump(4 * u.counter, BACKWARD)]
    if isinstance(u, HaltInstr):
        return [u, ABORT, ABORT, u]
    return [ABORT] * 4


def cp_to_c(X: CpInSeq) -> CInSeq:
    """Inverse direction of `c_to_cp`, four instructions per instruction."""
    return CInSeq(instrs=tuple(v for u in X.instrs for v in _cp_to_c_block(u)))


def max_jump(X: InSeq) -> int:
    return max((u.counter for u in X.instrs if isinstance(u, JumpInstr)), default=0)