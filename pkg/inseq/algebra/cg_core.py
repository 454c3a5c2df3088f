"""Cg: labels, gotos and the transformations between their semantics."""

import logging
from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from algebra.c_core import c_step, dual, rev
from algebra.errors import BadK
from algebra.thread_core import DEADLOCK, Emit, Step, Transfer, extract
from models.cg import CgInSeq
from models.instructions import (
    ABORT,
    BACKWARD,
    FORWARD,
    GotoInstr,
    LabelInstr,
    goto,
    label,
)
from models.thread import ThreadSpec
from schemas.analysis import LabelRelations

logger = logging.getLogger(__name__)


def fsearch(X: CgInSeq, i: int, targets: Set) -> int:
    return next((j for j in range(max(i, 1), len(X) + 1) if X.inst(j) in targets), len(X) + 1)


def bsearch(X: CgInSeq, i: int, targets: Set) -> int:
    return next((j for j in range(min(i, len(X)), 0, -1) if X.inst(j) in targets), 0)


def goto_target(X: CgInSeq, i: int, general: bool = False) -> int:
    """Position the goto at i continues at under the directional or the general semantics."""
    instr = X.inst(i)
    if general:
        targets = {label(instr.number, FORWARD), label(instr.number, BACKWARD)}
    else:
        targets = {label(instr.number, instr.direction)}
    if instr.forward:
        return fsearch(X, i, targets)
    return bsearch(X, i, targets)


def cg_step(X: CgInSeq, position: int, general: bool = False, k: Optional[int] = None) -> Step:
    """One extraction step; with `k` set, gotos numbered up to k are relative jumps."""
    if not X.in_range(position):
        return DEADLOCK
    instr = X.inst(position)
    if isinstance(instr, LabelInstr):
        return Transfer(position + instr.direction.sign)
    if isinstance(instr, GotoInstr):
        if k is not None and instr.number <= k:
            if instr.number == 0:
                return DEADLOCK
            return Transfer(position + instr.direction.sign * instr.number)
        return Transfer(goto_target(X, position, general))
    return c_step(instr, position)


def _step_function(X: CgInSeq, general: bool = False, k: Optional[int] = None) -> Callable[[int], Step]:
    def step(position: int) -> Step:
        return cg_step(X, position, general, k)

    return step


def cg_behavior_at(X: CgInSeq, i: int) -> ThreadSpec:
    return extract(_step_function(X), i)


def cg_left(X: CgInSeq) -> ThreadSpec:
    return cg_behavior_at(X, 1)


def cg_right(X: CgInSeq) -> ThreadSpec:
    return cg_behavior_at(X, len(X))


def cgp_behavior_at(X: CgInSeq, i: int) -> ThreadSpec:
    return extract(_step_function(X, general=True), i)


def cg_rel_behavior_at(X: CgInSeq, i: int, k: int) -> ThreadSpec:
    if k < 2:
        raise BadK(f"relative goto semantics needs k >= 2, got {k}")
    return extract(_step_function(X, k=k), i)


def cg_accessibility(X: CgInSeq, general: bool = False) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(X) + 2))
    for position in range(1, len(X) + 1):
        move = cg_step(X, position, general)
        if isinstance(move, Emit):
            targets = [move.yes, move.no]
        elif isinstance(move, Transfer):
            targets = [move.target]
        else:
            targets = []
        for target in targets:
            graph.add_edge(position, min(max(target, 0), len(X) + 1))
    return graph


def cg_reachable(X: CgInSeq, i: int) -> Set[int]:
    start = min(max(i, 0), len(X) + 1)
    return nx.descendants(cg_accessibility(X), start) | {start}


def cg_exits(X: CgInSeq) -> Set[int]:
    graph = cg_accessibility(X)
    outside = {0, len(X) + 1}
    return {i for i in range(1, len(X) + 1) if outside.intersection(graph.successors(i))}


def orphaned(X: CgInSeq) -> Set[int]:
    return {
        i
        for i, instr in X.positions()
        if isinstance(instr, GotoInstr) and not X.in_range(goto_target(X, i))
    }


def cg_remove_unreachable(X: CgInSeq, i: int) -> Tuple[CgInSeq, int]:
    if not X.in_range(i):
        raise ValueError(f"start position {i} is outside 1..{len(X)}")
    keep = cg_reachable(X, i)
    instrs = tuple(instr for j, instr in X.positions() if j in keep)
    start = i - sum(1 for j in range(1, i) if j not in keep)
    return CgInSeq(instrs=instrs), start


def cg_dual(instr):
    return dual(instr)


def cg_rev(X: CgInSeq) -> CgInSeq:
    return rev(X)


def _label_goto_positions(X: CgInSeq) -> List[int]:
    return [i for i, instr in X.positions() if isinstance(instr, (LabelInstr, GotoInstr))]


def label_relations(X: CgInSeq) -> LabelRelations:
    positions = _label_goto_positions(X)
    gotos = [i for i in positions if isinstance(X.inst(i), GotoInstr)]
    targets = {i: min(max(goto_target(X, i), 0), len(X) + 1) for i in gotos}

    corr = [
        (i, j)
        for n, i in enumerate(positions)
        for j in positions[n + 1:]
        if X.inst(i).direction is X.inst(j).direction and X.inst(i).number == X.inst(j).number
    ]
    gacc = [(i, targets[i]) for i in gotos if X.in_range(targets[i])]
    te = [
        (i, j)
        for n, i in enumerate(gotos)
        for j in gotos[n + 1:]
        if X.inst(i) == X.inst(j) and targets[i] == targets[j]
    ]

    graph = nx.Graph()
    graph.add_nodes_from(positions)
    graph.add_edges_from(gacc)
    graph.add_edges_from(te)
    classes = sorted((sorted(component) for component in nx.connected_components(graph)), key=min)
    return LabelRelations(corr=corr, gacc=gacc, te=te, classes=classes)


def is_lnf(X: CgInSeq) -> bool:
    relations = label_relations(X)
    return all(relations.related(i, j) for i, j in relations.corr)


def _renumber(instr, number: int):
    return instr.model_copy(update={"number": number})


def to_lnf(X: CgInSeq) -> CgInSeq:
    """Relabel every class of related labels and gotos with its own number, 1..n."""
    relations = label_relations(X)
    numbers = {i: n for n, cls in enumerate(relations.classes, start=1) for i in cls}
    logger.debug(f"to_lnf: {len(relations.classes)} label classes")
    instrs = tuple(
        _renumber(instr, numbers[i]) if i in numbers else instr for i, instr in X.positions()
    )
    return CgInSeq(instrs=instrs)


def free_one(X: CgInSeq, number: int) -> CgInSeq:
    instrs = tuple(
        _renumber(u, u.number + 1) if isinstance(u, (LabelInstr, GotoInstr)) and u.number >= number else u
        for u in X.instrs
    )
    return CgInSeq(instrs=instrs)


def free_seq(X: CgInSeq, numbers: Sequence[int]) -> CgInSeq:
    for number in numbers:
        X = free_one(X, number)
    return X


def left_gadget(k: int) -> List:
    instrs = [label(1), goto(0), label(0, BACKWARD)]
    for n in range(2, k + 1):
        instrs += [label(n), goto(n - 1)]
    return instrs


def right_gadget(k: int) -> List:
    instrs = []
    for n in range(k, 1, -1):
        instrs += [goto(n - 1, BACKWARD), label(n, BACKWARD)]
    return instrs + [label(0), goto(0, BACKWARD), label(1, BACKWARD)]


def _as_relative(u, k: int):
    if isinstance(u, LabelInstr) and u.number <= k:
        return goto(1, u.direction)
    return u


def rel_block(u, k: int) -> List:
    middle = _as_relative(u, k)
    if u.forward:
        body = [label(0), middle, goto(1), goto(2)]
    else:
        body = [goto(2, BACKWARD), goto(1, BACKWARD), middle, label(0, BACKWARD)]
    return left_gadget(k) + body + right_gadget(k)


def rel_k(X: CgInSeq, k: int) -> CgInSeq:
    """Emulate relative jumps of distance up to k with labels and gotos.

    Args:
        X: the sequence whose gotos numbered up to k are read as relative jumps
        k: the largest emulated distance

    Returns:
        CgInSeq: 4k+6 instructions per instruction of X
    """
    if k < 2:
        raise BadK(f"rel_k needs k >= 2, got {k}")
    return CgInSeq(instrs=tuple(v for u in X.instrs for v in rel_block(u, k)))


def rel_block_size(k: int) -> int:
    return 4 * k + 6


def _doubled(u):
    if isinstance(u, (LabelInstr, GotoInstr)):
        return _renumber(u, 2 * u.number + (0 if u.forward else 1))
    return u


def to_directional(X: CgInSeq) -> CgInSeq:
    """Split label numbers by direction so either goto semantics gives the same behavior."""
    return CgInSeq(instrs=tuple(_doubled(u) for u in X.instrs))


def _accepting(u) -> List:
    if isinstance(u, LabelInstr) and u.number > 2:
        if u.forward:
            return [goto(u.number), label(u.number, BACKWARD), label(u.number)]
        return [label(u.number, BACKWARD), label(u.number), goto(u.number, BACKWARD)]
    return [u]


def _general_blocks(X: CgInSeq) -> Iterable[Tuple[object, List]]:
    freed = free_seq(X, [0, 1, 2])
    for u in freed.instrs:
        yield u, [v for w in rel_block(u, 2) for v in _accepting(w)]


def from_general(X: CgInSeq) -> Tuple[CgInSeq, List[int]]:
    """Translate general-target gotos into directional ones.

    Returns the translated sequence with, for every position i of X, a
    position of the result whose directional behavior equals the general
    behavior of X at i.
    """
    instrs: List = []
    witnesses: List[int] = []
    for _, block in _general_blocks(X):
        witnesses.append(len(instrs) + 1)
        instrs.extend(block)
    return CgInSeq(instrs=tuple(instrs)), witnesses


# Blocks are padded to the length of a label block. Shrinking every block to
# three instructions instead breaks the gadget chains: `+\b;!` already
# differs at position 1.
UNIFORM_BLOCK = 16


def from_general_uniform(X: CgInSeq) -> CgInSeq:
    """Like `from_general`, with every block 16 long.

    Blocks without a label get two unreachable aborts where no step crosses:
    behind the goto pair of a forward block, in front of it in a backward one.
    """
    instrs: List = []
    for u, block in _general_blocks(X):
        if len(block) < UNIFORM_BLOCK:
            seam = 9 if u.forward else 5
            block = block[:seam] + [ABORT, ABORT] + block[seam:]
        instrs.extend(block)
    return CgInSeq(instrs=tuple(instrs))