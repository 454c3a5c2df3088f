"""Regular threads: extraction engine, approximation, residuals and bisimulation."""

import logging
from collections import deque
from typing import Callable, Dict, Hashable, List, NamedTuple, Sequence, Union

import networkx as nx

from algebra.errors import InfiniteThread
from models.thread import DEAD, HALT, Dead, Halt, Test, ThreadSpec

logger = logging.getLogger(__name__)


class Emit(NamedTuple):
    action: str
    yes: int
    no: int


class Finish(NamedTuple):
    state: Union[Halt, Dead]


class Transfer(NamedTuple):
    target: int


Step = Union[Emit, Finish, Transfer]

STOP = Finish(HALT)
DEADLOCK = Finish(DEAD)


def extract(step: Callable[[int], Step], start: int) -> ThreadSpec:
    """Build the thread reached from `start` under a per-position step function.

    Chains of transfers are followed until a position emits an action or
    finishes; a chain that revisits a position never performs an action and
    yields D.
    """
    resolved: Dict[int, Hashable] = {}

    def resolve(position: int) -> Hashable:
        if position in resolved:
            return resolved[position]
        chain = []
        seen = set()
        current = position
        while True:
            if current in resolved:
                outcome = resolved[current]
                break
            move = step(current)
            if isinstance(move, Transfer):
                if current in seen:
                    outcome = "D"
                    break
                seen.add(current)
                chain.append(current)
                current = move.target
            elif isinstance(move, Finish):
                outcome = move.state.kind
                break
            else:
                outcome = current
                break
        for visited in chain:
            resolved[visited] = outcome
        resolved[current] = outcome
        return outcome

    index: Dict[Hashable, int] = {}
    states: List = []
    pending = deque()

    def intern(key: Hashable) -> int:
        if key not in index:
            index[key] = len(states)
            states.append(None)
            pending.append(key)
        return index[key]

    entry = intern(resolve(start))
    while pending:
        key = pending.popleft()
        if key == "S":
            states[index[key]] = HALT
        elif key == "D":
            states[index[key]] = DEAD
        else:
            move = step(key)
            yes = intern(resolve(move.yes))
            no = intern(resolve(move.no))
            states[index[key]] = Test(action=move.action, yes=yes, no=no)
    return ThreadSpec.of(states, entry)


def state_graph(spec: ThreadSpec) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(spec.states)))
    for index, state in enumerate(spec.states):
        if isinstance(state, Test):
            graph.add_edges_from((index, successor) for successor in state.successors)
    return graph


def is_finite(spec: ThreadSpec) -> bool:
    return nx.is_directed_acyclic_graph(state_graph(spec))


def to_tree(spec: ThreadSpec):
    """Nested-tuple form of a finite thread: "S", "D" or (action, yes, no)."""
    if not is_finite(spec):
        raise InfiniteThread("the thread has a reachable loop")
    memo: Dict[int, object] = {}

    def build(index: int):
        if index not in memo:
            state = spec.states[index]
            if isinstance(state, Test):
                memo[index] = (state.action, build(state.yes), build(state.no))
            else:
                memo[index] = state.kind
        return memo[index]

    return build(spec.entry)


def approximate(spec: ThreadSpec, n: int) -> ThreadSpec:
    """The thread cut off after n actions; what lies deeper becomes D."""
    states: List = [DEAD, HALT]
    layer = [0] * len(spec.states)
    for _ in range(n):
        offset = len(states)
        for state in spec.states:
            if isinstance(state, Test):
                states.append(Test(action=state.action, yes=layer[state.yes], no=layer[state.no]))
            else:
                states.append(state)
        layer = [offset + index for index in range(len(spec.states))]
    return ThreadSpec.of(states, layer[spec.entry])


def _number(keys: Sequence[Hashable]) -> List[int]:
    ids: Dict[Hashable, int] = {}
    return [ids.setdefault(key, len(ids)) for key in keys]


def bisimulation_blocks(states: Sequence) -> List[int]:
    """Coarsest stable partition of the states, as one block id per state."""

    def initial(state) -> Hashable:
        if isinstance(state, Test):
            return ("test", state.action)
        return (state.kind,)

    blocks = _number([initial(state) for state in states])
    while True:
        keys = [
            (blocks[index], blocks[state.yes], blocks[state.no])
            if isinstance(state, Test)
            else (blocks[index],)
            for index, state in enumerate(states)
        ]
        refined = _number(keys)
        if max(refined) == max(blocks):
            return refined
        blocks = refined


def _disjoint_union(first: ThreadSpec, second: ThreadSpec) -> List:
    shift = len(first.states)
    states = list(first.states)
    for state in second.states:
        if isinstance(state, Test):
            state = Test(action=state.action, yes=state.yes + shift, no=state.no + shift)
        states.append(state)
    return states


def bisimilar(first: ThreadSpec, second: ThreadSpec) -> bool:
    blocks = bisimulation_blocks(_disjoint_union(first, second))
    return blocks[first.entry] == blocks[len(first.states) + second.entry]


def minimize(spec: ThreadSpec) -> ThreadSpec:
    blocks = bisimulation_blocks(spec.states)
    logger.debug(f"minimize: {len(spec)} states into {len(set(blocks))} blocks")
    quotient: Dict[int, object] = {}
    for index, state in enumerate(spec.states):
        block = blocks[index]
        if block in quotient:
            continue
        if isinstance(state, Test):
            state = Test(action=state.action, yes=blocks[state.yes], no=blocks[state.no])
        quotient[block] = state
    return ThreadSpec.of([quotient[block] for block in range(len(quotient))], blocks[spec.entry])


def residuals(spec: ThreadSpec) -> frozenset:
    return frozenset(nx.descendants(state_graph(spec), spec.entry) | {spec.entry})


def _residual_indices(spec: ThreadSpec, n: int) -> List[int]:
    level = [spec.entry]
    for _ in range(n):
        level = [
            successor
            for index in level
            if isinstance(spec.states[index], Test)
            for successor in spec.states[index].successors
        ]
    return level


def n_residuals(spec: ThreadSpec, n: int) -> List[ThreadSpec]:
    return [spec.rooted_at(index) for index in _residual_indices(spec, n)]


def action_power(action: str, n: int, tail: ThreadSpec) -> ThreadSpec:
    if n < 1:
        raise ValueError("action_power needs n >= 1")
    states: List = [Test(action=action, yes=k + 1, no=k + 1) for k in range(n - 1)]
    offset = n
    entry_of_tail = offset + tail.entry
    states.append(Test(action=action, yes=entry_of_tail, no=entry_of_tail))
    for state in tail.states:
        if isinstance(state, Test):
            state = Test(action=state.action, yes=state.yes + offset, no=state.no + offset)
        states.append(state)
    return ThreadSpec.of(states, 0)


def has_a_plus_n_property(spec: ThreadSpec, action: str, n: int) -> bool:
    if not bisimilar(approximate(spec, n), action_power(action, n, ThreadSpec.dead())):
        return False
    blocks = bisimulation_blocks(spec.states)
    deepest = [blocks[index] for index in _residual_indices(spec, n)]
    if len(set(deepest)) != 2**n:
        return False
    shallower = {blocks[index] for m in range(n) for index in _residual_indices(spec, m)}
    return shallower.isdisjoint(deepest)
