"""Constructions over restricted instruction sets and the thread families they are measured against."""

import logging
import random
from itertools import islice
from typing import Dict, Hashable, List, Optional

from algebra.errors import InfiniteThread
from algebra.thread_core import is_finite
from models.c import CInSeq
from models.cg import CgInSeq
from models.counter_set import CounterSet
from models.instructions import (
    BACKWARD,
    HALT,
    AbortInstr,
    BasicInstr,
    JumpInstr,
    TestInstr,
    branch,
    goto,
    jump,
    label,
)
from models.thread import DEAD, Test, ThreadSpec

logger = logging.getLogger(__name__)

# how many of the least eligible counters a seeded selection chooses from
SELECTION_WINDOW = 3


def select(counters: CounterSet, n: int, rng: Optional[random.Random] = None) -> int:
    """Pick a member of `counters` that is at least n; the least one unless `rng` is given."""
    if rng is None:
        return counters.min_at_least(n)
    return rng.choice(list(islice(counters.members_at_least(n), SELECTION_WINDOW)))


def _minimal_block(u) -> List:
    if isinstance(u, BasicInstr):
        if u.forward:
            return [branch(u.action), jump(2), jump(1)]
        return [branch(u.action), jump(4, BACKWARD), jump(5, BACKWARD)]
    if isinstance(u, TestInstr):
        test = branch(u.action)
        if u.forward:
            if u.positive:
                return [test, jump(2), jump(4)]
            return [test, jump(5), jump(1)]
        if u.positive:
            return [test, jump(4, BACKWARD), jump(8, BACKWARD)]
        return [test, jump(7, BACKWARD), jump(5, BACKWARD)]
    if isinstance(u, JumpInstr):
        return [jump(3 * u.counter, u.direction), HALT, HALT]
    if isinstance(u, AbortInstr):
        return [jump(1), jump(1, BACKWARD), HALT]
    return [HALT, HALT, HALT]


def elim_backward_to_minimal(X: CInSeq) -> CInSeq:
    """Rewrite X with forward positive tests, jumps and halts only, three per instruction."""
    return CInSeq(instrs=tuple(v for u in X.instrs for v in _minimal_block(u)))


def _require_finite(spec: ThreadSpec) -> None:
    if not is_finite(spec):
        raise InfiniteThread("only finite threads can be built with forward jumps alone")


def forward_only_build(P: ThreadSpec, counters: CounterSet, positive: bool = True) -> CInSeq:
    """Build a sequence of forward tests, forward jumps from `counters` and halts whose left behavior is P.

    Args:
        P: a finite thread
        counters: the admitted forward jump counters
        positive: build with positive tests, negative ones otherwise

    Returns:
        CInSeq: the sequence; it contains no backward instruction
    """
    _require_finite(P)
    memo: Dict[int, CInSeq] = {}

    def build(index: int) -> CInSeq:
        if index in memo:
            return memo[index]
        state = P.states[index]
        if isinstance(state, Test):
            yes, no = build(state.yes), build(state.no)
            first, second = (no, yes) if positive else (yes, no)
            k = counters.min_at_least(len(first) + 1)
            exit_counter = counters.min_at_least(k + len(second))
            repointed = tuple(
                jump(exit_counter) if isinstance(u, JumpInstr) and q + u.counter > len(first) else u
                for q, u in first.positions()
            )
            padding = (HALT,) * (k - len(first) - 1)
            instrs = (branch(state.action, positive), jump(k)) + repointed + padding + second.instrs
            built = CInSeq(instrs=instrs)
        elif state.kind == "S":
            built = CInSeq.of(HALT)
        else:
            built = CInSeq.of(jump(counters.min_at_least(1)))
        memo[index] = built
        return built

    return build(P.entry)


def forward_only_build_cg(P: ThreadSpec, numbers: Optional[CounterSet] = None, positive: bool = True) -> CgInSeq:
    """Build a forward-only Cg sequence whose left behavior is P.

    The least number is kept for an orphaned goto that stands for D; every
    test takes a fresh label number.
    """
    _require_finite(P)
    numbers = numbers or CounterSet.every(1)
    dead = numbers.min_at_least(1)
    fresh = numbers.members_at_least(dead + 1)

    def build(index: int) -> List:
        state = P.states[index]
        if isinstance(state, Test):
            number = next(fresh)
            yes, no = build(state.yes), build(state.no)
            first, second = (no, yes) if positive else (yes, no)
            return [branch(state.action, positive), goto(number)] + first + [label(number)] + second
        if state.kind == "S":
            return [HALT]
        return [goto(dead)]

    return CgInSeq(instrs=tuple(build(P.entry)))


def connect(
    i: int,
    j: int,
    z: int,
    s: int,
    forward: CounterSet,
    backward: CounterSet,
    rng: Optional[random.Random] = None,
) -> Dict[int, object]:
    """Jumps that carry control from position i to a replica of position j.

    The replicas of j lie at j + t(s-1) for t < s. The returned instructions
    are placed right of z.
    """
    r = i + select(forward, z - i + 1, rng)
    l = r - select(backward, max(1, r - j), rng)
    p = (j - l) // s
    p = p + j - (l + p * s)
    placed: Dict[int, object] = {i: jump(r - i)}
    for t in range(p):
        placed[r + t * s] = jump(s)
    placed[r + p * s] = jump(r - l, BACKWARD)
    return placed


def construct_inseq(
    P: ThreadSpec,
    forward: CounterSet,
    backward: CounterSet,
    rng: Optional[random.Random] = None,
) -> CInSeq:
    """Build a C sequence with forward counters from `forward` and backward ones from `backward` whose left behavior is P."""
    spec = ThreadSpec.of(P.states, P.entry)
    n = len(spec.states)
    s = select(forward, 4, rng)
    replica = s * (s - 1)
    z = n * replica
    placed: Dict[int, object] = {}
    for index, state in enumerate(spec.states):
        for r in range(s):
            c = (index * s + r) * (s - 1) + 1
            if isinstance(state, Test):
                placed[c] = branch(state.action)
                placed.update(connect(c + 1, state.yes * replica + 1, z, s, forward, backward, rng))
                z = max(placed)
                placed.update(connect(c + 2, state.no * replica + 1, z, s, forward, backward, rng))
                z = max(placed)
            elif state.kind == "S":
                placed[c] = HALT
            else:
                placed[c] = jump(select(backward, c, rng), BACKWARD)
    length = max(z - 1, max(placed))
    logger.debug(f"constructed {length} instructions for {n} states with spacing {s}")
    return CInSeq(instrs=tuple(placed.get(position, HALT) for position in range(1, length + 1)))


class _Builder:
    """Accumulates named states and emits a trimmed thread spec."""

    def __init__(self):
        self.index: Dict[Hashable, int] = {}
        self.states: List = []

    def ref(self, key: Hashable) -> int:
        if key not in self.index:
            self.index[key] = len(self.states)
            self.states.append(None)
        return self.index[key]

    def define(self, key: Hashable, state) -> None:
        self.states[self.ref(key)] = state

    def spec(self, entry: Hashable) -> ThreadSpec:
        return ThreadSpec.of(self.states, self.index[entry])


def _bit(m: int, d: int) -> bool:
    return bool((m >> d) & 1)


def gen_a_plus_n_thread(action: str, n: int) -> ThreadSpec:
    """A thread over a single action with the a+n-property.

    After n replies the thread sits in one of 2^n states Q(m, n); Q(m, n)
    survives the next n actions only on the replies spelled by the bits of m.
    """
    if n < 1:
        raise ValueError("n must be positive")
    builder = _Builder()
    builder.define("D", DEAD)
    top = 2 ** n
    for l in range(1, top):
        if l < top // 2:
            yes, no = ("P", 2 * l), ("P", 2 * l + 1)
        else:
            yes, no = ("Q", 2 * l - top, n), ("Q", 2 * l - top + 1, n)
        builder.define(("P", l), Test(action=action, yes=builder.ref(yes), no=builder.ref(no)))
    dead = builder.ref("D")
    for m in range(top):
        builder.define(("Q", m, 0), Test(action=action, yes=dead, no=dead))
        for d in range(n):
            deeper = builder.ref(("Q", m, d))
            if _bit(m, d):
                state = Test(action=action, yes=dead, no=deeper)
            else:
                state = Test(action=action, yes=deeper, no=dead)
            builder.define(("Q", m, d + 1), state)
    return builder.spec(("P", 1))


def gen_one_dir_thread(action: str, n: int) -> ThreadSpec:
    """A thread that cannot be expressed once jump counters are bounded in one direction."""
    if n < 1:
        raise ValueError("n must be positive")
    builder = _Builder()
    builder.define("D", DEAD)
    levels = 2 * n
    top = 2 ** levels
    for l in range(1, top):
        if l < top // 2:
            yes, no = ("P", 2 * l), ("P", 2 * l + 1)
        else:
            yes, no = ("Q", 2 * l - top, levels), ("Q", 2 * l - top + 1, levels)
        builder.define(("P", l), Test(action=action, yes=builder.ref(yes), no=builder.ref(no)))
    for m in range(top):
        builder.define(("Q", m, 0), DEAD)
        back = builder.ref(("P", 2 ** n + m % 2 ** n))
        for d in range(levels):
            deeper = builder.ref(("Q", m, d))
            if _bit(m, d):
                state = Test(action=action, yes=back, no=deeper)
            else:
                state = Test(action=action, yes=deeper, no=back)
            builder.define(("Q", m, d + 1), state)
    return builder.spec(("P", 1))


def gen_c_tree(n: int) -> CInSeq:
    """Binary tree of tests over one action whose 2^n leaves are exits."""
    if n < 1:
        raise ValueError("n must be positive")
    instrs = []
    for i in range(1, 2 ** n):
        instrs += [branch("a"), jump(3 * i - 1), jump(3 * i + 1)]
    return CInSeq(instrs=tuple(instrs))


def gen_cg_tree(n: int) -> CgInSeq:
    """Binary tree of tests whose 2^n leaves are orphaned gotos."""
    if n < 1:
        raise ValueError("n must be positive")
    instrs = []
    for i in range(1, 2 ** n):
        instrs += [label(i), branch("a"), goto(2 * i), goto(2 * i + 1)]
    return CgInSeq(instrs=tuple(instrs))


def forward_counters(X: CInSeq) -> List[int]:
    return [u.counter for u in X.instrs if isinstance(u, JumpInstr) and u.forward]


def backward_counters(X: CInSeq) -> List[int]:
    return [u.counter for u in X.instrs if isinstance(u, JumpInstr) and not u.forward]

