"""PGA terms: canonical forms and thread extraction."""

import logging
from typing import Callable, List, Optional, Tuple

from algebra.errors import EmptyTerm
from algebra.thread_core import DEADLOCK, STOP, Emit, Step, Transfer, bisimilar, extract
from models.pga import PgaBasic, PgaConcat, PgaJump, PgaRepeat, PgaTerm, PgaTest
from models.thread import ThreadSpec

logger = logging.getLogger(__name__)

Body = List
Canon = Tuple[Body, Optional[Body]]


def _canon(tree) -> Canon:
    if isinstance(tree, PgaConcat):
        prefix: Body = []
        for part in tree.parts:
            head, loop = _canon(part)
            prefix.extend(head)
            if loop is not None:
                # nothing to the right of a repetition is ever reached
                return prefix, loop
        return prefix, None
    if isinstance(tree, PgaRepeat):
        head, loop = _canon(tree.body)
        if loop is not None:
            return head, loop
        if not head:
            return [], None
        return [], head
    return [tree], None


def fst(tree) -> PgaTerm:
    """Bring a parse tree into first canonical form.

    Args:
        tree: a `PgaConcat`/`PgaRepeat` tree or a single instruction

    Returns:
        PgaTerm: `X` or `X;(Y)^w` with X and Y free of repetition
    """
    prefix, loop = _canon(tree)
    if not prefix and not loop:
        raise EmptyTerm("the term denotes an empty instruction sequence")
    return PgaTerm(prefix=tuple(prefix), loop=tuple(loop or ()))


def _normalize(position: int, n: int, m: int) -> Optional[int]:
    if position <= n + m:
        return position
    if m == 0:
        return None
    return n + 1 + (position - n - 1) % m


def _step_function(term: PgaTerm) -> Callable[[int], Step]:
    body = term.prefix + term.loop
    n, m = len(term.prefix), len(term.loop)

    def step(position: int) -> Step:
        current = _normalize(position, n, m)
        if current is None or current < 1:
            return DEADLOCK
        if current != position:
            return Transfer(current)
        instr = body[current - 1]
        if isinstance(instr, PgaBasic):
            return Emit(instr.action, current + 1, current + 1)
        if isinstance(instr, PgaTest):
            if instr.positive:
                return Emit(instr.action, current + 1, current + 2)
            return Emit(instr.action, current + 2, current + 1)
        if isinstance(instr, PgaJump):
            if instr.counter == 0:
                return DEADLOCK
            return Transfer(current + instr.counter)
        return STOP

    return step


def pga_behavior(term: PgaTerm, start: int = 1) -> ThreadSpec:
    return extract(_step_function(term), start)


def _is_jump(instr) -> bool:
    return isinstance(instr, PgaJump) and instr.counter > 0


def _reduce_loop_counters(prefix: Body, loop: Body) -> Canon:
    m = len(loop)
    reduced = []
    for instr in loop:
        if isinstance(instr, PgaJump):
            instr = PgaJump(counter=instr.counter % m)
        reduced.append(instr)
    return prefix, reduced


def _shorten_prefix_jumps(prefix: Body, loop: Body) -> Canon:
    n, m = len(prefix), len(loop)
    if m == 0:
        return prefix, loop
    shortened = []
    for position, instr in enumerate(prefix, start=1):
        if _is_jump(instr):
            target = _normalize(position + instr.counter, n, m)
            instr = PgaJump(counter=target - position)
        shortened.append(instr)
    return shortened, loop


def _chase(body: Body, position: int, n: int, m: int) -> int:
    """Counter that skips the whole jump chain starting at `position`; 0 on divergence."""
    raw = position + body[position - 1].counter
    visited = {position}
    while True:
        target = _normalize(raw, n, m)
        if target is None:
            return raw - position
        instr = body[target - 1]
        if isinstance(instr, PgaJump) and instr.counter == 0:
            return 0
        if not _is_jump(instr):
            break
        if target in visited:
            return 0
        visited.add(target)
        raw = target + instr.counter
    if target > position:
        return target - position
    return target - position + m


def _collapse_chains(prefix: Body, loop: Body) -> Canon:
    body = prefix + loop
    n, m = len(prefix), len(loop)
    collapsed = [
        PgaJump(counter=_chase(body, position, n, m)) if _is_jump(instr) else instr
        for position, instr in enumerate(body, start=1)
    ]
    return collapsed[:n], collapsed[n:]


def _congruent(first, second, period: int) -> bool:
    if isinstance(first, PgaJump) and isinstance(second, PgaJump):
        return first.counter % period == second.counter % period
    return first == second


def _minimal_period(prefix: Body, loop: Body) -> Canon:
    m = len(loop)
    for period in range(1, m):
        if m % period:
            continue
        if all(_congruent(loop[q], loop[q % period], period) for q in range(m)):
            return prefix, _reduce_loop_counters([], loop[:period])[1]
    return prefix, loop


def _minimal_prefix(prefix: Body, loop: Body) -> Canon:
    prefix, loop = list(prefix), list(loop)
    while prefix and loop and prefix[-1] == loop[-1]:
        prefix.pop()
        loop.insert(0, loop.pop())
    return prefix, loop


SND_STAGES = (
    ("reduce loop counters", _reduce_loop_counters),
    ("shorten prefix jumps", _shorten_prefix_jumps),
    ("collapse jump chains", _collapse_chains),
    ("minimal period", _minimal_period),
    ("minimal prefix", _minimal_prefix),
)


def snd(term: PgaTerm, check: bool = False) -> PgaTerm:
    """Second canonical form: no chained jumps, minimal counters, loop and prefix.

    Args:
        term: a term in first canonical form
        check: compare the behavior before and after every rewrite stage

    Returns:
        PgaTerm: the structurally congruent term in second canonical form
    """
    current = term
    while True:
        before = current
        for name, stage in SND_STAGES:
            prefix, loop = stage(list(current.prefix), list(current.loop))
            rewritten = PgaTerm(prefix=tuple(prefix), loop=tuple(loop))
            if rewritten != current:
                logger.debug(f"snd {name}: {current} -> {rewritten}")
                if check and not bisimilar(pga_behavior(current), pga_behavior(rewritten)):
                    logger.error(f"snd {name} changed the behavior of {current}")
                    raise AssertionError(f"snd stage '{name}' changed the behavior of {current}")
            current = rewritten
        if current == before:
            return current
