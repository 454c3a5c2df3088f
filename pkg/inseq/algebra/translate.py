"""Translations between PGA, C and Cg, as whole routes and as their stages."""

import logging
from typing import Callable, Dict, List, NamedTuple, Optional

from algebra.c_core import (
    c0_behavior_at,
    c0_to_c,
    c_behavior_at,
    c_left,
    c_right,
    c_to_c0,
    c_to_cp,
    cp_behavior_at,
    cp_to_c,
    max_jump,
)
from algebra.cg_core import (
    cg_behavior_at,
    cg_left,
    cg_right,
    cgp_behavior_at,
    fsearch,
    bsearch,
    from_general,
    from_general_uniform,
    rel_k,
    to_directional,
)
from algebra.errors import BadBound, BadK, GotoExceedsK, KTooSmall
from algebra.expressiveness import elim_backward_to_minimal
from algebra.pga_core import pga_behavior, snd
from algebra.thread_core import bisimilar
from models.c import CInSeq
from models.cg import CgInSeq
from models.instructions import (
    ABORT,
    BACKWARD,
    HALT,
    BasicInstr,
    GotoInstr,
    HaltInstr,
    JumpInstr,
    LabelInstr,
    TestInstr,
    basic,
    branch,
    goto,
    jump,
    label,
)
from models.pga import PgaBasic, PgaJump, PgaTerm, PgaTest
from schemas.route import RouteReport

logger = logging.getLogger(__name__)


def _expand(X, block: Callable, cls=CInSeq):
    return cls(instrs=tuple(v for u in X.instrs for v in block(u)))


def _eliminate_backward_block(u) -> List:
    if isinstance(u, BasicInstr):
        if u.forward:
            return [u, jump(2), ABORT]
        return [basic(u.action), jump(4, BACKWARD), ABORT]
    if isinstance(u, TestInstr):
        test = branch(u.action, u.positive)
        if u.forward:
            return [test, jump(2), jump(4)]
        return [test, jump(4, BACKWARD), jump(8, BACKWARD)]
    if isinstance(u, JumpInstr):
        return [jump(3 * u.counter, u.direction), ABORT, ABORT]
    if isinstance(u, HaltInstr):
        return [u, ABORT, ABORT]
    return [ABORT, ABORT, ABORT]


def eliminate_backward(X: CInSeq) -> CInSeq:
    """Rewrite backward basic and test instructions as forward ones, three per instruction."""
    return _expand(X, _eliminate_backward_block)


def to_program(X: CInSeq, m: int) -> CInSeq:
    """Guard X with m aborts on each side so that no position exits."""
    if m < 2 or m < max_jump(X):
        raise BadBound(f"bound {m} must be at least 2 and at least the largest jump {max_jump(X)}")
    guard = (ABORT,) * m
    instrs = (jump(m + 1),) + guard + X.instrs + guard + (jump(m + 1, BACKWARD),)
    return CInSeq(instrs=instrs)


def _to_pga(u, n: int):
    if isinstance(u, BasicInstr):
        return PgaBasic(action=u.action)
    if isinstance(u, TestInstr):
        return PgaTest(positive=u.positive, action=u.action)
    if isinstance(u, JumpInstr):
        return PgaJump(counter=u.counter if u.forward else n - u.counter)
    if isinstance(u, HaltInstr):
        return u
    return PgaJump(counter=0)


def c2pga(X: CInSeq) -> PgaTerm:
    forward_only = eliminate_backward(X)
    program = to_program(forward_only, max(2, max_jump(forward_only)))
    n = len(program)
    return PgaTerm(loop=tuple(_to_pga(u, n) for u in program.instrs))


def _to_c(u):
    if isinstance(u, PgaBasic):
        return basic(u.action)
    if isinstance(u, PgaTest):
        return branch(u.action, u.positive)
    if isinstance(u, PgaJump):
        return jump(u.counter) if u.counter else ABORT
    return HALT


def pga2c(term: PgaTerm, check: bool = False) -> CInSeq:
    """Translate a PGA term through its second canonical form."""
    canonical = snd(term, check=check)
    instrs = [_to_c(u) for u in canonical.prefix + canonical.loop]
    m = len(canonical.loop)
    if m:
        instrs += [jump(m, BACKWARD)] * max(2, m - 1)
    return CInSeq(instrs=tuple(instrs))


def max_goto_label(X: CgInSeq) -> int:
    return max((u.number for u in X.instrs if isinstance(u, GotoInstr)), default=0)


def _positional_block(u, i: int, k: int) -> List:
    def rem(position: int) -> int:
        return position % (k + 1)

    if isinstance(u, BasicInstr):
        step = u.direction.sign
        body = [basic(u.action), goto(rem(i + step), u.direction)]
    elif isinstance(u, TestInstr):
        step = u.direction.sign
        body = [
            branch(u.action, u.positive),
            goto(rem(i + step), u.direction),
            goto(rem(i + 2 * step), u.direction),
        ]
    elif isinstance(u, JumpInstr):
        body = [goto(rem(i + u.direction.sign * u.counter), u.direction)]
    else:
        body = [u]
    r = rem(i)
    return [goto(r), label(r, BACKWARD), label(r)] + body + [goto(r, BACKWARD)]


def c2cg_positional(X: CInSeq, k: int) -> CgInSeq:
    """Replace each instruction by a guarded block; labels repeat with period k+1."""
    if k < 2:
        raise BadK(f"c2cg needs k >= 2, got {k}")
    if max_jump(X) > k:
        raise KTooSmall(f"a jump over {max_jump(X)} needs k >= {max_jump(X)}, got {k}")
    instrs = tuple(v for i, u in X.positions() for v in _positional_block(u, i, k))
    return CgInSeq(instrs=instrs)


def c2cg(X: CInSeq) -> CgInSeq:
    return c2cg_positional(X, max(max_jump(X), 2))


def _jumps_as_gotos(u):
    if isinstance(u, JumpInstr):
        return goto(u.counter, u.direction)
    return u


def c2cg_hom(X: CInSeq, k: int) -> CgInSeq:
    if k < 2:
        raise BadK(f"c2cg-hom needs k >= 2, got {k}")
    if max_jump(X) > k:
        raise KTooSmall(f"a jump over {max_jump(X)} needs k >= {max_jump(X)}, got {k}")
    return rel_k(CgInSeq(instrs=tuple(_jumps_as_gotos(u) for u in X.instrs)), k)


def _cg2c_one(X: CgInSeq, i: int):
    u = X.inst(i)
    if isinstance(u, GotoInstr):
        if u.forward:
            return jump(fsearch(X, i, {label(u.number)}) - i)
        return jump(i - bsearch(X, i, {label(u.number, BACKWARD)}), BACKWARD)
    if isinstance(u, LabelInstr):
        return jump(1, u.direction)
    return u


def cg2c(X: CgInSeq) -> CInSeq:
    """Replace labels by unit jumps and gotos by jumps to their target; orphans jump out of range."""
    return CInSeq(instrs=tuple(_cg2c_one(X, i) for i in range(1, len(X) + 1)))


def _highway_block(u, k: int) -> List:
    width = 2 * k + 5
    if isinstance(u, BasicInstr):
        head = basic(u.action)
    elif isinstance(u, TestInstr):
        head = branch(u.action, u.positive)
    elif isinstance(u, LabelInstr):
        head = jump(1)
    elif isinstance(u, GotoInstr):
        head = jump(k + u.number + 4) if u.forward else jump(u.number + 3)
    else:
        head = u

    if u.forward:
        following = [jump(2 * k + 4), jump(4 * k + 8)]
    else:
        following = [jump(2 * k + 6, BACKWARD), jump(4 * k + 12, BACKWARD)]

    left = [jump(width, BACKWARD)] * (k + 1)
    right = [jump(width)] * (k + 1)
    if isinstance(u, LabelInstr) and u.number <= k:
        if u.forward:
            right[u.number] = jump(k + u.number + 4, BACKWARD)
        else:
            left[u.number] = jump(u.number + 3, BACKWARD)
    return [head] + following + left + right


def cg2c_hom(X: CgInSeq, k: int) -> CInSeq:
    """Lay a highway of 2k+2 jump lanes between the instructions of X.

    Args:
        X: a Cg sequence without gotos numbered above k
        k: the highest goto number served by a lane

    Returns:
        CInSeq: 2k+5 instructions per instruction of X
    """
    if k < 0:
        raise BadK(f"cg2c-hom needs k >= 0, got {k}")
    if max_goto_label(X) > k:
        raise GotoExceedsK(f"goto number {max_goto_label(X)} has no lane for k = {k}")
    return _expand(X, lambda u: _highway_block(u, k))


def _uniform(source: Callable, target: Callable, factor: int, both_ends: bool = True) -> Callable:
    def check(X, Y, k) -> bool:
        for i in range(1, len(X) + 1):
            expected = source(X, i)
            if not bisimilar(expected, target(Y, factor * (i - 1) + 1)):
                return False
            if both_ends and not bisimilar(expected, target(Y, factor * i)):
                return False
        return True

    return check


def _left_right(source_left: Callable, source_right: Callable, target_left: Callable, target_right: Callable) -> Callable:
    def check(X, Y, k) -> bool:
        return bisimilar(source_left(X), target_left(Y)) and bisimilar(source_right(X), target_right(Y))

    return check


def _from_general_check(X, Y, k) -> bool:
    _, witnesses = from_general(X)
    return all(
        bisimilar(cgp_behavior_at(X, i), cg_behavior_at(Y, j)) for i, j in enumerate(witnesses, start=1)
    )


class Route(NamedTuple):
    source: str
    target: str
    apply: Callable
    factor: Callable[[Optional[int]], Optional[int]]
    correspondence: str
    check: Callable
    needs_k: bool = False
    checked: bool = False


def _default_bound(X: CInSeq) -> int:
    return max(2, max_jump(X))


ROUTES: Dict[str, Route] = {
    "c2pga": Route(
        "c", "pga", lambda X, k: c2pga(X), lambda k: None, "|X| = |Y|",
        lambda X, Y, k: bisimilar(c_left(X), pga_behavior(Y)),
    ),
    "pga2c": Route(
        "pga", "c", lambda X, k, check=False: pga2c(X, check), lambda k: None, "|X| = |Y|",
        lambda X, Y, k: bisimilar(pga_behavior(X), c_left(Y)),
        checked=True,
    ),
    "c2cg": Route(
        "c", "cg", lambda X, k: c2cg(X), lambda k: None, "left and right behavior",
        _left_right(c_left, c_right, cg_left, cg_right),
    ),
    "c2cg-positional": Route(
        "c", "cg", c2cg_positional, lambda k: None, "left and right behavior",
        _left_right(c_left, c_right, cg_left, cg_right), needs_k=True,
    ),
    "c2cg-hom": Route(
        "c", "cg", c2cg_hom, lambda k: 4 * k + 6, "|i,X| = |b(i-1)+1,Y| = |bi,Y|",
        lambda X, Y, k: _uniform(c_behavior_at, cg_behavior_at, 4 * k + 6)(X, Y, k), needs_k=True,
    ),
    "cg2c": Route(
        "cg", "c", lambda X, k: cg2c(X), lambda k: 1, "|i,X| = |i,Y|",
        _uniform(cg_behavior_at, c_behavior_at, 1),
    ),
    "cg2c-hom": Route(
        "cg", "c", cg2c_hom, lambda k: 2 * k + 5, "|i,X| = |b(i-1)+1,Y|",
        lambda X, Y, k: _uniform(cg_behavior_at, c_behavior_at, 2 * k + 5, both_ends=False)(X, Y, k),
        needs_k=True,
    ),
    "eliminate-backward": Route(
        "c", "c", lambda X, k: eliminate_backward(X), lambda k: 3, "|i,X| = |3(i-1)+1,Y|",
        _uniform(c_behavior_at, c_behavior_at, 3, both_ends=False),
    ),
    "elim-minimal": Route(
        "c", "c", lambda X, k: elim_backward_to_minimal(X), lambda k: 3, "|i,X| = |3(i-1)+1,Y|",
        _uniform(c_behavior_at, c_behavior_at, 3, both_ends=False),
    ),
    "to-program": Route(
        "c", "c", lambda X, k: to_program(X, _default_bound(X) if k is None else k), lambda k: None,
        "left and right behavior", _left_right(c_left, c_right, c_left, c_right),
    ),
    "c-to-cp": Route(
        "c", "cp", lambda X, k: c_to_cp(X), lambda k: 5, "|i,X| = |5(i-1)+1,Y| = |5i,Y|",
        _uniform(c_behavior_at, cp_behavior_at, 5),
    ),
    "cp-to-c": Route(
        "cp", "c", lambda X, k: cp_to_c(X), lambda k: 4, "|i,X| = |4(i-1)+1,Y| = |4i,Y|",
        _uniform(cp_behavior_at, c_behavior_at, 4),
    ),
    "c-to-c0": Route(
        "c", "c0", lambda X, k: c_to_c0(X), lambda k: 1, "|i,X| = |i,Y|",
        _uniform(c_behavior_at, c0_behavior_at, 1),
    ),
    "c0-to-c": Route(
        "c0", "c", lambda X, k: c0_to_c(X), lambda k: 1, "|i,X| = |i,Y|",
        _uniform(c0_behavior_at, c_behavior_at, 1),
    ),
    "to-directional": Route(
        "cg", "cg", lambda X, k: to_directional(X), lambda k: 1, "|i,X| = |i,Y| under general targets",
        _uniform(cg_behavior_at, cgp_behavior_at, 1),
    ),
    "from-general": Route(
        "cg", "cg", lambda X, k: from_general(X)[0], lambda k: None,
        "general |i,X| = |j_i,Y| with j_i the start of block i", _from_general_check,
    ),
    "from-general-uniform": Route(
        "cg", "cg", lambda X, k: from_general_uniform(X), lambda k: 16,
        "general |i,X| = |16(i-1)+1,Y| = |16i,Y|", _uniform(cgp_behavior_at, cg_behavior_at, 16),
    ),
}


def resolve_k(name: str, X, k: Optional[int], default_k: int) -> Optional[int]:
    """The k a route runs with when the caller left it open."""
    if not ROUTES[name].needs_k or k is not None:
        return k
    if name == "cg2c-hom":
        return max(default_k, max_goto_label(X))
    return max(default_k, max_jump(X))


def run_route(name: str, X, k: Optional[int] = None, check: bool = False):
    """Apply a route; `check` behavior-checks the rewrite steps of routes that have them."""
    route = ROUTES[name]
    logger.info(f"translating {program_length(X)} instructions via {name}")
    if route.checked:
        return route.apply(X, k, check)
    return route.apply(X, k)


def route_report(name: str, X, Y, k: Optional[int] = None) -> RouteReport:
    route = ROUTES[name]
    return RouteReport(
        route=name,
        source=route.source,
        target=route.target,
        input_length=program_length(X),
        output_length=program_length(Y),
        factor=route.factor(k),
        k=k,
        correspondence=route.correspondence,
    )


def program_length(value) -> int:
    if isinstance(value, PgaTerm):
        return len(value.prefix) + len(value.loop)
    return len(value)