"""Seeded random programs and threads for translation validation."""

import random
from typing import Callable, Dict, List, Sequence

from models.c import C0InSeq, CInSeq, CpInSeq
from models.cg import CgInSeq
from models.instructions import (
    ABORT,
    BACKWARD,
    FORWARD,
    HALT,
    JUMP_ZERO,
    basic,
    branch,
    goto,
    jump,
    label,
    post_test,
)
from models.pga import PgaBasic, PgaJump, PgaTerm, PgaTest
from models.thread import DEAD, HALT as STOP, Test, ThreadSpec

ACTIONS = ("a", "b", "c")
MAX_COUNTER = 6
MAX_LABEL = 3


def _direction(rng: random.Random):
    return rng.choice((FORWARD, BACKWARD))


def _c_instr(rng: random.Random, actions: Sequence[str], max_counter: int):
    kind = rng.choice(("basic", "test", "jump", "jump", "abort", "halt"))
    if kind == "basic":
        return basic(rng.choice(actions), _direction(rng))
    if kind == "test":
        return branch(rng.choice(actions), rng.random() < 0.5, _direction(rng))
    if kind == "jump":
        return jump(rng.randint(1, max_counter), _direction(rng))
    return ABORT if kind == "abort" else HALT


def _cg_instr(rng: random.Random, actions: Sequence[str], max_label: int):
    kind = rng.choice(("basic", "test", "label", "label", "goto", "goto", "abort", "halt"))
    if kind == "label":
        return label(rng.randint(0, max_label), _direction(rng))
    if kind == "goto":
        return goto(rng.randint(0, max_label), _direction(rng))
    if kind == "basic":
        return basic(rng.choice(actions), _direction(rng))
    if kind == "test":
        return branch(rng.choice(actions), rng.random() < 0.5, _direction(rng))
    return ABORT if kind == "abort" else HALT


def random_c(rng: random.Random, max_length: int = 10, actions: Sequence[str] = ACTIONS, max_counter: int = MAX_COUNTER) -> CInSeq:
    length = rng.randint(1, max_length)
    return CInSeq(instrs=tuple(_c_instr(rng, actions, max_counter) for _ in range(length)))


def random_c0(rng: random.Random, max_length: int = 10) -> C0InSeq:
    instrs = [JUMP_ZERO if u == ABORT else u for u in random_c(rng, max_length).instrs]
    return C0InSeq(instrs=tuple(instrs))


def random_cp(rng: random.Random, max_length: int = 10) -> CpInSeq:
    instrs = [
        post_test(u.action, u.positive) if u.kind == "test" else u
        for u in random_c(rng, max_length).instrs
    ]
    return CpInSeq(instrs=tuple(instrs))


def random_cg(rng: random.Random, max_length: int = 10, actions: Sequence[str] = ACTIONS, max_label: int = MAX_LABEL) -> CgInSeq:
    length = rng.randint(1, max_length)
    return CgInSeq(instrs=tuple(_cg_instr(rng, actions, max_label) for _ in range(length)))


def _pga_instr(rng: random.Random, max_counter: int):
    kind = rng.choice(("basic", "test", "jump", "halt"))
    if kind == "basic":
        return PgaBasic(action=rng.choice(ACTIONS))
    if kind == "test":
        return PgaTest(positive=rng.random() < 0.5, action=rng.choice(ACTIONS))
    if kind == "jump":
        return PgaJump(counter=rng.randint(0, max_counter))
    return HALT


def random_pga(rng: random.Random, max_length: int = 10) -> PgaTerm:
    prefix = tuple(_pga_instr(rng, MAX_COUNTER) for _ in range(rng.randint(0, max_length // 2)))
    loop = tuple(_pga_instr(rng, MAX_COUNTER) for _ in range(rng.randint(0 if prefix else 1, max_length // 2 + 1)))
    return PgaTerm(prefix=prefix, loop=loop)


def random_spec(rng: random.Random, max_states: int = 6, actions: Sequence[str] = ACTIONS) -> ThreadSpec:
    size = rng.randint(1, max_states)
    states: List = []
    for _ in range(size):
        roll = rng.random()
        if roll < 0.15:
            states.append(STOP)
        elif roll < 0.25:
            states.append(DEAD)
        else:
            states.append(Test(action=rng.choice(actions), yes=rng.randrange(size), no=rng.randrange(size)))
    return ThreadSpec.of(states, 0)


# generators by source formalism of a route
GENERATORS: Dict[str, Callable[[random.Random, int], object]] = {
    "c": random_c,
    "c0": random_c0,
    "cp": random_cp,
    "cg": random_cg,
    "pga": random_pga,
}
