"""Readers for the ASCII grammars: thread specs, PGA terms, C/Cg programs and counter sets."""

import re
from typing import Dict, Iterator, List, Tuple

from pydantic import ValidationError

from algebra.errors import ParseError
from algebra.pga_core import fst
from models.c import C0InSeq, CInSeq, CpInSeq
from models.cg import CgInSeq
from models.counter_set import CounterClass, CounterSet
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
from models.pga import PgaBasic, PgaConcat, PgaJump, PgaRepeat, PgaTerm, PgaTest
from models.thread import DEAD, HALT as STOP, Test, ThreadSpec

ACTION = r"[a-z][a-z0-9_]*"

_BASIC = re.compile(rf"([+-]?)([/\\])({ACTION})")
_JUMP = re.compile(r"([/\\])#(\d+)")
_LABEL = re.compile(r"([/\\])([LG])(\d+)")
_POST_TEST = re.compile(rf"([+-])\?({ACTION})")

_PGA_TOKEN = re.compile(rf"\s*(?:(?P<open>\()|(?P<close>\)\^w)|(?P<semi>;)|(?P<instr>[+-]?{ACTION}|#\d+|!))")

_STATE = re.compile(
    rf"P(?P<index>\d+)\s*=\s*(?:(?P<end>[SD])|(?P<action>{ACTION})\s*"
    rf"(?:\?\s*P(?P<yes>\d+)\s*:\s*P(?P<no>\d+)|\.\s*P(?P<next>\d+)))"
)

_COUNTER_TERM = re.compile(
    r"\s*(?:every\s+(?P<modulus>\d+)(?:\s+from\s+(?P<lower>\d+))?(?:\s+offset\s+(?P<residue>\d+))?"
    r"|plus\s*\{(?P<extras>[\d,\s]*)\})\s*(?:,|$)"
)

# instruction kinds each program grammar admits
KINDS = {
    "c": {"basic", "test", "jump", "abort", "halt"},
    "c0": {"basic", "test", "jump", "jump_zero", "halt"},
    "cp": {"basic", "post_test", "jump", "abort", "halt"},
    "cg": {"basic", "test", "label", "goto", "abort", "halt"},
}

SEQUENCES = {"c": CInSeq, "c0": C0InSeq, "cp": CpInSeq, "cg": CgInSeq}


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _tokens(text: str) -> Iterator[Tuple[str, int, int]]:
    """Non-empty `;`/newline separated tokens with their 1-based line and column."""
    for line_number, line in enumerate(text.splitlines(), start=1):
        for match in re.finditer(r"[^;\s]+", line):
            yield match.group(), line_number, match.start() + 1


def parse_instruction(token: str, grammar: str = "cg"):
    """Read one instruction token; the grammar decides what `/#0` means."""
    if token == "#":
        return ABORT
    if token == "!":
        return HALT
    if match := _BASIC.fullmatch(token):
        sign, slash, action = match.groups()
        direction = FORWARD if slash == "/" else BACKWARD
        if not sign:
            return basic(action, direction)
        return branch(action, sign == "+", direction)
    if match := _JUMP.fullmatch(token):
        slash, counter = match.group(1), int(match.group(2))
        if counter == 0:
            if grammar != "c0":
                raise ValueError("a jump of distance zero is only written in the jump-zero variant")
            return JUMP_ZERO
        return jump(counter, FORWARD if slash == "/" else BACKWARD)
    if match := _LABEL.fullmatch(token):
        slash, letter, number = match.groups()
        direction = FORWARD if slash == "/" else BACKWARD
        make = label if letter == "L" else goto
        return make(int(number), direction)
    if match := _POST_TEST.fullmatch(token):
        sign, action = match.groups()
        return post_test(action, sign == "+")
    raise ValueError(f"unknown instruction {token!r}")


def parse_inseq(text: str, grammar: str = "c"):
    """Parse a program of the C family or of Cg.

    Args:
        text: instructions separated by `;` or newlines
        grammar: one of c, c0, cp, cg

    Returns:
        InSeq: a CInSeq, C0InSeq, CpInSeq or CgInSeq
    """
    if grammar not in SEQUENCES:
        raise ParseError(f"unknown program grammar {grammar!r}")
    instrs = []
    for token, line, column in _tokens(text):
        try:
            instr = parse_instruction(token, grammar)
        except ValueError as e:
            raise ParseError(str(e), line, column) from e
        if instr.kind not in KINDS[grammar]:
            raise ParseError(f"{token!r} is not an instruction of {grammar}", line, column)
        instrs.append(instr)
    if not instrs:
        raise ParseError("a program has at least one instruction")
    return SEQUENCES[grammar](instrs=tuple(instrs))


def parse_c(text: str) -> CInSeq:
    return parse_inseq(text, "c")


def parse_cg(text: str) -> CgInSeq:
    return parse_inseq(text, "cg")


def _pga_instr(token: str):
    if token == "!":
        return HALT
    if token.startswith("#"):
        return PgaJump(counter=int(token[1:]))
    if token[0] in "+-":
        return PgaTest(positive=token[0] == "+", action=token[1:])
    return PgaBasic(action=token)


class _PgaReader:
    """Recursive descent over `X;Y` and `(X)^w`."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        offset = 0
        while offset < len(text):
            if not text[offset:].strip():
                break
            match = _PGA_TOKEN.match(text, offset)
            if match is None:
                start = offset + len(text[offset:]) - len(text[offset:].lstrip())
                raise ParseError(f"unexpected {text[start]!r}", *_position(text, start))
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            offset = match.end()
        self.index = 0

    def error(self, message: str) -> ParseError:
        offset = self.tokens[self.index][2] if self.index < len(self.tokens) else len(self.text)
        return ParseError(message, *_position(self.text, offset))

    def peek(self) -> str:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else "end"

    def term(self):
        parts = [self.factor()]
        while self.peek() == "semi":
            self.index += 1
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else PgaConcat(parts=tuple(parts))

    def factor(self):
        kind = self.peek()
        if kind == "instr":
            token = self.tokens[self.index][1]
            self.index += 1
            return _pga_instr(token)
        if kind == "open":
            self.index += 1
            body = self.term()
            if self.peek() != "close":
                raise self.error("expected ')^w'")
            self.index += 1
            return PgaRepeat(body=body)
        raise self.error("expected an instruction or '('")

    def read(self):
        if not self.tokens:
            raise ParseError("a PGA term has at least one instruction")
        tree = self.term()
        if self.index != len(self.tokens):
            raise self.error("expected ';' or the end of the term")
        return tree


def parse_pga_tree(text: str):
    """The parse tree of a PGA term, before canonicalization."""
    return _PgaReader(text).read()


def parse_pga(text: str) -> PgaTerm:
    return fst(parse_pga_tree(text))


def parse_spec(text: str) -> ThreadSpec:
    """Read `P<i> = ...` equations; P0 is the entry, unreachable states are dropped."""
    equations: Dict[int, object] = {}
    references: List[Tuple[int, int, int]] = []
    for piece in re.finditer(r"[^;\n]+", text):
        chunk = piece.group()
        if not chunk.strip():
            continue
        offset = piece.start() + len(chunk) - len(chunk.lstrip())
        match = _STATE.fullmatch(chunk.strip())
        if match is None:
            raise ParseError(f"cannot read equation {chunk.strip()!r}", *_position(text, offset))
        index = int(match["index"])
        if index in equations:
            raise ParseError(f"P{index} is defined twice", *_position(text, offset))
        if match["end"]:
            equations[index] = STOP if match["end"] == "S" else DEAD
            continue
        yes = int(match["yes"] if match["yes"] is not None else match["next"])
        no = int(match["no"] if match["no"] is not None else match["next"])
        equations[index] = (match["action"], yes, no)
        references += [(yes, offset, index), (no, offset, index)]
    if 0 not in equations:
        raise ParseError("the entry P0 is not defined")
    for target, offset, index in references:
        if target not in equations:
            raise ParseError(f"P{index} refers to undefined P{target}", *_position(text, offset))

    order = sorted(equations)
    slot = {index: n for n, index in enumerate(order)}
    states = []
    for index in order:
        equation = equations[index]
        if isinstance(equation, tuple):
            action, yes, no = equation
            equation = Test(action=action, yes=slot[yes], no=slot[no])
        states.append(equation)
    return ThreadSpec.of(states, slot[0])


def parse_counter_set(text: str) -> CounterSet:
    """Read e.g. `every 2 from 4 offset 0, plus {3,5}`."""
    classes: List[CounterClass] = []
    extras: List[int] = []
    offset = 0
    while offset < len(text) and text[offset:].strip():
        match = _COUNTER_TERM.match(text, offset)
        if match is None:
            raise ParseError("expected 'every <m> [from <lo>] [offset <r>]' or 'plus {k,...}'", *_position(text, offset))
        if match["modulus"] is not None:
            try:
                classes.append(
                    CounterClass(
                        modulus=int(match["modulus"]),
                        lower_bound=int(match["lower"] or 1),
                        residue=int(match["residue"] or 0),
                    )
                )
            except ValidationError as e:
                raise ParseError(str(e.errors()[0]["msg"]), *_position(text, offset)) from e
        else:
            extras += [int(k) for k in re.findall(r"\d+", match["extras"])]
        offset = match.end()
    if not classes:
        raise ParseError("a counter set needs at least one 'every' term")
    if 0 in extras:
        raise ParseError("jump counters are positive")
    return CounterSet(classes=tuple(classes), extras=frozenset(extras))


def parse_program(text: str, formalism: str):
    """Read `text` in the grammar of `formalism` (pga, c, c0, cp, cg or spec)."""
    if formalism == "pga":
        return parse_pga(text)
    if formalism == "spec":
        return parse_spec(text)
    return parse_inseq(text, formalism)
