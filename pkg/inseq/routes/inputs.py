"""Shared argument handling for the commands: reading programs and choosing where extraction starts."""

from typing import Optional

import click

from algebra.c_core import c0_behavior_at, c_behavior_at, cp_behavior_at
from algebra.cg_core import cg_behavior_at, cg_rel_behavior_at, cgp_behavior_at
from algebra.errors import BadK
from algebra.pga_core import pga_behavior
from algebra.translate import program_length
from models.thread import ThreadSpec
from utils.parser import parse_program

PROGRAM_FORMALISMS = ("pga", "c", "c0", "cp", "cg")

# extraction semantics and the grammar each one reads
SEMANTICS = {
    "pga": "pga",
    "c": "c",
    "c0": "c0",
    "cp": "cp",
    "cg": "cg",
    "cgp": "cg",
    "cg-rel": "cg",
}


class StartParam(click.ParamType):
    """`left`, `right` or a position; any integer is a legal position."""

    name = "start"

    def convert(self, value, param, ctx):
        if isinstance(value, int) or value in ("left", "right"):
            return value
        try:
            return int(value)
        except ValueError:
            self.fail(f"{value!r} is not left, right or an integer", param, ctx)


START = StartParam()


def read_program(source, formalism: str):
    return parse_program(source.read(), SEMANTICS.get(formalism, formalism))


def position_of(program, start) -> int:
    if start == "left":
        return 1
    if start == "right":
        return program_length(program)
    return start


def behavior(formalism: str, program, start="left", k: Optional[int] = None) -> ThreadSpec:
    """Extract the thread of `program` under the semantics named by `formalism`."""
    if formalism == "spec":
        return program
    i = position_of(program, start)
    if formalism == "pga":
        return pga_behavior(program, i)
    if formalism == "c":
        return c_behavior_at(program, i)
    if formalism == "c0":
        return c0_behavior_at(program, i)
    if formalism == "cp":
        return cp_behavior_at(program, i)
    if formalism == "cg":
        return cg_behavior_at(program, i)
    if formalism == "cgp":
        return cgp_behavior_at(program, i)
    if k is None:
        raise BadK("relative goto semantics needs --k")
    return cg_rel_behavior_at(program, i, k)
