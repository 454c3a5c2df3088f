from typing import Annotated, Tuple, Union

from pydantic import Field

from models.inseq import InSeq
from models.instructions import (
    AbortInstr,
    BasicInstr,
    HaltInstr,
    JumpInstr,
    JumpZeroInstr,
    PostTestInstr,
    TestInstr,
)

CInstr = Annotated[
    Union[BasicInstr, TestInstr, JumpInstr, AbortInstr, HaltInstr],
    Field(discriminator="kind"),
]

# C with a single jump of distance zero in place of the abort instruction.
C0Instr = Annotated[
    Union[BasicInstr, TestInstr, JumpInstr, JumpZeroInstr, HaltInstr],
    Field(discriminator="kind"),
]

# C with non-directional postconditional tests in place of the directional ones.
CpInstr = Annotated[
    Union[BasicInstr, PostTestInstr, JumpInstr, AbortInstr, HaltInstr],
    Field(discriminator="kind"),
]


class CInSeq(InSeq):
    instrs: Tuple[CInstr, ...] = Field(..., min_length=1)

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "instrs": [
                    {"kind": "basic", "direction": "/", "action": "a"},
                    {"kind": "test", "direction": "/", "positive": True, "action": "a"},
                    {"kind": "halt"},
                    {"kind": "jump", "direction": "\\", "counter": 3},
                ]
            }
        }


class C0InSeq(InSeq):
    instrs: Tuple[C0Instr, ...] = Field(..., min_length=1)


class CpInSeq(InSeq):
    instrs: Tuple[CpInstr, ...] = Field(..., min_length=1)
