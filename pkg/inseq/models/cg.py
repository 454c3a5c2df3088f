from typing import Annotated, Tuple, Union

from pydantic import Field

from models.inseq import InSeq
from models.instructions import (
    AbortInstr,
    BasicInstr,
    GotoInstr,
    HaltInstr,
    LabelInstr,
    TestInstr,
)

CgInstr = Annotated[
    Union[BasicInstr, TestInstr, LabelInstr, GotoInstr, AbortInstr, HaltInstr],
    Field(discriminator="kind"),
]


class CgInSeq(InSeq):
    instrs: Tuple[CgInstr, ...] = Field(..., min_length=1)

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "instrs": [
                    {"kind": "basic", "direction": "/", "action": "b"},
                    {"kind": "goto", "direction": "/", "number": 0},
                    {"kind": "basic", "direction": "/", "action": "a"},
                    {"kind": "label", "direction": "/", "number": 0},
                    {"kind": "halt"},
                ]
            }
        }
