from typing import Annotated, Literal, Tuple, Union

from pydantic import BaseModel, Field, NonNegativeInt, model_validator

from models.instructions import Action, HaltInstr


class PgaBasic(BaseModel):
    kind: Literal["basic"] = "basic"
    action: Action

    class Config:
        frozen = True

    def __str__(self) -> str:
        return self.action


class PgaTest(BaseModel):
    __test__ = False

    kind: Literal["test"] = "test"
    positive: bool = True
    action: Action

    class Config:
        frozen = True

    def __str__(self) -> str:
        return f"{'+' if self.positive else '-'}{self.action}"


class PgaJump(BaseModel):
    """Forward jump; a counter of zero is the canonical divergence instruction."""

    kind: Literal["jump"] = "jump"
    counter: NonNegativeInt

    class Config:
        frozen = True

    def __str__(self) -> str:
        return f"#{self.counter}"


PgaInstr = Annotated[
    Union[PgaBasic, PgaTest, PgaJump, HaltInstr], Field(discriminator="kind")
]


class PgaTerm(BaseModel):
    """A PGA term in first canonical form: `prefix` or `prefix;(loop)^w`."""

    prefix: Tuple[PgaInstr, ...] = ()
    loop: Tuple[PgaInstr, ...] = ()

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "prefix": [
                    {"kind": "test", "positive": False, "action": "c"},
                    {"kind": "test", "positive": False, "action": "c"},
                ],
                "loop": [{"kind": "test", "positive": False, "action": "a"}],
            }
        }

    @model_validator(mode="after")
    def check_not_empty(self) -> "PgaTerm":
        if not self.prefix and not self.loop:
            raise ValueError("a PGA term has at least one instruction")
        return self

    def __str__(self) -> str:
        parts = [str(instr) for instr in self.prefix]
        if self.loop:
            parts.append("(" + ";".join(str(instr) for instr in self.loop) + ")^w")
        return ";".join(parts)

    @property
    def repeating(self) -> bool:
        return bool(self.loop)


class PgaConcat(BaseModel):
    """Parse tree node for `X;Y;...` before canonicalization."""

    kind: Literal["concat"] = "concat"
    parts: Tuple["PgaTree", ...] = ()

    class Config:
        frozen = True


class PgaRepeat(BaseModel):
    """Parse tree node for `(X)^w`."""

    kind: Literal["repeat"] = "repeat"
    body: "PgaTree"

    class Config:
        frozen = True


PgaTree = Annotated[
    Union[PgaBasic, PgaTest, PgaJump, HaltInstr, PgaConcat, PgaRepeat],
    Field(discriminator="kind"),
]

PgaConcat.model_rebuild()
PgaRepeat.model_rebuild()
