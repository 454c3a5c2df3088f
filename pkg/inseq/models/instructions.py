from enum import Enum
from typing import Annotated, Literal

from pydantic import BaseModel, NonNegativeInt, PositiveInt, StringConstraints

Action = Annotated[str, StringConstraints(pattern=r"^[a-z][a-z0-9_]*$")]


class Direction(str, Enum):
    FORWARD = "/"
    BACKWARD = "\\"

    def flip(self) -> "Direction":
        if self is Direction.FORWARD:
            return Direction.BACKWARD
        return Direction.FORWARD

    @property
    def sign(self) -> int:
        return 1 if self is Direction.FORWARD else -1


class Instruction(BaseModel):
    class Config:
        frozen = True

    @property
    def forward(self) -> bool:
        """Abort, halt and postconditional tests count as forward instructions."""
        direction = getattr(self, "direction", Direction.FORWARD)
        return direction is Direction.FORWARD

    def dual(self) -> "Instruction":
        direction = getattr(self, "direction", None)
        if direction is None:
            return self
        return self.model_copy(update={"direction": direction.flip()})


class BasicInstr(Instruction):
    kind: Literal["basic"] = "basic"
    direction: Direction = Direction.FORWARD
    action: Action

    def __str__(self) -> str:
        return f"{self.direction.value}{self.action}"


class TestInstr(Instruction):
    __test__ = False

    kind: Literal["test"] = "test"
    direction: Direction = Direction.FORWARD
    positive: bool = True
    action: Action

    def __str__(self) -> str:
        sign = "+" if self.positive else "-"
        return f"{sign}{self.direction.value}{self.action}"


class JumpInstr(Instruction):
    kind: Literal["jump"] = "jump"
    direction: Direction = Direction.FORWARD
    counter: PositiveInt

    def __str__(self) -> str:
        return f"{self.direction.value}#{self.counter}"


class AbortInstr(Instruction):
    kind: Literal["abort"] = "abort"

    def __str__(self) -> str:
        return "#"


class HaltInstr(Instruction):
    kind: Literal["halt"] = "halt"

    def __str__(self) -> str:
        return "!"


class LabelInstr(Instruction):
    kind: Literal["label"] = "label"
    direction: Direction = Direction.FORWARD
    number: NonNegativeInt

    def __str__(self) -> str:
        return f"{self.direction.value}L{self.number}"


class GotoInstr(Instruction):
    kind: Literal["goto"] = "goto"
    direction: Direction = Direction.FORWARD
    number: NonNegativeInt

    def __str__(self) -> str:
        return f"{self.direction.value}G{self.number}"


class PostTestInstr(Instruction):
    """Non-directional test: a true reply continues left, a false reply right."""

    kind: Literal["post_test"] = "post_test"
    positive: bool = True
    action: Action

    def __str__(self) -> str:
        sign = "+" if self.positive else "-"
        return f"{sign}?{self.action}"


class JumpZeroInstr(Instruction):
    kind: Literal["jump_zero"] = "jump_zero"

    def __str__(self) -> str:
        return "/#0"


ABORT = AbortInstr()
HALT = HaltInstr()
JUMP_ZERO = JumpZeroInstr()
FORWARD = Direction.FORWARD
BACKWARD = Direction.BACKWARD


def basic(action: str, direction: Direction = FORWARD) -> BasicInstr:
    return BasicInstr(direction=direction, action=action)


def branch(action: str, positive: bool = True, direction: Direction = FORWARD) -> TestInstr:
    return TestInstr(direction=direction, positive=positive, action=action)


def jump(counter: int, direction: Direction = FORWARD) -> JumpInstr:
    return JumpInstr(direction=direction, counter=counter)


def label(number: int, direction: Direction = FORWARD) -> LabelInstr:
    return LabelInstr(direction=direction, number=number)


def goto(number: int, direction: Direction = FORWARD) -> GotoInstr:
    return GotoInstr(direction=direction, number=number)


def post_test(action: str, positive: bool = True) -> PostTestInstr:
    return PostTestInstr(positive=positive, action=action)
