from collections import deque
from typing import Annotated, Dict, List, Literal, Sequence, Tuple, Union

from pydantic import BaseModel, Field, NonNegativeInt, model_validator

from models.instructions import Action


class Halt(BaseModel):
    kind: Literal["S"] = "S"

    class Config:
        frozen = True


class Dead(BaseModel):
    kind: Literal["D"] = "D"

    class Config:
        frozen = True


class Test(BaseModel):
    """Postconditional composition: perform action, continue at yes or no."""

    __test__ = False

    kind: Literal["test"] = "test"
    action: Action
    yes: NonNegativeInt
    no: NonNegativeInt

    class Config:
        frozen = True

    @property
    def successors(self) -> Tuple[int, int]:
        return self.yes, self.no


StateDef = Annotated[Union[Halt, Dead, Test], Field(discriminator="kind")]

HALT = Halt()
DEAD = Dead()


class ThreadSpec(BaseModel):
    """A finite system of state equations defining a regular thread.

    Specs built through `ThreadSpec.of` are trimmed and numbered breadth-first
    from the entry (yes before no), so the entry is always state 0.
    """

    states: Tuple[StateDef, ...] = Field(..., min_length=1)
    entry: NonNegativeInt = 0

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "states": [
                    {"kind": "test", "action": "a", "yes": 1, "no": 0},
                    {"kind": "S"},
                ],
                "entry": 0,
            }
        }

    @model_validator(mode="after")
    def check_states(self) -> "ThreadSpec":
        size = len(self.states)
        if self.entry >= size:
            raise ValueError(f"entry {self.entry} is not a state index")
        for index, state in enumerate(self.states):
            if isinstance(state, Test) and max(state.yes, state.no) >= size:
                raise ValueError(f"state {index} refers to a missing state")
        if len(_breadth_first(self.states, self.entry)) != size:
            raise ValueError("every state must be reachable from the entry")
        return self

    def __len__(self) -> int:
        return len(self.states)

    @classmethod
    def of(cls, states: Sequence, entry: int = 0) -> "ThreadSpec":
        order = _breadth_first(states, entry)
        index: Dict[int, int] = {old: new for new, old in enumerate(order)}
        renumbered: List = []
        for old in order:
            state = states[old]
            if isinstance(state, Test):
                state = Test(action=state.action, yes=index[state.yes], no=index[state.no])
            renumbered.append(state)
        return cls(states=tuple(renumbered), entry=0)

    @classmethod
    def halt(cls) -> "ThreadSpec":
        return cls(states=(HALT,))

    @classmethod
    def dead(cls) -> "ThreadSpec":
        return cls(states=(DEAD,))

    def rooted_at(self, index: int) -> "ThreadSpec":
        return ThreadSpec.of(self.states, index)


def _breadth_first(states: Sequence, entry: int) -> List[int]:
    order = [entry]
    seen = {entry}
    queue = deque([entry])
    while queue:
        state = states[queue.popleft()]
        if isinstance(state, Test):
            for successor in state.successors:
                if successor not in seen:
                    seen.add(successor)
                    order.append(successor)
                    queue.append(successor)
    return order
