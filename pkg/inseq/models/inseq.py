from typing import Iterator, Tuple

from pydantic import BaseModel


class InSeq(BaseModel):
    """A finite, non-empty instruction sequence; positions are 1-based."""

    instrs: Tuple

    class Config:
        frozen = True

    def __len__(self) -> int:
        return len(self.instrs)

    def __add__(self, other: "InSeq") -> "InSeq":
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(instrs=self.instrs + other.instrs)

    def __str__(self) -> str:
        return ";".join(str(instr) for instr in self.instrs)

    def inst(self, position: int):
        return self.instrs[position - 1]

    def in_range(self, position: int) -> bool:
        return 1 <= position <= len(self.instrs)

    def positions(self) -> Iterator[Tuple[int, object]]:
        return enumerate(self.instrs, start=1)

    @classmethod
    def of(cls, *instrs) -> "InSeq":
        return cls(instrs=tuple(instrs))
