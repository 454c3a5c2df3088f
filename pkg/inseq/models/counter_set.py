from typing import FrozenSet, Iterator, Tuple

from pydantic import BaseModel, Field, PositiveInt, model_validator


class CounterClass(BaseModel):
    """All k >= lower_bound with k = residue (mod modulus)."""

    modulus: PositiveInt
    residue: int = Field(0, ge=0)
    lower_bound: PositiveInt = 1

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_residue(self) -> "CounterClass":
        if self.residue >= self.modulus:
            raise ValueError("residue must be smaller than the modulus")
        return self

    def least_at_least(self, n: int) -> int:
        start = max(n, self.lower_bound)
        return start + (self.residue - start) % self.modulus

    def __contains__(self, k: int) -> bool:
        return k >= self.lower_bound and k % self.modulus == self.residue

    def __str__(self) -> str:
        return f"every {self.modulus} from {self.lower_bound} offset {self.residue}"


class CounterSet(BaseModel):
    """An infinite, decidable set of jump counters."""

    classes: Tuple[CounterClass, ...] = Field(..., min_length=1)
    extras: FrozenSet[PositiveInt] = frozenset()

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "classes": [{"modulus": 2, "residue": 0, "lower_bound": 4}],
                "extras": [],
            }
        }

    def __contains__(self, k: int) -> bool:
        return k in self.extras or any(k in cls for cls in self.classes)

    def __str__(self) -> str:
        terms = [str(cls) for cls in self.classes]
        if self.extras:
            terms.append("plus {" + ",".join(str(k) for k in sorted(self.extras)) + "}")
        return ", ".join(terms)

    def members_at_least(self, n: int) -> Iterator[int]:
        """Members >= n in increasing order; the iterator never ends."""
        k = self.min_at_least(n)
        while True:
            yield k
            k = self.min_at_least(k + 1)

    def min_at_least(self, n: int) -> int:
        candidates = [cls.least_at_least(n) for cls in self.classes]
        candidates.extend(k for k in self.extras if k >= n)
        return min(candidates)

    @classmethod
    def every(cls, modulus: int, lower_bound: int = 1, residue: int = 0) -> "CounterSet":
        return cls(classes=(CounterClass(modulus=modulus, residue=residue, lower_bound=lower_bound),))
