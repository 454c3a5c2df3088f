from pydantic import BaseModel, model_validator
from typing import List, Optional


class Counterexample(BaseModel):
    program: str
    output: Optional[str] = None
    k: Optional[int] = None
    reason: str


class ValidationSummary(BaseModel):
    """Outcome of running one route over seeded random inputs."""

    route: str
    seed: int
    count: int
    passed: int
    failed: int
    counterexamples: List[Counterexample] = []

    class Config:
        json_schema_extra = {
            "example": {
                "route": "cg2c",
                "seed": 7,
                "count": 200,
                "passed": 200,
                "failed": 0,
                "counterexamples": [],
            }
        }

    @model_validator(mode="after")
    def check_totals(self) -> "ValidationSummary":
        if self.passed + self.failed != self.count:
            raise ValueError("passed and failed cases must add up to the count")
        return self

    @property
    def ok(self) -> bool:
        return self.failed == 0
