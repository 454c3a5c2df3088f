from pydantic import BaseModel, model_validator
from typing import Optional


class RouteReport(BaseModel):
    """Size accounting for one translation run."""

    route: str
    source: str
    target: str
    input_length: int
    output_length: int
    factor: Optional[int] = None
    k: Optional[int] = None
    correspondence: str

    class Config:
        json_schema_extra = {
            "example": {
                "route": "c2cg-hom",
                "source": "c",
                "target": "cg",
                "input_length": 2,
                "output_length": 28,
                "factor": 14,
                "k": 2,
                "correspondence": "|i,X| = |14(i-1)+1,Y| = |14i,Y|",
            }
        }

    @model_validator(mode="after")
    def check_factor(self) -> "RouteReport":
        if self.factor is not None and self.factor * self.input_length != self.output_length:
            raise ValueError(
                f"{self.route}: {self.input_length} instructions at factor {self.factor} "
                f"cannot give {self.output_length}"
            )
        return self
