from pydantic import BaseModel
from typing import List, Optional, Tuple


class LabelRelations(BaseModel):
    """Relations between the label and goto instructions of a Cg sequence.

    Pairs are position pairs; `classes` partitions every label/goto position
    into related groups, ordered by least member.
    """

    corr: List[Tuple[int, int]]
    gacc: List[Tuple[int, int]]
    te: List[Tuple[int, int]]
    classes: List[List[int]]

    class Config:
        json_schema_extra = {
            "example": {
                "corr": [[1, 5], [3, 7]],
                "gacc": [[1, 3], [5, 7]],
                "te": [],
                "classes": [[1, 3], [5, 7]],
            }
        }

    def related(self, i: int, j: int) -> bool:
        return any(i in cls and j in cls for cls in self.classes)


class AnalysisReport(BaseModel):
    formalism: str
    length: int
    start: int
    reachable: List[int]
    unreachable: List[int]
    exits: List[int]
    orphaned: Optional[List[int]] = None
    lnf: Optional[bool] = None
    labels: Optional[LabelRelations] = None
    behavior: str

    class Config:
        json_schema_extra = {
            "example": {
                "formalism": "cg",
                "length": 4,
                "start": 1,
                "reachable": [1, 2, 3, 4],
                "unreachable": [],
                "exits": [2, 3],
                "orphaned": [2, 3],
                "lnf": False,
                "labels": None,
                "behavior": "P0 = D",
            }
        }
