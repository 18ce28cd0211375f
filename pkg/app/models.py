# app/models.py
"""
Serializable models
===================
Pydantic schemas for every machine-readable surface: homology listings,
invariant statuses, survey corpus entries and rows, and the parsed CLI
configuration.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class GroupEntry(BaseModel):
    r: int
    q: int
    free: int
    torsion: List[int] = Field(default_factory=list)


class HomologyReport(BaseModel):
    theory: str
    coefficients: str = "Z"
    groups: List[GroupEntry]


class InvariantReport(BaseModel):
    theory: str
    status: Literal["Zero", "Torsion", "NonTorsion"]
    order: Optional[int] = None
    divisibility: Optional[int] = None
    r: int = 0
    q: int


class CorpusEntry(BaseModel):
    """One line of a survey corpus: a braid word or a grid, never both."""

    name: str
    braid: Optional[str] = None
    grid: Optional[str] = None
    sigma: Optional[int] = None
    alternating: Optional[bool] = None

    @model_validator(mode="after")
    def exactly_one_input(self):
        if (self.braid is None) == (self.grid is None):
            raise ValueError("corpus entry needs exactly one of 'braid' or 'grid'")
        return self


class SurveyRow(BaseModel):
    name: str
    strands: int
    crossings: int
    negative_ratio: float
    sl: int
    sigma: Optional[int] = None
    odd: str
    even: str
    reduced: str
    odd_fine: str
    even_fine: str
    reduced_fine: str
    sl_is_sigma_minus_one: Optional[bool] = None
    alternating_check: Optional[bool] = None


class CliConfig(BaseModel):
    command: str
    braid: Optional[str] = None
    grid: Optional[str] = None
    corpus: Optional[str] = None
    theory: str = "odd"
    coefficients: str = "Z"
    output_format: Literal["text", "json", "tikz"] = "text"
    threads: int = 1
    verbose: bool = False

    @model_validator(mode="after")
    def one_input(self):
        given = [x for x in (self.braid, self.grid, self.corpus) if x is not None]
        if len(given) > 1:
            raise ValueError("give exactly one of --braid, --grid or --corpus")
        return self
