from typing import Dict, List, Optional, Any, Literal, Tuple
from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime
from enum import Enum
from src.models.m_errors import LinalgErrors


class FieldSpec(BaseModel):
    kind: Literal["rational", "prime"] = "rational"
    p: Optional[int] = None

    @model_validator(mode="after")
    def check_modulus(self) -> "FieldSpec":
        if self.kind == "prime" and (self.p is None or not isprime(self.p)):
            raise ValueError(LinalgErrors.NOT_PRIME.value.format(p=self.p))
        return self


class ArrowSpec(BaseModel):
    name: str
    source: str
    target: str


class RelationTerm(BaseModel):
    coeff: str = "1"
    path: List[str]


class AlgebraPresentation(BaseModel):
    name: str = ""
    field: FieldSpec = FieldSpec()
    vertices: List[str]
    arrows: List[ArrowSpec] = []
    relations: List[List[RelationTerm]] = []
    degree_cap: int = Field(default=16, ge=1)
    grading: Optional[Dict[str, int]] = None
    trace: Optional[Dict[str, str]] = None
    drop_basis: Optional[List[str]] = None

    @field_validator("arrows", mode="before")
    @classmethod
    def arrows_from_triples(cls, value):
        if isinstance(value, list):
            return [
                {"name": a[0], "source": a[1], "target": a[2]} if isinstance(a, (list, tuple)) else a
                for a in value
            ]
        return value

    @field_validator("relations", mode="before")
    @classmethod
    def terms_from_pairs(cls, value):
        if isinstance(value, list):
            return [
                [
                    {"coeff": t[0], "path": t[1]} if isinstance(t, (list, tuple)) else t
                    for t in relation
                ]
                for relation in value
            ]
        return value

    def arrow_degree(self, name: str) -> int:
        if self.grading is None:
            return 1
        return self.grading.get(name, 1)


class RunConfig(BaseModel):
    command: str
    input: Optional[str] = None
    window: Optional[int] = Field(default=None, ge=1)
    order: Literal["first", "second"] = "first"
    target: Literal["A", "C", "D"] = "C"
    filtration: str = "radical"
    out: Optional[str] = None
    format: Literal["json", "text", "yaml"] = "json"
    level: int = 0
    log_level: str = "WARNING"
    workers: int = Field(default=1, ge=1)
    samples: int = Field(default=10000, ge=1)
    corpus: str = "corpus"


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ERROR = "ERROR"


class Certificate(BaseModel):
    claim: str
    target: Optional[str] = None
    order: Optional[Dict[str, Any]] = None
    input_digest: str = ""
    header: Dict[str, Any] = {}
    witnesses: List[Dict[str, Any]] = []
    notes: List[str] = []
    verdict: str = Verdict.PASS.value


class ClaimStatus(BaseModel):
    claim: str
    output: Any
    status: str
    target: Optional[str] = None


class ResultOutput(BaseModel):
    command: str
    input: Optional[str] = None
    header: Dict[str, Any] = {}
    stdout: List[ClaimStatus] = []
    stderr: List[ClaimStatus] = []
    exit_code: int = 0


class GoldenArrow(BaseModel):
    """Arrow of a golden quiver; endpoints are (vertex, level offset) from the anchor level."""

    element: str
    source: Tuple[str, int]
    target: Tuple[str, int]


class GoldenTerm(BaseModel):
    coeff: str = "1"
    path: List[Tuple[str, int]]


class GoldenPresentation(BaseModel):
    name: str
    input: str
    vertices: Dict[str, str]
    generators: Dict[str, GoldenArrow]
    relations: List[List[GoldenTerm]] = []
    dotted: Dict[str, GoldenArrow] = {}

    @field_validator("relations", mode="before")
    @classmethod
    def terms_from_pairs(cls, value):
        if isinstance(value, list):
            return [
                [{"coeff": t[0], "path": t[1]} if isinstance(t, (list, tuple)) else t for t in relation]
                for relation in value
            ]
        return value
