"""Pydantic models of the report documents.

The report builders produce plain dictionaries; these models document and
validate their shape, and are the response models of the HTTP service.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class Label(_Strict):
    order: int
    index: int
    name: str


class Ratio(_Strict):
    src: str
    dst: str
    exp: int


class StratumOut(_Strict):
    name: str
    family: str
    vanished: list[str]
    ratios: list[Ratio]
    dim: int
    equations: list[str]


class StrataRow(_Strict):
    label: Label
    strata: list[StratumOut]
    dims: list[int]
    components: int
    bad: bool


class ComponentOut(_Strict):
    name: str
    members: list[str]
    dim: int
    label: Label
    bad: bool


class Edge(_Strict):
    upper: str
    lower: str
    quotient_only: bool


class StrataPayload(_Strict):
    rows: list[StrataRow]
    components: list[ComponentOut]
    edges: list[Edge]


class FixedLocus(_Strict):
    vanished: list[str]
    ratios: list[Ratio]
    dim: int


class InertiaComponentOut(_Strict):
    name: str
    family: str
    element: list[int]
    fixed: FixedLocus
    centralizer: Label
    bad: bool


class SubcomponentRow(_Strict):
    component: str
    group: Label


class SubcomponentOut(_Strict):
    family: str
    group: Label
    rows: list[SubcomponentRow]


class InertiaPayload(_Strict):
    components: list[InertiaComponentOut]
    histogram: dict[str, int]
    effective: int
    raw: list[InertiaComponentOut]
    raw_histogram: dict[str, int]
    embedded: dict[str, list[list[int]]]
    subcomponents: list[SubcomponentOut]


class EquationOut(_Strict):
    relation: str
    pair: Optional[list[str]]
    text: str
    lhs: dict[str, int]
    rhs: int


class SolutionOut(_Strict):
    solvable: bool
    constraints: list[str]
    unknowns: dict[str, str]


class EquationsPayload(_Strict):
    unit: int
    twist: int
    modulus: int
    equations: list[EquationOut]
    solution: SolutionOut


class AmbientPayload(_Strict):
    order: int
    quotient_order: int
    generators: list[list[int]]
    torsion_generator: list[int]
    structure: str
    quotient_label: Label
    tuple_names: list[str]


class GroupIdPayload(_Strict):
    generators: list[list[int]]
    order: int
    label: Label
    abelian: bool
    elements: Optional[list[list[int]]] = None


Kind = Literal["strata", "inertia", "equations", "ambient", "group-id"]

PAYLOADS: dict[str, type[BaseModel]] = {
    "strata": StrataPayload,
    "inertia": InertiaPayload,
    "equations": EquationsPayload,
    "ambient": AmbientPayload,
    "group-id": GroupIdPayload,
}


class ReportDocument(_Strict):
    case: int
    kind: Kind
    tool_version: str
    config_digest: str
    payload: dict

    def typed_payload(self) -> BaseModel:
        return PAYLOADS[self.kind].model_validate(self.payload)


def validate_document(doc: dict) -> ReportDocument:
    """Check a document and its payload against the models."""
    model = ReportDocument.model_validate(doc)
    model.typed_payload()
    return model
