"""
File formats as pydantic models.

These models validate every input file and describe every JSON output;
`ipr_cli.py schema NAME` prints their JSON Schema.
"""

from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt, StrictStr

# A rational is a bare integer or a "p" / "p/q" string; floats are refused
RationalValue = Union[StrictInt, StrictStr]
SparseRowValue = List[Tuple[StrictInt, RationalValue]]


class MatrixModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    nrows: StrictInt = Field(ge=0)
    ncols: StrictInt = Field(ge=0)
    rows: List[SparseRowValue]


class ColoringModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: StrictInt = Field(ge=1)
    r: StrictInt = Field(ge=1)
    colors: List[StrictInt]


class WitnessModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    x: List[StrictInt]
    image: List[StrictInt]
    color: StrictInt = Field(ge=0)


class WitnessSampleModel(WitnessModel):
    counter: StrictInt = Field(ge=0)


class BoundsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    colors: StrictInt = Field(ge=1)
    universe: StrictInt = Field(ge=1)
    xmax: StrictInt = Field(ge=1)
    strong: StrictBool = False
    symmetry_break: StrictBool = True


class VerdictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["ForcedAtScale", "EscapingColoring", "BudgetExhausted"]
    bounds: BoundsModel
    checked: StrictInt = Field(ge=0)
    counter: Optional[StrictInt] = None
    coloring: Optional[ColoringModel] = None
    resume: Optional[StrictInt] = None
    witnesses: List[WitnessSampleModel] = []


class BlockModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    block_class: Literal["empty", "first-entries", "unverified"] = Field(alias="class")
    t: Optional[Dict[str, RationalValue]] = None


class CertificateModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["first_entries", "segmentation", "restricted_triangular", "isolated_pivot"]
    t: Optional[Dict[str, RationalValue]] = None
    alphas: Optional[List[StrictInt]] = None
    blocks: Optional[List[BlockModel]] = None
    d: Optional[StrictInt] = None
    j: Optional[List[StrictInt]] = None


class ClassifyReportModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    nrows: StrictInt = Field(ge=0)
    ncols: StrictInt = Field(ge=0)
    zero_rows: List[StrictInt]
    repeated_rows: StrictBool
    integral: StrictBool
    constant_row_sum: Optional[StrictStr] = None
    first_entries: Optional[CertificateModel] = None
    monic: StrictBool
    segmentation: Optional[CertificateModel] = None
    monic_segmentation: Optional[CertificateModel] = None
    restricted_triangular: Optional[CertificateModel] = None
    unit_triangular: StrictBool
    isolated_pivot: Optional[CertificateModel] = None


class SweepRowModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    universe: StrictInt = Field(ge=1)
    x_max: StrictInt = Field(ge=1)
    kind: Literal["ForcedAtScale", "EscapingColoring", "BudgetExhausted"]
    checked: StrictInt = Field(ge=0)
    counter: Optional[StrictInt] = None
    resume: Optional[StrictInt] = None


class SweepModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rows: List[SweepRowModel]
    first_forced: Optional[StrictInt] = None


class FamilySpecModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: StrictStr
    nvars: Optional[StrictInt] = None
    rows: Optional[List[SparseRowValue]] = None


class TargetSetModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    members: List[StrictInt] = Field(alias="set")


class SequencesModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seqs: List[List[StrictInt]]


class JsetResultModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: StrictInt = Field(ge=1)
    H: List[StrictInt]


class RecheckResultModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    valid: StrictBool
    subject: StrictStr


SCHEMAS = {
    "matrix": MatrixModel,
    "coloring": ColoringModel,
    "witness": WitnessModel,
    "verdict": VerdictModel,
    "certificate": CertificateModel,
    "classify": ClassifyReportModel,
    "sweep": SweepModel,
    "family": FamilySpecModel,
    "set": TargetSetModel,
    "seqs": SequencesModel,
    "jset": JsetResultModel,
    "recheck": RecheckResultModel,
}
