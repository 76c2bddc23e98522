"""
Schemas dos relatórios da CLI.
Cada subcomando com --json imprime exatamente um destes modelos; o subcomando
schema publica o JSON Schema correspondente.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from patchwork.models.reports import (
    BoundsReport,
    CellCensus,
    CycleCensus,
    FamilyVerdict,
    PhaseStructureReport,
    TriangulationReport,
)

# === RESPONSE SCHEMAS ===


class ValidateResponse(BaseModel):
    """Resultado de validate"""

    valid: bool = Field(
        ..., description="Triangulação e estrutura (se dada) válidas"
    )
    triangulation: TriangulationReport
    phase_structure: Optional[PhaseStructureReport] = None


class CellCensusResponse(BaseModel):
    max_cells: int
    simplicial_max_cells: int
    expected_max_cells: int
    simplicial_bound: float
    within_bounds: bool

    @classmethod
    def from_census(cls, census: CellCensus) -> "CellCensusResponse":
        return cls(**census.model_dump(), within_bounds=census.within_bounds)


class HomologyResponse(BaseModel):
    """Resultado de homology"""

    dim: int = Field(..., description="Dimensão da T-variedade")
    codim: int
    cell_counts: List[int]
    betti: List[int] = Field(..., description="Números de Betti sobre F2")
    components: int
    euler_characteristic: int
    closed_manifold: bool
    census: CellCensusResponse
    oracle_betti: Optional[List[int]] = Field(
        None, description="Betti pela subdivisão baricêntrica, quando pequena"
    )


class GluedResponse(BaseModel):
    """Resultado de glued"""

    dim: int
    cell_counts: List[int]
    euler_characteristic: int
    betti: Optional[List[int]] = None


class IntersectResponse(BaseModel):
    """Resultado de intersect"""

    codim: int
    simplices: int = Field(
        ..., description="Número de simplexos com classe atribuída"
    )
    valid: bool
    output: str


class MaxCurveResponse(BaseModel):
    """Resultado de maxcurve"""

    d: int
    tetrahedra: int
    verdict: FamilyVerdict
    surface_betti: List[int]
    census: Optional[CycleCensus] = None
    closed_form: Dict[str, int]
    exported: List[str] = []


class ExportResponse(BaseModel):
    """Resultado de export"""

    format: str
    dim: int
    components: int
    output: Optional[str] = None


class ErrorResponse(BaseModel):
    """Erro da CLI"""

    detail: str
    error_code: Optional[str] = None
    error_type: str


REPORT_SCHEMAS = {
    "validate": ValidateResponse,
    "homology": HomologyResponse,
    "glued": GluedResponse,
    "bounds": BoundsReport,
    "intersect": IntersectResponse,
    "maxcurve": MaxCurveResponse,
    "export": ExportResponse,
    "error": ErrorResponse,
}
