"""
Modelos de resultado do domínio.
Relatórios de validação, censos e veredictos devolvidos pelas operações do motor.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, field_validator, model_validator


class FaceViolation(BaseModel):
    facet: List[int]
    simplices: List[List[int]]
    reason: str


class TriangulationReport(BaseModel):
    valid: bool
    dim: int
    simplex_count: int
    det_volume: int
    lattice_volume: int
    determinants: List[int]
    non_unimodular: List[List[int]] = []
    malformed_simplices: List[List[int]] = []
    face_violations: List[FaceViolation] = []
    vertices_outside: List[int] = []


class ParityFailure(BaseModel):
    tau: List[int]
    orthant: str
    count: int

    @field_validator("count")
    @classmethod
    def validate_count_odd(cls, v):
        if v % 2 == 0:
            raise ValueError("Parity failures have an odd count")
        return v


class PhaseStructureReport(BaseModel):
    valid: bool
    codim: int
    checked_simplices: int
    direction_failures: List[List[int]] = []
    parity_failures: List[ParityFailure] = []


class CellCensus(BaseModel):
    max_cells: int
    simplicial_max_cells: int
    expected_max_cells: int
    simplicial_bound: float

    @property
    def within_bounds(self) -> bool:
        return (
            self.max_cells == self.expected_max_cells
            and self.simplicial_max_cells <= self.simplicial_bound
        )


class MaximalityVerdict(BaseModel):
    b0: int
    harnack_bound: int
    sphere_defect: int
    maximal: bool
    planar: Optional[bool] = None

    @model_validator(mode="after")
    def validate_defect(self):
        if self.sphere_defect > 2:
            raise ValueError("Sphere defect cannot exceed 2")
        return self


class BoundsReport(BaseModel):
    n: int
    volume: int
    boundary_volume: int
    b1_graph: int
    b1_formula: int
    planar: bool
    harnack_bound: int
    curve_volume_bound: int
    surface_bound: Optional[int] = None
    hodge_sums: Dict[int, int]
    codegree: int
    interior_point_obstruction: bool
    no_maximal_curve_expected: bool
    verdicts: Dict[str, bool] = {}

    @model_validator(mode="after")
    def validate_b1_agreement(self):
        if self.b1_graph != self.b1_formula:
            raise ValueError("Dual graph b1 disagrees with the volume formula")
        return self


class CurveBoundRow(BaseModel):
    d: int
    harnack: int
    volume_bound: int
    stricter: str


class CycleFamily(str, Enum):
    """Famílias de ciclos da curva maximal"""

    HORIZONTAL = "horizontal"
    TRANSVERSAL = "transversal"
    PURE_JOIN = "pure_join"
    BOUNDARY_JOIN = "boundary_join"
    AXISLESS = "axisless"
    GLOBAL = "global"


class CycleCensus(BaseModel):
    total: int
    classified: Optional[Dict[CycleFamily, int]] = None

    @model_validator(mode="after")
    def validate_total(self):
        if self.classified is not None and sum(self.classified.values()) != self.total:
            raise ValueError("Classified counts must add up to the total")
        return self

    def as_tuple(self) -> tuple:
        """
        Contagens na ordem horizontal, transversal, pure join, boundary join,
        axisless e global.
        """
        if self.classified is None:
            return ()
        return tuple(self.classified.get(family, 0) for family in CycleFamily)


class FamilyVerdict(BaseModel):
    d: int
    components: int
    expected_components: int
    harnack_bound: int
    surface_betti_total: int
    expected_surface_betti_total: int
    planar: bool
    passed: bool
