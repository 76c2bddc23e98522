"""
Modelos dos formatos de arquivo em disco.
Todos os arquivos são JSON; a validação estrutural acontece aqui e a validação
matemática fica com o domínio.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

ORTHANT_CHARS = set("+-−")


def _check_orthant(text: str) -> str:
    if not text or set(text) - ORTHANT_CHARS:
        raise ValueError(f"Orthant string '{text}' must use only '+' and '-'")
    return text.replace("−", "-")


class FacetModel(BaseModel):
    normal: List[int]
    offset: int


class TriangulationFile(BaseModel):
    """Triangulação de um politopo de reticulado com a sua representação H"""

    dim: int = Field(..., ge=1, description="Dimensão ambiente n")
    vertices: List[List[int]] = Field(
        ..., min_length=1, description="Coordenadas inteiras"
    )
    maximal_simplices: List[List[int]] = Field(..., min_length=1)
    facets: List[FacetModel] = Field(..., min_length=1)
    polytope_vertices: Optional[List[List[int]]] = Field(
        None, description="Cantos do politopo"
    )

    @field_validator("maximal_simplices")
    @classmethod
    def sort_simplices(cls, v):
        return [sorted(s) for s in v]

    @model_validator(mode="after")
    def validate_dimensions(self):
        for point in self.vertices:
            if len(point) != self.dim:
                raise ValueError(f"Vertex {point} does not have {self.dim} coordinates")
        for facet in self.facets:
            if len(facet.normal) != self.dim:
                raise ValueError(
                    f"Facet normal {facet.normal} does not have {self.dim} entries"
                )
        for simplex in self.maximal_simplices:
            if any(v < 0 or v >= len(self.vertices) for v in simplex):
                raise ValueError(f"Simplex {simplex} references an unknown vertex")
        return self


class PhaseCell(BaseModel):
    simplex: List[int] = Field(..., min_length=1)
    base: str
    direction: List[str] = []

    @field_validator("base")
    @classmethod
    def validate_base(cls, v):
        return _check_orthant(v)

    @field_validator("direction")
    @classmethod
    def validate_direction(cls, v):
        return [_check_orthant(d) for d in v]

    @model_validator(mode="after")
    def validate_lengths(self):
        if any(len(d) != len(self.base) for d in self.direction):
            raise ValueError(
                "Direction vectors must have the length of the base orthant"
            )
        return self


class PhaseStructureFile(BaseModel):
    codim: int = Field(..., ge=0)
    cells: List[PhaseCell]


class SignDistributionFile(BaseModel):
    signs: str

    @field_validator("signs")
    @classmethod
    def validate_signs(cls, v):
        return _check_orthant(v)


class OrientationFile(BaseModel):
    """Arestas explícitas (cauda, cabeça) ou uma regra embutida"""

    edges: Optional[List[List[int]]] = None
    builtin: Optional[Literal["parity_code", "vertex_order"]] = None
    order: Optional[List[int]] = None

    @field_validator("edges")
    @classmethod
    def validate_edges(cls, v):
        if v is not None and any(len(e) != 2 or e[0] == e[1] for e in v):
            raise ValueError(
                "Each edge must be a [tail, head] pair of distinct vertices"
            )
        return v

    @model_validator(mode="after")
    def validate_source(self):
        if (self.edges is None) == (self.builtin is None):
            raise ValueError("Give exactly one of 'edges' or 'builtin'")
        if self.builtin == "vertex_order" and not self.order:
            raise ValueError("The vertex_order rule needs an 'order' list")
        return self
