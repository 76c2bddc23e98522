"""
Leitura e escrita dos arquivos JSON do motor.
Converte entre os modelos de arquivo e os objetos do domínio; qualquer falha de
leitura vira InvalidFileFormat com o caminho do arquivo.
"""

import json
import logging
from pathlib import Path
from typing import Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from patchwork.core.exceptions import InvalidFileFormat
from patchwork.domain.gf2 import (
    F2AffineSubspace,
    F2Subspace,
    format_orthant,
    parse_orthant,
)
from patchwork.domain.lattice import Facet, Polytope, Triangulation
from patchwork.domain.maximal_curve import parity_code
from patchwork.domain.phase_structure import (
    RealPhaseStructure,
    SignDistribution,
    check_coverage,
)
from patchwork.domain.stable_intersection import EdgeOrientation
from patchwork.models.files import (
    FacetModel,
    OrientationFile,
    PhaseCell,
    PhaseStructureFile,
    SignDistributionFile,
    TriangulationFile,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
ModelT = TypeVar("ModelT", bound=BaseModel)


def _read_model(path: PathLike, model: Type[ModelT]) -> ModelT:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidFileFormat(str(path), f"cannot read file: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidFileFormat(
            str(path), f"invalid JSON at line {exc.lineno}"
        ) from exc
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise InvalidFileFormat(str(path), f"{location}: {first['msg']}") from exc


def _write_model(path: PathLike, model: BaseModel) -> None:
    text = model.model_dump_json(indent=2, exclude_none=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")
    logger.debug("Wrote %s to %s", type(model).__name__, path)


# === Triangulações ===


def triangulation_to_model(tri: Triangulation) -> TriangulationFile:
    return TriangulationFile(
        dim=tri.n,
        vertices=[list(v) for v in tri.vertex_coords],
        maximal_simplices=[list(s) for s in tri.maximal_simplices],
        facets=[
            FacetModel(normal=list(f.normal), offset=f.offset)
            for f in tri.polytope.facets
        ],
        polytope_vertices=[list(v) for v in tri.polytope.vertices],
    )


def triangulation_from_model(data: TriangulationFile) -> Triangulation:
    """Sem polytope_vertices, os cantos são os pontos da tabela justos em pelo menos n facetas."""
    facets = tuple(Facet(tuple(f.normal), f.offset) for f in data.facets)
    if data.polytope_vertices:
        corners = tuple(tuple(p) for p in data.polytope_vertices)
    else:
        corners = tuple(
            tuple(p)
            for p in data.vertices
            if sum(1 for f in facets if f.is_tight(p)) >= data.dim
        )
    polytope = Polytope(data.dim, corners, facets)
    return Triangulation.build(polytope, data.vertices, data.maximal_simplices)


def load_triangulation(path: PathLike) -> Triangulation:
    return triangulation_from_model(_read_model(path, TriangulationFile))


def save_triangulation(tri: Triangulation, path: PathLike) -> None:
    _write_model(path, triangulation_to_model(tri))


# === Estruturas de fase ===


def phase_structure_to_model(rps: RealPhaseStructure) -> PhaseStructureFile:
    n = rps.n
    return PhaseStructureFile(
        codim=rps.codim,
        cells=[
            PhaseCell(
                simplex=list(simplex),
                base=format_orthant(coset.base, n),
                direction=[format_orthant(v, n) for v in coset.direction.basis],
            )
            for simplex, coset in sorted(rps.assignments.items())
        ],
    )


def phase_structure_from_model(
    data: PhaseStructureFile, tri: Triangulation, path: str = "<phase structure>"
) -> RealPhaseStructure:
    assignments = {}
    for cell in data.cells:
        if len(cell.base) != tri.n:
            raise InvalidFileFormat(
                path, f"orthant '{cell.base}' does not have {tri.n} signs"
            )
        simplex = tri.require(cell.simplex)
        direction = F2Subspace.span(
            tri.n, (parse_orthant(v, tri.n) for v in cell.direction)
        )
        base = parse_orthant(cell.base, tri.n)
        assignments[simplex] = F2AffineSubspace.of(base, direction)
    check_coverage(tri, data.codim, assignments)
    return RealPhaseStructure(tri, data.codim, assignments)


def load_phase_structure(path: PathLike, tri: Triangulation) -> RealPhaseStructure:
    data = _read_model(path, PhaseStructureFile)
    return phase_structure_from_model(data, tri, str(path))


def save_phase_structure(rps: RealPhaseStructure, path: PathLike) -> None:
    _write_model(path, phase_structure_to_model(rps))


# === Distribuições de sinais ===


def load_signs(path: PathLike, tri: Triangulation) -> SignDistribution:
    data = _read_model(path, SignDistributionFile)
    if len(data.signs) != len(tri.vertex_coords):
        raise InvalidFileFormat(
            str(path), f"{len(data.signs)} signs for {len(tri.vertex_coords)} vertices"
        )
    return SignDistribution.from_string(data.signs)


def save_signs(mu: SignDistribution, path: PathLike) -> None:
    _write_model(path, SignDistributionFile(signs=mu.to_string()))


# === Orientações ===


def orientation_from_model(
    data: OrientationFile, tri: Triangulation, path: str = "<orientation>"
) -> EdgeOrientation:
    if data.edges is not None:
        try:
            return EdgeOrientation.from_edges(tri, data.edges)
        except InvalidFileFormat as exc:
            raise InvalidFileFormat(path, exc.details) from exc
    if data.builtin == "vertex_order":
        if sorted(data.order) != list(range(len(tri.vertex_coords))):
            raise InvalidFileFormat(
                path, "vertex order must be a permutation of the vertex ids"
            )
        return EdgeOrientation.from_vertex_order(tri, data.order)

    # parity_code: só faz sentido em dΔ3
    if tri.n != 3:
        raise InvalidFileFormat(
            path, "the parity_code rule needs a 3-dimensional triangulation"
        )
    d = max(sum(v) for v in tri.polytope.vertices)
    codes = {i: parity_code(p, d) for i, p in enumerate(tri.vertex_coords)}
    return EdgeOrientation.from_parity_codes(tri, codes)


def load_orientation(path: PathLike, tri: Triangulation) -> EdgeOrientation:
    return orientation_from_model(_read_model(path, OrientationFile), tri, str(path))


def save_orientation(o: EdgeOrientation, path: PathLike) -> None:
    _write_model(path, OrientationFile(edges=[list(a) for a in o.arrows()]))
