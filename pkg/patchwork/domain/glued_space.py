"""
Espaço colado: as 2^n cópias simétricas de Δ identificadas ao longo das faces.
A cópia s(σ) é identificada com t(σ) quando t - s está em T2⊥ da menor face de Δ
que contém σ.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from patchwork.domain.homology import CellComplex, GluedCellId, betti_f2
from patchwork.domain.lattice import Simplex, Triangulation, subfaces

logger = logging.getLogger(__name__)


@dataclass
class GluedComplex:
    tri: Triangulation
    complex: CellComplex
    copy_count: dict[Simplex, int]

    @property
    def cells(self) -> list[list[GluedCellId]]:
        return self.complex.cells

    @property
    def facet_incidence(self) -> list[list[tuple[int, ...]]]:
        return self.complex.boundary

    def cell_class(self, simplex: Simplex, orthant: int) -> GluedCellId:
        """Classe canônica da cópia orthant(simplex)."""
        perp = self.tri.minimal_face(simplex).orthogonal
        return GluedCellId(simplex, perp.reduce(orthant))

    def euler_from_copies(self) -> int:
        return sum((-1) ** (len(s) - 1) * c for s, c in self.copy_count.items())


def build_glued(tri: Triangulation) -> GluedComplex:
    """Células (σ, classe) de Δ̃ com a incidência de codimensão 1."""
    cells: list[list[GluedCellId]] = []
    copy_count: dict[Simplex, int] = {}
    for m in range(tri.n + 1):
        layer = []
        for sigma in tri.faces(m):
            classes = tri.minimal_face(sigma).orthogonal.complement_representatives()
            copy_count[sigma] = len(classes)
            layer.extend(GluedCellId(sigma, c) for c in classes)
        cells.append(layer)

    index = [{c: i for i, c in enumerate(layer)} for layer in cells]
    boundary: list[list[tuple[int, ...]]] = [[() for _ in cells[0]]]
    for m in range(1, tri.n + 1):
        layer_faces = []
        for cell in cells[m]:
            faces = []
            for face in subfaces(cell.simplex, m - 1):
                perp = tri.minimal_face(face).orthogonal
                faces.append(
                    index[m - 1][GluedCellId(face, perp.reduce(cell.orthant_class))]
                )
            layer_faces.append(tuple(faces))
        boundary.append(layer_faces)

    complex_ = CellComplex(cells, boundary, index)
    logger.debug("Glued complex built: cells per dimension %s", complex_.counts())
    return GluedComplex(tri, complex_, copy_count)


def betti_glued(gc: GluedComplex) -> list[int]:
    return betti_f2(gc.complex)
