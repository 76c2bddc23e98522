"""
Complexo celular canônico de X_E dentro de Δ̃: construção, componentes conexas,
censos de células, contenção entre T-variedades e a busca exaustiva de
distribuições de sinais que envolvem uma estrutura de codimensão 2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb

from networkx.utils import UnionFind

from patchwork.core.config import get_settings
from patchwork.core.exceptions import (
    CodimensionError,
    EnclosureCapExceeded,
    TriangulationMismatchError,
)
from patchwork.domain.glued_space import GluedComplex, build_glued
from patchwork.domain.homology import CellComplex, GluedCellId
from patchwork.domain.lattice import Polytope, Facet, Triangulation, subfaces
from patchwork.domain.phase_structure import (
    RealPhaseStructure,
    SignDistribution,
    phase_structure_from_table,
    require_valid,
)
from patchwork.models.reports import CellCensus

logger = logging.getLogger(__name__)


@dataclass
class TManifold:
    complex: CellComplex
    tri: Triangulation
    rps: RealPhaseStructure

    @property
    def codim(self) -> int:
        return self.rps.codim

    @property
    def dim(self) -> int:
        return self.tri.n - self.rps.codim


def _orthant_classes(gc: GluedComplex, rps: RealPhaseStructure, sigma) -> list[int]:
    """Classes de σ cujos representantes estão em E(σ)."""
    perp = gc.tri.minimal_face(sigma).orthogonal
    members: set[int] = set()
    for face in subfaces(sigma, rps.codim):
        members.update(rps.assignments[face].members())
    return sorted({perp.reduce(s) for s in members})


def build_tmanifold(
    gc: GluedComplex, rps: RealPhaseStructure, validate: bool = True
) -> TManifold:
    """
    Uma m-célula por classe colada (σ, s) com dim σ = m + k e s em E(σ).
    A face (σ', s) de (σ, s) entra no bordo quando dim σ' >= k e s está em E(σ').
    """
    tri = gc.tri
    if rps.tri != tri:
        raise TriangulationMismatchError("build_tmanifold")
    if validate:
        require_valid(tri, rps)

    k = rps.codim
    cells: list[list[GluedCellId]] = []
    for m in range(tri.n - k + 1):
        layer = []
        for sigma in tri.faces(m + k):
            layer.extend(
                GluedCellId(sigma, c) for c in _orthant_classes(gc, rps, sigma)
            )
        cells.append(layer)

    index = [{c: i for i, c in enumerate(layer)} for layer in cells]
    boundary: list[list[tuple[int, ...]]] = [[() for _ in cells[0]]]
    for m in range(1, tri.n - k + 1):
        layer_faces = []
        for cell in cells[m]:
            faces = []
            for face in subfaces(cell.simplex, m + k - 1):
                label = gc.cell_class(face, cell.orthant_class)
                position = index[m - 1].get(label)
                if position is not None:
                    faces.append(position)
            layer_faces.append(tuple(faces))
        boundary.append(layer_faces)

    complex_ = CellComplex(cells, boundary, index)
    logger.debug("T-manifold of codim %d built: cells %s", k, complex_.counts())
    return TManifold(complex_, tri, rps)


def build_from_structure(rps: RealPhaseStructure, validate: bool = True) -> TManifold:
    return build_tmanifold(build_glued(rps.tri), rps, validate=validate)


def connected_components(tm: TManifold) -> tuple[int, list[int]]:
    """
    Union-find das células de topo através das células de codimensão 1.
    Devolve o número de componentes e o rótulo de cada célula de topo.
    """
    cx = tm.complex
    top = cx.top_dim
    uf = UnionFind(range(len(cx.cells[top])))
    if top >= 1:
        for cofaces in cx.cofaces(top - 1):
            for other in cofaces[1:]:
                uf.union(cofaces[0], other)

    labels: dict[int, int] = {}
    labeling = []
    for i in range(len(cx.cells[top])):
        root = uf[i]
        labeling.append(labels.setdefault(root, len(labels)))
    return len(labels), labeling


def non_manifold_cells(tm: TManifold) -> list[GluedCellId]:
    """Células de dimensão top-1 que não estão no bordo de exatamente duas células de topo."""
    cx = tm.complex
    if cx.top_dim < 1:
        return []
    return [
        cx.cells[cx.top_dim - 1][i]
        for i, cofaces in enumerate(cx.cofaces(cx.top_dim - 1))
        if len(cofaces) != 2
    ]


def is_closed_manifold(tm: TManifold) -> bool:
    return not non_manifold_cells(tm)


def cell_census(tm: TManifold) -> CellCensus:
    n, k = tm.tri.n, tm.codim
    cx = tm.complex
    top = cx.top_dim
    max_cells = len(cx.cells[top])
    if top == 0:
        simplicial = max_cells
    else:
        simplicial = sum(1 for faces in cx.boundary[top] if len(faces) == top + 1)
    volume = tm.tri.volume
    return CellCensus(
        max_cells=max_cells,
        simplicial_max_cells=simplicial,
        expected_max_cells=sum(comb(n, i) for i in range(k, n + 1)) * volume,
        simplicial_bound=2 / (k + 1) * comb(n + 1, k) * volume,
    )


def contains(tm_a: TManifold, tm_b: TManifold) -> bool:
    """
    X_B ⊆ X_A: todo s em E_B(τ) está em E_A(τ) para dim τ >= k_B.
    Basta verificar os k_B-simplexos, porque E_A(τ) cresce com τ.
    """
    return contains_structure(tm_a.rps, tm_b.rps)


def contains_structure(rps_a: RealPhaseStructure, rps_b: RealPhaseStructure) -> bool:
    if rps_a.tri != rps_b.tri:
        raise TriangulationMismatchError("contains")
    if rps_b.codim < rps_a.codim:
        raise CodimensionError(rps_b.codim, "the contained structure needs k_B >= k_A")
    tri = rps_a.tri
    for sigma in tri.faces(rps_b.codim):
        support_a = [rps_a.assignments[f] for f in subfaces(sigma, rps_a.codim)]
        for s in rps_b.assignments[sigma].members():
            if not any(coset.contains(s) for coset in support_a):
                return False
    return True


def enclosure_search(
    tri: Triangulation, rps: RealPhaseStructure
) -> list[SignDistribution]:
    """
    Todas as μ com μ(0) = '+' tais que X_{E_μ} contém X_rps.
    Em cada triângulo τ e cada s de E(τ), os valores μ(v) + s·v não podem ser todos iguais.
    """
    if rps.codim != 2:
        raise CodimensionError(rps.codim, "enclosure search works on codimension 2")
    count = len(tri.vertex_coords)
    cap = get_settings().enclosure_cap
    if count > cap:
        raise EnclosureCapExceeded(count, cap)

    bits = tri.vertex_bits
    checks: dict[int, list[tuple[tuple[int, ...], list[int]]]] = {}
    for tau in tri.faces(2):
        checks.setdefault(max(tau), []).append((tau, rps.assignments[tau].members()))

    results: list[SignDistribution] = []
    signs = [0] * count

    def consistent(v: int) -> bool:
        for tau, orthants in checks.get(v, ()):
            for s in orthants:
                values = {signs[u] ^ ((bits[u] & s).bit_count() & 1) for u in tau}
                if len(values) == 1:
                    return False
        return True

    def search(v: int) -> None:
        if v == count:
            results.append(SignDistribution(tuple(signs)))
            return
        for value in ((0,) if v == 0 else (0, 1)):
            signs[v] = value
            if consistent(v):
                search(v + 1)
        signs[v] = 0

    search(0)
    logger.info(
        "Enclosure search over %d vertices found %d distributions",
        count,
        len(results),
    )
    return results


# === Estrutura não extensível no hexágono ===

NON_EXTENDABLE_VERTICES = [
    (0, 1),
    (0, 2),
    (1, 1),
    (1, 0),
    (2, 0),
    (2, 1),
    (3, 0),
    (3, 1),
    (2, 2),
    (1, 2),
]

# triângulo por rótulos de vértice (A..J) e o único ortante atribuído
NON_EXTENDABLE_TABLE = {
    "ABC": "++",
    "ADC": "--",
    "DEC": "-+",
    "EFC": "--",
    "EGF": "++",
    "GFH": "-+",
    "HIF": "++",
    "IJF": "+-",
    "JCF": "++",
    "JBC": "+-",
}


def non_extendable_fixture() -> RealPhaseStructure:
    """
    Estrutura de codimensão 2 no hexágono com dez triângulos unimodulares que
    nenhuma distribuição de sinais envolve.
    """
    polytope = Polytope(
        2,
        ((0, 1), (0, 2), (1, 0), (3, 0), (3, 1), (2, 2)),
        (
            Facet((0, -1), 0),
            Facet((1, 0), 3),
            Facet((1, 1), 4),
            Facet((0, 1), 2),
            Facet((-1, 0), 0),
            Facet((-1, -1), -1),
        ),
    )
    labels = "ABCDEFGHIJ"
    triangles = [[labels.index(ch) for ch in name] for name in NON_EXTENDABLE_TABLE]
    tri = Triangulation.build(polytope, NON_EXTENDABLE_VERTICES, triangles)
    table = {
        tuple(labels.index(ch) for ch in name): [orthant]
        for name, orthant in NON_EXTENDABLE_TABLE.items()
    }
    return phase_structure_from_table(tri, 2, table)
