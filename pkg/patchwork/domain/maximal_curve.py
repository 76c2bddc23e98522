"""
Família de curvas maximais em dΔ3: triangulação em andares, códigos de paridade,
o par (Σ_d, C_d) e o censo classificado dos ciclos de C_d.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional, Union

from patchwork.core.exceptions import (
    InvalidInputError,
    InvariantViolation,
    UnclassifiableComponentError,
)
from patchwork.domain.bounds import b1_dual, dual_graph, is_planar
from patchwork.domain.glued_space import build_glued
from patchwork.domain.homology import betti_f2
from patchwork.domain.lattice import Point, Triangulation, dilated_simplex
from patchwork.domain.phase_structure import SignDistribution, from_sign_distribution
from patchwork.domain.stable_intersection import EdgeOrientation, axis, intersect
from patchwork.domain.tmanifold import (
    TManifold,
    build_tmanifold,
    connected_components,
    non_manifold_cells,
)
from patchwork.models.reports import CycleCensus, CycleFamily, FamilyVerdict

logger = logging.getLogger(__name__)

# (x mod 2, y mod 2, (d - z) mod 2) -> código
PARITY_CODES = {
    (1, 1, 0): 1,
    (0, 0, 0): 2,
    (0, 1, 0): 3,
    (0, 0, 1): 4,
    (1, 0, 0): 5,
    (1, 0, 1): 6,
    (0, 1, 1): 7,
    (1, 1, 1): 8,
}


@dataclass
class FloorData:
    d: int
    triangulation: Triangulation
    parity: dict[int, int]
    mu: SignDistribution
    orientation: EdgeOrientation

    def slice_of(self, vertex: int) -> int:
        """Índice k do corte T_k que contém o vértice."""
        return self.d - self.triangulation.vertex_coords[vertex][2]


def parity_code(point: Point, d: int) -> int:
    x, y, z = point
    if min(x, y, z) < 0 or x + y + z > d:
        raise InvalidInputError(f"point {list(point)}", f"lies outside {d}Δ3")
    return PARITY_CODES[(x % 2, y % 2, (d - z) % 2)]


# === Triangulação em andares ===


def _slice_triangles(k: int) -> list[list[tuple[int, int]]]:
    """Triângulos unimodulares de T_k nas coordenadas (a, b) do corte."""
    triangles = []
    for j in range(k):
        width = k - j
        if j % 2 == 0:
            triangles += [[(i, j), (i + 1, j), (0, j + 1)] for i in range(width)]
            triangles += [
                [(i, j + 1), (i + 1, j + 1), (width, j)] for i in range(width - 1)
            ]
        else:
            triangles += [
                [(i, j + 1), (i + 1, j + 1), (0, j)] for i in range(width - 1)
            ]
            triangles += [
                [(i, j), (i + 1, j), (width - 1, j + 1)] for i in range(width)
            ]
    return triangles


def _lift(k: int, d: int, a: int, b: int) -> Point:
    """Cortes pares usam (x, y) = (a, b); cortes ímpares, a transposta."""
    return (a, b, d - k) if k % 2 == 0 else (b, a, d - k)


def _floor_tetrahedra(d: int) -> list[list[Point]]:
    slices = {
        k: [[_lift(k, d, a, b) for a, b in tri_] for tri_ in _slice_triangles(k)]
        for k in range(d + 1)
    }
    tetrahedra = []
    for k in range(d):
        upper, lower = d - k, d - k - 1
        if k % 2 == 0:
            top_apex, bottom_apex = (0, k + 1, lower), (k, 0, upper)
            seg_up = [(i, 0, upper) for i in range(k + 1)]
            seg_down = [(0, j, lower) for j in range(k + 2)]
        else:
            top_apex, bottom_apex = (k + 1, 0, lower), (0, k, upper)
            seg_up = [(0, j, upper) for j in range(k + 1)]
            seg_down = [(i, 0, lower) for i in range(k + 2)]
        tetrahedra += [t + [top_apex] for t in slices[k]]
        tetrahedra += [t + [bottom_apex] for t in slices[k + 1]]
        tetrahedra += [
            [seg_up[i], seg_up[i + 1], seg_down[j], seg_down[j + 1]]
            for i in range(len(seg_up) - 1)
            for j in range(len(seg_down) - 1)
        ]
    return tetrahedra


def floor_triangulation(d: int) -> FloorData:
    """
    Cortes T_k = Δ ∩ {z = d-k} triangulados por segmentos e diagonais, cones
    sobre os ápices dos cortes vizinhos e a junção de S_k^k com S_{k+1}^{k+1}.
    """
    if d < 1:
        raise InvalidInputError(f"degree {d}", "must be >= 1")
    points = sorted(
        (x, y, z)
        for x in range(d + 1)
        for y in range(d + 1 - x)
        for z in range(d + 1 - x - y)
    )
    index = {p: i for i, p in enumerate(points)}
    simplices = [[index[p] for p in tet] for tet in _floor_tetrahedra(d)]
    tri = Triangulation.build(dilated_simplex(3, d), points, simplices)

    parity = {i: parity_code(p, d) for i, p in enumerate(points)}
    mu = SignDistribution(tuple(parity[i] % 2 for i in range(len(points))))
    orientation = EdgeOrientation.from_parity_codes(tri, parity)
    logger.debug("Floor triangulation of degree %d: %d tetrahedra", d, tri.volume)
    return FloorData(d, tri, parity, mu, orientation)


def flipped_sign_variant(fd: FloorData, vertex: Optional[int] = None) -> FloorData:
    """Mesma triangulação e orientação com o sinal de um vértice trocado."""
    if vertex is None:
        interior = [
            v
            for v, p in enumerate(fd.triangulation.vertex_coords)
            if fd.triangulation.polytope.contains_strictly(p)
        ]
        vertex = interior[0] if interior else 0
    signs = list(fd.mu.signs)
    signs[vertex] ^= 1
    return replace(fd, mu=SignDistribution(tuple(signs)))


# === Σ_d e C_d ===


def build_family(d: Union[int, FloorData]) -> tuple[TManifold, TManifold]:
    """Σ_d = X_{E_μ} e C_d = X_{E_μ ∩_O E_μ} sobre a triangulação em andares."""
    fd = floor_triangulation(d) if isinstance(d, int) else d
    tri = fd.triangulation
    gc = build_glued(tri)
    e_mu = from_sign_distribution(tri, fd.mu)
    sigma = build_tmanifold(gc, e_mu, validate=False)
    curve = build_tmanifold(gc, intersect(e_mu, e_mu, fd.orientation), validate=False)
    logger.info(
        "Family of degree %d built: surface cells %s, curve cells %s",
        fd.d,
        sigma.complex.counts(),
        curve.complex.counts(),
    )
    return sigma, curve


def closed_form_census(d: int) -> dict[CycleFamily, int]:
    """Contagens esperadas por família; a soma é d³ - 2d² + 2."""
    horizontal = (2 * d**3 - 9 * d**2 + 13 * d - 6) // 6
    return {
        CycleFamily.HORIZONTAL: horizontal,
        CycleFamily.TRANSVERSAL: horizontal,
        CycleFamily.PURE_JOIN: d * (d - 1) * (d - 2) // 3,
        CycleFamily.BOUNDARY_JOIN: (d - 1) ** 2,
        CycleFamily.AXISLESS: (d - 1) * (d - 2),
        CycleFamily.GLOBAL: 1,
    }


# === Classificação dos ciclos ===


def _segment(k: int, point: Point) -> tuple[int, int]:
    """(l, posição ao longo de S_k^l) de um ponto do corte k."""
    x, y, _ = point
    if k % 2 == 0:
        return k - y, x
    return k - x, y


def _in_segment_interior(k: int, point: Point, l: Optional[int] = None) -> bool:
    seg, pos = _segment(k, point)
    return (l is None or seg == l) and 0 < pos < seg


def _in_slice_interior(k: int, point: Point) -> bool:
    x, y, _ = point
    return x > 0 and y > 0 and x + y < k


def _cone_apex(k: int, target: int, d: int) -> Point:
    """Ápice, no corte target, do cone sobre T_k."""
    if k % 2 == 0:
        return (0, target, d - target)
    return (target, 0, d - target)


def _classify_axis(fd: FloorData, edge: tuple[int, int]) -> Optional[CycleFamily]:
    coords = fd.triangulation.vertex_coords
    for v0, v1 in (edge, edge[::-1]):
        p0, p1 = coords[v0], coords[v1]
        k0, k1 = fd.slice_of(v0), fd.slice_of(v1)
        if _in_slice_interior(k0, p0) and abs(k1 - k0) == 1:
            return CycleFamily.HORIZONTAL
        if k0 == k1 and _in_segment_interior(k0, p0):
            l0, _ = _segment(k0, p0)
            l1, _ = _segment(k1, p1)
            if abs(l1 - l0) == 1:
                return CycleFamily.TRANSVERSAL
        if _in_segment_interior(k0, p0, k0) and abs(k1 - k0) == 1:
            if _in_segment_interior(k1, p1, k1):
                return CycleFamily.PURE_JOIN
            if p1 == _cone_apex(k0, k1, fd.d):
                return CycleFamily.BOUNDARY_JOIN
    return None


def cycle_census(fd: FloorData, curve: TManifold, classify: bool = True) -> CycleCensus:
    """
    Conta as componentes de C_d e, se pedido, classifica cada uma pela aresta-eixo
    comum a todas as suas células.
    """
    total, labeling = connected_components(curve)
    if not classify:
        return CycleCensus(total=total)

    tri = fd.triangulation
    top_cells = curve.complex.cells[curve.complex.top_dim]
    axes: dict[int, set] = {}
    touches_apex: dict[int, bool] = {}
    summit = tri.vertex_coords.index((0, 0, fd.d))
    for cell, label in zip(top_cells, labeling):
        edge = axis(tri, fd.mu, fd.orientation, cell.simplex, cell.orthant_class)
        if edge is None:
            key = None
        else:
            edge = tuple(sorted(edge))
            key = (edge, tri.minimal_face(edge).orthogonal.reduce(cell.orthant_class))
        axes.setdefault(label, set()).add(key)
        touches_apex[label] = touches_apex.get(label, False) or summit in cell.simplex

    counts = {family: 0 for family in CycleFamily}
    for label in range(total):
        keys = axes[label]
        if len(keys) == 1 and None not in keys:
            ((edge, _),) = keys
            family = _classify_axis(fd, edge)
            if family is None:
                raise UnclassifiableComponentError(
                    label,
                    f"axis {[tri.vertex_coords[v] for v in edge]} matches no family",
                )
        elif not touches_apex[label]:
            family = CycleFamily.AXISLESS
        else:
            family = CycleFamily.GLOBAL
        counts[family] += 1
    logger.info("Cycle census of degree %d: total %d", fd.d, total)
    return CycleCensus(total=total, classified=counts)


def surface_components_hit(sigma: TManifold, curve: TManifold) -> dict[int, int]:
    """Componente de Σ_d que contém cada componente de C_d."""
    _, surface_labels = connected_components(sigma)
    _, curve_labels = connected_components(curve)
    surface_index = sigma.complex.index[sigma.complex.top_dim]
    hits: dict[int, set[int]] = {}
    for cell, label in zip(curve.complex.cells[curve.complex.top_dim], curve_labels):
        hits.setdefault(label, set()).add(surface_labels[surface_index[cell]])
    mapping = {}
    for label, found in sorted(hits.items()):
        if len(found) != 1:
            raise InvariantViolation(
                "curve inside surface",
                f"curve component {label} meets surface components {found}",
            )
        mapping[label] = found.pop()
    return mapping


def verify_maximality(
    d: Union[int, FloorData], family: Optional[tuple[TManifold, TManifold]] = None
) -> FamilyVerdict:
    """
    b0(C_d) = d³-2d²+2 = b1(G_Γ)+1, Σ_d com Betti total d³-4d²+6d e C_d feita de
    círculos. Aceita a família já construída.
    """
    fd = floor_triangulation(d) if isinstance(d, int) else d
    degree = fd.d
    sigma, curve = family if family is not None else build_family(fd)
    dg = dual_graph(fd.triangulation)
    b1 = b1_dual(dg)
    components, _ = connected_components(curve)
    surface_total = sum(betti_f2(sigma.complex))
    planar = is_planar(dg)

    expected_components = degree**3 - 2 * degree**2 + 2
    expected_surface = degree**3 - 4 * degree**2 + 6 * degree
    checks = {
        "curve component count": components == expected_components,
        "harnack equality": components == b1 + 1,
        "surface betti total": surface_total == expected_surface,
        "curve components are circles": not non_manifold_cells(curve),
        "dual graph planarity": planar,
    }
    for invariant, holds in checks.items():
        if not holds:
            raise InvariantViolation(
                invariant, f"degree {degree} family fails this check"
            )
    return FamilyVerdict(
        d=degree,
        components=components,
        expected_components=expected_components,
        harnack_bound=b1 + 1,
        surface_betti_total=surface_total,
        expected_surface_betti_total=expected_surface,
        planar=planar,
        passed=True,
    )
