"""
Exportação de malhas OFF e OBJ de T-variedades em dimensão 3.
Cada cópia s(Δ) é realizada espelhando as coordenadas pelos sinais de s; as
células canônicas são desenhadas pela subdivisão baricêntrica.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from patchwork.core.exceptions import UnsupportedExportError
from patchwork.domain.gf2 import F2Subspace, format_orthant
from patchwork.domain.lattice import Simplex, subfaces
from patchwork.domain.tmanifold import TManifold, connected_components

logger = logging.getLogger(__name__)

FORMATS = ("off", "obj")
MeshPoint = tuple[Fraction, ...]


class _MeshBuilder:
    """Tabela de vértices sem repetição e faces agrupadas por componente."""

    def __init__(self):
        self.points: list[MeshPoint] = []
        self.index: dict[MeshPoint, int] = {}
        self.groups: dict[int, list[tuple[int, ...]]] = {}

    def add_point(self, point: MeshPoint) -> int:
        if point not in self.index:
            self.index[point] = len(self.points)
            self.points.append(point)
        return self.index[point]

    def add(self, component: int, points: list[MeshPoint]) -> None:
        piece = tuple(self.add_point(p) for p in points)
        self.groups.setdefault(component, []).append(piece)

    def face_count(self) -> int:
        return sum(len(faces) for faces in self.groups.values())


def _barycenter(tm: TManifold, simplex: Simplex, orthant: int) -> MeshPoint:
    coords = [tm.tri.vertex_coords[v] for v in simplex]
    size = len(simplex)
    return tuple(
        Fraction(sum(p[i] for p in coords), size) * (-1 if (orthant >> i) & 1 else 1)
        for i in range(tm.tri.n)
    )


def _in_cell(tm: TManifold, simplex: Simplex, orthant: int) -> bool:
    """A face (simplex, s) pertence a X_E quando s está em E de alguma k-face."""
    return any(
        tm.rps.assignments[face].contains(orthant)
        for face in subfaces(simplex, tm.codim)
    )


def _chains(tm: TManifold, simplex: Simplex, orthant: int) -> list[list[Simplex]]:
    """Cadeias τ_0 < ... < τ_m = σ de faces na célula, com dim τ_0 = k."""
    k = tm.codim
    if len(simplex) - 1 == k:
        return [[simplex]]
    chains = []
    for face in subfaces(simplex, len(simplex) - 2):
        if _in_cell(tm, face, orthant):
            chains.extend(chain + [simplex] for chain in _chains(tm, face, orthant))
    return chains


def _collect(tm: TManifold) -> _MeshBuilder:
    builder = _MeshBuilder()
    _, labels = connected_components(tm)
    top = tm.complex.cells[tm.complex.top_dim]
    for cell, label in zip(top, labels):
        s = cell.orthant_class
        if tm.codim == 0:
            for face in subfaces(cell.simplex, tm.tri.n - 1):
                builder.add(label, [_barycenter(tm, (v,), s) for v in face])
            continue
        for chain in _chains(tm, cell.simplex, s):
            points = [_barycenter(tm, tau, s) for tau in chain]
            if tm.dim == 2 or tm.dim == 1:
                builder.add(label, points)
            else:
                raise UnsupportedExportError(f"cannot draw {tm.dim}-dimensional cells")
    return builder


def gluing_metadata(tm: TManifold) -> list[str]:
    """Identificações de cópias ao longo de cada faceta de Δ."""
    tri = tm.tri
    lines = []
    for i, facet in enumerate(tri.polytope.facets):
        on_facet = [
            b for p, b in zip(tri.vertex_coords, tri.vertex_bits) if facet.is_tight(p)
        ]
        tangent = F2Subspace.span(tri.n, (b ^ on_facet[0] for b in on_facet))
        generators = ", ".join(
            format_orthant(v, tri.n) for v in tangent.orthogonal().basis
        )
        lines.append(
            f"glue facet {i} normal {list(facet.normal)}: s ~ s + <{generators}>"
        )
    return lines


def _ordered_pieces(segments: list[tuple[int, ...]]) -> list[list[int]]:
    """Encadeia segmentos em polilinhas; laços fechados repetem o primeiro vértice."""
    adjacency: dict[int, list[int]] = {}
    for a, b in segments:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    seen: set[int] = set()
    pieces = []
    starts = [v for v in adjacency if len(adjacency[v]) == 1] + list(adjacency)
    for start in starts:
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        current = start
        while True:
            nxt = next((v for v in adjacency[current] if v not in seen), None)
            if nxt is None:
                break
            walk.append(nxt)
            seen.add(nxt)
            current = nxt
        if len(walk) > 2 and start in adjacency[current]:
            walk.append(start)
        pieces.append(walk)
    return pieces


def _format_number(x: Fraction) -> str:
    return f"{float(x):.6g}"


def render_mesh(tm: TManifold, fmt: str) -> str:
    """Texto OFF ou OBJ da T-variedade."""
    fmt = fmt.lower()
    if tm.tri.n != 3:
        raise UnsupportedExportError(f"mesh export needs n = 3, got n = {tm.tri.n}")
    if fmt not in FORMATS:
        raise UnsupportedExportError(f"unknown mesh format '{fmt}'")
    if fmt == "off" and tm.dim == 1:
        raise UnsupportedExportError("curves are exported as OBJ polylines, not OFF")

    builder = _collect(tm)
    header = [f"patchwork T-manifold: dim {tm.dim}, codim {tm.codim}"]
    header += [
        f"component {c}: {len(faces)} pieces"
        for c, faces in sorted(builder.groups.items())
    ]
    header += gluing_metadata(tm)

    lines: list[str]
    if fmt == "off":
        lines = ["OFF"] + [f"# {h}" for h in header]
        lines.append(f"{len(builder.points)} {builder.face_count()} 0")
        lines += [" ".join(_format_number(x) for x in p) for p in builder.points]
        for _, faces in sorted(builder.groups.items()):
            lines += [f"{len(f)} " + " ".join(str(v) for v in f) for f in faces]
    else:
        lines = [f"# {h}" for h in header]
        lines += ["v " + " ".join(_format_number(x) for x in p) for p in builder.points]
        for component, faces in sorted(builder.groups.items()):
            lines.append(f"o component_{component}")
            if tm.dim == 1:
                for piece in _ordered_pieces(faces):
                    lines.append("l " + " ".join(str(v + 1) for v in piece))
            else:
                lines += ["f " + " ".join(str(v + 1) for v in f) for f in faces]
    logger.info(
        "Exported %s mesh: %d vertices, %d pieces",
        fmt,
        len(builder.points),
        builder.face_count(),
    )
    return "\n".join(lines) + "\n"


def export_mesh(
    tm: TManifold, fmt: str, path: Optional[Union[str, Path]] = None
) -> str:
    text = render_mesh(tm, fmt)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
