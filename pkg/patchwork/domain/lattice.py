"""
Geometria de reticulado exata: politopos em representação H, triangulações
unimodulares, espaços tangentes módulo 2 e contagem de pontos do reticulado.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np
import sympy

from patchwork.core.config import get_settings
from patchwork.core.exceptions import (
    DimensionLimitExceeded,
    InvalidInputError,
    NotASimplexError,
    SimplexOutsidePolytopeError,
    UnknownSimplexError,
)
from patchwork.domain.gf2 import F2Subspace, reduce_coords
from patchwork.models.reports import FaceViolation, TriangulationReport

logger = logging.getLogger(__name__)

Point = tuple[int, ...]
Simplex = tuple[int, ...]


def make_simplex(vertex_ids: Iterable[int]) -> Simplex:
    """Forma canônica de um simplexo: ids distintos em ordem crescente."""
    ids = tuple(sorted(vertex_ids))
    if len(set(ids)) != len(ids):
        raise InvalidInputError(f"simplex {list(ids)}", "has repeated vertices")
    return ids


def subfaces(simplex: Simplex, dim: int) -> list[Simplex]:
    """Faces de dimensão dim de um simplexo."""
    if dim < 0:
        return []
    return list(itertools.combinations(simplex, dim + 1))


@dataclass(frozen=True)
class Facet:
    normal: Point
    offset: int

    def value(self, point: Sequence[int]) -> int:
        return sum(a * x for a, x in zip(self.normal, point))

    def is_tight(self, point: Sequence[int]) -> bool:
        return self.value(point) == self.offset


@dataclass(frozen=True)
class Polytope:
    """Politopo de reticulado com convenção normal·x <= offset."""

    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Facet, ...]

    def dilate(self, factor: int) -> "Polytope":
        return Polytope(
            self.dim,
            tuple(tuple(factor * x for x in v) for v in self.vertices),
            tuple(Facet(f.normal, factor * f.offset) for f in self.facets),
        )

    def violated_facet(self, point: Sequence[int]) -> Optional[int]:
        """Índice da primeira faceta violada pelo ponto, ou None."""
        for i, facet in enumerate(self.facets):
            if facet.value(point) > facet.offset:
                return i
        return None

    def contains(self, point: Sequence[int]) -> bool:
        return self.violated_facet(point) is None

    def contains_strictly(self, point: Sequence[int]) -> bool:
        return all(f.value(point) < f.offset for f in self.facets)


def standard_simplex(n: int) -> Polytope:
    return dilated_simplex(n, 1)


def dilated_simplex(n: int, d: int) -> Polytope:
    """d vezes o simplexo padrão de dimensão n."""
    vertices = [tuple([0] * n)]
    for i in range(n):
        v = [0] * n
        v[i] = d
        vertices.append(tuple(v))
    facets = []
    for i in range(n):
        normal = [0] * n
        normal[i] = -1
        facets.append(Facet(tuple(normal), 0))
    facets.append(Facet(tuple([1] * n), d))
    return Polytope(n, tuple(vertices), tuple(facets))


def unit_cube(n: int) -> Polytope:
    vertices = tuple(itertools.product((0, 1), repeat=n))
    facets = []
    for i in range(n):
        normal = [0] * n
        normal[i] = -1
        facets.append(Facet(tuple(normal), 0))
        normal = [0] * n
        normal[i] = 1
        facets.append(Facet(tuple(normal), 1))
    return Polytope(n, vertices, tuple(facets))


# === Contagem de pontos do reticulado ===


def lattice_points(
    poly: Polytope, dilation: int = 1, strict: bool = False
) -> np.ndarray:
    """
    Pontos inteiros de dilation·poly por força bruta na caixa envolvente.
    Com strict=True só entram pontos que satisfazem todas as facetas estritamente.
    """
    verts = np.array(poly.vertices, dtype=np.int64) * dilation
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, poly.dim)

    normals = np.array([f.normal for f in poly.facets], dtype=np.int64)
    offsets = np.array([f.offset for f in poly.facets], dtype=np.int64) * dilation
    values = grid @ normals.T
    mask = (values < offsets) if strict else (values <= offsets)
    return grid[mask.all(axis=1)]


def interior_lattice_points(poly: Polytope, dilation: int) -> int:
    """Número de pontos inteiros no interior estrito de dilation·poly."""
    if dilation < 1:
        raise InvalidInputError(f"dilation {dilation}", "must be >= 1")
    return int(lattice_points(poly, dilation, strict=True).shape[0])


T = sympy.Symbol("t")


def ehrhart_polynomial(poly: Polytope) -> sympy.Poly:
    """Polinômio de Ehrhart por interpolação exata das contagens em t = 0..n+1."""
    samples = [(t, int(lattice_points(poly, t).shape[0])) for t in range(poly.dim + 2)]
    poly_t = sympy.Poly(sympy.interpolate(samples, T), T)
    logger.debug("Ehrhart polynomial of %d-polytope: %s", poly.dim, poly_t.as_expr())
    return poly_t


def lattice_volume(poly: Polytope) -> int:
    """Volume normalizado: n! vezes o coeficiente líder do polinômio de Ehrhart."""
    leading = ehrhart_polynomial(poly).LC()
    return int(leading * math.factorial(poly.dim))


# === Triangulações ===


@dataclass(frozen=True)
class FaceDescriptor:
    """Menor face do politopo que contém um simplexo."""

    facets: frozenset[int]
    tangent: F2Subspace
    orthogonal: F2Subspace


@dataclass(frozen=True)
class Triangulation:
    """
    Triangulação de um politopo de reticulado.
    Imutável; faces, estrelas e faces mínimas são derivadas sob demanda.
    """

    polytope: Polytope
    vertex_coords: tuple[Point, ...]
    maximal_simplices: tuple[Simplex, ...]
    _face_cache: dict = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    @classmethod
    def build(
        cls,
        polytope: Polytope,
        vertex_coords: Sequence[Sequence[int]],
        maximal_simplices: Iterable[Iterable[int]],
    ) -> "Triangulation":
        """Constrói a triangulação com simplexos canônicos e checagem do limite de dimensão."""
        limit = get_settings().max_dim
        if polytope.dim > limit:
            raise DimensionLimitExceeded(polytope.dim, limit)

        coords = tuple(tuple(int(x) for x in v) for v in vertex_coords)
        simplices = []
        for s in maximal_simplices:
            simplex = make_simplex(s)
            if any(v < 0 or v >= len(coords) for v in simplex):
                raise UnknownSimplexError(simplex)
            simplices.append(simplex)
        tri = cls(polytope, coords, tuple(simplices))
        logger.debug(
            "Triangulation built: dim=%d vertices=%d simplices=%d",
            polytope.dim,
            len(coords),
            len(simplices),
        )
        return tri

    @property
    def n(self) -> int:
        return self.polytope.dim

    @property
    def volume(self) -> int:
        """Volume do reticulado, igual ao número de simplexos unimodulares."""
        return len(self.maximal_simplices)

    @cached_property
    def vertex_bits(self) -> tuple[int, ...]:
        """Reduções módulo 2 das coordenadas de cada vértice."""
        return tuple(reduce_coords(v) for v in self.vertex_coords)

    @cached_property
    def faces_by_dim(self) -> dict[int, tuple[Simplex, ...]]:
        faces: dict[int, set[Simplex]] = {k: set() for k in range(self.n + 1)}
        for simplex in self.maximal_simplices:
            for k in range(len(simplex)):
                faces[k].update(itertools.combinations(simplex, k + 1))
        return {k: tuple(sorted(v)) for k, v in faces.items()}

    @cached_property
    def face_set(self) -> frozenset[Simplex]:
        return frozenset(s for faces in self.faces_by_dim.values() for s in faces)

    def faces(self, dim: int) -> tuple[Simplex, ...]:
        return self.faces_by_dim.get(dim, ())

    def require(self, simplex: Iterable[int]) -> Simplex:
        """Devolve o simplexo canônico ou lança UnknownSimplexError."""
        s = tuple(sorted(simplex))
        if s not in self.face_set:
            raise UnknownSimplexError(s)
        return s

    @cached_property
    def facet_star(self) -> dict[Simplex, list[Simplex]]:
        """(n-1)-simplexos mapeados para os simplexos maximais que os contêm."""
        star: dict[Simplex, list[Simplex]] = {}
        for simplex in self.maximal_simplices:
            for face in itertools.combinations(simplex, self.n):
                star.setdefault(face, []).append(simplex)
        return star

    @cached_property
    def boundary_facets(self) -> tuple[Simplex, ...]:
        return tuple(sorted(f for f, star in self.facet_star.items() if len(star) == 1))

    @cached_property
    def vertex_star(self) -> dict[int, list[Simplex]]:
        star: dict[int, list[Simplex]] = {}
        for simplex in self.maximal_simplices:
            for v in simplex:
                star.setdefault(v, []).append(simplex)
        return star

    @cached_property
    def edge_graph(self) -> dict[int, set[int]]:
        adjacency: dict[int, set[int]] = {
            v: set() for v in range(len(self.vertex_coords))
        }
        for a, b in self.faces(1):
            adjacency[a].add(b)
            adjacency[b].add(a)
        return adjacency

    def minimal_face(self, simplex: Simplex) -> FaceDescriptor:
        descriptor = self._face_cache.get(simplex)
        if descriptor is None:
            descriptor = minimal_face(self.polytope, simplex, self.vertex_coords)
            self._face_cache[simplex] = descriptor
        return descriptor

    def is_single_simplex(self) -> bool:
        return len(self.maximal_simplices) == 1


def tangent_mod2(tri: Triangulation, simplex: Iterable[int]) -> F2Subspace:
    """T2(s): span sobre F2 das diferenças v_i - v_0 módulo 2."""
    s = tri.require(simplex)
    base = tri.vertex_bits[s[0]]
    return F2Subspace.span(tri.n, (tri.vertex_bits[v] ^ base for v in s[1:]))


def orthogonal(sub: F2Subspace) -> F2Subspace:
    return sub.orthogonal()


def minimal_face(
    poly: Polytope, simplex: Sequence[int], coords: Sequence[Sequence[int]]
) -> FaceDescriptor:
    """
    Facetas justas em todos os vértices do simplexo e o T2-ortogonal da face.
    A tangente da face é gerada pelas diferenças dos pontos da tabela que estão nela.
    """
    for v in simplex:
        violated = poly.violated_facet(coords[v])
        if violated is not None:
            raise SimplexOutsidePolytopeError(simplex, violated)

    tight = frozenset(
        i
        for i, facet in enumerate(poly.facets)
        if all(facet.is_tight(coords[v]) for v in simplex)
    )
    if not tight:
        tangent = F2Subspace.full(poly.dim)
    else:
        on_face = [
            reduce_coords(p)
            for p in coords
            if all(poly.facets[i].is_tight(p) for i in tight)
        ]
        tangent = F2Subspace.span(poly.dim, (b ^ on_face[0] for b in on_face))
    return FaceDescriptor(tight, tangent, tangent.orthogonal())


def simplex_determinant(tri: Triangulation, simplex: Simplex) -> int:
    coords = np.array([tri.vertex_coords[v] for v in simplex], dtype=np.int64)
    if coords.shape[0] != tri.n + 1:
        return 0
    edges = coords[1:] - coords[0]
    return int(round(np.linalg.det(edges.astype(float))))


def _orientation(coords: np.ndarray, face: Simplex, apex: int) -> int:
    base = coords[face[0]]
    rows = [coords[v] - base for v in face[1:]] + [coords[apex] - base]
    return int(np.sign(round(np.linalg.det(np.array(rows, dtype=float)))))


def validate_triangulation(tri: Triangulation) -> TriangulationReport:
    """
    Valida unimodularidade, encaixe face a face e volume da triangulação.
    O volume é comparado com a soma de |det| e com o volume de Ehrhart do politopo.
    """
    n = tri.n
    coords = np.array(tri.vertex_coords, dtype=np.int64)

    outside = [
        i for i, p in enumerate(tri.vertex_coords) if not tri.polytope.contains(p)
    ]

    determinants = []
    non_unimodular = []
    malformed = []
    for simplex in tri.maximal_simplices:
        if len(simplex) != n + 1:
            malformed.append(list(simplex))
            determinants.append(0)
            continue
        det = simplex_determinant(tri, simplex)
        determinants.append(det)
        if abs(det) != 1:
            non_unimodular.append(list(simplex))

    violations = []
    for face, star in tri.facet_star.items():
        if len(star) > 2:
            violations.append(
                FaceViolation(
                    facet=list(face),
                    simplices=[list(s) for s in star],
                    reason="facet shared by more than two simplices",
                )
            )
        elif len(star) == 2:
            (a,) = set(star[0]) - set(face)
            (b,) = set(star[1]) - set(face)
            if _orientation(coords, face, a) == _orientation(coords, face, b):
                violations.append(
                    FaceViolation(
                        facet=list(face),
                        simplices=[list(s) for s in star],
                        reason="simplices overlap across a shared facet",
                    )
                )
        elif not any(
            all(f.is_tight(tri.vertex_coords[v]) for v in face)
            for f in tri.polytope.facets
        ):
            violations.append(
                FaceViolation(
                    facet=list(face),
                    simplices=[list(s) for s in star],
                    reason="interior facet belongs to a single simplex",
                )
            )

    det_volume = sum(abs(d) for d in determinants)
    volume = lattice_volume(tri.polytope)
    valid = (
        not outside
        and not non_unimodular
        and not malformed
        and not violations
        and det_volume == volume
        and len(tri.maximal_simplices) == volume
    )
    if not valid:
        logger.warning(
            "Triangulation failed validation: %d non-unimodular, %d face violations, "
            "%d vertices outside",
            len(non_unimodular),
            len(violations),
            len(outside),
        )
    return TriangulationReport(
        valid=valid,
        dim=n,
        simplex_count=len(tri.maximal_simplices),
        det_volume=det_volume,
        lattice_volume=volume,
        determinants=determinants,
        non_unimodular=non_unimodular,
        malformed_simplices=malformed,
        face_violations=violations,
        vertices_outside=outside,
    )


# === Triangulações prontas ===


def _index_points(points: Iterable[Point]) -> tuple[list[Point], dict[Point, int]]:
    table = sorted(set(points))
    return table, {p: i for i, p in enumerate(table)}


def trivial_triangulation(poly: Polytope) -> Triangulation:
    """Triangulação por um único simplexo unimodular."""
    if len(poly.vertices) != poly.dim + 1:
        raise NotASimplexError(len(poly.vertices))
    tri = Triangulation.build(poly, poly.vertices, [range(poly.dim + 1)])
    if abs(simplex_determinant(tri, tri.maximal_simplices[0])) != 1:
        raise NotASimplexError(abs(simplex_determinant(tri, tri.maximal_simplices[0])))
    return tri


def staircase_triangulation(n: int, d: int) -> Triangulation:
    """
    Triangulação de Freudenthal de dΔn com d^n simplexos.
    Em y_i = x_i + ... + x_n o politopo vira d >= y_1 >= ... >= y_n >= 0,
    que é união de alcovas do reticulado cúbico.
    """
    alcoves = []
    for base in itertools.product(range(d), repeat=n):
        for perm in itertools.permutations(range(n)):
            y = list(base)
            walk = [tuple(y)]
            for axis in perm:
                y[axis] += 1
                walk.append(tuple(y))
            if all(
                d >= p[0] and p[-1] >= 0 and all(p[i] >= p[i + 1] for i in range(n - 1))
                for p in walk
            ):
                alcoves.append(walk)

    def to_x(p: Point) -> Point:
        return tuple(p[i] - (p[i + 1] if i + 1 < n else 0) for i in range(n))

    table, index = _index_points(to_x(p) for walk in alcoves for p in walk)
    simplices = [[index[to_x(p)] for p in walk] for walk in alcoves]
    return Triangulation.build(dilated_simplex(n, d), table, simplices)


def fan_triangulation_2d() -> Triangulation:
    """Triangulação de 2Δ2 em leque a partir da origem passando por (1,1)."""
    triangles = [
        [(0, 0), (1, 0), (1, 1)],
        [(0, 0), (1, 1), (0, 1)],
        [(1, 0), (2, 0), (1, 1)],
        [(0, 1), (1, 1), (0, 2)],
    ]
    table, index = _index_points(p for t in triangles for p in t)
    return Triangulation.build(
        dilated_simplex(2, 2), table, [[index[p] for p in t] for t in triangles]
    )
