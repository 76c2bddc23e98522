"""
Interseção estável de estruturas de fase reais.
Orientações localmente acíclicas das arestas, o operador ∩_O, a construção de
k-estruturas a partir de uma distribuição de sinais, triângulos compatíveis e o
eixo em dimensão 3.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from patchwork.core.exceptions import (
    CodimensionError,
    CyclicOrientationError,
    InvalidFileFormat,
    InvariantViolation,
    TriangulationMismatchError,
)
from patchwork.domain.gf2 import dot
from patchwork.domain.lattice import Simplex, Triangulation
from patchwork.domain.phase_structure import (
    RealPhaseStructure,
    SignDistribution,
    from_sign_distribution,
    trivial_codim0,
)

logger = logging.getLogger(__name__)


@dataclass
class EdgeOrientation:
    """
    Orientação por aresta: cada aresta ordenada (a, b) aponta para a sua cabeça.
    Em cada simplexo, u < v quando a aresta [u, v] vai de v para u.
    """

    tri: Triangulation
    heads: dict[Simplex, int]
    _orders: dict[Simplex, tuple[int, ...]] = field(default_factory=dict, repr=False)

    @classmethod
    def from_vertex_order(
        cls, tri: Triangulation, order: Sequence[int]
    ) -> "EdgeOrientation":
        """Orientação induzida por uma ordem global (do menor para o maior)."""
        rank = {v: i for i, v in enumerate(order)}
        heads = {(a, b): min(a, b, key=rank.__getitem__) for a, b in tri.faces(1)}
        return cls(tri, heads)

    @classmethod
    def from_parity_codes(
        cls, tri: Triangulation, codes: Mapping[int, int]
    ) -> "EdgeOrientation":
        """Arestas orientadas do código maior para o menor."""
        heads = {}
        for a, b in tri.faces(1):
            if codes[a] == codes[b]:
                raise InvariantViolation(
                    "distinct parity codes",
                    f"edge {[a, b]} joins two vertices of code {codes[a]}",
                )
            heads[(a, b)] = a if codes[a] < codes[b] else b
        return cls(tri, heads)

    @classmethod
    def from_edges(
        cls, tri: Triangulation, arrows: Iterable[Sequence[int]]
    ) -> "EdgeOrientation":
        heads = {}
        for tail, head in arrows:
            heads[tuple(sorted((tail, head)))] = head
        missing = [e for e in tri.faces(1) if e not in heads]
        if missing or len(heads) != len(tri.faces(1)):
            raise InvalidFileFormat(
                "<orientation>",
                f"orientation must cover every edge; missing {missing[:3]}",
            )
        return cls(tri, heads)

    def transposed(self) -> "EdgeOrientation":
        flipped = {e: (e[0] if h == e[1] else e[1]) for e, h in self.heads.items()}
        return EdgeOrientation(self.tri, flipped)

    def arrows(self) -> list[tuple[int, int]]:
        """Pares (cauda, cabeça) em ordem de aresta."""
        return [
            ((e[0] if h == e[1] else e[1]), h) for e, h in sorted(self.heads.items())
        ]

    def head(self, a: int, b: int) -> int:
        return self.heads[(a, b) if a < b else (b, a)]

    def order(self, simplex: Sequence[int]) -> tuple[int, ...]:
        """Vértices do simplexo do menor para o maior; erro se houver ciclo."""
        s = tuple(sorted(simplex))
        cached = self._orders.get(s)
        if cached is not None:
            return cached
        tails = {v: 0 for v in s}
        for a, b in itertools.combinations(s, 2):
            h = self.head(a, b)
            tails[a if h == b else b] += 1
        if len(set(tails.values())) != len(s):
            raise CyclicOrientationError(s, _three_cycle(self, s))
        ordered = tuple(sorted(s, key=tails.__getitem__))
        self._orders[s] = ordered
        return ordered


def _three_cycle(o: EdgeOrientation, simplex: Simplex) -> tuple[int, int, int]:
    for a, b, c in itertools.permutations(simplex, 3):
        if o.head(a, b) == b and o.head(b, c) == c and o.head(c, a) == a:
            return (a, b, c)
    raise InvariantViolation("tournament cycle", f"no 3-cycle found in {list(simplex)}")


def validate_orientation(
    tri: Triangulation, o: EdgeOrientation
) -> dict[Simplex, tuple[int, ...]]:
    """Ordem de vértices de cada simplexo maximal; lança CyclicOrientationError."""
    if o.tri != tri:
        raise TriangulationMismatchError("validate_orientation")
    return {s: o.order(s) for s in tri.maximal_simplices}


def intersect(
    rps1: RealPhaseStructure, rps2: RealPhaseStructure, o: EdgeOrientation
) -> RealPhaseStructure:
    """
    E(σ) = E1([v_0..v_k1]) ∩ E2([v_k1..v_k]) com σ ordenado por O.
    As direções se somam em todo F2^n, então a interseção nunca é vazia.
    """
    tri = rps1.tri
    if rps2.tri != tri or o.tri != tri:
        raise TriangulationMismatchError("intersect")
    k1, k2 = rps1.codim, rps2.codim
    if k1 + k2 > tri.n:
        raise CodimensionError(k1 + k2, f"sum of codimensions exceeds {tri.n}")
    validate_orientation(tri, o)

    assignments = {}
    for sigma in tri.faces(k1 + k2):
        ordered = o.order(sigma)
        left = rps1.E(ordered[: k1 + 1])
        right = rps2.E(ordered[k1:])
        coset = left.intersect(right)
        if coset is None:
            raise InvariantViolation(
                "non-empty intersection", f"empty coset on {list(sigma)}"
            )
        assignments[sigma] = coset
    return RealPhaseStructure(tri, k1 + k2, assignments)


def build_k_rps(
    tri: Triangulation, mu: SignDistribution, global_order: Sequence[int]
) -> list[RealPhaseStructure]:
    """E_0, ..., E_n com E_k = E_{k-1} ∩_O E_μ."""
    o = EdgeOrientation.from_vertex_order(tri, global_order)
    e_mu = from_sign_distribution(tri, mu)
    structures = [trivial_codim0(tri)]
    for k in range(1, tri.n + 1):
        structures.append(intersect(structures[-1], e_mu, o))
    logger.debug("Built k-structures for k = 0..%d", tri.n)
    return structures


def extended_sign(tri: Triangulation, mu: SignDistribution, v: int, s: int) -> int:
    """Sinal de μ na cópia s(v): μ(v) + s·v."""
    return mu.signs[v] ^ dot(s, tri.vertex_bits[v])


def compatible_triangle(
    tri: Triangulation,
    mu1: SignDistribution,
    mu2: SignDistribution,
    o: EdgeOrientation,
    triangle: Sequence[int],
    s: int,
) -> bool:
    t = tri.require(triangle)
    if len(t) != 3:
        raise CodimensionError(len(t) - 1, "compatible triangles need a 2-simplex")
    v0, v1, v2 = o.order(t)
    first = extended_sign(tri, mu1, v0, s) != extended_sign(tri, mu1, v1, s)
    second = extended_sign(tri, mu2, v1, s) != extended_sign(tri, mu2, v2, s)
    return first and second


def axis_from_signs(signs: Sequence[int]) -> Optional[tuple[int, int]]:
    """
    Eixo de um tetraedro ordenado a partir dos sinais estendidos ε_0..ε_3.
    Devolve as posições (i, j) da aresta comum aos dois triângulos compatíveis.
    """
    compatible = [
        tri_
        for tri_ in itertools.combinations(range(4), 3)
        if signs[tri_[0]] != signs[tri_[1]] and signs[tri_[1]] != signs[tri_[2]]
    ]
    if not compatible:
        return None
    if len(compatible) != 2:
        raise InvariantViolation(
            "two compatible faces",
            f"signs {list(signs)} give {len(compatible)} compatible faces",
        )
    shared = sorted(set(compatible[0]) & set(compatible[1]))
    return (shared[0], shared[1])


def axis(
    tri: Triangulation,
    mu: SignDistribution,
    o: EdgeOrientation,
    tetra: Sequence[int],
    s: int,
) -> Optional[tuple[int, int]]:
    """Aresta de s(σ) que contém o eixo da curva E_μ ∩_O E_μ, ou None."""
    if tri.n != 3:
        raise CodimensionError(
            tri.n, "the axis is defined for tetrahedra in dimension 3"
        )
    ordered = o.order(tri.require(tetra))
    signs = [extended_sign(tri, mu, v, s) for v in ordered]
    positions = axis_from_signs(signs)
    if positions is None:
        return None
    return (ordered[positions[0]], ordered[positions[1]])


def compatible_orthants(
    tri: Triangulation,
    mu1: SignDistribution,
    mu2: SignDistribution,
    o: EdgeOrientation,
    triangle: Sequence[int],
) -> list[int]:
    """Ortantes s com s(τ) compatível; coincide com (E_μ1 ∩_O E_μ2)(τ)."""
    return [
        s
        for s in range(1 << tri.n)
        if compatible_triangle(tri, mu1, mu2, o, triangle, s)
    ]


def consecutive_edges(ordered: Sequence[int]) -> list[tuple[int, int]]:
    """As quatro arestas [v0v1], [v1v2], [v2v3], [v3v0] de um tetraedro ordenado."""
    return [(ordered[i], ordered[(i + 1) % 4]) for i in range(4)]

