"""
Estruturas de fase reais: representação, validação de direção e paridade,
correspondência com distribuições de sinais, restrição e projeção em simplexos
unimodulares, censos de ortantes e decomposição em colar.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

import networkx as nx
import numpy as np

from patchwork.core.config import get_settings
from patchwork.core.exceptions import (
    AssignmentCoverageError,
    CodimensionError,
    FacetError,
    InconsistentSignsError,
    InvalidPhaseStructureError,
    NecklaceError,
    NotASimplexError,
)
from patchwork.domain.gf2 import (
    F2AffineSubspace,
    F2Subspace,
    dot,
    format_orthant,
    parse_orthant,
    reduce_coords,
)
from patchwork.domain.lattice import (
    Simplex,
    Triangulation,
    dilated_simplex,
    subfaces,
    tangent_mod2,
    trivial_triangulation,
)
from patchwork.models.reports import ParityFailure, PhaseStructureReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignDistribution:
    """Sinais por vértice; 0 representa '+' e 1 representa '-'."""

    signs: tuple[int, ...]

    @classmethod
    def from_string(cls, text: str) -> "SignDistribution":
        bits = parse_orthant(text)
        return cls(tuple((bits >> i) & 1 for i in range(len(text))))

    def to_string(self) -> str:
        return "".join("-" if s else "+" for s in self.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def inverted(self) -> "SignDistribution":
        return SignDistribution(tuple(1 - s for s in self.signs))

    def normalized(self) -> "SignDistribution":
        """Representante com o vértice 0 positivo."""
        return self.inverted() if self.signs and self.signs[0] else self


def random_sign_distribution(
    tri: Triangulation, seed: Optional[int] = None
) -> SignDistribution:
    """Distribuição aleatória reprodutível (semente PATCHWORK_RANDOM_SEED por padrão)."""
    rng = np.random.default_rng(get_settings().random_seed if seed is None else seed)
    draws = rng.integers(0, 2, len(tri.vertex_coords))
    return SignDistribution(tuple(int(x) for x in draws))


@dataclass(frozen=True, eq=False)
class RealPhaseStructure:
    """
    Estrutura de fase real de codimensão k: uma classe lateral E(σ) por k-simplexo.
    A igualdade é estrutural sobre triangulação, codimensão e atribuições.
    """

    tri: Triangulation
    codim: int
    assignments: Mapping[Simplex, F2AffineSubspace]

    @property
    def n(self) -> int:
        return self.tri.n

    def E(self, simplex: Sequence[int]) -> F2AffineSubspace:
        return self.assignments[tuple(sorted(simplex))]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealPhaseStructure):
            return NotImplemented
        return (
            self.codim == other.codim
            and self.tri == other.tri
            and dict(self.assignments) == dict(other.assignments)
        )


def t2_perp(tri: Triangulation, simplex: Simplex) -> F2Subspace:
    return tangent_mod2(tri, simplex).orthogonal()


def check_coverage(
    tri: Triangulation, codim: int, simplices: Iterable[Simplex]
) -> None:
    expected = set(tri.faces(codim))
    given = set(simplices)
    if given != expected:
        raise AssignmentCoverageError(
            sorted(expected - given), sorted(given - expected)
        )


def validate_rps(tri: Triangulation, rps: RealPhaseStructure) -> PhaseStructureReport:
    """Verifica direções e a condição de paridade em cada (k+1)-simplexo."""
    k = rps.codim
    if not 0 <= k <= tri.n:
        raise CodimensionError(k, f"must be between 0 and {tri.n}")
    check_coverage(tri, k, rps.assignments)

    direction_failures = [
        list(s)
        for s, coset in sorted(rps.assignments.items())
        if coset.direction != t2_perp(tri, s)
    ]

    parity_failures = []
    taus = tri.faces(k + 1) if k < tri.n else ()
    for tau in taus:
        cosets = [rps.assignments[s] for s in subfaces(tau, k)]
        candidates = set()
        for coset in cosets:
            candidates.update(coset.members())
        for s in sorted(candidates):
            count = sum(1 for coset in cosets if coset.contains(s))
            if count % 2:
                parity_failures.append(
                    ParityFailure(
                        tau=list(tau), orthant=format_orthant(s, tri.n), count=count
                    )
                )

    valid = not direction_failures and not parity_failures
    logger.debug(
        "validate_rps codim=%d: %d direction failures, %d parity failures",
        k,
        len(direction_failures),
        len(parity_failures),
    )
    return PhaseStructureReport(
        valid=valid,
        codim=k,
        checked_simplices=len(rps.assignments) + len(taus),
        direction_failures=direction_failures,
        parity_failures=parity_failures,
    )


def require_valid(tri: Triangulation, rps: RealPhaseStructure) -> None:
    report = validate_rps(tri, rps)
    if not report.valid:
        first = report.direction_failures[:1] or [
            f.tau for f in report.parity_failures[:1]
        ]
        raise InvalidPhaseStructureError(
            f"{len(report.direction_failures)} direction and "
            f"{len(report.parity_failures)} parity failures (first at {first[0]})"
        )


def phase_structure_from_table(
    tri: Triangulation,
    codim: int,
    table: Mapping[Sequence[int], Iterable[Union[str, int]]],
) -> RealPhaseStructure:
    """Constrói a estrutura a partir de listas explícitas de ortantes."""
    assignments = {}
    for simplex, orthants in table.items():
        s = tri.require(simplex)
        members = [
            o if isinstance(o, int) else parse_orthant(o, tri.n) for o in orthants
        ]
        coset = F2AffineSubspace.from_members(tri.n, members)
        if coset is None:
            raise InvalidPhaseStructureError(
                f"orthants of {list(s)} do not form an affine subspace"
            )
        assignments[s] = coset
    check_coverage(tri, codim, assignments)
    return RealPhaseStructure(tri, codim, assignments)


def trivial_codim0(tri: Triangulation) -> RealPhaseStructure:
    full = F2AffineSubspace(0, F2Subspace.full(tri.n))
    return RealPhaseStructure(tri, 0, {v: full for v in tri.faces(0)})


# === Distribuições de sinais ===


def edge_coset(
    tri: Triangulation, edge: Simplex, mu: SignDistribution
) -> F2AffineSubspace:
    """E([a,b]) = {s : s·(a-b) = 1 + μ(a) + μ(b)}."""
    a, b = edge
    delta = tri.vertex_bits[a] ^ tri.vertex_bits[b]
    target = 1 ^ mu.signs[a] ^ mu.signs[b]
    direction = F2Subspace.span(tri.n, [delta]).orthogonal()
    base = (delta & -delta) if target else 0
    return F2AffineSubspace.of(base, direction)


def from_sign_distribution(
    tri: Triangulation, mu: SignDistribution
) -> RealPhaseStructure:
    if len(mu) != len(tri.vertex_coords):
        raise InvalidPhaseStructureError(
            f"sign distribution has {len(mu)} signs "
            f"for {len(tri.vertex_coords)} vertices"
        )
    cosets = {e: edge_coset(tri, e, mu) for e in tri.faces(1)}
    return RealPhaseStructure(tri, 1, cosets)


def to_sign_distribution(
    tri: Triangulation, rps: RealPhaseStructure
) -> SignDistribution:
    """
    Recupera μ com μ(0) = '+' espalhando sinais em largura pelo 1-esqueleto.
    Todas as arestas são conferidas no final.
    """
    if rps.codim != 1:
        raise CodimensionError(
            rps.codim, "sign distributions correspond to codimension 1"
        )

    signs: dict[int, int] = {0: 0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in sorted(tri.edge_graph[a]):
            if b in signs:
                continue
            coset = rps.E((a, b))
            c = dot(coset.base, tri.vertex_bits[a] ^ tri.vertex_bits[b])
            signs[b] = 1 ^ c ^ signs[a]
            queue.append(b)

    if len(signs) != len(tri.vertex_coords):
        raise InvalidPhaseStructureError(
            "the 1-skeleton of the triangulation is disconnected"
        )

    mu = SignDistribution(tuple(signs[v] for v in range(len(tri.vertex_coords))))
    for edge in tri.faces(1):
        if edge_coset(tri, edge, mu) != rps.E(edge):
            raise InconsistentSignsError(edge)
    return mu


# === Conjuntos de ortantes ===


def orthant_set(
    tri: Triangulation, rps: RealPhaseStructure, t: Sequence[int]
) -> set[int]:
    """E(t): união de E(σ) sobre as k-faces σ de t."""
    simplex = tri.require(t)
    if len(simplex) - 1 < rps.codim:
        raise CodimensionError(
            rps.codim, f"simplex {list(simplex)} has dimension below k"
        )
    result: set[int] = set()
    for sigma in subfaces(simplex, rps.codim):
        result.update(rps.assignments[sigma].members())
    return result


def path_connected(tri: Triangulation, rps: RealPhaseStructure, s: int) -> bool:
    """Os k-simplexos com s em E(σ) formam um conjunto conexo por (k-1)-faces."""
    k = rps.codim
    support = [sigma for sigma, coset in rps.assignments.items() if coset.contains(s)]
    if not support:
        return True
    graph = nx.Graph()
    graph.add_nodes_from(support)
    for a, b in itertools.combinations(support, 2):
        if len(set(a) & set(b)) == k:
            graph.add_edge(a, b)
    return nx.is_connected(graph)


# === Restrição e projeção ===


def _require_single_simplex(tri: Triangulation) -> Simplex:
    if not tri.is_single_simplex():
        raise NotASimplexError(len(tri.maximal_simplices))
    return tri.maximal_simplices[0]


def _facet_frame(
    tri: Triangulation, facet: Sequence[int]
) -> tuple[Simplex, int, list[int]]:
    """Vértices da faceta, vértice oposto e a base do reticulado da faceta."""
    top = _require_single_simplex(tri)
    face = tuple(sorted(facet))
    if len(face) != tri.n or not set(face) <= set(top):
        raise FacetError(face, f"expected {tri.n} vertices of simplex {list(top)}")
    (opposite,) = set(top) - set(face)
    origin = tri.vertex_coords[face[0]]
    basis = [
        reduce_coords([x - o for x, o in zip(tri.vertex_coords[w], origin)])
        for w in face[1:]
    ]
    return face, opposite, basis


def _project(coset: F2AffineSubspace, basis: list[int]) -> F2AffineSubspace:
    """Imagem em Q^n / T2⊥(F) nas coordenadas da faceta: s ↦ (s·b_j)_j."""

    def pi(s: int) -> int:
        return sum(dot(s, b) << j for j, b in enumerate(basis))

    m = len(basis)
    direction = F2Subspace.span(m, (pi(v) for v in coset.direction.basis))
    return F2AffineSubspace.of(pi(coset.base), direction)


def _facet_triangulation(dim: int) -> Triangulation:
    return trivial_triangulation(dilated_simplex(dim, 1))


def restriction(
    tri: Triangulation, rps: RealPhaseStructure, facet: Sequence[int]
) -> RealPhaseStructure:
    """E|F nas coordenadas da faceta (w_0 ↦ 0, w_j ↦ e_j)."""
    k = rps.codim
    if k >= tri.n:
        raise CodimensionError(k, "restriction needs k < n")
    face, _, basis = _facet_frame(tri, facet)
    relabel = {w: j for j, w in enumerate(face)}
    target = _facet_triangulation(tri.n - 1)
    assignments = {
        tuple(relabel[v] for v in sigma): _project(rps.E(sigma), basis)
        for sigma in subfaces(face, k)
    }
    return RealPhaseStructure(target, k, assignments)


def projection(
    tri: Triangulation, rps: RealPhaseStructure, facet: Sequence[int]
) -> RealPhaseStructure:
    """E^F(γ) = π_F(E(γ ∪ {v_F})) para as (k-1)-faces γ de F."""
    k = rps.codim
    if k == 0:
        raise CodimensionError(k, "projection needs k > 0")
    face, opposite, basis = _facet_frame(tri, facet)
    relabel = {w: j for j, w in enumerate(face)}
    target = _facet_triangulation(tri.n - 1)
    assignments = {
        tuple(relabel[v] for v in gamma): _project(rps.E(gamma + (opposite,)), basis)
        for gamma in subfaces(face, k - 1)
    }
    return RealPhaseStructure(target, k - 1, assignments)


# === Censos num simplexo unimodular ===


@dataclass(frozen=True)
class OrthantCensus:
    nonempty: frozenset[int]
    simplicial: frozenset[int]
    incidence: dict[int, list[Simplex]]
    shared_faces: dict[int, Simplex]


def orthant_census(tri: Triangulation, rps: RealPhaseStructure) -> OrthantCensus:
    """
    Ortantes não vazios, incidência com k-simplexos e ortantes simpliciais.
    Para 1 <= k <= n-1, cada ortante simplicial tem um (k-1)-simplexo comum a todos
    os seus k-simplexos incidentes.
    """
    _require_single_simplex(tri)
    n, k = tri.n, rps.codim
    incidence: dict[int, list[Simplex]] = {}
    for sigma in tri.faces(k):
        for s in rps.assignments[sigma].members():
            incidence.setdefault(s, []).append(sigma)

    simplicial = frozenset(
        s for s, sigmas in incidence.items() if len(sigmas) == n - k + 1
    )
    shared = {}
    if 1 <= k <= n - 1:
        for s in simplicial:
            common = set.intersection(*(set(sigma) for sigma in incidence[s]))
            shared[s] = tuple(sorted(common))
    return OrthantCensus(frozenset(incidence), simplicial, incidence, shared)


# === Colar ===


@dataclass(frozen=True)
class NecklaceDecomposition:
    cyclic_order: list[Simplex]
    blocks: list[F2AffineSubspace]


def necklace(
    tri: Triangulation, rps: RealPhaseStructure, tau: Sequence[int]
) -> NecklaceDecomposition:
    """
    Ordem cíclica σ_0..σ_{k+1} das k-faces de τ com E(σ_i) = B_i ∪ B_{i+1}.
    Os blocos são classes de T2⊥(τ); cada face liga seus dois blocos e o percurso
    começa pela menor face, no menor bloco.
    """
    k = rps.codim
    if k >= tri.n:
        raise CodimensionError(k, "necklaces need k < n")
    t = tri.require(tau)
    if len(t) != k + 2:
        raise NecklaceError(t, f"expected a {k + 1}-simplex")

    perp = t2_perp(tri, t)
    faces = subfaces(t, k)
    ends: dict[Simplex, tuple[int, int]] = {}
    for sigma in faces:
        coset = rps.E(sigma)
        blocks = sorted({perp.reduce(m) for m in coset.members()})
        if len(blocks) != 2:
            raise NecklaceError(
                t, f"face {list(sigma)} splits into {len(blocks)} blocks"
            )
        ends[sigma] = (blocks[0], blocks[1])

    order = [faces[0]]
    chain = [ends[faces[0]][0], ends[faces[0]][1]]
    unused = set(faces[1:])
    while unused:
        current = chain[-1]
        nxt = next((f for f in faces if f in unused and current in ends[f]), None)
        if nxt is None:
            raise NecklaceError(t, "the block graph is not a single cycle")
        unused.discard(nxt)
        order.append(nxt)
        a, b = ends[nxt]
        chain.append(b if a == current else a)
    if chain[-1] != chain[0]:
        raise NecklaceError(t, "the block walk does not close")

    blocks = [F2AffineSubspace.of(rep, perp) for rep in chain[:-1]]
    return NecklaceDecomposition(order, blocks)
