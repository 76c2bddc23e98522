"""
Análise de cotas: grafo dual G_Γ, planaridade certificada, a fórmula de b1,
as cotas de Harnack e de volume, números de Hodge de Khovanskii, codegree e o
veredicto de maximalidade de T-curvas.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Union

import networkx as nx
import sympy
from sympy.functions.combinatorial.numbers import stirling

from patchwork.core.exceptions import (
    CodimensionError,
    DisconnectedDualGraphError,
    InsufficientSamplesError,
    InvariantViolation,
)
from patchwork.domain.homology import betti_f2
from patchwork.domain.lattice import (
    T,
    Polytope,
    Simplex,
    Triangulation,
    ehrhart_polynomial,
    interior_lattice_points,
)
from patchwork.domain.tmanifold import TManifold
from patchwork.models.reports import BoundsReport, CurveBoundRow, MaximalityVerdict

logger = logging.getLogger(__name__)

DualNode = tuple[str, Simplex]


# === Grafo dual ===


def dual_graph(tri: Triangulation) -> nx.Graph:
    """
    Vértices ("v", τ) para os simplexos maximais e ("u", σ) para as faces de bordo.
    Cada (n-1)-simplexo vira uma aresta: entre os dois simplexos que o contêm ou,
    no bordo, entre o simplexo e o seu vértice u.
    """
    graph = nx.Graph(n=tri.n, alpha=tri.volume, beta=len(tri.boundary_facets))
    graph.add_nodes_from((("v", tau) for tau in tri.maximal_simplices), kind="v")
    for face, star in tri.facet_star.items():
        if len(star) == 2:
            graph.add_edge(("v", star[0]), ("v", star[1]), facet=face)
        else:
            graph.add_node(("u", face), kind="u")
            graph.add_edge(("v", star[0]), ("u", face), facet=face)
    logger.debug(
        "Dual graph built: %d nodes, %d edges",
        graph.number_of_nodes(),
        graph.number_of_edges(),
    )
    return graph


def b1_formula(n: int, alpha: int, beta: int) -> int:
    """((n-1)α - β)/2 + 1."""
    return ((n - 1) * alpha - beta) // 2 + 1


def b1_dual(dg: nx.Graph) -> int:
    """E - V + 1, conferido contra a fórmula em volume e volume de bordo."""
    if dg.number_of_nodes() == 0 or not nx.is_connected(dg):
        raise DisconnectedDualGraphError(nx.number_connected_components(dg))
    b1 = dg.number_of_edges() - dg.number_of_nodes() + 1
    expected = b1_formula(dg.graph["n"], dg.graph["alpha"], dg.graph["beta"])
    if b1 != expected:
        raise InvariantViolation(
            "dual graph b1", f"graph gives {b1}, formula gives {expected}"
        )
    return b1


def planarity_certificate(
    graph: nx.Graph,
) -> tuple[bool, Union[nx.PlanarEmbedding, nx.Graph]]:
    """Embedding planar ou o subgrafo de Kuratowski que impede a planaridade."""
    planar, certificate = nx.check_planarity(graph, counterexample=True)
    if planar:
        certificate.check_structure()
    return planar, certificate


def is_planar(graph: nx.Graph) -> bool:
    planar, _ = planarity_certificate(graph)
    return planar


# === Obstrução por ponto interior ===


@dataclass
class CompleteGraphWitness:
    """Subdivisão de K_{n+1} dentro de G_Γ: n+1 vértices ramificados e os caminhos entre eles."""

    branch_nodes: list[DualNode]
    paths: dict[tuple[int, int], list[DualNode]]
    interior_vertex: int

    def as_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.branch_nodes)
        for path in self.paths.values():
            nx.add_path(graph, path)
        return graph


def _ring_path(
    tri: Triangulation, ridge: Simplex, removed: Simplex, a: Simplex, b: Simplex
):
    """Menor caminho de a até b no anel de simplexos ao redor de ridge, sem passar por removed."""
    ring = nx.Graph()
    members = [
        tau
        for tau in tri.maximal_simplices
        if set(ridge) <= set(tau) and tau != removed
    ]
    ring.add_nodes_from(members)
    for face, star in tri.facet_star.items():
        if len(star) == 2 and set(ridge) <= set(face) and removed not in star:
            ring.add_edge(star[0], star[1])
    return [("v", tau) for tau in nx.shortest_path(ring, a, b)]


def interior_point_obstruction(tri: Triangulation) -> Optional[CompleteGraphWitness]:
    """
    Se Γ tem um vértice p no interior de Δ, devolve a subdivisão de K_{n+1}:
    σ ∋ p, os vizinhos σ_i através das facetas de σ que contêm p e, para cada par,
    o caminho ao redor de σ menos {w_i, w_j}.
    """
    interior = [
        v for v, p in enumerate(tri.vertex_coords) if tri.polytope.contains_strictly(p)
    ]
    if not interior:
        return None
    p = interior[0]
    sigma = tri.vertex_star[p][0]
    others = [w for w in sigma if w != p]

    neighbours = []
    for w in others:
        facet = tuple(v for v in sigma if v != w)
        (across,) = [tau for tau in tri.facet_star[facet] if tau != sigma]
        neighbours.append(across)

    branch = [("v", sigma)] + [("v", tau) for tau in neighbours]
    paths: dict[tuple[int, int], list[DualNode]] = {}
    for i in range(len(others)):
        paths[(0, i + 1)] = [("v", sigma), ("v", neighbours[i])]
        for j in range(i + 1, len(others)):
            ridge = tuple(v for v in sigma if v not in (others[i], others[j]))
            paths[(i + 1, j + 1)] = _ring_path(
                tri, ridge, sigma, neighbours[i], neighbours[j]
            )
    logger.info("Interior vertex %d yields a K_%d subdivision", p, tri.n + 1)
    return CompleteGraphWitness(branch, paths, p)


# === Cotas ===


def curve_bound_volume(tri: Triangulation) -> int:
    """⌊(n+1)·Vol/3⌋."""
    return (tri.n + 1) * tri.volume // 3


def surface_bound(tri: Triangulation) -> int:
    """⌊(7n²+5n+12)·Vol/60⌋, igual a (4f+t)/20 pelos censos de células."""
    n = tri.n
    if n < 2:
        raise CodimensionError(n, "surface bound needs n >= 2")
    return (7 * n * n + 5 * n + 12) * tri.volume // 60


def hodge_h0(poly: Polytope, k: int) -> dict[int, int]:
    """
    h^{0,q} da interseção completa genérica de k hipersuperfícies com politopo poly.
    h^{0,n-k} = Σ C(k,l)(-1)^{k-l}·|int(lΔ)|, os intermediários são zero e, para
    k = n, h^{0,0} conta os pontos.
    """
    n = poly.dim
    if not 1 <= k <= n:
        raise CodimensionError(k, f"number of hypersurfaces must lie in 1..{n}")
    total = sum(
        comb(k, l) * (-1) ** (k - l) * interior_lattice_points(poly, l)
        for l in range(1, k + 1)
    )
    if k == n:
        return {0: 1 + total}
    result = {q: 0 for q in range(n - k + 1)}
    result[0] = 1
    result[n - k] = total
    return result


def hodge_leading_expected(n: int, k: int, volume: int) -> sympy.Rational:
    """(k!/n!)·S(n,k)·Vol."""
    ratio = sympy.Rational(sympy.factorial(k), sympy.factorial(n))
    return ratio * stirling(n, k) * volume


def hodge_sum_leading(poly: Polytope, k: int, d_range: Iterable[int]) -> sympy.Rational:
    """
    Interpola d ↦ 1 + Σ C(k,l)(-1)^{k-l}(-1)^n P(-dl) nas dilatações dadas e
    devolve o coeficiente líder; o polinômio precisa ter grau exatamente n.
    """
    n = poly.dim
    samples = sorted(set(d_range))
    if len(samples) < n + 2:
        raise InsufficientSamplesError(len(samples), n + 2)
    ehrhart = ehrhart_polynomial(poly)

    def g(d: int) -> sympy.Integer:
        return 1 + sum(
            comb(k, l) * (-1) ** (k - l) * (-1) ** n * ehrhart.eval(-d * l)
            for l in range(1, k + 1)
        )

    fitted = sympy.Poly(sympy.interpolate([(d, g(d)) for d in samples], T), T)
    if fitted.degree() != n:
        raise InvariantViolation(
            "hodge degree", f"interpolated degree {fitted.degree()} != {n}"
        )
    return sympy.Rational(fitted.LC())


def codegree(poly: Polytope) -> int:
    """Menor l >= 1 tal que lΔ tem ponto interior; nunca passa de n+1."""
    for dilation in range(1, poly.dim + 2):
        if interior_lattice_points(poly, dilation) > 0:
            return dilation
    raise InvariantViolation("codegree", f"no interior point up to {poly.dim + 1}Δ")


def no_maximal_curve_expected(poly: Polytope, dilation: int = 1) -> bool:
    """n > 3 e dilation·Δ com ponto interior."""
    return poly.dim > 3 and dilation >= codegree(poly)


def compare_curve_bounds(n: int, degrees: Iterable[int]) -> list[CurveBoundRow]:
    """Cota de Harnack contra a cota de volume em dΔn, com α = d^n e β = (n+1)d^{n-1}."""
    rows = []
    for d in degrees:
        alpha, beta = d**n, (n + 1) * d ** (n - 1)
        harnack = b1_formula(n, alpha, beta) + 1
        volume = (n + 1) * alpha // 3
        if volume < harnack:
            stricter = "volume"
        elif harnack < volume:
            stricter = "harnack"
        else:
            stricter = "equal"
        rows.append(
            CurveBoundRow(
                d=d, harnack=harnack, volume_bound=volume, stricter=stricter
            )
        )
    return rows


# === Veredictos ===


def maximality_check(tm: TManifold, dg: nx.Graph) -> MaximalityVerdict:
    """b0 contra b1(G_Γ)+1; uma curva maximal exige grafo dual planar."""
    if tm.dim != 1:
        raise CodimensionError(tm.codim, "maximality check needs a T-curve")
    b0 = betti_f2(tm.complex)[0]
    b1 = b1_dual(dg)
    planar = is_planar(dg)
    maximal = b0 == b1 + 1
    if b0 > b1 + 1:
        raise InvariantViolation("harnack bound", f"b0={b0} exceeds b1+1={b1 + 1}")
    if maximal and not planar:
        raise InvariantViolation(
            "maximal curve planarity", "maximal T-curve on a non-planar dual graph"
        )
    verdict = MaximalityVerdict(
        b0=b0,
        harnack_bound=b1 + 1,
        sphere_defect=b0 + 1 - b1,
        maximal=maximal,
        planar=planar,
    )
    logger.info("Maximality check: b0=%d bound=%d maximal=%s", b0, b1 + 1, maximal)
    return verdict


def bounds_report(tri: Triangulation) -> BoundsReport:
    """Todas as cotas de uma triangulação validada."""
    n = tri.n
    dg = dual_graph(tri)
    b1 = b1_dual(dg)
    beta = dg.graph["beta"]
    hodge = {k: hodge_h0(tri.polytope, k)[n - k] for k in range(1, n + 1)}
    curve_bound = curve_bound_volume(tri)
    has_interior = interior_lattice_points(tri.polytope, 1) > 0
    report = BoundsReport(
        n=n,
        volume=tri.volume,
        boundary_volume=beta,
        b1_graph=b1,
        b1_formula=b1_formula(n, tri.volume, beta),
        planar=is_planar(dg),
        harnack_bound=b1 + 1,
        curve_volume_bound=curve_bound,
        surface_bound=surface_bound(tri) if n >= 2 else None,
        hodge_sums=hodge,
        codegree=codegree(tri.polytope),
        interior_point_obstruction=n >= 4 and has_interior,
        no_maximal_curve_expected=no_maximal_curve_expected(tri.polytope),
        verdicts={
            "hodge_matches_dual_graph": n >= 2 and hodge[n - 1] == b1,
            "volume_bound_stricter": curve_bound < b1 + 1,
        },
    )
    logger.info("Bounds report: n=%d volume=%d b1=%d", n, tri.volume, b1)
    return report
