"""
Unit tests for the bounds: dual graph, planarity, interior point
obstruction, Hodge numbers, codegree and the maximality verdict.
"""

import networkx as nx
import pytest
import sympy

from patchwork.core.exceptions import (
    CodimensionError,
    DisconnectedDualGraphError,
    InsufficientSamplesError,
    InvariantViolation,
)
from patchwork.domain.bounds import (
    b1_dual,
    b1_formula,
    bounds_report,
    codegree,
    compare_curve_bounds,
    curve_bound_volume,
    dual_graph,
    hodge_h0,
    hodge_leading_expected,
    hodge_sum_leading,
    interior_point_obstruction,
    is_planar,
    maximality_check,
    no_maximal_curve_expected,
    planarity_certificate,
    surface_bound,
)
from patchwork.domain.lattice import (
    dilated_simplex,
    staircase_triangulation,
    standard_simplex,
    unit_cube,
)
from patchwork.domain.tmanifold import build_from_structure


@pytest.mark.unit
class TestDualGraph:
    """Tests for the dual graph and the b1 formula."""

    def test_single_triangle(self, delta2):
        """Test one vertex v, three vertices u and b1 = 0."""
        dg = dual_graph(delta2)
        kinds = nx.get_node_attributes(dg, "kind")
        assert sorted(kinds.values()) == ["u", "u", "u", "v"]
        assert b1_dual(dg) == 0

    def test_plane_cubic(self):
        """Test 3Δ2: nine triangles, nine boundary edges and b1 = 1."""
        dg = dual_graph(staircase_triangulation(2, 3))
        assert dg.number_of_nodes() == 18
        assert dg.number_of_edges() == 18
        assert b1_dual(dg) == 1

    def test_floor_triangulation(self, floor3):
        """Test b1 = 10 on 3Δ3."""
        dg = dual_graph(floor3.triangulation)
        assert dg.graph["beta"] == 36
        assert b1_dual(dg) == 10

    @pytest.mark.parametrize(
        "n,alpha,beta,expected",
        [(2, 1, 3, 0), (3, 1, 4, 0), (2, 9, 9, 1), (3, 27, 36, 10), (3, 8, 16, 1)],
    )
    def test_b1_formula(self, n, alpha, beta, expected):
        """Test ((n-1)α - β)/2 + 1."""
        assert b1_formula(n, alpha, beta) == expected

    def test_disconnected(self):
        """Test that a disconnected graph is rejected."""
        graph = nx.Graph(n=2, alpha=1, beta=3)
        graph.add_nodes_from([1, 2])
        with pytest.raises(DisconnectedDualGraphError):
            b1_dual(graph)

    def test_formula_disagreement(self, delta2):
        """Test that a mismatch with the formula is a violation."""
        dg = dual_graph(delta2)
        dg.graph["beta"] = 1
        with pytest.raises(InvariantViolation):
            b1_dual(dg)


@pytest.mark.unit
class TestPlanarity:
    """Tests for the planarity certificate."""

    def test_planar_embedding(self):
        """Test that a cycle returns an embedding."""
        planar, certificate = planarity_certificate(nx.cycle_graph(5))
        assert planar
        assert isinstance(certificate, nx.PlanarEmbedding)

    def test_kuratowski_subgraph(self):
        """Test that K5 returns a Kuratowski subgraph."""
        planar, certificate = planarity_certificate(nx.complete_graph(5))
        assert not planar
        assert certificate.number_of_edges() == 10

    def test_dual_graphs_in_the_plane(self, delta3):
        """Test planarity of small dual graphs."""
        assert is_planar(dual_graph(delta3))
        assert is_planar(dual_graph(staircase_triangulation(2, 3)))


@pytest.mark.unit
class TestInteriorPoint:
    """Tests for the interior point obstruction."""

    def test_no_interior_point(self, delta3):
        """Test that Δ3 has no interior point."""
        assert interior_point_obstruction(delta3) is None

    def test_triangle_around_interior_point(self):
        """Test the K3 subdivision around the point (1, 1) of 3Δ2."""
        tri = staircase_triangulation(2, 3)
        witness = interior_point_obstruction(tri)
        assert witness is not None
        assert tri.vertex_coords[witness.interior_vertex] == (1, 1)
        assert len(witness.branch_nodes) == 3
        assert len(witness.paths) == 3
        dg = dual_graph(tri)
        graph = witness.as_graph()
        assert all(dg.has_edge(u, v) for u, v in graph.edges)
        assert set(witness.branch_nodes) <= set(graph.nodes)


@pytest.mark.unit
class TestBounds:
    """Tests for the curve and surface bounds."""

    def test_curve_bound_volume(self, delta3, floor3):
        """Test ⌊(n+1)·Vol/3⌋."""
        assert curve_bound_volume(delta3) == 1
        assert curve_bound_volume(floor3.triangulation) == 36

    def test_surface_bound(self, delta1, delta3):
        """Test ⌊(7n²+5n+12)·Vol/60⌋ and the minimal dimension."""
        assert surface_bound(delta3) == 1
        assert surface_bound(staircase_triangulation(3, 2)) == 12
        with pytest.raises(CodimensionError):
            surface_bound(delta1)

    def test_compare_curve_bounds(self):
        """Test which bound is stronger."""
        (row,) = compare_curve_bounds(3, [2])
        assert (row.harnack, row.volume_bound, row.stricter) == (2, 10, "harnack")
        (row,) = compare_curve_bounds(6, [100])
        assert row.stricter == "volume"


@pytest.mark.unit
class TestHodge:
    """Tests for Hodge numbers and the codegree."""

    def test_quartic_surface(self):
        """Test h^{0,2} = 1 for the quartic in 4Δ3."""
        assert hodge_h0(dilated_simplex(3, 4), 1) == {0: 1, 1: 0, 2: 1}

    def test_two_cubics(self):
        """Test genus 10 for the intersection of two cubics."""
        assert hodge_h0(dilated_simplex(3, 3), 2)[1] == 10

    def test_points_of_two_conics(self):
        """Test that two conics meet in four points."""
        assert hodge_h0(dilated_simplex(2, 2), 2) == {0: 4}

    def test_hodge_range(self):
        """Test the number of hypersurfaces outside 1..n."""
        with pytest.raises(CodimensionError):
            hodge_h0(standard_simplex(3), 0)

    @pytest.mark.parametrize("k,expected", [(1, sympy.Rational(1, 6)), (2, 1)])
    def test_leading_coefficient(self, k, expected):
        """Test the leading coefficient against (k!/n!)·S(n,k)·Vol."""
        poly = standard_simplex(3)
        leading = hodge_sum_leading(poly, k, range(1, 6))
        assert leading == expected
        assert leading == hodge_leading_expected(3, k, 1)

    def test_insufficient_samples(self):
        """Test that n+2 dilations are needed."""
        with pytest.raises(InsufficientSamplesError):
            hodge_sum_leading(standard_simplex(3), 1, range(1, 4))

    @pytest.mark.parametrize(
        "poly,expected",
        [(standard_simplex(2), 3), (standard_simplex(3), 4), (unit_cube(3), 2)],
    )
    def test_codegree(self, poly, expected):
        """Test the smallest dilation with an interior point."""
        assert codegree(poly) == expected

    def test_no_maximal_curve_expected(self):
        """Test the prediction only above dimension 3."""
        assert no_maximal_curve_expected(standard_simplex(4), 5)
        assert not no_maximal_curve_expected(standard_simplex(4), 4)
        assert not no_maximal_curve_expected(standard_simplex(3), 10)


@pytest.mark.unit
class TestVerdicts:
    """Tests for the maximality verdict and the bounds report."""

    def test_maximal_line(self, delta2, e1):
        """Test that E1 is maximal with defect 2."""
        verdict = maximality_check(build_from_structure(e1), dual_graph(delta2))
        assert verdict.maximal
        assert (verdict.b0, verdict.harnack_bound, verdict.sphere_defect) == (1, 1, 2)
        assert verdict.planar

    def test_maximality_needs_curve(self, delta3, e2):
        """Test that surfaces are refused."""
        with pytest.raises(CodimensionError):
            maximality_check(build_from_structure(e2), dual_graph(delta3))

    def test_report_of_triangle(self, delta2):
        """Test the full report of Δ2."""
        report = bounds_report(delta2)
        assert (report.n, report.volume, report.boundary_volume) == (2, 1, 3)
        assert report.b1_graph == report.b1_formula == 0
        assert report.harnack_bound == 1
        assert report.hodge_sums == {1: 0, 2: 1}
        assert report.codegree == 3
        assert not report.interior_point_obstruction
        assert report.verdicts["hodge_matches_dual_graph"]

    def test_report_of_floor_triangulation(self, floor3):
        """Test that h^{0,1} matches b1 of the dual graph on 3Δ3."""
        report = bounds_report(floor3.triangulation)
        assert report.b1_graph == 10
        assert report.hodge_sums[2] == 10
        assert report.curve_volume_bound == 36
        assert report.planar
        assert report.verdicts["hodge_matches_dual_graph"]
        assert not report.verdicts["volume_bound_stricter"]
