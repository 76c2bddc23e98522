"""
Unit tests for T-manifolds: cell complex, components, censuses, containment
and the search for sign distributions enclosing a curve.
"""

import pytest

from patchwork.core.config import get_settings
from patchwork.core.exceptions import (
    CodimensionError,
    EnclosureCapExceeded,
    InvalidPhaseStructureError,
    TriangulationMismatchError,
)
from patchwork.domain.glued_space import build_glued
from patchwork.domain.homology import CellComplex, GluedCellId, betti_f2
from patchwork.domain.lattice import staircase_triangulation
from patchwork.domain.maximal_curve import flipped_sign_variant
from patchwork.domain.phase_structure import (
    SignDistribution,
    from_sign_distribution,
    phase_structure_from_table,
)
from patchwork.domain.stable_intersection import EdgeOrientation, intersect
from patchwork.domain.tmanifold import (
    TManifold,
    build_from_structure,
    build_tmanifold,
    cell_census,
    connected_components,
    contains,
    contains_structure,
    enclosure_search,
    is_closed_manifold,
    non_manifold_cells,
)
from tests.conftest import E1_TABLE


def twisted_signs(tri, mu, tau, s):
    """Values μ(v) + s·v over the vertices of τ."""
    bits = tri.vertex_bits
    return {mu.signs[v] ^ ((bits[v] & s).bit_count() & 1) for v in tau}


@pytest.mark.unit
class TestBuild:
    """Tests for building the complex of X_E."""

    def test_codim0_is_whole_glued_space(self, delta3, e0_delta3):
        """Test that E0 gives the whole glued space."""
        tm = build_from_structure(e0_delta3)
        assert tm.complex.counts() == build_glued(delta3).complex.counts()
        assert tm.dim == 3

    def test_curve_in_triangle(self, e1):
        """Test that E1 is a circle with three vertices."""
        tm = build_from_structure(e1)
        assert tm.complex.counts() == [3, 3]
        assert betti_f2(tm.complex) == [1, 1]

    def test_surface_in_tetrahedron(self, e2):
        """Test that E2 is a real projective plane."""
        tm = build_from_structure(e2)
        assert (tm.codim, tm.dim) == (1, 2)
        assert tm.complex.counts() == [6, 12, 7]
        assert tm.complex.euler_characteristic() == 1
        assert betti_f2(tm.complex) == [1, 1, 1]

    def test_curve_in_tetrahedron(self, e3):
        """Test that E3 is a circle with four vertices."""
        tm = build_from_structure(e3)
        assert tm.complex.counts() == [4, 4]
        assert betti_f2(tm.complex) == [1, 1]

    def test_triangulation_mismatch(self, delta3, e1):
        """Test that the structure must live on the same triangulation."""
        with pytest.raises(TriangulationMismatchError):
            build_tmanifold(build_glued(delta3), e1)

    def test_invalid_structure_is_rejected(self, delta2):
        """Test that validation runs before the build."""
        table = dict(E1_TABLE)
        table[(0, 1)] = ["++", "-+"]
        rps = phase_structure_from_table(delta2, 1, table)
        with pytest.raises(InvalidPhaseStructureError):
            build_from_structure(rps)
        assert build_from_structure(rps, validate=False).codim == 1


@pytest.mark.unit
class TestTopology:
    """Tests for components and the manifold condition."""

    @pytest.mark.parametrize("fixture", ["e1", "e2", "e3", "e0_delta3"])
    def test_connected_closed(self, request, fixture):
        """Test that the examples are connected and closed."""
        tm = build_from_structure(request.getfixturevalue(fixture))
        count, labels = connected_components(tm)
        assert count == 1
        assert set(labels) == {0}
        assert is_closed_manifold(tm)

    def test_component_count_matches_b0(self, rng):
        """Test that the union-find count matches b0."""
        tri = staircase_triangulation(2, 3)
        for _ in range(5):
            mu = SignDistribution(tuple(int(x) for x in rng.integers(0, 2, 10)))
            tm = build_from_structure(from_sign_distribution(tri, mu))
            count, labels = connected_components(tm)
            assert count == betti_f2(tm.complex)[0]
            assert len(labels) == tm.complex.counts()[-1]

    def test_non_manifold_cells(self, delta2, e1):
        """Test a disk, whose edges each bound a single top cell."""
        cells = [
            [GluedCellId((i,), 0) for i in range(3)],
            [GluedCellId((i,), 0) for i in range(3, 6)],
            [GluedCellId((6,), 0)],
        ]
        boundary = [[(), (), ()], [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)]]
        tm = TManifold(CellComplex(cells, boundary), delta2, e1)
        assert len(non_manifold_cells(tm)) == 3
        assert not is_closed_manifold(tm)


@pytest.mark.unit
class TestCellCensus:
    """Tests for the maximal cell census."""

    @pytest.mark.parametrize(
        "fixture,expected,simplicial,bound",
        [("e1", 3, 3, 3.0), ("e2", 7, 4, 4.0), ("e3", 4, 4, 4.0)],
    )
    def test_census(self, request, fixture, expected, simplicial, bound):
        """Test exact counts and the simplicial cell bound."""
        census = cell_census(build_from_structure(request.getfixturevalue(fixture)))
        assert census.max_cells == census.expected_max_cells == expected
        assert census.simplicial_max_cells == simplicial
        assert census.simplicial_bound == pytest.approx(bound)
        assert census.within_bounds


@pytest.mark.unit
class TestContainment:
    """Tests for the containment X_B ⊆ X_A."""

    def test_everything_inside_codim0(self, e0_delta3, e2, e3):
        """Test that E0 contains any structure."""
        assert contains_structure(e0_delta3, e2)
        assert contains_structure(e0_delta3, e3)

    def test_reflexive(self, e2):
        """Test that a structure contains itself."""
        tm = build_from_structure(e2)
        assert contains(tm, tm)

    def test_e3_not_inside_e2(self, e2, e3):
        """Test that the orthant (+,+,-) of [a, c, d] lies outside E2."""
        assert not contains_structure(e2, e3)

    def test_codimension_order(self, e0_delta3, e2):
        """Test that the contained structure needs an equal or larger codimension."""
        with pytest.raises(CodimensionError):
            contains_structure(e2, e0_delta3)

    def test_different_triangulations(self, e1, e3):
        """Test that containment requires the same triangulation."""
        with pytest.raises(TriangulationMismatchError):
            contains_structure(e1, e3)


@pytest.mark.unit
class TestEnclosureSearch:
    """Tests for the exhaustive search of μ with X_{E_μ} containing a curve."""

    def test_curve_in_tetrahedron(self, delta3, e3):
        """Test the four distributions enclosing E3."""
        found = [mu.to_string() for mu in enclosure_search(delta3, e3)]
        assert found == ["++--", "+-++", "+--+", "+---"]

    def test_found_distributions_contain_curve(self, delta3, e3):
        """Test that every result really contains the curve."""
        for mu in enclosure_search(delta3, e3):
            assert contains_structure(from_sign_distribution(delta3, mu), e3)

    def test_non_extendable(self, e_s):
        """Test that no distribution encloses the hexagon structure."""
        assert enclosure_search(e_s.tri, e_s) == []

    def test_needs_codim2(self, delta3, e2):
        """Test that the search only accepts codimension 2."""
        with pytest.raises(CodimensionError):
            enclosure_search(delta3, e2)

    def test_cap(self, delta3, e3, monkeypatch):
        """Test the vertex cap of the search."""
        monkeypatch.setenv("PATCHWORK_ENCLOSURE_CAP", "3")
        get_settings.cache_clear()
        try:
            with pytest.raises(EnclosureCapExceeded):
                enclosure_search(delta3, e3)
        finally:
            monkeypatch.undo()
            get_settings.cache_clear()

    @pytest.mark.parametrize("order", [[0, 1, 2], [2, 1, 0]])
    def test_intersection_in_triangle(self, delta2, order):
        """Test that the codimension 2 structure on Δ2 has enclosing distributions."""
        mu1 = SignDistribution.from_string("+-+")
        mu2 = SignDistribution.from_string("-++")
        rps = intersect(
            from_sign_distribution(delta2, mu1),
            from_sign_distribution(delta2, mu2),
            EdgeOrientation.from_vertex_order(delta2, order),
        )
        found = enclosure_search(delta2, rps)
        assert len(found) == 3
        assert mu1.normalized() in found
        assert mu2.normalized() in found
        assert mu2 not in found

    def test_intersection_of_floor_distributions(self, floor2):
        """Test that the normalizations of μ1 and μ2 enclose E_μ1 ∩_O E_μ2."""
        tri = floor2.triangulation
        mu1, mu2 = floor2.mu, flipped_sign_variant(floor2).mu
        rps = intersect(
            from_sign_distribution(tri, mu1),
            from_sign_distribution(tri, mu2),
            floor2.orientation,
        )
        found = enclosure_search(tri, rps)
        assert mu1.normalized() in found
        assert mu2.normalized() in found

    def test_results_are_normalized_and_twist_every_triangle(self, delta3, e3):
        """Test μ(0) = '+' and that μ + s·v is never constant on a triangle."""
        found = enclosure_search(delta3, e3)
        assert found
        for mu in found:
            assert mu == mu.normalized()
            inverted = from_sign_distribution(delta3, mu.inverted())
            assert inverted == from_sign_distribution(delta3, mu)
            for tau in delta3.faces(2):
                for s in e3.assignments[tau].members():
                    assert len(twisted_signs(delta3, mu, tau, s)) == 2
