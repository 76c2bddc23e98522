"""
Unit tests for reading and writing the JSON files.
"""

import json

import pytest

from patchwork.adapters.file_adapter import (
    load_orientation,
    load_phase_structure,
    load_signs,
    load_triangulation,
    save_orientation,
    save_phase_structure,
    save_signs,
    save_triangulation,
)
from patchwork.core.exceptions import (
    AssignmentCoverageError,
    InvalidFileFormat,
    UnknownSimplexError,
)
from patchwork.domain.phase_structure import SignDistribution


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return path


TRIANGLE = {
    "dim": 2,
    "vertices": [[0, 0], [1, 0], [0, 1]],
    "maximal_simplices": [[0, 1, 2]],
    "facets": [
        {"normal": [-1, 0], "offset": 0},
        {"normal": [0, -1], "offset": 0},
        {"normal": [1, 1], "offset": 1},
    ],
}


@pytest.mark.unit
class TestTriangulationFiles:
    """Tests for triangulation files."""

    def test_round_trip(self, tmp_path, delta3):
        """Test that saving and loading keeps the triangulation."""
        path = tmp_path / "tri.json"
        save_triangulation(delta3, path)
        assert load_triangulation(path) == delta3

    def test_corners_are_inferred(self, tmp_path):
        """Test the corners derived from the tight facets."""
        tri = load_triangulation(write_json(tmp_path / "tri.json", TRIANGLE))
        assert set(tri.polytope.vertices) == {(0, 0), (1, 0), (0, 1)}
        assert tri.volume == 1

    def test_invalid_json(self, tmp_path):
        """Test that broken JSON reports the line."""
        path = tmp_path / "tri.json"
        path.write_text('{\n  "dim": 2,\n  oops\n}')
        with pytest.raises(InvalidFileFormat, match="invalid JSON at line 3"):
            load_triangulation(path)

    def test_missing_file(self, tmp_path):
        """Test a file that does not exist."""
        with pytest.raises(InvalidFileFormat, match="cannot read file") as exc:
            load_triangulation(tmp_path / "missing.json")
        assert exc.value.error_code == "INVALID_FILE_FORMAT"

    def test_validation_location(self, tmp_path):
        """Test that the validation error points at the field."""
        payload = dict(TRIANGLE, dim=0)
        with pytest.raises(InvalidFileFormat) as exc:
            load_triangulation(write_json(tmp_path / "tri.json", payload))
        assert exc.value.details.startswith("dim:")


@pytest.mark.unit
class TestPhaseStructureFiles:
    """Tests for phase structure files."""

    def test_round_trip(self, tmp_path, delta3, e2):
        """Test that saving and loading keeps E2."""
        path = tmp_path / "e2.json"
        save_phase_structure(e2, path)
        assert load_phase_structure(path, delta3) == e2

    def test_base_length(self, tmp_path, delta2):
        """Test an orthant with too few signs."""
        cells = [{"simplex": [0, 1], "base": "+"}]
        path = write_json(tmp_path / "rps.json", {"codim": 1, "cells": cells})
        with pytest.raises(InvalidFileFormat, match="does not have 2 signs"):
            load_phase_structure(path, delta2)

    def test_unknown_simplex(self, tmp_path, delta2):
        """Test a simplex that is not a face."""
        cells = [{"simplex": [0, 5], "base": "++"}]
        path = write_json(tmp_path / "rps.json", {"codim": 1, "cells": cells})
        with pytest.raises(UnknownSimplexError):
            load_phase_structure(path, delta2)

    def test_coverage(self, tmp_path, delta2):
        """Test that every edge needs a coset."""
        cells = [{"simplex": [0, 1], "base": "++", "direction": ["-+"]}]
        path = write_json(tmp_path / "rps.json", {"codim": 1, "cells": cells})
        with pytest.raises(AssignmentCoverageError):
            load_phase_structure(path, delta2)


@pytest.mark.unit
class TestSignFiles:
    """Tests for sign files."""

    def test_round_trip(self, tmp_path, delta3):
        """Test that the signs come back unchanged."""
        mu = SignDistribution.from_string("+-+-")
        path = tmp_path / "signs.json"
        save_signs(mu, path)
        assert load_signs(path, delta3) == mu

    def test_length(self, tmp_path, delta3):
        """Test the number of signs against the number of vertices."""
        path = write_json(tmp_path / "signs.json", {"signs": "+-"})
        with pytest.raises(InvalidFileFormat, match="2 signs for 4 vertices"):
            load_signs(path, delta3)


@pytest.mark.unit
class TestOrientationFiles:
    """Tests for orientation files."""

    def test_vertex_order(self, tmp_path, delta2):
        """Test the builtin global order rule."""
        payload = {"builtin": "vertex_order", "order": [2, 0, 1]}
        o = load_orientation(write_json(tmp_path / "o.json", payload), delta2)
        assert (o.head(0, 2), o.head(1, 2), o.head(0, 1)) == (2, 2, 0)

    def test_vertex_order_permutation(self, tmp_path, delta2):
        """Test that the order must be a permutation."""
        payload = {"builtin": "vertex_order", "order": [0, 0, 1]}
        with pytest.raises(InvalidFileFormat, match="permutation"):
            load_orientation(write_json(tmp_path / "o.json", payload), delta2)

    def test_parity_code(self, tmp_path, floor2):
        """Test that the parity code rule reproduces the floor orientation."""
        path = write_json(tmp_path / "o.json", {"builtin": "parity_code"})
        o = load_orientation(path, floor2.triangulation)
        assert o.heads == floor2.orientation.heads

    def test_parity_code_needs_dimension_three(self, tmp_path, delta2):
        """Test that the parity code rule refuses n != 3."""
        path = write_json(tmp_path / "o.json", {"builtin": "parity_code"})
        with pytest.raises(InvalidFileFormat, match="3-dimensional"):
            load_orientation(path, delta2)

    def test_edges_round_trip(self, tmp_path, floor2):
        """Test that saved edges load the same orientation."""
        path = tmp_path / "o.json"
        save_orientation(floor2.orientation, path)
        loaded = load_orientation(path, floor2.triangulation)
        assert loaded.heads == floor2.orientation.heads

    def test_incomplete_edges(self, tmp_path, delta2):
        """Test that a missing edge is a file error."""
        path = write_json(tmp_path / "o.json", {"edges": [[0, 1], [2, 1]]})
        with pytest.raises(InvalidFileFormat, match="every edge") as exc:
            load_orientation(path, delta2)
        assert exc.value.path == str(path)
