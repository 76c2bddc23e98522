import numpy as np
import pytest

from patchwork.core.config import get_settings
from patchwork.domain.lattice import standard_simplex, trivial_triangulation
from patchwork.domain.maximal_curve import floor_triangulation
from patchwork.domain.phase_structure import (
    phase_structure_from_table,
    trivial_codim0,
)
from patchwork.domain.tmanifold import non_extendable_fixture

# Standard simplex vertices: a = 0, b = e1, c = e2, d = e3
E1_TABLE = {
    (0, 1): ["++", "+-"],
    (0, 2): ["++", "-+"],
    (1, 2): ["+-", "-+"],
}

E2_TABLE = {
    (0, 1): ["+++", "+-+", "++-", "+--"],
    (0, 2): ["+-+", "--+", "+--", "---"],
    (0, 3): ["+++", "-++", "+-+", "--+"],
    (1, 2): ["+++", "++-", "--+", "---"],
    (1, 3): ["-++", "--+", "++-", "+--"],
    (2, 3): ["+++", "-++", "+--", "---"],
}

E3_TABLE = {
    (0, 1, 2): ["+++", "++-"],
    (0, 1, 3): ["+++", "+-+"],
    (0, 2, 3): ["++-", "-+-"],
    (1, 2, 3): ["+-+", "-+-"],
}


@pytest.fixture
def delta1():
    """Segment [0, 1]"""
    return trivial_triangulation(standard_simplex(1))


@pytest.fixture
def delta2():
    """Standard triangle with a = (0,0), b = (1,0), c = (0,1)"""
    return trivial_triangulation(standard_simplex(2))


@pytest.fixture
def delta3():
    """Standard tetrahedron with a, b, c, d"""
    return trivial_triangulation(standard_simplex(3))


@pytest.fixture
def e0_delta3(delta3):
    return trivial_codim0(delta3)


@pytest.fixture
def e1(delta2):
    """Codimension 1 curve in the triangle"""
    return phase_structure_from_table(delta2, 1, E1_TABLE)


@pytest.fixture
def e2(delta3):
    """Codimension 1 surface in the tetrahedron"""
    return phase_structure_from_table(delta3, 1, E2_TABLE)


@pytest.fixture
def e3(delta3):
    """Codimension 2 curve in the tetrahedron"""
    return phase_structure_from_table(delta3, 2, E3_TABLE)


@pytest.fixture
def e_s():
    """Hexagon structure that no sign distribution encloses"""
    return non_extendable_fixture()


@pytest.fixture(scope="session")
def floor2():
    return floor_triangulation(2)


@pytest.fixture(scope="session")
def floor3():
    return floor_triangulation(3)


@pytest.fixture
def rng():
    """Reproducible generator seeded from the settings"""
    return np.random.default_rng(get_settings().random_seed)


# Pytest configuration
def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line("markers", "unit: mark test as unit test")
    config.addinivalue_line("markers", "integration: mark test as integration test")
    config.addinivalue_line("markers", "performance: mark test as performance test")
    config.addinivalue_line("markers", "slow: mark test as slow (degree 4 and up)")
