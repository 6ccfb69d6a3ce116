import pytest

from constants import DATA_DIR
from prevariety.grading import FgAbGroup, GradedPolyRing, full_conical, validate_conical
from prevariety.lattice import IntegerMatrix, Sublattice


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def blowup_ring():
    return GradedPolyRing.create(FgAbGroup(2), [(1, 0), (1, 0), (1, 1), (0, 1)], "xyzw")


@pytest.fixture
def blowup_basis():
    return Sublattice(4, IntegerMatrix.from_rows([(1, 0, -1, 1), (0, 1, -1, 1)]))


@pytest.fixture
def blowup(blowup_ring):
    return validate_conical(blowup_ring, [blowup_ring.parse(m) for m in ("xz", "yz", "xw", "yw")])


@pytest.fixture
def projective_plane(blowup_ring):
    return validate_conical(blowup_ring, [blowup_ring.parse(m) for m in ("xw", "yw", "zw")])


@pytest.fixture
def doubled_origin():
    ring = GradedPolyRing.create(FgAbGroup(2), [(1, 0), (0, 1), (1, 1)], "xyz")
    return full_conical(ring)


@pytest.fixture
def extra_variable_ring():
    return GradedPolyRing.create(FgAbGroup(3), [(1, 0, 0), (0, 1, 1), (0, 0, 1), (1, 1, 0)], "xyzw")


@pytest.fixture
def torsion_ring():
    return GradedPolyRing.create(FgAbGroup(1, (2,)), [(1, 0), (0, 1), (1, 1)], "xyz")


@pytest.fixture
def p1_times_p1():
    ring = GradedPolyRing.create(FgAbGroup(2), [(1, 0), (1, 0), (0, 1), (0, 1)], "xyzw")
    return full_conical(ring)
