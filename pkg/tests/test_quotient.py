import pytest

from errors import BoxTooSmall, DimensionMismatch, NotAGenerator
from prevariety.cones import Cone, face_lattice, image_cone, is_subcone, relint_meets_subspace
from prevariety.grading import FgAbGroup, GradedPolyRing, full_conical
from prevariety.lattice import Sublattice
from prevariety.quotient import (
    assemble_quotient,
    invariant_semigroup,
    quotient_lattice,
    quotient_oracle,
    quotient_system,
    select_face,
)

DIAGONAL = Sublattice.from_vectors([(1, 1)], 2)
PYRAMID = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]


def _ranks(pieces):
    return {p.label: p.quotient_rank for p in pieces}


def test_diagonal_quotient_of_p1_times_p1(p1_times_p1):
    pieces = quotient_system(p1_times_p1, None, DIAGONAL)
    assert _ranks(pieces) == {"xz": 0, "xw": 1, "yz": 1, "yw": 0}
    by_label = {p.label: p for p in pieces}
    # the two rank-one charts land on opposite half-lines
    xw, yz = by_label["xw"].image_cone, by_label["yz"].image_cone
    assert len(xw.generators) == len(yz.generators) == 1
    assert xw.generators[0] == tuple(-x for x in yz.generators[0])
    assert by_label["xz"].selected_face == Cone.of([(-1, 0), (0, -1)])
    assert by_label["xw"].selected_face == Cone.zero(2)


def test_assembly_reports_several_lattices(p1_times_p1):
    assembly = assemble_quotient(quotient_system(p1_times_p1, None, DIAGONAL))
    assert not assembly.single_lattice
    assert sorted(len(labels) for _, labels in assembly.groups) == [2, 2]


def test_trivial_and_full_sublattices(p1_times_p1):
    zero = quotient_system(p1_times_p1, None, Sublattice.zero(2))
    assert set(_ranks(zero).values()) == {2}
    assert assemble_quotient(zero).single_lattice
    full = quotient_system(p1_times_p1, None, Sublattice.full(2))
    assert set(_ranks(full).values()) == {0}
    assert assemble_quotient(full).single_lattice


def test_unsaturated_sublattice_is_saturated_first(p1_times_p1):
    doubled = quotient_system(p1_times_p1, None, Sublattice.from_vectors([(2, 2)], 2))
    plain = quotient_system(p1_times_p1, None, DIAGONAL)
    assert [p.image_cone for p in doubled] == [p.image_cone for p in plain]
    assert [p.quotient_rank for p in doubled] == [p.quotient_rank for p in plain]


def test_sublattice_of_wrong_rank(p1_times_p1):
    with pytest.raises(DimensionMismatch):
        quotient_system(p1_times_p1, None, Sublattice.full(3))


def test_select_face_and_quotient_lattice():
    quadrant = Cone.of([(1, 0), (0, 1)])
    assert select_face(quadrant, DIAGONAL) == quadrant
    assert select_face(quadrant, Sublattice.from_vectors([(1, -1)], 2)) == Cone.zero(2)
    lprime, projection = quotient_lattice(2, Sublattice.zero(2), Cone.of([(1, 0)]))
    assert lprime.same_lattice(Sublattice.from_vectors([(1, 0)], 2))
    assert projection.rows == 1
    assert image_cone(projection, Cone.of([(1, 0)])) == Cone.zero(1)


def test_invariant_semigroup_of_a_rank_one_chart(p1_times_p1):
    ring = p1_times_p1.ring
    semigroup = invariant_semigroup(p1_times_p1, ring.parse("xw"), DIAGONAL)
    assert semigroup.coordinates == ((-1, 1),)
    assert semigroup.hilbert_generators == ((-1, 1, 1, -1),)
    with pytest.raises(BoxTooSmall):
        invariant_semigroup(p1_times_p1, ring.parse("xw"), DIAGONAL, box=0)
    with pytest.raises(NotAGenerator):
        invariant_semigroup(p1_times_p1, ring.parse("xy"), DIAGONAL)


def test_invariant_semigroup_of_a_finite_grading():
    conical = full_conical(GradedPolyRing.create(FgAbGroup(0, (2,)), [(1,)]))
    (one,) = conical.b_generators
    semigroup = invariant_semigroup(conical, one, Sublattice.zero(1))
    assert semigroup.hilbert_generators == ((2,),)


def test_oracle_agrees_with_projected_cones(p1_times_p1):
    table = quotient_oracle(p1_times_p1, quotient_system(p1_times_p1, None, DIAGONAL), DIAGONAL)
    assert list(table["label"]) == ["xz", "xw", "yz", "yw"]
    assert table["agrees"].all()
    assert list(table["quotient_rank"]) == [0, 1, 1, 0]


@pytest.mark.parametrize("name", ["blowup", "p1_times_p1", "projective_plane"])
@pytest.mark.parametrize("extreme, rank", [("zero", 2), ("full", 0)])
def test_oracle_agrees_for_trivial_and_full_sublattices(request, name, extreme, rank):
    conical = request.getfixturevalue(name)
    lattice = Sublattice.zero(2) if extreme == "zero" else Sublattice.full(2)
    pieces = quotient_system(conical, None, lattice)
    assert {p.quotient_rank for p in pieces} == {rank}
    table = quotient_oracle(conical, pieces, lattice)
    assert all(agrees is None or bool(agrees) for agrees in table["agrees"])
    assert table["agrees"].notna().any()


@pytest.mark.parametrize(
    "spanning, expected",
    [
        ([(1, 0, 1)], [(1, 0, 1)]),
        ([(0, 0, 1)], PYRAMID),
        ([(1, 0, 0)], []),
        ([(1, 1, 2)], [(1, 0, 1), (0, 1, 1)]),
        ([(1, 0, 1), (-1, 0, 1)], PYRAMID),
    ],
)
def test_selected_face_contains_every_qualifying_face(spanning, expected):
    pyramid = Cone.of(PYRAMID)
    lattice = Sublattice.from_vectors(spanning, 3)
    selected = select_face(pyramid, lattice)
    assert selected == Cone.of(expected, 3)
    qualifying = [tau for tau in face_lattice(pyramid) if relint_meets_subspace(tau, lattice)]
    assert all(is_subcone(tau, selected) for tau in qualifying)
