import pytest

from errors import DimensionMismatch, IneffectiveGrading, NotInIrrelevantIdeal
from prevariety.grading import (
    FgAbGroup,
    GradedPolyRing,
    Monomial,
    chart_cone,
    degree_of,
    generators_irrelevant,
    grading_kernel,
    is_effective,
    is_relevant,
    minimalize,
    regrade_effectively,
    relevance_table,
    relevant_in_B,
    subring_degree_bound,
    subring_for_B,
    validate_conical,
)
from prevariety.lattice import Sublattice
from prevariety.maps import localization_equal, subring_localizes


def _names(ring, monomials):
    return [ring.format(m) for m in monomials]


def test_monomial_parse_and_format(blowup_ring):
    m = blowup_ring.parse("x2zw")
    assert m.exponents == (2, 0, 1, 1)
    assert blowup_ring.format(m) == "x2zw"
    assert blowup_ring.format(Monomial.one(4)) == "1"
    with pytest.raises(DimensionMismatch):
        blowup_ring.parse("xq")


def test_monomial_arithmetic():
    a, b = Monomial((1, 0, 2)), Monomial((0, 1, 1))
    assert a.lcm(b) == Monomial((1, 1, 2))
    assert a.times(b).quotient(b) == a
    assert not a.coprime(b)
    assert len(list(a.divisors())) == 6
    assert minimalize([Monomial((1, 1)), Monomial((1, 0)), Monomial((2, 0))]) == [Monomial((1, 0))]


def test_degrees_and_effectiveness(torsion_ring):
    assert degree_of(torsion_ring, torsion_ring.parse("y2")) == torsion_ring.group.zero()
    assert degree_of(torsion_ring, torsion_ring.parse("xy")) == torsion_ring.group.element([1], [1])
    assert not is_effective(FgAbGroup(1), [FgAbGroup(1).element([2]), FgAbGroup(1).element([4])])
    with pytest.raises(IneffectiveGrading):
        GradedPolyRing.create(FgAbGroup(1, (2,)), [(1, 0), (3, 0)])


def test_irrelevant_generators_of_the_base_ring(doubled_origin):
    ring = doubled_origin.ring
    assert _names(ring, generators_irrelevant(ring)) == ["xy", "xz", "yz"]


def test_irrelevant_generators_with_an_extra_variable(extra_variable_ring):
    ring = extra_variable_ring
    assert set(_names(ring, generators_irrelevant(ring))) == {"xyz", "xyw", "yzw", "xzw"}
    assert grading_kernel(ring).same_lattice(Sublattice.from_vectors([(1, 1, -1, -1)], 4))


def test_blowup_ring(blowup_ring, blowup_basis):
    assert set(_names(blowup_ring, generators_irrelevant(blowup_ring))) == {"xz", "xw", "yz", "yw", "zw"}
    assert not is_relevant(blowup_ring, blowup_ring.parse("xy"))
    assert is_relevant(blowup_ring, blowup_ring.parse("x2w"))
    assert grading_kernel(blowup_ring).same_lattice(blowup_basis)


def test_torsion_grading(torsion_ring):
    assert _names(torsion_ring, generators_irrelevant(torsion_ring)) == ["x", "z"]
    kernel = grading_kernel(torsion_ring)
    assert kernel.same_lattice(Sublattice.from_vectors([(1, 1, -1), (2, 0, -2)], 3))
    assert not kernel.contains((0, 1, 0))


def test_finite_grading():
    ring = GradedPolyRing.create(FgAbGroup(0, (2,)), [(1,)])
    assert generators_irrelevant(ring) == (Monomial((0,)),)
    assert grading_kernel(ring).vectors == ((2,),)


def test_relevance_table(doubled_origin):
    table = relevance_table(doubled_origin.ring)
    assert list(table["monomial"]) == ["xy", "xz", "yz"]
    assert table["relevant"].all()


def test_validate_conical(blowup_ring):
    with pytest.raises(NotInIrrelevantIdeal):
        validate_conical(blowup_ring, [blowup_ring.parse("xy")])
    with pytest.raises(NotInIrrelevantIdeal):
        validate_conical(blowup_ring, [])
    conical = validate_conical(blowup_ring, [blowup_ring.parse("x2z")])
    assert _names(blowup_ring, relevant_in_B(conical)) == ["x2z"]


def test_relevant_in_B(blowup, projective_plane):
    assert _names(blowup.ring, relevant_in_B(blowup)) == ["xz", "xw", "yz", "yw"]
    assert _names(projective_plane.ring, relevant_in_B(projective_plane)) == ["xw", "yw", "zw"]


def test_chart_cones_and_localizations(extra_variable_ring):
    ring = extra_variable_ring
    assert localization_equal(ring, ring.parse("xyz"), ring.parse("xy"))
    assert localization_equal(ring, ring.parse("xyw"), ring.parse("xy"))
    assert not localization_equal(ring, ring.parse("xyzw"), ring.parse("xy"))
    assert chart_cone(ring, range(4)).generators == ((-1, -1, 1, 1), (1, 1, -1, -1))


def test_regrade_effectively():
    group = FgAbGroup(1)
    ring, presentation = regrade_effectively(group, [group.element([2]), group.element([4])])
    assert ring.group == FgAbGroup(1)
    assert {abs(d.free[0]) for d in ring.degrees} == {1, 2}
    assert presentation.group == ring.group


def test_subring_for_blowup(blowup):
    assert subring_degree_bound(blowup, 2) == 4
    generators = subring_for_B(blowup, subring_degree_bound(blowup, 2))
    assert _names(blowup.ring, generators) == ["x", "y", "z", "xw", "yw"]
    assert subring_localizes(blowup, generators)
