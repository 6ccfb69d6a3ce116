import pytest

from errors import NotAGenerator, NotAKernelBasis
from prevariety.cones import Cone, cone_dim, full_dimensional, image_cone, is_simplicial
from prevariety.fans import (
    LabelledCone,
    SystemOfFans,
    build_system,
    gluing_classes,
    is_fan,
    is_separated,
    pair_separation,
    resolve_basis,
    separation_table,
    sigma_f,
    system_is_separated,
    system_violation,
    union_as_fan,
    validate_system,
)
from prevariety.grading import FgAbGroup, GradedPolyRing, Monomial, full_conical, generators_irrelevant
from prevariety.lattice import IntegerMatrix, Sublattice

E1, E2 = (1, 0), (0, 1)


def test_blowup_cones_with_explicit_basis(blowup_ring, blowup_basis):
    expected = {
        "xw": [E2, (-1, -1)],
        "yw": [E1, (-1, -1)],
        "zw": [E1, E2],
        "xz": [E2, (1, 1)],
        "yz": [E1, (1, 1)],
    }
    for name, rays in expected.items():
        assert sigma_f(blowup_ring, blowup_basis, blowup_ring.parse(name)) == Cone.of(rays)


def test_torsion_cones_with_explicit_basis(torsion_ring):
    basis = Sublattice(3, IntegerMatrix.from_rows([(1, 1, -1), (2, 0, -2)]))
    assert sigma_f(torsion_ring, basis, torsion_ring.parse("x")) == Cone.of([(1, 0), (-1, -2)])
    assert sigma_f(torsion_ring, basis, torsion_ring.parse("z")) == Cone.of([(1, 2), (1, 0)])


def test_finite_grading_cone():
    from prevariety.grading import FgAbGroup, GradedPolyRing

    ring = GradedPolyRing.create(FgAbGroup(0, (2,)), [(1,)])
    (one,) = generators_irrelevant(ring)
    assert sigma_f(ring, None, one) == Cone.of([(1,)])


def test_sigma_cones_are_maximal(extra_variable_ring):
    ring = extra_variable_ring
    for f in generators_irrelevant(ring):
        cone = sigma_f(ring, None, f)
        assert is_simplicial(cone)
        assert full_dimensional(cone)
        assert len(f.support) == ring.rank


def test_sigma_of_a_non_generator(blowup_ring):
    with pytest.raises(NotAGenerator):
        sigma_f(blowup_ring, None, blowup_ring.parse("xy"))
    with pytest.raises(NotAGenerator):
        sigma_f(blowup_ring, None, blowup_ring.parse("x2w"))


def test_foreign_basis_rejected(blowup_ring):
    wrong = Sublattice(4, IntegerMatrix.from_rows([(2, 0, -2, 2), (0, 1, -1, 1)]))
    with pytest.raises(NotAKernelBasis):
        resolve_basis(blowup_ring, wrong)


def test_basis_change_moves_cones_linearly(blowup_ring, blowup_basis):
    u = IntegerMatrix.from_rows([(1, 1), (0, 1)])
    conical = full_conical(blowup_ring)
    moved = build_system(conical, Sublattice(4, u @ blowup_basis.basis))
    original = build_system(conical, blowup_basis)
    assert moved.labels == original.labels
    for a, b in zip(original.maximal_cones, moved.maximal_cones):
        assert image_cone(u, a.cone) == b.cone


def test_system_labels_and_validity(blowup):
    system = build_system(blowup)
    assert system.labels == ["xz", "xw", "yz", "yw"]
    assert validate_system(system)
    assert system.overlap(0, 1) == frozenset({Cone.zero(2)})


@pytest.mark.parametrize(
    "name, separated",
    [("projective_plane", True), ("blowup", True), ("doubled_origin", False), ("p1_times_p1", True)],
)
def test_separatedness(request, name, separated):
    conical = request.getfixturevalue(name)
    assert is_separated(conical) is separated
    system = build_system(conical)
    assert system_is_separated(system) == validate_system(union_as_fan(system))


def test_doubled_origin_is_a_fan_but_not_separated(doubled_origin):
    system = build_system(doubled_origin)
    # as plain cones the two charts coincide; only the ray labels tell them apart
    assert is_fan([c.cone for c in system.maximal_cones])
    assert "different rays" in system_violation(union_as_fan(system))


def test_pair_separation_on_doubled_origin(doubled_origin):
    ring = doubled_origin.ring
    xy, xz, yz = generators_irrelevant(ring)
    assert pair_separation(ring, xy, xz) == (True, True)
    assert pair_separation(ring, xz, yz) == (False, False)
    table = separation_table(doubled_origin)
    assert len(table) == 3
    assert table["agree"].all()


def test_separation_table_of_blowup(blowup):
    table = separation_table(blowup)
    assert len(table) == 6
    assert table["weight_side"].all()


def test_gluing_classes(projective_plane, doubled_origin):
    gluing = gluing_classes(build_system(projective_plane))
    assert len(gluing.classes) == 10
    zero = gluing.class_of(Cone.zero(2), 0)
    assert zero == gluing.class_of(Cone.zero(2), 2)
    top = gluing.class_of(build_system(projective_plane).cone(1), 1)
    assert gluing.precedes(zero, top)
    assert not gluing.precedes(top, zero)

    doubled = build_system(doubled_origin)
    gluing = gluing_classes(doubled)
    assert len(gluing.classes) == 4
    assert gluing.class_of(doubled.cone(1), 1) != gluing.class_of(doubled.cone(2), 2)


def test_invalid_systems():
    quadrant, lower = Cone.of([E1, E2]), Cone.of([E1, (0, -1)])
    glued_wrong = SystemOfFans(
        2,
        (LabelledCone("a", quadrant), LabelledCone("b", lower)),
        ((0, 1, (Cone.of([E2]),)), (1, 0, (Cone.of([E2]),))),
    )
    assert "not a common face" in system_violation(glued_wrong)

    line = SystemOfFans(2, (LabelledCone("h", Cone.of([E1, (-1, 0)])),))
    assert "strictly convex" in system_violation(line)
    assert cone_dim(line.cone(0)) == 1


def test_one_sided_overlap_is_rejected():
    quadrant, lower = Cone.of([E1, E2]), Cone.of([E1, (0, -1)])
    one_sided = SystemOfFans(
        2,
        (LabelledCone("a", quadrant), LabelledCone("b", lower)),
        ((0, 1, (Cone.of([E1]),)), (1, 0, (Cone.zero(2),))),
    )
    assert not validate_system(one_sided)
    assert "differs from overlap (1, 0)" in system_violation(one_sided)


def test_gluing_must_be_transitive():
    ray = (Cone.of([E1]),)
    cones = (
        LabelledCone("a", Cone.of([E1, E2])),
        LabelledCone("b", Cone.of([E1, (0, -1)])),
        LabelledCone("c", Cone.of([E1, (1, 1)])),
    )
    # a and c both meet b along E1 but are not glued to each other
    system = SystemOfFans(2, cones, ((0, 1, ray), (1, 0, ray), (1, 2, ray), (2, 1, ray)))
    assert not validate_system(system)
    assert system_violation(system).startswith("triple (0, 1, 2)")
    assert "is not in overlap (0, 2)" in system_violation(system)


def test_separated_sigma_cones_over_weight_cones_meeting_in_a_ray():
    ring = GradedPolyRing.create(FgAbGroup(2), [(0, 1), (3, 1), (-2, -2), (3, 1), (0, 2), (1, 3)])
    f, g = Monomial.from_support(6, [0, 1]), Monomial.from_support(6, [2, 3])
    # the weight cones of f and g share only the ray through (3, 1)
    assert pair_separation(ring, f, g) == (False, True)
