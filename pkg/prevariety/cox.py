"""
cox.py

From rays back to rings: the grading matrix A with A B = 0 for a ray matrix B, the
class group as the cokernel of B, the irrelevant subset B_A read off the maximal cones,
and the two roundtrips ring -> fans -> ring and fans -> ring -> fans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from loguru import logger

from errors import NotSimplicial, RankDeficient, RaysDoNotSpan, UnknownRay
from prevariety.cones import cone_equal, is_simplicial
from prevariety.fans import LabelledCone, SystemOfFans, build_system
from prevariety.grading import (
    ConicalRing,
    Degree,
    FgAbGroup,
    GradedPolyRing,
    Monomial,
    is_effective,
    relevant_in_B,
    validate_conical,
)
from prevariety.lattice import (
    CokernelPresentation,
    IntegerMatrix,
    Sublattice,
    Vector,
    cokernel_presentation,
    matrix_rank,
    primitive,
)


@dataclass(frozen=True)
class RayMatrix:
    """One row per ray occurrence; a ray appearing k times is repeated k times."""

    rank: int
    rows: tuple[Vector, ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], rank: int | None = None) -> RayMatrix:
        vectors = tuple(tuple(int(x) for x in row) for row in rows)
        if rank is None:
            rank = len(vectors[0]) if vectors else 0
        return cls(rank, vectors)

    @property
    def n(self) -> int:
        return len(self.rows)

    def matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(self.rows, self.rank)


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    # images of the recovered group's generators in the original group
    automorphism: tuple[Degree, ...] = ()
    diagnosis: str = ""


# ================================
# Grading from rays
# ================================
def _presentation(rays: RayMatrix) -> CokernelPresentation:
    if matrix_rank(rays.rows, rays.rank) < rays.rank:
        raise RankDeficient(f"ray matrix of rank {matrix_rank(rays.rows, rays.rank)} in ambient rank {rays.rank}")
    return cokernel_presentation(rays.matrix())


def grading_from_rays(rays: RayMatrix) -> tuple[FgAbGroup, list[Degree]]:
    """D = Z^n / im(B) and the classes of the standard basis vectors."""
    presentation = _presentation(rays)
    degrees = [presentation.project([int(i == j) for j in range(rays.n)]) for i in range(rays.n)]
    logger.debug(f"class group {presentation.group}, degrees {[str(d) for d in degrees]}")
    return presentation.group, degrees


def ring_from_rays(rays: RayMatrix, names: Sequence[str] = ()) -> GradedPolyRing:
    group, degrees = grading_from_rays(rays)
    return GradedPolyRing(group, tuple(degrees), tuple(names))


def ray_matrix_of(s: SystemOfFans) -> RayMatrix:
    """The system's own ray rows, or the distinct primitive cone generators in order of appearance."""
    if s.rays is not None:
        return RayMatrix(s.ambient_rank, s.rays)
    found = dict.fromkeys(g for labelled in s.maximal_cones for g in labelled.cone.generators)
    return RayMatrix(s.ambient_rank, tuple(found))


def irrelevant_from_cones(s: SystemOfFans, rays: RayMatrix) -> list[Monomial]:
    """For every maximal cone the product of the variables whose rays lie outside it."""
    copies: dict[Vector, list[int]] = {}
    for index, row in enumerate(rays.rows):
        copies.setdefault(primitive(row), []).append(index)
    used: dict[Vector, int] = {}
    monomials = []
    for labelled in s.maximal_cones:
        indices = _indices_of(labelled, copies, used)
        monomials.append(Monomial.from_support(rays.n, [i for i in range(rays.n) if i not in indices]))
    return monomials


def _indices_of(labelled: LabelledCone, copies: dict[Vector, list[int]], used: dict[Vector, int]) -> set[int]:
    if labelled.ray_indices is not None:
        return set(labelled.ray_indices)
    indices = set()
    for g in labelled.cone.generators:
        if g not in copies:
            raise UnknownRay(f"ray {list(g)} of cone {labelled.label} is not a row of the ray matrix")
        # the t-th cone through a repeated direction takes copy t (cyclically)
        t = used.get(g, 0)
        indices.add(copies[g][t % len(copies[g])])
        used[g] = t + 1
    return indices


# ================================
# Roundtrips
# ================================
def roundtrip_ring(conical: ConicalRing, basis: Sublattice | None = None) -> RoundtripReport:
    ring = conical.ring
    system = build_system(conical, basis)
    rays = ray_matrix_of(system)
    presentation = _presentation(rays)
    group = presentation.group
    if group != ring.group:
        return RoundtripReport(False, (), f"recovered group {group} differs from {ring.group}")

    # psi sends generator k of the recovered group to the original degree of its lift
    automorphism = tuple(
        ring.group.combination(presentation.lift(k), ring.degrees) for k in range(group.generator_count)
    )
    for i in range(ring.n):
        recovered = presentation.project([int(i == j) for j in range(ring.n)])
        if ring.group.combination(recovered.lifted(), automorphism) != ring.degrees[i]:
            return RoundtripReport(False, automorphism, f"degree of variable {ring.names[i]} is not matched")
    if not is_effective(ring.group, automorphism):
        return RoundtripReport(False, automorphism, "degree matching map is not surjective")

    recovered_b = {m.squarefree() for m in irrelevant_from_cones(system, rays)}
    expected_b = {m.squarefree() for m in relevant_in_B(conical)}
    if recovered_b != expected_b:
        names = sorted(ring.format(m) for m in recovered_b ^ expected_b)
        return RoundtripReport(False, automorphism, f"irrelevant subsets differ in {names}")
    return RoundtripReport(True, automorphism, "")


def roundtrip_fan(s: SystemOfFans) -> RoundtripReport:
    for labelled in s.maximal_cones:
        if not is_simplicial(labelled.cone):
            raise NotSimplicial(f"cone {labelled.label} = {labelled.cone} is not simplicial")
    rays = ray_matrix_of(s)
    if matrix_rank(rays.rows, rays.rank) < rays.rank:
        raise RaysDoNotSpan(f"rays of the system span less than rank {rays.rank}")
    ring = ring_from_rays(rays)
    monomials = irrelevant_from_cones(s, rays)
    conical = validate_conical(ring, monomials)
    basis = Sublattice(ring.n, rays.matrix().transpose())
    rebuilt = build_system(conical, basis)

    by_monomial = {c.monomial: c.cone for c in rebuilt.maximal_cones}
    for labelled, m in zip(s.maximal_cones, monomials):
        cone = by_monomial.get(m)
        if cone is None:
            return RoundtripReport(False, (), f"cone {labelled.label} has no chart {ring.format(m)}")
        if not cone_equal(cone, labelled.cone):
            return RoundtripReport(False, (), f"cone {labelled.label} came back as {cone}")
    if len(by_monomial) != len(set(monomials)):
        return RoundtripReport(False, (), "the rebuilt system has extra charts")
    return RoundtripReport(True, (), "")

