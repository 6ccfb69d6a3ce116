"""
fans.py

Systems of fans attached to conical rings.

For a basis m_1, ..., m_k of the grading kernel M_S, variable i contributes the ray
rho_i = (m_1[i], ..., m_k[i]) in N_S = Z^k. A relevant monomial f gets the cone spanned by
the rays of the variables outside its support. Systems built from rings carry trivial
overlaps; systems read from documents may carry explicit ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import pandas as pd
from loguru import logger

from errors import NotAGenerator, NotAKernelBasis
from prevariety.cones import (
    Cone,
    cone_equal,
    face_lattice,
    faces,
    full_dimensional,
    intersect,
    is_face,
    is_pointed,
    is_subcone,
)
from prevariety.grading import (
    ConicalRing,
    GradedPolyRing,
    Monomial,
    generators_irrelevant,
    grading_kernel,
    is_relevant,
    relevant_in_B,
    weight_cone,
)
from prevariety.lattice import Sublattice, Vector


@dataclass(frozen=True)
class LabelledCone:
    label: str
    cone: Cone
    # indices into SystemOfFans.rays of the rays generating the cone (ring-derived systems)
    ray_indices: tuple[int, ...] | None = None
    monomial: Monomial | None = None


@dataclass(frozen=True)
class SystemOfFans:
    ambient_rank: int
    maximal_cones: tuple[LabelledCone, ...]
    # (i, j, cones): the fan Delta_ij is the set of faces of the listed cones
    overlaps: tuple[tuple[int, int, tuple[Cone, ...]], ...] = ()
    rays: tuple[Vector, ...] | None = None

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.maximal_cones]

    def cone(self, i: int) -> Cone:
        return self.maximal_cones[i].cone

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def overlap(self, i: int, j: int) -> frozenset[Cone]:
        if i == j:
            return frozenset(face_lattice(self.cone(i)))
        for a, b, cones in self.overlaps:
            if (a, b) == (i, j):
                return frozenset(face for c in cones for face in face_lattice(c))
        return frozenset({Cone.zero(self.ambient_rank)})

    def face_indices(self, i: int, tau: Cone) -> frozenset[int] | None:
        """Ray indices of maximal cone i lying in tau; None when rays are not tracked."""
        labelled = self.maximal_cones[i]
        if labelled.ray_indices is None or self.rays is None:
            return None
        rank = self.ambient_rank
        return frozenset(r for r in labelled.ray_indices if is_subcone(Cone.of([self.rays[r]], rank), tau))


@dataclass(frozen=True)
class GluingClass:
    representative: tuple[Cone, int]
    members: tuple[tuple[Cone, int], ...]


@dataclass(frozen=True)
class Gluing:
    classes: tuple[GluingClass, ...]
    # pairs (a, b) of class indices with class a below class b
    order: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def class_of(self, cone: Cone, index: int) -> int:
        for k, gluing_class in enumerate(self.classes):
            if (cone, index) in gluing_class.members:
                return k
        raise KeyError(f"({cone}, {index}) is not a labelled face")

    def precedes(self, a: int, b: int) -> bool:
        return (a, b) in self.order


# ================================
# Construction
# ================================
def resolve_basis(ring: GradedPolyRing, basis: Sublattice | None) -> Sublattice:
    kernel = grading_kernel(ring)
    if basis is None:
        return kernel
    if basis.ambient_rank != ring.n or not basis.same_lattice(kernel):
        raise NotAKernelBasis(f"{basis.basis} is not a basis of the grading kernel {kernel.basis}")
    return basis


def rays_from_basis(basis: Sublattice) -> tuple[Vector, ...]:
    return tuple(basis.basis.columns())


def sigma_over(rays: Sequence[Vector], rank: int, support: Iterable[int]) -> Cone:
    """Cone spanned by the rays of the variables outside the support."""
    inside = set(support)
    return Cone.of((ray for i, ray in enumerate(rays) if i not in inside), rank)


def sigma_f(ring: GradedPolyRing, basis: Sublattice | None, f: Monomial) -> Cone:
    if f not in generators_irrelevant(ring):
        raise NotAGenerator(f"{ring.format(f)} is not an element of Gen(S)")
    basis = resolve_basis(ring, basis)
    return sigma_over(rays_from_basis(basis), basis.rank, f.support)


def chart_system(
    ring: GradedPolyRing, basis: Sublattice | None, monomials: Sequence[Monomial]
) -> SystemOfFans:
    """One labelled cone per relevant monomial, trivial overlaps."""
    basis = resolve_basis(ring, basis)
    rays = rays_from_basis(basis)
    cones = []
    seen: dict[str, int] = {}
    for f in monomials:
        if not is_relevant(ring, f):
            raise NotAGenerator(f"{ring.format(f)} is not relevant")
        label = ring.format(f)
        seen[label] = seen.get(label, 0) + 1
        if seen[label] > 1:
            label = f"{label}#{seen[label]}"
        outside = tuple(i for i in range(ring.n) if i not in f.support)
        cones.append(LabelledCone(label, sigma_over(rays, basis.rank, f.support), outside, f))
    return SystemOfFans(basis.rank, tuple(cones), (), rays)


def build_system(conical: ConicalRing, basis: Sublattice | None = None) -> SystemOfFans:
    system = chart_system(conical.ring, basis, relevant_in_B(conical))
    logger.debug(f"built system of {len(system.maximal_cones)} cones in rank {system.ambient_rank}")
    return system


# ================================
# Validation and separatedness
# ================================
def _labelled_faces_agree(s: SystemOfFans, i: int, j: int, tau: Cone) -> bool:
    return s.face_indices(i, tau) == s.face_indices(j, tau)


def system_violation(s: SystemOfFans) -> str | None:
    """The first violated system condition, or None for a valid system."""
    for i, labelled in enumerate(s.maximal_cones):
        if not is_pointed(labelled.cone):
            return f"cone {labelled.label} is not strictly convex"
    count = len(s.maximal_cones)
    for i, j in combinations(range(count), 2):
        forward, backward = s.overlap(i, j), s.overlap(j, i)
        if forward != backward:
            return f"overlap ({i}, {j}) differs from overlap ({j}, {i})"
        for tau in forward:
            if not (is_face(tau, s.cone(i)) and is_face(tau, s.cone(j))):
                return f"overlap ({i}, {j}) contains {tau}, not a common face"
            if not _labelled_faces_agree(s, i, j, tau):
                return f"overlap ({i}, {j}) glues {tau} along different rays"
    for i in range(count):
        for j in range(count):
            for k in range(count):
                shared = s.overlap(i, j) & s.overlap(j, k)
                if not shared <= s.overlap(i, k):
                    return f"triple ({i}, {j}, {k}): overlap ({i}, {j}) meet ({j}, {k}) is not in overlap ({i}, {k})"
    return None


def validate_system(s: SystemOfFans) -> bool:
    violation = system_violation(s)
    if violation is not None:
        logger.info(f"invalid system of fans: {violation}")
    return violation is None


def union_as_fan(s: SystemOfFans) -> SystemOfFans:
    """The same cones glued along their full pairwise intersections."""
    overlaps = tuple(
        (i, j, (intersect(s.cone(i), s.cone(j)),))
        for i in range(len(s.maximal_cones))
        for j in range(len(s.maximal_cones))
        if i != j
    )
    return SystemOfFans(s.ambient_rank, s.maximal_cones, overlaps, s.rays)


def is_fan(cones: Sequence[Cone]) -> bool:
    return all(
        is_face(meet, c1) and is_face(meet, c2)
        for c1, c2 in combinations(cones, 2)
        for meet in [intersect(c1, c2)]
    )


def system_is_separated(s: SystemOfFans) -> bool:
    return system_violation(union_as_fan(s)) is None


def is_separated(conical: ConicalRing, basis: Sublattice | None = None) -> bool:
    return system_is_separated(build_system(conical, basis))


def pair_separation(
    ring: GradedPolyRing, f: Monomial, g: Monomial, basis: Sublattice | None = None
) -> tuple[bool, bool]:
    """(weight cones overlap in their interiors, sigma cones share no interior)."""
    weight_side = full_dimensional(intersect(weight_cone(ring, f), weight_cone(ring, g)))
    sigma_side = not full_dimensional(intersect(sigma_f(ring, basis, f), sigma_f(ring, basis, g)))
    return weight_side, sigma_side


def separation_table(conical: ConicalRing, basis: Sublattice | None = None) -> pd.DataFrame:
    ring = conical.ring
    generators = [f for f in relevant_in_B(conical) if f in generators_irrelevant(ring)]
    rows = []
    for f, g in combinations(generators, 2):
        weight_side, sigma_side = pair_separation(ring, f, g, basis)
        rows.append(
            {
                "f": ring.format(f),
                "g": ring.format(g),
                "weight_side": weight_side,
                "sigma_side": sigma_side,
                "agree": weight_side == sigma_side,
            }
        )
    table = pd.DataFrame(rows, columns=["f", "g", "weight_side", "sigma_side", "agree"])
    if not table.empty and not table["agree"].all():
        logger.warning(f"weight/sigma separation disagrees on\n{table[~table['agree']].to_string(index=False)}")
    return table


# ================================
# Gluing classes
# ================================
def gluing_classes(s: SystemOfFans) -> Gluing:
    labelled = [(tau, i) for i in range(len(s.maximal_cones)) for tau in faces(s.cone(i))]
    parent = {item: item for item in labelled}

    def find(item):
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    for i, j in combinations(range(len(s.maximal_cones)), 2):
        for tau in s.overlap(i, j):
            if (tau, i) in parent and (tau, j) in parent:
                parent[find((tau, j))] = find((tau, i))

    grouped: dict[tuple[Cone, int], list[tuple[Cone, int]]] = {}
    for item in labelled:
        grouped.setdefault(find(item), []).append(item)
    classes = tuple(GluingClass(members[0], tuple(members)) for members in grouped.values())
    index = {item: k for k, gluing_class in enumerate(classes) for item in gluing_class.members}

    order = {
        (index[(tau, i)], index[(sigma, i)])
        for i in range(len(s.maximal_cones))
        for sigma in faces(s.cone(i))
        for tau in faces(sigma)
    }
    logger.debug(f"{len(labelled)} labelled faces fall into {len(classes)} gluing classes")
    return Gluing(classes, frozenset(order))


def same_cones(s1: SystemOfFans, s2: SystemOfFans) -> bool:
    """Equal labels with equal cones, in any order."""
    if s1.ambient_rank != s2.ambient_rank or sorted(s1.labels) != sorted(s2.labels):
        return False
    return all(cone_equal(c.cone, s2.cone(s2.index_of(c.label))) for c in s1.maximal_cones)
