"""
cones.py

Rational polyhedral cones with integer generators, handled exactly.

Conversions between generators and halfspaces use the double description method:
lineality is split off first, then the extreme rays of the remaining pointed cone are
built up one inequality at a time (combinatorial adjacency test). Desk-scale inputs only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from loguru import logger

from errors import DimensionMismatch, NotSimplicial
from prevariety.lattice import (
    IntegerMatrix,
    Sublattice,
    Vector,
    dot,
    kernel_rows,
    matrix_rank,
    primitive,
)


@dataclass(frozen=True)
class HalfspaceRep:
    ambient_rank: int
    inequalities: tuple[Vector, ...]
    equalities: tuple[Vector, ...] = ()

    def satisfied_by(self, v: Sequence[int]) -> bool:
        return all(dot(e, v) == 0 for e in self.equalities) and all(dot(u, v) >= 0 for u in self.inequalities)


@dataclass(frozen=True)
class Cone:
    """A cone given by canonical generators: primitive, sorted, no redundant generator.

    Build cones with Cone.of(...); the raw constructor trusts its input.
    """

    ambient_rank: int
    generators: tuple[Vector, ...] = ()

    @classmethod
    def of(cls, generators: Iterable[Sequence[int]], ambient_rank: int | None = None) -> Cone:
        vectors = [tuple(int(x) for x in g) for g in generators]
        if ambient_rank is None:
            if not vectors:
                raise DimensionMismatch("ambient rank required for a cone without generators")
            ambient_rank = len(vectors[0])
        if any(len(v) != ambient_rank for v in vectors):
            raise DimensionMismatch(f"generator lengths differ from ambient rank {ambient_rank}")
        return _canonical(tuple(sorted({primitive(v) for v in vectors if any(v)})), ambient_rank)

    @classmethod
    def zero(cls, ambient_rank: int) -> Cone:
        return cls(ambient_rank, ())

    def generator_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(self.generators, self.ambient_rank)

    def interior_point(self) -> Vector:
        """Sum of the generators; lies in the relative interior."""
        return tuple(sum(column) for column in zip(*self.generators)) if self.generators else (0,) * self.ambient_rank

    def __str__(self) -> str:
        return "Cone(" + ", ".join(str(list(g)) for g in self.generators) + ")"


# ================================
# Double description
# ================================
def _pointed_rays(inequalities: list[Vector], dim: int) -> list[Vector]:
    """Extreme rays of the pointed cone {y : A y >= 0}; A has full column rank dim."""
    selected: list[int] = []
    for index, row in enumerate(inequalities):
        if matrix_rank([inequalities[i] for i in selected] + [row], dim) > len(selected):
            selected.append(index)
        if len(selected) == dim:
            break

    rays: list[Vector] = []
    zero_sets: list[frozenset[int]] = []
    for j in selected:
        others = [inequalities[i] for i in selected if i != j]
        (ray,) = kernel_rows(others, dim)
        if dot(inequalities[j], ray) < 0:
            ray = tuple(-x for x in ray)
        rays.append(ray)
        zero_sets.append(frozenset(i for i in selected if i != j))

    processed = set(selected)
    for k, row in enumerate(inequalities):
        if k in processed:
            continue
        processed.add(k)
        values = [dot(row, ray) for ray in rays]
        if all(v >= 0 for v in values):
            zero_sets = [z | {k} if v == 0 else z for z, v in zip(zero_sets, values)]
            continue
        new_rays, new_zero_sets = [], []
        for ray, z, v in zip(rays, zero_sets, values):
            if v >= 0:
                new_rays.append(ray)
                new_zero_sets.append(z | {k} if v == 0 else z)
        positive = [i for i, v in enumerate(values) if v > 0]
        negative = [i for i, v in enumerate(values) if v < 0]
        for p in positive:
            for q in negative:
                common = zero_sets[p] & zero_sets[q]
                if len(common) < dim - 2:
                    continue
                if any(common <= zero_sets[r] for r in range(len(rays)) if r not in (p, q)):
                    continue
                combined = tuple(values[p] * a - values[q] * b for a, b in zip(rays[q], rays[p]))
                new_rays.append(primitive(combined))
                new_zero_sets.append(common | {k})
        rays, zero_sets = new_rays, new_zero_sets
    return rays


@lru_cache(maxsize=16384)
def solve_cone(
    equalities: tuple[Vector, ...], inequalities: tuple[Vector, ...], dim: int
) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """Lineality basis and extreme rays of {x in Q^dim : E x = 0, U x >= 0}."""
    lineality = kernel_rows(list(equalities) + list(inequalities), dim)
    complement = kernel_rows(list(equalities) + lineality, dim)
    if not complement:
        return tuple(lineality), ()
    restricted = [tuple(dot(u, w) for w in complement) for u in inequalities]
    rays_in_complement = _pointed_rays(restricted, len(complement)) if restricted else []
    rays = {
        primitive(tuple(sum(c * w[i] for c, w in zip(y, complement)) for i in range(dim)))
        for y in rays_in_complement
    }
    return tuple(lineality), tuple(sorted(rays))


def _canonical(generators: tuple[Vector, ...], ambient_rank: int) -> Cone:
    if matrix_rank(generators, ambient_rank) == len(generators):
        return Cone(ambient_rank, generators)
    rep = _halfspaces_of(generators, ambient_rank)
    lineality, rays = solve_cone(rep.equalities, rep.inequalities, ambient_rank)
    return Cone(ambient_rank, _generators_from(lineality, rays))


def _generators_from(lineality: Sequence[Vector], rays: Sequence[Vector]) -> tuple[Vector, ...]:
    both = set(rays) | set(lineality) | {tuple(-x for x in v) for v in lineality}
    return tuple(sorted(both))


@lru_cache(maxsize=16384)
def _halfspaces_of(generators: tuple[Vector, ...], ambient_rank: int) -> HalfspaceRep:
    lineality, rays = solve_cone((), generators, ambient_rank)
    return HalfspaceRep(ambient_rank, rays, lineality)


# ================================
# Operations
# ================================
def halfspaces(c: Cone) -> HalfspaceRep:
    """Facet inequalities (extreme rays of the dual) and the equalities cutting out span(c)."""
    return _halfspaces_of(c.generators, c.ambient_rank)


def from_halfspaces(rep: HalfspaceRep) -> Cone:
    lineality, rays = solve_cone(tuple(rep.equalities), tuple(rep.inequalities), rep.ambient_rank)
    return Cone(rep.ambient_rank, _generators_from(lineality, rays))


def dual_cone(c: Cone) -> Cone:
    rep = halfspaces(c)
    return Cone(c.ambient_rank, _generators_from(rep.equalities, rep.inequalities))


def cone_dim(c: Cone) -> int:
    return matrix_rank(c.generators, c.ambient_rank)


def full_dimensional(c: Cone) -> bool:
    return cone_dim(c) == c.ambient_rank


def is_simplicial(c: Cone) -> bool:
    return len(c.generators) == cone_dim(c)


def is_pointed(c: Cone) -> bool:
    rep = halfspaces(c)
    lineality, _ = solve_cone(rep.equalities, rep.inequalities, c.ambient_rank)
    return not lineality


def contains(c: Cone, v: Sequence[int]) -> bool:
    if len(v) != c.ambient_rank:
        raise DimensionMismatch(f"point of length {len(v)} in ambient rank {c.ambient_rank}")
    return halfspaces(c).satisfied_by(v)


def in_relative_interior(c: Cone, v: Sequence[int]) -> bool:
    rep = halfspaces(c)
    return all(dot(e, v) == 0 for e in rep.equalities) and all(dot(u, v) > 0 for u in rep.inequalities)


def _check_ranks(c1: Cone, c2: Cone) -> None:
    if c1.ambient_rank != c2.ambient_rank:
        raise DimensionMismatch(f"ambient ranks differ: {c1.ambient_rank} vs {c2.ambient_rank}")


def is_subcone(c1: Cone, c2: Cone) -> bool:
    _check_ranks(c1, c2)
    rep = halfspaces(c2)
    return all(rep.satisfied_by(g) for g in c1.generators)


def cone_equal(c1: Cone, c2: Cone) -> bool:
    if c1 == c2:
        return True
    return is_subcone(c1, c2) and is_subcone(c2, c1)


def intersect(c1: Cone, c2: Cone) -> Cone:
    _check_ranks(c1, c2)
    r1, r2 = halfspaces(c1), halfspaces(c2)
    combined = HalfspaceRep(
        c1.ambient_rank,
        tuple(sorted(set(r1.inequalities) | set(r2.inequalities))),
        tuple(sorted(set(r1.equalities) | set(r2.equalities))),
    )
    return from_halfspaces(combined)


def smallest_face_containing(sigma: Cone, tau: Cone) -> Cone:
    """The smallest face of sigma containing tau (tau must lie in sigma)."""
    _check_ranks(sigma, tau)
    tight = [u for u in halfspaces(sigma).inequalities if all(dot(u, t) == 0 for t in tau.generators)]
    return Cone(sigma.ambient_rank, tuple(g for g in sigma.generators if all(dot(u, g) == 0 for u in tight)))


def is_face(tau: Cone, sigma: Cone) -> bool:
    if not is_subcone(tau, sigma):
        return False
    return cone_equal(tau, smallest_face_containing(sigma, tau))


def faces(sigma: Cone) -> list[Cone]:
    """All faces of a simplicial cone, by increasing dimension."""
    if not is_simplicial(sigma):
        raise NotSimplicial(f"{sigma} is not simplicial")
    return [
        Cone(sigma.ambient_rank, subset)
        for size in range(len(sigma.generators) + 1)
        for subset in combinations(sigma.generators, size)
    ]


def image_cone(f: IntegerMatrix, sigma: Cone) -> Cone:
    if f.cols != sigma.ambient_rank:
        raise DimensionMismatch(f"map with {f.cols} columns applied to a cone of rank {sigma.ambient_rank}")
    return Cone.of((f.apply(g) for g in sigma.generators), f.rows)


def relint_meets_subspace(sigma: Cone, lattice: Sublattice) -> bool:
    """Whether some strictly positive combination of the generators lies in span(L)."""
    if lattice.ambient_rank != sigma.ambient_rank:
        raise DimensionMismatch("cone and sublattice live in different ranks")
    s = len(sigma.generators)
    if s == 0:
        return True
    orthogonal = kernel_rows(lattice.vectors, sigma.ambient_rank)
    constraints = tuple(tuple(dot(q, g) for g in sigma.generators) for q in orthogonal)
    positivity = tuple(tuple(int(i == j) for j in range(s)) for i in range(s))
    _, rays = solve_cone(constraints, positivity, s)
    covered = {i for ray in rays for i, x in enumerate(ray) if x > 0}
    logger.debug(f"relint test for {sigma}: {len(rays)} rays cover {sorted(covered)}")
    return len(covered) == s


def face_lattice(sigma: Cone) -> list[Cone]:
    """All faces of any cone, by increasing dimension."""
    if is_simplicial(sigma):
        return faces(sigma)
    found: set[Cone] = set()
    for size in range(len(sigma.generators) + 1):
        for subset in combinations(sigma.generators, size):
            found.add(smallest_face_containing(sigma, Cone(sigma.ambient_rank, subset)))
    return sorted(found, key=lambda c: (cone_dim(c), c.generators))
