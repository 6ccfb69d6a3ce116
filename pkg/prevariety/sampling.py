"""
sampling.py

Seeded random instances for the property suites and `roundtrip --seed`: effective
gradings, conical rings with simplicial systems, and monomial morphisms between them.
Every sampler takes a random.Random so that a seed reproduces the instance.
"""

from __future__ import annotations

import random
from itertools import combinations

from loguru import logger

from constants import SAMPLE_ENTRY_RANGE, SAMPLE_MAX_ATTEMPTS
from errors import IneffectiveGrading, SamplingExhausted
from prevariety.fans import rays_from_basis
from prevariety.grading import (
    ConicalRing,
    FgAbGroup,
    GradedPolyRing,
    Monomial,
    degree_of,
    generators_irrelevant,
    grading_kernel,
    validate_conical,
)
from prevariety.lattice import matrix_rank
from prevariety.maps import GroupHom, RingMorphism


def _entry(rng: random.Random) -> int:
    return rng.randint(-SAMPLE_ENTRY_RANGE, SAMPLE_ENTRY_RANGE)


def in_general_position(ring: GradedPolyRing) -> bool:
    """Every rank-many free degrees are linearly independent."""
    return all(
        matrix_rank([ring.degrees[i].free for i in support], ring.rank) == ring.rank
        for support in combinations(range(ring.n), ring.rank)
    )


def random_grading(
    rng: random.Random,
    max_variables: int = 7,
    max_rank: int = 3,
    general_position: bool = False,
    torsion: bool = False,
) -> GradedPolyRing:
    """An effective grading of C[T_1..T_n] with n <= max_variables, rank(D) <= max_rank and Gen(S) nonempty."""
    for _ in range(SAMPLE_MAX_ATTEMPTS):
        rank = rng.randint(1, min(max_rank, max_variables - 1))
        n = rng.randint(rank + 1, max_variables)
        factors = (2,) if torsion and rng.random() < 0.5 else ()
        group = FgAbGroup(rank, factors)
        degrees = [
            tuple(_entry(rng) for _ in range(rank)) + tuple(rng.randrange(d) for d in factors) for _ in range(n)
        ]
        try:
            ring = GradedPolyRing.create(group, degrees)
        except IneffectiveGrading:
            continue
        if general_position and not in_general_position(ring):
            continue
        if not generators_irrelevant(ring):
            continue
        return ring
    raise SamplingExhausted(f"no effective grading found in {SAMPLE_MAX_ATTEMPTS} attempts")


def random_conical(rng: random.Random, ring: GradedPolyRing) -> ConicalRing:
    """B generated by a nonempty random subset of Gen(S)."""
    generators = list(generators_irrelevant(ring))
    chosen = rng.sample(generators, rng.randint(1, len(generators)))
    return validate_conical(ring, sorted(chosen))


def random_simplicial_instance(rng: random.Random, max_variables: int = 6, max_rank: int = 2) -> ConicalRing:
    """A conical ring whose system has no zero ray, torsion allowed."""
    for _ in range(SAMPLE_MAX_ATTEMPTS):
        ring = random_grading(rng, max_variables, max_rank, torsion=True)
        if all(any(ray) for ray in rays_from_basis(grading_kernel(ring))):
            return random_conical(rng, ring)
    raise SamplingExhausted(f"no ring without zero rays in {SAMPLE_MAX_ATTEMPTS} attempts")


def random_variable_map(
    rng: random.Random, source: GradedPolyRing, extra_variables: int = 2, max_rank: int = 3
) -> RingMorphism:
    """phi injective on variables, target degrees alpha(deg T_i) on the hit variables.

    alpha is a random integer matrix, so it may or may not be surjective.
    """
    if source.group.torsion:
        raise SamplingExhausted("variable maps are sampled from torsion-free sources only")
    for _ in range(SAMPLE_MAX_ATTEMPTS):
        rank = rng.randint(1, max_rank)
        columns = [tuple(_entry(rng) for _ in range(rank)) for _ in range(source.rank)]
        n_target = source.n + rng.randint(0, extra_variables)
        placement = rng.sample(range(n_target), source.n)
        degrees = [tuple(_entry(rng) for _ in range(rank)) for _ in range(n_target)]
        for i, j in enumerate(placement):
            degrees[j] = tuple(sum(c[row] * x for c, x in zip(columns, source.degrees[i].free)) for row in range(rank))
        group = FgAbGroup(rank)
        try:
            target = GradedPolyRing.create(group, degrees)
        except IneffectiveGrading:
            continue
        images = tuple(Monomial.from_support(n_target, [j]) for j in placement)
        alpha = GroupHom.from_lifted(source.group, group, columns)
        return RingMorphism(source, target, images, alpha)
    raise SamplingExhausted(f"no effective target grading in {SAMPLE_MAX_ATTEMPTS} attempts")


def random_monomial_endomorphism(rng: random.Random, target: GradedPolyRing, max_exponent: int = 2) -> RingMorphism:
    """Source and target graded by the same D, each source variable mapped to a random monomial."""
    for _ in range(SAMPLE_MAX_ATTEMPTS):
        n_source = rng.randint(target.rank + 1, target.n + 2)
        images = []
        while len(images) < n_source:
            m = Monomial(tuple(rng.randint(0, max_exponent) for _ in range(target.n)))
            if not m.is_one():
                images.append(m)
        degrees = tuple(degree_of(target, m) for m in images)
        try:
            source = GradedPolyRing(target.group, degrees)
        except IneffectiveGrading:
            continue
        return RingMorphism(source, target, tuple(images), GroupHom.identity(target.group))
    raise SamplingExhausted(f"no effective source grading in {SAMPLE_MAX_ATTEMPTS} attempts")


def sample_instances(seed: int, count: int, sampler, *args, **kwargs) -> list:
    rng = random.Random(seed)
    instances = [sampler(rng, *args, **kwargs) for _ in range(count)]
    logger.debug(f"sampled {count} instances with {sampler.__name__} from seed {seed}")
    return instances
