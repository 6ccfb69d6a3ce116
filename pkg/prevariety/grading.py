"""
grading.py

Multigraded polynomial rings C[T_1, ..., T_n] graded by a finitely generated abelian
group D, their monomials, weight cones, relevance, the canonical generators of the
irrelevant ideal S_+, grading kernels, conical rings (S, B) and the subring realizing a
chosen irrelevant subset B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import pandas as pd
from loguru import logger

from constants import DEFAULT_VARIABLE_NAMES
from errors import DimensionMismatch, IneffectiveGrading, NotInIrrelevantIdeal
from prevariety.cones import Cone, HalfspaceRep, from_halfspaces
from prevariety.lattice import (
    CokernelPresentation,
    Degree,
    FgAbGroup,
    IntegerMatrix,
    Sublattice,
    cokernel_presentation,
    kernel_rows,
    matrix_rank,
)

__all__ = [
    "ConicalRing",
    "Degree",
    "FgAbGroup",
    "GradedPolyRing",
    "Monomial",
    "chart_cone",
    "default_names",
    "full_conical",
    "in_ideal",
    "minimalize",
    "degree_of",
    "generators_irrelevant",
    "grading_kernel",
    "is_effective",
    "is_relevant",
    "regrade_effectively",
    "relevance_table",
    "relevant_in_B",
    "subring_degree_bound",
    "subring_for_B",
    "validate_conical",
    "weight_cone",
]


# ================================
# Monomials
# ================================
@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise DimensionMismatch(f"negative exponent in {self.exponents}")

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> Monomial:
        chosen = set(support)
        return cls(tuple(int(i in chosen) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def squarefree(self) -> Monomial:
        return Monomial(tuple(min(e, 1) for e in self.exponents))

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def coprime(self, other: Monomial) -> bool:
        return not set(self.support) & set(other.support)

    def times(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: Monomial) -> Monomial:
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def quotient(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def divisors(self) -> Iterator[Monomial]:
        ranges = [range(e + 1) for e in self.exponents]
        yield from (Monomial(tuple(choice)) for choice in _product(ranges))


def _product(ranges: Sequence[range]) -> Iterator[tuple[int, ...]]:
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for tail in _product(ranges[1:]):
            yield (head,) + tail


def in_ideal(m: Monomial, generators: Iterable[Monomial]) -> bool:
    return any(g.divides(m) for g in generators)


def minimalize(monomials: Iterable[Monomial]) -> list[Monomial]:
    """Drop every monomial divisible by a different one of the list."""
    unique = sorted(set(monomials), key=lambda m: (m.total_degree, m.support, m.exponents))
    kept: list[Monomial] = []
    for m in unique:
        if not in_ideal(m, kept):
            kept.append(m)
    return kept


# ================================
# Graded rings
# ================================
@dataclass(frozen=True)
class GradedPolyRing:
    group: FgAbGroup
    degrees: tuple[Degree, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", default_names(len(self.degrees)))
        if len(self.names) != len(self.degrees):
            raise DimensionMismatch(f"{len(self.names)} names for {len(self.degrees)} variables")
        for i, d in enumerate(self.degrees):
            if not self.group.contains(d):
                raise DimensionMismatch(f"degree {d} of variable {self.names[i]} is not an element of {self.group}")
        if not is_effective(self.group, self.degrees):
            raise IneffectiveGrading(f"degrees {[str(d) for d in self.degrees]} do not generate {self.group}")

    @classmethod
    def create(
        cls, group: FgAbGroup, degrees: Iterable[Sequence[int]], names: Sequence[str] = ()
    ) -> GradedPolyRing:
        """Build a ring from lifted degree vectors (free entries followed by torsion entries)."""
        return cls(group, tuple(group.from_lifted(d) for d in degrees), tuple(names))

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def rank(self) -> int:
        return self.group.free_rank

    def free_degree_rows(self) -> list[tuple[int, ...]]:
        return [tuple(d.free[c] for d in self.degrees) for c in range(self.rank)]

    def monomial(self, *exponents: int) -> Monomial:
        if len(exponents) != self.n:
            raise DimensionMismatch(f"{len(exponents)} exponents for {self.n} variables")
        return Monomial(tuple(exponents))

    def parse(self, text: str) -> Monomial:
        """Read a monomial written with single-letter names, such as 'xw' or 'x2z'."""
        exponents = [0] * self.n
        index = {name: i for i, name in enumerate(self.names)}
        pos = 0
        while pos < len(text):
            name = text[pos]
            if name not in index:
                raise DimensionMismatch(f"unknown variable {name!r} in {text!r}")
            pos += 1
            digits = ""
            while pos < len(text) and text[pos].isdigit():
                digits += text[pos]
                pos += 1
            exponents[index[name]] += int(digits) if digits else 1
        return Monomial(tuple(exponents))

    def format(self, m: Monomial) -> str:
        if m.is_one():
            return "1"
        single = all(len(name) == 1 for name in self.names)
        parts = [name if e == 1 else f"{name}{e}" if single else f"{name}^{e}" for name, e in zip(self.names, m.exponents) if e]
        return "".join(parts) if single else "*".join(parts)


def default_names(n: int) -> tuple[str, ...]:
    if n <= len(DEFAULT_VARIABLE_NAMES):
        return tuple(DEFAULT_VARIABLE_NAMES[:n])
    return tuple(f"x{i + 1}" for i in range(n))


def _degree_presentation_matrix(group: FgAbGroup, degrees: Sequence[Degree]) -> IntegerMatrix:
    """Columns: lifted degrees followed by the torsion relations of the group."""
    columns = [d.lifted() for d in degrees] + group.relations().columns()
    return IntegerMatrix.from_columns(columns, group.generator_count)


def is_effective(group: FgAbGroup, degrees: Sequence[Degree]) -> bool:
    if group.is_trivial:
        return True
    if not degrees:
        return False
    return cokernel_presentation(_degree_presentation_matrix(group, degrees)).group.is_trivial


def degree_of(ring: GradedPolyRing, m: Monomial) -> Degree:
    if m.n != ring.n:
        raise DimensionMismatch(f"monomial with {m.n} exponents in a ring with {ring.n} variables")
    return ring.group.combination(m.exponents, ring.degrees)


def weight_cone(ring: GradedPolyRing, m: Monomial) -> Cone:
    return Cone.of((ring.degrees[i].free for i in m.support), ring.rank)


def is_relevant(ring: GradedPolyRing, m: Monomial) -> bool:
    if m.n != ring.n:
        raise DimensionMismatch(f"monomial with {m.n} exponents in a ring with {ring.n} variables")
    return matrix_rank([ring.degrees[i].free for i in m.support], ring.rank) == ring.rank


@lru_cache(maxsize=1024)
def generators_irrelevant(ring: GradedPolyRing) -> tuple[Monomial, ...]:
    """Gen^D(S): squarefree relevant monomials supported on exactly rank(D) variables."""
    found = tuple(
        Monomial.from_support(ring.n, support)
        for support in combinations(range(ring.n), ring.rank)
        if is_relevant(ring, Monomial.from_support(ring.n, support))
    )
    logger.debug(f"Gen^D(S) has {len(found)} elements out of {ring.n} choose {ring.rank} supports")
    return found


@lru_cache(maxsize=1024)
def grading_kernel(ring: GradedPolyRing) -> Sublattice:
    """M_S = ker(gamma) in Z^n, torsion congruences included."""
    presentation = _degree_presentation_matrix(ring.group, ring.degrees)
    relations = kernel_rows(presentation.entries, presentation.cols)
    kernel = Sublattice.from_vectors((v[: ring.n] for v in relations), ring.n)
    if kernel.rank != ring.n - ring.rank:
        raise DimensionMismatch(f"grading kernel has rank {kernel.rank}, expected {ring.n - ring.rank}")
    return kernel


def dual_rank(ring: GradedPolyRing) -> int:
    return ring.n - ring.rank


def chart_cone(ring: GradedPolyRing, support: Iterable[int]) -> Cone:
    """Rational cone of M_J = {m in M_S : m_i >= 0 for i outside J}, inside Z^n."""
    outside = [i for i in range(ring.n) if i not in set(support)]
    inequalities = tuple(tuple(int(i == j) for j in range(ring.n)) for i in outside)
    return from_halfspaces(HalfspaceRep(ring.n, inequalities, tuple(ring.free_degree_rows())))


def regrade_effectively(
    group: FgAbGroup, degrees: Sequence[Degree], names: Sequence[str] = ()
) -> tuple[GradedPolyRing, CokernelPresentation]:
    """Regrade variables of the given degrees by the subgroup those degrees generate.

    The subgroup is Z^n / ker, so it is presented as the cokernel of the kernel basis.
    """
    presentation = _degree_presentation_matrix(group, degrees)
    relations = kernel_rows(presentation.entries, presentation.cols)
    kernel = Sublattice.from_vectors((v[: len(degrees)] for v in relations), len(degrees))
    coker = cokernel_presentation(kernel.basis.transpose())
    n = len(degrees)
    new_degrees = tuple(coker.project([int(i == j) for j in range(n)]) for i in range(n))
    return GradedPolyRing(coker.group, new_degrees, tuple(names)), coker


# ================================
# Conical rings
# ================================
@dataclass(frozen=True)
class ConicalRing:
    ring: GradedPolyRing
    b_generators: tuple[Monomial, ...]


def validate_conical(ring: GradedPolyRing, b_generators: Iterable[Monomial]) -> ConicalRing:
    generators = tuple(b_generators)
    if not generators:
        raise NotInIrrelevantIdeal("(empty generating set)")
    irrelevant = generators_irrelevant(ring)
    for b in generators:
        if b.n != ring.n:
            raise DimensionMismatch(f"B-generator with {b.n} exponents in a ring with {ring.n} variables")
        if not in_ideal(b, irrelevant):
            raise NotInIrrelevantIdeal(ring.format(b))
    return ConicalRing(ring, generators)


def full_conical(ring: GradedPolyRing) -> ConicalRing:
    """(S, S_+)."""
    return ConicalRing(ring, generators_irrelevant(ring))


@lru_cache(maxsize=1024)
def relevant_in_B(conical: ConicalRing) -> tuple[Monomial, ...]:
    """Gen^D_B(S): generators of S_+ lying in B plus the relevant B-generators, minimalized."""
    ring = conical.ring
    inside = [g for g in generators_irrelevant(ring) if in_ideal(g, conical.b_generators)]
    relevant_b = [b for b in conical.b_generators if is_relevant(ring, b)]
    return tuple(sorted(minimalize(inside + relevant_b), key=lambda m: (m.support, m.exponents)))


def relevance_table(ring: GradedPolyRing) -> pd.DataFrame:
    rows = []
    for support in combinations(range(ring.n), ring.rank):
        m = Monomial.from_support(ring.n, support)
        rows.append(
            {
                "monomial": ring.format(m),
                "degree": str(degree_of(ring, m)),
                "relevant": is_relevant(ring, m),
            }
        )
    return pd.DataFrame(rows, columns=["monomial", "degree", "relevant"])


# ================================
# Subring realization
# ================================
def _monomials_of_degree(
    ring: GradedPolyRing, target: Degree, variables: Sequence[int], bound: int
) -> Iterator[Monomial]:
    """Monomials in the given variables with total degree <= bound and D-degree target."""

    def extend(position: int, remaining: int, exponents: list[int]) -> Iterator[Monomial]:
        if position == len(variables):
            m = Monomial(tuple(exponents))
            if degree_of(ring, m) == target:
                yield m
            return
        for e in range(remaining + 1):
            exponents[variables[position]] = e
            yield from extend(position + 1, remaining - e, exponents)
        exponents[variables[position]] = 0

    yield from extend(0, bound, [0] * ring.n)


def _is_product_of(m: Monomial, generators: Sequence[Monomial]) -> bool:
    if m.is_one():
        return True
    return any(g.divides(m) and _is_product_of(m.quotient(g), generators) for g in generators if not g.is_one())


def subring_degree_bound(conical: ConicalRing, factor: int) -> int:
    """The search bound: factor times the largest total degree of a B-generator."""
    return factor * max(f.total_degree for f in relevant_in_B(conical))


def subring_for_B(conical: ConicalRing, degree_bound: int) -> list[Monomial]:
    """Monomial generators over S_0 of a subring S' of S whose irrelevant ideal is B.

    A monomial g qualifies when deg(g) = deg(f') for a divisor f' of some f in Gen_B(S)
    with g/f' a reduced fraction, or when g is such an f itself. The result is the
    minimal generating set of the monoid these monomials generate; degree-zero
    monomials belong to S_0 and are left out.
    """
    ring = conical.ring
    gens_b = relevant_in_B(conical)
    zero = ring.group.zero()
    candidates: set[Monomial] = set(gens_b)
    for f in gens_b:
        for divisor in f.divisors():
            target = degree_of(ring, divisor)
            if target == zero:
                continue
            coprime_variables = [i for i in range(ring.n) if i not in divisor.support]
            candidates.update(_monomials_of_degree(ring, target, coprime_variables, degree_bound))
    ordered = sorted(
        (g for g in candidates if degree_of(ring, g) != zero),
        key=lambda m: (m.total_degree, m.support, m.exponents),
    )
    generators: list[Monomial] = []
    for g in ordered:
        if not _is_product_of(g, generators):
            generators.append(g)
    logger.debug(f"subring generators: {[ring.format(g) for g in generators]} (degree bound {degree_bound})")
    return generators
