"""
maps.py

Monomial morphisms of multigraded rings and what they induce.

- GroupHom / RingMorphism: variables go to monomials, degrees go through alpha.
- classify(): relevant, generic and rational loci and the relevance flags of a morphism.
- RationalConeMap: a morphism together with the chosen f_g for every generator of B_R.
- Fan maps: the dual lattice map N_S -> N_R and the map of labelled cones.

Localizations S_(f) are compared through their chart cones in Z^n (see chart_cone), so
nothing here depends on the basis chosen for the grading kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from loguru import logger

from errors import (
    CompositionError,
    DimensionMismatch,
    IncompatibleDegree,
    InvalidHomomorphism,
    KernelNotPreserved,
    ValidationFailure,
)
from prevariety.cones import (
    cone_equal,
    faces,
    image_cone,
    in_relative_interior,
    is_subcone,
    smallest_face_containing,
)
from prevariety.fans import SystemOfFans, build_system, chart_system, gluing_classes, resolve_basis
from prevariety.grading import (
    ConicalRing,
    Degree,
    FgAbGroup,
    GradedPolyRing,
    Monomial,
    chart_cone,
    degree_of,
    full_conical,
    generators_irrelevant,
    in_ideal,
    is_effective,
    is_relevant,
    regrade_effectively,
    relevant_in_B,
    validate_conical,
)
from prevariety.lattice import (
    IntegerMatrix,
    Sublattice,
    cokernel_presentation,
    image_membership,
    matrix_rank,
)


# ================================
# Morphisms
# ================================
@dataclass(frozen=True)
class GroupHom:
    source: FgAbGroup
    target: FgAbGroup
    # image of each source generator: free generators first, then torsion generators
    images: tuple[Degree, ...]

    def __post_init__(self):
        if len(self.images) != self.source.generator_count:
            raise DimensionMismatch(f"{len(self.images)} images for {self.source.generator_count} generators")
        for image in self.images:
            if not self.target.contains(image):
                raise DimensionMismatch(f"{image} is not an element of {self.target}")
        for j, order in enumerate(self.source.torsion):
            image = self.images[self.source.free_rank + j]
            if self.target.scale(image, order) != self.target.zero():
                raise InvalidHomomorphism(f"torsion generator of order {order} maps to {image} of larger order")

    @classmethod
    def identity(cls, group: FgAbGroup) -> GroupHom:
        return cls(group, group, tuple(group.generator(k) for k in range(group.generator_count)))

    @classmethod
    def from_lifted(cls, source: FgAbGroup, target: FgAbGroup, vectors: Sequence[Sequence[int]]) -> GroupHom:
        return cls(source, target, tuple(target.from_lifted(v) for v in vectors))

    def apply(self, d: Degree) -> Degree:
        return self.target.combination(d.lifted(), self.images)

    def then(self, other: GroupHom) -> GroupHom:
        return GroupHom(self.source, other.target, tuple(other.apply(image) for image in self.images))

    def matrix(self) -> IntegerMatrix:
        return IntegerMatrix.from_columns([d.lifted() for d in self.images], self.target.generator_count)


def alpha_surjective(alpha: GroupHom, rational: bool = False) -> bool:
    """Integral surjectivity, or surjectivity after tensoring with Q."""
    if not rational:
        return is_effective(alpha.target, alpha.images)
    if alpha.target.free_rank == 0:
        return True
    columns = [d.lifted() for d in alpha.images] + alpha.target.relations().columns()
    presentation = cokernel_presentation(IntegerMatrix.from_columns(columns, alpha.target.generator_count))
    return presentation.group.free_rank == 0


@dataclass(frozen=True)
class RingMorphism:
    source: GradedPolyRing
    target: GradedPolyRing
    variable_images: tuple[Monomial, ...]
    alpha: GroupHom

    def __post_init__(self):
        if len(self.variable_images) != self.source.n:
            raise DimensionMismatch(f"{len(self.variable_images)} images for {self.source.n} variables")
        if any(m.n != self.target.n for m in self.variable_images):
            raise DimensionMismatch(f"variable images must have {self.target.n} exponents")
        if self.alpha.source != self.source.group or self.alpha.target != self.target.group:
            raise DimensionMismatch("alpha does not map the source grading group to the target one")

    @classmethod
    def identity(cls, ring: GradedPolyRing) -> RingMorphism:
        units = tuple(Monomial.from_support(ring.n, [i]) for i in range(ring.n))
        return cls(ring, ring, units, GroupHom.identity(ring.group))

    def exponent_matrix(self) -> IntegerMatrix:
        """E: Z^n_source -> Z^n_target, column i the exponents of phi(T_i)."""
        return IntegerMatrix.from_columns([m.exponents for m in self.variable_images], self.target.n)

    def apply(self, m: Monomial) -> Monomial:
        return Monomial(self.exponent_matrix().apply(m.exponents))

    def then(self, other: RingMorphism) -> RingMorphism:
        return RingMorphism(
            self.source,
            other.target,
            tuple(other.apply(m) for m in self.variable_images),
            self.alpha.then(other.alpha),
        )


def check_morphism(phi: RingMorphism) -> bool:
    for i, image in enumerate(phi.variable_images):
        expected = phi.alpha.apply(phi.source.degrees[i])
        actual = degree_of(phi.target, image)
        if actual != expected:
            raise IncompatibleDegree(
                i, f"deg({phi.target.format(image)}) = {actual}, alpha(deg({phi.source.names[i]})) = {expected}"
            )
    return True


# ================================
# Preimages
# ================================
def preimages(images: Sequence[Monomial], h: Monomial) -> Iterator[Monomial]:
    """All exponent vectors a with prod images_i^a_i = h; variables mapping to 1 get a_i = 0."""
    count = len(images)

    def extend(i: int, remaining: tuple[int, ...], chosen: list[int]) -> Iterator[Monomial]:
        if i == count:
            if not any(remaining):
                yield Monomial(tuple(chosen))
            return
        image = images[i].exponents
        if not any(image):
            yield from extend(i + 1, remaining, chosen + [0])
            return
        top = min(r // e for r, e in zip(remaining, image) if e)
        for a in range(top + 1):
            yield from extend(i + 1, tuple(r - a * e for r, e in zip(remaining, image)), chosen + [a])

    yield from extend(0, h.exponents, [])


def _has_relevant_preimage(
    ring: GradedPolyRing, images: Sequence[Monomial], h: Monomial, ideal: Sequence[Monomial] | None = None
) -> bool:
    # variables mapping to 1 can be added freely; they only enlarge the support
    units = [i for i, m in enumerate(images) if m.is_one()]
    for a in preimages(images, h):
        exponents = list(a.exponents)
        for i in units:
            exponents[i] = max(exponents[i], 1)
        g = Monomial(tuple(exponents))
        if is_relevant(ring, g) and (ideal is None or in_ideal(g, ideal)):
            return True
    return False


# ================================
# Image ring
# ================================
def image_ring(phi: RingMorphism) -> tuple[GradedPolyRing, tuple[Monomial, ...]]:
    """phi(R) as a polynomial ring in the distinct image monomials, graded effectively by im(alpha)."""
    variables = tuple(dict.fromkeys(m for m in phi.variable_images if not m.is_one()))
    degrees = [degree_of(phi.target, m) for m in variables]
    ring, _ = regrade_effectively(phi.target.group, degrees, [phi.target.format(m) for m in variables])
    return ring, variables


def _relevant_in_target_grading(phi: RingMorphism, g: Monomial) -> bool:
    """Whether phi(g) is relevant inside phi(R) with the grading by D_S."""
    rows = [degree_of(phi.target, phi.variable_images[i]).free for i in g.support]
    return matrix_rank(rows, phi.target.rank) == phi.target.rank


def _relevant_onto_image(phi: RingMorphism) -> bool:
    ring, variables = image_ring(phi)
    position = {m: k for k, m in enumerate(variables)}
    images = [
        Monomial.one(ring.n) if m.is_one() else Monomial.from_support(ring.n, [position[m]])
        for m in phi.variable_images
    ]
    return all(_has_relevant_preimage(phi.source, images, h) for h in generators_irrelevant(ring))


# ================================
# Classification
# ================================
@dataclass(frozen=True)
class Classification:
    relevant_locus: tuple[Monomial, ...]
    generic_locus: tuple[Monomial, ...]
    rational_locus: tuple[Monomial, ...]
    b_relevant_locus: tuple[Monomial, ...]
    alpha_surjective: bool
    is_relevant: bool
    is_rationally_relevant: bool
    is_rational: bool
    is_conical_morphism: bool
    is_rationally_relevant_conical: bool
    relevant_onto_image: bool
    # (g, phi(g)) with phi(g) relevant but g not relevant
    preimage_violations: tuple[tuple[Monomial, Monomial], ...]

    def verdict(self) -> str:
        if self.is_relevant:
            return "relevant"
        if self.is_rationally_relevant:
            return "rationally relevant, not relevant"
        if self.is_rational:
            return "rational, neither relevant nor rationally relevant"
        return "not rational"


def rational_targets(phi: RingMorphism, conical_s: ConicalRing, g: Monomial) -> list[Monomial]:
    """Every f = lcm(phi(g), b), b in Gen_B(S), with S_(f) = S_(phi(g))."""
    target = conical_s.ring
    image = phi.apply(g)
    found = {
        image.lcm(b)
        for b in relevant_in_B(conical_s)
        if localization_equal(target, image.lcm(b), image)
    }
    return sorted(found, key=lambda m: (m.total_degree, m.support, m.exponents))


def classify(
    phi: RingMorphism, conical_r: ConicalRing | None = None, conical_s: ConicalRing | None = None
) -> Classification:
    check_morphism(phi)
    source, target = phi.source, phi.target
    conical_r = conical_r or full_conical(source)
    conical_s = conical_s or full_conical(target)
    gen_r, gen_s = generators_irrelevant(source), generators_irrelevant(target)
    gens_b_r, gens_b_s = relevant_in_B(conical_r), relevant_in_B(conical_s)

    images = {g: phi.apply(g) for g in set(gen_r) | set(gens_b_r)}
    relevant_locus = tuple(sorted({images[g] for g in gen_r if is_relevant(target, images[g])}))
    generic_locus = tuple(sorted({images[g] for g in gen_r if images[g] in gen_s}))
    rational_locus = tuple(g for g in gens_b_r if _relevant_in_target_grading(phi, g))
    b_relevant_locus = tuple(
        f for f in gens_b_s if _has_relevant_preimage(source, phi.variable_images, f, conical_r.b_generators)
    )

    variables_hit = all(
        Monomial.from_support(target.n, [j]) in phi.variable_images for j in range(target.n)
    )
    relevant = variables_hit and all(_has_relevant_preimage(source, phi.variable_images, h) for h in gen_s)

    violations = tuple(
        (g, h)
        for h in gen_s
        for g in preimages(phi.variable_images, h)
        if not is_relevant(source, g)
    )
    if violations:
        logger.warning(
            "relevant images with irrelevant preimages: "
            + ", ".join(f"{source.format(g)} -> {target.format(h)}" for g, h in violations)
        )

    result = Classification(
        relevant_locus=relevant_locus,
        generic_locus=generic_locus,
        rational_locus=rational_locus,
        b_relevant_locus=b_relevant_locus,
        alpha_surjective=alpha_surjective(phi.alpha),
        is_relevant=relevant,
        is_rationally_relevant=all(_relevant_in_target_grading(phi, g) for g in gen_r),
        is_rational=all(rational_targets(phi, conical_s, g) for g in gens_b_r),
        is_conical_morphism=len(b_relevant_locus) == len(gens_b_s),
        is_rationally_relevant_conical=len(rational_locus) == len(gens_b_r),
        relevant_onto_image=_relevant_onto_image(phi),
        preimage_violations=violations,
    )
    logger.debug(f"classification: {result.verdict()}")
    return result


def localization_equal(ring: GradedPolyRing, f: Monomial, g: Monomial) -> bool:
    """S_(f) = S_(g), decided on the chart cones of the two supports."""
    return cone_equal(chart_cone(ring, f.support), chart_cone(ring, g.support))


# ================================
# Rational maps of conical rings
# ================================
@dataclass(frozen=True)
class RationalConeMap:
    source: ConicalRing
    target: ConicalRing
    morphism: RingMorphism
    # (g, f_g) for the relevant generators g of B_R
    choices: tuple[tuple[Monomial, Monomial], ...]

    def __post_init__(self):
        if self.morphism.source != self.source.ring or self.morphism.target != self.target.ring:
            raise DimensionMismatch("morphism does not connect the rings of the conical rings")

    def choice(self, g: Monomial) -> Monomial | None:
        return next((f for h, f in self.choices if h == g), None)

    def generator_images(self) -> list[tuple[Monomial, Monomial, Monomial | None]]:
        return [(g, self.morphism.apply(g), self.choice(g)) for g in relevant_in_B(self.source)]


def rational_map_violations(rmap: RationalConeMap) -> list[str]:
    phi = rmap.morphism
    source, target = rmap.source.ring, rmap.target.ring
    try:
        check_morphism(phi)
    except ValidationFailure as exc:
        return [str(exc)]
    exponents = phi.exponent_matrix()
    violations = []
    for g, image, f in rmap.generator_images():
        name = source.format(g)
        if f is None:
            violations.append(f"{name}: no f_g chosen")
            continue
        if not image.divides(f):
            violations.append(f"{name}: phi(g) = {target.format(image)} does not divide {target.format(f)}")
        elif not in_ideal(f, rmap.target.b_generators):
            violations.append(f"{name}: {target.format(f)} is not in B_S")
        elif not is_relevant(target, f):
            violations.append(f"{name}: {target.format(f)} is not relevant")
        elif not localization_equal(target, f, image):
            violations.append(f"{name}: S_(f) differs from S_(phi(g)) for f = {target.format(f)}")
        elif not is_subcone(image_cone(exponents, chart_cone(source, g.support)), chart_cone(target, f.support)):
            violations.append(f"{name}: the local map does not land in S_({target.format(f)})")
    if violations:
        return violations
    chosen = [(g, f) for g, _, f in rmap.generator_images()]
    for (g1, f1), (g2, f2) in combinations(chosen, 2):
        local = image_cone(exponents, chart_cone(source, set(g1.support) | set(g2.support)))
        if not is_subcone(local, chart_cone(target, set(f1.support) | set(f2.support))):
            violations.append(f"{source.format(g1)}, {source.format(g2)}: local maps disagree on the overlap")
    return violations


def validate_rational_map(rmap: RationalConeMap) -> bool:
    violations = rational_map_violations(rmap)
    for violation in violations:
        logger.info(f"rational map violation: {violation}")
    return not violations


def compose(first: RationalConeMap, second: RationalConeMap) -> RationalConeMap:
    """Composite R --> S --> T; f_g for the composite is taken over the choices of both maps."""
    if first.target != second.source:
        raise CompositionError("the first map does not end where the second map starts")
    phi = first.morphism.then(second.morphism)
    middle, target = first.target, second.target
    choices = []
    for g, _, f in first.generator_images():
        if f is None:
            raise CompositionError(f"first map has no choice for {first.source.ring.format(g)}")
        image = phi.apply(g)
        pushed = second.morphism.apply(f)
        candidates = [
            pushed.lcm(second.choice(b))
            for b in relevant_in_B(middle)
            if b.divides(f) and second.choice(b) is not None
        ] + [pushed]
        h = next(
            (
                c
                for c in candidates
                if image.divides(c)
                and in_ideal(c, target.b_generators)
                and is_relevant(target.ring, c)
                and localization_equal(target.ring, c, image)
            ),
            None,
        )
        if h is None:
            raise CompositionError(f"no admissible f_g for {first.source.ring.format(g)} in the composite")
        choices.append((g, h))
    return RationalConeMap(first.source, target, phi, tuple(choices))


def validate_birational(rmap: RationalConeMap, b_prime: Sequence[Monomial]) -> bool:
    """Birationality witnessed by a supplied B'_S."""
    target = rmap.target
    if not all(in_ideal(b, target.b_generators) for b in b_prime):
        logger.info("B'_S is not contained in B_S")
        return False
    charts = relevant_in_B(validate_conical(target.ring, b_prime))
    chosen = [(g, f) for g, _, f in rmap.generator_images()]
    if any(f is None for _, f in chosen):
        return False
    exponents = rmap.morphism.exponent_matrix()
    matched: set[int] = set()
    for g, f in chosen:
        hits = [k for k, b in enumerate(charts) if localization_equal(target.ring, b, f)]
        if len(hits) != 1 or hits[0] in matched:
            logger.info(f"{rmap.source.ring.format(g)} does not match a unique chart of B'_S")
            return False
        matched.add(hits[0])
        local = image_cone(exponents, chart_cone(rmap.source.ring, g.support))
        if not cone_equal(local, chart_cone(target.ring, f.support)):
            logger.info(f"local map at {rmap.source.ring.format(g)} is not an isomorphism")
            return False
    return len(matched) == len(charts)


def subring_localizes(conical: ConicalRing, generators: Sequence[Monomial]) -> bool:
    """The subring generated by the monomials has exactly the charts of B.

    Every chart of Gen_B(S) is the image of a chart of the regraded subring, and every
    chart of the subring contains a chart of Gen_B(S).
    """
    ring = conical.ring
    degrees = [degree_of(ring, g) for g in generators]
    subring, _ = regrade_effectively(ring.group, degrees)
    exponents = IntegerMatrix.from_columns([g.exponents for g in generators], ring.n)
    images = [image_cone(exponents, chart_cone(subring, h.support)) for h in generators_irrelevant(subring)]
    targets = [chart_cone(ring, b.support) for b in relevant_in_B(conical)]
    covered = all(any(cone_equal(image, t) for image in images) for t in targets)
    contained = all(any(is_subcone(t, image) for t in targets) for image in images)
    logger.debug(f"subring charts: covered={covered}, contained={contained}")
    return covered and contained


# ================================
# Maps of systems of fans
# ================================
@dataclass(frozen=True)
class FanMap:
    lattice_map: IntegerMatrix
    # (source label, target label)
    class_map: tuple[tuple[str, str], ...] = ()

    def target_label(self, label: str) -> str | None:
        return dict(self.class_map).get(label)


def induced_fan_map(
    phi: RingMorphism,
    class_map: Sequence[tuple[str, str]] = (),
    basis_r: Sublattice | None = None,
    basis_s: Sublattice | None = None,
) -> FanMap:
    """F: N_S -> N_R, the transpose of E restricted to M_R -> M_S in the given bases."""
    basis_r = resolve_basis(phi.source, basis_r)
    basis_s = resolve_basis(phi.target, basis_s)
    exponents = phi.exponent_matrix()
    in_s = basis_s.basis.transpose()
    columns = []
    for m in basis_r.vectors:
        coordinates = image_membership(in_s, exponents.apply(m))
        if coordinates is None:
            raise KernelNotPreserved(f"E maps {list(m)} outside the grading kernel of the target")
        columns.append(coordinates)
    restricted = IntegerMatrix.from_columns(columns, basis_s.rank)
    return FanMap(restricted.transpose(), tuple(class_map))


def fan_map_violations(fm: FanMap, s_source: SystemOfFans, s_target: SystemOfFans) -> list[str]:
    F = fm.lattice_map
    if F.cols != s_source.ambient_rank or F.rows != s_target.ambient_rank:
        raise DimensionMismatch(
            f"lattice map {F.rows}x{F.cols} between ranks {s_source.ambient_rank} and {s_target.ambient_rank}"
        )
    violations = []
    images: dict[int, int] = {}
    for i, labelled in enumerate(s_source.maximal_cones):
        label = fm.target_label(labelled.label)
        if label is None or label not in s_target.labels:
            violations.append(f"{labelled.label}: no target cone")
            continue
        j = s_target.index_of(label)
        image = image_cone(F, labelled.cone)
        if not is_subcone(image, s_target.cone(j)):
            violations.append(f"{labelled.label} -> {label}: image {image} is not inside {s_target.cone(j)}")
            continue
        face = smallest_face_containing(s_target.cone(j), image)
        if not in_relative_interior(face, F.apply(labelled.cone.interior_point())):
            violations.append(f"{labelled.label} -> {label}: interior does not map into the interior of {face}")
            continue
        images[i] = j
    if violations:
        return violations

    source_classes, target_classes = gluing_classes(s_source), gluing_classes(s_target)
    class_image: dict[int, int] = {}
    for i, j in images.items():
        for tau in faces(s_source.cone(i)):
            face = smallest_face_containing(s_target.cone(j), image_cone(F, tau))
            mapped = target_classes.class_of(face, j)
            source_class = source_classes.class_of(tau, i)
            if class_image.setdefault(source_class, mapped) != mapped:
                violations.append(f"gluing class of {tau} in {s_source.labels[i]} maps to two classes")
    for a, b in source_classes.order:
        if not target_classes.precedes(class_image[a], class_image[b]):
            violations.append(f"classes {a} below {b} map to unrelated classes")
    return violations


def validate_fan_map(fm: FanMap, s_source: SystemOfFans, s_target: SystemOfFans) -> bool:
    violations = fan_map_violations(fm, s_source, s_target)
    for violation in violations:
        logger.info(f"fan map violation: {violation}")
    return not violations


def fan_map_for_rational_map(
    rmap: RationalConeMap, basis_r: Sublattice | None = None, basis_s: Sublattice | None = None
) -> tuple[FanMap, SystemOfFans, SystemOfFans]:
    """(F, f) of a rational map: the chart of f_g maps to the cone of g."""
    chosen = []
    for g, _, f in rmap.generator_images():
        if f is None:
            raise InvalidHomomorphism(f"no f_g chosen for {rmap.source.ring.format(g)}")
        chosen.append(f)
    source = chart_system(rmap.target.ring, basis_s, chosen)
    target = build_system(rmap.source, basis_r)
    class_map = tuple(
        (source.maximal_cones[k].label, target.maximal_cones[k].label) for k in range(len(chosen))
    )
    return induced_fan_map(rmap.morphism, class_map, basis_r, basis_s), source, target
