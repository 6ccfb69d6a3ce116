"""
quotient.py

Quotients of the charts of a system of fans by a saturated sublattice L of N_S.

For every chart cone sigma_f: the largest face whose relative interior meets L_R, the
saturated lattice L' spanned by L and that face, the projection P: N -> N/L' and the
projected cone P(sigma_f). The invariant semigroups M_J cap L^perp are enumerated in a
coordinate box as an independent check of the projected cones.
"""

from __future__ import annotations

from dataclasses import dataclass

import pandas as pd
from loguru import logger

from constants import DEFAULT_BOX
from errors import BoxTooSmall, DimensionMismatch, NotAGenerator, NotStrictlyConvex
from prevariety.cones import (
    Cone,
    HalfspaceRep,
    cone_equal,
    contains,
    cone_dim,
    dual_cone,
    face_lattice,
    from_halfspaces,
    halfspaces,
    image_cone,
    is_pointed,
    relint_meets_subspace,
)
from prevariety.fans import build_system, rays_from_basis, resolve_basis
from prevariety.grading import ConicalRing, Monomial, generators_irrelevant
from prevariety.lattice import IntegerMatrix, Sublattice, Vector, cokernel_presentation, dot, saturate


@dataclass(frozen=True)
class AffineSemigroup:
    ambient: Sublattice
    # generators as vectors of Z^n, and as coordinates in the basis of the ambient lattice
    hilbert_generators: tuple[Vector, ...]
    coordinates: tuple[Vector, ...]


@dataclass(frozen=True)
class QuotientPiece:
    label: str
    selected_face: Cone
    lattice: Sublattice
    projection: IntegerMatrix
    image_cone: Cone
    # None for systems not built from a ring
    monomial: Monomial | None = None

    @property
    def quotient_rank(self) -> int:
        return self.projection.rows


@dataclass(frozen=True)
class QuotientAssembly:
    pieces: tuple[QuotientPiece, ...]
    # labels of the pieces sharing each quotient lattice L'
    groups: tuple[tuple[Sublattice, tuple[str, ...]], ...]

    @property
    def single_lattice(self) -> bool:
        return len(self.groups) <= 1


def select_face(sigma: Cone, lattice: Sublattice) -> Cone:
    """The largest face of sigma whose relative interior meets span(L).

    The qualifying faces are closed under joins: relative interior points p, q of two of
    them in span(L) give p + q in span(L) and in the relative interior of their join. The
    zero face always qualifies, so the face of top dimension contains all the others.
    """
    qualifying = [tau for tau in face_lattice(sigma) if relint_meets_subspace(tau, lattice)]
    return max(qualifying, key=cone_dim)


def quotient_lattice(n_rank: int, lattice: Sublattice, face: Cone) -> tuple[Sublattice, IntegerMatrix]:
    """L' = saturation of L + span(face), and P: N -> N/L' with a free target."""
    if lattice.ambient_rank != n_rank or face.ambient_rank != n_rank:
        raise DimensionMismatch(f"sublattice and face must live in rank {n_rank}")
    spanned = Sublattice.from_vectors(list(lattice.vectors) + list(face.generators), n_rank)
    lprime = saturate(spanned)
    projection = cokernel_presentation(lprime.basis.transpose()).projection_matrix
    return lprime, projection


def quotient_system(
    conical: ConicalRing, basis: Sublattice | None, lattice: Sublattice
) -> list[QuotientPiece]:
    system = build_system(conical, basis)
    if lattice.ambient_rank != system.ambient_rank:
        raise DimensionMismatch(f"sublattice of rank {lattice.ambient_rank} in N of rank {system.ambient_rank}")
    if not lattice.is_saturated():
        logger.warning(f"sublattice {lattice.basis} is not saturated; using its saturation")
        lattice = saturate(lattice)
    pieces = []
    for labelled in system.maximal_cones:
        face = select_face(labelled.cone, lattice)
        lprime, projection = quotient_lattice(system.ambient_rank, lattice, face)
        projected = image_cone(projection, labelled.cone)
        if not is_pointed(projected):
            raise NotStrictlyConvex(f"projection of {labelled.label} is {projected}")
        pieces.append(QuotientPiece(labelled.label, face, lprime, projection, projected, labelled.monomial))
        logger.debug(f"{labelled.label}: face {face}, quotient rank {projection.rows}, cone {projected}")
    return pieces


def assemble_quotient(pieces: list[QuotientPiece]) -> QuotientAssembly:
    groups: dict[tuple[Vector, ...], list[QuotientPiece]] = {}
    for piece in pieces:
        groups.setdefault(piece.lattice.vectors, []).append(piece)
    assembly = QuotientAssembly(
        tuple(pieces),
        tuple((members[0].lattice, tuple(p.label for p in members)) for members in groups.values()),
    )
    if not assembly.single_lattice:
        logger.warning(f"charts project along {len(assembly.groups)} different quotient lattices")
    return assembly


# ================================
# Invariant semigroups
# ================================
def _invariant_cone(basis: Sublattice, f: Monomial, lattice: Sublattice) -> Cone:
    """{c in Q^k : c . rho_i >= 0 for i outside supp(f), c . l = 0 for l in L}."""
    rays = rays_from_basis(basis)
    inequalities = tuple(ray for i, ray in enumerate(rays) if i not in f.support)
    return from_halfspaces(HalfspaceRep(basis.rank, inequalities, tuple(lattice.vectors)))


def invariant_semigroup(
    conical: ConicalRing,
    f: Monomial,
    lattice: Sublattice,
    box: int = DEFAULT_BOX,
    basis: Sublattice | None = None,
) -> AffineSemigroup:
    """Hilbert basis of M_J(f) cap L^perp, enumerated inside the box [-box, box]^k."""
    ring = conical.ring
    if f not in generators_irrelevant(ring):
        raise NotAGenerator(f"{ring.format(f)} is not an element of Gen(S)")
    basis = resolve_basis(ring, basis)
    cone = _invariant_cone(basis, f, lattice)
    # Hilbert basis elements lie in the zonotope spanned by the extreme rays
    bound = sum(max((abs(x) for x in g), default=0) for g in cone.generators)
    if bound > box:
        raise BoxTooSmall(f"Hilbert basis of the chart {ring.format(f)} may need coordinates up to {bound} > {box}")

    functional = tuple(sum(column) for column in zip(*halfspaces(cone).inequalities)) or (0,) * basis.rank
    candidates = [c for c in _box_points(basis.rank, bound) if any(c) and contains(cone, c)]
    candidates.sort(key=lambda c: (dot(functional, c), c))
    kept: list[Vector] = []
    for c in candidates:
        if not any(contains(cone, tuple(a - b for a, b in zip(c, h))) for h in kept):
            kept.append(c)
    generators = tuple(basis.basis.transpose().apply(c) for c in kept)
    logger.debug(f"invariant semigroup of {ring.format(f)}: {len(kept)} generators from {len(candidates)} points")
    return AffineSemigroup(basis, generators, tuple(kept))


def _box_points(rank: int, bound: int):
    if rank == 0:
        yield ()
        return
    for head in range(-bound, bound + 1):
        for tail in _box_points(rank - 1, bound):
            yield (head,) + tail


def quotient_oracle(
    conical: ConicalRing,
    pieces: list[QuotientPiece],
    lattice: Sublattice,
    box: int = DEFAULT_BOX,
    basis: Sublattice | None = None,
) -> pd.DataFrame:
    """Per piece of quotient_system(conical, basis, lattice): does the pulled-back dual of the
    projected cone match the invariant semigroup?"""
    ring = conical.ring
    rows = []
    for piece in pieces:
        pulled_back = image_cone(piece.projection.transpose(), dual_cone(piece.image_cone))
        if piece.monomial not in generators_irrelevant(ring):
            rows.append({"label": piece.label, "quotient_rank": piece.quotient_rank, "generators": "", "agrees": None})
            continue
        semigroup = invariant_semigroup(conical, piece.monomial, lattice, box, basis)
        semigroup_cone = Cone.of(semigroup.coordinates, piece.projection.cols)
        rows.append(
            {
                "label": piece.label,
                "quotient_rank": piece.quotient_rank,
                "generators": " ".join(str(list(g)) for g in semigroup.hilbert_generators),
                "agrees": cone_equal(pulled_back, semigroup_cone),
            }
        )
    return pd.DataFrame(rows, columns=["label", "quotient_rank", "generators", "agrees"])
