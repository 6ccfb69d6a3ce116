"""Randomized checks over seeded instances; run with `pytest -m slow`."""

import random
from itertools import combinations

import pytest

from prevariety.cox import roundtrip_fan, roundtrip_ring
from prevariety.fans import build_system, pair_separation, validate_system
from prevariety.grading import full_conical, generators_irrelevant, is_relevant
from prevariety.maps import alpha_surjective, check_morphism, classify, localization_equal, rational_targets
from prevariety.sampling import (
    random_grading,
    random_monomial_endomorphism,
    random_simplicial_instance,
    random_variable_map,
)

pytestmark = pytest.mark.slow

CHUNKS = range(10)
VERDICTS = {
    "relevant",
    "rationally relevant, not relevant",
    "rational, neither relevant nor rationally relevant",
    "not rational",
}


def _rngs(chunk, per_chunk):
    for seed in range(chunk * per_chunk, (chunk + 1) * per_chunk):
        yield seed, random.Random(seed)


@pytest.mark.parametrize("chunk", CHUNKS)
def test_separation_sides_agree_in_general_position(chunk):
    for seed, rng in _rngs(chunk, 50):
        ring = random_grading(rng, max_variables=6, general_position=True)
        for f, g in combinations(generators_irrelevant(ring), 2):
            weight_side, sigma_side = pair_separation(ring, f, g)
            assert weight_side == sigma_side, (seed, ring.format(f), ring.format(g))


@pytest.mark.parametrize("chunk", CHUNKS)
def test_overlapping_weights_separate_sigma_cones(chunk):
    for seed, rng in _rngs(chunk, 20):
        ring = random_grading(rng, max_variables=6)
        for f, g in combinations(generators_irrelevant(ring), 2):
            weight_side, sigma_side = pair_separation(ring, f, g)
            assert sigma_side or not weight_side, (seed, ring.format(f), ring.format(g))


@pytest.mark.parametrize("chunk", CHUNKS)
def test_roundtrips_on_simplicial_instances(chunk):
    for seed, rng in _rngs(chunk, 20):
        conical = random_simplicial_instance(rng)
        report = roundtrip_ring(conical)
        assert report.ok, (seed, report.diagnosis)
        system = build_system(conical)
        assert validate_system(system), seed
        assert roundtrip_fan(system).ok, seed


@pytest.mark.parametrize("chunk", CHUNKS)
def test_relevant_images_exactly_when_alpha_is_rationally_onto(chunk):
    for seed, rng in _rngs(chunk, 30):
        source = random_grading(rng, max_variables=5)
        phi = random_variable_map(rng, source)
        images_relevant = all(is_relevant(phi.target, phi.apply(g)) for g in generators_irrelevant(source))
        assert images_relevant == alpha_surjective(phi.alpha, rational=True), seed
        assert classify(phi).is_rationally_relevant == images_relevant, seed


@pytest.mark.parametrize("chunk", CHUNKS)
def test_endomorphism_classification_is_consistent(chunk):
    for seed, rng in _rngs(chunk, 5):
        target = random_grading(rng, max_variables=5, max_rank=2)
        phi = random_monomial_endomorphism(rng, target)
        assert check_morphism(phi)
        result = classify(phi)
        assert result.verdict() in VERDICTS
        assert set(result.generic_locus) <= set(result.relevant_locus)
        assert all(not is_relevant(phi.source, g) for g, _ in result.preimage_violations)
        assert result.alpha_surjective

        conical_s = full_conical(target)
        for g in generators_irrelevant(phi.source):
            image = phi.apply(g)
            for f in rational_targets(phi, conical_s, g):
                assert image.divides(f), seed
                assert localization_equal(target, f, image), seed
