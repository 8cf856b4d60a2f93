"""Homogeneity criteria, pointer counting, and the outcome distribution."""

import random
from fractions import Fraction

import numpy as np
import pytest

from analogical import (
    AnalogicalSet,
    Dataset,
    NoAnalogicalSupportError,
    OutcomeDistribution,
    analogical_set,
    bits_to_str,
    contained_exemplars,
    difference_vector,
    is_homogeneous_determinism,
    is_homogeneous_disagreement,
    is_homogeneous_plurality,
    is_homogeneous_pointer,
    iter_masks,
    most_likely_outcome,
    pointer_heterogeneity_matrix,
    predict_distribution,
    sample_outcome,
    two_step_distribution,
)
from helpers import (
    EXPECTED_COUNTS,
    EXPECTED_HOMOGENEOUS,
    EXPECTED_MEMBERS,
    EXPECTED_P2,
    EXPECTED_TOTAL,
    pair_block,
    random_instance,
)

ALL_CRITERIA = (
    is_homogeneous_pointer,
    is_homogeneous_plurality,
    is_homogeneous_determinism,
    is_homogeneous_disagreement,
)


def brute_force_disagreement_verdict(ds, given, mask) -> bool:
    """Independent oracle: enumerate ordered member pairs with plain loops."""
    members = [
        e for e in ds.exemplars
        if all(not (mb and db) for mb, db in zip(mask, difference_vector(e.context, given)))
    ]
    d_supra = 0
    d_sub = 0
    for a in members:
        for b in members:
            if a.outcome != b.outcome:
                d_supra += 1
                if difference_vector(a.context, given) == difference_vector(b.context, given):
                    d_sub += 1
    return d_supra == d_sub


# --- worked dataset ----------------------------------------------------------

def test_heterogeneity_matrix(worked):
    ds, given = worked
    np.testing.assert_array_equal(pointer_heterogeneity_matrix(ds, given), EXPECTED_P2)


def test_worked_verdicts_all_criteria(worked):
    ds, given = worked
    for mask in iter_masks(ds.n):
        expected = EXPECTED_HOMOGENEOUS[bits_to_str(mask)]
        for crit in ALL_CRITERIA:
            assert crit(ds, given, mask) == expected, (bits_to_str(mask), crit.__name__)


def test_worked_members_and_counts(worked):
    ds, given = worked
    aset = analogical_set(ds, given)
    for v in aset.verdicts:
        key = bits_to_str(v.mask)
        assert v.members == EXPECTED_MEMBERS[key]
        assert v.homogeneous == EXPECTED_HOMOGENEOUS[key]
    assert aset.outcome_counts == EXPECTED_COUNTS
    assert aset.total_pointers == EXPECTED_TOTAL


def test_worked_distribution_exact(worked):
    ds, given = worked
    dist = predict_distribution(analogical_set(ds, given))
    assert dist.probabilities == {"y": Fraction(4, 13), "x": Fraction(9, 13)}
    assert most_likely_outcome(dist) == "x"


def test_mask_110_disagreement_counts(worked):
    # both members share subcontext 001, so the two cross-outcome ordered
    # pairs disagree in the supracontext and in the subcontext alike
    ds, given = worked
    members = contained_exemplars(ds, given, (1, 1, 0))
    assert members == (1, 5)
    assert brute_force_disagreement_verdict(ds, given, (1, 1, 0))
    assert is_homogeneous_disagreement(ds, given, (1, 1, 0))


def test_pointer_matrix_of_verdicts(worked):
    ds, given = worked
    aset = analogical_set(ds, given)
    by_mask = {bits_to_str(v.mask): v for v in aset.verdicts}
    np.testing.assert_array_equal(by_mask["110"].pointers, pair_block(6, (1, 5)))
    np.testing.assert_array_equal(by_mask["010"].pointers, pair_block(6, ()))
    assert by_mask["110"].pointer_count == 4
    assert by_mask["011"].pointer_count == 1
    assert by_mask["010"].pointer_count == 0


# --- small structural cases ---------------------------------------------------

def test_single_exemplar_all_masks_homogeneous():
    ds = Dataset.from_pairs([(("a", "b"), "x")])
    given = ("a", "c")
    for mask in iter_masks(ds.n):
        for crit in ALL_CRITERIA:
            assert crit(ds, given, mask)
    dist = predict_distribution(analogical_set(ds, given))
    assert dist.probabilities == {"x": Fraction(1)}


def test_empty_supracontext_homogeneous():
    ds = Dataset.from_pairs([(("a",), "x"), (("b",), "y")])
    # mask 1 with given "c" contains nobody
    for crit in ALL_CRITERIA:
        assert crit(ds, ("c",), (1,))


def test_same_subcontext_two_outcomes_is_homogeneous():
    # one subcontext, several outcomes: deterministic by subcontext count
    ds = Dataset.from_pairs([(("a",), "x"), (("a",), "y")])
    for mask in iter_masks(1):
        for crit in ALL_CRITERIA:
            assert crit(ds, ("a",), mask)


def test_two_subcontexts_two_outcomes_is_heterogeneous():
    ds = Dataset.from_pairs([(("a",), "x"), (("b",), "y")])
    for crit in ALL_CRITERIA:
        assert not crit(ds, ("a",), (0,))


def test_heterogeneity_injection():
    # flipping one exemplar's outcome to a fresh label makes the all-inclusive
    # mask heterogeneous whenever several subcontexts exist
    rng = random.Random(1234)
    flipped = 0
    for _ in range(200):
        ds, given = random_instance(rng)
        zero_mask = (0,) * ds.n
        d_vectors = {difference_vector(e.context, given) for e in ds.exemplars}
        if len(d_vectors) < 2:
            continue
        uniform = Dataset.from_pairs([(e.context, "same") for e in ds.exemplars])
        for crit in ALL_CRITERIA:
            assert crit(uniform, given, zero_mask)
        pairs = [(e.context, "same") for e in ds.exemplars]
        victim = next(
            i for i, e in enumerate(ds.exemplars)
            if difference_vector(e.context, given) != difference_vector(ds.exemplars[0].context, given)
        )
        pairs[victim] = (pairs[victim][0], "flipped")
        broken = Dataset.from_pairs(pairs)
        for crit in ALL_CRITERIA:
            assert not crit(broken, given, zero_mask)
        flipped += 1
    assert flipped > 50


# --- random agreement properties ----------------------------------------------

def test_four_criteria_agree_and_match_oracle():
    rng = random.Random(99)
    for _ in range(300):
        ds, given = random_instance(rng)
        for mask in iter_masks(ds.n):
            verdicts = {crit(ds, given, mask) for crit in ALL_CRITERIA}
            assert len(verdicts) == 1
            assert verdicts.pop() == brute_force_disagreement_verdict(ds, given, mask)


def test_support_always_exists():
    # the most specific nonempty supracontext around any single exemplar is
    # homogeneous, so total pointers are never zero
    rng = random.Random(7)
    for _ in range(300):
        ds, given = random_instance(rng)
        aset = analogical_set(ds, given)
        assert aset.total_pointers >= 1
        assert sum(aset.outcome_counts.values()) == aset.total_pointers


def test_one_step_equals_two_step():
    rng = random.Random(41)
    for _ in range(300):
        ds, given = random_instance(rng)
        aset = analogical_set(ds, given)
        assert predict_distribution(aset).probabilities == two_step_distribution(aset).probabilities


# --- distribution mechanics -----------------------------------------------------

def test_distribution_validation():
    with pytest.raises(ValueError):
        OutcomeDistribution({})
    with pytest.raises(ValueError):
        OutcomeDistribution({"x": Fraction(1, 2)})
    with pytest.raises(ValueError):
        OutcomeDistribution({"x": Fraction(3, 2), "y": Fraction(-1, 2)})


def test_no_support_raises():
    empty = AnalogicalSet(verdicts=(), outcome_counts={"x": 0}, total_pointers=0)
    with pytest.raises(NoAnalogicalSupportError):
        predict_distribution(empty)
    with pytest.raises(NoAnalogicalSupportError):
        two_step_distribution(empty)


def test_most_likely_tie_break_lexicographic():
    dist = OutcomeDistribution({"b": Fraction(1, 2), "a": Fraction(1, 2)})
    assert most_likely_outcome(dist) == "a"


def test_sampling_deterministic_and_supported(worked):
    ds, given = worked
    dist = predict_distribution(analogical_set(ds, given))
    first = sample_outcome(dist, 424242)
    assert first in {"x", "y"}
    assert all(sample_outcome(dist, 424242) == first for _ in range(5))
    point = OutcomeDistribution({"only": Fraction(1)})
    assert sample_outcome(point, 0) == "only"


def test_sampling_exact_small_distribution():
    # denominator 3: over seeds the draw follows the cumulative thirds
    dist = OutcomeDistribution({"a": Fraction(1, 3), "b": Fraction(2, 3)})
    draws = [sample_outcome(dist, seed) for seed in range(3000)]
    counts = {o: draws.count(o) for o in ("a", "b")}
    assert counts["a"] + counts["b"] == 3000
    assert 800 < counts["a"] < 1200
