"""Homogeneity criteria, analogical sets, and pointer-counting prediction.

Every supracontext induces directional pointers between its member
exemplars: the ordered pair (j, j') is one pointer and predicts the outcome
of its target j'.  A pointer is heterogeneous when its endpoints lie in
different subcontexts *and* carry different outcomes; a supracontext with
no heterogeneous pointer is homogeneous and contributes all k^2 of its
pointers (self-pointers included) to the prediction.

Four criteria decide homogeneity and are implemented independently so they
can be cross-checked: the pointer scan itself, the subcontext/outcome
plurality rule, the determinism rule, and disagreement-count comparison.
They agree on every supracontext.

Probabilities are exact rationals: the prediction for the bundled
six-exemplar dataset is exactly {y: 4/13, x: 9/13}, never a float
approximation of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_N_CAP,
    Bits,
    Dataset,
    bits_to_int,
    check_lattice_size,
    contained_exemplars,
    difference_vector,
    iter_masks,
    subcontext_key,
)


class NoAnalogicalSupportError(Exception):
    """Every supracontext is empty or heterogeneous; nothing to predict from."""


@dataclass(frozen=True)
class SupracontextVerdict:
    """Homogeneity verdict for one supracontext mask.

    ``members`` holds 1-based exemplar indices; ``member_outcomes`` is
    aligned with it.  ``m`` is the dataset size and fixes the pointer
    matrix shape.
    """

    mask: Bits
    members: tuple[int, ...]
    member_outcomes: tuple[str, ...]
    homogeneous: bool
    m: int

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def pointer_count(self) -> int:
        return self.k * self.k if self.homogeneous else 0

    @property
    def pointers(self) -> np.ndarray:
        """m x m pointer matrix: all member pairs when homogeneous, else zeros."""
        out = np.zeros((self.m, self.m), dtype=np.uint8)
        if self.homogeneous and self.members:
            idx = np.asarray(self.members) - 1
            out[np.ix_(idx, idx)] = 1
        return out


@dataclass(frozen=True)
class AnalogicalSet:
    """All surviving pointers, grouped per supracontext and per outcome.

    ``outcome_counts`` maps each outcome label (dataset first-appearance
    order) to the number of surviving pointers targeting it;
    ``total_pointers`` is their sum, equal to the sum of k^2 over the
    homogeneous supracontexts.
    """

    verdicts: tuple[SupracontextVerdict, ...]
    outcome_counts: dict[str, int]
    total_pointers: int


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact rational outcome probabilities summing to 1."""

    probabilities: dict[str, Fraction]

    def __post_init__(self) -> None:
        probs = self.probabilities
        if not probs:
            raise ValueError("empty distribution")
        for label, p in probs.items():
            if not 0 <= p <= 1:
                raise ValueError(f"probability for {label!r} out of range: {p}")
        if sum(probs.values()) != 1:
            raise ValueError(f"probabilities sum to {sum(probs.values())}, not 1")


def _difference_ints(ds: Dataset, given: Sequence[str]) -> list[int]:
    return [bits_to_int(difference_vector(e.context, given)) for e in ds.exemplars]


def _members(d_ints: Sequence[int], mask_int: int) -> tuple[int, ...]:
    return tuple(j for j, d in enumerate(d_ints, 1) if d & mask_int == 0)


def pointer_heterogeneity_matrix(ds: Dataset, given: Sequence[str]) -> np.ndarray:
    """m x m matrix with 1 where an ordered exemplar pair would be heterogeneous.

    Entry (j, j') is 1 iff exemplars j and j' have different difference
    vectors and different outcomes.  Symmetric with a zero diagonal; it
    does not depend on any supracontext mask.
    """
    dv = np.array([difference_vector(e.context, given) for e in ds.exemplars], dtype=np.uint8)
    sub_differs = (dv[:, None, :] != dv[None, :, :]).any(axis=2)
    outcomes = np.array([e.outcome for e in ds.exemplars], dtype=object)
    outcome_differs = outcomes[:, None] != outcomes[None, :]
    return (sub_differs & outcome_differs).astype(np.uint8)


def is_homogeneous_pointer(ds: Dataset, given: Sequence[str], mask: Sequence[int]) -> bool:
    """Homogeneous iff no member pair has a heterogeneous pointer.

    Scans the pointer heterogeneity matrix over the members; empty and
    singleton supracontexts are homogeneous.  This scan may stop at the
    first heterogeneous pointer (the gate engine may not).
    """
    members = contained_exemplars(ds, given, mask)
    p2 = pointer_heterogeneity_matrix(ds, given)
    return _pointer_scan(members, p2)


def _pointer_scan(members: Sequence[int], p2: np.ndarray) -> bool:
    for j, jp in combinations(members, 2):
        if p2[j - 1, jp - 1]:
            return False
    return True


def is_homogeneous_plurality(ds: Dataset, given: Sequence[str], mask: Sequence[int]) -> bool:
    """Heterogeneous iff members span several subcontexts AND several outcomes."""
    members = contained_exemplars(ds, given, mask)
    keys = {subcontext_key(difference_vector(ds.exemplars[j - 1].context, given)) for j in members}
    outcomes = {ds.exemplars[j - 1].outcome for j in members}
    return not (len(keys) >= 2 and len(outcomes) >= 2)


def is_homogeneous_determinism(ds: Dataset, given: Sequence[str], mask: Sequence[int]) -> bool:
    """Homogeneous iff one outcome throughout, or one subcontext throughout."""
    members = contained_exemplars(ds, given, mask)
    keys = {subcontext_key(difference_vector(ds.exemplars[j - 1].context, given)) for j in members}
    outcomes = {ds.exemplars[j - 1].outcome for j in members}
    return len(outcomes) <= 1 or len(keys) <= 1


def is_homogeneous_disagreement(ds: Dataset, given: Sequence[str], mask: Sequence[int]) -> bool:
    """Homogeneous iff the supracontext adds no disagreement over its subcontexts.

    Counts ordered member pairs with differing outcomes, once over the whole
    supracontext and once restricted to pairs sharing a subcontext; equal
    counts mean homogeneous.
    """
    members = contained_exemplars(ds, given, mask)
    info = [
        (
            subcontext_key(difference_vector(ds.exemplars[j - 1].context, given)),
            ds.exemplars[j - 1].outcome,
        )
        for j in members
    ]
    d_supra = sum(1 for (_, o1), (_, o2) in product(info, info) if o1 != o2)
    d_sub = sum(
        1 for (k1, o1), (k2, o2) in product(info, info) if k1 == k2 and o1 != o2
    )
    return d_supra == d_sub


def analogical_set(
    ds: Dataset, given: Sequence[str], *, n_cap: int = DEFAULT_N_CAP
) -> AnalogicalSet:
    """Evaluate every supracontext and collect the surviving pointers.

    One verdict per mask (most specific first); homogeneous supracontexts
    contribute k pointers to the outcome of each member, k^2 in total.
    """
    check_lattice_size(ds.n, n_cap)
    d_ints = _difference_ints(ds, given)
    p2 = pointer_heterogeneity_matrix(ds, given)
    outcomes = [e.outcome for e in ds.exemplars]

    counts: dict[str, int] = {o: 0 for o in ds.outcome_order}
    total = 0
    verdicts = []
    for mask in iter_masks(ds.n):
        members = _members(d_ints, bits_to_int(mask))
        homogeneous = _pointer_scan(members, p2)
        member_outcomes = tuple(outcomes[j - 1] for j in members)
        verdicts.append(
            SupracontextVerdict(
                mask=mask,
                members=members,
                member_outcomes=member_outcomes,
                homogeneous=homogeneous,
                m=ds.m,
            )
        )
        if homogeneous and members:
            k = len(members)
            total += k * k
            for o in member_outcomes:
                counts[o] += k
    return AnalogicalSet(verdicts=tuple(verdicts), outcome_counts=counts, total_pointers=total)


def predict_distribution(aset: AnalogicalSet) -> OutcomeDistribution:
    """One-step prediction: probability of each outcome among all pointers."""
    if aset.total_pointers == 0:
        raise NoAnalogicalSupportError(
            "no analogical support: every supracontext is empty or heterogeneous"
        )
    return OutcomeDistribution(
        {o: Fraction(c, aset.total_pointers) for o, c in aset.outcome_counts.items()}
    )


def two_step_distribution(aset: AnalogicalSet) -> OutcomeDistribution:
    """Two-step prediction: pick a supracontext by squared frequency, then a pointer.

    A homogeneous supracontext with k members is selected with probability
    k^2 / total, then each outcome within it with probability
    k * count(outcome) / k^2.  Equals :func:`predict_distribution` exactly.
    """
    if aset.total_pointers == 0:
        raise NoAnalogicalSupportError(
            "no analogical support: every supracontext is empty or heterogeneous"
        )
    probs = {o: Fraction(0) for o in aset.outcome_counts}
    for v in aset.verdicts:
        if not v.homogeneous or v.k == 0:
            continue
        select = Fraction(v.k * v.k, aset.total_pointers)
        for o in set(v.member_outcomes):
            within = Fraction(v.k * v.member_outcomes.count(o), v.k * v.k)
            probs[o] += select * within
    return OutcomeDistribution(probs)


def most_likely_outcome(dist: OutcomeDistribution) -> str:
    """Highest-probability outcome; ties go to the lexicographically smallest label."""
    return min(dist.probabilities, key=lambda o: (-dist.probabilities[o], o))


def sample_outcome(dist: OutcomeDistribution, seed: int) -> str:
    """Draw one outcome by cumulative-count inversion, deterministic per seed.

    The probabilities are brought to a common denominator, one of that many
    equally likely pointer slots is drawn from a Mersenne Twister generator
    seeded with ``seed``, and the slot is mapped back through the cumulative
    counts in the distribution's own label order.
    """
    probs = dist.probabilities
    denom = lcm(*(p.denominator for p in probs.values()))
    draw = random.Random(seed).randrange(denom)
    cumulative = 0
    for label, p in probs.items():
        cumulative += int(p * denom)
        if draw < cumulative:
            return label
    raise AssertionError("unreachable: probabilities sum to 1")
