"""Four roads to the same verdict.

A supracontext is kept or discarded by a homogeneity test. The test can be
phrased four ways, and the phrasings provably agree:

  pointer      no member pair differs in both subcontext and outcome
  plurality    not (several subcontexts AND several outcomes)
  determinism  one outcome throughout, or one subcontext throughout
  disagreement the supracontext adds no outcome disagreements beyond
               those already inside its subcontexts

This script prints all four verdicts per mask on the bundled dataset and
then stress-tests the agreement on a batch of random datasets.
"""

import random

from analogical import (
    Dataset,
    bits_to_str,
    contained_exemplars,
    is_homogeneous_determinism,
    is_homogeneous_disagreement,
    is_homogeneous_plurality,
    is_homogeneous_pointer,
    iter_masks,
    load_worked_example,
)

CRITERIA = {
    "pointer": is_homogeneous_pointer,
    "plurality": is_homogeneous_plurality,
    "determinism": is_homogeneous_determinism,
    "disagreement": is_homogeneous_disagreement,
}


def random_case(rng: random.Random):
    m = rng.randint(1, 8)
    n = rng.randint(1, 4)
    labels = ("x", "y", "z")[: rng.randint(1, 3)]
    pairs = [
        (tuple(rng.choice("abc") for _ in range(n)), rng.choice(labels))
        for _ in range(m)
    ]
    return Dataset.from_pairs(pairs), tuple(rng.choice("abc") for _ in range(n))


def main() -> None:
    ds, given = load_worked_example()
    header = f"{'mask':<6}{'members':<16}" + "".join(f"{name:<14}" for name in CRITERIA)
    print(header)
    for mask in iter_masks(ds.n):
        members = ",".join(str(j) for j in contained_exemplars(ds, given, mask)) or "-"
        row = f"{bits_to_str(mask):<6}{members:<16}"
        for crit in CRITERIA.values():
            row += f"{'yes' if crit(ds, given, mask) else 'NO':<14}"
        print(row)
    print()

    rng = random.Random(2)
    checked = 0
    for _ in range(500):
        ds2, given2 = random_case(rng)
        for mask in iter_masks(ds2.n):
            verdicts = {crit(ds2, given2, mask) for crit in CRITERIA.values()}
            assert len(verdicts) == 1, "criteria disagreed"
            checked += 1
    print(f"checked {checked} random supracontexts: all four criteria agreed")


if __name__ == "__main__":
    main()
