"""End-to-end walkthrough on the bundled six-exemplar dataset.

The dataset pairs a three-feature context with an outcome label (y or x).
Given the unseen context (o, m, a), we ask: which outcome does the stored
experience support, and how strongly?
"""

from analogical import (
    analogical_set,
    bits_to_str,
    difference_vector,
    load_worked_example,
    most_likely_outcome,
    predict_distribution,
)


def main() -> None:
    ds, given = load_worked_example()
    print(f"{ds.m} exemplars over {ds.n} features; given context: {' '.join(given)}")
    print()

    print("Each exemplar gets a difference vector: bit i is 1 where it")
    print("disagrees with the given context.")
    for e in ds.exemplars:
        d = difference_vector(e.context, given)
        print(f"  {e.index}: {' '.join(e.context)} / {e.outcome}   d = {bits_to_str(d)}")
    print()

    print("Every subset of features that must match (a mask) defines a")
    print("supracontext. A supracontext survives only if it is homogeneous:")
    print("no two members differ in both subcontext and outcome.")
    aset = analogical_set(ds, given)
    for v in aset.verdicts:
        tag = "homogeneous" if v.homogeneous else "heterogeneous"
        members = ", ".join(str(j) for j in v.members) or "none"
        print(f"  mask {bits_to_str(v.mask)}: members {members:<16} {tag:<14}"
              f" pointers {v.pointer_count}")
    print()

    print("Each member of a surviving supracontext receives one pointer from")
    print("every member (itself included). Counting pointers by outcome:")
    for outcome, count in aset.outcome_counts.items():
        print(f"  {outcome}: {count}")
    print(f"  total: {aset.total_pointers}")
    print()

    dist = predict_distribution(aset)
    rendered = ", ".join(f"P({o}) = {p}" for o, p in dist.probabilities.items())
    print(f"Distribution: {rendered}")
    print(f"Most likely outcome: {most_likely_outcome(dist)}")


if __name__ == "__main__":
    main()
