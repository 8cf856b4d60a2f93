"""How sure is the prediction?

Three numbers summarize a discrete outcome distribution:

  H  entropy in bits (log-based surprise),
  Q  disagreement: the chance two independent draws differ,
  Z  agreement: the chance they match (Z = 1 - Q).

Q and Z are plain sums of squares, so with exact rational probabilities
they stay exact. For a continuous density there is no outcome list to
square, but the squared density still integrates to an agreement density
Z', estimated here by quadrature.
"""

import numpy as np

from analogical import (
    TabulatedDensity,
    agreement,
    agreement_density,
    analogical_set,
    disagreement,
    entropy,
    load_worked_example,
    predict_distribution,
)


def report(label: str, probs: dict) -> None:
    print(f"{label}: " + ", ".join(f"{o} {p}" for o, p in probs.items()))
    print(f"  H = {entropy(probs)} bits")
    print(f"  Q = {disagreement(probs)}")
    print(f"  Z = {agreement(probs)}")
    print()


def main() -> None:
    ds, given = load_worked_example()
    dist = predict_distribution(analogical_set(ds, given))
    report("bundled dataset prediction", dist.probabilities)

    from fractions import Fraction

    report("coin flip", {"heads": Fraction(1, 2), "tails": Fraction(1, 2)})
    report("certainty", {"only": Fraction(1)})

    grid = np.linspace(0.0, 1.0, 10001)
    triangular = TabulatedDensity(grid, 2.0 * grid)
    print("triangular density f(x) = 2x on [0, 1]:")
    print(f"  Z' = {agreement_density(triangular):.9f}  (exactly 4/3 in the limit)")
    uniform = TabulatedDensity(grid, np.ones_like(grid))
    print("uniform density on [0, 1]:")
    print(f"  Z' = {agreement_density(uniform):.9f}")


if __name__ == "__main__":
    main()
