"""Exemplar datasets, difference vectors, and the supracontext mask lattice.

An exemplar is a feature vector tagged with an outcome label.  To predict
the outcome of a *given context*, every exemplar is compared against the
given context position by position, producing a difference vector of
match/mismatch bits.  A supracontext mask selects the variables that must
match the given context; an exemplar belongs to that supracontext exactly
when its difference vector is zero on every selected variable.  Exemplars
sharing an identical difference vector form one subcontext.

Feature comparison is exact symbol equality per position.  There is no
similarity metric, feature weighting, or missing-value handling.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files
from typing import Iterable, Iterator, Sequence

FeatureVector = tuple[str, ...]
Bits = tuple[int, ...]

# Lattice enumerations walk all 2^n masks; refuse silly n by default.
DEFAULT_N_CAP = 24

WORKED_EXAMPLE_GIVEN: FeatureVector = ("o", "m", "a")


class DatasetFormatError(ValueError):
    """Dataset text does not follow the expected line format."""


class LatticeSizeError(ValueError):
    """A 2^n lattice enumeration would exceed the configured variable cap."""


@dataclass(frozen=True)
class Exemplar:
    """One data item: a feature vector plus its outcome label.

    ``index`` is the 1-based position within the dataset; duplicates of
    (context, outcome) are allowed as distinct exemplars.
    """

    context: FeatureVector
    outcome: str
    index: int


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of exemplars sharing one variable count."""

    exemplars: tuple[Exemplar, ...]

    def __post_init__(self) -> None:
        if not self.exemplars:
            raise DatasetFormatError("empty dataset: at least one exemplar is required")
        n = len(self.exemplars[0].context)
        if n < 1:
            raise DatasetFormatError("exemplars must have at least one feature")
        for pos, e in enumerate(self.exemplars, 1):
            if len(e.context) != n:
                raise DatasetFormatError(
                    f"exemplar {pos} has {len(e.context)} features, expected {n}"
                )
            if e.index != pos:
                raise DatasetFormatError(
                    f"exemplar at position {pos} carries index {e.index}"
                )
            if not e.outcome:
                raise DatasetFormatError(f"exemplar {pos} has an empty outcome label")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Sequence[str], str]]) -> "Dataset":
        """Build a dataset from (context, outcome) pairs, assigning indices 1..m."""
        exemplars = tuple(
            Exemplar(tuple(ctx), outcome, i) for i, (ctx, outcome) in enumerate(pairs, 1)
        )
        return cls(exemplars)

    @property
    def m(self) -> int:
        return len(self.exemplars)

    @property
    def n(self) -> int:
        return len(self.exemplars[0].context)

    @property
    def outcome_alphabet(self) -> frozenset[str]:
        return frozenset(e.outcome for e in self.exemplars)

    @property
    def outcome_order(self) -> tuple[str, ...]:
        """Outcome labels in order of first appearance; fixes report ordering."""
        seen: dict[str, None] = {}
        for e in self.exemplars:
            seen.setdefault(e.outcome, None)
        return tuple(seen)


def parse_dataset(text: str) -> Dataset:
    """Parse dataset text into a :class:`Dataset`.

    One exemplar per non-empty, non-comment line.  A data line is
    ``<outcome><TAB><f1> <f2> ... <fn>``; lines starting with ``#`` are
    ignored.  Input order becomes exemplar indices 1..m.
    """
    pairs: list[tuple[tuple[str, ...], str]] = []
    n: int | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        outcome, tab, feature_part = line.partition("\t")
        if not tab:
            raise DatasetFormatError(
                f"line {lineno}: expected '<outcome><TAB><features>', got {line!r}"
            )
        outcome = outcome.strip()
        features = tuple(feature_part.split())
        if not outcome or not features:
            raise DatasetFormatError(f"line {lineno}: missing outcome or features")
        if n is None:
            n = len(features)
        elif len(features) != n:
            raise DatasetFormatError(
                f"line {lineno}: expected {n} features, got {len(features)}"
            )
        pairs.append((features, outcome))
    if not pairs:
        raise DatasetFormatError("empty dataset: no data lines found")
    return Dataset.from_pairs(pairs)


def serialize_dataset(ds: Dataset) -> str:
    """Render a dataset back to its text form (inverse of :func:`parse_dataset`)."""
    lines = []
    for e in ds.exemplars:
        tokens = (e.outcome, *e.context)
        for t in tokens:
            if any(c.isspace() for c in t):
                raise ValueError(f"token {t!r} contains whitespace and cannot be serialized")
        if e.outcome.startswith("#"):
            raise ValueError(
                f"outcome {e.outcome!r} starts with '#' and would re-parse as a comment"
            )
        lines.append(f"{e.outcome}\t{' '.join(e.context)}")
    return "\n".join(lines) + "\n"


def load_dataset(path) -> Dataset:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dataset(fh.read())


def worked_example_text() -> str:
    """Text of the bundled six-exemplar demonstration dataset."""
    return files("analogical").joinpath("data/worked_example.tsv").read_text("utf-8")


def load_worked_example() -> tuple[Dataset, FeatureVector]:
    """The bundled demonstration dataset and its canonical given context."""
    return parse_dataset(worked_example_text()), WORKED_EXAMPLE_GIVEN


def difference_vector(e: Sequence[str], given: Sequence[str]) -> Bits:
    """Per-variable mismatch bits: bit i is 1 iff ``e[i] != given[i]``."""
    if len(e) != len(given):
        raise ValueError(f"length mismatch: {len(e)} vs {len(given)}")
    return tuple(0 if a == b else 1 for a, b in zip(e, given))


def subcontext_key(d: Bits) -> Bits:
    """Subcontext identity of a difference vector.

    Two exemplars share a subcontext exactly when their full difference
    vectors are equal, so the key is the vector itself.
    """
    return tuple(d)


def contains(mask: Sequence[int], d: Sequence[int]) -> bool:
    """True iff an exemplar with difference vector ``d`` lies in the supracontext.

    The mask selects variables that must match the given context, so
    containment means ``mask AND d`` is all zeros.
    """
    if len(mask) != len(d):
        raise ValueError(f"length mismatch: {len(mask)} vs {len(d)}")
    return not any(mb and db for mb, db in zip(mask, d))


def contained_exemplars(ds: Dataset, given: Sequence[str], mask: Sequence[int]) -> tuple[int, ...]:
    """1-based indices of exemplars contained in the supracontext, ascending."""
    return tuple(
        e.index
        for e in ds.exemplars
        if contains(mask, difference_vector(e.context, given))
    )


def bits_to_int(bits: Sequence[int]) -> int:
    """Pack bits into an integer, leftmost bit most significant."""
    value = 0
    for b in bits:
        value = (value << 1) | (b & 1)
    return value


def int_to_bits(value: int, n: int) -> Bits:
    return tuple((value >> (n - 1 - i)) & 1 for i in range(n))


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


def str_to_bits(text: str) -> Bits:
    if not all(c in "01" for c in text):
        raise ValueError(f"not a bit string: {text!r}")
    return tuple(int(c) for c in text)


def iter_masks(n: int) -> Iterator[Bits]:
    """All 2^n supracontext masks, most specific first.

    Ordered by descending count of selected variables, ties by descending
    binary value; for n=3 this yields 111, 110, 101, 011, 100, 010, 001, 000.
    """
    order = sorted(range(1 << n), key=lambda v: (-v.bit_count(), -v))
    for v in order:
        yield int_to_bits(v, n)


def check_lattice_size(n: int, n_cap: int = DEFAULT_N_CAP) -> None:
    """Refuse lattice walks whose 2^n cost exceeds the cap."""
    if n > n_cap:
        raise LatticeSizeError(
            f"{n} variables means 2^{n} supracontexts; raise the cap "
            f"(currently {n_cap}) to force the enumeration"
        )
