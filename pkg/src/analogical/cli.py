"""Command-line surface for pointer-based analogical prediction.

Subcommands:

* ``predict``  exact outcome distribution and pointer counts
* ``explain``  per-supracontext blocks: members, subcontexts, verdicts, pointers
* ``gates``    pair arrays and per-mask matrices from the reversible engine
* ``sample``   one seeded draw from the outcome distribution
* ``measures`` entropy, disagreement, and agreement for a distribution

Exit codes: 0 success, 2 file or format problem (also used by argparse for
usage errors), 3 context width over the configured cap, 4 no analogical
support.  Text reports are byte-identical across engines; JSON reports
carry ``"schema_version": 1`` and keep exact rationals as strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import (
    DEFAULT_N_CAP,
    Dataset,
    DatasetFormatError,
    FeatureVector,
    LatticeSizeError,
    bits_to_str,
    difference_vector,
    load_dataset,
)
from .gates import GateTrace, run_qam_circuit, to_analogical_set
from .homogeneity import (
    AnalogicalSet,
    NoAnalogicalSupportError,
    OutcomeDistribution,
    analogical_set,
    is_homogeneous_determinism,
    is_homogeneous_disagreement,
    is_homogeneous_plurality,
    is_homogeneous_pointer,
    most_likely_outcome,
    predict_distribution,
    sample_outcome,
)
from .uncertainty import (
    InvalidDistributionError,
    agreement,
    agreement_density,
    disagreement,
    entropy,
    read_density_file,
)

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_SIZE = 3
EXIT_NO_SUPPORT = 4


@dataclass
class RunConfig:
    """Parsed invocation options shared by the subcommands."""

    dataset_path: str | None = None
    given_context: FeatureVector = ()
    engine: str = "fast"
    seed: int | None = None
    output_format: str = "text"
    n_cap: int = DEFAULT_N_CAP
    trace: bool = False


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    given: FeatureVector = ()
    if getattr(args, "given", None):
        given = tuple(args.given.split())
    return RunConfig(
        dataset_path=getattr(args, "dataset", None),
        given_context=given,
        engine=getattr(args, "engine", "fast"),
        seed=getattr(args, "seed", None),
        output_format=getattr(args, "format", "text"),
        n_cap=getattr(args, "n_cap", DEFAULT_N_CAP),
        trace=bool(getattr(args, "trace", False)),
    )


def _load(cfg: RunConfig) -> tuple[Dataset, FeatureVector]:
    ds = load_dataset(cfg.dataset_path)
    given = cfg.given_context
    if len(given) != ds.n:
        raise DatasetFormatError(
            f"given context has {len(given)} features, dataset has {ds.n}"
        )
    return ds, given


def _build_set(cfg: RunConfig, ds: Dataset, given: FeatureVector) -> AnalogicalSet:
    if cfg.engine == "gates":
        run = run_qam_circuit(ds, given, n_cap=cfg.n_cap)
        return to_analogical_set(run, ds)
    return analogical_set(ds, given, n_cap=cfg.n_cap)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# --- shared report pieces ---------------------------------------------------

def _distribution_line(dist: OutcomeDistribution, total: int) -> str:
    parts = ", ".join(f"{o} {p}" for o, p in dist.probabilities.items())
    return f"{parts} ({total} pointers)"


def _counts_line(aset: AnalogicalSet) -> str:
    return "pointers: " + ", ".join(f"{o} {c}" for o, c in aset.outcome_counts.items())


def _probabilities_json(dist: OutcomeDistribution) -> dict[str, str]:
    return {o: str(p) for o, p in dist.probabilities.items()}


def _matrix_lines(matrix) -> list[str]:
    return [" ".join(str(int(b)) for b in row) for row in matrix]


def _matrix_json(matrix) -> list[list[int]]:
    return [[int(b) for b in row] for row in matrix]


# --- subcommands ------------------------------------------------------------

def cmd_predict(cfg: RunConfig) -> int:
    ds, given = _load(cfg)
    aset = _build_set(cfg, ds, given)
    dist = predict_distribution(aset)
    if cfg.output_format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "command": "predict",
                "given": list(given),
                "total_pointers": aset.total_pointers,
                "pointer_counts": dict(aset.outcome_counts),
                "probabilities": _probabilities_json(dist),
                "most_likely": most_likely_outcome(dist),
            }
        )
    else:
        _emit(
            "\n".join(
                [
                    _distribution_line(dist, aset.total_pointers),
                    _counts_line(aset),
                    f"most likely: {most_likely_outcome(dist)}",
                ]
            )
        )
    return EXIT_OK


def _exemplar_label(ds: Dataset, j: int) -> str:
    e = ds.exemplars[j - 1]
    return f"{' '.join(e.context)} / {e.outcome}"


def _subcontext_groups(ds: Dataset, given: FeatureVector, members: Sequence[int]):
    groups: dict[tuple[int, ...], list[int]] = {}
    for j in members:
        d = difference_vector(ds.exemplars[j - 1].context, given)
        groups.setdefault(d, []).append(j)
    return groups


def _offending_pairs(ds: Dataset, given: FeatureVector, members: Sequence[int]) -> list[tuple[int, int]]:
    # member pairs that differ in both subcontext and outcome
    return [
        (a, b)
        for a, b in combinations(members, 2)
        if difference_vector(ds.exemplars[a - 1].context, given)
        != difference_vector(ds.exemplars[b - 1].context, given)
        and ds.exemplars[a - 1].outcome != ds.exemplars[b - 1].outcome
    ]


def cmd_explain(cfg: RunConfig) -> int:
    ds, given = _load(cfg)
    aset = _build_set(cfg, ds, given)
    dist = predict_distribution(aset)

    if cfg.output_format == "json":
        masks = []
        for v in aset.verdicts:
            groups = _subcontext_groups(ds, given, v.members)
            pointers = (
                [[a, b] for a in v.members for b in v.members] if v.homogeneous else []
            )
            masks.append(
                {
                    "mask": bits_to_str(v.mask),
                    "members": list(v.members),
                    "member_outcomes": list(v.member_outcomes),
                    "subcontexts": {bits_to_str(d): js for d, js in groups.items()},
                    "homogeneous": v.homogeneous,
                    "verdicts": {
                        "pointer": is_homogeneous_pointer(ds, given, v.mask),
                        "plurality": is_homogeneous_plurality(ds, given, v.mask),
                        "determinism": is_homogeneous_determinism(ds, given, v.mask),
                        "disagreement": is_homogeneous_disagreement(ds, given, v.mask),
                    },
                    "pointer_count": v.pointer_count,
                    "pointers": pointers,
                    "offending_pairs": [
                        list(p) for p in _offending_pairs(ds, given, v.members)
                    ]
                    if not v.homogeneous
                    else [],
                }
            )
        _emit_json(
            {
                "schema_version": 1,
                "command": "explain",
                "given": list(given),
                "masks": masks,
                "total_pointers": aset.total_pointers,
                "pointer_counts": dict(aset.outcome_counts),
                "probabilities": _probabilities_json(dist),
                "most_likely": most_likely_outcome(dist),
            }
        )
        return EXIT_OK

    lines = [
        f"dataset: {ds.m} exemplars, {ds.n} features",
        f"given: {' '.join(given)}",
        "",
    ]
    for v in aset.verdicts:
        mask_str = bits_to_str(v.mask)
        if not v.members:
            lines.append(f"mask {mask_str}: empty, homogeneous, 0 pointers")
            lines.append("")
            continue
        word = "member" if len(v.members) == 1 else "members"
        lines.append(f"mask {mask_str}: {len(v.members)} {word}")
        lines.append(
            "  members: "
            + ", ".join(f"{j} ({_exemplar_label(ds, j)})" for j in v.members)
        )
        groups = _subcontext_groups(ds, given, v.members)
        lines.append(
            "  subcontexts: "
            + ", ".join(
                f"{bits_to_str(d)} {{{', '.join(str(j) for j in js)}}}"
                for d, js in groups.items()
            )
        )
        verdicts = {
            "pointer": is_homogeneous_pointer(ds, given, v.mask),
            "plurality": is_homogeneous_plurality(ds, given, v.mask),
            "determinism": is_homogeneous_determinism(ds, given, v.mask),
            "disagreement": is_homogeneous_disagreement(ds, given, v.mask),
        }
        agree = len(set(verdicts.values())) == 1
        word = "homogeneous" if v.homogeneous else "heterogeneous"
        lines.append(
            f"  verdict: {word} "
            f"({', '.join(verdicts)} {'agree' if agree else 'disagree'})"
        )
        if v.homogeneous:
            lines.append(f"  pointers ({v.pointer_count}):")
            for a in v.members:
                for b in v.members:
                    lines.append(
                        f"    {_exemplar_label(ds, a)} -> {_exemplar_label(ds, b)}"
                    )
        else:
            off = _offending_pairs(ds, given, v.members)
            lines.append(
                "  offending pairs: "
                + ", ".join(f"({a}, {b})" for a, b in off)
            )
            lines.append("  pointers (0): none")
        lines.append("")
    lines.append(_distribution_line(dist, aset.total_pointers))
    lines.append(_counts_line(aset))
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_gates(cfg: RunConfig) -> int:
    ds, given = _load(cfg)
    trace = GateTrace() if cfg.trace else None
    run = run_qam_circuit(ds, given, n_cap=cfg.n_cap, trace=trace)
    aset = to_analogical_set(run, ds)

    if cfg.output_format == "json":
        obj = {
            "schema_version": 1,
            "command": "gates",
            "given": list(given),
            "m": ds.m,
            "n": ds.n,
            "v2": _matrix_json(run.v2),
            "w2": _matrix_json(run.w2),
            "p2": _matrix_json(run.p2),
            "masks": [
                {
                    "mask": bits_to_str(r.mask),
                    "c2": _matrix_json(r.c2),
                    "h2": _matrix_json(r.h2),
                    "flag": int(r.homogeneous),
                    "a2": _matrix_json(r.a2),
                    "ancillas_restored": r.ancillas_restored,
                }
                for r in run.results
            ],
            "total_pointers": aset.total_pointers,
        }
        if trace is not None:
            obj["trace_steps"] = len(trace.steps)
            obj["trace_truncated"] = trace.truncated
        _emit_json(obj)
        return EXIT_OK

    lines = [f"dataset: {ds.m} exemplars, {ds.n} features", f"given: {' '.join(given)}"]
    for name, matrix in (("V2", run.v2), ("W2", run.w2), ("P2", run.p2)):
        lines.append(f"{name}:")
        lines.extend(_matrix_lines(matrix))
    for r in run.results:
        status = "restored" if r.ancillas_restored else "NOT restored"
        lines.append("")
        lines.append(
            f"mask {bits_to_str(r.mask)}: flag {int(r.homogeneous)} "
            f"({'homogeneous' if r.homogeneous else 'heterogeneous'}), ancillas {status}"
        )
        for name, matrix in (("C2", r.c2), ("H2", r.h2), ("A2", r.a2)):
            lines.append(f"{name}:")
            lines.extend(_matrix_lines(matrix))
    lines.append("")
    lines.append(f"total pointers: {aset.total_pointers}")
    if trace is not None:
        suffix = " (truncated)" if trace.truncated else ""
        lines.append(f"trace: {len(trace.steps)} steps{suffix}")
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_sample(cfg: RunConfig) -> int:
    ds, given = _load(cfg)
    aset = _build_set(cfg, ds, given)
    dist = predict_distribution(aset)
    outcome = sample_outcome(dist, cfg.seed)
    if cfg.output_format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "command": "sample",
                "seed": cfg.seed,
                "outcome": outcome,
            }
        )
    else:
        _emit(outcome)
    return EXIT_OK


def _parse_inline_distribution(pairs: Sequence[str]) -> dict[str, Fraction]:
    probs: dict[str, Fraction] = {}
    for token in pairs:
        label, sep, value = token.rpartition(":")
        if not sep or not label or not value:
            raise InvalidDistributionError(
                f"expected label:prob, got {token!r}"
            )
        if label in probs:
            raise InvalidDistributionError(f"duplicate outcome label {label!r}")
        try:
            probs[label] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InvalidDistributionError(
                f"could not parse probability {value!r} in {token!r}"
            ) from None
    return probs


def cmd_measures(cfg: RunConfig, pairs: Sequence[str], density_path: str | None) -> int:
    probs = None
    if pairs and cfg.dataset_path:
        raise InvalidDistributionError(
            "give either inline label:prob pairs or --dataset/--given, not both"
        )
    if pairs:
        probs = _parse_inline_distribution(pairs)
    elif cfg.dataset_path:
        ds, given = _load(cfg)
        aset = _build_set(cfg, ds, given)
        probs = dict(predict_distribution(aset).probabilities)
    elif density_path is None:
        raise InvalidDistributionError(
            "no distribution given: pass label:prob pairs, --dataset/--given, or --density"
        )

    report: dict = {"schema_version": 1, "command": "measures"}
    lines = []
    if probs is not None:
        h = entropy(probs)
        q = disagreement(probs)
        z = agreement(probs)
        report["probabilities"] = {o: str(p) for o, p in probs.items()}
        report["entropy_bits"] = h
        report["disagreement"] = str(q)
        report["agreement"] = str(z)
        lines.append(f"H = {h}")
        lines.append(f"Q = {q}")
        lines.append(f"Z = {z}")
    if density_path is not None:
        zp = agreement_density(read_density_file(density_path))
        report["agreement_density"] = zp
        lines.append(f"Z' = {zp}")

    if cfg.output_format == "json":
        _emit_json(report)
    else:
        _emit("\n".join(lines))
    return EXIT_OK


# --- argument parsing -------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, *, dataset_required: bool = True) -> None:
    sub.add_argument("--dataset", required=dataset_required, help="path to a dataset file")
    sub.add_argument(
        "--given",
        required=dataset_required,
        help='given context as one quoted argument, e.g. "o m a"',
    )
    sub.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub.add_argument(
        "--n-cap",
        type=int,
        default=DEFAULT_N_CAP,
        help=f"refuse datasets with more features than this (default {DEFAULT_N_CAP})",
    )


def _add_engine(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--engine",
        choices=("fast", "gates"),
        default="fast",
        help="prediction engine (default fast)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="analogical",
        description="Outcome prediction by counting pointers inside homogeneous supracontexts.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("predict", help="print the exact outcome distribution")
    _add_common(p)
    _add_engine(p)
    p.set_defaults(func=lambda a: cmd_predict(_config_from_args(a)))

    p = subparsers.add_parser(
        "explain", help="per-supracontext members, subcontexts, verdicts, and pointers"
    )
    _add_common(p)
    _add_engine(p)
    p.set_defaults(func=lambda a: cmd_explain(_config_from_args(a)))

    p = subparsers.add_parser(
        "gates", help="dump the reversible-engine pair arrays and per-mask matrices"
    )
    _add_common(p)
    p.add_argument(
        "--trace", action="store_true", help="capture the gate trace and report its length"
    )
    p.set_defaults(func=lambda a: cmd_gates(_config_from_args(a)))

    p = subparsers.add_parser("sample", help="draw one outcome with a fixed seed")
    _add_common(p)
    _add_engine(p)
    p.add_argument("--seed", type=int, required=True, help="seed for the draw")
    p.set_defaults(func=lambda a: cmd_sample(_config_from_args(a)))

    p = subparsers.add_parser(
        "measures", help="entropy, disagreement, and agreement of a distribution"
    )
    p.add_argument(
        "pairs",
        nargs="*",
        metavar="label:prob",
        help='inline distribution, e.g. "y:4/13 x:9/13"',
    )
    _add_common(p, dataset_required=False)
    _add_engine(p)
    p.add_argument(
        "--density",
        help="two-column text file tabulating a density; adds the Z' line",
    )
    p.set_defaults(
        func=lambda a: cmd_measures(_config_from_args(a), a.pairs, a.density)
    )

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DatasetFormatError, InvalidDistributionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except LatticeSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except NoAnalogicalSupportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SUPPORT


if __name__ == "__main__":
    sys.exit(main())
