"""The same prediction, computed with nothing but reversible gates.

Every step below is a NOT, CNOT, or Toffoli acting on classical bits.
The circuit never branches on data and never exits a scan early; a
heterogeneous supracontext runs exactly the same gate sequence as a
homogeneous one. Scratch registers are uncomputed afterwards, so the
whole run can be played backwards.
"""

from analogical import (
    GateTrace,
    bits_to_str,
    load_worked_example,
    run_qam_circuit,
    to_analogical_set,
)


def show(name: str, matrix) -> None:
    print(f"{name}:")
    for row in matrix:
        print("  " + " ".join(str(int(b)) for b in row))


def main() -> None:
    ds, given = load_worked_example()
    trace = GateTrace(max_steps=50_000)
    run = run_qam_circuit(ds, given, trace=trace)

    print("Pair arrays over exemplar pairs (j, j'):")
    print("V2(j,j') = 1 iff different difference vectors,")
    print("W2(j,j') = 1 iff different outcomes, P2 = V2 AND W2.")
    show("V2", run.v2)
    show("W2", run.w2)
    show("P2", run.p2)
    print()

    print("Per mask: containment C2, heterogeneity H2 = C2 AND P2, a")
    print("conjunction sweep over NOT(H2) that raises the homogeneity flag,")
    print("and the analogy array A2 = C2 gated by that flag.")
    for r in run.results:
        ones = int(r.a2.sum())
        status = "restored" if r.ancillas_restored else "NOT RESTORED"
        print(f"  mask {bits_to_str(r.mask)}: flag {int(r.homogeneous)}, "
              f"A2 ones {ones}, scratch {status}")
    print()

    aset = to_analogical_set(run, ds)
    print(f"Pointer counts from the circuit: {aset.outcome_counts} "
          f"(total {aset.total_pointers})")
    print()

    print(f"The run recorded {len(trace.steps)} primitive gates.")
    final = trace.replay()
    restored = trace.replay_inverse(final)
    initial = {name: list(bits) for name, bits in trace.initial.items()}
    print(f"Replaying them forward reproduces the final state; replaying them")
    print(f"backward restores every register: {restored == initial}")


if __name__ == "__main__":
    main()
