"""Walk through the causal-cover idea on a small worked example.

A circuit's two-qubit schedule is a sequence of matchings; a pair of qubits
is causally covered when information can hop from one to the other along
edges at strictly increasing time steps.  The five-vertex example below has
(1,4) covered but (4,2) not, so the circuit as a whole is not covered; a few
random Clifford layer pairs on eight qubits then get extended until the whole
register is covered.
"""
from ctchaos import (
    Circuit,
    CliffordLayerPolicy,
    Layer,
    check_cover,
    extend_until_covered,
    matchings_from_circuit,
    serialize,
    stream_generator,
)
from ctchaos.sim import cnot


def main():
    worked = Circuit(6, (
        Layer((cnot(1, 2), cnot(3, 4))),
        Layer((cnot(2, 5),)),
        Layer((cnot(4, 5),)),
    ))
    report = check_cover(matchings_from_circuit(worked))
    print("worked example ------------------------------------------")
    print(serialize(worked))
    print(f"covered as a whole: {report.covered}")
    print(f"(1, 4) covered:     {(1, 4) not in report.uncovered_pairs}")
    print(f"(4, 2) covered:     {(4, 2) not in report.uncovered_pairs}")

    print()
    print("generate-until-covered on 8 qubits -----------------------")
    rng = stream_generator(0, "demo", "cover")
    for multiplier in (1, 2, 3):
        circuit = extend_until_covered(8, CliffordLayerPolicy(), rng, multiplier)
        report = check_cover(matchings_from_circuit(circuit))
        print(
            f"multiplier {multiplier}: {circuit.n_layers:3d} layers, "
            f"covered={report.covered}, cover depth {report.cover_depth}"
        )


if __name__ == "__main__":
    main()
