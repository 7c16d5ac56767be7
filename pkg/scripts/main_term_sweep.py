#!/usr/bin/env python3
"""Sweep the main-term deficit of the planar rotation pair on growing cubes.

For each N the probe compares |C + L(C)|, C = cube(2, N), against the
main term Lambda * |C| and records the deficit.  The fitted log-log slope
should approach 1/2 as N grows; with --n-max 20 it lands near 0.5125.
"""

import argparse

from sumsetlab import cube, fit_deficit_exponent, main_term_probe, rotation_system


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=20, help="largest cube radius")
    args = parser.parse_args()

    system = rotation_system(2)
    pairs = []
    print(f"{'N':>4} {'|A|':>6} {'main term':>10} {'|sum|':>8} {'deficit':>8}")
    for N in range(1, args.n_max + 1):
        A = cube(2, N)
        cert = main_term_probe(system, A)
        deficit = cert.params["deficit"]
        pairs.append((len(A), deficit))
        print(f"{N:>4} {len(A):>6} {cert.lhs:>10} {cert.rhs:>8} {deficit:>8}")

    slope = fit_deficit_exponent(pairs)
    print(f"\nfitted deficit exponent: {slope:.4f} (main-term prediction: 0.5)")


if __name__ == "__main__":
    main()
