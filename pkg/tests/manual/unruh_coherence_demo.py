#!/usr/bin/env python3
"""
Print how far the printed beyond-single-mode state is from the literal
region-II trace, for a few accelerations and |q_R|^2 values.

Not a test: the numbers are for eyeballing. Usage:

    python tests/manual/unruh_coherence_demo.py [p]
"""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from core.state_factory import unruh_coherence_gap


def main():
    p = float(sys.argv[1]) if len(sys.argv) > 1 else 1.0
    print(f"p = {p}")
    print(f"{'omega':>6} {'qr2':>5} {'max coh':>10} {'trace dist':>11} {'N printed':>10} {'N literal':>10}")
    for omega in (0.1, 0.5, 1.0, 2.0):
        for qr2 in (0.25, 0.5, 0.75, 1.0):
            gap = unruh_coherence_gap(omega, qr2, p)
            print(f"{omega:6.2f} {qr2:5.2f} {gap.max_coherence:10.3e} {gap.trace_distance:11.3e} "
                  f"{gap.negativity_printed:10.6f} {gap.negativity_literal:10.6f}")


if __name__ == "__main__":
    main()
