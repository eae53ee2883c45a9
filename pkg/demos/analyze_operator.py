#!/usr/bin/env python3
"""Canonical form of an arbitrary 2x2 measurement operator.

Any outcome operator factors as M = kappa * U diag(1, lam) V. The scale
kappa fixes how often the outcome fires, the ratio lam fixes everything
about information and reversibility, the left unitary U only moves the
post-measurement state (so only the fidelity sees it), and V is pure
outcome relabeling that nothing physical can depend on.
"""

import numpy as np

from qmtradeoff.analytics import (
    fidelity_of_operator,
    information_gain,
    optimal_fidelity,
    reversibility,
)
from qmtradeoff.linalg import su2_params
from qmtradeoff.measurement import MeasurementOperator


def report(title, matrix):
    op = MeasurementOperator(matrix)
    c = op.canonical
    ang = su2_params(c.u)
    print(title)
    print(f"  kappa = {c.kappa:.6f}   lam = {c.lam:.6f}")
    print(f"  U angles: alpha={ang.alpha:+.4f} beta={ang.beta:+.4f} "
          f"gamma={ang.gamma:+.4f} delta={ang.delta:+.4f}")
    print(f"  info          = {information_gain(c.lam):.9f} bits")
    print(f"  fidelity      = {fidelity_of_operator(op):.9f}")
    print(f"  fidelity_opt  = {optimal_fidelity(c.lam):.9f}")
    print(f"  reversibility = {reversibility(c.lam):.9f}")
    print()
    return op


hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
base = 0.9 * np.diag([1.0, 0.5]).astype(complex)

plain = report("diag(1, 0.5), scaled by 0.9:", base)
rotated = report("the same operator with a Hadamard applied after:", hadamard @ base)
relabeled = report("...and instead with a Hadamard applied before:", base @ hadamard)

# Left rotation: same lam, same info/reversibility, different fidelity
# (the post-measurement state ends up somewhere else).
assert plain.lam == rotated.lam
assert fidelity_of_operator(plain) != fidelity_of_operator(rotated)

# Right rotation: nothing observable moves at all.
assert abs(fidelity_of_operator(plain) - fidelity_of_operator(relabeled)) < 1e-12

print("Left rotations change only the fidelity; right rotations change nothing.")
