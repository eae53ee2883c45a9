#!/usr/bin/env python3
"""Sweep the strength ratio and print the full tradeoff table.

Every scalar quantity in the package is a function of a single number: the
ratio lam of the operator's two singular values. This script walks lam from
0 (projector) to 1 (identity) and tabulates what each endpoint pins down and
how the two efficiencies pull in opposite directions in between.

Same data as `qmtradeoff sweep --points 11`; here with commentary.
"""

import numpy as np

from qmtradeoff.analytics import tradeoff_record

grid = np.linspace(0.0, 1.0, 11)

print("lam      info       fid_opt    rev        eff_fid    eff_rev")
for lam in grid:
    r = tradeoff_record(lam)
    print(
        f"{lam:4.2f}  {r.info:9.6f}  {r.fidelity_opt:9.6f}  {r.reversibility:9.6f}"
        f"  {r.eff_fidelity:9.6f}  {r.eff_reversibility:9.6f}"
    )

print()
print("Reading the ends of the table:")
print("  lam=0 is a projector: most informative (0.2787 bits), least faithful")
print("  (F_opt = 2/3), and unrecoverable (R = 0).")
print("  lam=1 is the identity: learns nothing, disturbs nothing, R = 1.")
print()

# The interesting part is that the two efficiencies rank measurements in
# opposite orders: per unit of fidelity given up, strong measurements are the
# better deal (eff_fidelity grows toward 1/ln 2), but per unit of
# reversibility given up they are the worse one (eff_reversibility falls to 0).
r25, r75 = tradeoff_record(0.25), tradeoff_record(0.75)
assert r25.eff_fidelity < r75.eff_fidelity
assert r25.eff_reversibility > r75.eff_reversibility
print("Checked: eff_fidelity rises with lam while eff_reversibility falls.")
print()
print("To plot, pipe the CLI's CSV into any plotter, e.g.:")
print("  qmtradeoff sweep --points 200 --output curve.csv")
print("  python3 -c \"import pandas as p; p.read_csv('curve.csv')"
      ".plot(x='lambda'); __import__('matplotlib.pyplot').pyplot.show()\"")
