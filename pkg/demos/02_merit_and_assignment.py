"""Choosing features for concepts as a linear assignment problem.

Shows the two merit functions (isolated = raw strength, balanced = raw
strength minus the strongest competing concept) and why balanced merit
avoids greedy collisions when one feature dominates several concepts.

Run:  python3 demos/02_merit_and_assignment.py
"""

import numpy as np

from semdisc import (
    AssociationTable,
    balanced_merit,
    isolated_merit,
    solve_assignment,
)

# f0 is everyone's favorite: it rates highest for *both* fruit concepts.
table = AssociationTable.from_arrays(
    feature_ids=["f0", "f1", "f2", "f3"],
    concept_ids=["banana", "lemon", "ocean"],
    values=[
        [0.90, 0.85, 0.05],
        [0.60, 0.20, 0.10],
        [0.10, 0.55, 0.15],
        [0.05, 0.10, 0.80],
    ],
)

iso = isolated_merit(table)
print("isolated merit is just the raw table:")
print(np.round(iso.values, 2))

bal = balanced_merit(table)
print("\nbalanced merit penalizes features torn between concepts:")
print(np.round(bal.values, 2))
print(
    "note f0's banana merit drops from 0.90 to "
    f"{bal.values[0, 0]:+.2f}: lemon competes for it."
)

for merit in (iso, bal):
    a = solve_assignment(merit)
    print(f"\noptimal assignment under {merit.kind} merit:")
    for concept, fid in a.mapping.items():
        print(f"  {concept:>6} -> {fid}")
    print(f"  total merit = {a.total_merit:+.2f}")

# The solver handles rectangular instances directly: 4 candidate
# features, 3 concepts, one feature left unused.
print("\nunused feature:", set(table.library.ids) - set(solve_assignment(bal).feature_ids))
