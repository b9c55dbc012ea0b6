#!/usr/bin/env python3
"""Distance-based revision: keep the new belief, move as little as possible.

Revision of old beliefs (psi) by new beliefs (mu) selects the scenarios of
mu closest to the scenarios of psi; the distance between two scenarios sums
neighborhood-graph distances over all ordered variable pairs.
"""

from qarev import (
    builtin_algebra,
    format_conjunctive,
    models,
    parse,
    revise,
    scenario_distance,
)

allen = builtin_algebra("allen")

# distances between single-pair scenarios
before = next(iter(models(allen, parse(allen, "X {b} Y"))))
meets = next(iter(models(allen, parse(allen, "X {m} Y"))))
after = next(iter(models(allen, parse(allen, "X {bi} Y"))))
print("d(before, meets) =", scenario_distance(allen, before, meets))
print("d(before, after) =", scenario_distance(allen, before, after))
print()

# revising a disjunction: the cheaper branch wins
psi = parse(allen, "X {b} Y | X {bi} Y")
mu = parse(allen, "X {m} Y")
res = revise(allen, psi, mu)
print(f"revise('X before Y or X after Y', 'X meets Y'): delta = {res.delta}")
for cf in res.result_dnf:
    print("  result:", format_conjunctive(allen, cf))
print("  pair report (i, j, delta_ij, pruned):", res.pair_report)
print()

# when old and new beliefs are jointly consistent the distance is zero
# and revision is plain conjunction
res = revise(allen, parse(allen, "X {b,m,o} Y"), parse(allen, "X {o,s} Y"))
print("consistent case: delta =", res.delta,
      "result =", [format_conjunctive(allen, cf) for cf in res.result_dnf])
print()

# pruning only affects speed, never the result
psi = parse(allen, "!(X {b,m,o,s,d} Y) | X {b} Z")
mu = parse(allen, "X {b} Y & !(X {b} Z)")
fast = revise(allen, psi, mu, prune=True)
slow = revise(allen, psi, mu, prune=False)
print("pruned and unpruned runs agree:",
      (fast.delta, fast.result_scenarios) == (slow.delta, slow.result_scenarios))
print("delta =", fast.delta)
for line in fast.result_scenarios.format_lines(allen):
    print("  scenario:", line)
