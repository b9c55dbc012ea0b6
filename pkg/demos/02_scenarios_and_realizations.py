#!/usr/bin/env python3
"""From a formula to its scenarios, and from scenarios to concrete intervals.

The running example is a small timetable: a maths course immediately before
a physics course, which is before (or immediately before) an English course.
"""

from pathlib import Path

from qarev import (
    builtin_algebra,
    enumerate_scenarios,
    is_consistent,
    models,
    parse,
    realize_scenario,
    to_dnf_wo_neg,
)

allen = builtin_algebra("allen")
text = (Path(__file__).parent / "courses.qa").read_text()
timetable = parse(allen, text)
print("formula:", text.strip().splitlines()[-1])
print("consistent:", is_consistent(allen, timetable))
print()

# normal form: one relation per variable pair, unknown pairs universal
[network] = to_dnf_wo_neg(allen, timetable)
for x in network.variables:
    for y in network.variables:
        if x < y:
            print(f"  {x} -> {y}: {allen.names(network.rel_of(allen, x, y))}")
print()

# the models are the atomic ways the three courses can relate
scenarios = enumerate_scenarios(allen, network)
print(f"{len(scenarios)} scenarios:")
for s in scenarios:
    print("  ", s.format(allen))
print()

# each scenario is witnessed by concrete interval endpoints
print("interval witnesses (integer endpoints):")
for s in scenarios:
    witness = realize_scenario(allen, s)
    print("  ", witness.format())
print()

# the propositional closure adds negation and disjunction on top
richer = parse(allen, "Maths {m} Physics & !(Physics {m} English)")
print("after ruling out back-to-back physics/English:",
      len(models(allen, richer)), "models over",
      ", ".join(sorted({"Maths", "Physics", "English"})))
