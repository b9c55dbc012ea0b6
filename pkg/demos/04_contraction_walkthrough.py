#!/usr/bin/env python3
"""Contraction: retracting a belief without adopting its opposite.

An agent believes, about the lifespans of three mathematicians, that
Boole's lifetime falls strictly inside De Morgan's and that De Morgan's
starts together with Weierstrass's but ends earlier.  Those beliefs entail
that Boole's lifetime starts strictly after Weierstrass's.  A trusted friend
casts doubt on exactly that consequence, so the agent contracts it: the
result keeps every old possibility and adds the minimally changed worlds in
which the doubted statement fails.
"""

from pathlib import Path

from qarev import (
    builtin_algebra,
    contract,
    entails,
    format_conjunctive,
    models,
    parse,
)

allen = builtin_algebra("allen")
here = Path(__file__).parent
psi = parse(allen, (here / "boole_psi.qa").read_text())
mu = parse(allen, (here / "boole_mu.qa").read_text())

variables = ["Boole", "DeMorgan", "Weierstrass"]
print("old beliefs entail the doubted statement:", entails(allen, psi, mu))
print("old beliefs have", len(models(allen, psi, variables)), "model(s)")
print()

res = contract(allen, psi, mu)
print(f"contraction found minimally changed worlds at distance {res.delta}")
print("result as a disjunction:")
for cf in res.result_dnf:
    print("  ", format_conjunctive(allen, cf))
print("result scenarios:")
for line in res.result_scenarios.format_lines(allen):
    print("  ", line)
print()

# the contraction postulates in action: nothing old was lost, and the
# doubted statement is no longer entailed
kept_everything = models(allen, psi, variables).issubset(res.result_scenarios)
still_entailed = res.result_scenarios.issubset(models(allen, mu, variables))
print("old models kept:", kept_everything)
print("doubted statement still entailed:", still_entailed)
