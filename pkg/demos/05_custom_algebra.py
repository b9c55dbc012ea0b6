#!/usr/bin/env python3
"""Plugging in a custom qualitative algebra from a JSON document.

The whole engine is table-driven: any algebra with an inverse table, a
composition table and a connected neighborhood graph gets parsing,
consistency checking, enumeration, revision and contraction for free.
Here: the point algebra, relating time points by before / equal / after.
"""

import json

from qarev import check_laws, load_algebra, models, parse, revise

POINT_ALGEBRA = {
    "name": "point",
    "relations": ["lt", "eq", "gt"],
    "identity": "eq",
    "inverse": {"lt": "gt", "eq": "eq", "gt": "lt"},
    "composition": {
        "lt": {"lt": ["lt"], "eq": ["lt"], "gt": ["lt", "eq", "gt"]},
        "eq": {"lt": ["lt"], "eq": ["eq"], "gt": ["gt"]},
        "gt": {"lt": ["lt", "eq", "gt"], "eq": ["gt"], "gt": ["gt"]},
    },
    "neighborhood": [["lt", "eq"], ["eq", "gt"]],
}

point = load_algebra(json.dumps(POINT_ALGEBRA))
print(f"loaded {point.name}: {point.size} base relations")
for law, ok, _ in check_laws(point):
    print(f"  {law}: {'OK' if ok else 'FAIL'}")
print()

# transitivity falls out of the composition table
chain = parse(point, "A {lt} B & B {lt} C")
print("A<B & B<C has models:")
for line in models(point, chain).format_lines(point):
    print("  ", line)
print()

# revision works over any loaded algebra: believe A<B, learn A>=B
psi = parse(point, "A {lt} B")
mu = parse(point, "A {gt,eq} B")
res = revise(point, psi, mu)
print(f"revising A<B by A>=B: delta = {res.delta}")
for line in res.result_scenarios.format_lines(point):
    print("  ", line)
print()
print("the nearer of the two admissible worlds (equality) wins, because the")
print("neighborhood graph places eq between lt and gt")
