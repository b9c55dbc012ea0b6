#!/usr/bin/env python3
"""Working with the shipped qualitative algebras: tables and distances."""

from qarev import builtin_algebra, check_laws, compose, inverse_rel, rel_distance

allen = builtin_algebra("allen")
print(f"loaded {allen.name}: {allen.size} base relations")
print("relations:", ", ".join(b.name for b in allen.base_relations))
print("identity:", allen.identity.name)
print()

# relations are unions of base relations; operations work elementwise
r = allen.relation("b", "m")
print("r =", allen.names(r))
print("inverse(r) =", allen.names(inverse_rel(allen, r)))
print("complement(r) =", allen.names(allen.complement(r)))
print()

# weak composition answers: if X r Y and Y s Z, how can X relate to Z?
for left, right in [("b", "b"), ("m", "m"), ("d", "s"), ("o", "oi")]:
    out = compose(allen, allen.relation(left), allen.relation(right))
    print(f"compose({left}, {right}) = {allen.names(out)}")
print()

# the neighborhood graph induces a distance between base relations:
# the number of continuous endpoint moves to morph one relation into another
print("some conceptual-neighborhood distances:")
for a_name, b_name in [("b", "m"), ("b", "bi"), ("m", "oi"), ("eq", "d")]:
    d = rel_distance(allen, allen.base(a_name), allen.base(b_name))
    print(f"  distance({a_name}, {b_name}) = {d}")
print()

# every algebra is validated at load time; the checks can be re-run
for algebra_name in ("allen", "rcc8"):
    a = builtin_algebra(algebra_name)
    print(f"law report for {a.name}:")
    for law, ok, detail in check_laws(a):
        print(f"  {law}: {'OK' if ok else 'FAIL'} ({detail})")
