"""Acceptance suite: one pass/fail line per criterion (run with ``pytest -s``).

Criterion order and tolerances are fixed; every random batch is seeded, so
reruns are bit-identical.
"""

import random
import time
from itertools import product
from pathlib import Path

import pytest

from qarev import (
    And,
    Not,
    Scenario,
    builtin_algebra,
    check_laws,
    compose,
    contract,
    enumerate_scenarios,
    formula_variables,
    is_consistent,
    models,
    normalize,
    parse,
    realize_scenario,
    revise,
    revise_qa,
    to_dnf_wo_neg,
)

from oracles import (
    brute_revision,
    eval_formula,
    omega_cells,
    random_dnf_formula,
    random_formula,
    three_interval_tables,
)

DEMOS = Path(__file__).resolve().parent.parent / "demos"
VARS3 = ["X", "Y", "Z"]


def report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num} [{name}]: {status}{' - ' + detail if detail else ''}")
    assert ok, f"acceptance criterion {num} ({name}) failed {detail}"


def three_var_instances(seed, count, depth, generator):
    allen = builtin_algebra("allen")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        psi = generator(rng, allen, VARS3, depth)
        mu = generator(rng, allen, VARS3, depth)
        vars = sorted(set(formula_variables(psi)) | set(formula_variables(mu)))
        if len(vars) == 3:
            out.append((psi, mu))
    return out


@pytest.fixture(scope="module")
def oracle_batch(allen, omega3):
    instances = three_var_instances(20260201, 200, 4, lambda r, a, v, d: random_formula(r, a, v, d))
    t0 = time.monotonic()
    results = [revise(allen, psi, mu) for psi, mu in instances]
    wanted = [brute_revision(allen, psi, mu, tuple(VARS3), omega3) for psi, mu in instances]
    elapsed = time.monotonic() - t0
    return instances, results, wanted, elapsed


@pytest.fixture(scope="module")
def dnf_batch(allen):
    rng = random.Random(20260202)
    instances = []
    while len(instances) < 100:
        psi = random_dnf_formula(rng, allen, VARS3)
        mu = random_dnf_formula(rng, allen, VARS3)
        vars = sorted(set(formula_variables(psi)) | set(formula_variables(mu)))
        if len(vars) == 3:
            instances.append((psi, mu))
    results = [revise(allen, psi, mu) for psi, mu in instances]
    return instances, results


def test_criterion_1_golden_contraction(allen):
    psi = parse(allen, (DEMOS / "boole_psi.qa").read_text())
    mu = parse(allen, (DEMOS / "boole_mu.qa").read_text())
    t0 = time.monotonic()
    res = contract(allen, psi, mu)
    elapsed = time.monotonic() - t0

    reference = parse(
        allen,
        "(Boole {d} DeMorgan & DeMorgan {s} Weierstrass)"
        " | (Boole {s} Weierstrass & DeMorgan {di} Weierstrass)"
        " | (Boole {s} DeMorgan & DeMorgan {s} Weierstrass)"
        " | (Boole {d} DeMorgan & Boole {s} Weierstrass & DeMorgan {o} Weierstrass)",
    )
    expected = models(allen, reference, ["Boole", "DeMorgan", "Weierstrass"])
    fixture_lines = (DEMOS / "boole_contract_expected.scenarios").read_text().splitlines()
    assert expected.format_lines(allen) == fixture_lines

    ok = res.result_scenarios == expected and elapsed < 5.0
    detail = (
        f"wall {elapsed:.2f}s; engine scenarios {res.result_scenarios.format_lines(allen)}"
        f" vs reference {expected.format_lines(allen)}"
    )
    report(1, "golden contraction", ok, detail)


def test_criterion_2_revision_matches_enumeration_oracle(oracle_batch):
    instances, results, wanted, elapsed = oracle_batch
    mismatches = 0
    for res, (want_delta, want_set) in zip(results, wanted):
        got = {s.cells for s in res.result_scenarios.members}
        if res.delta != want_delta or got != set(want_set):
            mismatches += 1
    ok = mismatches == 0 and elapsed < 60.0
    report(2, "revision matches full-enumeration oracle", ok,
           f"{len(instances)} instances, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_3_dnf_without_negation(allen, omega3):
    rng = random.Random(20260203)
    failures = 0
    for _ in range(500):
        f = random_formula(rng, allen, VARS3, 4)
        vars = tuple(sorted(formula_variables(f)))
        omega = omega_cells(allen, len(vars)) if len(vars) < 3 else omega3
        dnf = to_dnf_wo_neg(allen, f, list(vars))
        got = set()
        for cf in dnf:
            # relation tables by construction: no connective, no negation
            assert type(cf).__name__ == "ConjunctiveFormula"
            got |= {s.cells for s in enumerate_scenarios(allen, cf).members}
        want = {cells for cells in omega if eval_formula(allen, f, vars, cells)}
        if got != want:
            failures += 1
    report(3, "negation-free DNF equivalence", failures == 0,
           f"500 formulas, {failures} failures")


def test_criterion_4_delta_is_min_over_pairs(allen, dnf_batch):
    instances, results = dnf_batch
    failures = 0
    for (psi, mu), res in zip(instances, results):
        vars = sorted(set(formula_variables(psi)) | set(formula_variables(mu)))
        if res.mu_inconsistent or res.psi_inconsistent:
            continue
        psi_dnf = to_dnf_wo_neg(allen, psi, vars)
        mu_dnf = to_dnf_wo_neg(allen, mu, vars)
        deltas = []
        for i, j in product(range(len(psi_dnf)), range(len(mu_dnf))):
            out = revise_qa(allen, psi_dnf[i], mu_dnf[j])
            if out.kind == "ok":
                deltas.append(out.delta)
        unpruned = revise(allen, psi, mu, prune=False)
        if res.delta != min(deltas) or unpruned.delta != res.delta:
            failures += 1
        elif unpruned.result_scenarios != res.result_scenarios:
            failures += 1
        elif unpruned.result_dnf != res.result_dnf:
            failures += 1
    report(4, "distance equals min over disjunct pairs", failures == 0,
           f"{len(instances)} instances, {failures} failures")


def test_criterion_5_scenario_counts(allen):
    t0 = time.monotonic()
    omega2 = enumerate_scenarios(allen, normalize(allen, [], ["X", "Y"]))
    count2_ok = len(omega2) == 13

    engine3 = len(enumerate_scenarios(allen, normalize(allen, [], VARS3)))
    brute3 = 0
    for cells in product(range(13), repeat=3):
        if realize_scenario(allen, Scenario(tuple(VARS3), cells)) is not None:
            brute3 += 1
    elapsed = time.monotonic() - t0
    ok = count2_ok and engine3 == brute3 == 409 and elapsed < 30.0
    report(5, "scenario-count fixtures", ok,
           f"|O2|={len(omega2)}, engine3={engine3}, brute3={brute3}, {elapsed:.1f}s")


def test_criterion_6_postulates(allen):
    instances = three_var_instances(20260206, 100, 3, lambda r, a, v, d: random_formula(r, a, v, d))
    failures = []
    counts = {"success": 0, "vacuity": 0, "consistency": 0, "inclusion": 0, "c-success": 0}
    for psi, mu in instances:
        vars = VARS3
        res = revise(allen, psi, mu)
        mu_models = models(allen, mu, vars)
        psi_models = models(allen, psi, vars)

        if mu_models:
            counts["success"] += 1
            if not res.result_scenarios.issubset(mu_models):
                failures.append("success")

        both = psi_models.intersection(mu_models)
        if both:
            counts["vacuity"] += 1
            if res.delta != 0 or res.result_scenarios != both:
                failures.append("vacuity")

        if mu_models and psi_models:
            counts["consistency"] += 1
            if not res.result_scenarios:
                failures.append("consistency")

        con = contract(allen, psi, mu)
        counts["inclusion"] += 1
        if not psi_models.issubset(con.result_scenarios):
            failures.append("inclusion")

        if psi_models and is_consistent(allen, Not(mu)):
            counts["c-success"] += 1
            if con.result_scenarios.issubset(mu_models):
                failures.append("c-success")

    nontrivial = all(counts[k] >= 30 for k in counts)
    report(6, "revision and contraction postulates", not failures and nontrivial,
           f"checks {counts}, failures {sorted(set(failures))}")


def test_criterion_7_algebra_laws(allen, rcc8):
    law_ok = all(ok for a in (allen, rcc8) for _, ok, _ in check_laws(a))
    comp_oracle, _, _ = three_interval_tables()
    mismatches = [
        (r.name, s.name)
        for r in allen.base_relations
        for s in allen.base_relations
        if frozenset(allen.names(compose(allen, allen.relation(r.name), allen.relation(s.name))))
        != comp_oracle[(r.name, s.name)]
    ]
    report(7, "algebra law suite", law_ok and not mismatches,
           f"law checks ok={law_ok}, composition mismatches={mismatches}")


def test_criterion_8_bound_soundness(allen, oracle_batch, dnf_batch):
    disagreements = 0
    total = 0
    for (psi, mu), res in zip(oracle_batch[0], oracle_batch[1]):
        unpruned = revise(allen, psi, mu, prune=False)
        total += 1
        if (unpruned.delta, unpruned.result_scenarios) != (res.delta, res.result_scenarios):
            disagreements += 1
    for (psi, mu), res in zip(dnf_batch[0], dnf_batch[1]):
        unpruned = revise(allen, psi, mu, prune=False)
        total += 1
        if (unpruned.delta, unpruned.result_scenarios) != (res.delta, res.result_scenarios):
            disagreements += 1
    report(8, "pruned and unpruned runs agree", disagreements == 0,
           f"{total} instances, {disagreements} disagreements")
