"""Distance-based belief revision and contraction.

The distance between two scenarios over one variable set is the sum, over
all ordered variable pairs, of the neighborhood-graph distance between their
base relations; with the shipped inverse-closed graphs every unordered pair
simply counts twice.  Revision keeps exactly the models of the new belief at
minimal distance from the models of the old belief.

``revise`` decomposes both formulas into negation-free DNF and combines the
per-disjunct revisions: the overall distance is the minimum of the pairwise
distances, and exactly the pairs attaining it contribute scenarios.  Each
pair is solved by a joint branch-and-bound over paired network refinements;
a node's lower bound sums, per unordered pair, the minimal cell distance
between the two entries, and subtrees whose bound exceeds the shared
incumbent are pruned.  Pruning is strict, so every minimizer is kept and the
result is identical with pruning disabled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import Algebra, bit_ids
from .syntax import (
    ConjunctiveFormula,
    Formula,
    Not,
    Scenario,
    formula_variables,
    to_dnf_wo_neg,
    variable_pairs,
)
from .solver import (
    ScenarioSet,
    close_matrix,
    enumerate_scenarios,
    conjunctive_of,
    has_scenario,
    matrix_of,
    models,
)


@dataclass
class SearchBound:
    """Best distance found so far, shared across pair searches (monotone)."""

    incumbent: int | float = math.inf


@dataclass(frozen=True)
class PairOutcome:
    """Result of revising one DNF disjunct pair.

    ``kind`` is ``"ok"`` (exact distance and minimizing scenarios),
    ``"pruned"`` (every branch exceeded the shared incumbent) or
    ``"empty"`` (one side has no model).  ``root_bound`` is the lower bound
    at the root of the pair's search tree.
    """

    kind: str
    delta: int | None = None
    scenarios: frozenset[tuple[int, ...]] = frozenset()
    root_bound: int | None = None


@dataclass(frozen=True)
class RevisionResult:
    delta: int | None
    result_scenarios: ScenarioSet
    result_dnf: tuple[ConjunctiveFormula, ...]
    pair_report: tuple[tuple[int, int, int, bool], ...]
    psi_inconsistent: bool = False
    mu_inconsistent: bool = False


def scenario_distance(a: Algebra, s: Scenario, t: Scenario) -> int:
    """Sum over ordered variable pairs of the base-relation distance."""
    if s.variables != t.variables:
        raise ValueError("scenarios over different variable tuples")
    cell = a.cell_distance
    return sum(cell(sc, tc) for sc, tc in zip(s.cells, t.cells))


def set_distance(a: Algebra, S: ScenarioSet, t: Scenario) -> int:
    """Distance from a nonempty scenario set to a scenario (min extension)."""
    if not S:
        raise ValueError("set_distance over an empty scenario set")
    if S.variables != t.variables:
        raise ValueError("scenario set and scenario over different variable tuples")
    cell = a.cell_distance
    tc = t.cells
    return min(sum(cell(x, y) for x, y in zip(s.cells, tc)) for s in S.members)


def revise_qa(
    a: Algebra,
    psi: ConjunctiveFormula,
    mu: ConjunctiveFormula,
    bound: SearchBound | None = None,
    check_bounds: bool = False,
) -> PairOutcome:
    """Revise one conjunctive formula by another (joint branch-and-bound).

    Returns the pair distance and every scenario of ``mu`` attaining it.
    With ``bound``, subtrees whose lower bound strictly exceeds
    ``bound.incumbent`` are pruned and the incumbent is lowered on success;
    a search that only met pruned branches reports ``"pruned"``.
    ``check_bounds`` disables pruning and asserts admissibility of every
    node bound against the exact minimum of its subtree (for tests).
    """
    if psi.variables != mu.variables:
        raise ValueError("formulas over different variable tuples")
    vars = psi.variables
    pairs = variable_pairs(len(vars))

    pmat = matrix_of(a, psi)
    mmat = matrix_of(a, mu)
    if not close_matrix(a, pmat) or not close_matrix(a, mmat):
        return PairOutcome("empty")

    min_cell = a.min_cell_distance
    root_bound = sum(min_cell(pmat[i][j], mmat[i][j]) for i, j in pairs)

    # zero-distance shortcut: a common scenario exists iff the conjunction
    # has one, and then the minimizers are exactly the common scenarios
    both = [
        [pmat[i][j] & mmat[i][j] if i != j else pmat[i][j] for j in range(len(vars))]
        for i in range(len(vars))
    ]
    if close_matrix(a, both):
        common = enumerate_scenarios(a, conjunctive_of(vars, both))
        if common:
            if bound is not None:
                bound.incumbent = min(bound.incumbent, 0)
            return PairOutcome(
                "ok",
                0,
                frozenset(s.cells for s in common.members),
                root_bound,
            )

    best: int | float = math.inf
    best_taus: set[tuple[int, ...]] = set()
    shared_pruned = False

    def search(pm, mm):
        nonlocal best, best_taus, shared_pruned
        lb = sum(min_cell(pm[i][j], mm[i][j]) for i, j in pairs)
        if check_bounds:
            limit = math.inf
        else:
            limit = best if bound is None else min(best, bound.incumbent)
        if lb > limit:
            if bound is not None and lb > bound.incumbent:
                shared_pruned = True
            return None

        # smallest open cell over both networks, psi side first
        cell = None
        cell_size = 0
        for side, mat in ((0, pm), (1, mm)):
            for i, j in pairs:
                size = mat[i][j].bit_count()
                if size > 1 and (cell is None or size < cell_size):
                    cell = (side, i, j)
                    cell_size = size
        if cell is None:
            d = lb  # all cells atomic: the bound is the exact distance
            if not check_bounds or d <= limit:
                if d < best:
                    best = d
                    best_taus = {tuple(mm[i][j] for i, j in pairs)}
                elif d == best:
                    best_taus.add(tuple(mm[i][j] for i, j in pairs))
            return d

        side, i, j = cell
        parent = pm if side == 0 else mm
        subtree_min = None
        for b in bit_ids(parent[i][j]):
            child = [row[:] for row in parent]
            child[i][j] = 1 << b
            child[j][i] = 1 << a._inv[b]
            if not close_matrix(a, child):
                continue
            got = search(child, mm) if side == 0 else search(pm, child)
            if got is not None and (subtree_min is None or got < subtree_min):
                subtree_min = got
        if check_bounds and subtree_min is not None:
            assert lb <= subtree_min, f"inadmissible bound {lb} > {subtree_min}"
        return subtree_min

    search(pmat, mmat)

    if best is math.inf:
        if shared_pruned:
            return PairOutcome("pruned", None, frozenset(), root_bound)
        return PairOutcome("empty", root_bound=root_bound)
    if bound is not None:
        bound.incumbent = min(bound.incumbent, best)
    return PairOutcome(
        "ok",
        int(best),
        frozenset(tuple(c.bit_length() - 1 for c in cells) for cells in best_taus),
        root_bound,
    )


def _scenario_set(vars, cell_tuples) -> ScenarioSet:
    return ScenarioSet(
        tuple(vars), frozenset(Scenario(tuple(vars), c) for c in cell_tuples)
    )


def revise(
    a: Algebra,
    psi: Formula,
    mu: Formula,
    prune: bool = True,
    check_bounds: bool = False,
) -> RevisionResult:
    """Distance-based revision of ``psi`` by ``mu`` in the closure language.

    Both formulas are put in negation-free DNF over the union of their
    variables; the pairwise revisions share one incumbent (visited in
    ascending order of their root bound) and exactly the pairs at the
    minimal distance contribute scenarios.  Pairs that were pruned but whose
    root bound does not exceed the final distance are re-run against it.

    An inconsistent ``mu`` yields the flagged inconsistent result; an
    inconsistent ``psi`` yields ``mu`` itself at distance 0, flagged.
    """
    vars = sorted(set(formula_variables(psi)) | set(formula_variables(mu)))
    psi_dnf = to_dnf_wo_neg(a, psi, vars)
    mu_dnf = to_dnf_wo_neg(a, mu, vars)

    psi_live = [i for i, cf in enumerate(psi_dnf) if has_scenario(a, cf)]
    mu_live = [j for j, cf in enumerate(mu_dnf) if has_scenario(a, cf)]

    empty = ScenarioSet(tuple(vars), frozenset())
    if not mu_live:
        return RevisionResult(None, empty, (), (), mu_inconsistent=True)
    if not psi_live:
        members = frozenset().union(
            *(enumerate_scenarios(a, mu_dnf[j]).members for j in mu_live)
        )
        result = ScenarioSet(tuple(vars), members)
        return RevisionResult(
            0, result, tuple(compact_dnf(a, result)), (), psi_inconsistent=True
        )

    # root bounds order the pairs so a low incumbent is found early
    min_cell = a.min_cell_distance
    pairs_of_vars = variable_pairs(len(vars))
    closed = {}
    for which, dnf, live in (("p", psi_dnf, psi_live), ("m", mu_dnf, mu_live)):
        for idx in live:
            mat = matrix_of(a, dnf[idx])
            close_matrix(a, mat)
            closed[(which, idx)] = mat

    order = sorted(
        (
            (
                sum(
                    min_cell(closed[("p", i)][x][y], closed[("m", j)][x][y])
                    for x, y in pairs_of_vars
                ),
                i,
                j,
            )
            for i in psi_live
            for j in mu_live
        )
    )

    bound = SearchBound() if prune else None
    outcomes: dict[tuple[int, int], PairOutcome] = {}
    for _, i, j in order:
        outcomes[(i, j)] = revise_qa(
            a, psi_dnf[i], mu_dnf[j], bound, check_bounds=check_bounds
        )

    deltas = [out.delta for out in outcomes.values() if out.kind == "ok"]
    delta = min(deltas)

    # a pruned pair can only matter if its root bound reaches the final
    # distance; re-running it against that fixed incumbent settles it
    for (i, j), out in list(outcomes.items()):
        if out.kind == "pruned" and out.root_bound is not None and out.root_bound <= delta:
            outcomes[(i, j)] = revise_qa(a, psi_dnf[i], mu_dnf[j], SearchBound(delta))

    members: frozenset[tuple[int, ...]] = frozenset()
    report = []
    for (i, j) in sorted(outcomes):
        out = outcomes[(i, j)]
        if out.kind == "ok":
            report.append((i, j, out.delta, False))
            if out.delta == delta:
                members |= out.scenarios
        elif out.kind == "pruned":
            report.append((i, j, out.root_bound, True))

    result = _scenario_set(vars, members)
    return RevisionResult(delta, result, tuple(compact_dnf(a, result)), tuple(report))


def contract(
    a: Algebra,
    psi: Formula,
    mu: Formula,
    prune: bool = True,
) -> RevisionResult:
    """Contraction via the Harper identity: keep ``psi`` or revise it by ``!mu``.

    When ``mu`` is tautologous its negation has no models and the result is
    ``psi`` unchanged, flagged through ``mu_inconsistent`` (a tautology
    cannot be contracted).
    """
    vars = sorted(set(formula_variables(psi)) | set(formula_variables(mu)))
    rev = revise(a, psi, Not(mu), prune=prune)
    psi_models = models(a, psi, vars)
    union = psi_models if rev.mu_inconsistent else psi_models.union(rev.result_scenarios)
    return RevisionResult(
        rev.delta,
        union,
        tuple(compact_dnf(a, union)),
        rev.pair_report,
        psi_inconsistent=rev.psi_inconsistent,
        mu_inconsistent=rev.mu_inconsistent,
    )


def compact_dnf(a: Algebra, S: ScenarioSet) -> list[ConjunctiveFormula]:
    """Merge scenarios into fewer disjuncts with exactly the same model set.

    Conjunctive formulas identical on all but one unordered pair are fused
    by taking the union on that pair, repeatedly until stable.  Greedy and
    canonical, not minimal.
    """
    npairs = len(variable_pairs(len(S.variables)))
    work = {tuple(1 << c for c in s.cells) for s in S.members}
    changed = True
    while changed and npairs:
        changed = False
        for p in range(npairs):
            buckets: dict[tuple[int, ...], int] = {}
            for cells in work:
                key = cells[:p] + cells[p + 1 :]
                buckets[key] = buckets.get(key, 0) | cells[p]
            merged = {
                key[:p] + (mask,) + key[p:] for key, mask in buckets.items()
            }
            if len(merged) < len(work):
                changed = True
            work = merged
    return [ConjunctiveFormula(S.variables, cells) for cells in sorted(work)]
