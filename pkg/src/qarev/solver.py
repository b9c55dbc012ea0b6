"""Consistency, scenario enumeration, model sets and the interval oracle.

The model set of a formula is the set of consistent scenarios over its
variables that entail it.  Enumeration is backtracking search interleaved
with algebraic closure (path consistency); a closed atomic network is taken
as consistent, which is exact for the shipped Allen and RCC8 tables and
means "closure-consistent" for user-loaded algebras.  For Allen,
:func:`realize_scenario` independently decides atomic networks by solving
the induced endpoint point-order problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra, bit_ids
from .syntax import (
    And,
    Atom,
    ConjunctiveFormula,
    Formula,
    Not,
    Or,
    Scenario,
    formula_variables,
    to_dnf_wo_neg,
    variable_pairs,
)


@dataclass(frozen=True)
class ScenarioSet:
    """A set of consistent scenarios sharing one variable tuple.

    Iteration order is canonical (lexicographic on base-relation ids), so
    equal sets render identically.
    """

    variables: tuple[str, ...]
    members: frozenset[Scenario]

    @classmethod
    def of(cls, variables, members) -> "ScenarioSet":
        return cls(tuple(variables), frozenset(members))

    def __iter__(self):
        return iter(sorted(self.members, key=lambda s: s.cells))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, s: Scenario) -> bool:
        return s in self.members

    def __bool__(self) -> bool:
        return bool(self.members)

    def _check_same_vars(self, other: "ScenarioSet"):
        if self.variables != other.variables:
            raise ValueError("scenario sets over different variable tuples")

    def union(self, other: "ScenarioSet") -> "ScenarioSet":
        self._check_same_vars(other)
        return ScenarioSet(self.variables, self.members | other.members)

    def intersection(self, other: "ScenarioSet") -> "ScenarioSet":
        self._check_same_vars(other)
        return ScenarioSet(self.variables, self.members & other.members)

    def difference(self, other: "ScenarioSet") -> "ScenarioSet":
        self._check_same_vars(other)
        return ScenarioSet(self.variables, self.members - other.members)

    def issubset(self, other: "ScenarioSet") -> bool:
        self._check_same_vars(other)
        return self.members <= other.members

    def format_lines(self, a: Algebra) -> list[str]:
        return [s.format(a) for s in self]


# -- constraint-network core -------------------------------------------------

def matrix_of(a: Algebra, cf: ConjunctiveFormula) -> list[list[int]]:
    """Full n x n bitmask matrix (both directions, identity diagonal)."""
    n = len(cf.variables)
    ident = 1 << a.identity.id
    mat = [[ident] * n for _ in range(n)]
    for k, (i, j) in enumerate(variable_pairs(n)):
        mat[i][j] = cf.cells[k]
        mat[j][i] = a.invert_mask(cf.cells[k])
    return mat


def conjunctive_of(vars: tuple[str, ...], mat: list[list[int]]) -> ConjunctiveFormula:
    return ConjunctiveFormula(
        vars, tuple(mat[i][j] for i, j in variable_pairs(len(vars)))
    )


def close_matrix(a: Algebra, mat: list[list[int]]) -> bool:
    """Refine to the path-consistency fixpoint in place; False on emptiness."""
    n = len(mat)
    if n < 2:
        return True
    compose_mask = a.compose_mask
    invert_mask = a.invert_mask
    pairs = variable_pairs(n)
    for i, j in pairs:
        if mat[i][j] == 0:
            return False
    changed = True
    while changed:
        changed = False
        for i, j in pairs:
            m = mat[i][j]
            row_i = mat[i]
            for k in range(n):
                if k != i and k != j:
                    m &= compose_mask(row_i[k], mat[k][j])
            if m != mat[i][j]:
                if m == 0:
                    return False
                mat[i][j] = m
                mat[j][i] = invert_mask(m)
                changed = True
    return True


def algebraic_closure(a: Algebra, cf: ConjunctiveFormula) -> ConjunctiveFormula | None:
    """Path-consistency closure; ``None`` signals inconsistency.

    The closure never removes a model: the result has the same model set as
    the input whenever it exists.
    """
    mat = matrix_of(a, cf)
    if not close_matrix(a, mat):
        return None
    return conjunctive_of(cf.variables, mat)


def _branch_cell(mat: list[list[int]], pairs) -> tuple[int, int] | None:
    best = None
    best_size = 0
    for i, j in pairs:
        size = mat[i][j].bit_count()
        if size > 1 and (best is None or size < best_size):
            best, best_size = (i, j), size
    return best


def _search(a: Algebra, mat: list[list[int]], pairs, out: list, first_only: bool) -> bool:
    """Depth-first refinement to atomic networks; returns True when cut short."""
    if not close_matrix(a, mat):
        return False
    cell = _branch_cell(mat, pairs)
    if cell is None:
        out.append(tuple(mat[i][j] for i, j in pairs))
        return first_only
    i, j = cell
    for b in bit_ids(mat[i][j]):
        child = [row[:] for row in mat]
        child[i][j] = 1 << b
        child[j][i] = 1 << a._inv[b]
        if _search(a, child, pairs, out, first_only):
            return True
    return False


def enumerate_scenarios(a: Algebra, cf: ConjunctiveFormula) -> ScenarioSet:
    """All consistent scenarios entailing ``cf`` (smallest-domain-first search)."""
    pairs = variable_pairs(len(cf.variables))
    leaves: list[tuple[int, ...]] = []
    _search(a, matrix_of(a, cf), pairs, leaves, first_only=False)
    members = {
        Scenario(cf.variables, tuple(c.bit_length() - 1 for c in cells))
        for cells in leaves
    }
    return ScenarioSet(cf.variables, frozenset(members))


def has_scenario(a: Algebra, cf: ConjunctiveFormula) -> bool:
    """Whether at least one consistent scenario entails ``cf``."""
    pairs = variable_pairs(len(cf.variables))
    leaves: list[tuple[int, ...]] = []
    _search(a, matrix_of(a, cf), pairs, leaves, first_only=True)
    return bool(leaves)


def models(a: Algebra, f: Formula, vars: list[str] | None = None) -> ScenarioSet:
    """The model set of a closure formula over ``vars`` (default: its variables)."""
    if vars is None:
        vars = list(formula_variables(f))
    members: set[Scenario] = set()
    for cf in to_dnf_wo_neg(a, f, vars):
        members |= enumerate_scenarios(a, cf).members
    return ScenarioSet(tuple(vars), frozenset(members))


def is_consistent(a: Algebra, f: Formula) -> bool:
    """Whether the formula has at least one model."""
    vars = list(formula_variables(f))
    return any(has_scenario(a, cf) for cf in to_dnf_wo_neg(a, f, vars))


def entails(a: Algebra, f: Formula, g: Formula, vars: list[str] | None = None) -> bool:
    """Model-set inclusion over a common variable tuple."""
    if vars is None:
        vars = sorted(set(formula_variables(f)) | set(formula_variables(g)))
    return models(a, f, vars).issubset(models(a, g, vars))


# -- Allen realization oracle --------------------------------------------------

@dataclass
class Realization:
    """Concrete rational endpoints witnessing an atomic Allen network."""

    endpoints: dict[str, tuple[int, int]] = field(default_factory=dict)

    def format(self) -> str:
        return " ".join(
            f"{v}=[{lo},{hi}]" for v, (lo, hi) in sorted(self.endpoints.items())
        )


# endpoint constraints per base relation, as (point of x, op, point of y)
# with points "l"/"h" (interval start/end) and op "<" or "="
_ALLEN_POINTS = {
    "b": [("h", "<", "l'")],
    "m": [("h", "=", "l'")],
    "o": [("l", "<", "l'"), ("l'", "<", "h"), ("h", "<", "h'")],
    "s": [("l", "=", "l'"), ("h", "<", "h'")],
    "d": [("l'", "<", "l"), ("h", "<", "h'")],
    "f": [("h", "=", "h'"), ("l'", "<", "l")],
    "eq": [("l", "=", "l'"), ("h", "=", "h'")],
    "bi": [("h'", "<", "l")],
    "mi": [("h'", "=", "l")],
    "oi": [("l'", "<", "l"), ("l", "<", "h'"), ("h'", "<", "h")],
    "si": [("l", "=", "l'"), ("h'", "<", "h")],
    "di": [("l", "<", "l'"), ("h'", "<", "h")],
    "fi": [("h", "=", "h'"), ("l", "<", "l'")],
}


def realize_scenario(a: Algebra, s: Scenario) -> Realization | None:
    """Integer endpoints satisfying every constraint of an atomic Allen network.

    Collapses endpoint equality classes with union-find, then topologically
    orders the strict precedences; a cycle (or a strict edge inside one
    class) means the scenario is unrealizable and ``None`` is returned.
    Only defined for the Allen algebra.
    """
    if not a.is_allen:
        raise ValueError("realization oracle is only defined for the Allen algebra")

    vars = s.variables
    n = len(vars)
    # point ids: 2k for lo(vars[k]), 2k+1 for hi(vars[k])
    parent = list(range(2 * n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u, v):
        parent[find(u)] = find(v)

    strict: list[tuple[int, int]] = [(2 * k, 2 * k + 1) for k in range(n)]
    names = [b.name for b in a.base_relations]
    for k, (i, j) in enumerate(variable_pairs(n)):
        points = {"l": 2 * i, "h": 2 * i + 1, "l'": 2 * j, "h'": 2 * j + 1}
        for pa, op, pb in _ALLEN_POINTS[names[s.cells[k]]]:
            if op == "=":
                union(points[pa], points[pb])
            else:
                strict.append((points[pa], points[pb]))

    succ: dict[int, set[int]] = {}
    indeg: dict[int, int] = {}
    nodes = {find(u) for u in range(2 * n)}
    for u in nodes:
        succ[u] = set()
        indeg[u] = 0
    for u, v in strict:
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        if rv not in succ[ru]:
            succ[ru].add(rv)
            indeg[rv] += 1

    # Kahn levels: each node one past the max of its predecessors
    level = {u: 0 for u in nodes}
    ready = [u for u in nodes if indeg[u] == 0]
    seen = 0
    while ready:
        u = min(ready)
        ready.remove(u)
        seen += 1
        for v in succ[u]:
            level[v] = max(level[v], level[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    if seen != len(nodes):
        return None

    endpoints = {
        vars[k]: (level[find(2 * k)], level[find(2 * k + 1)]) for k in range(n)
    }
    return Realization(endpoints)
