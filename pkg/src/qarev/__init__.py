"""Exact reasoning for the propositional closure of qualitative algebras.

Consistency checking, scenario enumeration, distance-based belief revision
and Harper-identity contraction, with the Allen interval algebra as the
fully supported reference algebra and RCC8 shipped alongside.
"""

from .algebra import (
    Algebra,
    AlgebraFormatError,
    AlgebraLawError,
    BaseRelation,
    BUILTIN_ALGEBRAS,
    Relation,
    builtin_algebra,
    check_laws,
    compose,
    inverse_rel,
    load_algebra,
    load_algebra_file,
    rel_distance,
    serialize_algebra,
)
from .syntax import (
    And,
    Atom,
    ConjunctiveFormula,
    Constraint,
    Formula,
    Not,
    Or,
    ParseError,
    Scenario,
    format_conjunctive,
    format_formula,
    formula_variables,
    negate_atom,
    normalize,
    parse,
    to_dnf_wo_neg,
)
from .solver import (
    Realization,
    ScenarioSet,
    algebraic_closure,
    entails,
    enumerate_scenarios,
    has_scenario,
    is_consistent,
    models,
    realize_scenario,
)
from .revision import (
    PairOutcome,
    RevisionResult,
    SearchBound,
    compact_dnf,
    contract,
    revise,
    revise_qa,
    scenario_distance,
    set_distance,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraFormatError",
    "AlgebraLawError",
    "And",
    "Atom",
    "BaseRelation",
    "BUILTIN_ALGEBRAS",
    "ConjunctiveFormula",
    "Constraint",
    "Formula",
    "Not",
    "Or",
    "PairOutcome",
    "ParseError",
    "Realization",
    "Relation",
    "RevisionResult",
    "Scenario",
    "ScenarioSet",
    "SearchBound",
    "algebraic_closure",
    "builtin_algebra",
    "check_laws",
    "compact_dnf",
    "compose",
    "contract",
    "entails",
    "enumerate_scenarios",
    "format_conjunctive",
    "format_formula",
    "formula_variables",
    "has_scenario",
    "inverse_rel",
    "is_consistent",
    "load_algebra",
    "load_algebra_file",
    "models",
    "negate_atom",
    "normalize",
    "parse",
    "realize_scenario",
    "rel_distance",
    "revise",
    "revise_qa",
    "scenario_distance",
    "serialize_algebra",
    "set_distance",
    "to_dnf_wo_neg",
]
