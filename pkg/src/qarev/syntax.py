"""Formulas of the propositional closure: parsing, printing and normal forms.

Variables are plain strings.  A constraint ``x {r1,r2} y`` relates two
distinct variables by a union of base relations; formulas close constraints
under ``!`` (negation), ``&`` and ``|`` with the usual precedence
``!`` > ``&`` > ``|``.  ``#`` starts a line comment.

A :class:`ConjunctiveFormula` is the per-pair normal form: exactly one
relation per unordered variable pair (the mirrored direction is implied by
inverse coherence).  A :class:`Scenario` is a conjunctive formula whose
entries are all single base relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, Relation


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, filename: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.filename = filename
        where = f"{filename}:" if filename else ""
        super().__init__(f"{where}line {line}, column {column}: {message}")


# -- formula trees -----------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    left: str
    rel: Relation
    right: str


@dataclass(frozen=True)
class Atom:
    constraint: Constraint


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    children: tuple["Formula", ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("And needs at least one child")


@dataclass(frozen=True)
class Or:
    children: tuple["Formula", ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("Or needs at least one child")


Formula = Atom | Not | And | Or


def formula_variables(f: Formula) -> tuple[str, ...]:
    """All variables of a formula, sorted by name."""
    seen: set[str] = set()

    def walk(node):
        if isinstance(node, Atom):
            seen.add(node.constraint.left)
            seen.add(node.constraint.right)
        elif isinstance(node, Not):
            walk(node.child)
        else:
            for c in node.children:
                walk(c)

    walk(f)
    return tuple(sorted(seen))


# -- parser ------------------------------------------------------------------

_PUNCT = {"{", "}", "(", ")", ",", "&", "|", "!"}


def _tokenize(text: str, filename=None):
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _PUNCT:
            tokens.append((ch, ch, line, col))
            col += 1
            i += 1
        elif "a" <= ch <= "z" or "A" <= ch <= "Z" or ch == "_":
            start = i
            while i < n and (
                "a" <= text[i] <= "z"
                or "A" <= text[i] <= "Z"
                or "0" <= text[i] <= "9"
                or text[i] == "_"
            ):
                i += 1
            word = text[start:i]
            tokens.append(("IDENT", word, line, col))
            col += i - start
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col, filename)
    tokens.append(("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, algebra: Algebra, text: str, filename=None):
        self.algebra = algebra
        self.filename = filename
        self.tokens = _tokenize(text, filename)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            got = tok[1] or "end of input"
            self.fail(f"expected {kind!r}, found {got!r}", tok)
        self.pos += 1
        return tok

    def fail(self, message, tok):
        raise ParseError(message, tok[2], tok[3], self.filename)

    def parse(self) -> Formula:
        f = self.disj()
        tok = self.peek()
        if tok[0] != "EOF":
            self.fail(f"unexpected {tok[1]!r} after formula", tok)
        return f

    def disj(self) -> Formula:
        items = [self.conj()]
        while self.peek()[0] == "|":
            self.take("|")
            items.append(self.conj())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj(self) -> Formula:
        items = [self.unary()]
        while self.peek()[0] == "&":
            self.take("&")
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self) -> Formula:
        tok = self.peek()
        if tok[0] == "!":
            self.take("!")
            return Not(self.unary())
        if tok[0] == "(":
            self.take("(")
            f = self.disj()
            self.take(")")
            return f
        return Atom(self.constraint())

    def constraint(self) -> Constraint:
        left = self.take("IDENT")
        self.take("{")
        mask = 0
        while True:
            tok = self.take("IDENT")
            if not self.algebra.has_relation(tok[1]):
                self.fail(f"unknown relation name {tok[1]!r}", tok)
            mask |= 1 << self.algebra.base(tok[1]).id
            nxt = self.peek()
            if nxt[0] == ",":
                self.take(",")
                continue
            if nxt[0] == "}":
                self.take("}")
                break
            self.fail(f"expected ',' or '}}' inside relation set, found {nxt[1]!r}", nxt)
        right = self.take("IDENT")
        if left[1] == right[1]:
            self.fail(f"self-constraint on variable {left[1]!r}", right)
        return Constraint(left[1], Relation(mask), right[1])


def parse(a: Algebra, text: str, filename: str | None = None) -> Formula:
    """Parse a formula; raises :class:`ParseError` with line/column on errors."""
    return _Parser(a, text, filename).parse()


# -- printing ----------------------------------------------------------------

def format_constraint(a: Algebra, c: Constraint) -> str:
    return f"{c.left} {{{','.join(a.names(c.rel))}}} {c.right}"


def format_formula(a: Algebra, f: Formula) -> str:
    """Render a formula in the input grammar (relation names in table order)."""
    if isinstance(f, Atom):
        return format_constraint(a, f.constraint)
    if isinstance(f, Not):
        body = format_formula(a, f.child)
        if isinstance(f.child, (And, Or)):
            return f"!({body})"
        return f"!{body}"
    if isinstance(f, And):
        parts = [
            f"({format_formula(a, c)})" if isinstance(c, (And, Or)) else format_formula(a, c)
            for c in f.children
        ]
        return " & ".join(parts)
    parts = [
        f"({format_formula(a, c)})" if isinstance(c, Or) else format_formula(a, c)
        for c in f.children
    ]
    return " | ".join(parts)


# -- conjunctive normal-form networks ----------------------------------------

@lru_cache(maxsize=None)
def variable_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Canonical unordered-pair order for ``n`` variables: (0,1), (0,2), ..."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class ConjunctiveFormula:
    """One relation per unordered variable pair, inverse-coherent.

    ``cells[k]`` is the relation bitmask for ``variable_pairs(n)[k]`` read in
    the (earlier, later) direction; the mirrored entry is its inverse.
    """

    variables: tuple[str, ...]
    cells: tuple[int, ...]

    def rel_of(self, a: Algebra, x: str, y: str) -> Relation:
        i, j = self.variables.index(x), self.variables.index(y)
        if i == j:
            raise ValueError("rel_of needs two distinct variables")
        pairs = variable_pairs(len(self.variables))
        if i < j:
            return Relation(self.cells[pairs.index((i, j))])
        return Relation(a.invert_mask(self.cells[pairs.index((j, i))]))

    @property
    def has_empty_cell(self) -> bool:
        return any(c == 0 for c in self.cells)

    def is_scenario(self) -> bool:
        return all(c != 0 and c & (c - 1) == 0 for c in self.cells)

    def as_scenario(self) -> "Scenario":
        if not self.is_scenario():
            raise ValueError("not an atomic network")
        return Scenario(self.variables, tuple(c.bit_length() - 1 for c in self.cells))


@dataclass(frozen=True)
class Scenario:
    """An atomic network: one base-relation id per unordered variable pair."""

    variables: tuple[str, ...]
    cells: tuple[int, ...]

    def rel_id(self, x: str, y: str, a: Algebra | None = None) -> int:
        i, j = self.variables.index(x), self.variables.index(y)
        pairs = variable_pairs(len(self.variables))
        if i < j:
            return self.cells[pairs.index((i, j))]
        if a is None:
            raise ValueError("mirrored lookup needs the algebra")
        return a._inv[self.cells[pairs.index((j, i))]]

    def to_conjunctive(self) -> ConjunctiveFormula:
        return ConjunctiveFormula(self.variables, tuple(1 << c for c in self.cells))

    def format(self, a: Algebra) -> str:
        pairs = variable_pairs(len(self.variables))
        names = [b.name for b in a.base_relations]
        return "; ".join(
            f"{self.variables[i]} {names[self.cells[k]]} {self.variables[j]}"
            for k, (i, j) in enumerate(pairs)
        )


def negate_atom(a: Algebra, c: Constraint) -> Constraint:
    """Complement the relation within the base set; an involution."""
    return Constraint(c.left, a.complement(c.rel), c.right)


def normalize(a: Algebra, constraints: list[Constraint], vars: list[str]) -> ConjunctiveFormula:
    """Complete constraints to the per-pair normal form over ``vars``.

    Unconstrained pairs become universal, repeated constraints on one ordered
    pair are intersected, and each entry is intersected with the inverse of
    its mirror so the result is inverse-coherent.  An empty entry marks the
    network syntactically inconsistent; it is not an error.
    """
    order = list(vars)
    if len(set(order)) != len(order):
        raise ValueError("duplicate variable in vars")
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    full = a.universal.bits
    mat = [[full] * n for _ in range(n)]
    for c in constraints:
        if c.left not in index or c.right not in index:
            raise ValueError(f"constraint variables {c.left!r}/{c.right!r} not in vars")
        if c.left == c.right:
            raise ValueError("self-constraint")
        i, j = index[c.left], index[c.right]
        mat[i][j] &= c.rel.bits
    cells = []
    for i, j in variable_pairs(n):
        cells.append(mat[i][j] & a.invert_mask(mat[j][i]))
    return ConjunctiveFormula(tuple(order), tuple(cells))


# -- DNF without negation ----------------------------------------------------

def _push_negations(a: Algebra, f: Formula, negated: bool) -> Formula:
    if isinstance(f, Atom):
        return Atom(negate_atom(a, f.constraint)) if negated else f
    if isinstance(f, Not):
        return _push_negations(a, f.child, not negated)
    children = tuple(_push_negations(a, c, negated) for c in f.children)
    if isinstance(f, And):
        return Or(children) if negated else And(children)
    return And(children) if negated else Or(children)


def _disjuncts(f: Formula) -> list[tuple[Constraint, ...]]:
    if isinstance(f, Atom):
        return [(f.constraint,)]
    if isinstance(f, Or):
        out = []
        for c in f.children:
            out.extend(_disjuncts(c))
        return out
    # And: distribute over the disjunctions of the children
    acc: list[tuple[Constraint, ...]] = [()]
    for child in f.children:
        parts = _disjuncts(child)
        acc = [left + right for left in acc for right in parts]
    return acc


def to_dnf_wo_neg(
    a: Algebra,
    f: Formula,
    vars: list[str] | None = None,
    drop_inconsistent: bool = True,
) -> list[ConjunctiveFormula]:
    """Equivalent negation-free DNF as normalized conjunctive formulas.

    Negations are pushed to the atoms and eliminated by relation complement,
    conjunction is distributed over disjunction, and every disjunct is
    normalized over ``vars`` (default: the formula's variables).  Disjuncts
    with an empty entry are dropped; with ``drop_inconsistent`` (default)
    disjuncts refuted by algebraic closure are dropped as well, which cannot
    change the model set.
    """
    if vars is None:
        vars = list(formula_variables(f))
    nnf = _push_negations(a, f, False)
    out: list[ConjunctiveFormula] = []
    seen: set[tuple[int, ...]] = set()
    if drop_inconsistent:
        from .solver import algebraic_closure
    for conj in _disjuncts(nnf):
        cf = normalize(a, list(conj), vars)
        if cf.has_empty_cell or cf.cells in seen:
            continue
        seen.add(cf.cells)
        if drop_inconsistent and algebraic_closure(a, cf) is None:
            continue
        out.append(cf)
    return out


def format_conjunctive(a: Algebra, cf: ConjunctiveFormula) -> str:
    """Render a conjunctive formula, omitting universal entries when possible."""
    n = len(cf.variables)
    parts = []
    for k, (i, j) in enumerate(variable_pairs(n)):
        if cf.cells[k] != a.universal.bits:
            names = ",".join(a.names(Relation(cf.cells[k])))
            parts.append(f"{cf.variables[i]} {{{names}}} {cf.variables[j]}")
    if not parts:
        i, j = variable_pairs(n)[0]
        names = ",".join(a.names(a.universal))
        parts.append(f"{cf.variables[i]} {{{names}}} {cf.variables[j]}")
    return " & ".join(parts)
