"""Qualitative algebras: base relations, relation bitsets, tables and distances.

An :class:`Algebra` bundles a finite set of base relations with an inverse
table, a weak-composition table, an identity relation and an undirected
neighborhood graph.  Relations (unions of base relations) are encoded as
bitmasks over base-relation ids, so union/intersection/complement are single
word operations.  The base-relation distance is the shortest-path length in
the neighborhood graph, precomputed by BFS at load time.

Algebras are immutable after construction and may be shared freely between
threads; the internal memo caches are append-only.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from importlib import resources

MAX_BASE_RELATIONS = 64

BUILTIN_ALGEBRAS = ("allen", "rcc8")

_ALLEN_NAMES = frozenset(
    ["b", "m", "o", "s", "d", "f", "eq", "bi", "mi", "oi", "si", "di", "fi"]
)


class AlgebraFormatError(ValueError):
    """The algebra document is malformed: bad syntax, schema or references."""


class AlgebraLawError(ValueError):
    """The algebra tables violate a required law (involution, identity, ...)."""


@dataclass(frozen=True)
class BaseRelation:
    """A single indivisible relation symbol with its index in the algebra."""

    id: int
    name: str


@dataclass(frozen=True)
class Relation:
    """A set of base relations encoded as a bitmask over base ids.

    The empty relation (``bits == 0``) denotes an unsatisfiable constraint;
    membership ids are meaningful only relative to the owning algebra.
    """

    bits: int

    def __or__(self, other: "Relation") -> "Relation":
        return Relation(self.bits | other.bits)

    def __and__(self, other: "Relation") -> "Relation":
        return Relation(self.bits & other.bits)

    def __sub__(self, other: "Relation") -> "Relation":
        return Relation(self.bits & ~other.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, base) -> bool:
        bid = base.id if isinstance(base, BaseRelation) else int(base)
        return bool(self.bits >> bid & 1)

    def ids(self) -> tuple[int, ...]:
        return tuple(bit_ids(self.bits))

    def issubset(self, other: "Relation") -> bool:
        return self.bits & ~other.bits == 0


def bit_ids(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Algebra:
    """A validated qualitative algebra.

    Use :func:`load_algebra` / :func:`builtin_algebra` to obtain instances;
    the constructor checks every structural law and raises
    :class:`AlgebraLawError` on violation.
    """

    def __init__(
        self,
        name: str,
        relation_names: list[str],
        identity_name: str,
        inverse_names: dict[str, str],
        composition_names: dict[str, dict[str, list[str]]],
        neighborhood: list[tuple[str, str]],
    ):
        if not isinstance(name, str) or not name:
            raise AlgebraFormatError("algebra name must be a nonempty string")
        n = len(relation_names)
        if n < 2:
            raise AlgebraFormatError("an algebra needs at least 2 base relations")
        if n > MAX_BASE_RELATIONS:
            raise AlgebraFormatError(
                f"too many base relations ({n}); at most {MAX_BASE_RELATIONS} supported"
            )
        if len(set(relation_names)) != n:
            raise AlgebraFormatError("duplicate relation name")

        self.name = name
        self.base_relations = tuple(
            BaseRelation(i, nm) for i, nm in enumerate(relation_names)
        )
        self._id_of = {nm: i for i, nm in enumerate(relation_names)}
        self.universal = Relation((1 << n) - 1)
        self.empty = Relation(0)

        def rel_id(nm, where):
            try:
                return self._id_of[nm]
            except KeyError:
                raise AlgebraFormatError(
                    f"unknown relation name {nm!r} in {where}"
                ) from None

        self.identity = self.base_relations[rel_id(identity_name, "identity")]
        self._inv_mask_cache: dict[int, int] = {}
        self._compose_cache: dict[tuple[int, int], int] = {}
        self._min_pair_cache: dict[tuple[int, int], int] = {}

        # inverse table: total and an involution
        if set(inverse_names) != set(relation_names):
            raise AlgebraFormatError("inverse table is not total over the relations")
        inv = [0] * n
        for nm, inm in inverse_names.items():
            inv[rel_id(nm, "inverse")] = rel_id(inm, "inverse")
        self._inv = tuple(inv)
        for i in range(n):
            if inv[inv[i]] != i:
                raise AlgebraLawError(
                    f"inverse table is not an involution at {relation_names[i]!r}"
                )

        # composition table: every ordered base pair present, no extras
        if set(composition_names) != set(relation_names):
            raise AlgebraFormatError(
                "composition table rows must cover exactly the relations"
            )
        comp = [[0] * n for _ in range(n)]
        for rn, row in composition_names.items():
            if set(row) != set(relation_names):
                raise AlgebraFormatError(
                    f"composition table missing an entry in row {rn!r}"
                )
            i = rel_id(rn, "composition")
            for sn, entry in row.items():
                mask = 0
                for tn in entry:
                    mask |= 1 << rel_id(tn, "composition")
                comp[i][rel_id(sn, "composition")] = mask
        self._comp = tuple(tuple(row) for row in comp)

        idb = self.identity.id
        for i in range(n):
            if comp[idb][i] != 1 << i or comp[i][idb] != 1 << i:
                raise AlgebraLawError(
                    f"identity law violated at {relation_names[i]!r}"
                )
        for i in range(n):
            for j in range(n):
                if self._invert_mask(comp[i][j]) != comp[inv[j]][inv[i]]:
                    raise AlgebraLawError(
                        "inverse-composition duality violated at "
                        f"({relation_names[i]!r}, {relation_names[j]!r})"
                    )

        # neighborhood graph: undirected, simple, connected
        edges = set()
        for pair in neighborhood:
            if len(pair) != 2:
                raise AlgebraFormatError(f"bad neighborhood edge {pair!r}")
            a, b = (rel_id(nm, "neighborhood") for nm in pair)
            if a == b:
                raise AlgebraFormatError(
                    f"self-loop {pair[0]!r} in neighborhood graph"
                )
            edges.add((min(a, b), max(a, b)))
        self.neighbor_edges = frozenset(edges)

        adj = [[] for _ in range(n)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        dist = []
        for src in range(n):
            row = [-1] * n
            row[src] = 0
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in adj[u]:
                    if row[v] < 0:
                        row[v] = row[u] + 1
                        queue.append(v)
            if any(d < 0 for d in row):
                raise AlgebraLawError("neighborhood graph disconnected")
            dist.append(tuple(row))
        self._dist = tuple(dist)

        # termwise distance of a constraint cell plus its mirror cell
        self._pair_dist = tuple(
            tuple(dist[r][s] + dist[inv[r]][inv[s]] for s in range(n))
            for r in range(n)
        )
        self.is_allen = set(relation_names) == _ALLEN_NAMES

    # -- lookups ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.base_relations)

    def base(self, name: str) -> BaseRelation:
        try:
            return self.base_relations[self._id_of[name]]
        except KeyError:
            raise KeyError(f"unknown relation name {name!r} in algebra {self.name!r}")

    def has_relation(self, name: str) -> bool:
        return name in self._id_of

    def relation(self, *names: str) -> Relation:
        mask = 0
        for nm in names:
            mask |= 1 << self.base(nm).id
        return Relation(mask)

    def names(self, rel: Relation) -> tuple[str, ...]:
        return tuple(self.base_relations[i].name for i in bit_ids(rel.bits))

    # -- relation-algebraic operations ------------------------------------

    def inverse(self, rel: Relation) -> Relation:
        return Relation(self._invert_mask(rel.bits))

    def compose(self, r: Relation, s: Relation) -> Relation:
        return Relation(self.compose_mask(r.bits, s.bits))

    def complement(self, rel: Relation) -> Relation:
        return Relation(self.universal.bits & ~rel.bits)

    def distance(self, r, s) -> int:
        """Shortest-path distance between two base relations."""
        ri = r.id if isinstance(r, BaseRelation) else int(r)
        si = s.id if isinstance(s, BaseRelation) else int(s)
        return self._dist[ri][si]

    def _invert_mask(self, mask: int) -> int:
        cached = self._inv_mask_cache.get(mask)
        if cached is None:
            cached = 0
            for i in bit_ids(mask):
                cached |= 1 << self._inv[i]
            self._inv_mask_cache[mask] = cached
        return cached

    def invert_mask(self, mask: int) -> int:
        return self._invert_mask(mask)

    def compose_mask(self, rm: int, sm: int) -> int:
        key = (rm, sm)
        cached = self._compose_cache.get(key)
        if cached is None:
            cached = 0
            comp = self._comp
            for i in bit_ids(rm):
                row = comp[i]
                for j in bit_ids(sm):
                    cached |= row[j]
            self._compose_cache[key] = cached
        return cached

    def cell_distance(self, r: int, s: int) -> int:
        """Distance contributed by one unordered pair: the cell plus its mirror."""
        return self._pair_dist[r][s]

    def min_cell_distance(self, am: int, bm: int) -> int:
        """Minimum of :meth:`cell_distance` over ``am`` x ``bm``.

        Admissible per-pair lower bound for the revision search; on the
        shipped inverse-closed graphs it equals twice the plain minimum
        distance between the two relation sets.
        """
        key = (am, bm)
        cached = self._min_pair_cache.get(key)
        if cached is None:
            pd = self._pair_dist
            best = None
            for i in bit_ids(am):
                row = pd[i]
                for j in bit_ids(bm):
                    v = row[j]
                    if best is None or v < best:
                        best = v
            if best is None:
                raise ValueError("min_cell_distance over an empty relation")
            cached = best
            self._min_pair_cache[key] = cached
        return cached

    # -- equality / serialization -----------------------------------------

    def _table_key(self):
        return (
            self.name,
            tuple(b.name for b in self.base_relations),
            self.identity.id,
            self._inv,
            self._comp,
            self.neighbor_edges,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self._table_key() == other._table_key()

    def __hash__(self) -> int:
        return hash((self.name, tuple(b.name for b in self.base_relations)))

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, |B|={self.size})"


# -- public constructors ---------------------------------------------------

def inverse_rel(a: Algebra, r: Relation) -> Relation:
    """Elementwise inverse of a relation (an involution)."""
    return a.inverse(r)


def compose(a: Algebra, r: Relation, s: Relation) -> Relation:
    """Weak composition, distributed over the members of both unions."""
    return a.compose(r, s)


def rel_distance(a: Algebra, r, s) -> int:
    """Neighborhood-graph distance between two base relations."""
    return a.distance(r, s)


def load_algebra(text: str) -> Algebra:
    """Parse and validate an algebra document (see the JSON format in README).

    Raises :class:`AlgebraFormatError` for syntax/schema problems and
    :class:`AlgebraLawError` when the tables break a required law.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"invalid algebra document: {exc}") from exc
    if not isinstance(doc, dict):
        raise AlgebraFormatError("algebra document must be a single object")
    required = {"name", "relations", "identity", "inverse", "composition", "neighborhood"}
    extra = set(doc) - required
    if extra:
        raise AlgebraFormatError(f"unknown keys in algebra document: {sorted(extra)}")
    missing = required - set(doc)
    if missing:
        raise AlgebraFormatError(f"missing keys in algebra document: {sorted(missing)}")
    return Algebra(
        doc["name"],
        doc["relations"],
        doc["identity"],
        doc["inverse"],
        doc["composition"],
        doc["neighborhood"],
    )


def load_algebra_file(path) -> Algebra:
    with open(path, "r", encoding="utf-8") as fh:
        return load_algebra(fh.read())


_builtin_cache: dict[str, Algebra] = {}


def builtin_algebra(name: str) -> Algebra:
    """One of the shipped algebras: ``allen`` or ``rcc8``."""
    if name not in BUILTIN_ALGEBRAS:
        raise KeyError(f"no built-in algebra named {name!r}")
    alg = _builtin_cache.get(name)
    if alg is None:
        text = resources.files("qarev.data").joinpath(f"{name}.json").read_text("utf-8")
        alg = load_algebra(text)
        _builtin_cache[name] = alg
    return alg


def serialize_algebra(a: Algebra) -> str:
    """Render an algebra back to its document form; loading it reproduces ``a``."""
    names = [b.name for b in a.base_relations]
    doc = {
        "name": a.name,
        "relations": names,
        "identity": a.identity.name,
        "inverse": {b.name: names[a._inv[b.id]] for b in a.base_relations},
        "composition": {
            r.name: {s.name: list(a.names(a.compose(Relation(1 << r.id), Relation(1 << s.id))))
                     for s in a.base_relations}
            for r in a.base_relations
        },
        "neighborhood": [
            [names[i], names[j]] for i, j in sorted(a.neighbor_edges)
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def check_laws(a: Algebra) -> list[tuple[str, bool, str]]:
    """Re-run every table law explicitly; returns (law, ok, detail) rows.

    Construction already enforces these, so on a loaded algebra all rows
    are ok; the function exists for the validation report.
    """
    rows = []
    n = a.size
    ok = all(a._inv[a._inv[i]] == i for i in range(n))
    rows.append(("inverse-involution", ok, "inverse(inverse(r)) = r"))

    e = a.identity.id
    ok = all(
        a._comp[e][i] == 1 << i and a._comp[i][e] == 1 << i for i in range(n)
    )
    rows.append(("identity-law", ok, "composition with the identity is neutral"))

    ok = all(
        a._invert_mask(a._comp[i][j]) == a._comp[a._inv[j]][a._inv[i]]
        for i in range(n)
        for j in range(n)
    )
    rows.append(("inverse-composition-duality", ok, "inv(r;s) = inv(s);inv(r)"))

    ok = all(a._dist[i][j] >= 0 for i in range(n) for j in range(n))
    rows.append(("graph-connectivity", ok, "neighborhood graph is connected"))

    metric = True
    for i in range(n):
        for j in range(n):
            d = a._dist[i][j]
            if d != a._dist[j][i] or (d == 0) != (i == j):
                metric = False
            for k in range(n):
                if a._dist[i][k] > d + a._dist[j][k]:
                    metric = False
    rows.append(("distance-metric", metric, "symmetric, zero iff equal, triangle"))
    return rows
