import json
import random

import pytest

from qarev import (
    AlgebraFormatError,
    AlgebraLawError,
    Relation,
    builtin_algebra,
    check_laws,
    compose,
    inverse_rel,
    load_algebra,
    rel_distance,
    serialize_algebra,
)

from oracles import bfs_distances, three_interval_tables

ALLEN_NAMES = ["b", "m", "o", "s", "d", "f", "eq", "bi", "mi", "oi", "si", "di", "fi"]

TINY = {
    "name": "tiny",
    "relations": ["eq", "r"],
    "identity": "eq",
    "inverse": {"eq": "eq", "r": "r"},
    "composition": {
        "eq": {"eq": ["eq"], "r": ["r"]},
        "r": {"eq": ["r"], "r": ["eq", "r"]},
    },
    "neighborhood": [["eq", "r"]],
}


def test_builtin_allen_relations(allen):
    assert [b.name for b in allen.base_relations] == ALLEN_NAMES
    assert allen.identity.name == "eq"
    assert allen.size == 13


def test_minimal_two_relation_algebra():
    a = load_algebra(json.dumps(TINY))
    assert a.size == 2
    assert a.names(a.compose(a.relation("r"), a.relation("r"))) == ("eq", "r")


def test_disconnected_neighborhood_rejected():
    doc = dict(TINY, neighborhood=[])
    with pytest.raises(AlgebraLawError, match="disconnected"):
        load_algebra(json.dumps(doc))


def test_format_errors():
    with pytest.raises(AlgebraFormatError, match="unknown keys"):
        load_algebra(json.dumps(dict(TINY, extra=1)))
    with pytest.raises(AlgebraFormatError, match="duplicate"):
        load_algebra(json.dumps(dict(TINY, relations=["eq", "eq"])))
    with pytest.raises(AlgebraFormatError, match="unknown relation name"):
        load_algebra(json.dumps(dict(TINY, identity="nope")))
    bad_comp = dict(TINY, composition={"eq": {"eq": ["eq"], "r": ["r"]}})
    with pytest.raises(AlgebraFormatError, match="composition"):
        load_algebra(json.dumps(bad_comp))
    missing_entry = dict(TINY, composition={
        "eq": {"eq": ["eq"]},
        "r": {"eq": ["r"], "r": ["eq", "r"]},
    })
    with pytest.raises(AlgebraFormatError, match="missing an entry"):
        load_algebra(json.dumps(missing_entry))
    with pytest.raises(AlgebraFormatError, match="at least 2"):
        load_algebra(json.dumps({
            "name": "one", "relations": ["eq"], "identity": "eq",
            "inverse": {"eq": "eq"},
            "composition": {"eq": {"eq": ["eq"]}},
            "neighborhood": [],
        }))
    too_many = [f"r{i}" for i in range(65)]
    with pytest.raises(AlgebraFormatError, match="too many"):
        load_algebra(json.dumps({
            "name": "big", "relations": too_many, "identity": "r0",
            "inverse": {}, "composition": {}, "neighborhood": [],
        }))


def test_law_errors():
    bad_inv = dict(TINY, relations=["eq", "r", "s"],
                   inverse={"eq": "eq", "r": "s", "s": "eq"},
                   composition={
                       rn: {sn: ["eq"] for sn in ["eq", "r", "s"]}
                       for rn in ["eq", "r", "s"]
                   },
                   neighborhood=[["eq", "r"], ["r", "s"]])
    with pytest.raises(AlgebraLawError, match="involution"):
        load_algebra(json.dumps(bad_inv))
    bad_identity = dict(TINY, composition={
        "eq": {"eq": ["eq"], "r": ["eq", "r"]},
        "r": {"eq": ["r"], "r": ["eq", "r"]},
    })
    with pytest.raises(AlgebraLawError, match="identity law"):
        load_algebra(json.dumps(bad_identity))


def test_inverse_examples(allen):
    assert allen.names(inverse_rel(allen, allen.relation("b"))) == ("bi",)
    assert allen.names(inverse_rel(allen, allen.relation("eq"))) == ("eq",)
    assert allen.names(inverse_rel(allen, allen.relation("b", "m"))) == ("bi", "mi")


def test_inverse_is_involution_and_preserves_cardinality(allen):
    rng = random.Random(7)
    for _ in range(200):
        r = Relation(rng.randrange(0, 1 << 13))
        inv = inverse_rel(allen, r)
        assert inverse_rel(allen, inv) == r
        assert len(inv) == len(r)


def test_compose_examples(allen):
    assert allen.names(compose(allen, allen.relation("eq"), allen.relation("d"))) == ("d",)
    assert allen.names(compose(allen, allen.relation("b"), allen.relation("b"))) == ("b",)
    assert allen.names(compose(allen, allen.relation("m"), allen.relation("m"))) == ("b",)
    assert compose(allen, allen.empty, allen.universal) == allen.empty
    assert compose(allen, allen.relation("eq"), allen.relation("b", "mi")) == allen.relation("b", "mi")


def test_inverse_table_matches_endpoint_oracle(allen):
    _, _, inverse = three_interval_tables()
    for b in allen.base_relations:
        assert allen.base_relations[allen._inv[b.id]].name == inverse[b.name]


def test_composition_matches_endpoint_oracle(allen):
    comp, _, _ = three_interval_tables()
    for r in allen.base_relations:
        for s in allen.base_relations:
            got = allen.names(compose(allen, allen.relation(r.name), allen.relation(s.name)))
            assert frozenset(got) == comp[(r.name, s.name)], (r.name, s.name)


def test_compose_inverse_duality_on_unions(allen, rcc8):
    rng = random.Random(11)
    for a in (allen, rcc8):
        for _ in range(200):
            r = Relation(rng.randrange(0, 1 << a.size))
            s = Relation(rng.randrange(0, 1 << a.size))
            assert inverse_rel(a, compose(a, r, s)) == compose(
                a, inverse_rel(a, s), inverse_rel(a, r)
            )


def test_compose_distributes_over_union(allen):
    rng = random.Random(13)
    for _ in range(100):
        r1 = Relation(rng.randrange(0, 1 << 13))
        r2 = Relation(rng.randrange(0, 1 << 13))
        s = Relation(rng.randrange(0, 1 << 13))
        assert compose(allen, r1 | r2, s) == compose(allen, r1, s) | compose(allen, r2, s)
        assert compose(allen, s, r1 | r2) == compose(allen, s, r1) | compose(allen, s, r2)


def test_distance_examples(allen):
    b, m, bi = allen.base("b"), allen.base("m"), allen.base("bi")
    assert rel_distance(allen, b, b) == 0
    assert rel_distance(allen, b, m) == 1
    assert rel_distance(allen, b, bi) == 8


def test_distance_matches_independent_bfs(allen, rcc8):
    for a in (allen, rcc8):
        ref = bfs_distances(a.size, sorted(a.neighbor_edges))
        for r in range(a.size):
            for s in range(a.size):
                assert rel_distance(a, r, s) == ref[r][s]


def test_distance_is_a_metric_and_inverse_closed(allen, rcc8):
    for a in (allen, rcc8):
        n = a.size
        for r in range(n):
            for s in range(n):
                assert a.distance(r, s) == a.distance(s, r)
                assert (a.distance(r, s) == 0) == (r == s)
                assert a.distance(r, s) == a.distance(a._inv[r], a._inv[s])
                for t in range(n):
                    assert a.distance(r, t) <= a.distance(r, s) + a.distance(s, t)


def test_check_laws_all_ok(allen, rcc8):
    for a in (allen, rcc8):
        assert all(ok for _, ok, _ in check_laws(a))


def test_serialize_round_trip(allen, rcc8):
    for a in (allen, rcc8):
        again = load_algebra(serialize_algebra(a))
        assert again == a
    tiny = load_algebra(json.dumps(TINY))
    assert load_algebra(serialize_algebra(tiny)) == tiny


def test_relation_set_semantics(allen):
    r = allen.relation("b", "m", "b")
    assert allen.names(r) == ("b", "m")
    assert allen.base("m") in r
    assert allen.base("o") not in r
    assert allen.names(allen.complement(allen.empty)) == tuple(ALLEN_NAMES)
