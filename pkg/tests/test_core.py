from itertools import combinations

import pytest
from corpus import L3_VECTORS, U34_VECTORS, instances
from oracles import closure as oracle_closure
from oracles import cocircuits as oracle_cocircuits
from oracles import elimination_filter, parse, rank as oracle_rank, show

from omprog.core import (
    OMError,
    OrientedMatroid,
    SignVector,
    closure,
    cocircuits_on_line,
    comodular,
    compose,
    contract,
    delete,
    eliminate,
    is_edge,
    rank_of,
    reorient,
    separation,
    sv,
    validate,
)
from omprog.ingest import VectorConfig, om_from_vectors


@pytest.mark.parametrize("x,y,want", [("+0-", "000", "+0-"), ("+0+", "0+-", "+++"), ("0++", "+-0", "+++")])
def test_compose(x, y, want):
    assert str(compose(sv(x), sv(y))) == want


@pytest.mark.parametrize("x,y,want", [("+0-", "-0-", {0}), ("+++", "+++", set()), ("+-0", "-+0", {0, 1})])
def test_separation(x, y, want):
    assert separation(sv(x), sv(y)) == want


def test_sign_vector_roundtrip_and_errors():
    X = sv("+-0+")
    assert str(-X) == "-+0-"
    assert [X[e] for e in range(4)] == [1, -1, 0, 1]
    assert X.canonical() == X and (-X).canonical() == X
    with pytest.raises(OMError):
        sv("+x0")
    with pytest.raises(OMError):
        compose(sv("+0"), sv("+00"))


def test_l3_cocircuits_match_determinant_oracle(L3):
    assert {str(X) for X in L3.cocircuits} == {show(X) for X in oracle_cocircuits(L3_VECTORS)}
    assert {str(X) for X in L3.pair_representatives()} == {"0++", "+0+", "+-0"}


def test_closure_and_rank(L3):
    assert closure(L3, [0]) == {0}
    assert closure(L3, range(3)) == {0, 1, 2}
    assert closure(L3, [0, 1]) == {0, 1, 2}
    assert rank_of(L3, []) == 0
    assert rank_of(L3, [0, 1, 2]) == 2
    assert rank_of(L3, [0]) == 1


def test_closure_and_rank_agree_with_linear_algebra():
    for cfg, O in instances(seed=17, count=10, max_n=6):
        vecs = cfg.vectors
        for size in range(O.n + 1):
            for S in combinations(range(O.n), size):
                assert rank_of(O, S) == oracle_rank(vecs, S)
                assert closure(O, S) == oracle_closure(vecs, S)


def test_edges_and_comodularity(L3):
    assert is_edge(L3, sv("+++"))
    assert not is_edge(L3, sv("0++"))
    assert not is_edge(L3, sv("000"))
    assert comodular(L3, sv("+0+"), sv("+-0"))
    assert not comodular(L3, sv("+0+"), sv("-0-"))


def test_rank2_pairs_are_all_comodular():
    for _, O in instances(seed=5, count=8, ranks=(2,), max_n=7):
        for X, Y in combinations(O.cocircuits, 2):
            assert comodular(O, X, Y) == (X != -Y)


@pytest.mark.parametrize("x,y,e,want", [("-0-", "+-0", 0, "0--"), ("+0+", "-+0", 0, "0++")])
def test_eliminate_examples(L3, x, y, e, want):
    assert str(eliminate(L3, sv(x), sv(y), e)) == want


def test_eliminate_rejects_opposite_pair(L3):
    with pytest.raises(OMError):
        eliminate(L3, sv("0++"), sv("0--"), 1)


def test_eliminate_matches_filter_oracle():
    for _, O in instances(seed=23, count=6, ranks=(3, 4), max_n=6):
        cocs = [tuple(X) for X in O.cocircuits]
        for X, Y in combinations(O.cocircuits, 2):
            if not comodular(O, X, Y):
                continue
            for e in range(O.n):
                if X[e] and X[e] == -Y[e]:
                    hits = elimination_filter(cocs, tuple(X), tuple(Y), e)
                    assert [str(eliminate(O, X, Y, e))] == [show(h) for h in hits]


def test_cocircuits_on_line(L3, U34):
    assert len(cocircuits_on_line(L3, sv("+++"))) == 6
    X12 = next(X for X in U34.cocircuits if X.zero_mask == 0b0011)
    X14 = next(X for X in U34.cocircuits if X.zero_mask == 0b1001)
    F = compose(X12, X14)
    assert F.zero_mask == 1
    got = {str(X) for X in cocircuits_on_line(U34, F)}
    want = {show(X) for X in oracle_cocircuits(U34_VECTORS) if X[0] == 0}
    assert got == want and len(got) == 6
    with pytest.raises(OMError):
        cocircuits_on_line(U34, sv("00+-"))


def test_reorient(L3):
    assert reorient(L3, []) is L3
    twice = reorient(reorient(L3, [0, 1, 2]), [0, 1, 2])
    assert twice.cocircuit_set == L3.cocircuit_set
    assert sv("++0") in reorient(L3, [1]).cocircuit_set


def test_delete_and_contract(L3):
    D = delete(L3, [2])
    assert D.rank == 2 and {str(X) for X in D.cocircuits} == {"0+", "0-", "+0", "-0"}
    C = contract(L3, [2])
    assert C.rank == 1 and {str(X) for X in C.cocircuits} == {"+-", "-+"}
    assert contract(L3, []).cocircuit_set == L3.cocircuit_set


def test_validate_accepts_l3(L3):
    rep = validate(L3)
    assert rep.ok and rep.violations == []


def test_validate_reports_missing_negation(L3):
    broken = OrientedMatroid(3, [X for X in L3.cocircuits if str(X) != "0++"], rank=2)
    assert "symmetry" in validate(broken).kinds()


def test_validate_reports_nested_supports(L3):
    extra = OrientedMatroid(3, list(L3.cocircuits) + [sv("+++"), sv("---")], rank=2)
    assert "incomparability" in validate(extra).kinds()


def test_parallel_elements_still_validate():
    O = om_from_vectors(VectorConfig([(1, 0), (0, 1), (1, 0), (1, 1)]))
    assert validate(O).ok
    assert closure(O, [0]) == {0, 2}
