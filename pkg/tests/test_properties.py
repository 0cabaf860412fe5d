"""Property-based invariants on random sign vectors and random realizable instances."""
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from oracles import cocircuits as oracle_cocircuits
from oracles import show

from omprog.core import SignVector, compose, separation, validate
from omprog.extension import LexSpec, lex_extend, lex_localization
from omprog.ingest import VectorConfig, om_from_vectors, rank_int
from omprog.program import admissible_pairs, build_graph, direction, Program

signs = st.lists(st.sampled_from((-1, 0, 1)), min_size=5, max_size=5).map(SignVector.from_signs)


@given(signs, signs, signs)
def test_composition_laws(X, Y, Z):
    assert compose(compose(X, Y), Z) == compose(X, compose(Y, Z))
    assert compose(X, X) == X
    assert separation(X, Y) == separation(Y, X)
    assert -compose(X, Y) == compose(-X, -Y)
    assert SignVector.from_str(str(X)) == X


@st.composite
def configs(draw, max_n=6):
    r = draw(st.integers(2, 3))
    n = draw(st.integers(r + 1, max_n))
    entry = st.integers(-2, 2)
    vecs = draw(st.lists(st.tuples(*[entry] * r).filter(any), min_size=n, max_size=n))
    assume(rank_int(vecs) == r)
    return VectorConfig(vecs)


slow = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


@slow
@given(configs())
def test_realizable_instances_validate_and_match_oracle(cfg):
    O = om_from_vectors(cfg, check=False)
    assert validate(O).ok
    assert {str(X) for X in O.cocircuits} == {show(X) for X in oracle_cocircuits(cfg.vectors)}


@slow
@given(configs(), st.data())
def test_direction_is_antisymmetric(cfg, data):
    O = om_from_vectors(cfg, check=False)
    g, f = data.draw(st.sampled_from(admissible_pairs(O)))
    G = build_graph(Program(O, g, f))
    for (X, Y), d in G.edges.items():
        assert direction(O, g, f, Y, X) == -d
        assert direction(O, g, f, -Y, -X) == d


@slow
@given(configs(), st.data())
def test_lex_extensions_are_oriented_matroids(cfg, data):
    O = om_from_vectors(cfg, check=False)
    k = data.draw(st.integers(1, O.rank))
    I = data.draw(st.permutations(range(O.n)))[:k]
    assume(O._rank(sum(1 << e for e in I)) == k)
    alpha = data.draw(st.lists(st.sampled_from((1, -1)), min_size=k, max_size=k))
    spec = LexSpec(tuple(I), tuple(alpha))
    sigma = lex_localization(O, spec)
    assert all(sigma(-Y) == -sigma(Y) for Y in O.cocircuits)
    res = lex_extend(O, spec, check=False)
    assert validate(res.extended).ok
    assert res.extended.rank == O.rank
    for Z in res.new:
        assert Z[res.p] == 0 and Z.restrict(range(O.n)) not in O.cocircuit_set
