from itertools import permutations, product

import pytest
from corpus import U34_VECTORS, instances
from oracles import lex_sigma, show, single_element_extension

from omprog.core import OMError, OrientedMatroid, contract, rank_of, reorient, sv, validate
from omprog.extension import (
    ExtensionError,
    LexSpec,
    Localization,
    classify,
    corresponding_cocircuit,
    extend,
    index_of,
    is_principal_on,
    lex_extend,
    lex_localization,
    lex_specs,
    parse_lexspec,
    principal_flat,
)
from omprog.ingest import VectorConfig, om_from_vectors


@pytest.mark.parametrize("y,I,want", [("0++", [0, 1], 2), ("0++", [0], 2), ("+-0", [1, 2, 0], 1)])
def test_index_of(y, I, want):
    assert index_of(sv(y), I) == want


def test_lex_localization_examples(L3):
    s1 = lex_localization(L3, LexSpec.positive([0]))
    assert s1(sv("0++")) == 0 and s1(sv("+0+")) == 1
    s2 = lex_localization(L3, LexSpec.positive([0, 1]))
    assert s2(sv("0++")) == 1
    assert not s2.odd_violations()


def test_lexspec_parsing(L3):
    assert parse_lexspec("lex [1+,2-]", L3) == LexSpec((0, 1), (1, -1))
    assert parse_lexspec("[3+]", L3) == LexSpec((2,), (1,))
    for bad in ("[1+,1+]", "1+,2+", "[1*]", "[9+]"):
        with pytest.raises(OMError):
            parse_lexspec(bad, L3)


def test_dependent_or_long_spec_is_rejected(L3):
    with pytest.raises(OMError):
        lex_localization(L3, LexSpec.positive([0, 1, 2]))


def test_l3_parallel_extension(L3):
    res = lex_extend(L3, LexSpec.positive([0]))
    assert {str(Z) for Z in res.extended.pair_representatives()} == {"0++0", "+0++", "+-0+"}
    assert res.new == []
    assert classify(res, sv("0++0")) == "old"


def test_l3_general_position_extension(L3):
    res = lex_extend(L3, LexSpec.positive([0, 1]))
    reps = {str(Z) for Z in res.extended.pair_representatives()}
    assert reps == {"0+++", "+0++", "+-0+", "+--0"}
    Y = sv("+--0")
    assert res.is_new(Y) and classify(res, Y) == "new"
    assert classify(res, sv("+0++")) == "old"
    assert {str(V) for V in res.provenance[Y]} == {"+-0+", "0---"}
    assert str(corresponding_cocircuit(res, Y)) == "0---"
    assert corresponding_cocircuit(res, -Y) == -corresponding_cocircuit(res, Y)
    with pytest.raises(ExtensionError):
        corresponding_cocircuit(res, sv("+0++"))


def test_extension_matches_pair_enumeration_oracle():
    for cfg, O in instances(seed=53, count=8, ranks=(2, 3, 4), max_n=6):
        cocs = [tuple(X) for X in O.cocircuits]
        rk = lambda S: rank_of(O, S)  # noqa: E731
        for spec in lex_specs(O, cap=25, seed=1):
            res = lex_extend(O, spec)
            sigma = lambda Y: lex_sigma(Y, spec.elements, spec.signs)  # noqa: E731
            want = single_element_extension(cocs, rk, O.rank, sigma)
            assert {str(Z) for Z in res.extended.cocircuits} == {show(Z) for Z in want}


def test_trivial_localization_is_rejected(L3):
    zero = Localization(L3, {Y: 0 for Y in L3.cocircuits})
    with pytest.raises(ExtensionError):
        extend(L3, zero)


def test_odd_map_that_is_no_localization_is_caught(L3):
    reps = {"+-0": 1, "+0+": -1, "0++": 1}
    sigma = {}
    for Y in L3.pair_representatives():
        sigma[Y], sigma[-Y] = reps[str(Y)], -reps[str(Y)]
    with pytest.raises(ExtensionError, match="not a localization"):
        extend(L3, Localization(L3, sigma))


def test_principal_examples(L3):
    r1 = lex_extend(L3, LexSpec.positive([0]))
    assert is_principal_on(r1) and principal_flat(r1) == {0}
    r2 = lex_extend(L3, LexSpec.positive([0, 1]))
    assert is_principal_on(r2) and principal_flat(r2) == {0, 1, 2}


def test_point_on_two_disjoint_lines_is_not_principal():
    # p = (1,1,0) lies on the line through 1,2 and on the line through 3,4
    O = om_from_vectors(VectorConfig(U34_VECTORS))
    O5 = om_from_vectors(VectorConfig(U34_VECTORS + [(1, 1, 0)]))
    sigma = {}
    for Z in O5.cocircuits:
        Y = Z.restrict(range(4))
        if Y in O.cocircuit_set:
            sigma[Y] = Z[4]
    res = extend(O, Localization(O, sigma))
    assert res.extended.cocircuit_set == O5.cocircuit_set
    assert principal_flat(res) is None
    assert not is_principal_on(res, LexSpec.positive([0, 1]))


def test_general_alpha_is_a_reorientation_of_positive():
    for _, O in instances(seed=59, count=6, max_n=6):
        for spec in lex_specs(O, cap=20, seed=3):
            flip = [e for e, a in zip(spec.elements, spec.signs) if a < 0]
            direct = lex_extend(O, spec).extended
            via = reorient(lex_extend(reorient(O, flip), LexSpec.positive(spec.elements)).extended, flip)
            assert direct.cocircuit_set == via.cocircuit_set


def test_lex_specs_enumeration(U34):
    specs = lex_specs(U34)
    # ordered independent subsets of sizes 1..3 times sign patterns
    want = sum(len(list(permutations(range(4), k))) * 2**k for k in (1, 2, 3))
    assert len(specs) == want == 248
    assert len(lex_specs(U34, positive_only=True)) == 40
    assert lex_specs(U34, cap=10, seed=4) == lex_specs(U34, cap=10, seed=4)
    assert len(lex_specs(U34, cap=10, seed=4)) == 10


def test_extension_facts_on_corpus():
    for _, O in instances(seed=61, count=8, max_n=6):
        for spec in lex_specs(O, cap=30, seed=2):
            res = lex_extend(O, spec)
            I, k, p = spec.elements, spec.k, res.p
            for Z in res.extended.cocircuits:
                kind = classify(res, Z)
                if Z[p] != 0:
                    i = index_of(Z, I)
                    assert i <= k and spec.signs[i - 1] * Z[I[i - 1]] == Z[p]
                    assert Z.restrict(range(p)) in O.cocircuit_set
                elif k == O.rank:
                    assert kind == "new"
                if kind == "new":
                    corresponding_cocircuit(res, Z)


def test_contracting_p_direction_is_consistent(L3):
    res = lex_extend(L3, LexSpec.positive([0, 1]))
    assert contract(res.extended, [res.p]).rank == 1
    assert validate(res.extended).ok
    assert isinstance(res.extended, OrientedMatroid)


def test_sign_patterns_cover_all_alphas(U34):
    got = {s.signs for s in lex_specs(U34) if s.elements == (0, 1)}
    assert got == set(product((1, -1), repeat=2))
