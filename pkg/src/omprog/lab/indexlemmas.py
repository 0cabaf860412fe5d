"""Direction rules for pairs of old cocircuits in a positive lexicographic extension."""
from __future__ import annotations

from typing import Sequence

from ..core import SignVector, comodular, eliminate
from ..extension import ExtensionResult
from ..program import direction
from .records import Report


def assumptions_a_pairs(ext: ExtensionResult) -> list[tuple[SignVector, SignVector]]:
    """Conformal comodular (X, Y) with X_p = Y_p != 0, ordered so ind_X <= ind_Y.

    Pairs with equal index appear in both orders.
    """
    O1, p = ext.extended, ext.p
    cands = [X for X in O1.cocircuits if X[p] != 0]
    out = []
    for a, X in enumerate(cands):
        for Y in cands[a + 1:]:
            if X[p] != Y[p] or X.sep_mask(Y) or not comodular(O1, X, Y):
                continue
            ix, iy = ext.index(X), ext.index(Y)
            if ix < iy:
                out.append((X, Y))
            elif iy < ix:
                out.append((Y, X))
            else:
                out.extend([(X, Y), (Y, X)])
    return out


def check_cycle_constant_index(ext: ExtensionResult, cycle: Sequence[SignVector]) -> bool:
    """All cocircuits of a (directed) cycle share one index."""
    return len({ext.index(V) for V in cycle}) <= 1


def check_index_lemmas(
    ext: ExtensionResult, f: int, report: Report | None = None
) -> Report:
    """Dispatch every pair of :func:`assumptions_a_pairs` to the rule for its index pattern."""
    rep = report or Report()
    spec = ext.lexspec
    if spec is None or not spec.is_positive:
        rep.skip("index lemmas: extension is not positive lexicographic")
        return rep
    O1, p, k, I = ext.extended, ext.p, spec.k, spec.elements
    lab = O1.labels

    def d(g: int, h: int, X: SignVector, Y: SignVector) -> int:
        return direction(O1, g, h, X, Y)

    for X, Y in assumptions_a_pairs(ext):
        i, j = ext.index(X), ext.index(Y)
        t = {"X": str(X), "Y": str(Y), "f": lab[f], "ind": [i, j]}
        P = eliminate(O1, -X, Y, p)
        Z = eliminate(O1, -X, Y, I[i - 1]) if i == j else Y
        rep.check("CocircuitCompatible(old)", t, P == Z, not ext.is_new(P))
        if ext.is_new(P):
            rep.check("CocircuitCompatible(new)", t, True, P.is_conformal(Z))
        if i < j:
            if Y[f] == 0:
                rep.skip("index lemmas: index change with Y_f = 0")
                continue
            ei = I[i - 1]
            rep.check("case6lexExt", t, (Y[f], Y[f]), (d(p, f, X, Y), d(ei, f, X, Y)))
            continue
        ei = I[i - 1]
        xf, yf = X[f], Y[f]
        if f != ei and (xf != yf or xf == 0 or d(ei, f, X, Y) != 0):
            rep.check("case3lexExt", t, d(ei, f, X, Y), d(p, f, X, Y))
            if xf != 0 or yf != 0:
                rep.check("case3lexExt(swapped)", t, d(f, ei, X, Y), d(f, p, X, Y))
            continue
        # X_f = Y_f != 0 and (Dir_{e_i,f} = 0 or f = e_i)
        later = [e for e in I[i:]]
        dirs = [d(ei, e, X, Y) for e in later]
        nonzero = [v for v in dirs if v != 0]
        if not nonzero:
            rep.check("case4lexExt(i)", t, 0, d(p, f, X, Y))
        else:
            rep.check("case4lexExt(ii)", t, nonzero[0], d(f, p, X, Y))
        for e, v in zip(later, dirs):
            if e != f:
                rep.check("case4lexExt(iii)", dict(t, e=lab[e]), v, d(f, e, X, Y))
    return rep


def check_extension_facts(ext: ExtensionResult, report: Report | None = None) -> Report:
    """Old/new structure of the extension and direction preservation of old edges."""
    rep = report or Report()
    O, O1, p = ext.base, ext.extended, ext.p
    spec = ext.lexspec
    lab = O1.labels
    for Y in O1.cocircuits:
        if Y[p] == 0:
            if spec is not None and spec.k == O.rank:
                rep.check("uniqueEdges2(iii)", {"Y": str(Y)}, "new", ext.tags[Y])
            continue
        rep.check("uniqueEdges2(ii)", {"Y": str(Y)}, "old", ext.tags[Y])
        if spec is not None:
            i = ext.index(Y)
            ok = i <= spec.k and spec.signs[i - 1] * Y[spec.elements[i - 1]] == Y[p]
            rep.check("IndexPUnequalZero", {"Y": str(Y)}, True, ok)
    olds = [Y for Y in O1.cocircuits if not ext.is_new(Y)]
    for a, X in enumerate(olds):
        for Y in olds[a + 1:]:
            if not comodular(O1, X, Y):
                continue
            Xo, Yo = ext.source[X], ext.source[Y]
            if not comodular(O, Xo, Yo):
                continue
            for g in range(O.n):
                xg, yg = X[g], Y[g]
                if xg == 0 and yg == 0 or xg == -yg:
                    continue
                for f in range(O.n):
                    if f == g:
                        continue
                    t = {"X": str(X), "Y": str(Y), "g": lab[g], "f": lab[f]}
                    rep.check(
                        "DirPresOfOutsideEdges", t,
                        direction(O, g, f, Xo, Yo), direction(O1, g, f, X, Y),
                    )
    return rep
