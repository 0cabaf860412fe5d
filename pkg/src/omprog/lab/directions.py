"""Scanners for the symmetry and exchange properties of the direction function."""
from __future__ import annotations

import random

from ..core import OrientedMatroid, bits, eliminate, eliminate_by_scan, reorient
from ..program import (
    Program,
    admissible_pairs,
    comodular_pairs,
    direction,
    direction_by_scan,
    is_euclidean_program,
    is_program,
)
from .records import Report


def _reoriented(O: OrientedMatroid, mask: int) -> OrientedMatroid:
    cache = O.memo.setdefault("reoriented", {})
    got = cache.get(mask)
    if got is None:
        got = reorient(O, bits(mask))
        cache[mask] = got
    return got


def _tup(O, X, Y, g, f, **extra) -> dict:
    out = {"X": str(X), "Y": str(Y), "g": O.labels[g], "f": O.labels[f]}
    out.update({k: (O.labels[v] if isinstance(v, int) else str(v)) for k, v in extra.items()})
    return out


def _same_g_pairs(O: OrientedMatroid, limit: int | None = None, seed: int = 0) -> list:
    """Ordered comodular (X, Y, g) with X_g = Y_g != 0; a seeded sample of ``limit`` if given."""
    out = [
        (A, B, g)
        for X, Y in comodular_pairs(O)
        for A, B in ((X, Y), (Y, X))
        for g in bits(A.support_mask & B.support_mask & ~A.sep_mask(B))
    ]
    if limit is not None and len(out) > limit:
        keep = sorted(random.Random(seed).sample(range(len(out)), limit))
        out = [out[i] for i in keep]
    return out


def scan_direction_props(
    O: OrientedMatroid, report: Report | None = None, seed: int = 0, limit: int | None = None
) -> Report:
    """Basic direction properties, transitivity and the f/g exchange rules.

    Every ordered comodular pair with equal nonzero g-value (or a seeded
    sample of ``limit`` of them) is checked for every f != g.  Reorientation statements use all single-element
    reorientations plus one seeded random subset.
    """
    rep = report or Report()
    rng = random.Random(seed)
    extra_mask = rng.getrandbits(O.n) & O.full
    masks = [1 << e for e in range(O.n)] + ([extra_mask] if extra_mask else [])
    for X, Y, g in _same_g_pairs(O, limit, seed):
        gbit = 1 << g
        for f in range(O.n):
            if f == g:
                continue
            fbit = 1 << f
            d = direction(O, g, f, X, Y)
            t = _tup(O, X, Y, g, f)
            rep.check("Antisymmetry", t, -d, direction(O, g, f, Y, X))
            rep.check("basicDirectionProps(i)", t, d, direction(O, g, f, -Y, -X))
            Og, Of = _reoriented(O, gbit), _reoriented(O, fbit)
            rep.check(
                "basicDirectionProps(ii)-g", t, d, direction(Og, g, f, X.reorient(gbit), Y.reorient(gbit))
            )
            rep.check(
                "basicDirectionProps(ii)-f", t, d, direction(Of, g, f, Y.reorient(fbit), X.reorient(fbit))
            )
            if X[f] < Y[f]:
                rep.check("basicDirectionProps(iii)-prec", t, 1, d)
            if X[f] == 0 and Y[f] == 0:
                rep.check("basicDirectionProps(iii)-zero", t, 0, d)
            if d > 0:
                for e in bits(X.sep_mask(Y)):
                    W = eliminate(O, X, Y, e)
                    te = _tup(O, X, Y, g, f, e=e, W=W)
                    rep.check("basicDirectionProps(iv)", te, (1, 1),
                              (direction(O, g, f, X, W), direction(O, g, f, W, Y)))
            for m in masks:
                OS = _reoriented(O, m)
                Xs, Ys = X.reorient(m), Y.reorient(m)
                if d == 0:
                    tm = _tup(O, X, Y, g, f, S=format(m, "b"))
                    rep.check(
                        "basicDirectionProps(v)", tm, (0, 0, 0),
                        (direction(OS, g, f, Ys, Xs), direction(OS, g, f, -Xs, -Ys),
                         direction(OS, g, f, -Ys, -Xs)),
                    )
                if not m & (gbit | fbit):
                    tm = _tup(O, X, Y, g, f, S=format(m, "b"))
                    rep.check("ReorientationPreservesDir", tm, d, direction(OS, g, f, Xs, Ys))
            xf, xg = X[f], X[g]
            if xf != 0 and xf == Y[f]:
                back = direction(O, f, g, X, Y)
                if xf == xg:
                    rep.check("ChangeOfFAndG1", t, -d, back)
                else:
                    rep.check("ChangeOfFAndG2", t, d, back)
                if d == 0:
                    for h in range(O.n):
                        if h in (f, g):
                            continue
                        rep.check(
                            "TransitivityOfDir", _tup(O, X, Y, g, f, h=h),
                            direction(O, g, h, X, Y), direction(O, f, h, X, Y),
                        )
    return rep


def scan_program_symmetries(
    O: OrientedMatroid, report: Report | None = None, seed: int = 0
) -> Report:
    """Euclideanness under exchanging g and f, and under reorienting E - {f, g}."""
    rep = report or Report()
    rng = random.Random(seed)
    for g, f in admissible_pairs(O):
        here = is_euclidean_program(Program(O, g, f))
        t = {"g": O.labels[g], "f": O.labels[f]}
        if is_program(O, f, g):
            rep.check("EuclideanessStays", t, here, is_euclidean_program(Program(O, f, g)))
        else:
            rep.skip("EuclideanessStays: swapped pair is not a program")
        free = O.full & ~((1 << g) | (1 << f))
        m = rng.getrandbits(O.n) & free or free
        if m:
            OS = _reoriented(O, m)
            rep.check(
                "ReorientationLemma", dict(t, S=format(m, "b")), here,
                is_euclidean_program(Program(OS, g, f)),
            )
    return rep


def scan_oracles(
    O: OrientedMatroid, report: Report | None = None, seed: int = 0, limit: int | None = None
) -> Report:
    """Modular-filter elimination and direction against the full-scan route."""
    rep = report or Report()
    pairs = comodular_pairs(O)
    if limit is not None and len(pairs) > limit:
        pairs = [pairs[i] for i in sorted(random.Random(seed).sample(range(len(pairs)), limit))]
    for X, Y in pairs:
        for A, B in ((X, Y), (Y, X)):
            for e in bits(A.sep_mask(B)):
                rep.check(
                    "EliminationOracle", {"X": str(A), "Y": str(B), "e": O.labels[e]},
                    str(eliminate_by_scan(O, A, B, e)), str(eliminate(O, A, B, e)),
                )
    for X, Y, g in _same_g_pairs(O, limit, seed):
        for f in range(O.n):
            if f != g:
                rep.check(
                    "DirectionOracle", _tup(O, X, Y, g, f),
                    direction_by_scan(O, g, f, X, Y), direction(O, g, f, X, Y),
                )
    return rep


def check_cycle_constant_f(cycle, f: int) -> bool:
    """Every vertex of a directed cycle shares one nonzero f-value."""
    vals = {v[f] for v in cycle}
    return len(vals) == 1 and 0 not in vals
