"""Crossing points, modular triples and the projection, triangle and zero-line checks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from ..core import OMError, OrientedMatroid, SignVector, bits, eliminate
from ..program import Program, direction, line_path
from .records import LemmaViolation, Report


def _orient(C: SignVector, g: int) -> SignVector:
    if C[g] < 0:
        return -C
    if C[g] == 0:
        return C.canonical()
    return C


def crossing_point(O: OrientedMatroid, F: SignVector, G: SignVector, g: int) -> SignVector:
    """The cocircuit on both lines through F and G, with C_g = + when C_g != 0.

    When C_g = 0 the representative whose first nonzero entry is + is returned.
    """
    zf, zg = F.zero_mask, G.zero_mask
    if not (O._is_coline(zf) and O._is_coline(zg)):
        raise OMError("crossing point needs two edges")
    meet = zf & zg
    if O._rank(meet) != O.rank - 3 or O._closure(meet) != meet:
        raise OMError("the zero sets of the edges do not meet in a coplane")
    common = O._line(zf | zg)
    if len(common) != 2:
        raise OMError(f"lines through {F} and {G} share {len(common)} cocircuits")
    return _orient(common[0], g)


@dataclass(frozen=True)
class ModularTriple:
    C: SignVector
    X: SignVector
    Y: SignVector

    @classmethod
    def build(cls, O: OrientedMatroid, C: SignVector, X: SignVector, Y: SignVector) -> "ModularTriple":
        if not is_modular_triple(O, C, X, Y):
            raise OMError(f"({C}, {X}, {Y}) is not a modular triple around a coplane")
        return cls(C, X, Y)


def is_modular_triple(O: OrientedMatroid, C: SignVector, X: SignVector, Y: SignVector) -> bool:
    zc, zx, zy = C.zero_mask, X.zero_mask, Y.zero_mask
    lines = (zc & zx, zc & zy, zx & zy)
    if not all(O._is_coline(m) for m in lines):
        return False
    if len(set(lines)) != 3:
        return False
    return O._rank(zc & zx & zy) == O.rank - 3


def project_pair(P: Program, T: ModularTriple, e: int) -> tuple[SignVector, SignVector]:
    """X¹ = elim(-X, C, g), Y¹ = elim(-Y, C, g); asserts Dir_{g,f}(X,Y) = -Dir_{e,f}(X¹,Y¹)."""
    O, g, f = P.om, P.g, P.f
    C, X, Y = T.C, T.X, T.Y
    if not (C[g] > 0 and X[g] > 0 and Y[g] > 0):
        raise OMError("projection needs C_g = X_g = Y_g = +")
    if C[e] == 0 or X[e] != 0 or Y[e] != 0:
        raise OMError(f"element {O.labels[e]} must lie in supp(C) and z(X∘Y)")
    if e == f:
        raise OMError("projection element must differ from f")
    X1 = eliminate(O, -X, C, g)
    Y1 = eliminate(O, -Y, C, g)
    if not O._is_coline(X1.zero_mask & Y1.zero_mask):
        raise LemmaViolation(f"{X1}∘{Y1} is not an edge")
    lhs = direction(O, g, f, X, Y)
    rhs = -direction(O, e, f, X1, Y1)
    if lhs != rhs:
        raise LemmaViolation(f"Dir_g,f(X,Y)={lhs} but -Dir_e,f(X1,Y1)={rhs}")
    return X1, Y1


def _walk_direction(steps: Sequence[int]) -> int:
    """+1 / -1 when the walk is directed forwards / backwards, 0 otherwise."""
    if any(s > 0 for s in steps) and all(s >= 0 for s in steps):
        return 1
    if any(s < 0 for s in steps) and all(s <= 0 for s in steps):
        return -1
    return 0


def triangle_walk(O: OrientedMatroid, T: ModularTriple) -> list[SignVector]:
    a = line_path(O, T.X, T.Y)
    b = line_path(O, T.Y, T.C)
    c = line_path(O, T.C, T.X)
    return a + b[1:] + c[1:]


def check_triangle(
    P: Program, T: ModularTriple, dir_fn: Callable[[SignVector, SignVector], int] | None = None
) -> bool:
    """True iff the closed walk X..Y..C..X along the three lines is not a directed cycle."""
    O, g, f = P.om, P.g, P.f
    if not (T.X[g] > 0 and T.Y[g] > 0):
        raise OMError("triangle needs X_g = Y_g = +")
    if not (T.C[g] > 0 or (T.C[g] == 0 and T.C[f] != 0)):
        raise OMError("triangle needs C_g = + or C_g = 0 != C_f")
    dir_fn = dir_fn or (lambda A, B: direction(O, g, f, A, B))
    walk = triangle_walk(O, T)
    return _walk_direction([dir_fn(a, b) for a, b in zip(walk, walk[1:])]) == 0


def check_zero_line(P: Program, T: ModularTriple, X1: SignVector, Y1: SignVector) -> bool:
    """X¹ ↔ X, Y¹ ↔ Y and Dir(X¹, Y¹) = Dir(X, Y) when C_g = C_f = 0."""
    O, g, f = P.om, P.g, P.f
    C, X, Y = T.C, T.X, T.Y
    if not (X[g] > 0 and Y[g] > 0 and C[g] == 0 and C[f] == 0):
        raise OMError("zero-line check needs X_g = Y_g = + and C_g = C_f = 0")
    if X1 in (X, C) or Y1 in (Y, C) or X1 == Y1:
        raise OMError("X¹, Y¹ must be distinct from the triple's points")
    if X1[g] <= 0 or Y1[g] <= 0:
        raise OMError("X¹, Y¹ must be affine")
    if not (X1.zero_mask & X.zero_mask & C.zero_mask == X.zero_mask & C.zero_mask):
        raise OMError("X¹ is not on the line through X∘C")
    if not (Y1.zero_mask & Y.zero_mask & C.zero_mask == Y.zero_mask & C.zero_mask):
        raise OMError("Y¹ is not on the line through Y∘C")
    if not O._is_coline(X1.zero_mask & Y1.zero_mask):
        raise OMError("X¹∘Y¹ is not an edge")
    return (
        direction(O, g, f, X1, X) == 0
        and direction(O, g, f, Y1, Y) == 0
        and direction(O, g, f, X1, Y1) == direction(O, g, f, X, Y)
    )


def modular_triples(O: OrientedMatroid, g: int) -> Iterator[ModularTriple]:
    """(C, X, Y) around a coplane with X_g = Y_g = +, X before Y and C_g >= 0."""
    if O.rank < 3:
        return
    affine = [X for X in O.cocircuits if X[g] > 0]
    points = [C for C in O.cocircuits if C[g] >= 0]
    for i, X in enumerate(affine):
        for Y in affine[i + 1:]:
            if not O._is_coline(X.zero_mask & Y.zero_mask):
                continue
            for C in points:
                if C == X or C == Y:
                    continue
                if is_modular_triple(O, C, X, Y):
                    yield ModularTriple(C, X, Y)


def scan_geometry(
    O: OrientedMatroid,
    report: Report | None = None,
    fs: Sequence[int] | None = None,
    limit: int | None = None,
    seed: int = 0,
) -> Report:
    """Projection, triangle and zero-line checks over every modular triple of every program.

    With ``limit`` a seeded sample of that many triples per g is used.
    """
    rep = report or Report()
    if O.rank < 3:
        rep.skip("geometry: rank below 3")
        return rep
    for g in range(O.n):
        if O.is_loop(g):
            continue
        triples = list(modular_triples(O, g))
        if limit is not None and len(triples) > limit:
            rng = random.Random(seed * 1009 + g)
            triples = [triples[i] for i in sorted(rng.sample(range(len(triples)), limit))]
        for f in fs if fs is not None else range(O.n):
            if f == g or O.is_coloop(f):
                continue
            P = Program(O, g, f)
            for T in triples:
                _scan_triple(P, T, rep)
    return rep


def _scan_triple(P: Program, T: ModularTriple, rep: Report) -> None:
    O, g, f = P.om, P.g, P.f
    C, X, Y = T.C, T.X, T.Y
    lab = O.labels
    t = {"C": str(C), "X": str(X), "Y": str(Y), "g": lab[g], "f": lab[f]}
    if C[g] > 0:
        for e in bits(C.support_mask & X.zero_mask & Y.zero_mask):
            if e == f:
                continue
            try:
                project_pair(P, T, e)
                ok = True
            except LemmaViolation as exc:
                ok = str(exc)
            rep.check("ProjectionLemma", dict(t, e=lab[e]), True, ok)
    if C[g] > 0 or C[f] != 0:
        rep.check("TriangleLemma", t, True, check_triangle(P, T))
    elif C[g] == 0 and C[f] == 0:
        xs = line_path(O, X, C)[1:-1] + line_path(O, X, -C)[1:-1]
        ys = line_path(O, Y, C)[1:-1] + line_path(O, Y, -C)[1:-1]
        for X1 in xs:
            for Y1 in ys:
                if X1 == Y1 or not O._is_coline(X1.zero_mask & Y1.zero_mask):
                    continue
                rep.check(
                    "ZeroLineLemma", dict(t, X1=str(X1), Y1=str(Y1)), True,
                    check_zero_line(P, T, X1, Y1),
                )
