"""Classification of edges between two new cocircuits and their direction rules."""
from __future__ import annotations

from dataclasses import dataclass

from ..core import OMError, SignVector, comodular, eliminate
from ..extension import ExtensionResult
from ..program import direction
from .geometry import crossing_point, is_modular_triple
from .records import LemmaViolation, Report

KINDS = (
    "A",
    "B",
    "AB",
    "index-change-with-side-change",
    "index-change-without-side-change",
)


@dataclass(frozen=True)
class Constellation:
    """``original`` is ordered so that ind_X <= ind_Y; sides are normalized so X²_{e_i} = 0."""

    kind: str
    original: tuple[SignVector, SignVector]
    xs: tuple[SignVector, SignVector]
    ys: tuple[SignVector, SignVector]
    indices: tuple[int, int]
    reordered: bool = False
    sides_swapped: bool = False

    @property
    def same_index(self) -> bool:
        return self.indices[0] == self.indices[1]

    def to_dict(self) -> dict:
        X, Y = self.original
        return {
            "kind": self.kind,
            "X": str(X),
            "Y": str(Y),
            "X1": str(self.xs[0]),
            "X2": str(self.xs[1]),
            "Y1": str(self.ys[0]),
            "Y2": str(self.ys[1]),
            "indices": list(self.indices),
        }


def _require_b(ext: ExtensionResult, X: SignVector, Y: SignVector) -> None:
    if ext.lexspec is None or not ext.lexspec.is_positive:
        raise OMError("constellations need a positive lexicographic extension")
    for V in (X, Y):
        if ext.tags.get(V) != "new":
            raise OMError(f"{V} is not a new cocircuit")
    if X.sep_mask(Y):
        raise OMError(f"{X} and {Y} are not conformal")
    if not comodular(ext.extended, X, Y):
        raise OMError(f"{X} and {Y} do not span an edge")


def classify_constellation(ext: ExtensionResult, X: SignVector, Y: SignVector) -> Constellation:
    """Constellation of the edge X∘Y between two conformal new cocircuits.

    Provenance pairs are stored with the p = + member first, so X¹_p = Y¹_p
    holds before normalization.  Raises LemmaViolation if the side
    conditions on shared provenance fail.
    """
    _require_b(ext, X, Y)
    I = ext.lexspec.elements
    i, j = ext.index(X), ext.index(Y)
    reordered = j < i
    if reordered:
        X, Y, i, j = Y, X, j, i
    (X1, X2), (Y1, Y2) = ext.provenance[X], ext.provenance[Y]
    ei = I[i - 1]
    swapped = False
    if i == j:
        if X2[ei] == 0 and Y2[ei] == 0:
            pass
        elif X1[ei] == 0 and Y1[ei] == 0:
            X1, X2, Y1, Y2 = X2, X1, Y2, Y1
            swapped = True
        else:
            raise LemmaViolation(f"same-index pair {X}, {Y} has no common zero side on e_{i}")
        if X1 != Y1 and X2 == Y2:
            kind = "A"
        elif X1 != Y1:
            kind = "B"
        elif X2 != Y2:
            kind = "AB"
        else:
            raise LemmaViolation(f"{X} and {Y} share both provenance cocircuits")
    else:
        if X2[ei] != 0:
            X1, X2, Y1, Y2 = X2, X1, Y2, Y1
            swapped = True
        if X2[ei] != 0:
            raise LemmaViolation(f"neither provenance cocircuit of {X} vanishes on e_{i}")
        if not (X2 == Y2 and Y1[ei] == 0 and Y2[ei] == 0):
            raise LemmaViolation(f"index change {X}, {Y} does not share the second side")
        ej = I[j - 1]
        kind = KINDS[3] if Y1[ej] == 0 else KINDS[4]
    return Constellation(kind, (X, Y), (X1, X2), (Y1, Y2), (i, j), reordered, swapped)


def new_edge_pairs(ext: ExtensionResult) -> list[tuple[SignVector, SignVector]]:
    """Unordered conformal comodular pairs of new cocircuits."""
    O1 = ext.extended
    news = ext.new
    return [
        (X, Y)
        for a, X in enumerate(news)
        for Y in news[a + 1:]
        if not X.sep_mask(Y) and comodular(O1, X, Y)
    ]


def cutting_point(ext: ExtensionResult, X: SignVector, Y: SignVector, g: int = 0) -> SignVector:
    """Crossing point of the lines through the provenance pairs of X and Y."""
    (X1, X2), (Y1, Y2) = ext.provenance[X], ext.provenance[Y]
    return crossing_point(ext.extended, X1.compose(X2), Y1.compose(Y2), g)


def _involved(c: Constellation) -> tuple[SignVector, ...]:
    return c.original + c.xs + c.ys


def scan_constellations(ext: ExtensionResult, report: Report | None = None) -> Report:
    """Structural propositions per new edge, direction rules per program (g, f)."""
    rep = report or Report()
    spec = ext.lexspec
    if spec is None or not spec.is_positive:
        rep.skip("constellations: extension is not positive lexicographic")
        return rep
    O1, p, I = ext.extended, ext.p, spec.elements
    lab = O1.labels
    found: list[Constellation] = []
    for X, Y in new_edge_pairs(ext):
        t = {"X": str(X), "Y": str(Y)}
        C = cutting_point(ext, X, Y)
        ok = C[p] != 0 and C not in (X, -X, Y, -Y) and is_modular_triple(O1, C, X, Y)
        rep.check("CuttingCondition", dict(t, C=str(C)), True, ok)
        quad = ext.provenance[X] + ext.provenance[Y]
        if len(set(quad)) == 4:
            hit = any(C == V or C == -V for V in quad)
            rep.check("DistinctCocircuits", dict(t, C=str(C)), False, hit)
        try:
            c = classify_constellation(ext, X, Y)
        except LemmaViolation as exc:
            rep.check("sameIndexEdgesOnTheSamePSide", t, True, str(exc))
            continue
        rep.check("sameIndexEdgesOnTheSamePSide", t, True, True)
        if c.kind in ("B", "AB"):
            X2, Y2 = c.xs[1], c.ys[1]
            rep.check("X2Y2Edge", t, (True, True), (comodular(O1, X2, Y2), not X2.sep_mask(Y2)))
        found.append(c)
    for g in range(ext.base.n):
        for f in range(ext.base.n):
            if f == g:
                continue
            for c in found:
                _scan_directions(ext, c, g, f, rep)
    return rep


def _scan_directions(ext: ExtensionResult, c: Constellation, g: int, f: int, rep: Report) -> None:
    O1, I, k = ext.extended, ext.lexspec.elements, ext.lexspec.k
    X, Y = c.original
    if not (X[g] > 0 and Y[g] > 0):
        return
    if any(V[g] == 0 and V[f] == 0 for V in _involved(c)):
        rep.skip("constellations: a cocircuit is zero on f and g")
        return
    lab = O1.labels

    def d(A: SignVector, B: SignVector, gg: int = g, ff: int = f) -> int:
        return direction(O1, gg, ff, A, B)

    t = dict(c.to_dict(), g=lab[g], f=lab[f])
    dxy = d(X, Y)
    if not c.same_index:
        C = c.xs[1]
        dcy = d(C, Y)
        if dcy == 0:
            rep.check("upDownIndexChange(zero)", t, d(X, C), dxy)
        else:
            rep.check("upDownIndexChange(nonzero)", t, dcy, dxy)
        return
    if c.kind not in ("B", "AB"):
        return
    i = c.indices[0]
    if f in I[: i - 1] or g in I[: i - 1]:
        return
    X2, Y2 = c.xs[1], c.ys[1]
    dx2, dy2 = d(X, X2), d(Y, Y2)
    if dx2 == 0 or dx2 != dy2:
        return
    vp = X2[ext.p]
    if X2[g] != 0 and Y2[g] != 0:
        d22 = d(X2, Y2)
        if d22 != 0:
            rep.check("constellationBDirCorrEdge(i)", t, d22, dxy)
            return
        Z = eliminate(O1, -X2, Y2, g)
        j = ext.index(Z)
        if j <= k:
            want = -vp * dx2 * d(X2, Y2, g, I[j - 1])
            rep.check("constellationBDirCorrEdge(ii)", dict(t, j=j), want, dxy)
        else:
            rep.check("constellationBDirCorrEdge(iii)", t, 0, dxy)
    elif X2[g] != 0 or Y2[g] != 0:
        rep.check("constellationBDirCorrEdge(mixed)", t, d(X2, Y2), dxy)
    else:
        Z = eliminate(O1, -X2, Y2, f)
        j = ext.index(Z)
        if j <= k:
            want = -vp * dx2 * d(X2, Y2, f, I[j - 1])
            rep.check("constellationBDirCorrEdge(iv)", dict(t, j=j), want, dxy)
        else:
            rep.check("constellationBDirCorrEdge(v)", t, 0, dxy)
