"""Brute-force reference computations that share no code with the package.

Sign vectors here are plain tuples of -1/0/+1.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                q = m[i][c] / m[rank][c]
                m[i] = [a - q * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _det(rows) -> Fraction:
    """Laplace expansion; fine for the 4x4 matrices used here."""
    if len(rows) == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * _det(minor)
    return total


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def rank(vectors, subset) -> int:
    rows = [vectors[e] for e in subset]
    return _rank(rows) if rows else 0


def closure(vectors, subset) -> set[int]:
    r = rank(vectors, subset)
    return {e for e in range(len(vectors)) if rank(vectors, list(subset) + [e]) == r}


def cocircuits(vectors) -> set[tuple[int, ...]]:
    """Both signs of the functional vanishing on each hyperplane spanned by r-1 vectors.

    Assumes the vectors live in R^r with r the rank of the configuration.
    """
    r = _rank(vectors)
    assert len(vectors[0]) == r, "oracle expects full-dimensional configurations"
    out = set()
    for A in combinations(range(len(vectors)), r - 1):
        if rank(vectors, A) < r - 1:
            continue
        X = tuple(_sign(_det([list(vectors[a]) for a in A] + [list(v)])) for v in vectors)
        out.add(X)
        out.add(tuple(-x for x in X))
    return out


def parse(text: str) -> tuple[int, ...]:
    return tuple({"+": 1, "-": -1, "0": 0}[c] for c in text)


def show(X) -> str:
    return "".join({1: "+", -1: "-", 0: "0"}[x] for x in X)


def elimination_filter(cocs, X, Y, e) -> list[tuple[int, ...]]:
    """Every cocircuit Z with Z_e = 0, supp Z within supp(X∘Y), Z = X∘Y off sep(X, Y)."""
    W = [x if x else y for x, y in zip(X, Y)]
    sep = {h for h in range(len(X)) if X[h] and X[h] == -Y[h]}
    return sorted(
        Z for Z in cocs
        if Z[e] == 0
        and all(W[h] != 0 for h in range(len(Z)) if Z[h])
        and all(Z[h] == W[h] for h in range(len(Z)) if h not in sep)
    )


def lex_sigma(Y, elements, signs) -> int:
    for e, a in zip(elements, signs):
        if Y[e]:
            return a * Y[e]
    return 0


def single_element_extension(cocs, rank_fn, r, sigma) -> set[tuple[int, ...]]:
    """Old (Y, σY) plus new (Y1∘Y2, 0) over conformal pairs with opposite nonzero σ
    whose composition has a rank r-2 zero set."""
    out = {tuple(Y) + (sigma(Y),) for Y in cocs}
    for Y1 in cocs:
        for Y2 in cocs:
            if sigma(Y1) <= 0 or sigma(Y2) >= 0:
                continue
            if any(a and a == -b for a, b in zip(Y1, Y2)):
                continue
            W = tuple(a if a else b for a, b in zip(Y1, Y2))
            if rank_fn([h for h in range(len(W)) if W[h] == 0]) == r - 2:
                out.add(W + (0,))
                out.add(tuple(-w for w in W) + (0,))
    return out
