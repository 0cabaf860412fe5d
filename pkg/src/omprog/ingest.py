"""Realizable instances: integer vector configurations and chirotopes."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .core import OMError, OrientedMatroid, SignVector, validate


class ChirotopeError(OMError):
    pass


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix via fraction-free row reduction."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = m[i][c]
                m[i] = [x * p[c] - f * y for x, y in zip(m[i], p)]
        rank += 1
    return rank


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class VectorConfig:
    vectors: tuple[tuple[int, ...], ...]

    def __init__(self, vectors):
        object.__setattr__(self, "vectors", tuple(tuple(int(x) for x in v) for v in vectors))
        if not self.vectors:
            raise OMError("empty vector configuration")
        if len({len(v) for v in self.vectors}) != 1:
            raise OMError("vectors have different dimensions")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def dimension(self) -> int:
        return len(self.vectors[0])

    def rank(self) -> int:
        return rank_int(self.vectors)

    def projected(self) -> list[tuple[int, ...]]:
        """Coordinates on r columns that keep the rank, so r x r minors are meaningful."""
        r = self.rank()
        if r == 0:
            raise OMError("all-zero configuration")
        for cols in combinations(range(self.dimension), r):
            sub = [tuple(v[c] for c in cols) for v in self.vectors]
            if rank_int(sub) == r:
                return sub
        raise AssertionError("no rank preserving coordinate projection")


def om_from_vectors(cfg: VectorConfig, check: bool = True) -> OrientedMatroid:
    """Cocircuits of the realizable oriented matroid of ``cfg``.

    One cocircuit pair per hyperplane spanned by an (r-1)-subset A:
    e -> sign det(v_A, v_e).
    """
    w = cfg.projected()
    r = len(w[0])
    n = cfg.n
    cocs: set[SignVector] = set()
    for A in combinations(range(n), r - 1):
        base = [w[a] for a in A]
        if rank_int(base) < r - 1:
            continue
        X = SignVector.from_signs([_sgn(det_int(base + [w[e]])) for e in range(n)])
        if not X.is_zero():
            cocs.add(X)
            cocs.add(-X)
    O = OrientedMatroid(n, cocs, rank=r)
    if check:
        rep = validate(O)
        if not rep.ok:
            raise AssertionError(f"realizable input failed validation: {rep.violations[0]}")
    return O


def colex_subsets(n: int, r: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(n), r), key=lambda s: s[::-1])


def _sort_sign(t: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sorted tuple and the sign of the sorting permutation (0 on repeats)."""
    t = list(t)
    if len(set(t)) != len(t):
        return tuple(sorted(t)), 0
    sign = 1
    for i in range(len(t)):
        for j in range(len(t) - 1 - i):
            if t[j] > t[j + 1]:
                t[j], t[j + 1] = t[j + 1], t[j]
                sign = -sign
    return tuple(t), sign


class Chirotope:
    """Alternating sign map on ordered r-tuples, stored on sorted r-subsets."""

    def __init__(self, n: int, r: int, signs: dict):
        self.n = n
        self.r = r
        table: dict[tuple[int, ...], int] = {}
        for key, s in signs.items():
            if len(key) != r or any(not 0 <= e < n for e in key):
                raise ChirotopeError(f"bad index tuple {key}")
            srt, psign = _sort_sign(key)
            if psign == 0:
                if s != 0:
                    raise ChirotopeError(f"tuple with repeated element {key} has nonzero sign")
                continue
            val = s * psign
            if table.setdefault(srt, val) != val:
                raise ChirotopeError(f"sign map is not alternating at {key}")
        for B in combinations(range(n), r):
            table.setdefault(B, 0)
        if not any(table.values()):
            raise ChirotopeError("chirotope is identically zero")
        self.table = table

    def __call__(self, t: Sequence[int]) -> int:
        srt, psign = _sort_sign(t)
        return psign * self.table[srt] if psign else 0

    @classmethod
    def from_string(cls, n: int, r: int, text: str) -> "Chirotope":
        subsets = colex_subsets(n, r)
        text = "".join(text.split())
        if len(text) != len(subsets):
            raise ChirotopeError(f"expected {len(subsets)} signs, got {len(text)}")
        try:
            vals = [{"+": 1, "-": -1, "0": 0}[c] for c in text]
        except KeyError as exc:
            raise ChirotopeError(f"invalid sign character {exc}") from None
        return cls(n, r, dict(zip(subsets, vals)))

    def to_string(self) -> str:
        return "".join("+-0"[{1: 0, -1: 1, 0: 2}[self.table[B]]] for B in colex_subsets(self.n, self.r))

    def check_grassmann_plucker(self) -> list[tuple]:
        """Three-term Grassmann-Plücker sign violations (empty when consistent)."""
        bad = []
        for sigma in combinations(range(self.n), self.r - 2):
            rest = [e for e in range(self.n) if e not in sigma]
            for a, b, c, d in combinations(rest, 4):
                s = list(sigma)
                terms = {
                    self(s + [a, b]) * self(s + [c, d]),
                    -self(s + [a, c]) * self(s + [b, d]),
                    self(s + [a, d]) * self(s + [b, c]),
                }
                terms.discard(0)
                if len(terms) == 1:
                    bad.append((tuple(sigma), a, b, c, d))
        return bad


def chirotope_from_vectors(cfg: VectorConfig) -> Chirotope:
    w = cfg.projected()
    r = len(w[0])
    return Chirotope(
        cfg.n, r, {B: _sgn(det_int([w[e] for e in B])) for B in combinations(range(cfg.n), r)}
    )


def om_from_chirotope(chi: Chirotope) -> OrientedMatroid:
    if chi.r >= 2 and chi.check_grassmann_plucker():
        raise ChirotopeError("three-term Grassmann-Plücker relations fail")
    cocs: set[SignVector] = set()
    for A in combinations(range(chi.n), chi.r - 1):
        X = SignVector.from_signs([chi(A + (e,)) for e in range(chi.n)])
        if not X.is_zero():
            cocs.add(X)
            cocs.add(-X)
    O = OrientedMatroid(chi.n, cocs, rank=chi.r)
    rep = validate(O)
    if not rep.ok:
        raise ChirotopeError(f"inconsistent chirotope: {rep.violations[0].kind} {rep.violations[0].witness}")
    return O


def random_configs(
    seed: int,
    count: int,
    ranks: Sequence[int] = (2, 3, 4),
    max_n: int = 8,
    min_n: int | None = None,
    entry: int = 3,
) -> Iterator[VectorConfig]:
    """Seeded integer configurations with entries in [-entry, entry] and full rank."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        r = rng.choice(list(ranks))
        lo = max(r + 1, min_n or 0)
        if lo > max_n:
            continue
        n = rng.randint(lo, max_n)
        vecs = []
        while len(vecs) < n:
            v = tuple(rng.randint(-entry, entry) for _ in range(r))
            if any(v):
                vecs.append(v)
        if rank_int(vecs) != r:
            continue
        made += 1
        yield VectorConfig(vecs)
