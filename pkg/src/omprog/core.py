"""Sign vectors and oriented matroids presented by their cocircuits.

Elements of the ground set are addressed by their position ``0..n-1``.
Every sign vector is stored as a pair of bit masks (positive part,
negative part), so composition, separation and conformality are a few
integer operations.  Human readable element names live in
``OrientedMatroid.labels`` and are only used for I/O.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

_CHAR = {1: "+", -1: "-", 0: "0"}
_SIGN = {"+": 1, "-": -1, "0": 0}


class OMError(ValueError):
    """Raised on invalid input to an oriented matroid operation."""


class InvalidOrientedMatroid(RuntimeError):
    """Raised when the stored cocircuits contradict an oriented matroid axiom."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    e = 0
    while mask:
        if mask & 1:
            yield e
        mask >>= 1
        e += 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def sign_char(s: int) -> str:
    return _CHAR[s]


class SignVector:
    """Total map from ``range(n)`` to {-1, 0, +1}.

    ``X[e]`` reads a coordinate; ``-X`` negates; ``X.compose(Y)`` is X∘Y.
    """

    __slots__ = ("pos", "neg", "n", "_hash")

    def __init__(self, pos: int, neg: int, n: int):
        if pos & neg:
            raise OMError("positive and negative parts overlap")
        if (pos | neg) >> n:
            raise OMError("sign vector has entries outside its ground set")
        self.pos = pos
        self.neg = neg
        self.n = n
        self._hash = hash((pos, neg, n))

    @classmethod
    def from_str(cls, text: str) -> "SignVector":
        pos = neg = 0
        for e, ch in enumerate(text):
            try:
                s = _SIGN[ch]
            except KeyError:
                raise OMError(f"invalid sign character {ch!r} in {text!r}") from None
            if s > 0:
                pos |= 1 << e
            elif s < 0:
                neg |= 1 << e
        return cls(pos, neg, len(text))

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "SignVector":
        pos = neg = 0
        for e, s in enumerate(signs):
            if s > 0:
                pos |= 1 << e
            elif s < 0:
                neg |= 1 << e
        return cls(pos, neg, len(signs))

    @property
    def support_mask(self) -> int:
        return self.pos | self.neg

    @property
    def zero_mask(self) -> int:
        return ((1 << self.n) - 1) & ~(self.pos | self.neg)

    def __getitem__(self, e: int) -> int:
        if not 0 <= e < self.n:
            raise IndexError(e)
        b = 1 << e
        return 1 if self.pos & b else (-1 if self.neg & b else 0)

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return (self[e] for e in range(self.n))

    def __neg__(self) -> "SignVector":
        return SignVector(self.neg, self.pos, self.n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SignVector)
            and self.pos == other.pos
            and self.neg == other.neg
            and self.n == other.n
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "SignVector") -> bool:
        return str(self) < str(other)

    def __str__(self) -> str:
        return "".join(_CHAR[s] for s in self)

    def __repr__(self) -> str:
        return f"SignVector({str(self)!r})"

    def is_zero(self) -> bool:
        return not (self.pos | self.neg)

    def _check(self, other: "SignVector") -> None:
        if self.n != other.n:
            raise OMError(f"ground set mismatch: {self.n} vs {other.n} elements")

    def compose(self, other: "SignVector") -> "SignVector":
        self._check(other)
        supp = self.pos | self.neg
        return SignVector(
            self.pos | (other.pos & ~supp), self.neg | (other.neg & ~supp), self.n
        )

    def sep_mask(self, other: "SignVector") -> int:
        self._check(other)
        return (self.pos & other.neg) | (self.neg & other.pos)

    def is_conformal(self, other: "SignVector") -> bool:
        return not self.sep_mask(other)

    def is_canonical(self) -> bool:
        """True if the first nonzero coordinate is positive (the zero vector is canonical)."""
        supp = self.pos | self.neg
        low = supp & -supp
        return not (self.neg & low)

    def canonical(self) -> "SignVector":
        return self if self.is_canonical() else -self

    def restrict(self, keep: Sequence[int]) -> "SignVector":
        """Restriction to the listed positions, renumbered in the given order."""
        return SignVector.from_signs([self[e] for e in keep])

    def reorient(self, mask: int) -> "SignVector":
        flip_p = self.pos & mask
        flip_n = self.neg & mask
        return SignVector((self.pos & ~mask) | flip_n, (self.neg & ~mask) | flip_p, self.n)

    def append(self, s: int) -> "SignVector":
        b = 1 << self.n
        return SignVector(
            self.pos | (b if s > 0 else 0), self.neg | (b if s < 0 else 0), self.n + 1
        )


def sv(text: str) -> SignVector:
    """Shorthand: ``sv('+0-')``."""
    return SignVector.from_str(text)


def compose(X: SignVector, Y: SignVector) -> SignVector:
    return X.compose(Y)


def separation(X: SignVector, Y: SignVector) -> frozenset[int]:
    return frozenset(bits(X.sep_mask(Y)))


def zero_set(X: SignVector) -> frozenset[int]:
    return frozenset(bits(X.zero_mask))


def support(X: SignVector) -> frozenset[int]:
    return frozenset(bits(X.support_mask))


class OrientedMatroid:
    """An oriented matroid given by its full (negation closed) cocircuit set.

    Instances are treated as immutable.  Rank and closure queries go through
    the cocircuit supports and are memoised per instance.
    """

    def __init__(
        self,
        n: int,
        cocircuits: Iterable[SignVector],
        rank: int | None = None,
        labels: Sequence[str] | None = None,
    ):
        cocs = set(cocircuits)
        for X in cocs:
            if X.n != n:
                raise OMError(f"cocircuit {X} has length {X.n}, expected {n}")
        self.n = n
        self.cocircuits: tuple[SignVector, ...] = tuple(sorted(cocs, key=str))
        self.cocircuit_set = frozenset(cocs)
        self.full = (1 << n) - 1
        self.labels: tuple[str, ...] = (
            tuple(labels) if labels is not None else tuple(str(e + 1) for e in range(n))
        )
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise OMError("labels must be n distinct names")
        hyper: dict[int, list[SignVector]] = {}
        for X in self.cocircuits:
            if not X.is_zero():
                hyper.setdefault(X.zero_mask, []).append(X)
        self._hyperplanes = hyper
        self._closure_cache: dict[int, int] = {}
        self._rank_cache: dict[int, int] = {}
        self._line_cache: dict[int, tuple[SignVector, ...]] = {}
        self.memo: dict = {}
        self.rank = self._rank(self.full) if rank is None else rank

    @classmethod
    def from_pairs(
        cls,
        n: int,
        representatives: Iterable[SignVector | str],
        rank: int | None = None,
        labels: Sequence[str] | None = None,
    ) -> "OrientedMatroid":
        """Build from one representative per ± pair; negations are added."""
        cocs = set()
        for X in representatives:
            if isinstance(X, str):
                X = SignVector.from_str(X)
            cocs.add(X)
            cocs.add(-X)
        return cls(n, cocs, rank=rank, labels=labels)

    def __repr__(self) -> str:
        return (
            f"OrientedMatroid(n={self.n}, rank={self.rank}, "
            f"cocircuit_pairs={len(self.cocircuits) // 2})"
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, OrientedMatroid)
            and self.n == other.n
            and self.rank == other.rank
            and self.cocircuit_set == other.cocircuit_set
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rank, self.cocircuit_set))

    def position(self, label: str | int) -> int:
        """Position of an element given by label (ints are read as labels too)."""
        label = str(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise OMError(f"unknown element {label!r}") from None

    @property
    def hyperplane_masks(self) -> tuple[int, ...]:
        return tuple(self._hyperplanes)

    def pair_representatives(self) -> list[SignVector]:
        return [X for X in self.cocircuits if X.is_canonical()]

    def _closure(self, S: int) -> int:
        c = self._closure_cache.get(S)
        if c is None:
            c = self.full
            for H in self._hyperplanes:
                if H & S == S:
                    c &= H
            self._closure_cache[S] = c
        return c

    def _rank(self, S: int) -> int:
        r = self._rank_cache.get(S)
        if r is None:
            indep = 0
            r = 0
            for e in bits(S):
                if not (self._closure(indep) >> e) & 1:
                    indep |= 1 << e
                    r += 1
            self._rank_cache[S] = r
        return r

    def _line(self, zmask: int) -> tuple[SignVector, ...]:
        """All cocircuits whose zero set contains ``zmask``."""
        got = self._line_cache.get(zmask)
        if got is None:
            got = tuple(
                Z for H, zs in self._hyperplanes.items() if H & zmask == zmask for Z in zs
            )
            self._line_cache[zmask] = got
        return got

    def _is_coline(self, zmask: int) -> bool:
        return (
            self.rank >= 2
            and self._rank(zmask) == self.rank - 2
            and self._closure(zmask) == zmask
        )

    def _elements(self, S: Iterable[int]) -> int:
        m = 0
        for e in S:
            if not 0 <= e < self.n:
                raise OMError(f"unknown element {e}")
            m |= 1 << e
        return m

    def is_loop(self, e: int) -> bool:
        return all(X[e] == 0 for X in self.cocircuits)

    def is_coloop(self, e: int) -> bool:
        return (self.full & ~(1 << e)) in self._hyperplanes

    def require_cocircuit(self, X: SignVector) -> None:
        if X not in self.cocircuit_set:
            raise OMError(f"{X} is not a cocircuit")


def closure(O: OrientedMatroid, S: Iterable[int]) -> frozenset[int]:
    """Closure in the underlying matroid: intersection of the hyperplanes containing S."""
    return frozenset(bits(O._closure(O._elements(S))))


def rank_of(O: OrientedMatroid, S: Iterable[int]) -> int:
    return O._rank(O._elements(S))


def is_flat(O: OrientedMatroid, S: Iterable[int]) -> bool:
    m = O._elements(S)
    return O._closure(m) == m


def is_edge(O: OrientedMatroid, F: SignVector) -> bool:
    """F is an edge iff its zero set is a coline (a flat of rank r-2)."""
    if F.n != O.n:
        raise OMError("ground set mismatch")
    return O._is_coline(F.zero_mask)


def comodular(O: OrientedMatroid, X: SignVector, Y: SignVector) -> bool:
    O.require_cocircuit(X)
    O.require_cocircuit(Y)
    return O._is_coline(X.zero_mask & Y.zero_mask)


def eliminate(O: OrientedMatroid, X: SignVector, Y: SignVector, e: int) -> SignVector:
    """Unique cocircuit Z of a modular elimination of ``e`` between X and Y.

    Z_e = 0, supp(Z) ⊆ supp(X∘Y) and Z agrees with X∘Y off sep(X, Y).
    """
    key = (X, Y, e)
    memo = O.memo.setdefault("elim", {})
    Z = memo.get(key)
    if Z is not None:
        return Z
    sep = X.sep_mask(Y)
    if not (sep >> e) & 1:
        raise OMError(f"element {e} is not in sep({X}, {Y})")
    if not comodular(O, X, Y):
        raise OMError(f"{X} and {Y} are not comodular")
    W = X.compose(Y)
    keep = ~sep
    wp, wn = W.pos & keep, W.neg & keep
    found = [
        Z
        for Z in O._line(W.zero_mask | (1 << e))
        if (Z.pos & keep) == wp and (Z.neg & keep) == wn
    ]
    if len(found) != 1:
        raise InvalidOrientedMatroid(
            f"elimination of {e} between {X} and {Y} has {len(found)} candidates"
        )
    memo[key] = found[0]
    return found[0]


def eliminate_by_scan(O: OrientedMatroid, X: SignVector, Y: SignVector, e: int) -> SignVector:
    """Reference elimination: scan every stored cocircuit for the defining conditions.

    Shares no code path with :func:`eliminate` (no rank or line queries).
    """
    if X[e] == 0 or X[e] != -Y[e]:
        raise OMError(f"element {e} is not in sep({X}, {Y})")
    W = [x if x else y for x, y in zip(X, Y)]
    sep = {h for h in range(O.n) if X[h] != 0 and X[h] == -Y[h]}
    hits = []
    for Z in O.cocircuits:
        if Z[e] != 0:
            continue
        if any(Z[h] != 0 and W[h] == 0 for h in range(O.n)):
            continue
        if any(Z[h] != W[h] for h in range(O.n) if h not in sep):
            continue
        hits.append(Z)
    if len(hits) != 1:
        raise InvalidOrientedMatroid(f"scan found {len(hits)} eliminations")
    return hits[0]


def cocircuits_on_line(O: OrientedMatroid, F: SignVector) -> list[SignVector]:
    if not is_edge(O, F):
        raise OMError(f"{F} is not an edge")
    return sorted(O._line(F.zero_mask), key=str)


def reorient(O: OrientedMatroid, S: Iterable[int]) -> OrientedMatroid:
    m = O._elements(S)
    if not m:
        return O
    return OrientedMatroid(
        O.n, (X.reorient(m) for X in O.cocircuits), rank=O.rank, labels=O.labels
    )


def _minimal(vectors: Iterable[SignVector]) -> list[SignVector]:
    vs = {X for X in vectors if not X.is_zero()}
    supports = {X.support_mask for X in vs}
    return [
        X
        for X in vs
        if not any(s != X.support_mask and s & X.support_mask == s for s in supports)
    ]


def contract(O: OrientedMatroid, A: Iterable[int]) -> OrientedMatroid:
    """O/A on the remaining elements (labels are kept)."""
    m = O._elements(A)
    if m == O.full:
        raise OMError("cannot contract the whole ground set")
    keep = [e for e in range(O.n) if not (m >> e) & 1]
    cocs = [X.restrict(keep) for X in O.cocircuits if not (X.support_mask & m)]
    return OrientedMatroid(
        len(keep), cocs, rank=O.rank - O._rank(m), labels=[O.labels[e] for e in keep]
    )


def delete(O: OrientedMatroid, A: Iterable[int]) -> OrientedMatroid:
    """O\\A on the remaining elements (labels are kept)."""
    m = O._elements(A)
    if m == O.full:
        raise OMError("cannot delete the whole ground set")
    keep = [e for e in range(O.n) if not (m >> e) & 1]
    cocs = _minimal(X.restrict(keep) for X in O.cocircuits)
    return OrientedMatroid(
        len(keep), cocs, rank=O._rank(O.full & ~m), labels=[O.labels[e] for e in keep]
    )


@dataclass
class Violation:
    kind: str  # zero | length | symmetry | incomparability | elimination | rank
    detail: str
    witness: tuple[str, ...] = ()
    hard: bool = True


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "violations": [
                {"kind": v.kind, "detail": v.detail, "witness": list(v.witness), "hard": v.hard}
                for v in self.violations
            ],
        }


def validate(O: OrientedMatroid, max_report: int = 20) -> ValidationReport:
    """Check the cocircuit axioms and rank consistency; violations are data."""
    rep = ValidationReport()
    add = rep.violations.append
    cocs = O.cocircuits
    for X in cocs:
        if X.is_zero():
            add(Violation("zero", "zero vector stored as cocircuit", (str(X),)))
        if -X not in O.cocircuit_set:
            add(Violation("symmetry", "negation missing", (str(X),)))
    nonzero = [X for X in cocs if not X.is_zero()]
    by_support: dict[int, list[SignVector]] = {}
    for X in nonzero:
        by_support.setdefault(X.support_mask, []).append(X)
    for s, group in by_support.items():
        reps = {X.canonical() for X in group}
        if len(reps) > 1:
            add(Violation("incomparability", "distinct pairs share a support",
                          tuple(sorted(str(X) for X in reps))))
    supports = sorted(by_support)
    for s in supports:
        for t in supports:
            if s != t and s & t == s:
                add(Violation("incomparability", "properly nested supports",
                              (str(by_support[s][0]), str(by_support[t][0]))))
    hard = bool(rep.violations)

    zero_at: list[list[tuple[int, int]]] = [[] for _ in range(O.n)]
    for Z in nonzero:
        for e in bits(Z.zero_mask):
            zero_at[e].append((Z.pos, Z.neg))
    elim_fail = 0
    canon = [X for X in nonzero if X.is_canonical()]
    canon_index = {X: i for i, X in enumerate(canon)}
    for i, X in enumerate(canon):
        for Y in nonzero:
            j = canon_index.get(Y)
            if (j is not None and j <= i) or Y == -X:
                continue
            sep = X.sep_mask(Y)
            if not sep:
                continue
            rep.pairs_checked += 1
            up, un = X.pos | Y.pos, X.neg | Y.neg
            for e in bits(sep):
                if not any(not (zp & ~up) and not (zn & ~un) for zp, zn in zero_at[e]):
                    elim_fail += 1
                    if elim_fail <= max_report:
                        add(Violation("elimination", f"no elimination of element {e}",
                                      (str(X), str(Y), str(e)), hard=False))
    if elim_fail > max_report:
        add(Violation("elimination", f"{elim_fail - max_report} further elimination failures",
                      hard=False))

    if not hard:
        r = O._rank(O.full)
        if r != O.rank:
            add(Violation("rank", f"declared rank {O.rank}, oracle rank {r}"))
        for H, zs in O._hyperplanes.items():
            if O._rank(H) != O.rank - 1:
                add(Violation("rank", "cocircuit zero set is not a hyperplane", (str(zs[0]),)))
    return rep
