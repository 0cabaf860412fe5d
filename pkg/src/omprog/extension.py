"""Single-element extensions from localizations, lexicographic extensions."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Mapping, Sequence

from .core import (
    OMError,
    OrientedMatroid,
    SignVector,
    bits,
    mask_of,
    validate,
)


class ExtensionError(OMError):
    pass


@dataclass(frozen=True)
class LexSpec:
    """Ordered elements [e_1..e_k] with signs [a_1..a_k] (each +1 or -1)."""

    elements: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.elements) != len(self.signs):
            raise OMError("elements and signs differ in length")
        if len(set(self.elements)) != len(self.elements):
            raise OMError("lexicographic elements must be distinct")
        if any(s not in (1, -1) for s in self.signs):
            raise OMError("lexicographic signs must be +1 or -1")

    @classmethod
    def positive(cls, elements: Sequence[int]) -> "LexSpec":
        return cls(tuple(elements), (1,) * len(elements))

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def is_positive(self) -> bool:
        return all(s > 0 for s in self.signs)

    def format(self, labels: Sequence[str]) -> str:
        return "[" + ",".join(
            f"{labels[e]}{'+' if s > 0 else '-'}" for e, s in zip(self.elements, self.signs)
        ) + "]"


_LEX_ITEM = re.compile(r"^\s*([^\s,+\-\[\]]+)\s*([+-])\s*$")


def parse_lexspec(text: str, O: OrientedMatroid) -> LexSpec:
    """Parse ``lex [1+,3-]`` (the ``lex`` keyword is optional); labels are element names."""
    t = text.strip()
    if t.startswith("lex"):
        t = t[3:].strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise OMError(f"malformed lexicographic spec {text!r}")
    body = t[1:-1].strip()
    elements, signs = [], []
    if body:
        for item in body.split(","):
            m = _LEX_ITEM.match(item)
            if not m:
                raise OMError(f"malformed lexicographic item {item!r}")
            elements.append(O.position(m.group(1)))
            signs.append(1 if m.group(2) == "+" else -1)
    return LexSpec(tuple(elements), tuple(signs))


def index_of(Y: SignVector, I: Sequence[int]) -> int:
    """1-based position of the first element of I where Y is nonzero; k+1 if none."""
    for i, e in enumerate(I, start=1):
        if Y[e] != 0:
            return i
    return len(I) + 1


class Localization:
    """Sign assignment on the cocircuits of ``om``."""

    def __init__(self, om: OrientedMatroid, assignment: Mapping[SignVector, int]):
        self.om = om
        self.assignment = dict(assignment)
        missing = [Y for Y in om.cocircuits if Y not in self.assignment]
        if missing:
            raise ExtensionError(f"localization undefined on {missing[0]}")

    def __call__(self, Y: SignVector) -> int:
        return self.assignment[Y]

    def odd_violations(self) -> list[SignVector]:
        return [Y for Y, s in self.assignment.items() if self.assignment.get(-Y) != -s]


def lex_specs(
    O: OrientedMatroid,
    cap: int | None = None,
    seed: int = 0,
    positive_only: bool = False,
    k_min: int = 1,
) -> list[LexSpec]:
    """Ordered independent subsets with k <= r and every sign pattern.

    With ``cap`` a seeded uniform sample of that size is kept, in enumeration order.
    """
    out = []
    for k in range(k_min, O.rank + 1):
        for I in permutations(range(O.n), k):
            if O._rank(mask_of(I)) != k:
                continue
            patterns = [(1,) * k] if positive_only else product((1, -1), repeat=k)
            out.extend(LexSpec(I, a) for a in patterns)
    if cap is not None and len(out) > cap:
        keep = sorted(random.Random(seed).sample(range(len(out)), cap))
        out = [out[i] for i in keep]
    return out


def check_lexspec(O: OrientedMatroid, spec: LexSpec) -> None:
    for e in spec.elements:
        if not 0 <= e < O.n:
            raise ExtensionError(f"unknown element {e}")
    if spec.k > O.rank:
        raise ExtensionError(f"lexicographic sequence longer than the rank {O.rank}")
    if O._rank(mask_of(spec.elements)) != spec.k:
        raise ExtensionError("lexicographic elements are dependent")


def lex_localization(O: OrientedMatroid, spec: LexSpec) -> Localization:
    check_lexspec(O, spec)
    sigma = {}
    for Y in O.cocircuits:
        i = index_of(Y, spec.elements)
        sigma[Y] = spec.signs[i - 1] * Y[spec.elements[i - 1]] if i <= spec.k else 0
    return Localization(O, sigma)


@dataclass
class ExtensionResult:
    base: OrientedMatroid
    extended: OrientedMatroid
    sigma: Localization
    p: int
    tags: dict[SignVector, str]
    # new cocircuit -> (A, B), old cocircuits of the extension with A_p = +, B_p = -
    provenance: dict[SignVector, tuple[SignVector, SignVector]]
    source: dict[SignVector, SignVector]
    lexspec: LexSpec | None = None

    @property
    def new(self) -> list[SignVector]:
        return [Z for Z in self.extended.cocircuits if self.tags[Z] == "new"]

    @property
    def old(self) -> list[SignVector]:
        return [Z for Z in self.extended.cocircuits if self.tags[Z] == "old"]

    def is_new(self, Z: SignVector) -> bool:
        return self.tags[Z] == "new"

    def index(self, Z: SignVector) -> int:
        if self.lexspec is None:
            raise ExtensionError("index is only defined for lexicographic extensions")
        return index_of(Z, self.lexspec.elements)

    def drop_p(self, Z: SignVector) -> SignVector:
        return Z.restrict(range(self.p))


def _p_label(labels: Sequence[str]) -> str:
    name = "p"
    while name in labels:
        name += "'"
    return name


def extend(
    O: OrientedMatroid,
    sigma: Localization,
    lexspec: LexSpec | None = None,
    check: bool = True,
) -> ExtensionResult:
    """Cocircuits of O ∪ p: old (Y, σ(Y)) and new (Y1∘Y2, 0).

    New cocircuits come from conformal pairs with σ(Y1) = -σ(Y2) ≠ 0 whose
    composition has a zero set of rank r-2.  With ``check`` the result is
    validated, which also certifies that σ is a localization.
    """
    if sigma.om is not O:
        raise ExtensionError("localization belongs to a different oriented matroid")
    odd = sigma.odd_violations()
    if odd:
        raise ExtensionError(f"localization is not odd at {odd[0]}")
    if not any(sigma.assignment.values()):
        raise ExtensionError("trivial extension: σ ≡ 0 makes p a loop")
    p = O.n
    tags: dict[SignVector, str] = {}
    source: dict[SignVector, SignVector] = {}
    provenance: dict[SignVector, tuple[SignVector, SignVector]] = {}
    for Y in O.cocircuits:
        Z = Y.append(sigma(Y))
        tags[Z] = "old"
        source[Z] = Y
    plus = [Y for Y in O.cocircuits if sigma(Y) > 0]
    minus = [Y for Y in O.cocircuits if sigma(Y) < 0]
    target = O.rank - 2
    for Y1 in plus:
        for Y2 in minus:
            if Y1.sep_mask(Y2):
                continue
            W = Y1.compose(Y2)
            if O._rank(W.zero_mask) != target:
                continue
            Z = W.append(0)
            pair = (Y1.append(1), Y2.append(-1))
            prev = provenance.get(Z)
            if prev is not None and prev != pair:
                raise ExtensionError(f"new cocircuit {Z} derived from two different pairs")
            if Z in tags and tags[Z] == "old":
                raise ExtensionError(f"{Z} is both old and new")
            if check and W in O.cocircuit_set:
                raise ExtensionError(f"new cocircuit {Z} restricts to a cocircuit of O")
            tags[Z] = "new"
            provenance[Z] = pair
    ext = OrientedMatroid(
        p + 1, tags, rank=O.rank, labels=tuple(O.labels) + (_p_label(O.labels),)
    )
    if check:
        rep = validate(ext)
        if not rep.ok:
            v = rep.violations[0]
            raise ExtensionError(f"not a localization: {v.kind} {v.detail} {v.witness}")
    return ExtensionResult(O, ext, sigma, p, tags, provenance, source, lexspec)


def lex_extend(O: OrientedMatroid, spec: LexSpec, check: bool = True) -> ExtensionResult:
    return extend(O, lex_localization(O, spec), lexspec=spec, check=check)


def classify(res: ExtensionResult, Z: SignVector) -> str:
    if Z not in res.tags:
        raise ExtensionError(f"{Z} is not a cocircuit of the extension")
    if res.lexspec is None:
        return res.tags[Z]
    kind = "old" if Z[res.p] != 0 or res.index(Z) == res.lexspec.k + 1 else "new"
    if kind != res.tags[Z]:
        raise AssertionError(f"index rule says {kind} but construction tagged {res.tags[Z]} for {Z}")
    return kind


def corresponding_cocircuit(res: ExtensionResult, Y: SignVector) -> SignVector:
    """Of the two old cocircuits a new Y is derived from, the one with higher index."""
    if res.lexspec is None:
        raise ExtensionError("corresponding cocircuits need a lexicographic extension")
    if res.tags.get(Y) != "new":
        raise ExtensionError(f"{Y} is not a new cocircuit")
    try:
        A, B = res.provenance[Y]
    except KeyError:
        raise ExtensionError(f"no provenance for {Y}") from None
    ia, ib = res.index(A), res.index(B)
    k = res.lexspec.k
    if ia == ib or max(ia, ib) > k:
        raise AssertionError(f"provenance indices {ia}, {ib} of {Y} violate the index rule")
    X, Z = (A, B) if ia < ib else (B, A)
    i, j = min(ia, ib), max(ia, ib)
    I, alpha = res.lexspec.elements, res.lexspec.signs
    ei, ej = I[i - 1], I[j - 1]
    chain = (
        X[ei] != 0
        and X[ei] == Y[ei]
        and Z[ej] == Y[ej]
        and alpha[i - 1] * X[ei] == -alpha[j - 1] * Z[ej]
        and res.index(Y) == i < k
    )
    if not chain:
        raise AssertionError(f"sign chain fails for new cocircuit {Y}")
    return Z


def principal_flat(res: ExtensionResult) -> frozenset[int] | None:
    """The flat F with: p on the hyperplane of Y iff F ⊆ z(Y); None if no such flat."""
    O, p = res.base, res.p
    F = O.full
    for Z, tag in res.tags.items():
        if tag == "old" and Z[p] == 0:
            F &= res.source[Z].zero_mask
    F = O._closure(F) if F != O.full else F
    if _principal_on_mask(res, F):
        return frozenset(bits(F))
    return None


def _principal_on_mask(res: ExtensionResult, F: int) -> bool:
    p = res.p
    olds = [(Z, res.source[Z]) for Z, t in res.tags.items() if t == "old"]
    for Z, Y in olds:
        if (Z[p] == 0) != (Y.zero_mask & F == F):
            return False
    return True


def is_principal_on(res: ExtensionResult, spec: LexSpec | None = None) -> bool:
    """True iff the extension adds a point in general position to cl(e_1..e_k)."""
    spec = spec or res.lexspec
    if spec is None:
        return principal_flat(res) is not None
    F = res.base._closure(mask_of(spec.elements))
    return _principal_on_mask(res, F)


def is_general_position(O: OrientedMatroid, e: int) -> bool:
    """e lies in no circuit of size <= r, i.e. e ∉ cl(A) for every A ⊆ E-e of rank < r."""
    others = [x for x in range(O.n) if x != e]
    for size in range(O.rank):
        for A in combinations(others, size):
            m = mask_of(A)
            if O._rank(m) == size and (O._closure(m) >> e) & 1:
                return False
    return True
