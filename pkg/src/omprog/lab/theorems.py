"""Instance verification of Euclideanness for lexicographic extensions, with hypothesis bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..core import OrientedMatroid, bits, contract, mask_of
from ..extension import ExtensionResult, LexSpec, is_general_position, lex_extend
from ..program import Program, build_graph, find_directed_cycle, is_program
from .indexlemmas import check_cycle_constant_index


def _general_position(O: OrientedMatroid, e: int) -> bool:
    cache = O.memo.setdefault("general_position", {})
    if e not in cache:
        cache[e] = is_general_position(O, e)
    return cache[e]


def minor_euclidean(O: OrientedMatroid, contracted: Sequence[int], g: int, f: int) -> bool | None:
    """Euclideanness of (O/contracted, g, f); None when that is not a valid program."""
    m = mask_of(contracted)
    key = (m, g, f)
    cache = O.memo.setdefault("minor_euclid", {})
    if key in cache:
        return cache[key]
    if (m >> g) & 1 or (m >> f) & 1:
        cache[key] = None
        return None
    M = contract(O, bits(m)) if m else O
    keep = [e for e in range(O.n) if not (m >> e) & 1]
    gm, fm = keep.index(g), keep.index(f)
    if not is_program(M, gm, fm):
        cache[key] = None
        return None
    got = find_directed_cycle(build_graph(Program(M, gm, fm))) is None
    cache[key] = got
    return got


def closure_index(O: OrientedMatroid, I: Sequence[int], e: int) -> int:
    """Smallest l with e in cl(e_1..e_l); k+1 if there is none."""
    for l in range(1, len(I) + 1):
        if (O._closure(mask_of(I[:l])) >> e) & 1:
            return l
    return len(I) + 1


@dataclass
class TheoremReport:
    theorem: int
    spec: str
    hypotheses: list[dict] = field(default_factory=list)
    conclusions: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def hypotheses_met(self) -> bool:
        return all(h["holds"] is not False for h in self.hypotheses)

    @property
    def conclusion_ok(self) -> bool:
        return all(c["euclidean"] for c in self.conclusions)

    @property
    def ok(self) -> bool:
        return self.conclusion_ok

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.conclusions if not c["euclidean"]]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "spec": self.spec,
            "hypotheses_met": self.hypotheses_met,
            "conclusion_ok": self.conclusion_ok,
            "hypotheses": self.hypotheses,
            "conclusions": self.conclusions,
            "warnings": self.warnings,
        }


def _hyp(O: OrientedMatroid, rep: TheoremReport, item: str, target: str,
         contracted: Sequence[int], g: int, f: int) -> bool | None:
    holds = minor_euclidean(O, contracted, g, f)
    lab = O.labels
    rep.hypotheses.append({
        "item": item,
        "target": target,
        "program": {"contract": [lab[e] for e in contracted], "g": lab[g], "f": lab[f]},
        "holds": holds,
    })
    return holds


def _conclude(ext: ExtensionResult, rep: TheoremReport, g: int, f: int, check_index: bool) -> None:
    O1 = ext.extended
    cyc = find_directed_cycle(build_graph(Program(O1, g, f)))
    rec = {"pair": [O1.labels[g], O1.labels[f]], "euclidean": cyc is None,
           "witness_cycle": [str(v) for v in cyc] if cyc else []}
    if cyc and check_index and ext.lexspec.is_positive:
        rec["constant_index"] = check_cycle_constant_index(ext, cyc)
    rep.conclusions.append(rec)


def _warn_if_missing(rep: TheoremReport) -> None:
    missing = [h for h in rep.hypotheses if h["holds"] is False]
    if missing:
        rep.warnings.append(f"hypothesis not met: {len(missing)} program(s) with a directed cycle")


def verify_theorem1(O: OrientedMatroid, spec: LexSpec, ext: ExtensionResult | None = None) -> TheoremReport:
    """(O', p, f) for every f of O that is not a coloop of O'."""
    ext = ext or lex_extend(O, spec, check=False)
    I, k = spec.elements, spec.k
    rep = TheoremReport(1, spec.format(O.labels))
    for f in range(O.n):
        if not is_program(ext.extended, ext.p, f):
            continue
        target = f"p,{O.labels[f]}"
        l = closure_index(O, I, f)
        for i in range(1, l):
            _hyp(O, rep, "(i)", target, I[: i - 1], I[i - 1], f)
        if not _general_position(O, f) or f in I:
            for i in range(1, min(l, k - 1) + 1):
                for j in range(i + 1, k + 1):
                    _hyp(O, rep, "(ii)", target, I[: i - 1], I[i - 1], I[j - 1])
        _conclude(ext, rep, ext.p, f, check_index=True)
    _warn_if_missing(rep)
    return rep


def verify_theorem2(
    O: OrientedMatroid,
    spec: LexSpec,
    ext: ExtensionResult | None = None,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> TheoremReport:
    """(O', g, f) for admissible pairs of O'; hypotheses are listed for pairs inside O."""
    ext = ext or lex_extend(O, spec, check=False)
    O1, p = ext.extended, ext.p
    I, k = spec.elements, spec.k
    rep = TheoremReport(2, spec.format(O.labels))
    if pairs is None:
        pairs = [(g, f) for g in range(O1.n) for f in range(O1.n) if is_program(O1, g, f)]
    for g, f in pairs:
        if g != p and f != p:
            target = f"{O.labels[g]},{O.labels[f]}"
            _hyp(O, rep, "(i)", target, (), g, f)
            for e in I:
                _hyp(O, rep, "(ii)", target, (), e, f)
                _hyp(O, rep, "(iii)", target, (), e, g)
            l, m = closure_index(O, I, f), closure_index(O, I, g)
            gp = _general_position(O, f) and _general_position(O, g)
            if min(l, m) < k + 1 or not gp:
                n = min(max(l, m), k - 1)
                for i in range(1, n + 1):
                    for j in range(i + 1, k + 1):
                        _hyp(O, rep, "(iv)", target, I[: i - 1], I[i - 1], I[j - 1])
        _conclude(ext, rep, g, f, check_index=False)
    _warn_if_missing(rep)
    return rep
