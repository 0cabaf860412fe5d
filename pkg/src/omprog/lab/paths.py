"""Prenormalized and normalized paths, replacement paths and corresponding paths."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..core import OMError, SignVector, comodular, eliminate
from ..extension import ExtensionResult, corresponding_cocircuit
from ..program import Program, build_graph, direction, line_path
from .geometry import crossing_point
from .records import LemmaViolation, Report

Path = list[SignVector]


class PathContext:
    """An extension together with the program (O', g, f) the paths live in."""

    def __init__(self, ext: ExtensionResult, g: int, f: int):
        if g == ext.p or f == ext.p:
            raise OMError("paths are checked in programs (O', g, f) with g, f from O")
        self.ext = ext
        self.om = ext.extended
        self.g = g
        self.f = f

    def dir(self, X: SignVector, Y: SignVector) -> int:
        return direction(self.om, self.g, self.f, X, Y)

    def is_new(self, X: SignVector) -> bool:
        return self.ext.is_new(X)

    def sides(self, X: SignVector) -> tuple[SignVector, SignVector]:
        return self.ext.provenance[X]

    def side_dir(self, X: SignVector) -> int:
        X1, X2 = self.sides(X)
        return self.dir(X1, X2)

    def steps(self, P: Sequence[SignVector]) -> list[int]:
        return [self.dir(a, b) for a, b in zip(P, P[1:])]


def is_closed(P: Sequence[SignVector]) -> bool:
    return len(P) > 2 and P[0] == P[-1]


def walk_sign(steps: Sequence[int]) -> int | None:
    """+1 / -1 for a forward / backward directed walk, 0 if all steps are undirected, else None."""
    if all(s == 0 for s in steps):
        return 0
    if all(s >= 0 for s in steps):
        return 1
    if all(s <= 0 for s in steps):
        return -1
    return None


def _pair_violation(ctx: PathContext, X: SignVector, Y: SignVector) -> bool:
    """X new and the ordered pair breaks one of the two prenormalization rules."""
    if not ctx.is_new(X):
        return False
    d = ctx.side_dir(X)
    if d == 0 and (ctx.is_new(Y) or Y not in ctx.sides(X)):
        return True
    if ctx.is_new(Y):
        return not (d != 0 and d == ctx.side_dir(Y))
    return False


def violations(ctx: PathContext, P: Sequence[SignVector]) -> list[int]:
    """Positions i where the edge (P[i], P[i+1]) violates prenormalization."""
    return [
        i
        for i, (a, b) in enumerate(zip(P, P[1:]))
        if _pair_violation(ctx, a, b) or _pair_violation(ctx, b, a)
    ]


def is_prenormalized(ctx: PathContext, P: Sequence[SignVector]) -> bool:
    return not violations(ctx, P)


def is_normalized(ctx: PathContext, P: Sequence[SignVector]) -> bool:
    """Prenormalized, and new cocircuits with undirected sides sit between their two sides."""
    if not is_prenormalized(ctx, P):
        return False
    closed = is_closed(P)
    verts = list(P[:-1]) if closed else list(P)
    m = len(verts)
    for idx, X in enumerate(verts):
        if not ctx.is_new(X) or ctx.side_dir(X) != 0:
            continue
        if closed:
            prev, nxt = verts[idx - 1], verts[(idx + 1) % m]
        else:
            if idx == 0 or idx == m - 1:
                return False
            prev, nxt = verts[idx - 1], verts[idx + 1]
        if {prev, nxt} != set(ctx.sides(X)):
            return False
    return True


def _check_replacement(ctx: PathContext, P: Path, X: SignVector, Y: SignVector) -> Path:
    g = ctx.g
    if P[0] != X or P[-1] != Y:
        raise LemmaViolation(f"replacement path does not run from {X} to {Y}")
    for a, b in zip(P, P[1:]):
        if a == b or a.sep_mask(b) or not comodular(ctx.om, a, b):
            raise LemmaViolation(f"replacement path step {a} -> {b} is not an edge")
    for V in P[1:-1]:
        if ctx.is_new(V) or V[g] <= 0:
            raise LemmaViolation(f"replacement path passes {V}, which is new or not affine")
    want = ctx.dir(X, Y)
    got = walk_sign(ctx.steps(P))
    if got != want:
        raise LemmaViolation(f"replacement path has direction {got}, edge has {want}")
    return P


def path1lem_path(ctx: PathContext, X: SignVector, Y: SignVector) -> Path:
    """Old-cocircuit detour for an edge X∘Y with Y new, directed like the edge."""
    O1, g, p = ctx.om, ctx.g, ctx.ext.p
    if not ctx.is_new(Y):
        raise OMError(f"{Y} must be new")
    x_new = ctx.is_new(X)
    Y1, Y2 = ctx.sides(Y)
    line = Y1.compose(Y2)
    if x_new:
        X1, X2 = ctx.sides(X)
        C = crossing_point(O1, X1.compose(X2), line, g)
    else:
        e = min(i for i in range(O1.n) if Y[i] != 0 and X[i] == 0)
        cands = [V for V in O1._line(line.zero_mask) if V[e] == 0 and V[g] >= 0]
        if not cands:
            raise LemmaViolation(f"no cocircuit on the line of {Y} vanishes on {O1.labels[e]}")
        C = cands[0]
    if C[g] > 0:
        P = line_path(O1, X, C) + line_path(O1, C, Y)[1:]
        return _check_replacement(ctx, P, X, Y)
    if ctx.side_dir(Y) != 0:
        raise LemmaViolation(f"crossing point {C} at infinity outside the undirected case")
    if Y1[g] <= 0:
        Y1, Y2 = Y2, Y1
    if C[p] != Y1[p]:
        C = -C
    h = min(i for i in range(O1.n) if Y2[i] != 0 and Y1[i] == 0)
    if X[h] == 0:
        if x_new:
            raise LemmaViolation(f"new {X} is not expected with X_h = 0")
        return _check_replacement(ctx, [X, Y1, Y], X, Y)
    Z = eliminate(O1, C, X, h)
    P = line_path(O1, X, Z) + line_path(O1, Z, Y1)[1:] + [Y]
    return _check_replacement(ctx, P, X, Y)


def _repair(ctx: PathContext, X: SignVector, Y: SignVector) -> Path:
    """Replacement for one violating edge, choosing which end plays the new role."""
    nx, ny = ctx.is_new(X), ctx.is_new(Y)
    if nx and (not ny or ctx.side_dir(X) == 0 and ctx.side_dir(Y) != 0):
        return list(reversed(path1lem_path(ctx, Y, X)))
    return path1lem_path(ctx, X, Y)


@dataclass
class NormalizedPath:
    vertices: Path
    prenormalized: bool
    normalized: bool
    substitutions: int = 0
    cycle: Path | None = None
    notes: list[str] = field(default_factory=list)


def drop_side_triples(ctx: PathContext, P: Path) -> Path:
    """Replace triples (X^i, X, X^i) of undirected-side new cocircuits by X^i, cyclically."""
    verts = list(P[:-1])
    changed = True
    while changed and len(verts) > 2:
        changed = False
        m = len(verts)
        for idx in range(m):
            X = verts[idx]
            if not ctx.is_new(X) or ctx.side_dir(X) != 0:
                continue
            prev, nxt = verts[idx - 1], verts[(idx + 1) % m]
            if prev == nxt and prev in ctx.sides(X):
                if idx == m - 1:
                    verts = verts[1:idx]
                else:
                    del verts[idx:idx + 2]
                changed = True
                break
    return verts + verts[:1]


def _split_once(Q: Path) -> tuple[Path, Path] | None:
    verts = Q[:-1]
    seen: dict[SignVector, int] = {}
    for idx, V in enumerate(verts):
        if V in seen:
            a = seen[V]
            inner = verts[a:idx] + [V]
            outer = verts[:a] + verts[idx:] + verts[:1]
            return inner, outer
        seen[V] = idx
    return None


def extract_cycle(ctx: PathContext, Q: Path) -> Path:
    """A simple normalized directed cycle inside a directed closed walk."""
    work = [drop_side_triples(ctx, Q)]
    while work:
        W = work.pop()
        if walk_sign(ctx.steps(W)) != 1:
            continue
        parts = _split_once(W)
        if parts is None:
            if is_normalized(ctx, W):
                return W
            W2 = drop_side_triples(ctx, W)
            if W2 != W:
                work.append(W2)
            continue
        work.extend(drop_side_triples(ctx, part) for part in parts)
    raise LemmaViolation("closed directed walk contains no normalized directed cycle")


def normalize_path(ctx: PathContext, P: Sequence[SignVector]) -> NormalizedPath:
    """Substitute violating edges by replacement paths until the path is prenormalized."""
    P = original = list(P)
    if len(P) < 2:
        raise OMError("a path needs at least two cocircuits")
    if walk_sign(ctx.steps(P)) != 1:
        raise OMError("input path is not directed")
    bad = violations(ctx, P)
    budget = len(bad)
    steps = 0
    while bad:
        if steps >= budget:
            raise LemmaViolation(f"normalization exceeded its bound of {budget} substitutions")
        idx = bad[0]
        detour = _repair(ctx, P[idx], P[idx + 1])
        P = P[:idx] + detour + P[idx + 2:]
        steps += 1
        left = violations(ctx, P)
        if len(left) >= len(bad):
            raise LemmaViolation(f"substitution at position {idx} did not reduce the violations")
        bad = left
    if walk_sign(ctx.steps(P)) != 1:
        raise LemmaViolation("normalized path lost its direction")
    if not set(original) <= set(P) or P[0] != original[0] or P[-1] != original[-1]:
        raise LemmaViolation("normalized path dropped a cocircuit or an endpoint")
    out = NormalizedPath(P, True, is_normalized(ctx, P), steps)
    if is_closed(P):
        out.cycle = extract_cycle(ctx, P)
    return out


@dataclass
class CorrespondingPath:
    vertices: Path
    # index into the original path of the edge each corresponding edge comes from
    origins: list[int]


def corresponding_path(ext: ExtensionResult, P: Sequence[SignVector]) -> CorrespondingPath:
    seq = [corresponding_cocircuit(ext, V) if ext.is_new(V) else V for V in P]
    verts = [seq[0]]
    origins: list[int] = []
    for idx in range(1, len(seq)):
        if seq[idx] != verts[-1]:
            verts.append(seq[idx])
            origins.append(idx - 1)
    return CorrespondingPath(verts, origins)


def check_corresponding_path(
    ctx: PathContext, P: Sequence[SignVector], report: Report | None = None
) -> Report:
    """Properties (i)-(v) of the corresponding path of P, with directions taken in O."""
    rep = report or Report()
    ext, g, f = ctx.ext, ctx.g, ctx.f
    O = ext.base
    cp = corresponding_path(ext, P)
    Q = cp.vertices
    t = {"P": [str(V) for V in P], "Q": [str(V) for V in Q], "g": O.labels[g], "f": O.labels[f]}
    olds_p = {V for V in P if not ext.is_new(V)}
    rep.check("propsCorresPath(i)", t, True, all(not ext.is_new(V) for V in Q) and olds_p <= set(Q))
    corr = {corresponding_cocircuit(ext, V) for V in P if ext.is_new(V)}
    rep.check("propsCorresPath(ii)", t, True, corr <= set(Q))
    base = [ext.drop_p(V) for V in Q]
    edges_ok = all(
        not a.sep_mask(b) and comodular(O, a, b) for a, b in zip(base, base[1:])
    )
    closed_ok = Q[0] == Q[-1] if is_closed(P) else True
    rep.check("propsCorresPath(iii)", t, (True, True), (edges_ok, closed_ok))
    if not edges_ok:
        return rep
    p_steps = ctx.steps(P)
    q_steps = []
    for (a, b), src in zip(zip(base, base[1:]), cp.origins):
        if a[g] == 0 and a[f] == 0 or b[g] == 0 and b[f] == 0:
            rep.skip("corresponding path: a cocircuit is zero on f and g")
            continue
        if a[g] < 0 or b[g] < 0 or a[g] == 0 and b[g] == 0:
            rep.skip("corresponding path: edge outside the affine part")
            continue
        d = direction(O, g, f, a, b)
        q_steps.append(d)
        if a[g] > 0 and b[g] > 0 and d != 0:
            rep.check("propsCorresPath(iv)", dict(t, edge=src), p_steps[src], d)
    sign_p = walk_sign(p_steps)
    if sign_p in (1, -1):
        rep.check("propsCorresPath(v)", t, True, walk_sign(q_steps) in (0, sign_p))
    return rep


def new_pieces(ctx: PathContext, P: Sequence[SignVector]) -> list[Path]:
    pieces, cur = [], []
    for V in P:
        if ctx.is_new(V):
            cur.append(V)
        elif cur:
            pieces.append(cur)
            cur = []
    if cur:
        pieces.append(cur)
    return pieces


def check_normalized_piece_values(
    ctx: PathContext, P: Sequence[SignVector], report: Report | None = None
) -> Report:
    """Within new pieces of a normalized path with constant f-value, X¹_f != 0 or Y¹_g != 0."""
    rep = report or Report()
    f, g = ctx.f, ctx.g
    vals = {V[f] for V in P}
    if len(vals) != 1 or 0 in vals or not is_normalized(ctx, P):
        return rep
    for piece in new_pieces(ctx, P):
        for X in piece:
            for Y in piece:
                if X == Y:
                    continue
                X1, Y1 = ctx.sides(X)[0], ctx.sides(Y)[0]
                t = {"X": str(X), "Y": str(Y), "g": ctx.om.labels[g], "f": ctx.om.labels[f]}
                rep.check("dirNormPathNoFgeuqalZero", t, True, X1[f] != 0 or Y1[g] != 0)
    return rep


def check_exchange_normalized(
    ctx: PathContext, P: Sequence[SignVector], report: Report | None = None
) -> Report:
    """A normalized path with constant f-value v_f stays normalized in (O', f, g), negated if v_f = -."""
    rep = report or Report()
    vals = {V[ctx.f] for V in P}
    if len(vals) != 1 or 0 in vals or not is_normalized(ctx, P):
        return rep
    vf = vals.pop()
    swapped = PathContext(ctx.ext, ctx.f, ctx.g)
    Q = list(P) if vf > 0 else [-V for V in P]
    t = {"P": [str(V) for V in P], "g": ctx.om.labels[ctx.g], "f": ctx.om.labels[ctx.f]}
    rep.check("exchangegfstaysnormalized", t, True, is_normalized(swapped, Q))
    return rep


def harvest_directed_paths(
    ctx: PathContext, seed: int, count: int, max_len: int = 6, tries: int = 200
) -> list[Path]:
    """Seeded random simple directed walks in G_f of (O', g, f), preferring ones through new cocircuits."""
    rng = random.Random(seed)
    G = build_graph(Program(ctx.om, ctx.g, ctx.f))
    nbrs: dict[SignVector, list[tuple[SignVector, int]]] = {v: [] for v in G.vertices}
    for (u, v), d in sorted(G.edges.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        nbrs[u].append((v, d))
        nbrs[v].append((u, -d))
    starts = [v for v in G.vertices if nbrs[v]]
    if not starts:
        return []
    out: list[Path] = []
    seen: set[tuple[SignVector, ...]] = set()
    for _ in range(tries):
        if len(out) >= count:
            break
        P = [rng.choice(starts)]
        forward = False
        while len(P) < max_len:
            opts = [(v, d) for v, d in nbrs[P[-1]] if d >= 0 and v not in P]
            if not opts:
                break
            v, d = rng.choice(opts)
            P.append(v)
            forward = forward or d > 0
            if forward and rng.random() < 0.3:
                break
        key = tuple(P)
        if forward and len(P) >= 2 and key not in seen:
            seen.add(key)
            out.append(P)
    out.sort(key=lambda P: (-sum(ctx.is_new(V) for V in P), [str(V) for V in P]))
    return out[:count]
