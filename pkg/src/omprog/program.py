"""Oriented matroid programs, the direction function and the cocircuit graph."""
from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .core import (
    OMError,
    OrientedMatroid,
    SignVector,
    comodular,
    delete,
    eliminate,
    eliminate_by_scan,
)

ARROWS = {1: "->", -1: "<-", 0: "<->"}


class ProgramError(OMError):
    pass


@dataclass(frozen=True)
class Program:
    om: OrientedMatroid
    g: int
    f: int

    def __post_init__(self):
        n = self.om.n
        if not (0 <= self.g < n and 0 <= self.f < n):
            raise ProgramError(f"elements out of range: g={self.g}, f={self.f}")
        if self.f == self.g:
            raise ProgramError("f and g must differ")
        if self.om.is_loop(self.g):
            raise ProgramError(f"g={self.om.labels[self.g]} is a loop")
        if self.om.is_coloop(self.f):
            raise ProgramError(f"f={self.om.labels[self.f]} is a coloop")

    def dir(self, X: SignVector, Y: SignVector) -> int:
        return direction(self.om, self.g, self.f, X, Y)

    def swapped(self) -> "Program":
        return Program(self.om, self.f, self.g)

    @property
    def pair_labels(self) -> tuple[str, str]:
        return self.om.labels[self.g], self.om.labels[self.f]


def is_program(O: OrientedMatroid, g: int, f: int) -> bool:
    return f != g and not O.is_loop(g) and not O.is_coloop(f)


def admissible_pairs(O: OrientedMatroid) -> list[tuple[int, int]]:
    """Ordered (g, f) pairs that form valid programs, in element order."""
    return [(g, f) for g in range(O.n) for f in range(O.n) if is_program(O, g, f)]


def _direction(O, g, f, X, Y, elim) -> int:
    xg, yg = X[g], Y[g]
    if xg != 0 and xg == yg:
        return elim(O, -X, Y, g)[f]
    if xg != 0 and yg == 0:
        return Y[f]
    if xg == 0 and yg != 0:
        return -X[f]
    if xg == 0:
        raise ProgramError("direction undefined when X_g = Y_g = 0")
    raise ProgramError("direction undefined when X_g = -Y_g")


def direction(O: OrientedMatroid, g: int, f: int, X: SignVector, Y: SignVector) -> int:
    """Dir_{g,f}(X, Y) in {+1, -1, 0} for comodular X, Y.

    Same nonzero g-value: the f-sign of the elimination of g between -X and Y.
    Exactly one g-value zero: Y_f, respectively -X_f.
    """
    if not comodular(O, X, Y):
        raise ProgramError(f"{X} and {Y} are not comodular")
    return _direction(O, g, f, X, Y, eliminate)


def direction_by_scan(O: OrientedMatroid, g: int, f: int, X: SignVector, Y: SignVector) -> int:
    """Same value as :func:`direction`, computed through the full cocircuit scan."""
    if not comodular(O, X, Y):
        raise ProgramError(f"{X} and {Y} are not comodular")
    return _direction(O, g, f, X, Y, eliminate_by_scan)


def _affine_edges(O: OrientedMatroid, g: int) -> list[tuple[SignVector, SignVector, SignVector]]:
    """(X, Y, Z) for conformal comodular X < Y with X_g = Y_g = +, Z = elim(-X, Y, g).

    Z does not depend on f, so one list per g serves every program (O, g, .).
    """
    cache = O.memo.setdefault("affine_edges", {})
    got = cache.get(g)
    if got is None:
        verts = [X for X in O.cocircuits if X[g] > 0]
        got = []
        for i, X in enumerate(verts):
            for Y in verts[i + 1:]:
                if X.sep_mask(Y) or not O._is_coline(X.zero_mask & Y.zero_mask):
                    continue
                got.append((X, Y, eliminate(O, -X, Y, g)))
        cache[g] = got
    return got


@dataclass
class CocircuitGraph:
    """Vertices are sign vectors; ``edges[(u, v)]`` (u before v) holds Dir(u, v)."""

    vertices: tuple[SignVector, ...]
    edges: dict[tuple[SignVector, SignVector], int]
    labels: tuple[str, ...] = ()
    name: str = "G"
    _adj: dict | None = field(default=None, repr=False)

    def dir(self, u: SignVector, v: SignVector) -> int:
        d = self.edges.get((u, v))
        if d is not None:
            return d
        d = self.edges.get((v, u))
        if d is None:
            raise KeyError(f"no edge between {u} and {v}")
        return -d

    def has_edge(self, u: SignVector, v: SignVector) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def arcs(self) -> Iterator[tuple[SignVector, SignVector, bool]]:
        """Arcs of the auxiliary digraph as (tail, head, strict)."""
        for (u, v), d in self.edges.items():
            if d > 0:
                yield u, v, True
            elif d < 0:
                yield v, u, True
            else:
                yield u, v, False
                yield v, u, False

    def successors(self) -> dict[SignVector, list[SignVector]]:
        if self._adj is None:
            adj: dict[SignVector, list[SignVector]] = {v: [] for v in self.vertices}
            for u, v, _ in self.arcs():
                adj[u].append(v)
            self._adj = adj
        return self._adj

    def counts(self) -> dict[str, int]:
        directed = sum(1 for d in self.edges.values() if d)
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "directed": directed,
            "undirected": len(self.edges) - directed,
        }

    def to_dot(self) -> str:
        lines = [f"digraph {json.dumps(self.name)} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for (u, v), d in self.edges.items():
            if d > 0:
                lines.append(f'  "{u}" -> "{v}";')
            elif d < 0:
                lines.append(f'  "{v}" -> "{u}";')
            else:
                lines.append(f'  "{u}" -> "{v}" [dir=none];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def graph_from_arcs(
    vertices: Iterable, arcs: Iterable[tuple], undirected: Iterable[tuple] = ()
) -> CocircuitGraph:
    """Synthetic graph: ``arcs`` are strict u -> v, ``undirected`` are u <-> v."""
    verts = tuple(vertices)
    edges = {}
    for u, v in arcs:
        edges[(u, v)] = 1
    for u, v in undirected:
        edges[(u, v)] = 0
    return CocircuitGraph(verts, edges)


def build_graph(P: Program) -> CocircuitGraph:
    O, g, f = P.om, P.g, P.f
    verts = tuple(X for X in O.cocircuits if X[g] > 0)
    edges = {(X, Y): Z[f] for X, Y, Z in _affine_edges(O, g)}
    return CocircuitGraph(verts, edges, O.labels, name=f"G_{O.labels[f]}")


def deletion_graph(P: Program) -> CocircuitGraph:
    """The subgraph on cocircuits that restrict to cocircuits of O minus f.

    Pairs that are conformal off f but separated at f are added, directed
    from the larger f-value to the smaller one.
    """
    O, g, f = P.om, P.g, P.f
    keep = [e for e in range(O.n) if e != f]
    Od = delete(O, [f])
    verts = tuple(X for X in O.cocircuits if X[g] > 0 and X.restrict(keep) in Od.cocircuit_set)
    vset = set(verts)
    edges = {(X, Y): Z[f] for X, Y, Z in _affine_edges(O, g) if X in vset and Y in vset}
    fbit = 1 << f
    for i, X in enumerate(verts):
        for Y in verts[i + 1:]:
            if X.sep_mask(Y) != fbit or not O._is_coline(X.zero_mask & Y.zero_mask):
                continue
            edges[(X, Y)] = 1 if X[f] > Y[f] else -1
    return CocircuitGraph(verts, edges, O.labels, name=f"(G-{O.labels[f]})_{O.labels[f]}")


def _sccs(nodes: Sequence, succ: dict) -> dict:
    """Iterative Tarjan; maps each node to its component id."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = 0
    ncomp = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _path(succ: dict, src, dst, allowed) -> list | None:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            out = [u]
            while prev[out[-1]] is not None:
                out.append(prev[out[-1]])
            return out[::-1]
        for w in succ[u]:
            if w not in prev and w in allowed:
                prev[w] = u
                queue.append(w)
    return None


def find_directed_cycle(G: CocircuitGraph) -> list | None:
    """A closed walk [u, v, ..., u] along arcs with u -> v strict and simple interior."""
    succ = G.successors()
    comp = _sccs(G.vertices, succ)
    for u, v, strict in G.arcs():
        if strict and comp[u] == comp[v]:
            members = {w for w in G.vertices if comp[w] == comp[u]}
            back = _path(succ, v, u, members)
            if back is None:
                raise AssertionError("strongly connected component without return path")
            return [u] + back
    return None


def is_directed_cycle(G: CocircuitGraph, cycle: Sequence) -> bool:
    """Checks the cycle contract independently of the search."""
    if len(cycle) < 3 or cycle[0] != cycle[-1]:
        return False
    inner = list(cycle[:-1])
    if len(set(inner)) != len(inner):
        return False
    strict = False
    for a, b in zip(cycle, cycle[1:]):
        if not G.has_edge(a, b):
            return False
        d = G.dir(a, b)
        if d < 0:
            return False
        strict = strict or d > 0
    return strict


def is_euclidean_program(P: Program) -> bool:
    return find_directed_cycle(build_graph(P)) is None


@dataclass
class EuclidResult:
    euclidean: bool
    pairs_checked: int
    pair: tuple[int, int] | None = None
    cycle: list[SignVector] | None = None

    def __bool__(self) -> bool:
        return self.euclidean


def is_euclidean_om(
    O: OrientedMatroid, pairs: Sequence[tuple[int, int]] | None = None
) -> EuclidResult:
    """Checks every admissible (g, f) in element order; stops at the first cycle."""
    pairs = admissible_pairs(O) if pairs is None else pairs
    for count, (g, f) in enumerate(pairs, start=1):
        cyc = find_directed_cycle(build_graph(Program(O, g, f)))
        if cyc is not None:
            return EuclidResult(False, count, (g, f), cyc)
    return EuclidResult(True, len(pairs))


def _euclid_task(args):
    O, g, f = args
    cyc = find_directed_cycle(build_graph(Program(O, g, f)))
    return (g, f), cyc


def euclid_records(O: OrientedMatroid, pairs: Sequence[tuple[int, int]]) -> list[dict]:
    """One report record per pair; runs in worker processes when OM_EUCLID_THREADS > 1."""
    workers = int(os.environ.get("OM_EUCLID_THREADS", "1") or 1)
    tasks = [(O, g, f) for g, f in pairs]
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_euclid_task, tasks))
    else:
        results = [_euclid_task(t) for t in tasks]
    return [
        {
            "pair": [O.labels[g], O.labels[f]],
            "euclidean": cyc is None,
            "witness_cycle": [str(v) for v in cyc] if cyc else [],
        }
        for (g, f), cyc in results
    ]


def is_feasible(P: Program) -> bool:
    """Some cocircuit is nonnegative on every element."""
    return any(X.neg == 0 for X in P.om.cocircuits)


def is_bounded(P: Program) -> bool:
    """Every nonnegative cocircuit has a positive g-value."""
    return all(X[P.g] > 0 for X in P.om.cocircuits if X.neg == 0)


def comodular_pairs(O: OrientedMatroid) -> list[tuple[SignVector, SignVector]]:
    """All comodular (X, Y) with X before Y in the stored order, conformal or not."""
    got = O.memo.get("comodular_pairs")
    if got is None:
        cocs = O.cocircuits
        got = [
            (X, Y)
            for i, X in enumerate(cocs)
            for Y in cocs[i + 1:]
            if O._is_coline(X.zero_mask & Y.zero_mask)
        ]
        O.memo["comodular_pairs"] = got
    return got


def line_path(O: OrientedMatroid, X: SignVector, Y: SignVector) -> list[SignVector]:
    """Cocircuits on the arc from X to Y of the line through X∘Y, in order from X.

    Interior points agree with X∘Y off sep(X, Y); with X_g, Y_g >= 0 this is the
    arc avoiding the hyperplane of any such g.
    """
    if X == Y:
        return [X]
    zmask = X.zero_mask & Y.zero_mask
    if not O._is_coline(zmask):
        raise ProgramError(f"{X} and {Y} do not span a line")
    W = X.compose(Y)
    keep = ~X.sep_mask(Y)
    wp, wn = W.pos & keep, W.neg & keep
    inner = [
        V
        for V in O._line(zmask)
        if V != X and V != Y and (V.pos & keep) == wp and (V.neg & keep) == wn
    ]

    def distance(V: SignVector) -> int:
        same = (V.pos & X.pos) | (V.neg & X.neg) | (V.zero_mask & X.zero_mask)
        opposite = (V.pos & X.neg) | (V.neg & X.pos)
        return 2 * bin(opposite).count("1") + bin(O.full & ~same & ~opposite).count("1")

    inner.sort(key=lambda V: (distance(V), str(V)))
    return [X] + inner + [Y]
