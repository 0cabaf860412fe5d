"""Run groups of lemma scanners over one oriented matroid and a list of lexicographic specs."""
from __future__ import annotations

from typing import Callable, Sequence

from ..core import OrientedMatroid
from ..extension import ExtensionError, ExtensionResult, LexSpec, lex_extend, lex_specs
from ..program import Program, build_graph, find_directed_cycle, is_program
from .constellations import scan_constellations
from .directions import scan_direction_props, scan_oracles, scan_program_symmetries
from .geometry import scan_geometry
from .indexlemmas import check_cycle_constant_index, check_extension_facts, check_index_lemmas
from .paths import (
    PathContext,
    check_corresponding_path,
    check_exchange_normalized,
    check_normalized_piece_values,
    harvest_directed_paths,
    is_normalized,
    is_prenormalized,
    normalize_path,
    walk_sign,
)
from .records import LemmaViolation, Report

BASE_GROUPS = ("directions", "symmetries", "oracles", "geometry")
EXTENSION_GROUPS = ("index", "constellations", "paths")
GROUPS = BASE_GROUPS + EXTENSION_GROUPS

# sample sizes once the ground set exceeds max_n
PAIR_SAMPLE = 2000
TRIPLE_SAMPLE = 200


def _index_group(ext: ExtensionResult, rep: Report, seed: int) -> None:
    check_extension_facts(ext, rep)
    O1 = ext.extended
    for f in range(ext.base.n):
        check_index_lemmas(ext, f, rep)
        if not is_program(O1, ext.p, f):
            continue
        cyc = find_directed_cycle(build_graph(Program(O1, ext.p, f)))
        if cyc is None:
            rep.skip("directedCycleNoIndex1: no directed cycle to inspect")
        else:
            rep.check("directedCycleNoIndex1", {"f": O1.labels[f], "cycle": [str(v) for v in cyc]},
                      True, check_cycle_constant_index(ext, cyc))


def _paths_group(ext: ExtensionResult, rep: Report, seed: int, per_program: int = 2) -> int:
    """Harvest, normalize and check directed paths; returns how many paths were processed."""
    O, O1 = ext.base, ext.extended
    done = 0
    for g in range(O.n):
        for f in range(O.n):
            if not is_program(O1, g, f):
                continue
            ctx = PathContext(ext, g, f)
            for P in harvest_directed_paths(ctx, seed * 7919 + g * 31 + f, per_program):
                done += 1
                t = {"P": [str(V) for V in P], "g": O.labels[g], "f": O.labels[f]}
                try:
                    out = normalize_path(ctx, P)
                except LemmaViolation as exc:
                    rep.check("NonZeroDerivedPath", t, True, str(exc))
                    continue
                rep.check("NonZeroDerivedPath", t, (True, 1),
                          (is_prenormalized(ctx, out.vertices), walk_sign(ctx.steps(out.vertices))))
                check_corresponding_path(ctx, out.vertices, rep)
                check_normalized_piece_values(ctx, out.vertices, rep)
                check_exchange_normalized(ctx, out.vertices, rep)
                if out.cycle is not None:
                    C = out.cycle
                    rep.check("NormalizedCycle", t, (True, 1), (is_normalized(ctx, C), walk_sign(ctx.steps(C))))
                    check_corresponding_path(ctx, C, rep)
    return done


def run_lemmas(
    O: OrientedMatroid,
    groups: Sequence[str] = GROUPS,
    specs: Sequence[LexSpec] | None = None,
    seed: int = 0,
    max_n: int = 8,
    spec_cap: int = 20,
    report: Report | None = None,
) -> Report:
    """Exhaustive scans for ground sets up to ``max_n``, seeded samples beyond."""
    rep = report or Report()
    unknown = [g for g in groups if g not in GROUPS]
    if unknown:
        raise ValueError(f"unknown lemma group(s): {', '.join(unknown)}")
    big = O.n > max_n
    limit = PAIR_SAMPLE if big else None
    base: dict[str, Callable[[], object]] = {
        "directions": lambda: scan_direction_props(O, rep, seed, limit),
        "symmetries": lambda: scan_program_symmetries(O, rep, seed),
        "oracles": lambda: scan_oracles(O, rep, seed, limit),
        "geometry": lambda: scan_geometry(O, rep, limit=TRIPLE_SAMPLE if big else None, seed=seed),
    }
    for name in groups:
        if name in base:
            base[name]()
    wanted = [g for g in groups if g in EXTENSION_GROUPS]
    if not wanted:
        return rep
    if specs is None:
        specs = lex_specs(O, cap=spec_cap, seed=seed, positive_only=True)
    for spec in specs:
        try:
            ext = lex_extend(O, spec, check=False)
        except ExtensionError as exc:
            rep.skip(f"extension rejected: {exc}")
            continue
        if "index" in wanted:
            _index_group(ext, rep, seed)
        if "constellations" in wanted:
            scan_constellations(ext, rep)
        if "paths" in wanted:
            _paths_group(ext, rep, seed)
    return rep
