"""Text formats: cocircuit files, vector configurations, chirotopes and scenarios."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .core import OMError, OrientedMatroid, SignVector
from .extension import ExtensionResult, LexSpec, parse_lexspec
from .ingest import Chirotope, ChirotopeError, VectorConfig, om_from_chirotope, om_from_vectors

FORMATS = ("om", "vec", "chi")


class FormatError(OMError):
    def __init__(self, message: str, line: int | None = None, source: str = "<text>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(line number, text) of non-blank lines with comments stripped."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((no, body))
    return out


def _labels_from_comments(text: str) -> list[str] | None:
    for raw in text.splitlines():
        m = re.match(r"^\s*#\s*labels:\s*(.+)$", raw)
        if m:
            return m.group(1).split()
    return None


def _header(lines: list[tuple[int, str]], word: str, source: str) -> tuple[int, int]:
    if not lines:
        raise FormatError("empty file", None, source)
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != word:
        raise FormatError(f"expected header '{word} <n> <m>', got {head!r}", no, source)
    try:
        a, b = int(parts[1]), int(parts[2])
    except ValueError:
        raise FormatError(f"non-integer header {head!r}", no, source) from None
    if a < 1 or b < 1:
        raise FormatError(f"header values must be positive: {head!r}", no, source)
    return a, b


def parse_om(text: str, source: str = "<text>") -> OrientedMatroid:
    """``om <n> <rank>`` then one sign string per cocircuit pair; negations are added."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("no cocircuits", None, source)
    n, r = _header(lines, "om", source)
    reps = []
    for no, body in lines[1:]:
        if len(body) != n:
            raise FormatError(f"sign string {body!r} has length {len(body)}, expected {n}", no, source)
        try:
            X = SignVector.from_str(body)
        except OMError as exc:
            raise FormatError(str(exc), no, source) from None
        if X.is_zero():
            raise FormatError("zero sign vector is not a cocircuit", no, source)
        reps.append(X)
    if not reps:
        raise FormatError("no cocircuits", None, source)
    labels = _labels_from_comments(text)
    if labels is not None and len(labels) != n:
        raise FormatError(f"labels line names {len(labels)} elements, expected {n}", None, source)
    return OrientedMatroid.from_pairs(n, reps, rank=r, labels=labels)


def _default_labels(O: OrientedMatroid) -> bool:
    return O.labels == tuple(str(e + 1) for e in range(O.n))


def format_om(O: OrientedMatroid, notes: dict[SignVector, str] | None = None) -> str:
    """Canonical representatives in sorted order; ``notes`` adds a trailing comment per line."""
    out = [f"om {O.n} {O.rank}"]
    if not _default_labels(O):
        out.insert(0, "# labels: " + " ".join(O.labels))
    for X in sorted(O.pair_representatives(), key=str):
        note = (notes or {}).get(X)
        out.append(f"{X}  # {note}" if note else str(X))
    return "\n".join(out) + "\n"


def format_extension(res: ExtensionResult) -> str:
    notes = {}
    for Z in res.extended.pair_representatives():
        if res.is_new(Z):
            A, B = res.provenance[Z]
            notes[Z] = f"tag: new  # from: ({A}, {B})"
        else:
            notes[Z] = "tag: old"
    head = ""
    if res.lexspec is not None:
        head = f"# lex {res.lexspec.format(res.base.labels)}\n"
    return head + format_om(res.extended, notes)


def parse_vec(text: str, source: str = "<text>") -> VectorConfig:
    lines = _content_lines(text)
    n, d = _header(lines, "vec", source)
    rows = []
    for no, body in lines[1:]:
        try:
            row = [int(x) for x in body.split()]
        except ValueError:
            raise FormatError(f"non-integer entry in {body!r}", no, source) from None
        if len(row) != d:
            raise FormatError(f"row has {len(row)} entries, expected {d}", no, source)
        rows.append(row)
    if len(rows) != n:
        raise FormatError(f"expected {n} vectors, found {len(rows)}", None, source)
    return VectorConfig(rows)


def format_vec(cfg: VectorConfig) -> str:
    rows = [" ".join(str(x) for x in v) for v in cfg.vectors]
    return "\n".join([f"vec {cfg.n} {cfg.dimension}"] + rows) + "\n"


def parse_chi(text: str, source: str = "<text>") -> Chirotope:
    lines = _content_lines(text)
    n, r = _header(lines, "chi", source)
    body = "".join(b for _, b in lines[1:])
    try:
        return Chirotope.from_string(n, r, body)
    except ChirotopeError as exc:
        raise FormatError(str(exc), lines[1][0] if len(lines) > 1 else None, source) from None


def format_chi(chi: Chirotope) -> str:
    return f"chi {chi.n} {chi.r}\n{chi.to_string()}\n"


def guess_format(text: str, source: str = "<text>") -> str:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("no cocircuits", None, source)
    word = lines[0][1].split()[0]
    if word in FORMATS:
        return word
    raise FormatError(f"unknown header {lines[0][1]!r}", lines[0][0], source)


def parse_any(text: str, fmt: str | None = None, source: str = "<text>") -> OrientedMatroid:
    fmt = fmt or guess_format(text, source)
    if fmt == "om":
        return parse_om(text, source)
    if fmt == "vec":
        return om_from_vectors(parse_vec(text, source))
    if fmt == "chi":
        return om_from_chirotope(parse_chi(text, source))
    raise FormatError(f"unknown format {fmt!r}", None, source)


def load(path: str | Path, fmt: str | None = None) -> OrientedMatroid:
    path = Path(path)
    return parse_any(path.read_text(), fmt, str(path))


def save(O: OrientedMatroid, path: str | Path) -> None:
    Path(path).write_text(format_om(O))


@dataclass
class Scenario:
    """One input plus the checks to run on it."""

    input: str
    format: str | None = None
    lex: str | None = None
    checks: list[str] = field(default_factory=list)
    out: str | None = None
    dot: str | None = None
    seed: int = 0
    pairs: list[str] = field(default_factory=list)


SCENARIO_CHECKS = ("validate", "extend", "euclid", "lemmas", "theorems")


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    """``key: value`` lines (in, format, checks, out, dot, seed, pair) plus an optional ``lex [...]`` line."""
    vals: dict = {"checks": [], "pairs": []}
    for no, body in _content_lines(text):
        if body.startswith("lex"):
            if "lex" in vals:
                raise FormatError("more than one lex line", no, source)
            vals["lex"] = body
            continue
        key, sep, value = body.partition(":")
        key, value = key.strip(), value.strip()
        if not sep or not value:
            raise FormatError(f"expected 'key: value', got {body!r}", no, source)
        if key == "in":
            if "input" in vals:
                raise FormatError("more than one input", no, source)
            vals["input"] = value
        elif key == "format":
            if value not in FORMATS:
                raise FormatError(f"unknown format {value!r}", no, source)
            vals["format"] = value
        elif key == "checks":
            for c in value.replace(",", " ").split():
                if c not in SCENARIO_CHECKS:
                    raise FormatError(f"unknown check {c!r}", no, source)
                vals["checks"].append(c)
        elif key in ("out", "dot"):
            vals[key] = value
        elif key == "seed":
            try:
                vals["seed"] = int(value)
            except ValueError:
                raise FormatError(f"seed must be an integer, got {value!r}", no, source) from None
        elif key == "pair":
            vals["pairs"].append(value)
        else:
            raise FormatError(f"unknown key {key!r}", no, source)
    if "input" not in vals:
        raise FormatError("scenario names no input", None, source)
    if not vals["checks"]:
        raise FormatError("scenario selects no checks", None, source)
    return Scenario(**vals)


def scenario_lexspec(sc: Scenario, O: OrientedMatroid) -> LexSpec | None:
    return parse_lexspec(sc.lex, O) if sc.lex else None
