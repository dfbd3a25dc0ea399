"""Line-oriented text format for decompositions.

    urd 1 v=<v> family=<k2p3k3|k2p4c4|p4c4|raw>
    profile <counts space-separated>          (optional)
    class <kind>: <block> <block> ...         (one line per class)

A block is hyphen-joined vertex labels in canonical order; '#' starts a
comment and blank lines are ignored. Blocks are emitted in canonical form
and sorted within each class, classes in list order, so serialization of a
canonical decomposition is byte-deterministic. UTF-8, LF line endings.

Parsing is strict about shape (arity, vertex range, duplicate edges within
a line); semantic problems such as a vertex covered twice by different
blocks are left to the verifier.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    FAMILIES,
    Decomposition,
    MalformedBlockError,
    ParallelClass,
    Profile,
    UrdError,
    block,
    block_edge_list,
    canonicalize_block,
    kind_arity,
)

FORMAT_VERSION = "1"
_HEADER_RE = re.compile(r"^urd\s+(\S+)\s+v=(\d+)\s+family=(\S+)\s*$")


class UrdParseError(UrdError):
    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, col {column}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class UrdDocument:
    """A parsed document: the decomposition plus its header metadata."""

    decomposition: Decomposition
    family: str = "raw"
    profile: Profile | None = None


def detect_family(d: Decomposition) -> str:
    """Smallest profile family containing every kind present, else 'raw'."""
    kinds = {pc.kind for pc in d.classes}
    for fam in ("p4c4", "k2p3k3", "k2p4c4"):
        if kinds and kinds <= set(FAMILIES[fam]):
            return fam
    return "raw"


def serialize_urd(d: Decomposition,
                  *,
                  family: str | None = None,
                  profile: Profile | None = None) -> str:
    """Render a decomposition in the text format above."""
    if family is None:
        family = profile.family if profile is not None else detect_family(d)
    if family != "raw" and family not in FAMILIES:
        raise UrdError(f"unknown family {family!r}")
    if profile is not None and profile.family != family:
        raise UrdError(f"profile family {profile.family} != document family {family}")
    for pc in d.classes:
        for b in pc.blocks:
            if b.kind != pc.kind or canonicalize_block(b) != b:
                raise UrdError(f"cannot serialize non-canonical block {b}")
            if any(x < 0 or x >= d.v for x in b.vertices):
                raise UrdError(f"block {b.vertices} outside order {d.v}")
    lines = [f"urd {FORMAT_VERSION} v={d.v} family={family}"]
    if profile is not None:
        lines.append("profile " + " ".join(str(c) for c in profile.counts))
    for pc in d.classes:
        blocks = " ".join("-".join(str(x) for x in b.vertices) for b in pc.blocks)
        lines.append(f"class {pc.kind}: {blocks}".rstrip())
    return "\n".join(lines) + "\n"


def _column(line: str, token: str) -> int:
    pos = line.find(token)
    return pos + 1 if pos >= 0 else 1


def parse_urd(text: str) -> UrdDocument:
    """Strict parse of the text format; returns the document."""
    header = None
    profile_counts: tuple[int, ...] | None = None
    classes: list[ParallelClass] = []
    v = 0
    family = "raw"
    saw_class = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if header is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise UrdParseError("expected header 'urd 1 v=<v> family=<tag>'", lineno)
            version, v_str, family = m.group(1), m.group(2), m.group(3)
            if version != FORMAT_VERSION:
                raise UrdParseError(f"unsupported format version {version!r}",
                                    lineno, _column(line, version))
            v = int(v_str)
            if v < 2:
                raise UrdParseError(f"order v={v} too small", lineno, _column(line, v_str))
            if family != "raw" and family not in FAMILIES:
                raise UrdParseError(f"unknown family {family!r}",
                                    lineno, _column(line, family))
            header = (v, family)
            continue
        if line.startswith("profile"):
            if saw_class or profile_counts is not None:
                raise UrdParseError("profile line must directly follow the header", lineno)
            if family == "raw":
                raise UrdParseError("profile line needs a non-raw family", lineno)
            toks = line.split()[1:]
            if not toks or not all(t.isdigit() for t in toks):
                raise UrdParseError("profile needs space-separated counts", lineno)
            counts = tuple(int(t) for t in toks)
            if len(counts) != len(FAMILIES[family]):
                raise UrdParseError(
                    f"family {family} needs {len(FAMILIES[family])} counts, got {len(counts)}",
                    lineno)
            profile_counts = counts
            continue
        if not line.startswith("class"):
            raise UrdParseError(f"unrecognized line {line.split()[0]!r}", lineno)
        saw_class = True
        body = line[len("class"):].strip()
        if ":" not in body:
            raise UrdParseError("class line needs 'class <kind>: <blocks>'", lineno)
        kind, rest = body.split(":", 1)
        kind = kind.strip()
        try:
            arity = kind_arity(kind)
        except MalformedBlockError as exc:
            raise UrdParseError(str(exc), lineno, _column(line, kind)) from exc
        blocks = []
        line_edges: set[tuple[int, int]] = set()
        for token in rest.split():
            parts = token.split("-")
            if not all(p.isdigit() for p in parts):
                raise UrdParseError(f"bad block token {token!r}",
                                    lineno, _column(line, token))
            if len(parts) != arity:
                raise UrdParseError(
                    f"kind {kind} needs {arity} vertices, block {token!r} has {len(parts)}",
                    lineno, _column(line, token))
            vs = tuple(int(p) for p in parts)
            if any(x >= v for x in vs):
                raise UrdParseError(f"vertex {max(vs)} outside order {v}",
                                    lineno, _column(line, token))
            try:
                b = block(kind, vs)
            except MalformedBlockError as exc:
                raise UrdParseError(str(exc), lineno, _column(line, token)) from exc
            for e in block_edge_list(b):
                if e in line_edges:
                    raise UrdParseError(f"duplicate edge {e} within class line",
                                        lineno, _column(line, token))
                line_edges.add(e)
            blocks.append(b)
        classes.append(ParallelClass(kind, tuple(blocks)))
    if header is None:
        raise UrdParseError("empty document", 1)
    d = Decomposition(v, tuple(classes))
    profile = Profile(family, profile_counts) if profile_counts is not None else None
    return UrdDocument(d, family, profile)
