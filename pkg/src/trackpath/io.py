"""Text formats: instances, tracker sets and annotated DOT.

Instance files are written canonically (header, ``s``, ``t``, then edges
sorted with ``u < v``), so reading and rewriting a canonical file gives the
same bytes up to comments.
"""

from __future__ import annotations

from typing import Iterable

from .errors import FormatError, MalformedEdge
from .graph import Instance, from_edge_list
from .verify import TrackerSet


def _ints(parts: list[str], count: int, lineno: int) -> list[int]:
    if len(parts) != count:
        raise FormatError(f"expected {count} field(s) after {parts[0]!r}" if parts else "empty line", lineno)
    try:
        values = [int(x) for x in parts[1:]]
    except ValueError:
        raise FormatError("non-integer field", lineno) from None
    if any(x < 0 for x in values):
        raise FormatError("negative id", lineno)
    return values


def parse_instance(text: str) -> Instance:
    header = None
    s = t = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        last = lineno
        tag = parts[0]
        if header is None and tag != "p":
            raise FormatError("'p track <n> <m>' must come first", lineno)
        if tag == "p":
            if header is not None:
                raise FormatError("repeated 'p' line", lineno)
            if len(parts) != 4 or parts[1] != "track":
                raise FormatError("header must read 'p track <n> <m>'", lineno)
            header = tuple(_ints(["p"] + parts[2:], 3, lineno))
        elif tag in ("s", "t"):
            (v,) = _ints(parts, 2, lineno)
            if v >= header[0]:
                raise FormatError(f"vertex {v} out of range", lineno)
            if tag == "s":
                if s is not None:
                    raise FormatError("repeated 's' line", lineno)
                s = v
            else:
                if t is not None:
                    raise FormatError("repeated 't' line", lineno)
                t = v
        elif tag == "e":
            u, v = _ints(parts, 3, lineno)
            if len(edges) == header[1]:
                raise FormatError(f"more than {header[1]} edges", lineno)
            try:
                from_edge_list(header[0], [(u, v)])
            except MalformedEdge as e:
                raise FormatError(str(e), lineno) from None
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge ({u}, {v})", lineno)
            seen.add(key)
            edges.append((u, v))
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise FormatError("missing 'p track' header", last or None)
    if s is None or t is None:
        raise FormatError("missing 's' or 't' line", last or None)
    if s == t:
        raise FormatError("s and t must differ", last or None)
    if len(edges) != header[1]:
        raise FormatError(f"header says {header[1]} edges, found {len(edges)}", last or None)
    return Instance(from_edge_list(header[0], edges), s, t)


def format_instance(inst: Instance, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p track {inst.n} {inst.m}")
    lines.append(f"s {inst.s}")
    lines.append(f"t {inst.t}")
    lines += [f"e {u} {v}" for u, v in inst.graph.edges]
    return "\n".join(lines) + "\n"


def parse_trackers(text: str, n: int | None = None) -> TrackerSet:
    count = None
    found: list[int] = []
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        last = lineno
        if count is None:
            if parts[0] != "k":
                raise FormatError("tracker file must start with 'k <count>'", lineno)
            (count,) = _ints(parts, 2, lineno)
            continue
        if len(parts) != 1:
            raise FormatError("expected one vertex id per line", lineno)
        (v,) = _ints(["v"] + parts, 2, lineno)
        if n is not None and v >= n:
            raise FormatError(f"vertex {v} out of range", lineno)
        if found and v <= found[-1]:
            raise FormatError("vertex ids must be strictly increasing", lineno)
        found.append(v)
    if count is None:
        raise FormatError("missing 'k <count>' line", last or None)
    if len(found) != count:
        raise FormatError(f"'k {count}' but {len(found)} ids listed", last or None)
    return frozenset(found)


def format_trackers(trackers: Iterable[int]) -> str:
    ids = sorted(trackers)
    return "".join([f"k {len(ids)}\n"] + [f"{v}\n" for v in ids])


def to_dot(inst: Instance, trackers: Iterable[int] = (), names: dict[int, str] | None = None) -> str:
    tracked = set(trackers)
    lines = ["graph G {"]
    for v in range(inst.n):
        attrs = []
        if names and v in names:
            attrs.append(f'label="{names[v]}"')
        if v in tracked:
            attrs.append("color=red")
        if v in (inst.s, inst.t):
            attrs.append("shape=doublecircle")
        tail = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {v}{tail};")
    lines += [f"  {u} -- {v};" for u, v in inst.graph.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
