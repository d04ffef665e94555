"""Plain-text description files for corona builds.

A corona spec is a small key = value document:

    kind = r_vertex          # r_graph | r_vertex | r_edge
    base = path/to/base.edges
    crown.0 = path/to/h0.edges
    crown.2 = path/to/h2.edges   # crown indices not listed are empty

Paths are resolved relative to the spec file.  Crown indices are 0-based
and count vertices of the base graph for r_vertex, edges for r_edge;
r_graph takes no crowns at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .corona import CoronaResult, r_edge_corona, r_graph, r_vertex_corona
from .graphs import EdgeListError, Graph, empty_graph, parse_edge_list

KINDS = ("r_graph", "r_vertex", "r_edge")


class SpecFileError(ValueError):
    """Malformed corona spec document or unreadable referenced graph."""


@dataclass(frozen=True)
class CoronaSpec:
    """Parsed corona description: the build kind, base graph, and crowns."""

    kind: str
    base: Graph
    crowns: tuple[Graph, ...]
    base_path: str
    crown_paths: tuple[str, ...]


def _load_graph(path: Path, context: str) -> Graph:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise SpecFileError(f"{context}: cannot read {path}: {err.strerror}") from err
    try:
        return parse_edge_list(text)
    except EdgeListError as err:
        raise SpecFileError(f"{context}: {path}: {err}") from err


def load_corona_spec(path: str | Path) -> CoronaSpec:
    """Parse a corona spec file and load every graph it references."""
    spec_path = Path(path)
    try:
        text = spec_path.read_text(encoding="utf-8")
    except OSError as err:
        raise SpecFileError(f"cannot read {spec_path}: {err.strerror}") from err
    kind: str | None = None
    base_rel: str | None = None
    crown_rel: dict[int, str] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecFileError(f"{spec_path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not value:
            raise SpecFileError(f"{spec_path}:{lineno}: empty value for {key!r}")
        if key == "kind":
            if kind is not None:
                raise SpecFileError(f"{spec_path}:{lineno}: duplicate key 'kind'")
            if value not in KINDS:
                raise SpecFileError(
                    f"{spec_path}:{lineno}: kind must be one of {', '.join(KINDS)}, got {value!r}"
                )
            kind = value
        elif key == "base":
            if base_rel is not None:
                raise SpecFileError(f"{spec_path}:{lineno}: duplicate key 'base'")
            base_rel = value
        elif key.startswith("crown."):
            suffix = key[len("crown.") :]
            if not suffix.isdigit():
                raise SpecFileError(
                    f"{spec_path}:{lineno}: crown index must be a nonnegative integer, got {key!r}"
                )
            index = int(suffix)
            if index in crown_rel:
                raise SpecFileError(f"{spec_path}:{lineno}: duplicate key {key!r}")
            crown_rel[index] = value
        else:
            raise SpecFileError(f"{spec_path}:{lineno}: unknown key {key!r}")
    if kind is None:
        raise SpecFileError(f"{spec_path}: missing required key 'kind'")
    if base_rel is None:
        raise SpecFileError(f"{spec_path}: missing required key 'base'")
    root = spec_path.parent
    base = _load_graph(root / base_rel, f"{spec_path}: base")
    if kind == "r_graph":
        if crown_rel:
            raise SpecFileError(f"{spec_path}: kind r_graph takes no crown.* keys")
        return CoronaSpec(kind, base, (), base_rel, ())
    slots = base.n if kind == "r_vertex" else base.m
    unit = "vertex" if kind == "r_vertex" else "edge"
    for index in sorted(crown_rel):
        if index >= slots:
            raise SpecFileError(
                f"{spec_path}: crown.{index} out of range (base has {slots} {unit} slots)"
            )
    crowns: list[Graph] = []
    crown_paths: list[str] = []
    for index in range(slots):
        rel = crown_rel.get(index)
        if rel is None:
            crowns.append(empty_graph(0))
            crown_paths.append("")
        else:
            crowns.append(_load_graph(root / rel, f"{spec_path}: crown.{index}"))
            crown_paths.append(rel)
    return CoronaSpec(kind, base, tuple(crowns), base_rel, tuple(crown_paths))


def build_from_spec(spec: CoronaSpec) -> CoronaResult:
    """Run the builder named by the spec's kind."""
    if spec.kind == "r_graph":
        return r_graph(spec.base)
    if spec.kind == "r_vertex":
        return r_vertex_corona(spec.base, spec.crowns)
    if spec.kind == "r_edge":
        return r_edge_corona(spec.base, spec.crowns)
    raise SpecFileError(f"unknown kind {spec.kind!r}")
