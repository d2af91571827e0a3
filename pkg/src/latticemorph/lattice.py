"""Phoneme lattices: DAGs over integer nodes 0..N with phoneme-labelled edges.

Edges are labelled by bare Yale symbols.  Positional roles are not stored on
the lattice: dictionary matching is by symbol, and the same symbol string can
be syllabified differently (``tul-ul`` vs ``tu-lul``) without changing what it
spells.
"""
from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, NamedTuple, TextIO

from .errors import EmptyInput, NodeOutOfRange, ParseError

Edge = tuple[int, int, str]


class LatticePath(NamedTuple):
    edges: tuple[Edge, ...]

    @property
    def phonemes(self) -> tuple[str, ...]:
        return tuple(e[2] for e in self.edges)


class PathEnumeration(NamedTuple):
    paths: list[LatticePath]
    overflow: bool


@dataclass(frozen=True)
class PhonemeLattice:
    num_nodes: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.num_nodes < 2:
            raise EmptyInput("a lattice needs at least one edge")
        for i, j, sym in self.edges:
            if not (0 <= i < j < self.num_nodes):
                raise NodeOutOfRange(f"edge {(i, j, sym)} outside 0..{self.num_nodes - 1} or not forward")

    @property
    def sink(self) -> int:
        return self.num_nodes - 1

    @functools.cached_property
    def _out(self) -> dict[int, list[tuple[int, str]]]:
        out: dict[int, list[tuple[int, str]]] = defaultdict(list)
        for i, j, sym in sorted(self.edges):
            out[i].append((j, sym))
        return dict(out)

    def out_edges(self, node: int) -> list[tuple[int, str]]:
        """Outgoing ``(to, symbol)`` pairs ordered by target node then symbol."""
        return self._out.get(node, [])

    def path_count(self) -> int:
        counts = [0] * self.num_nodes
        counts[self.sink] = 1
        for node in range(self.num_nodes - 2, -1, -1):
            counts[node] = sum(counts[j] for j, _ in self.out_edges(node))
        return counts[0]

    def dead_nodes(self) -> list[int]:
        """Nodes that lie on no source-to-sink path."""
        fwd = {0}
        for node in range(self.num_nodes):
            if node in fwd:
                fwd.update(j for j, _ in self.out_edges(node))
        back = {self.sink}
        for node in range(self.num_nodes - 1, -1, -1):
            if any(j in back for j, _ in self.out_edges(node)):
                back.add(node)
        return [n for n in range(self.num_nodes) if n not in fwd or n not in back]

    def spellings(self) -> set[tuple[str, ...]]:
        return {p.phonemes for p in enumerate_paths(self, limit=None).paths}


def from_string(phonemes: Iterable) -> PhonemeLattice:
    """Single-path chain lattice; accepts Phoneme objects or bare symbols."""
    symbols = [getattr(p, "symbol", p) for p in phonemes]
    if not symbols:
        raise EmptyInput("cannot build a lattice from an empty phoneme list")
    return PhonemeLattice(len(symbols) + 1, frozenset((i, i + 1, s) for i, s in enumerate(symbols)))


def add_alternative(lat: PhonemeLattice, start: int, end: int, symbol: str) -> PhonemeLattice:
    if not (0 <= start < end <= lat.sink):
        raise NodeOutOfRange(f"span ({start}, {end}) not inside 0..{lat.sink}")
    edge = (start, end, symbol)
    if edge in lat.edges:
        return lat
    return PhonemeLattice(lat.num_nodes, lat.edges | {edge})


def enumerate_paths(lat: PhonemeLattice, limit: int | None = 1000) -> PathEnumeration:
    """Depth-first, lexicographic by (target node, symbol); stops after ``limit`` paths."""
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    paths: list[LatticePath] = []
    overflow = False
    stack: list[tuple[int, tuple[Edge, ...]]] = [(0, ())]
    while stack:
        node, walked = stack.pop()
        if node == lat.sink:
            if limit is not None and len(paths) >= limit:
                overflow = True
                break
            paths.append(LatticePath(walked))
            continue
        for j, sym in reversed(lat.out_edges(node)):
            stack.append((j, walked + ((node, j, sym),)))
    return PathEnumeration(paths, overflow)


def read_lattice(stream: TextIO) -> PhonemeLattice:
    """Parse ``nodes <N+1>`` then ``<from> <to> <symbol>`` lines; ``#`` starts a comment."""
    num_nodes = None
    edges = set()
    last = 0
    for lineno, raw in enumerate(stream, 1):
        last = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if num_nodes is None:
            if len(cols) != 2 or cols[0] != "nodes" or not cols[1].isdigit():
                raise ParseError(f"expected 'nodes <count>' header, got {line!r}", lineno)
            num_nodes = int(cols[1])
            if num_nodes < 2:
                raise ParseError("a lattice needs at least 2 nodes", lineno)
            continue
        if len(cols) != 3 or not (cols[0].isdigit() and cols[1].isdigit()):
            raise ParseError(f"expected '<from> <to> <symbol>', got {line!r}", lineno)
        i, j = int(cols[0]), int(cols[1])
        if not i < j:
            raise ParseError(f"edge must go forward (from < to), got {i} -> {j}", lineno)
        if j >= num_nodes:
            raise ParseError(f"node {j} exceeds declared count {num_nodes}", lineno)
        edges.add((i, j, cols[2]))
    if num_nodes is None:
        raise ParseError("empty lattice file", max(last, 1))
    if not edges:
        raise ParseError("lattice has no edges", last)
    lat = PhonemeLattice(num_nodes, frozenset(edges))
    dead = lat.dead_nodes()
    if dead:
        raise ParseError(f"nodes {dead} are not on any source-to-sink path")
    return lat


def write_lattice(lat: PhonemeLattice, stream: TextIO) -> None:
    stream.write(f"nodes {lat.num_nodes}\n")
    for i, j, sym in sorted(lat.edges):
        stream.write(f"{i} {j} {sym}\n")
