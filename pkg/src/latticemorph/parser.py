"""CYK co-analysis of morphology and phonology over a phoneme lattice.

Cells are indexed by half-open lattice node pairs ``(i, j)``.  A morpheme
spelled by phoneme positions ``i..j`` inclusive in the linear notation sits in
cell ``(i, j + 1)`` here, so ``ci-wu`` over positions 0-2 is cell ``(0, 3)``
and concatenation is simply ``(i, k) + (k, j)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyAnalysis
from .lattice import PhonemeLattice
from .lexicon import Lexicon, MorphemeEntry, lattice_lookup, morph_connect, phon_connect


@dataclass(frozen=True)
class ChartItem:
    start: int
    end: int
    morphemes: tuple[MorphemeEntry, ...]

    @property
    def first(self) -> MorphemeEntry:
        return self.morphemes[0]

    @property
    def last(self) -> MorphemeEntry:
        return self.morphemes[-1]

    @property
    def left_edge(self) -> tuple[str, str]:
        return (self.first.left_morph, self.first.left_phon)

    @property
    def right_edge(self) -> tuple[str, str]:
        return (self.last.right_morph, self.last.right_phon)

    @property
    def key(self) -> tuple:
        # two derivations of the same morpheme sequence collapse, but only when
        # they also expose the same connectivity at both ends
        return (tuple((m.orth, m.tag) for m in self.morphemes), self.left_edge, self.right_edge)

    def __str__(self) -> str:
        return "+".join(str(m) for m in self.morphemes)


class Chart:
    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.cells: dict[tuple[int, int], dict[tuple, ChartItem]] = {}

    def add(self, item: ChartItem) -> bool:
        cell = self.cells.setdefault((item.start, item.end), {})
        if item.key in cell:
            return False
        cell[item.key] = item
        return True

    def cell(self, i: int, j: int) -> list[ChartItem]:
        return list(self.cells.get((i, j), {}).values())

    def spans(self) -> list[tuple[int, int]]:
        return sorted(s for s, c in self.cells.items() if c)

    def __len__(self) -> int:
        return sum(len(c) for c in self.cells.values())

    def dump(self) -> list[str]:
        return [f"({i},{j}) {item}" for i, j in self.spans() for item in self.cell(i, j)]


@dataclass(frozen=True)
class EojeolAnalysis:
    morphemes: tuple[MorphemeEntry, ...]

    @property
    def rendered(self) -> str:
        return render(self.morphemes)

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(m.tag for m in self.morphemes)

    @property
    def key(self) -> tuple[tuple[str, str], ...]:
        return tuple((m.orth, m.tag) for m in self.morphemes)

    def line(self) -> str:
        return f"{self.rendered}\t{','.join(self.tags)}"

    def __str__(self) -> str:
        return self.rendered


@dataclass(frozen=True)
class ParserConfig:
    max_analyses: int | None = None


def render(morphemes: Iterable[MorphemeEntry]) -> str:
    """Join orthographic forms with ``+``; syllable ``-`` inside each is kept."""
    orths = [m.orth for m in morphemes]
    if not orths:
        raise EmptyAnalysis("cannot render an empty analysis")
    return "+".join(orths)


def seed_chart(lat: PhonemeLattice, lex: Lexicon) -> Chart:
    chart = Chart(lat.num_nodes)
    for i in range(lat.num_nodes):
        for end, entry in lattice_lookup(lex, lat, i):
            chart.add(ChartItem(i, end, (entry,)))
    return chart


def can_join(lex: Lexicon, left: MorphemeEntry, right: MorphemeEntry) -> bool:
    return morph_connect(lex, left, right) and phon_connect(lex, left, right)


def combine(chart: Chart, lex: Lexicon) -> Chart:
    """Fill every cell bottom-up by span length; already-combined cells are left as is."""
    n = chart.num_nodes
    for length in range(2, n):
        for i in range(0, n - length):
            j = i + length
            for k in range(i + 1, j):
                lefts = chart.cell(i, k)
                if not lefts:
                    continue
                rights = chart.cell(k, j)
                for a in lefts:
                    for b in rights:
                        if can_join(lex, a.last, b.first):
                            chart.add(ChartItem(i, j, a.morphemes + b.morphemes))
    return chart


def build_chart(lat: PhonemeLattice, lex: Lexicon) -> Chart:
    return combine(seed_chart(lat, lex), lex)


def full_span_analyses(chart: Chart, lex: Lexicon, cfg: ParserConfig = ParserConfig()) -> list[EojeolAnalysis]:
    seen = {}
    for item in chart.cell(0, chart.num_nodes - 1):
        if not (lex.tag_info(item.first.tag).initial_ok and lex.tag_info(item.last.tag).final_ok):
            continue
        a = EojeolAnalysis(item.morphemes)
        seen.setdefault(a.key, a)
    out = sorted(seen.values(), key=lambda a: (len(a.morphemes), a.rendered, a.tags))
    if cfg.max_analyses is not None:
        out = out[:cfg.max_analyses]
    return out


def analyze(lat: PhonemeLattice, lex: Lexicon, cfg: ParserConfig = ParserConfig()) -> list[EojeolAnalysis]:
    """Every legal full-span analysis, fewest morphemes first then lexicographic."""
    return full_span_analyses(build_chart(lat, lex), lex, cfg)
