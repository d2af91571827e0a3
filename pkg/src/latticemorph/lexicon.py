"""Morpheme-level phonetic dictionary with morphotactic and phonotactic matrices.

Each entry is indexed by how it is *pronounced* (its phonetic header) and
carries the orthographic morpheme it stands for.  Within-morpheme sound
changes live in the header itself; changes across a morpheme boundary are
licensed by the phoneme connectivity matrix over the entries' edge symbols.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, TextIO

from .errors import ParseError, UnknownPhonSymbol, UnknownTag, UntokenizableHeader, UntokenizableRun
from .lattice import PhonemeLattice
from .phonemes import AlphabetConfig, default_alphabet, tokenize_run

_TRUE = {"y", "yes", "1", "true"}
_FALSE = {"n", "no", "0", "false"}


@dataclass(frozen=True)
class TagInfo:
    symbol: str
    major: str = ""
    initial_ok: bool = True
    final_ok: bool = True


@dataclass(frozen=True)
class MorphemeEntry:
    header: tuple[str, ...]
    orth: str
    tag: str
    left_morph: str
    right_morph: str
    left_phon: str
    right_phon: str
    index: int = 0  # position in the dictionary file

    def __str__(self) -> str:
        return f"{self.orth}/{self.tag}"


class TrieNode:
    __slots__ = ("children", "entries")

    def __init__(self):
        self.children: dict[str, TrieNode] = {}
        self.entries: list[MorphemeEntry] = []


class Trie:
    """Prefix tree over phoneme symbols; homophones share a terminal list."""

    def __init__(self):
        self.root = TrieNode()
        self._size = 0

    def insert(self, header: tuple[str, ...], entry: MorphemeEntry) -> None:
        node = self.root
        for sym in header:
            node = node.children.setdefault(sym, TrieNode())
        node.entries.append(entry)
        self._size += 1

    def find(self, header) -> list[MorphemeEntry]:
        node = self.root
        for sym in header:
            node = node.children.get(sym)
            if node is None:
                return []
        return list(node.entries)

    def prefixes_of(self, symbols) -> Iterator[tuple[int, MorphemeEntry]]:
        """Entries whose header is a prefix of ``symbols``, as ``(length, entry)``."""
        node = self.root
        for n, sym in enumerate(symbols, 1):
            node = node.children.get(sym)
            if node is None:
                return
            for e in node.entries:
                yield n, e

    def __len__(self) -> int:
        return self._size


@dataclass
class Lexicon:
    entries: list[MorphemeEntry]
    tags: dict[str, TagInfo]
    morph_allowed: frozenset[tuple[str, str]]
    phon_allowed: frozenset[tuple[str, str]]
    trie: Trie = field(default_factory=Trie, repr=False)

    def __post_init__(self):
        if not len(self.trie):
            for e in self.entries:
                self.trie.insert(e.header, e)

    @property
    def phon_symbols(self) -> frozenset[str]:
        return frozenset(s for pair in self.phon_allowed for s in pair)

    def tag_info(self, tag: str) -> TagInfo:
        return self.tags.get(tag) or TagInfo(tag)

    def __len__(self) -> int:
        return len(self.entries)


def morph_connect(lex: Lexicon, left: MorphemeEntry, right: MorphemeEntry) -> bool:
    return (left.right_morph, right.left_morph) in lex.morph_allowed


def phon_connect(lex: Lexicon, left: MorphemeEntry, right: MorphemeEntry) -> bool:
    return (left.right_phon, right.left_phon) in lex.phon_allowed


def lattice_lookup(lex: Lexicon, lat: PhonemeLattice, start: int) -> list[tuple[int, MorphemeEntry]]:
    """All ``(end_node, entry)`` with a lattice path start->end spelling the header.

    Breadth-first over (lattice node, trie node) pairs: a lattice edge is only
    followed while the trie has a matching child, so dead prefixes stop the walk.
    """
    if not 0 <= start < lat.num_nodes:
        raise ValueError(f"start node {start} not in lattice")
    found: set[tuple[int, int, MorphemeEntry]] = set()
    frontier = {(start, id(lex.trie.root)): (start, lex.trie.root)}
    while frontier:
        nxt: dict[tuple[int, int], tuple[int, TrieNode]] = {}
        for node, tnode in frontier.values():
            for to, sym in lat.out_edges(node):
                child = tnode.children.get(sym)
                if child is None:
                    continue
                nxt[(to, id(child))] = (to, child)
                for e in child.entries:
                    found.add((to, e.index, e))
        frontier = nxt
    return [(end, e) for end, _, e in sorted(found, key=lambda t: (t[0], t[1]))]


# ---------------------------------------------------------------- file loading

def _data_lines(stream: TextIO) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, [c.strip() for c in line.split("\t")]


def _flag(value: str, lineno: int) -> bool:
    v = value.lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ParseError(f"expected y/n flag, got {value!r}", lineno)


def load_tags(stream: TextIO) -> dict[str, TagInfo]:
    """``tag[<TAB>major-POS[<TAB>initial-ok<TAB>final-ok]]``; missing flags mean permissive."""
    tags = {}
    for lineno, cols in _data_lines(stream):
        major = cols[1] if len(cols) > 1 else ""
        initial = _flag(cols[2], lineno) if len(cols) > 2 and cols[2] else True
        final = _flag(cols[3], lineno) if len(cols) > 3 and cols[3] else True
        tags[cols[0]] = TagInfo(cols[0], major, initial, final)
    return tags


def load_matrix(stream: TextIO) -> frozenset[tuple[str, str]]:
    pairs = set()
    for lineno, cols in _data_lines(stream):
        if len(cols) != 2 or not all(cols):
            raise ParseError("expected left-symbol<TAB>right-symbol", lineno)
        pairs.add((cols[0], cols[1]))
    return frozenset(pairs)


def parse_header(text: str, alphabet: AlphabetConfig) -> tuple[str, ...]:
    """Header phonemes, space-separated; ``-`` and unspaced runs are tokenized too."""
    out = []
    for piece in re.split(r"[\s\-]+", text.strip()):
        if piece:
            out.extend(tokenize_run(piece, alphabet))
    return tuple(out)


def load_lexicon(
    dict_stream: TextIO,
    morph_stream: TextIO,
    phon_stream: TextIO,
    tag_stream: TextIO,
    alphabet: AlphabetConfig | None = None,
) -> Lexicon:
    alphabet = alphabet or default_alphabet()
    tags = load_tags(tag_stream)
    morph = load_matrix(morph_stream)
    phon = load_matrix(phon_stream)
    for pair in morph:
        for sym in pair:
            if sym not in tags:
                raise UnknownTag(f"morpheme matrix uses unknown tag {sym!r}")
    phon_symbols = {s for pair in phon for s in pair}

    entries = []
    for lineno, cols in _data_lines(dict_stream):
        if len(cols) != 7:
            raise ParseError(f"expected 7 tab-separated columns, got {len(cols)}", lineno)
        header_text, orth, tag, lm, rm, lp, rp = cols
        try:
            header = parse_header(header_text, alphabet)
        except UntokenizableRun as exc:
            raise UntokenizableHeader(str(exc), lineno) from exc
        if not header:
            raise UntokenizableHeader("empty phonetic header", lineno)
        if not orth:
            raise ParseError("empty orthographic form", lineno)
        for sym in (tag, lm, rm):
            if sym not in tags:
                raise UnknownTag(f"unknown tag {sym!r}", lineno)
        for sym in (lp, rp):
            if sym not in phon_symbols:
                raise UnknownPhonSymbol(f"unknown phonemic connectivity symbol {sym!r}", lineno)
        entries.append(MorphemeEntry(header, orth, tag, lm, rm, lp, rp, index=len(entries)))
    return Lexicon(entries, tags, morph, phon)


def load_lexicon_files(dict_path, morph_path, phon_path, tag_path,
                       alphabet: AlphabetConfig | None = None) -> Lexicon:
    with open(dict_path, encoding="utf-8") as d, open(morph_path, encoding="utf-8") as m, \
            open(phon_path, encoding="utf-8") as p, open(tag_path, encoding="utf-8") as t:
        return load_lexicon(d, m, p, t, alphabet)


def data_path(name: str) -> Path:
    return Path(str(resources.files("latticemorph.data").joinpath(name)))


DEFAULT_FILES = {
    "dict": "lexicon.tsv",
    "morph_matrix": "morph_matrix.tsv",
    "phon_matrix": "phon_matrix.tsv",
    "tags": "tags.tsv",
}


def default_lexicon(alphabet: AlphabetConfig | None = None) -> Lexicon:
    f = {k: data_path(v) for k, v in DEFAULT_FILES.items()}
    return load_lexicon_files(f["dict"], f["morph_matrix"], f["phon_matrix"], f["tags"], alphabet)
