"""Deterministic diphone-stream to phoneme-lattice decoding.

Three stages, no scores: group frame-level spottings into runs, drop
low-frequency runs that compete with stronger ones, then split the surviving
diphones into phonemes, merging the phoneme that neighbouring diphones share.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, TextIO

from .errors import EmptyInput, InconsistentOverlap, ParseError, UnsortedStream
from .lattice import Edge, PhonemeLattice
from .phonemes import AlphabetConfig, Diphone, DiphoneType, Phoneme, make_diphone


class DiphoneObservation(NamedTuple):
    frame: int
    diphone: Diphone


@dataclass(frozen=True)
class DiphoneRun:
    diphone: Diphone
    start: int
    end: int
    count: int

    def overlaps(self, other: "DiphoneRun", window: int = 0) -> bool:
        return self.start <= other.end + window and other.start <= self.end + window

    def sort_key(self) -> tuple:
        return (self.start, *self.diphone.sort_key(), self.end)


@dataclass(frozen=True)
class DecoderConfig:
    min_count: int = 2
    gap_frames: int = 2
    keep_alternatives: bool = True

    def __post_init__(self):
        if self.min_count < 1:
            raise ValueError("min_count must be >= 1")
        if self.gap_frames < 0:
            raise ValueError("gap_frames must be >= 0")


def group_runs(stream: Sequence[DiphoneObservation], cfg: DecoderConfig = DecoderConfig()) -> list[DiphoneRun]:
    """Collapse observations of the same diphone into maximal runs.

    Two observations join one run when at most ``cfg.gap_frames`` empty frames
    separate them.  Runs of different diphones may interleave.
    """
    open_runs: dict[Diphone, list[int]] = {}
    done: list[DiphoneRun] = []
    prev_frame = None
    for obs in stream:
        if obs.frame < 0:
            raise ValueError(f"negative frame {obs.frame}")
        if prev_frame is not None and obs.frame < prev_frame:
            raise UnsortedStream(f"frame {obs.frame} follows frame {prev_frame}")
        prev_frame = obs.frame
        run = open_runs.get(obs.diphone)
        if run is not None and obs.frame - run[1] - 1 <= cfg.gap_frames:
            run[1] = max(run[1], obs.frame)
            run[2] += 1
            continue
        if run is not None:
            done.append(DiphoneRun(obs.diphone, *run))
        open_runs[obs.diphone] = [obs.frame, obs.frame, 1]
    done.extend(DiphoneRun(d, *r) for d, r in open_runs.items())
    return sorted(done, key=DiphoneRun.sort_key)


def overlap_clusters(runs: Iterable[DiphoneRun]) -> list[list[DiphoneRun]]:
    """Connected components of the frame-interval overlap relation, in time order."""
    clusters: list[list[DiphoneRun]] = []
    reach = None
    for run in sorted(runs, key=DiphoneRun.sort_key):
        if reach is None or run.start > reach:
            clusters.append([run])
            reach = run.end
        else:
            clusters[-1].append(run)
            reach = max(reach, run.end)
    return clusters


def prune_insertions(runs: Iterable[DiphoneRun], cfg: DecoderConfig = DecoderConfig()) -> list[DiphoneRun]:
    kept = []
    for cluster in overlap_clusters(runs):
        survivors = [r for r in cluster if r.count >= cfg.min_count]
        if not survivors:
            # never empty a region that had spottings
            best = max(r.count for r in cluster)
            survivors = [r for r in cluster if r.count == best]
        if not cfg.keep_alternatives:
            best = max(r.count for r in survivors)
            survivors = [next(r for r in survivors if r.count == best)]
        kept.extend(survivors)
    return sorted(kept, key=DiphoneRun.sort_key)


def _join(prev_last: Phoneme | None, d: Diphone) -> str | None:
    """How ``d`` continues a path ending in ``prev_last``.

    "share" when the boundary phoneme is the same (emitted once), "concat"
    when the two diphones do not overlap, None when they should overlap on a
    phoneme of the same role but spell different symbols there.
    """
    if prev_last is None or d.dtype is DiphoneType.V:
        # a V diphone is a whole syllable nucleus and never continues its left neighbour
        return "concat"
    first = d.phonemes[0]
    if first.role is not prev_last.role:
        return "concat"
    return "share" if first == prev_last else None


def merge_to_lattice(runs: Iterable[DiphoneRun], alphabet: AlphabetConfig | None = None) -> PhonemeLattice:
    """Lay surviving runs into a lattice.

    Each overlap cluster is one slot whose diphones are alternatives.  State
    between slots is the last phoneme emitted, so alternatives ending in the
    same phoneme share a node.  From each state only the alternatives that
    join it consistently are attached; when none do (a neighbour was
    deleted), all of them are concatenated.  Nodes with identical outgoing
    edges are merged at the end, which turns parallel spans into parallel
    edges.
    """
    slots = []
    for cluster in overlap_clusters(runs):
        alts = []
        for r in cluster:
            if alphabet is not None:
                _check_symbols(r.diphone, alphabet)
            if r.diphone not in alts:
                alts.append(r.diphone)
        slots.append(alts)
    if not slots:
        raise EmptyInput("no diphone runs to decode")

    SRC, SINK = ("src",), ("sink",)
    ends: dict[Phoneme | None, tuple] = {None: SRC}
    order: list[tuple] = [SRC]
    edges: set[tuple[tuple, tuple, str]] = set()
    for k, alts in enumerate(slots):
        last_slot = k == len(slots) - 1
        mids: dict[tuple, None] = {}
        new_ends: dict[Phoneme, tuple] = {}
        for prev_last, prev_node in ends.items():
            joins = [(d, _join(prev_last, d)) for d in alts]
            joins = [(d, j) for d, j in joins if j is not None] or [(d, "concat") for d in alts]
            lengths = set()
            for d, how in joins:
                seq = d.phonemes[1:] if how == "share" else d.phonemes
                lengths.add(len(seq))
                end = SINK if last_slot else new_ends.setdefault(d.phonemes[-1], ("end", k, d.phonemes[-1]))
                node = prev_node
                for p in seq[:-1]:
                    mid = ("mid", k, prev_node, len(seq), d.phonemes[-1])
                    mids.setdefault(mid)
                    edges.add((node, mid, p.symbol))
                    node = mid
                edges.add((node, end, seq[-1].symbol))
            if len(lengths) > 1:
                warnings.warn(
                    f"alternatives {[str(d) for d, _ in joins]} span {sorted(lengths)} phonemes; "
                    "laid in via separate interior nodes",
                    InconsistentOverlap,
                    stacklevel=2,
                )
        order.extend(mids)
        order.extend(new_ends.values())
        ends = dict(new_ends) if not last_slot else {}
    order.append(SINK)
    ids = {key: i for i, key in enumerate(order)}
    return _merge_suffixes(len(order), {(ids[a], ids[b], s) for a, b, s in edges})


def _merge_suffixes(num_nodes: int, edges: set[Edge]) -> PhonemeLattice:
    """Merge nodes whose outgoing edge sets coincide; the path set is unchanged."""
    while True:
        out: dict[int, set[tuple[int, str]]] = {n: set() for n in range(1, num_nodes - 1)}
        for i, j, s in edges:
            if i in out:
                out[i].add((j, s))
        groups: dict[frozenset, list[int]] = {}
        for n, o in out.items():
            groups.setdefault(frozenset(o), []).append(n)
        # the latest member represents the group, so every edge still points forward
        rep = {n: max(g) for g in groups.values() if len(g) > 1 for n in g}
        if not rep:
            break
        edges = {(rep.get(i, i), rep.get(j, j), s) for i, j, s in edges}
        live = sorted({n for e in edges for n in e[:2]} | {0, num_nodes - 1})
        renum = {n: k for k, n in enumerate(live)}
        edges = {(renum[i], renum[j], s) for i, j, s in edges}
        num_nodes = len(live)
    return PhonemeLattice(num_nodes, frozenset(edges))


def _check_symbols(d: Diphone, alphabet: AlphabetConfig) -> None:
    for p in d.phonemes:
        pool = {"V": alphabet.vowels, "C1": alphabet.initials, "C2": alphabet.finals}[p.role.value]
        if p.symbol not in pool:
            raise ParseError(f"{d} uses {p.symbol!r}, not a {p.role.value} symbol of the alphabet")


def decode(
    stream: Sequence[DiphoneObservation],
    cfg: DecoderConfig = DecoderConfig(),
    alphabet: AlphabetConfig | None = None,
) -> PhonemeLattice:
    if not stream:
        raise EmptyInput("empty diphone stream")
    return merge_to_lattice(prune_insertions(group_runs(stream, cfg), cfg), alphabet)


# ------------------------------------------------------------------- file I/O

def read_stream(stream: TextIO, alphabet: AlphabetConfig | None = None) -> list[DiphoneObservation]:
    """Parse ``<frame> <dtype> <phoneme> [<phoneme>]`` lines."""
    out = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if len(cols) not in (3, 4) or not cols[0].isdigit():
            raise ParseError(f"expected '<frame> <dtype> <phoneme> [<phoneme>]', got {line!r}", lineno)
        try:
            d = make_diphone(cols[1], *cols[2:])
        except ValueError as exc:
            raise ParseError(f"unknown diphone type {cols[1]!r}", lineno) from exc
        except Exception as exc:
            raise ParseError(str(exc), lineno) from exc
        if alphabet is not None:
            try:
                _check_symbols(d, alphabet)
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from exc
        out.append(DiphoneObservation(int(cols[0]), d))
    return out


def write_stream(obs: Iterable[DiphoneObservation], stream: TextIO) -> None:
    for o in obs:
        stream.write(f"{o.frame} {o.diphone.dtype.value} {' '.join(o.diphone.symbols)}\n")
