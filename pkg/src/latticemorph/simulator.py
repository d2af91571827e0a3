"""Seeded stand-in for the acoustic diphone spotter.

Gold streams are derived from Yale text; :func:`corrupt` then deletes whole
gold runs and plants one-frame spurious spottings.

Random draws use ``random.Random(seed).random()`` only (Mersenne Twister,
whose ``random()`` sequence CPython guarantees across versions).  For every
gold run, in stream order, exactly four uniforms are drawn whether or not they
are used::

    u_delete   run deleted when u_delete < delete_rate
    u_insert   one spurious spotting planted when u_insert < insert_rate
    u_frame    frame = start + floor(u_frame * run_length)
    u_diphone  diphone = sorted_inventory[floor(u_diphone * len(inventory))]

Drawing unconditionally couples runs at different rates with the same seed:
the runs deleted at rate d1 are a subset of those deleted at d2 > d1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .decoder import DiphoneObservation
from .phonemes import (
    AlphabetConfig,
    Diphone,
    DiphoneType,
    Role,
    default_alphabet,
    generate_inventory,
    parse_syllables,
)

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class NoiseConfig:
    insert_rate: float = 0.0
    delete_rate: float = 0.0
    seed: int = 0
    frames_per_diphone: int = 5

    def __post_init__(self):
        for name in ("insert_rate", "delete_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.frames_per_diphone < 1:
            raise ValueError("frames_per_diphone must be positive")

    def for_line(self, index: int) -> "NoiseConfig":
        """Per-line derived seed (seed XOR line index)."""
        return NoiseConfig(self.insert_rate, self.delete_rate, (self.seed ^ index) & SEED_MASK,
                           self.frames_per_diphone)


def eojeol_to_diphones(eojeol: str, alphabet: AlphabetConfig | None = None) -> list[Diphone]:
    """Canonical decomposition of one Eojeol.

    Per syllable: C1V (or V without onset), then VC2 when a coda is present;
    a coda followed by an onset also yields the C2C1 bridge.
    """
    alphabet = alphabet or default_alphabet()
    out: list[Diphone] = []
    syllables = parse_syllables(eojeol, alphabet)
    for idx, syl in enumerate(syllables):
        onset = [p for p in syl if p.role is Role.C1]
        vowel = next(p for p in syl if p.role is Role.V)
        coda = [p for p in syl if p.role is Role.C2]
        if onset:
            if out and out[-1].phonemes[-1].role is Role.C2:
                out.append(Diphone(DiphoneType.C2C1, (out[-1].phonemes[-1], onset[0])))
            out.append(Diphone(DiphoneType.C1V, (onset[0], vowel)))
        else:
            out.append(Diphone(DiphoneType.V, (vowel,)))
        if coda:
            out.append(Diphone(DiphoneType.VC2, (vowel, coda[0])))
    return out


def diphones_to_stream(diphones: Iterable[Diphone], frames_per_diphone: int = 5) -> list[DiphoneObservation]:
    obs = []
    frame = 0
    for d in diphones:
        for _ in range(frames_per_diphone):
            obs.append(DiphoneObservation(frame, d))
            frame += 1
    return obs


def simulate_gold(eojeol: str, alphabet: AlphabetConfig | None = None,
                  frames_per_diphone: int = 5) -> list[DiphoneObservation]:
    return diphones_to_stream(eojeol_to_diphones(eojeol, alphabet), frames_per_diphone)


def gold_segments(stream: Sequence[DiphoneObservation]) -> list[tuple[int, int, Diphone]]:
    """Split a gold stream into ``(start, end, diphone)`` runs of abutting frames."""
    segs: list[list] = []
    for o in stream:
        if segs and segs[-1][2] == o.diphone and o.frame <= segs[-1][1] + 1:
            segs[-1][1] = o.frame
        else:
            segs.append([o.frame, o.frame, o.diphone])
    return [tuple(s) for s in segs]


def sorted_inventory(alphabet: AlphabetConfig) -> list[Diphone]:
    return sorted(generate_inventory(alphabet), key=Diphone.sort_key)


def corrupt(stream: Sequence[DiphoneObservation], cfg: NoiseConfig,
            inventory: Sequence[Diphone]) -> list[DiphoneObservation]:
    """Delete gold runs and plant one-frame insertions; pure in ``(stream, cfg)``."""
    if cfg.insert_rate == 0.0 and cfg.delete_rate == 0.0:
        return list(stream)
    if not inventory:
        raise ValueError("insertion needs a nonempty inventory")
    inventory = list(inventory)
    rng = random.Random(cfg.seed)
    out: list[tuple[int, int, DiphoneObservation]] = []
    for start, end, d in gold_segments(stream):
        u_delete, u_insert, u_frame, u_diphone = (rng.random() for _ in range(4))
        if u_delete >= cfg.delete_rate:
            out.extend((f, 0, DiphoneObservation(f, d)) for f in range(start, end + 1))
        if u_insert < cfg.insert_rate:
            frame = start + int(u_frame * (end - start + 1))
            spurious = inventory[int(u_diphone * len(inventory))]
            out.append((frame, 1, DiphoneObservation(frame, spurious)))
    out.sort(key=lambda t: (t[0], t[1]))
    return [o for _, _, o in out]
