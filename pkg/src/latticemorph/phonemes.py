"""Phoneme alphabet, Yale tokenizer, diphone types and vowel groups.

Everything here is parameterized by an :class:`AlphabetConfig`; the bundled
46-phoneme table is loaded by :func:`default_alphabet`.
"""
from __future__ import annotations

import enum
import functools
import itertools
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

from .errors import IllegalPattern, ParseError, RoleViolation, UntokenizableRun

CC_GROUP = "CC"


class Role(str, enum.Enum):
    V = "V"
    C1 = "C1"
    C2 = "C2"


class DiphoneType(str, enum.Enum):
    # declaration order is the tie-break order used by the decoder
    C1V = "C1V"
    V = "V"
    VC2 = "VC2"
    C2C1 = "C2C1"

    @property
    def rank(self) -> int:
        return _TYPE_RANK[self]


_TYPE_RANK = {t: i for i, t in enumerate(DiphoneType)}

_PATTERNS = {
    (Role.V,): DiphoneType.V,
    (Role.C1, Role.V): DiphoneType.C1V,
    (Role.V, Role.C2): DiphoneType.VC2,
    (Role.C2, Role.C1): DiphoneType.C2C1,
}


@dataclass(frozen=True, order=True)
class Phoneme:
    symbol: str
    role: Role

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class Diphone:
    dtype: DiphoneType
    phonemes: tuple[Phoneme, ...]

    def __post_init__(self):
        roles = tuple(p.role for p in self.phonemes)
        if _PATTERNS.get(roles) is not self.dtype:
            raise IllegalPattern(f"{self.dtype.value} cannot hold roles {[r.value for r in roles]}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(p.symbol for p in self.phonemes)

    @property
    def label(self) -> str:
        sep = "." if self.dtype is DiphoneType.C2C1 else ""
        return sep.join(self.symbols)

    @property
    def vowel(self) -> str | None:
        for p in self.phonemes:
            if p.role is Role.V:
                return p.symbol
        return None

    def sort_key(self) -> tuple:
        return (self.dtype.rank, self.symbols)

    def __str__(self) -> str:
        return f"/{self.label}/"


@dataclass(frozen=True)
class VowelGroup:
    id: int
    name: str
    members: frozenset[str]


@dataclass(frozen=True)
class AlphabetConfig:
    vowels: tuple[str, ...]
    initials: tuple[str, ...]
    finals: tuple[str, ...]
    # vowel symbol -> group name; vowels absent from the map form their own group
    vowel_group_map: dict[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        for name, seq in (("V", self.vowels), ("C1", self.initials), ("C2", self.finals)):
            if len(set(seq)) != len(seq):
                raise ValueError(f"duplicate symbols in role {name}")
        if not self.vowels:
            raise ValueError("alphabet needs at least one vowel")

    @functools.cached_property
    def symbols(self) -> frozenset[str]:
        return frozenset(self.vowels) | frozenset(self.initials) | frozenset(self.finals)

    @functools.cached_property
    def _vowel_set(self) -> frozenset[str]:
        return frozenset(self.vowels)

    @functools.cached_property
    def _max_len(self) -> int:
        return max(len(s) for s in self.symbols)

    def is_vowel(self, symbol: str) -> bool:
        return symbol in self._vowel_set

    @functools.cached_property
    def vowel_groups(self) -> tuple[VowelGroup, ...]:
        """Vowel-keyed groups in first-appearance order, then the CC group."""
        names: dict[str, set[str]] = {}
        for v in self.vowels:
            names.setdefault(self.vowel_group_map.get(v, v), set()).add(v)
        groups = [VowelGroup(i, n, frozenset(m)) for i, (n, m) in enumerate(names.items())]
        groups.append(VowelGroup(len(groups), CC_GROUP, frozenset()))
        return tuple(groups)

    def group_named(self, name: str) -> VowelGroup:
        for g in self.vowel_groups:
            if g.name == name:
                return g
        raise KeyError(name)

    def group_of_vowel(self, vowel: str) -> VowelGroup:
        return self.group_named(self.vowel_group_map.get(vowel, vowel))


def load_alphabet(stream: TextIO) -> AlphabetConfig:
    """Read ``role<TAB>symbol[<TAB>group]`` lines."""
    roles: dict[str, list[str]] = {"V": [], "C1": [], "C2": []}
    groups: dict[str, str] = {}
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) < 2 or cols[0] not in roles or not cols[1]:
            raise ParseError(f"expected role<TAB>symbol, got {raw.rstrip()!r}", lineno)
        roles[cols[0]].append(cols[1])
        if len(cols) > 2 and cols[0] == "V" and cols[2]:
            groups[cols[1]] = cols[2]
    try:
        return AlphabetConfig(tuple(roles["V"]), tuple(roles["C1"]), tuple(roles["C2"]), groups)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_alphabet_file(path: str | Path) -> AlphabetConfig:
    with open(path, encoding="utf-8") as fh:
        return load_alphabet(fh)


@functools.lru_cache(maxsize=None)
def default_alphabet() -> AlphabetConfig:
    with resources.files("latticemorph.data").joinpath("alphabet.tsv").open(encoding="utf-8") as fh:
        return load_alphabet(fh)


# ---------------------------------------------------------------- tokenizing

def tokenize_run(run: str, alphabet: AlphabetConfig, offset: int = 0) -> list[str]:
    """Split a letter run into alphabet symbols, longest match first."""
    out = []
    i = 0
    while i < len(run):
        for n in range(min(alphabet._max_len, len(run) - i), 0, -1):
            if run[i:i + n] in alphabet.symbols:
                out.append(run[i:i + n])
                i += n
                break
        else:
            raise UntokenizableRun(run, offset + i)
    return out


def _syllable_roles(symbols: list[str], alphabet: AlphabetConfig, where: str) -> list[Phoneme]:
    vowel_at = [i for i, s in enumerate(symbols) if alphabet.is_vowel(s)]
    if len(vowel_at) != 1:
        raise RoleViolation(f"syllable {where!r} must contain exactly one vowel")
    v = vowel_at[0]
    if v > 1 or len(symbols) - v > 2:
        raise RoleViolation(f"syllable {where!r} has too many consonants")
    out = []
    for i, s in enumerate(symbols):
        if i < v:
            if s not in alphabet.initials:
                raise RoleViolation(f"{s!r} cannot start syllable {where!r}")
            out.append(Phoneme(s, Role.C1))
        elif i == v:
            out.append(Phoneme(s, Role.V))
        else:
            if s not in alphabet.finals:
                raise RoleViolation(f"{s!r} cannot end syllable {where!r}")
            out.append(Phoneme(s, Role.C2))
    return out


def parse_syllables(eojeol: str, alphabet: AlphabetConfig, offset: int = 0) -> list[list[Phoneme]]:
    syllables = []
    pos = offset
    for syl in eojeol.split("-"):
        if not syl:
            raise RoleViolation(f"empty syllable in {eojeol!r}")
        syllables.append(_syllable_roles(tokenize_run(syl, alphabet, pos), alphabet, syl))
        pos += len(syl) + 1
    return syllables


def parse_yale(text: str, alphabet: AlphabetConfig | None = None) -> list[list[Phoneme]]:
    """Tokenize Yale text: ``-`` separates syllables, whitespace separates Eojeols."""
    alphabet = alphabet or default_alphabet()
    eojeols = []
    for m in re.finditer(r"\S+", text):
        sylls = parse_syllables(m.group(), alphabet, m.start())
        eojeols.append([p for s in sylls for p in s])
    return eojeols


def split_syllables(phonemes: Iterable[Phoneme]) -> list[list[Phoneme]]:
    """Recover syllables from role-tagged phonemes."""
    out: list[list[Phoneme]] = []
    for p in phonemes:
        starts_new = (
            not out
            or p.role is Role.C1
            or (p.role is Role.V and not (out[-1] and out[-1][-1].role is Role.C1))
        )
        if starts_new:
            out.append([])
        out[-1].append(p)
    return out


def render(phonemes: Iterable[Phoneme]) -> str:
    return "-".join("".join(p.symbol for p in s) for s in split_syllables(phonemes))


def syllabify(symbols: Iterable[str], alphabet: AlphabetConfig | None = None) -> list[Phoneme]:
    """Assign roles to a bare symbol string using Korean syllable structure.

    A lone consonant between vowels becomes an onset when it can be one; two
    consonants split coda + onset.
    """
    alphabet = alphabet or default_alphabet()
    symbols = list(symbols)
    for s in symbols:
        if s not in alphabet.symbols:
            raise UntokenizableRun(s, 0)
    out: list[Phoneme] = []
    i = 0
    n = len(symbols)
    while i < n:
        j = i
        while j < n and not alphabet.is_vowel(symbols[j]):
            j += 1
        cluster = symbols[i:j]
        initial = i == 0
        final = j == n
        if final:
            if initial or len(cluster) > 1:
                raise RoleViolation(f"cannot syllabify {' '.join(symbols)!r}")
            roles = [Role.C2] * len(cluster)
        elif initial:
            if len(cluster) > 1:
                raise RoleViolation(f"cannot syllabify {' '.join(symbols)!r}")
            roles = [Role.C1] * len(cluster)
        elif len(cluster) == 0:
            roles = []
        elif len(cluster) == 1:
            roles = [Role.C1 if cluster[0] in alphabet.initials else Role.C2]
        elif len(cluster) == 2:
            roles = [Role.C2, Role.C1]
        else:
            raise RoleViolation(f"consonant cluster {cluster} cannot be syllabified")
        for s, r in zip(cluster, roles):
            if (r is Role.C1 and s not in alphabet.initials) or (r is Role.C2 and s not in alphabet.finals):
                raise RoleViolation(f"{s!r} cannot be {r.value} in {' '.join(symbols)!r}")
            out.append(Phoneme(s, r))
        if j < n:
            out.append(Phoneme(symbols[j], Role.V))
        i = j + 1
    return out


# ------------------------------------------------------------------ diphones

def classify_diphone(phonemes: Iterable[Phoneme]) -> Diphone:
    phonemes = tuple(phonemes)
    dtype = _PATTERNS.get(tuple(p.role for p in phonemes))
    if dtype is None:
        raise IllegalPattern(f"no diphone type for {[(p.symbol, p.role.value) for p in phonemes]}")
    return Diphone(dtype, phonemes)


def make_diphone(dtype: str | DiphoneType, *symbols: str) -> Diphone:
    """Build a diphone from its type name and bare symbols (roles follow the type)."""
    dtype = DiphoneType(dtype)
    roles = next(r for r, t in _PATTERNS.items() if t is dtype)
    if len(roles) != len(symbols):
        raise IllegalPattern(f"{dtype.value} takes {len(roles)} phonemes, got {len(symbols)}")
    return Diphone(dtype, tuple(Phoneme(s, r) for s, r in zip(symbols, roles)))


def generate_inventory(alphabet: AlphabetConfig) -> set[Diphone]:
    V, C1, C2 = Role.V, Role.C1, Role.C2
    inv = {Diphone(DiphoneType.V, (Phoneme(v, V),)) for v in alphabet.vowels}
    inv |= {Diphone(DiphoneType.C1V, (Phoneme(c, C1), Phoneme(v, V)))
            for c, v in itertools.product(alphabet.initials, alphabet.vowels)}
    inv |= {Diphone(DiphoneType.VC2, (Phoneme(v, V), Phoneme(c, C2)))
            for v, c in itertools.product(alphabet.vowels, alphabet.finals)}
    inv |= {Diphone(DiphoneType.C2C1, (Phoneme(a, C2), Phoneme(b, C1)))
            for a, b in itertools.product(alphabet.finals, alphabet.initials)}
    return inv


def inventory_counts(alphabet: AlphabetConfig) -> dict[DiphoneType, int]:
    counts = dict.fromkeys(DiphoneType, 0)
    for d in generate_inventory(alphabet):
        counts[d.dtype] += 1
    return counts


def vowel_group_of(d: Diphone, alphabet: AlphabetConfig) -> VowelGroup:
    if d.dtype is DiphoneType.C2C1:
        return alphabet.group_named(CC_GROUP)
    return alphabet.group_of_vowel(d.vowel)


def group_members(group: VowelGroup, alphabet: AlphabetConfig) -> set[Diphone]:
    return {d for d in generate_inventory(alphabet) if vowel_group_of(d, alphabet) == group}
