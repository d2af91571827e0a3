"""Correct / delete / insert scoring at diphone and morpheme level, plus the
corpus-wide simulate -> corrupt -> decode -> analyze pipeline."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence, TextIO

from .decoder import DecoderConfig, DiphoneRun, decode, group_runs
from .errors import EmptyInput, LatticeMorphError, ParseError
from .lexicon import Lexicon
from .parser import EojeolAnalysis, ParserConfig, analyze
from .phonemes import AlphabetConfig, default_alphabet
from .simulator import NoiseConfig, corrupt, simulate_gold, sorted_inventory

GoldKey = tuple[tuple[str, "str | None"], ...]


def percent(count: int, total: int, digits: int = 1) -> str:
    """Half-up rounded percentage; 0 when ``total`` is 0."""
    if total == 0:
        value = Decimal(0)
    else:
        value = Decimal(count) * 100 / Decimal(total)
    return str(value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class EvalReport:
    total: int = 0
    correct: int = 0
    deleted: int = 0
    inserted: int = 0

    def __post_init__(self):
        if self.correct + self.deleted != self.total:
            raise ValueError("correct + deleted must equal total")
        if min(self.total, self.correct, self.deleted, self.inserted) < 0:
            raise ValueError("counts must be nonnegative")

    def __add__(self, other: "EvalReport") -> "EvalReport":
        return EvalReport(self.total + other.total, self.correct + other.correct,
                          self.deleted + other.deleted, self.inserted + other.inserted)

    def _rate(self, n: int) -> float:
        return n / self.total if self.total else 0.0

    @property
    def correct_rate(self) -> float:
        return self._rate(self.correct)

    @property
    def delete_rate(self) -> float:
        return self._rate(self.deleted)

    @property
    def insert_rate(self) -> float:
        return self._rate(self.inserted)

    def percentages(self, digits: tuple[int, int, int] = (1, 1, 1)) -> tuple[str, str, str]:
        return (percent(self.correct, self.total, digits[0]),
                percent(self.deleted, self.total, digits[1]),
                percent(self.inserted, self.total, digits[2]))

    def tsv(self) -> str:
        return f"{self.total}\t{self.correct}\t{self.deleted}\t{self.inserted}"


def eval_diphones(gold: Sequence[DiphoneRun], hyp: Sequence[DiphoneRun], window: int = 0) -> EvalReport:
    """A gold run is correct when a hypothesis run of the same diphone overlaps it.

    Each hypothesis run is credited to at most one gold run: candidate pairs are
    taken greedily by overlap length, ties going to the earlier gold run.
    """
    pairs = []
    for gi, g in enumerate(gold):
        for hi, h in enumerate(hyp):
            if g.diphone != h.diphone:
                continue
            overlap = min(g.end, h.end) - max(g.start, h.start) + 1 + window
            if overlap >= 1:
                pairs.append((-overlap, gi, hi))
    pairs.sort()
    used_g, used_h = set(), set()
    for _, gi, hi in pairs:
        if gi not in used_g and hi not in used_h:
            used_g.add(gi)
            used_h.add(hi)
    correct = len(used_g)
    return EvalReport(len(gold), correct, len(gold) - correct, len(hyp) - len(used_h))


def gold_key(gold) -> GoldKey:
    if isinstance(gold, EojeolAnalysis):
        return gold.key
    return tuple(gold)


def _matches(gold: GoldKey, hyp: EojeolAnalysis) -> bool:
    key = hyp.key
    return len(key) == len(gold) and all(
        o == ho and (t is None or t == ht) for (o, t), (ho, ht) in zip(gold, key))


def eval_morphemes(gold, hyps: Sequence[EojeolAnalysis], per_morpheme: bool = False) -> EvalReport:
    """Sequence-gated credit: gold morphemes count only inside an analysis equal to gold.

    Morphemes of every non-gold analysis count as insertions.  With
    ``per_morpheme`` the best positional overlap with any analysis is credited
    instead.
    """
    gold = gold_key(gold)
    if not gold:
        raise ValueError("gold analysis must be nonempty")
    hit = [_matches(gold, h) for h in hyps]
    inserted = sum(len(h.morphemes) for h, ok in zip(hyps, hit) if not ok)
    if any(hit):
        correct = len(gold)
    elif per_morpheme and hyps:
        correct = max(
            sum(o == ho and (t is None or t == ht) for (o, t), (ho, ht) in zip(gold, h.key))
            for h in hyps)
    else:
        correct = 0
    return EvalReport(len(gold), correct, len(gold) - correct, inserted)


# ---------------------------------------------------------------- corpus + pipeline

class CorpusLine(NamedTuple):
    surface: str
    gold: GoldKey | None


def parse_gold(rendered: str, tags: str | None = None) -> GoldKey:
    orths = rendered.split("+")
    tag_list = tags.split(",") if tags else [None] * len(orths)
    if len(tag_list) != len(orths):
        raise ValueError(f"{len(orths)} morphemes but {len(tag_list)} tags in gold {rendered!r}")
    return tuple(zip(orths, tag_list))


def read_corpus(stream: TextIO) -> list[CorpusLine]:
    """One Eojeol per line: ``surface[<TAB>gold-rendered[<TAB>tag,tag,...]]``."""
    out = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        try:
            gold = parse_gold(cols[1], cols[2] if len(cols) > 2 else None) if len(cols) > 1 else None
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
        out.append(CorpusLine(cols[0].strip(), gold))
    return out


def read_corpus_file(path: str | Path) -> list[CorpusLine]:
    with open(path, encoding="utf-8") as fh:
        return read_corpus(fh)


@dataclass
class ExperimentResult:
    diphone: EvalReport = field(default_factory=EvalReport)
    morpheme: EvalReport = field(default_factory=EvalReport)
    lines: int = 0
    errors: list[tuple[int, str]] = field(default_factory=list)


def evaluate_line(
    line: CorpusLine,
    lexicon: Lexicon,
    noise: NoiseConfig,
    decoder: DecoderConfig,
    alphabet: AlphabetConfig,
    inventory,
    parser: ParserConfig = ParserConfig(),
) -> tuple[EvalReport, EvalReport, list[EojeolAnalysis]]:
    gold_stream = simulate_gold(line.surface, alphabet, noise.frames_per_diphone)
    hyp_stream = corrupt(gold_stream, noise, inventory)
    dip = eval_diphones(group_runs(gold_stream, decoder), group_runs(hyp_stream, decoder))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            lat = decode(hyp_stream, decoder, alphabet)
    except EmptyInput:
        # everything was deleted: no lattice, hence no analyses
        analyses = []
    else:
        analyses = analyze(lat, lexicon, parser)
    morph = eval_morphemes(line.gold, analyses)
    return dip, morph, analyses


def run_experiment(
    corpus: Iterable[CorpusLine],
    lexicon: Lexicon,
    noise: NoiseConfig = NoiseConfig(),
    decoder: DecoderConfig = DecoderConfig(),
    alphabet: AlphabetConfig | None = None,
    parser: ParserConfig = ParserConfig(),
) -> ExperimentResult:
    alphabet = alphabet or default_alphabet()
    inventory = sorted_inventory(alphabet)
    result = ExperimentResult()
    for idx, line in enumerate(corpus):
        result.lines += 1
        if not line.gold:
            result.errors.append((idx, "no gold analysis"))
            continue
        try:
            dip, morph, _ = evaluate_line(line, lexicon, noise.for_line(idx), decoder, alphabet,
                                          inventory, parser)
        except LatticeMorphError as exc:
            result.errors.append((idx, str(exc)))
            continue
        result.diphone += dip
        result.morpheme += morph
    return result


def format_report(result: ExperimentResult, fmt: str = "table") -> str:
    rows = [("diphone", result.diphone, (1, 1, 1)), ("morpheme", result.morpheme, (1, 1, 2))]
    if fmt == "tsv":
        lines = ["level\ttotal\tcorrect\tdeleted\tinserted"]
        lines += [f"{name}\t{rep.tsv()}" for name, rep, _ in rows]
        lines.append(f"errors\t{len(result.errors)}")
        return "\n".join(lines) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")
    out = []
    for name, rep, digits in rows:
        c, d, i = rep.percentages(digits)
        out.append(f"{name} level")
        out.append(f"{'':24}{'total':>8}{'correct':>18}{'delete':>18}{'insert':>18}")
        out.append(f"{'pattern size (rec. rate)':24}{rep.total:>8}"
                   f"{f'{rep.correct} ({c}%)':>18}{f'{rep.deleted} ({d}%)':>18}{f'{rep.inserted} ({i}%)':>18}")
        out.append("")
    out.append(f"lines {result.lines}, errors {len(result.errors)}")
    return "\n".join(out) + "\n"
