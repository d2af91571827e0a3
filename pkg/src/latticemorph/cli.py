"""Command-line front end: ``latticemorph {analyze,decode,simulate,experiment,inventory}``.

Exit status is 0 on success and 2 on any input error.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .decoder import DecoderConfig, decode, read_stream, write_stream
from .errors import LatticeMorphError
from .evaluation import format_report, read_corpus_file, run_experiment
from .lattice import from_string, read_lattice, write_lattice
from .lexicon import DEFAULT_FILES, Lexicon, data_path, load_lexicon_files
from .parser import ParserConfig, combine, full_span_analyses, seed_chart
from .phonemes import AlphabetConfig, DiphoneType, inventory_counts, load_alphabet_file, parse_yale
from .simulator import NoiseConfig, corrupt, simulate_gold, sorted_inventory

NO_ANALYSIS = "NO ANALYSIS"


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    alphabet: Path
    dict: Path
    morph_matrix: Path
    phon_matrix: Path
    tags: Path
    corpus: Path | None = None
    lattice: Path | None = None
    stream: Path | None = None
    text: str | None = None
    out: Path | None = None
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    decoder: DecoderConfig = field(default_factory=DecoderConfig)
    parser: ParserConfig = field(default_factory=ParserConfig)
    fmt: str = "table"
    trace: bool = False
    groups: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        try:
            noise = NoiseConfig(ns.insert_rate, ns.delete_rate, ns.seed, ns.frames_per_diphone)
            decoder = DecoderConfig(ns.min_count, ns.gap_frames, not ns.single_best)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        cfg = cls(
            command=ns.command,
            alphabet=ns.alphabet or data_path("alphabet.tsv"),
            dict=ns.dict or data_path(DEFAULT_FILES["dict"]),
            morph_matrix=ns.morph_matrix or data_path(DEFAULT_FILES["morph_matrix"]),
            phon_matrix=ns.phon_matrix or data_path(DEFAULT_FILES["phon_matrix"]),
            tags=ns.tags or data_path(DEFAULT_FILES["tags"]),
            corpus=ns.corpus,
            lattice=ns.lattice,
            stream=ns.stream,
            text=ns.text,
            out=ns.out,
            noise=noise,
            decoder=decoder,
            parser=ParserConfig(ns.max_analyses),
            fmt=ns.format,
            trace=ns.trace,
            groups=ns.groups,
        )
        for name in ("alphabet", "dict", "morph_matrix", "phon_matrix", "tags", "corpus", "lattice", "stream"):
            path = getattr(cfg, name)
            if path is not None and not Path(path).is_file():
                raise InputError(f"--{name.replace('_', '-')}: no such file: {path}")
        return cfg

    def load_alphabet(self) -> AlphabetConfig:
        return load_alphabet_file(self.alphabet)

    def load_lexicon(self, alphabet: AlphabetConfig) -> Lexicon:
        return load_lexicon_files(self.dict, self.morph_matrix, self.phon_matrix, self.tags, alphabet)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_analyze(cfg: RunConfig) -> int:
    alphabet = cfg.load_alphabet()
    lex = cfg.load_lexicon(alphabet)
    if cfg.lattice is not None:
        with open(cfg.lattice, encoding="utf-8") as fh:
            jobs = [(None, read_lattice(fh))]
    elif cfg.text:
        eojeols = cfg.text.split()
        jobs = [(e, from_string(p)) for e, p in zip(eojeols, parse_yale(cfg.text, alphabet))]
    else:
        raise InputError("analyze needs --lattice or --text")
    lines = []
    for label, lat in jobs:
        chart = seed_chart(lat, lex)
        if cfg.trace:
            for row in chart.dump():
                print(f"trace seed {row}", file=sys.stderr)
        combine(chart, lex)
        if cfg.trace:
            for row in chart.dump():
                print(f"trace cell {row}", file=sys.stderr)
        analyses = full_span_analyses(chart, lex, cfg.parser)
        if len(jobs) > 1:
            lines.append(f"# {label}")
        lines.extend(a.line() for a in analyses)
        if not analyses:
            lines.append(NO_ANALYSIS)
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_decode(cfg: RunConfig) -> int:
    if cfg.stream is None:
        raise InputError("decode needs --stream")
    alphabet = cfg.load_alphabet()
    with open(cfg.stream, encoding="utf-8") as fh:
        stream = read_stream(fh, alphabet)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        lat = decode(stream, cfg.decoder, alphabet)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if cfg.out is None:
        write_lattice(lat, sys.stdout)
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            write_lattice(lat, fh)
    print(f"nodes {lat.num_nodes} edges {len(lat.edges)} paths {lat.path_count()}", file=sys.stderr)
    return 0


def cmd_simulate(cfg: RunConfig) -> int:
    if not cfg.text or len(cfg.text.split()) != 1:
        raise InputError("simulate needs --text with exactly one Eojeol")
    alphabet = cfg.load_alphabet()
    stream = simulate_gold(cfg.text.strip(), alphabet, cfg.noise.frames_per_diphone)
    stream = corrupt(stream, cfg.noise, sorted_inventory(alphabet))
    if cfg.out is None:
        write_stream(stream, sys.stdout)
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            write_stream(stream, fh)
    return 0


def cmd_experiment(cfg: RunConfig) -> int:
    alphabet = cfg.load_alphabet()
    lex = cfg.load_lexicon(alphabet)
    corpus = read_corpus_file(cfg.corpus or data_path("corpus.tsv"))
    result = run_experiment(corpus, lex, cfg.noise, cfg.decoder, alphabet, cfg.parser)
    _emit(format_report(result, cfg.fmt), cfg.out)
    for idx, msg in result.errors:
        print(f"line {idx + 1}: {msg}", file=sys.stderr)
    return 0


def cmd_inventory(cfg: RunConfig) -> int:
    alphabet = cfg.load_alphabet()
    counts = inventory_counts(alphabet)
    lines = [f"{t.value}\t{counts[t]}" for t in (DiphoneType.V, DiphoneType.C1V, DiphoneType.VC2, DiphoneType.C2C1)]
    lines.append(f"total\t{sum(counts.values())}")
    if cfg.groups:
        from .phonemes import group_members
        for g in alphabet.vowel_groups:
            lines.append(f"group {g.id}\t{g.name}\t{len(group_members(g, alphabet))}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "experiment": cmd_experiment,
    "inventory": cmd_inventory,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latticemorph", description=__doc__)
    ap.add_argument("command", choices=sorted(COMMANDS))
    data = ap.add_argument_group("data files (default: bundled)")
    data.add_argument("--alphabet", type=Path)
    data.add_argument("--dict", type=Path)
    data.add_argument("--morph-matrix", type=Path)
    data.add_argument("--phon-matrix", type=Path)
    data.add_argument("--tags", type=Path)
    inp = ap.add_argument_group("inputs")
    inp.add_argument("--corpus", type=Path, help="surface<TAB>gold<TAB>tags lines")
    inp.add_argument("--lattice", type=Path)
    inp.add_argument("--stream", type=Path, help="diphone observation stream")
    inp.add_argument("--text", help="Yale text, '-' between syllables")
    inp.add_argument("--out", type=Path, help="write main output here instead of stdout")
    noise = ap.add_argument_group("simulation")
    noise.add_argument("--seed", type=int, default=0)
    noise.add_argument("--insert-rate", type=float, default=0.0)
    noise.add_argument("--delete-rate", type=float, default=0.0)
    noise.add_argument("--frames-per-diphone", type=int, default=5)
    dec = ap.add_argument_group("decoding and analysis")
    dec.add_argument("--min-count", type=int, default=2, help="1 disables insertion pruning")
    dec.add_argument("--gap-frames", type=int, default=2)
    dec.add_argument("--single-best", action="store_true", help="drop surviving competitors")
    dec.add_argument("--max-analyses", type=int)
    dec.add_argument("--trace", action="store_true", help="dump chart cells to stderr")
    ap.add_argument("--format", choices=("table", "tsv"), default="table")
    ap.add_argument("--groups", action="store_true", help="inventory: also list vowel groups")
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (InputError, LatticeMorphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
