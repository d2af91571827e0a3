"""Empirical deletion/insertion fractions of the noise model on a long synthetic stream.

Cycles the corpus until at least --targets gold diphones have been produced,
corrupts every line with its derived seed and scores with the diphone evaluator.

    python scripts/calibrate_noise.py --targets 7772 --seed 1
"""
import argparse

from latticemorph.decoder import group_runs
from latticemorph.evaluation import EvalReport, eval_diphones, read_corpus_file
from latticemorph.lexicon import data_path
from latticemorph.phonemes import default_alphabet
from latticemorph.simulator import NoiseConfig, corrupt, simulate_gold, sorted_inventory


def calibrate(corpus, cfg, targets, alphabet):
    inventory = sorted_inventory(alphabet)
    total = EvalReport()
    idx = 0
    while total.total < targets:
        gold = simulate_gold(corpus[idx % len(corpus)].surface, alphabet, cfg.frames_per_diphone)
        hyp = corrupt(gold, cfg.for_line(idx), inventory)
        total += eval_diphones(group_runs(gold), group_runs(hyp))
        idx += 1
    return total


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--corpus", default=str(data_path("corpus.tsv")))
    ap.add_argument("--insert-rate", type=float, default=0.386)
    ap.add_argument("--delete-rate", type=float, default=0.066)
    ap.add_argument("--targets", type=int, default=7772)
    ap.add_argument("--seed", type=int, nargs="+", default=[1])
    args = ap.parse_args()

    alphabet = default_alphabet()
    corpus = read_corpus_file(args.corpus)
    for seed in args.seed:
        cfg = NoiseConfig(args.insert_rate, args.delete_rate, seed)
        rep = calibrate(corpus, cfg, args.targets, alphabet)
        c, d, i = rep.percentages((2, 2, 2))
        print(f"seed {seed}: targets {rep.total}  correct {c}%  deleted {d}%  inserted {i}%")


if __name__ == "__main__":
    main()
