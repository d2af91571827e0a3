"""Morpheme- and diphone-level rates over a grid of delete rates, averaged over seeds.

    python scripts/noise_sweep.py --insert-rate 0.386 --delete-rates 0 0.03 0.066 0.15 --seeds 20
"""
import argparse
import statistics

from latticemorph.decoder import DecoderConfig
from latticemorph.evaluation import read_corpus_file, run_experiment
from latticemorph.lexicon import data_path, default_lexicon
from latticemorph.phonemes import default_alphabet
from latticemorph.simulator import NoiseConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--corpus", default=str(data_path("corpus.tsv")))
    ap.add_argument("--insert-rate", type=float, default=0.386)
    ap.add_argument("--delete-rates", type=float, nargs="+", default=[0.0, 0.03, 0.066, 0.15])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--min-count", type=int, default=2)
    args = ap.parse_args()

    alphabet = default_alphabet()
    lexicon = default_lexicon(alphabet)
    corpus = read_corpus_file(args.corpus)
    decoder = DecoderConfig(min_count=args.min_count)
    print("delete\tdiph_correct\tdiph_insert\tmorph_correct\tmorph_insert")
    for d in args.delete_rates:
        rows = [run_experiment(corpus, lexicon, NoiseConfig(args.insert_rate, d, seed), decoder, alphabet)
                for seed in range(args.seeds)]
        mean = lambda f: 100 * statistics.mean(f(r) for r in rows)  # noqa: E731
        print(f"{d}\t{mean(lambda r: r.diphone.correct_rate):.2f}\t{mean(lambda r: r.diphone.insert_rate):.2f}"
              f"\t{mean(lambda r: r.morpheme.correct_rate):.2f}\t{mean(lambda r: r.morpheme.insert_rate):.2f}")


if __name__ == "__main__":
    main()
