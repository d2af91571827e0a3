import io
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticemorph.decoder import (
    DecoderConfig,
    DiphoneObservation,
    DiphoneRun,
    decode,
    group_runs,
    merge_to_lattice,
    prune_insertions,
    read_stream,
    write_stream,
)
from latticemorph.errors import EmptyInput, InconsistentOverlap, ParseError, UnsortedStream
from latticemorph.lattice import enumerate_paths
from latticemorph.phonemes import make_diphone, parse_yale
from latticemorph.simulator import simulate_gold

KA = make_diphone("C1V", "k", "a")
KHA = make_diphone("C1V", "kh", "a")


def obs(frames, d):
    return [DiphoneObservation(f, d) for f in frames]


def spellings(lat):
    return {p.phonemes for p in enumerate_paths(lat, limit=None).paths}


def test_group_single_run():
    assert group_runs(obs([1, 2, 3], KA)) == [DiphoneRun(KA, 1, 3, 3)]


def test_group_gap_split():
    runs = group_runs(obs([1, 9], KA), DecoderConfig(gap_frames=3))
    assert runs == [DiphoneRun(KA, 1, 1, 1), DiphoneRun(KA, 9, 9, 1)]


def test_group_gap_bridged():
    assert group_runs(obs([1, 4], KA), DecoderConfig(gap_frames=2)) == [DiphoneRun(KA, 1, 4, 2)]


def test_group_simulated_ciwu(alphabet):
    runs = group_runs(simulate_gold("ci-wu", alphabet))
    assert [r.diphone.label for r in runs] == ["ci", "wu"]
    assert [(r.start, r.end, r.count) for r in runs] == [(0, 4, 5), (5, 9, 5)]


def test_group_orders_ties_by_type():
    v = make_diphone("V", "a")
    runs = group_runs([DiphoneObservation(0, v), DiphoneObservation(0, KA)])
    assert [r.diphone for r in runs] == [KA, v]


def test_group_unsorted():
    with pytest.raises(UnsortedStream):
        group_runs([DiphoneObservation(3, KA), DiphoneObservation(2, KA)])


def test_prune_drops_weak_competitor():
    runs = [DiphoneRun(KA, 0, 4, 5), DiphoneRun(KHA, 2, 2, 1)]
    assert prune_insertions(runs) == [runs[0]]


def test_prune_sole_survivor():
    run = DiphoneRun(KA, 0, 0, 1)
    assert prune_insertions([run], DecoderConfig(min_count=3)) == [run]


def test_prune_tie_keeps_both():
    runs = [DiphoneRun(KA, 0, 3, 4), DiphoneRun(KHA, 0, 3, 4)]
    assert prune_insertions(runs) == runs
    assert len(prune_insertions(runs, DecoderConfig(keep_alternatives=False))) == 1


run_strategy = st.builds(
    lambda d, start, length, count: DiphoneRun(d, start, start + length, count),
    st.sampled_from([KA, KHA, make_diphone("V", "a"), make_diphone("VC2", "a", "k")]),
    st.integers(0, 30), st.integers(0, 5), st.integers(1, 6))


@given(st.lists(run_strategy, max_size=10), st.integers(1, 6))
@settings(max_examples=150, deadline=None)
def test_prune_monotone_in_min_count(runs, m):
    lo = set(prune_insertions(runs, DecoderConfig(min_count=m)))
    hi = set(prune_insertions(runs, DecoderConfig(min_count=m + 1)))
    # raising the threshold only removes runs, apart from floor survivors
    floor = {r for r in hi if r.count < m + 1}
    assert hi - floor <= lo
    assert hi <= set(runs)
    if runs:
        assert hi


def test_merge_ciwulsswu():
    runs = [
        DiphoneRun(make_diphone("C1V", "c", "i"), 0, 4, 5),
        DiphoneRun(make_diphone("V", "wu"), 5, 9, 5),
        DiphoneRun(make_diphone("VC2", "wu", "l"), 10, 14, 5),
        DiphoneRun(make_diphone("C2C1", "l", "ss"), 15, 19, 5),
        DiphoneRun(make_diphone("C1V", "ss", "wu"), 20, 24, 5),
    ]
    lat = merge_to_lattice(runs)
    assert lat.num_nodes == 7 and lat.path_count() == 1
    assert spellings(lat) == {("c", "i", "wu", "l", "ss", "wu")}


def test_merge_single_vowel():
    lat = merge_to_lattice([DiphoneRun(make_diphone("V", "a"), 0, 4, 5)])
    assert lat.num_nodes == 2 and spellings(lat) == {("a",)}


def test_merge_parallel_sswu_swu():
    prefix = [
        DiphoneRun(make_diphone("V", "wu"), 0, 4, 5),
        DiphoneRun(make_diphone("VC2", "wu", "l"), 5, 9, 5),
    ]
    runs = prefix + [
        DiphoneRun(make_diphone("C2C1", "l", "ss"), 10, 14, 5),
        DiphoneRun(make_diphone("C2C1", "l", "s"), 10, 14, 5),
        DiphoneRun(make_diphone("C1V", "ss", "wu"), 15, 19, 5),
        DiphoneRun(make_diphone("C1V", "s", "wu"), 15, 19, 5),
    ]
    lat = merge_to_lattice(runs)
    # ss|s are parallel edges between one node pair, wu is shared
    assert spellings(lat) >= {("wu", "l", "ss", "wu"), ("wu", "l", "s", "wu")}
    pairs = {(i, j) for i, j, s in lat.edges if s in ("s", "ss")}
    assert len(pairs) == 1
    assert len([e for e in lat.edges if e[2] == "wu"]) == 2


def test_merge_inconsistent_overlap_warns():
    runs = [DiphoneRun(make_diphone("V", "a"), 0, 4, 5), DiphoneRun(KA, 0, 4, 5)]
    with pytest.warns(InconsistentOverlap):
        lat = merge_to_lattice(runs)
    assert spellings(lat) == {("a",), ("k", "a")}


def test_merge_empty():
    with pytest.raises(EmptyInput):
        merge_to_lattice([])


def test_decode_empty():
    with pytest.raises(EmptyInput):
        decode([])


def test_decode_gold_identity_over_corpus(alphabet, corpus):
    for line in corpus:
        lat = decode(simulate_gold(line.surface, alphabet), alphabet=alphabet)
        [phonemes] = parse_yale(line.surface, alphabet)
        assert spellings(lat) == {tuple(p.symbol for p in phonemes)}, line.surface


def test_decode_prunes_one_frame_insertion(alphabet):
    gold = simulate_gold("ci-wu", alphabet)
    noisy = sorted(gold + [DiphoneObservation(2, KHA)], key=lambda o: o.frame)
    assert decode(noisy) == decode(gold)


def test_no_invented_phonemes(alphabet):
    gold = simulate_gold("ci-wul-sswu", alphabet)
    extra = [DiphoneObservation(f, make_diphone("C1V", "s", "wu")) for f in range(20, 25)]
    stream = sorted(gold + extra, key=lambda o: o.frame)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        lat = decode(stream)
    runs = prune_insertions(group_runs(stream))
    allowed = {s for r in runs for s in r.diphone.symbols}
    assert {s for _, _, s in lat.edges} <= allowed


def test_stream_round_trip(alphabet):
    stream = simulate_gold("pok-ssa", alphabet)
    buf = io.StringIO()
    write_stream(stream, buf)
    assert read_stream(io.StringIO(buf.getvalue()), alphabet) == stream


@pytest.mark.parametrize("text", ["0 CV k a\n", "x C1V k a\n", "0 V a i\n", "0 C1V q a\n"])
def test_stream_errors(alphabet, text):
    with pytest.raises(ParseError) as exc:
        read_stream(io.StringIO("# header\n" + text), alphabet)
    assert exc.value.line == 2


def test_config_validation():
    with pytest.raises(ValueError):
        DecoderConfig(min_count=0)
    with pytest.raises(ValueError):
        DecoderConfig(gap_frames=-1)
