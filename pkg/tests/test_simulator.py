import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticemorph.decoder import DiphoneObservation, decode, group_runs
from latticemorph.errors import UntokenizableRun
from latticemorph.lattice import enumerate_paths
from latticemorph.phonemes import make_diphone
from latticemorph.simulator import (
    NoiseConfig,
    corrupt,
    eojeol_to_diphones,
    gold_segments,
    simulate_gold,
    sorted_inventory,
)


def labels(ds):
    return [(d.dtype.value, d.label) for d in ds]


def test_decompose_ya(alphabet):
    assert labels(eojeol_to_diphones("ya", alphabet)) == [("V", "ya")]


def test_decompose_yak_shares_vowel(alphabet):
    assert labels(eojeol_to_diphones("yak", alphabet)) == [("V", "ya"), ("VC2", "yak")]
    lat = decode(simulate_gold("yak", alphabet))
    assert [p.phonemes for p in enumerate_paths(lat).paths] == [("ya", "k")]


def test_decompose_ciwulsswu(alphabet):
    assert labels(eojeol_to_diphones("ci-wul-sswu", alphabet)) == [
        ("C1V", "ci"), ("V", "wu"), ("VC2", "wul"), ("C2C1", "l.ss"), ("C1V", "sswu")]
    lat = decode(simulate_gold("ci-wul-sswu", alphabet))
    assert [p.phonemes for p in enumerate_paths(lat).paths] == [("c", "i", "wu", "l", "ss", "wu")]


def test_tokenizer_errors_propagate(alphabet):
    with pytest.raises(UntokenizableRun):
        eojeol_to_diphones("qa", alphabet)


def test_simulate_gold_frames(alphabet):
    a = make_diphone("V", "a")
    assert simulate_gold("a", alphabet) == [DiphoneObservation(f, a) for f in range(5)]
    one = simulate_gold("ci-wu", alphabet, frames_per_diphone=1)
    assert [o.frame for o in one] == [0, 1]


def test_gold_segments(alphabet):
    segs = gold_segments(simulate_gold("ci-wu", alphabet))
    assert [(s, e, d.label) for s, e, d in segs] == [(0, 4, "ci"), (5, 9, "wu")]


def test_identity_at_zero_rates(alphabet):
    stream = simulate_gold("pha-il-tu-lul", alphabet)
    assert corrupt(stream, NoiseConfig(0, 0, seed=9), sorted_inventory(alphabet)) == stream


def test_determinism(alphabet):
    stream = simulate_gold("pha-il-tu-lul", alphabet)
    cfg = NoiseConfig(0.4, 0.2, seed=5)
    inv = sorted_inventory(alphabet)
    assert corrupt(stream, cfg, inv) == corrupt(stream, cfg, inv)


def test_draw_order_matches_documented_algorithm(alphabet):
    # four uniforms per gold run: delete, insert, frame, diphone
    stream = simulate_gold("ci-wu", alphabet)
    inv = sorted_inventory(alphabet)
    rng = random.Random(1)
    expected = []
    for start, d in ((0, "ci"), (5, "wu")):
        u_del, u_ins, u_frame, u_dip = (rng.random() for _ in range(4))
        if u_del >= 0.5:
            expected += [(f, d, 0) for f in range(start, start + 5)]
        if u_ins < 0.5:
            expected.append((start + int(u_frame * 5), inv[int(u_dip * len(inv))].label, 1))
    expected = [(f, lab) for f, lab, _ in sorted(expected, key=lambda t: (t[0], t[2]))]
    out = corrupt(stream, NoiseConfig(0.5, 0.5, seed=1), inv)
    assert [(o.frame, o.diphone.label) for o in out] == expected
    assert expected == [(8, "yeyp")]


def test_insertions_are_single_frames(alphabet):
    stream = simulate_gold("pha-il-tu-lul", alphabet)
    out = corrupt(stream, NoiseConfig(1.0, 0.0, seed=3), sorted_inventory(alphabet))
    assert len(out) == len(stream) + len(gold_segments(stream))
    assert [o.frame for o in out] == sorted(o.frame for o in out)


def test_deletion_removes_whole_runs(alphabet):
    stream = simulate_gold("pha-il-tu-lul", alphabet)
    out = corrupt(stream, NoiseConfig(0.0, 1.0, seed=3), sorted_inventory(alphabet))
    assert out == []


@given(st.integers(0, 2**32), st.floats(0, 0.5), st.floats(0, 0.5), st.floats(0, 0.5))
@settings(max_examples=60, deadline=None)
def test_deletions_coupled_across_rates(seed, ins, d1, d2):
    # same seed: runs kept at the higher delete rate are kept at the lower one too
    from latticemorph.phonemes import default_alphabet
    alphabet = default_alphabet()
    stream = simulate_gold("swu-ceng-ha-yet-tten", alphabet)
    inv = sorted_inventory(alphabet)
    lo, hi = sorted((d1, d2))
    gold = {(r.diphone, r.start) for r in group_runs(stream)}

    def kept(rate):
        out = corrupt(stream, NoiseConfig(ins, rate, seed), inv)
        return {(r.diphone, r.start) for r in group_runs([o for o in out if o in stream])} & gold

    assert kept(hi) <= kept(lo)


def test_config_validation():
    with pytest.raises(ValueError):
        NoiseConfig(1.5, 0)
    with pytest.raises(ValueError):
        NoiseConfig(0, 0, frames_per_diphone=0)
    assert NoiseConfig(seed=6).for_line(3).seed == 5
