"""Regenerate src/latticemorph/data/corpus.tsv from morpheme compositions.

Each composition is a gold morpheme sequence; ``orth/TAG[h e a d e r]`` pins
one allomorph where several are licensed.  The surface (spoken) form is
obtained by choosing, for every morpheme, the first dictionary allomorph that
satisfies both connectivity matrices with its neighbours, then syllabifying
the concatenated headers.

    python scripts/build_corpus.py [--check]
"""
import argparse
import itertools
import sys
from pathlib import Path

from latticemorph.lattice import from_string
from latticemorph.lexicon import default_lexicon
from latticemorph.parser import analyze, can_join
from latticemorph.phonemes import render, syllabify
from latticemorph.simulator import eojeol_to_diphones

OUT = Path(__file__).resolve().parents[1] / "src" / "latticemorph" / "data" / "corpus.tsv"

ALIAS = {
    "N": "noun", "NV": "noun-verbal", "NB": "noun-bound", "NP": "pronoun", "NR": "numeral",
    "ADV": "adverb", "DET": "determiner", "V": "verb-regular", "VH": "verb-ha",
    "VT": "verb-irregular-t", "VS": "verb-irregular-s", "A": "adjective",
    "XSV": "suffix-verbalizing", "PL": "suffix-plural", "COP": "copula",
    "HON": "ending-prefinal-honorific", "PAST": "ending-prefinal-past", "FUT": "ending-prefinal-future",
    "ADN": "ending-adnominal", "EF": "ending-final", "EC": "ending-connective", "NOM": "ending-nominal",
    "SUBJ": "postposition-subject", "OBJ": "postposition-object", "TOP": "postposition-topic",
    "LOC": "postposition-locative", "DIR": "postposition-directional", "GEN": "postposition-genitive",
    "COM": "postposition-comitative", "AUX": "postposition-auxiliary",
}

COMPOSITIONS = """
pha-il/N+tul/PL+ul/OBJ
pha-il/N+ul/OBJ
pha-il/N+i/SUBJ
pha-il/N+un/TOP
pha-il/N+lo/DIR
pha-il/N+ey/LOC
pha-il/N+kwa/COM
pha-il/N+to/AUX
pha-il/N+man/AUX
pha-il/N+tul/PL+i/SUBJ
ti-lek-tho-li/N+ka/SUBJ
ti-lek-tho-li/N+lul/OBJ
ti-lek-tho-li/N+ey-se/LOC
ti-lek-tho-li/N+lo/DIR
ti-lek-tho-li/N+uy/GEN
phu-lo-ku-laym/N+ul/OBJ
phu-lo-ku-laym/N+i/SUBJ
phu-lo-ku-laym/N+tul/PL+un/TOP
mwun-se/N+lul/OBJ
mwun-se/N+nun/TOP
mwun-se/N+wa/COM
mwun-se/N+tul/PL+ul/OBJ
sa-yong-ca/N+ka/SUBJ
sa-yong-ca/N+uy/GEN
sa-yong-ca/N+tul/PL+ey/LOC
khem-phyu-the/N+ey-se/LOC
khem-phyu-the/N+nun/TOP
i-lum/N+ul/OBJ
i-lum/N+i/SUBJ
nay-yong/N+ul/OBJ
nay-yong/N+man/AUX
hwa-myen/N+ey/LOC
hwa-myen/N+ul/OBJ
cwu-so/N+lul/OBJ
cwu-so/N+to/AUX
si-kan/N+i/SUBJ
o-lyu/N+ka/SUBJ
o-lyu/N+lul/OBJ
kwen-han/N+ul/OBJ
kwen-han/N+i/SUBJ
kwuk-min/N
kwuk-min/N+i/SUBJ
kwuk-min/N+uy/GEN
myeng-lyeng/N+ul/OBJ
myeng-lyeng/N+un/TOP
kyeng-lo/N+lul/OBJ
kyeng-lo/N+ey/LOC
cak-ep/N+ul/OBJ
cak-ep/N+to/AUX
cak-ep/N+man/AUX
kkuth/N+i/SUBJ
kkuth/N+ul/OBJ
kkuth/N+kwa/COM
kkuth/N+man/AUX
som/N+i-pul/N[n i p u l]
som/N+i-pul/N[n i p u l]+ul/OBJ
sayk/N+yen-phil/N[n ye n ph i l]
sayk/N+yen-phil/N[n ye n ph i l]+lo/DIR
yen-phil/N+lo/DIR
i-pul/N+ul/OBJ
pok-sa/NV
pok-sa/NV+lul/OBJ
pok-sa/NV+ha/XSV+ye-la/EF
pok-sa/NV+ha/XSV+yess/PAST+ta/EF
swu-ceng/NV+ul/OBJ
swu-ceng-ha/VH+yess/PAST+ten/ADN
swu-ceng-ha/VH+ye-la/EF
swu-ceng-ha/VH+ko/EC
sak-cey/NV+ha/XSV+ye-la/EF
sak-cey/NV+lul/OBJ
cen-song/NV+ha/XSV+ko/EC
cen-song/NV+i/SUBJ
sil-hayng/NV+ha/XSV+n/ADN
sil-hayng/NV+ul/OBJ
chwul-lyek/NV+ul/OBJ
chwul-lyek/NV+to/AUX
chwul-lyek/NV+man/AUX
ceng-li/NV+ha/XSV+yess/PAST+ta/EF
ceng-li/NV+lul/OBJ
pyen-kyeng/NV+ha/XSV+l/ADN+swu/NB
pyen-kyeng/NV+ul/OBJ
na/NP+nun/TOP
nay/NP+ka/SUBJ
ne/NP+tul/PL+un/TOP
ha-na/NR+man/AUX
twul/NR+i/SUBJ
ci-wu/V+l/ADN+swu/NB
ci-wu/V+ess/PAST+ta/EF
ci-wu/V+ko/EC
ci-wu/V+sey-yo/EF
man-tul/V+ess/PAST+ta/EF
man-tul/V+ko/EC
po/V+ass/PAST+ta/EF
po/V+sey-yo/EF
ka/V+ko/EC
o/V+n/ADN+kes/NB+i/SUBJ
cwu/V+ess/PAST+ta/EF
ssu/V+l/ADN+cwul/NB
toy/V+ess/PAST+ta/EF
yel/V+ko/EC
yel/V+ess/PAST+ta/EF
al/V+ko/EC
tat/V+ko/EC
tat/V+ass/PAST+ta/EF
tat/V+nun/ADN
pat/V+ass/PAST+ta/EF
pat/V+ko/EC
ilk/V+ta/EF
ilk/V+ess/PAST+ta/EF
ilk/V+nun/ADN
ilk/V+ul/ADN+swu/NB
iss/V+ta/EF
iss/V+ess/PAST+ta/EF
iss/V+nun/ADN
eps/V+ta/EF
eps/V+ess/PAST+ta/EF
eps/V+nun/ADN
tut/VT+ta/EF
tut/VT+ess/PAST+ta/EF
tut/VT+e/EC
ket/VT+ko/EC
ket/VT+e-se/EC
cis/VS+ko/EC
cis/VS+ess/PAST+ta/EF
cis/VS+un/ADN
khu/A+ta/EF
kil/A+ko/EC
cak/A+ta/EF
cak/A+un/ADN
ha/VH+si/HON+ko/EC
ha/VH+keyss/FUT+ta/EF
po/V+si/HON+ess/PAST+ta/EF
ilk/V+keyss/FUT+ta/EF
ilk/V+ki/NOM+lul/OBJ
pha-il/N+i/COP+ta/EF
e-cey/ADV
tto/ADV
ku/DET+pha-il/N
"""


def parse_composition(line, lex):
    morphs = []
    for piece in line.split("+"):
        header = None
        if piece.endswith("]"):
            piece, header = piece[:-1].split("[")
            header = tuple(header.split())
        orth, tag = piece.rsplit("/", 1)
        tag = ALIAS.get(tag, tag)
        options = [e for e in lex.entries if e.orth == orth and e.tag == tag
                   and (header is None or e.header == header)]
        if not options:
            raise SystemExit(f"no entry for {orth}/{tag} in {line!r}")
        morphs.append(options)
    return morphs


def realize(morphs, lex):
    for combo in itertools.product(*morphs):
        if all(can_join(lex, a, b) for a, b in zip(combo, combo[1:])):
            return combo
    return None


def build(lex):
    lines, problems = [], []
    for comp in (c.strip() for c in COMPOSITIONS.splitlines()):
        if not comp:
            continue
        combo = realize(parse_composition(comp, lex), lex)
        if combo is None:
            problems.append(f"{comp}: no phonologically licensed allomorph sequence")
            continue
        symbols = [s for e in combo for s in e.header]
        surface = render(syllabify(symbols))
        dips = eojeol_to_diphones(surface)
        if any(a == b for a, b in zip(dips, dips[1:])):
            problems.append(f"{comp}: surface {surface} repeats a diphone back to back")
            continue
        rendered = "+".join(e.orth for e in combo)
        tags = ",".join(e.tag for e in combo)
        keys = {a.key for a in analyze(from_string(symbols), lex)}
        if tuple((e.orth, e.tag) for e in combo) not in keys:
            problems.append(f"{comp}: gold not among analyses of {surface}")
            continue
        lines.append(f"{surface}\t{rendered}\t{tags}")
    return lines, problems


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="only report, do not write")
    args = ap.parse_args()
    lex = default_lexicon()
    lines, problems = build(lex)
    for p in problems:
        print("skip:", p, file=sys.stderr)
    print(f"{len(lines)} Eojeols", file=sys.stderr)
    if not args.check:
        OUT.write_text(
            "# Surface Yale Eojeol<TAB>gold analysis<TAB>gold tags (generated by scripts/build_corpus.py)\n"
            + "\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
