from pathlib import Path

import pytest

from latticemorph.evaluation import read_corpus_file
from latticemorph.lexicon import data_path, default_lexicon, load_lexicon_files
from latticemorph.phonemes import default_alphabet

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def alphabet():
    return default_alphabet()


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def corpus():
    return read_corpus_file(data_path("corpus.tsv"))


@pytest.fixture(scope="session")
def ciwul_lexicon(alphabet):
    return load_lexicon_files(fixture("ciwul_dict.tsv"), fixture("ciwul_morph.tsv"),
                              fixture("ciwul_phon.tsv"), fixture("ciwul_tags.tsv"), alphabet)


@pytest.fixture(scope="session")
def ciwul_lattice():
    from latticemorph.lattice import read_lattice
    with open(fixture("ciwul.lat"), encoding="utf-8") as fh:
        return read_lattice(fh)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
