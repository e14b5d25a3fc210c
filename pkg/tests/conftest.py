"""Fixtures partagées: lexiques livrés, personnages de Pride and Prejudice, corpus extrait."""

from pathlib import Path

import pytest

import config
from corpus_module import load_corpus, load_protagonists, read_standoff
from lexicon_module import DiminutiveLexicon, Gender, GenderLexicon, Lexicons, TitleLexicon, load_lexicons
from matcher_module import MatchConfig, ProtagonistList

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def lexicons():
    return load_lexicons()


@pytest.fixture(scope="session")
def titles(lexicons):
    return lexicons.titles


@pytest.fixture(scope="session")
def pp_protagonists(titles):
    return load_protagonists(config.get_protagonists_path("pride_and_prejudice"), titles)


@pytest.fixture
def match_cfg(lexicons):
    return MatchConfig(lexicons=lexicons)


@pytest.fixture
def small_lexicons():
    """Lexiques minimaux, indépendants des ressources livrées."""
    return Lexicons(
        DiminutiveLexicon({"lizzy": "elizabeth", "liz": "elizabeth"}),
        GenderLexicon({"elizabeth": Gender.FEMALE, "jane": Gender.FEMALE,
                       "charles": Gender.MALE}),
        TitleLexicon.default(),
    )


@pytest.fixture
def bennets():
    return ProtagonistList.from_tags(["Mr. Bennet", "Mrs. Bennet"])


@pytest.fixture(scope="session")
def fixture_corpus_dir():
    return FIXTURES / "corpus"


@pytest.fixture(scope="session")
def fixture_docs(fixture_corpus_dir):
    return load_corpus(fixture_corpus_dir)


@pytest.fixture(scope="session")
def fixture_gold_path():
    return FIXTURES / "gold.json"


@pytest.fixture(scope="session")
def fixture_gold(fixture_gold_path):
    return read_standoff(fixture_gold_path)
