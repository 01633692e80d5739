from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def morph_dict():
    from aranlp.morphology import load_dictionary

    return load_dictionary(DATA / "morph_dict.tsv")


@pytest.fixture(scope="session")
def inventory():
    from aranlp.wsd import load_inventory

    return load_inventory(DATA / "inventory.tsv")


@pytest.fixture(scope="session")
def gazetteer():
    from aranlp.ner import load_gazetteer

    return load_gazetteer(DATA / "gazetteer.tsv")


@pytest.fixture(scope="session")
def pair_graph():
    from aranlp.synonymy import build_graph

    return build_graph(DATA / "synonym_pairs.tsv")
