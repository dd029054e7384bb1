import pathlib

import pytest

from headcheck.corpus import load_lexicons
from headcheck.encoder import ItemInventory, LabelSequence, SequenceDatabase

DATA_DIR = pathlib.Path(__file__).parent / "data"
LEXICON_DIR = DATA_DIR / "lexicons"
INVENTORY_PATH = DATA_DIR / "inventory.json"
CORPUS_PATH = DATA_DIR / "corpus_small.jsonl"


def make_table2_db() -> SequenceDatabase:
    """The five-sequence worked example used as the mining anchor."""
    rows = [
        (("1", "4", "5", "6", "7"), "c1"),
        (("1", "4", "6", "7", "9"), "c1"),
        (("1", "6", "7"), "c1"),
        (("2", "6", "7"), "c2"),
        (("1", "3", "4", "7"), "c2"),
    ]
    return SequenceDatabase(
        entries=tuple(
            (LabelSequence(items=items, source_id=f"s{i + 1}"), cls)
            for i, (items, cls) in enumerate(rows)
        )
    )


@pytest.fixture(scope="session")
def lexicons():
    return load_lexicons(LEXICON_DIR)


@pytest.fixture(scope="session")
def inventory(lexicons):
    return ItemInventory.from_config(INVENTORY_PATH, lexicons)


@pytest.fixture
def table2_db():
    return make_table2_db()
