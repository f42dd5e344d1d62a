"""Pytest configuration and shared fixtures"""
import random
from pathlib import Path
from typing import Callable, Optional

import pytest

from grammar.loader import load_grammar, load_lexicon
from lattice.core import Lattice, epsilon, or_, seq, wrd
from lm.model import NGramModel, train
from models.grammar import Grammar, Lexicon
from models.morphology import ExceptionTable
from models.semantics import Concept, RoleFiller, SemanticNode
from morphology.inflect import load_exceptions
from semantics.spl import parse_spl

DATA_DIR = Path(__file__).parent.parent / "data"

VOCABULARY = ("the", "a", "dog", "dogs", "cat", "saw", "sees", "fell", "deficit", "big", "Smith", "3")


def _random_lattice(rng: random.Random, depth: int, eps_rate: float = 0.1) -> Lattice:
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < eps_rate:
            return epsilon()
        return wrd(rng.choice(VOCABULARY))
    parts = [_random_lattice(rng, depth - 1, eps_rate) for _ in range(rng.randint(1, 3))]
    return seq(parts) if rng.random() < 0.5 else or_(parts)


def _random_sentence(rng: random.Random, max_length: int = 6) -> list[str]:
    return [rng.choice(VOCABULARY) for _ in range(rng.randint(0, max_length))]


@pytest.fixture
def data_dir() -> Path:
    """Directory of grammar, lexicon, SPL and corpus fixtures"""
    return DATA_DIR


@pytest.fixture
def toy_grammar() -> Grammar:
    """Three-rule agent-patient grammar"""
    return load_grammar((DATA_DIR / "toy.grammar").read_text(encoding="utf-8"), source="toy.grammar")


@pytest.fixture
def toy_lexicon(toy_grammar) -> Lexicon:
    """Lexicon matching the toy grammar"""
    return load_lexicon(
        (DATA_DIR / "toy.lexicon").read_text(encoding="utf-8"),
        source="toy.lexicon",
        categories=toy_grammar.categories,
    )


@pytest.fixture
def irregular() -> ExceptionTable:
    """Irregular verb and noun forms"""
    return load_exceptions((DATA_DIR / "irregular.tsv").read_text(encoding="utf-8"))


@pytest.fixture
def accuse_node() -> SemanticNode:
    """She accuses him of stealing the car, as an SPL tree"""
    return parse_spl((DATA_DIR / "accuse.spl").read_text(encoding="utf-8"))


@pytest.fixture
def see_node() -> SemanticNode:
    """He sees me, as an SPL tree"""
    return parse_spl((DATA_DIR / "see.spl").read_text(encoding="utf-8"))


@pytest.fixture
def eight_path_lattice() -> Lattice:
    """Determiner choice times singular/plural noun, then 'fell'"""
    determiners = or_([wrd("the"), wrd("a"), wrd("an"), epsilon()])
    nouns = or_([wrd("deficit"), wrd("deficits")])
    return seq([determiners, nouns, wrd("fell")])


@pytest.fixture
def six_path_lattice() -> Lattice:
    """The determiner lattice with a/an ruled out before the plural"""
    singular = seq([or_([wrd("the"), wrd("a"), wrd("an"), epsilon()]), wrd("deficit")])
    plural = seq([or_([wrd("the"), epsilon()]), wrd("deficits")])
    return seq([or_([singular, plural]), wrd("fell")])


@pytest.fixture
def lattice_factory() -> Callable[..., Lattice]:
    """Random combinator tree over a small vocabulary, reproducible from the Random passed in"""
    return _random_lattice


@pytest.fixture
def sentence_factory() -> Callable[..., list[str]]:
    """Random word sequence over the lattice vocabulary"""
    return _random_sentence


@pytest.fixture
def toy_corpus() -> list[list[str]]:
    """Seeded random sentences over the lattice vocabulary, lowercased like classified text"""
    rng = random.Random(7)
    sentences = [[w.lower() for w in _random_sentence(rng, 8)] for _ in range(300)]
    return [s for s in sentences if s]


@pytest.fixture
def model_factory(toy_corpus) -> Callable[[int, Optional[int]], NGramModel]:
    """Train a model of the given order, optionally on a seeded subsample of the toy corpus"""

    def build(order: int = 2, seed: Optional[int] = None) -> NGramModel:
        if seed is None:
            return train(toy_corpus, order)
        rng = random.Random(seed)
        return train(rng.sample(toy_corpus, k=len(toy_corpus) // 2), order)

    return build


@pytest.fixture
def node_factory() -> Callable[[random.Random, int], SemanticNode]:
    """Random SPL tree of at most the given depth"""
    concepts = ["accuse", "thieve", "gun, arm", "have the quality of being", "motorcar"]
    roles = [":agent", ":patient", ":time", ":domain", ":range"]
    atoms = ["SHE", "HE", "YOU", "YESTERDAY"]

    def build(rng: random.Random, depth: int, counter: Optional[list[int]] = None) -> SemanticNode:
        counter = counter if counter is not None else [0]
        counter[0] += 1
        var = f"X{counter[0]}"
        fillers = []
        if depth > 1:
            for keyword in rng.sample(roles, k=rng.randint(0, 3)):
                if rng.random() < 0.4:
                    value = rng.choice(atoms)
                else:
                    value = build(rng, depth - 1, counter)
                fillers.append(RoleFiller(keyword=keyword, value=value))
        return SemanticNode(var=var, concept=Concept(name=rng.choice(concepts)), roles=tuple(fillers))

    return build
