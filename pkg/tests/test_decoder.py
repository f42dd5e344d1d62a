"""Test N-best search, model-free strategies and sentence ranking"""
import random
from collections import Counter

import pytest
from pydantic import ValidationError

from decoder.ranking import rank_sentences
from decoder.search import OraclePathBoundError, brute_force_nbest, nbest
from decoder.strategies import default_path, random_path
from grammar.realizer import realize
from lattice import Arc, InvalidLatticeError, Lattice, count_paths, enumerate_paths, epsilon, or_, seq, wrd
from lm.model import corrected_score, train
from lm.tokenize import tokenize
from models.scoring import BeamConfig, ScoredSentence

ENUMERATION_BOUND = 10_000

WORDS = ("the", "a", "dog", "dogs", "cat", "saw", "sees", "fell", "deficit", "big")


def _words(results):
    return [s.words for s in results]


def test_nbest_matches_brute_force(lattice_factory, model_factory):
    """Test the beam search returns exactly the brute-force N-best over random lattices"""
    rng = random.Random(11)
    models = [model_factory(2, seed) for seed in range(5)]
    checked = 0
    while checked < 200:
        lattice = lattice_factory(rng, rng.randint(1, 6), eps_rate=0.2)
        if count_paths(lattice) > ENUMERATION_BOUND:
            continue
        model = models[checked % len(models)]
        n = rng.randint(1, 6)
        config = BeamConfig(n=n, beam=n + rng.randint(0, 3))
        assert nbest(lattice, model, config) == brute_force_nbest(lattice, model, n)
        checked += 1


def test_nbest_matches_brute_force_trigram(lattice_factory, model_factory):
    """Test exactness with a trigram model"""
    rng = random.Random(12)
    model = model_factory(3)
    checked = 0
    while checked < 50:
        lattice = lattice_factory(rng, rng.randint(1, 5))
        if count_paths(lattice) > ENUMERATION_BOUND:
            continue
        assert nbest(lattice, model, BeamConfig(n=4, beam=4)) == brute_force_nbest(lattice, model, 4)
        checked += 1


def test_nbest_zero(eight_path_lattice, model_factory):
    """Test N = 0 returns no sentences"""
    model = model_factory(2)
    assert nbest(eight_path_lattice, model, BeamConfig(n=0)) == []
    assert brute_force_nbest(eight_path_lattice, model, 0) == []


def test_nbest_fewer_paths_than_n(model_factory):
    """Test a lattice with fewer sentences than N returns them all"""
    lattice = or_([wrd("the"), wrd("a"), wrd("the")])
    results = nbest(lattice, model_factory(2), BeamConfig(n=5, beam=5))
    assert sorted(_words(results)) == [("a",), ("the",)]


def test_beam_must_cover_n():
    """Test a per-context beam smaller than N is refused"""
    with pytest.raises(ValidationError):
        BeamConfig(n=5, beam=3)


def test_nbest_rejects_invalid_lattice(model_factory):
    """Test a cyclic lattice is refused"""
    lattice = Lattice(3, 0, 2, (Arc(0, 1, "a"), Arc(1, 0, "b"), Arc(1, 2, "c")))
    with pytest.raises(InvalidLatticeError):
        nbest(lattice, model_factory(2))


def test_oracle_path_bound(eight_path_lattice, model_factory):
    """Test brute force refuses lattices above its path bound"""
    with pytest.raises(OraclePathBoundError) as e:
        brute_force_nbest(eight_path_lattice, model_factory(2), 1, bound=4)
    assert e.value.paths == 8
    assert "8 paths" in str(e.value)


def test_epsilon_invariance(lattice_factory, model_factory):
    """Test splicing epsilon arcs into a lattice leaves the N-best unchanged"""
    rng = random.Random(21)
    model = model_factory(2)
    config = BeamConfig(n=3, beam=5)
    for _ in range(100):
        lattice = lattice_factory(rng, rng.randint(1, 5))
        spliced = seq([epsilon(), lattice, or_([epsilon(), epsilon()])])
        assert nbest(spliced, model, config) == nbest(lattice, model, config)


def _spliced_pair(rng: random.Random, depth: int) -> tuple[Lattice, Lattice]:
    """A random combinator tree and the same tree with epsilon spliced in at random inner positions"""
    if depth <= 0 or rng.random() < 0.3:
        leaf = wrd(rng.choice(WORDS))
        if rng.random() < 0.3:
            return leaf, seq([epsilon(), leaf] if rng.random() < 0.5 else [leaf, epsilon()])
        return leaf, leaf
    pairs = [_spliced_pair(rng, depth - 1) for _ in range(rng.randint(1, 3))]
    plain = [p for p, _ in pairs]
    spliced = [s for _, s in pairs]
    if rng.random() < 0.5:
        for _ in range(rng.randint(0, 2)):
            filler = epsilon() if rng.random() < 0.5 else or_([epsilon(), epsilon()])
            spliced.insert(rng.randint(0, len(spliced)), filler)
        return seq(plain), seq(spliced)
    return or_(plain), or_(spliced)


def test_epsilon_invariance_inside_lattice(model_factory):
    """Test epsilon spliced anywhere in the combinator tree leaves the N-best and scores unchanged"""
    rng = random.Random(22)
    model = model_factory(2)
    config = BeamConfig(n=3, beam=5)
    for _ in range(100):
        plain, spliced = _spliced_pair(rng, rng.randint(1, 5))
        assert nbest(spliced, model, config) == nbest(plain, model, config)


def test_constant_shift_keeps_nbest_order(model_factory):
    """Test adding a constant to every conditional log-probability keeps the order of equal-length sentences"""
    base = model_factory(2)
    shifted = model_factory(2)
    object.__setattr__(shifted, "cond_logprob", lambda token, context: base.cond_logprob(token, context) - 0.75)
    rng = random.Random(23)
    config = BeamConfig(n=4, beam=4)
    for _ in range(50):
        slots = [rng.sample(WORDS, k=rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
        lattice = seq([or_([wrd(w) for w in slot]) for slot in slots])
        expected = nbest(lattice, base, config)
        results = nbest(lattice, shifted, config)
        assert _words(results) == _words(expected)
        for got, want in zip(results, expected):
            assert got.logprob == pytest.approx(want.logprob - 0.75 * (len(want.words) + 1))


def test_eight_path_lattice(eight_path_lattice):
    """Test the determiner lattice under a corpus of 'the deficit fell'"""
    model = train([["the", "deficit", "fell"]] * 5)
    results = nbest(eight_path_lattice, model, BeamConfig(n=8, beam=8))
    assert len(results) == 8
    assert results[0].words == ("the", "deficit", "fell")
    assert results == brute_force_nbest(eight_path_lattice, model, 8)


def test_global_beam_stays_within_lattice(lattice_factory, model_factory):
    """Test an approximate search still returns sorted sentences of the lattice"""
    rng = random.Random(31)
    model = model_factory(2)
    for _ in range(30):
        lattice = lattice_factory(rng, 4)
        results = nbest(lattice, model, BeamConfig(n=3, beam=3, global_beam=2))
        assert 1 <= len(results) <= 3
        scores = [s.corrected for s in results]
        assert scores == sorted(scores, reverse=True)
        if count_paths(lattice) <= ENUMERATION_BOUND:
            assert set(_words(results)) <= set(enumerate_paths(lattice))


def test_pronoun_case(see_node, toy_grammar, toy_lexicon, irregular):
    """Test the model picks nominative subjects and accusative objects"""
    corpus = "He saw me. He saw me. He saw me. I saw him. I saw him. She saw me. He saw her."
    model = train(tokenize(corpus), 2)
    lattice = seq([realize(see_node, toy_grammar, toy_lexicon, exceptions=irregular), wrd(".")])
    results = nbest(lattice, model, BeamConfig(n=3, beam=5))
    assert results[0].words == ("he", "saw", "me", ".")


def test_plural_spelling():
    """Test an over-generated plural loses to the attested one"""
    model = train(tokenize("She ate potatoes. He ate potatoes. They like potatoes."), 2)
    lattice = seq([wrd("she"), wrd("ate"), or_([wrd("potatos"), wrd("potatoes")]), wrd(".")])
    assert nbest(lattice, model)[0].words == ("she", "ate", "potatoes", ".")


def test_optional_determiners():
    """Test the model chooses one determiner over none or two"""
    corpus = " ".join(["She drove the car."] * 4 + ["She drove his car."])
    model = train(tokenize(corpus), 2)
    lattice = seq(
        [
            wrd("she"),
            wrd("drove"),
            or_([wrd("the"), epsilon()]),
            or_([wrd("his"), epsilon()]),
            wrd("car"),
            wrd("."),
        ]
    )
    results = nbest(lattice, model, BeamConfig(n=4, beam=4))
    assert results[0].words == ("she", "drove", "the", "car", ".")
    assert results == brute_force_nbest(lattice, model, 4)


def test_word_choice_through_name_class():
    """Test a proper adjective is scored through the name class"""
    corpus = "He joined the American company. She left the American company. The rice was cold. The shrine was old."
    model = train(tokenize(corpus), 2)
    lattice = seq(
        [wrd("the"), or_([wrd("American"), wrd("rice")]), or_([wrd("company"), wrd("shrine")]), wrd(".")]
    )
    assert nbest(lattice, model)[0].words == ("the", "American", "company", ".")


def test_accuse_lattice_end_to_end(accuse_node, toy_grammar, toy_lexicon, irregular, data_dir):
    """Test the realized accuse lattice ranks the same way as brute force"""
    model = train(tokenize((data_dir / "toy_corpus.txt").read_text(encoding="utf-8")), 2)
    lattice = seq([realize(accuse_node, toy_grammar, toy_lexicon, exceptions=irregular), wrd(".")])
    results = nbest(lattice, model, BeamConfig(n=5, beam=10))
    assert len(results) == 5
    assert results == brute_force_nbest(lattice, model, 5)


def test_random_is_reproducible(eight_path_lattice):
    """Test a seed always draws the same sentence, and every draw is a path"""
    paths = set(enumerate_paths(eight_path_lattice))
    for seed in range(50):
        words = random_path(eight_path_lattice, seed)
        assert words == random_path(eight_path_lattice, seed)
        assert words in paths


def test_random_single_path():
    """Test a single-path lattice draws that path for every seed"""
    lattice = seq([wrd("he"), epsilon(), wrd("slept")])
    assert {random_path(lattice, seed) for seed in range(20)} == {("he", "slept")}


def test_random_is_uniform_over_two_words():
    """Test two single-word alternatives are drawn about equally often"""
    lattice = or_([wrd("a"), wrd("b")])
    counts = Counter(random_path(lattice, seed) for seed in range(10_000))
    assert 4850 <= counts[("a",)] <= 5150


def test_random_path_uniform_versus_per_arc():
    """Test path-uniform and per-arc draws weight a short branch differently"""
    lattice = or_([wrd("a"), seq([wrd("x"), or_([wrd("b"), wrd("c")])])])
    uniform = Counter(random_path(lattice, seed) for seed in range(3000))
    per_arc = Counter(random_path(lattice, seed, per_arc=True) for seed in range(3000))
    assert 900 <= uniform[("a",)] <= 1100
    assert 1400 <= per_arc[("a",)] <= 1600


def test_default_is_first_enumerated_path(lattice_factory):
    """Test DEFAULT follows the first arc everywhere, the first path enumerated"""
    rng = random.Random(41)
    for _ in range(100):
        lattice = lattice_factory(rng, 5)
        assert default_path(lattice) == next(enumerate_paths(lattice))


def test_default_of_eight_path_lattice(eight_path_lattice):
    """Test the default sentence of the determiner lattice"""
    assert default_path(eight_path_lattice) == ("the", "deficit", "fell")


def test_rank_sentences(model_factory, sentence_factory):
    """Test ranking sorts by corrected score and keeps input order on ties"""
    model = model_factory(2)
    rng = random.Random(51)
    sentences = [sentence_factory(rng) for _ in range(40)]
    sentences += sentences[:5]
    ranked = rank_sentences(model, sentences)
    expected = sorted((corrected_score(model, s) for s in sentences), key=lambda s: -s.corrected)
    assert ranked == expected
    scores = [s.corrected for s in ranked]
    assert scores == sorted(scores, reverse=True)


def test_rank_empty_list(model_factory):
    """Test ranking nothing returns nothing"""
    assert rank_sentences(model_factory(2), []) == []


def test_sentence_text():
    """Test display text capitalizes, attaches punctuation and ends with a period"""
    words = ("she", "charged", "that", "he", "stole", "the", "car")
    assert ScoredSentence(words=words, logprob=-9.0, corrected=-5.5).text == "She charged that he stole the car."
    with_stop = ScoredSentence(words=words + (".",), logprob=-9.0, corrected=-5.0)
    assert with_stop.text == "She charged that he stole the car."
    assert with_stop.sentence == "she charged that he stole the car ."
