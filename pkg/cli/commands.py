"""Subcommand implementations; each returns the text to print"""
import json
import logging
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from config.config import ExtractionConfig, ModelConfig, strategy_header, validate_config
from decoder.ranking import rank_sentences
from decoder.search import brute_force_nbest, nbest
from decoder.strategies import default_path, random_path
from grammar.loader import load_grammar, load_lexicon
from grammar.realizer import realize
from lattice.analysis import lattice_stats, validate
from lattice.core import Lattice, seq, wrd
from lattice.io import read_lattice, write_lattice
from lm.io import read_model, write_model
from lm.model import NGramModel, corrected_score, train
from lm.tokenize import classify_sentence, corpus_lexicon, split_words
from models.morphology import ExceptionTable
from models.run import RunConfig
from models.scoring import BeamConfig, ScoredSentence
from morphology.inflect import load_exceptions
from reports.manager import ReportManager
from reports.renderer import ReportRenderer
from semantics.spl import parse_spl, render_spl

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Raised when flags are missing or contradict each other"""


report_manager = ReportManager()
report_renderer = ReportRenderer()


def _render(report_id: str, **variables: Any) -> str:
    return report_renderer.render(report_manager.require(report_id), variables)


def _records(items: list[dict[str, Any]]) -> str:
    return "".join(json.dumps(item, sort_keys=True) + "\n" for item in items)


def _require(path: Optional[Path], flag: str) -> Path:
    if path is None:
        raise ValueError(f"{flag} is required")
    return path


def _read(path: Optional[Path], flag: str) -> str:
    return _require(path, flag).read_text(encoding="utf-8")


def _load_model(run: RunConfig) -> NGramModel:
    return read_model(_read(run.model, "--model"))


def _sentence_words(text: str) -> list[tuple[str, ...]]:
    """One sentence per non-empty line, tokenized but not classified"""
    return [
        tuple(word for sentence in split_words(line) for word in sentence)
        for line in text.splitlines()
        if line.strip()
    ]


def cmd_train(run: RunConfig, model_config: ModelConfig) -> str:
    """Train a model from a raw text corpus and write it to --out"""
    model_config.order = run.order
    validate_config(model=model_config)
    raw = split_words(_read(run.corpus, "--corpus"))
    lexicon = corpus_lexicon(raw) if model_config.detect_initial_names else None
    sentences = [classify_sentence(words, lexicon) for words in raw]
    model = train(sentences, run.order, model_config)
    _require(run.out, "--out").write_text(write_model(model), encoding="utf-8")

    figures = {
        "order": model.order,
        "sentences": len(sentences),
        "tokens": model.corpus_tokens,
        "types": len(model.tables[1].counts),
    }
    if run.output_format == "records":
        return _records([figures])
    return _render("model_trained", **figures)


def _load_exceptions(run: RunConfig, extraction: ExtractionConfig) -> Optional[ExceptionTable]:
    if run.exceptions is None:
        return None
    return load_exceptions(_read(run.exceptions, "--exceptions"), extraction.exception_table_limit)


def cmd_generate(run: RunConfig, extraction: ExtractionConfig, goal: str = "s", terminal: str = ".") -> str:
    """
    Realize an SPL input as a lattice file and report its size

    A sentence (goal `s`) gets `terminal` appended as its last word, the way
    every training sentence ends in punctuation; an empty terminal adds nothing.
    """
    grammar_path = _require(run.grammar, "--grammar")
    lexicon_path = _require(run.lexicon, "--lexicon")
    grammar = load_grammar(grammar_path.read_text(encoding="utf-8"), source=str(grammar_path))
    lexicon = load_lexicon(
        lexicon_path.read_text(encoding="utf-8"), source=str(lexicon_path), categories=grammar.categories
    )
    node = parse_spl(_read(run.input, "--input"))
    lattice = realize(node, grammar, lexicon, goal=goal, exceptions=_load_exceptions(run, extraction))
    if goal == "s" and terminal:
        lattice = seq([lattice, wrd(terminal)])
    _require(run.out, "--out").write_text(write_lattice(lattice), encoding="utf-8")

    stats = lattice_stats(lattice)
    if run.output_format == "records":
        return _records([{"input": render_spl(node), **stats.model_dump()}])
    return _render("input", spl=render_spl(node)) + _render(
        "lattice_created",
        nodes=stats.nodes,
        arcs=stats.arcs,
        paths=stats.paths,
        unigrams=stats.distinct_unigrams,
        bigrams=stats.distinct_bigrams,
    )


def cmd_extract(run: RunConfig, extraction: ExtractionConfig) -> str:
    """Pull sentences out of a lattice file with one strategy"""
    extraction.strategy = run.strategy
    validate_config(extraction=extraction)
    lattice = read_lattice(_read(run.lattice, "--lattice"))

    seed = None
    order = 0
    if run.strategy == "statistical":
        try:
            config = BeamConfig(n=run.n, beam=run.beam, global_beam=run.global_beam)
        except ValidationError as e:
            raise UsageError(f"invalid beam flags: {e}") from e
        model = _load_model(run)
        order = model.order
        scored = nbest(lattice, model, config)
        if run.verify:
            _verify(lattice, model, scored, run.n, extraction.oracle_path_bound)
        results: list[dict[str, Any]] = [
            {"text": s.text, "words": list(s.words), "logprob": s.logprob, "corrected": s.corrected}
            for s in scored
        ]
    elif run.strategy == "random":
        seed = run.seed
        words = random_path(lattice, seed, per_arc=run.per_arc)
        results = [{"text": _text(words), "words": list(words), "corrected": None}]
    else:
        words = default_path(lattice)
        results = [{"text": _text(words), "words": list(words), "corrected": None}]

    if run.output_format == "records":
        return _records(
            [dict(r, rank=k, strategy=run.strategy, seed=seed) for k, r in enumerate(results, start=1)]
        )
    return _render(
        "extraction",
        header=strategy_header(run.strategy, order),
        results=results,
        numbered=run.strategy == "statistical",
        seed=seed if run.seed_derived else None,
    )


def _verify(lattice: Lattice, model: NGramModel, scored: list[ScoredSentence], n: int, bound: int):
    """Compare the search result with exhaustive scoring of every path"""
    expected = brute_force_nbest(lattice, model, n, bound=bound)
    if [s.words for s in scored] != [s.words for s in expected]:
        raise ValueError("beam search and exhaustive scoring disagree; try a larger --beam or no --global-beam")
    logger.info(f"Verified {len(scored)} results against exhaustive scoring")


def _text(words: tuple[str, ...]) -> str:
    return ScoredSentence(words=words, logprob=0.0, corrected=0.0).text


def _scored_records(scored: list[ScoredSentence], numbered: bool) -> str:
    items = []
    for k, s in enumerate(scored, start=1):
        item = {"sentence": s.sentence, "logprob": s.logprob, "corrected": s.corrected}
        if numbered:
            item["rank"] = k
        items.append(item)
    return _records(items)


def cmd_score(run: RunConfig, sentence: Optional[str] = None) -> str:
    """Score one sentence or every line of --sentences, in input order"""
    model = _load_model(run)
    if sentence is not None:
        inputs = _sentence_words(sentence)
    else:
        inputs = _sentence_words(_read(run.sentences, "--sentences"))
    scored = [corrected_score(model, words) for words in inputs]
    if run.output_format == "records":
        return _scored_records(scored, numbered=False)
    return _render("scores", results=scored)


def cmd_rank(run: RunConfig) -> str:
    """Rank the lines of --sentences by corrected score"""
    model = _load_model(run)
    ranked = rank_sentences(model, _sentence_words(_read(run.sentences, "--sentences")))
    if run.output_format == "records":
        return _scored_records(ranked, numbered=True)
    return _render("ranking", results=ranked)


def cmd_stats(run: RunConfig) -> str:
    """Size figures of a lattice file"""
    stats = lattice_stats(read_lattice(_read(run.lattice, "--lattice")))
    if run.output_format == "records":
        return _records([stats.model_dump()])
    return _render(
        "lattice_stats",
        nodes=stats.nodes,
        arcs=stats.arcs,
        paths=stats.paths,
        unigrams=stats.distinct_unigrams,
        bigrams=stats.distinct_bigrams,
    )


def cmd_validate(run: RunConfig) -> tuple[str, bool]:
    """Check a lattice file; returns the report and whether the lattice is valid"""
    report = validate(read_lattice(_read(run.lattice, "--lattice"), check=False))
    if run.output_format == "records":
        return _records([report.model_dump()]), report.ok
    return _render("validation", errors=report.errors, warnings=report.warnings), report.ok
