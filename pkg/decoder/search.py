"""N-best extraction of lattice paths under an n-gram model"""
import logging
import time
from dataclasses import dataclass
from typing import Optional

from lattice.analysis import count_paths, enumerate_paths, require_valid, topological_order
from lattice.core import Lattice
from lm.model import NGram, NGramModel, corrected_score, length_correction
from lm.tokenize import EOS, classify_token
from models.scoring import BeamConfig, ScoredSentence

logger = logging.getLogger(__name__)

DEFAULT_PATH_BOUND = 100_000


class OraclePathBoundError(ValueError):
    """Raised when a lattice has too many paths for exhaustive scoring"""

    def __init__(self, paths: int, bound: int):
        super().__init__(f"lattice has {paths:,} paths, more than the oracle bound of {bound:,}")
        self.paths = paths
        self.bound = bound


@dataclass(frozen=True)
class Hypothesis:
    """A partial path: emitted words, LM context and accumulated log10 likelihood"""

    state: int
    context: NGram
    words: tuple[str, ...]
    logprob: float

    @property
    def corrected(self) -> float:
        return self.logprob + length_correction(len(self.words))

    def sort_key(self) -> tuple[float, tuple[str, ...]]:
        return -self.corrected, self.words


def _best(hypotheses: list[Hypothesis], keep: int) -> list[Hypothesis]:
    """Top `keep` distinct word sequences, plus any tied with the last one kept"""
    unique = {h.words: h for h in hypotheses}
    ranked = sorted(unique.values(), key=Hypothesis.sort_key)
    if len(ranked) <= keep:
        return ranked
    cutoff = ranked[keep - 1].corrected
    end = keep
    while end < len(ranked) and ranked[end].corrected == cutoff:
        end += 1
    return ranked[:end]


def _prune(
    buckets: dict[NGram, list[Hypothesis]], config: BeamConfig
) -> dict[NGram, list[Hypothesis]]:
    pruned = {context: _best(hyps, config.beam) for context, hyps in buckets.items()}
    if config.global_beam is None:
        return pruned
    survivors = sorted(
        (h for hyps in pruned.values() for h in hyps), key=Hypothesis.sort_key
    )[: config.global_beam]
    kept: dict[NGram, list[Hypothesis]] = {}
    for h in survivors:
        kept.setdefault(h.context, []).append(h)
    return kept


def _finish(hypothesis: Hypothesis, model: NGramModel) -> ScoredSentence:
    logprob = hypothesis.logprob + model.cond_logprob(EOS, hypothesis.context)
    return ScoredSentence(
        words=hypothesis.words,
        logprob=logprob,
        corrected=logprob + length_correction(len(hypothesis.words)),
    )


def nbest(lattice: Lattice, model: NGramModel, config: Optional[BeamConfig] = None) -> list[ScoredSentence]:
    """
    The N highest-scoring distinct sentences of a lattice

    States are swept once in topological order. Hypotheses reaching a state are
    grouped by LM context and each group keeps its top K word sequences, which
    loses nothing for the final top N as long as K >= N.

    Args:
        lattice: a valid lattice
        model: trained n-gram model
        config: N, per-context beam K and optional global beam

    Returns:
        Sentences sorted by corrected score, best first, ties in word order

    Raises:
        InvalidLatticeError: if the lattice is not valid
    """
    config = config or BeamConfig()
    require_valid(lattice)
    if config.n == 0:
        return []
    started = time.process_time()

    initial = model.initial_context()
    pending: list[Optional[dict[NGram, list[Hypothesis]]]] = [None] * lattice.num_states
    pending[lattice.start] = {initial: [Hypothesis(lattice.start, initial, (), 0.0)]}
    expanded = 0
    finals: list[Hypothesis] = []

    for state in topological_order(lattice):
        buckets = pending[state]
        pending[state] = None
        if not buckets:
            continue
        buckets = _prune(buckets, config)
        if state == lattice.final:
            finals = [h for hyps in buckets.values() for h in hyps]
            break
        for arc in lattice.out_arcs(state):
            target = pending[arc.target]
            if target is None:
                target = pending[arc.target] = {}
            for context, hyps in buckets.items():
                expanded += len(hyps)
                if arc.word is None:
                    moved = [Hypothesis(arc.target, context, h.words, h.logprob) for h in hyps]
                    target.setdefault(context, []).extend(moved)
                    continue
                # every hypothesis in a bucket has the same sentence position class
                token = classify_token(arc.word, len(hyps[0].words), model.vocabulary)
                step = model.cond_logprob(token, context)
                following = model.advance(context, token)
                target.setdefault(following, []).extend(
                    Hypothesis(arc.target, following, h.words + (arc.word,), h.logprob + step)
                    for h in hyps
                )

    results: dict[tuple[str, ...], ScoredSentence] = {}
    for h in finals:
        results.setdefault(h.words, _finish(h, model))
    ranked = sorted(results.values(), key=lambda s: (-s.corrected, s.words))[: config.n]
    logger.info(
        f"N-best search: {expanded} hypothesis extensions, {len(results)} complete sentences, "
        f"{time.process_time() - started:.2f} CPU seconds"
    )
    return ranked


def brute_force_nbest(
    lattice: Lattice, model: NGramModel, n: int, bound: int = DEFAULT_PATH_BOUND
) -> list[ScoredSentence]:
    """
    Score every path independently; the reference for nbest

    Raises:
        OraclePathBoundError: when the lattice has more than `bound` paths
    """
    paths = count_paths(lattice)
    if paths > bound:
        raise OraclePathBoundError(paths, bound)
    if n == 0:
        return []
    scored: dict[tuple[str, ...], ScoredSentence] = {}
    for words in enumerate_paths(lattice):
        if words not in scored:
            scored[words] = corrected_score(model, words)
    return sorted(scored.values(), key=lambda s: (-s.corrected, s.words))[:n]
