"""Ranking explicit sentence lists"""
import logging
from typing import Iterable, Sequence

from lm.model import NGramModel, corrected_score
from models.scoring import ScoredSentence

logger = logging.getLogger(__name__)


def rank_sentences(model: NGramModel, sentences: Iterable[Sequence[str]]) -> list[ScoredSentence]:
    """Score every sentence and sort by corrected score, best first; equal scores keep input order"""
    scored = [corrected_score(model, words) for words in sentences]
    logger.info(f"Ranked {len(scored)} sentences")
    return sorted(scored, key=lambda s: -s.corrected)
