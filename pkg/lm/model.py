"""Smoothed bigram / trigram language model"""
import logging
import math
from collections import Counter
from typing import Any, Iterable, Optional, Sequence

from pydantic import BaseModel, Field, PrivateAttr, field_validator

from config.config import SUPPORTED_ORDERS, ModelConfig
from lm.good_turing import GoodTuringEstimate, good_turing_adjust
from lm.tokenize import BOS, EOS, RESERVED, classify_sentence
from models.scoring import ScoredSentence

logger = logging.getLogger(__name__)

# f(l) = 0.5 l
LENGTH_BONUS = 0.5

NGram = tuple[str, ...]


def length_correction(length: int) -> float:
    return LENGTH_BONUS * length


class NGramTable(BaseModel):
    """Counts and smoothed probabilities of one order"""

    order: int
    counts: dict[NGram, int] = Field(default_factory=dict)
    # log10 P(w | context) for seen n-grams
    logprobs: dict[NGram, float] = Field(default_factory=dict)
    # context -> probability mass left for unseen continuations
    unseen: dict[NGram, float] = Field(default_factory=dict)
    estimate: Optional[GoodTuringEstimate] = None

    def freq_of_freq(self) -> dict[int, int]:
        return dict(sorted(Counter(self.counts.values()).items()))


class NGramModel(BaseModel):
    """
    Back-off n-gram model over classified tokens

    Seen n-grams keep their Good-Turing probability. The unseen mass of a
    context is shared among unseen continuations in proportion to their
    lower-order probability; contexts never seen back off entirely.
    """

    order: int
    corpus_tokens: int
    floor: float = 1e-6
    tables: dict[int, NGramTable]
    metadata: dict[str, Any] = Field(default_factory=dict)

    _vocabulary: frozenset[str] = PrivateAttr(default=frozenset())
    _continuations: dict[tuple[int, NGram], tuple[str, ...]] = PrivateAttr(default_factory=dict)
    _denominators: dict[tuple[int, NGram], float] = PrivateAttr(default_factory=dict)

    @field_validator("order")
    @classmethod
    def _supported_order(cls, value: int) -> int:
        if value not in SUPPORTED_ORDERS:
            raise ValueError(f"order must be one of {SUPPORTED_ORDERS}, got {value}")
        return value

    def model_post_init(self, __context: Any) -> None:
        self._vocabulary = frozenset(
            ngram[0] for ngram in self.tables[1].logprobs if ngram[0] not in RESERVED
        )
        grouped: dict[tuple[int, NGram], list[str]] = {}
        for m in range(2, self.order + 1):
            for ngram in sorted(self.tables[m].logprobs):
                grouped.setdefault((m, ngram[:-1]), []).append(ngram[-1])
        self._continuations = {key: tuple(words) for key, words in grouped.items()}

    @property
    def vocabulary(self) -> frozenset[str]:
        """Lowercase surface words with a unigram estimate"""
        return self._vocabulary

    def initial_context(self) -> NGram:
        return (BOS,) * (self.order - 1)

    def advance(self, context: NGram, token: str) -> NGram:
        return (context + (token,))[1:]

    def _denominator(self, m: int, context: NGram) -> float:
        """1 minus the lower-order probability of the continuations seen after context"""
        key = (m, context)
        if key not in self._denominators:
            lower = context[1:]
            seen = math.fsum(
                10 ** self.cond_logprob(word, lower) for word in self._continuations.get(key, ())
            )
            self._denominators[key] = max(1.0 - seen, self.floor)
        return self._denominators[key]

    def cond_logprob(self, token: str, context: NGram) -> float:
        """log10 P(token | context) for a classified token and a context of any length < order"""
        m = len(context) + 1
        table = self.tables[m]
        if m == 1:
            logprob = table.logprobs.get((token,))
            return logprob if logprob is not None else math.log10(table.unseen[()])
        mass = table.unseen.get(context)
        if mass is None:
            return self.cond_logprob(token, context[1:])
        logprob = table.logprobs.get(context + (token,))
        if logprob is not None:
            return logprob
        return (
            math.log10(mass)
            + self.cond_logprob(token, context[1:])
            - math.log10(self._denominator(m, context))
        )

    def classify(self, words: Sequence[str]) -> list[str]:
        return classify_sentence(list(words), self._vocabulary)


def count_ngrams(sentences: Iterable[Sequence[str]], order: int) -> tuple[dict[int, Counter], int]:
    """m-gram counts for m <= order over boundary-padded sentences; <s> is never predicted"""
    counts = {m: Counter() for m in range(1, order + 1)}
    tokens = 0
    for sentence in sentences:
        words = [w for w in sentence if w not in (BOS, EOS)]
        padded = [BOS] * (order - 1) + words + [EOS]
        for i in range(order - 1, len(padded)):
            tokens += 1
            for m in range(1, order + 1):
                counts[m][tuple(padded[i - m + 1 : i + 1])] += 1
    return counts, tokens


def _estimate_table(
    m: int, counts: Counter, confidence: float, floor: float
) -> NGramTable:
    table = NGramTable(order=m)
    table.counts = dict(sorted(counts.items()))
    estimate = good_turing_adjust(table.freq_of_freq(), confidence=confidence, floor=floor)
    table.estimate = estimate

    by_context: dict[NGram, list[tuple[str, int]]] = {}
    for ngram, count in table.counts.items():
        by_context.setdefault(ngram[:-1], []).append((ngram[-1], count))

    for context, continuations in by_context.items():
        total = sum(count for _, count in continuations)
        probs = [estimate.r_star(count) / total for _, count in continuations]
        seen = math.fsum(probs)
        if 1.0 - seen < floor:
            probs = [p * (1.0 - floor) / seen for p in probs]
            mass = floor
        else:
            mass = 1.0 - seen
        table.unseen[context] = mass
        for (word, _), p in zip(continuations, probs):
            table.logprobs[context + (word,)] = math.log10(p)
    return table


def train(
    sentences: Sequence[Sequence[str]],
    order: int = 2,
    config: Optional[ModelConfig] = None,
) -> NGramModel:
    """
    Train a model from tokenized sentences

    Args:
        sentences: classified tokens per sentence; boundary symbols are optional
        order: 2 (bigram) or 3 (trigram)
        config: Good-Turing confidence and unseen floor

    Raises:
        ValueError: on an empty corpus, an unsupported order, or a config of another order
    """
    config = config or ModelConfig(order=order)
    if config.order != order:
        raise ValueError(f"order {order} disagrees with the configured order {config.order}")
    if order not in SUPPORTED_ORDERS:
        raise ValueError(f"order must be one of {SUPPORTED_ORDERS}, got {order}")
    if not sentences:
        raise ValueError("cannot train on an empty corpus")

    counts, tokens = count_ngrams(sentences, order)
    tables = {
        m: _estimate_table(m, counts[m], config.gt_confidence, config.unseen_floor)
        for m in range(1, order + 1)
    }
    metadata = {
        "sentences": len(sentences),
        "types": len(counts[1]),
        "length_bonus": LENGTH_BONUS,
        "good_turing": {
            str(m): {
                "regime": t.estimate.regime,
                "slope": t.estimate.slope,
                "intercept": t.estimate.intercept,
                "switch_point": t.estimate.switch_point,
                "confidence": config.gt_confidence,
            }
            for m, t in tables.items()
        },
    }
    degenerate = [m for m, t in tables.items() if t.estimate.regime == "degenerate"]
    if degenerate:
        metadata["degenerate_orders"] = degenerate
    model = NGramModel(
        order=order,
        corpus_tokens=tokens,
        floor=config.unseen_floor,
        tables=tables,
        metadata=metadata,
    )
    logger.info(
        f"Trained order-{order} model on {len(sentences)} sentences, {tokens} tokens, "
        f"{len(counts[1])} types"
    )
    return model


def sentence_logprob(model: NGramModel, words: Sequence[str]) -> float:
    """log10 likelihood of a sentence including the transitions from <s> and into </s>"""
    context = model.initial_context()
    total = 0.0
    for token in model.classify(words) + [EOS]:
        total += model.cond_logprob(token, context)
        context = model.advance(context, token)
    return total


def corrected_score(model: NGramModel, words: Sequence[str]) -> ScoredSentence:
    """Score a sentence; corrected adds 0.5 per emitted word"""
    logprob = sentence_logprob(model, words)
    return ScoredSentence(
        words=tuple(words), logprob=logprob, corrected=logprob + length_correction(len(words))
    )
