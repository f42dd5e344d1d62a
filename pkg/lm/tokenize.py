"""Sentence splitting, word tokenization and class mapping for training text"""
import logging
import re
from typing import Collection, Optional

logger = logging.getLogger(__name__)

BOS = "<s>"
EOS = "</s>"
NAME = "<NAME>"
NUM = "<NUM>"
RESERVED = frozenset({BOS, EOS, NAME, NUM})

SENTENCE_END = frozenset({".", "!", "?"})

# kept with their period; never end a sentence
ABBREVIATIONS = frozenset(
    {
        "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "co.", "corp.",
        "inc.", "ltd.", "vs.", "etc.", "jan.", "feb.", "mar.", "apr.", "aug.",
        "sept.", "oct.", "nov.", "dec.", "no.", "gen.", "gov.", "sen.", "rep.",
    }
)

# capitalized but never a proper name
_NOT_NAMES = frozenset({"I"})

# possessive 's is its own token; other apostrophes and hyphens stay inside the word
_TOKEN = re.compile(r"['’]s\b|\w+(?:-\w+)*(?:['’](?!s\b)\w+(?:-\w+)*)*|[^\w\s]")


def _is_abbreviation(current: list[str]) -> bool:
    previous = current[-1]
    if f"{previous.lower()}." in ABBREVIATIONS:
        return True
    if len(previous) != 1 or not previous.isupper() or previous in _NOT_NAMES:
        return False
    # an initial opens a sentence or follows a capitalized word: "J. Doe", "John F. Kennedy"
    return len(current) == 1 or current[-2][:1].isupper()


def split_words(text: str) -> list[list[str]]:
    """
    Split raw text into sentences of surface tokens, case preserved

    Punctuation becomes separate tokens. A period directly after a known
    abbreviation stays attached to it, and so does one after a single capital
    initial that opens the sentence or follows a capitalized word.
    """
    sentences: list[list[str]] = []
    current: list[str] = []
    previous_end = -1
    for match in _TOKEN.finditer(text):
        token = match.group()
        if (
            token == "."
            and current
            and match.start() == previous_end
            and _is_abbreviation(current)
        ):
            current[-1] += "."
            previous_end = match.end()
            continue
        current.append(token)
        previous_end = match.end()
        if token in SENTENCE_END:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return sentences


def classify_token(token: str, position: int, lexicon: Optional[Collection[str]] = None) -> str:
    """
    Map a surface token to its model token

    Args:
        token: surface token
        position: index of the token in its sentence
        lexicon: lowercase words known to be common words; sentence-initial
            capitalized tokens missing from it are treated as names

    Returns:
        `<NUM>` for tokens with a digit, `<NAME>` for proper names, otherwise
        the lowercased token
    """
    if token in RESERVED:
        return token
    if any(ch.isdigit() for ch in token):
        return NUM
    if token[:1].isupper() and token not in _NOT_NAMES:
        if position > 0:
            return NAME
        if lexicon is not None and token.lower() not in lexicon:
            return NAME
    return token.lower()


def classify_sentence(words: list[str], lexicon: Optional[Collection[str]] = None) -> list[str]:
    return [classify_token(word, i, lexicon) for i, word in enumerate(words)]


def tokenize(text: str, lexicon: Optional[Collection[str]] = None) -> list[list[str]]:
    """Sentences of classified tokens wrapped in boundary symbols"""
    sentences = [[BOS] + classify_sentence(words, lexicon) + [EOS] for words in split_words(text)]
    logger.debug(f"Tokenized {len(sentences)} sentences")
    return sentences


def corpus_lexicon(sentences: list[list[str]]) -> frozenset[str]:
    """Words that occur in lowercase somewhere in the corpus"""
    return frozenset(word for words in sentences for word in words if word == word.lower())
