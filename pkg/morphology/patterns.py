"""
Regular inflection patterns

Every pattern whose condition matches the lemma is applied, each exactly once
and never on top of another pattern's output:

    noun plural       +s (always) | +es after s/x/z/ch/sh/o | y -> ies after a consonant
    verb 3rd singular +s (always) | +es after s/x/z/ch/sh/o | y -> ies after a consonant
    verb past         +ed (not after e) | e -> ed | consonant doubling + ed | y -> ied after a consonant
    verb participle   same patterns as the past
"""
import re
from dataclasses import dataclass

from models.morphology import Feature, PartOfSpeech


@dataclass(frozen=True)
class InflectionPattern:
    name: str
    pos: PartOfSpeech
    feature: Feature
    condition: re.Pattern
    search: re.Pattern
    replacement: str

    def applies(self, lemma: str) -> bool:
        return bool(self.condition.search(lemma))

    def apply(self, lemma: str) -> str:
        return self.search.sub(self.replacement, lemma, count=1)


_SIBILANT_OR_O = re.compile(r"(?:s|x|z|ch|sh|o)$")
_CONSONANT_Y = re.compile(r"[^aeiou]y$")
# consonant-vowel-consonant ending, final consonant not w/x/y
_CVC = re.compile(r"(?:^|[^aeiou])[aeiou][b-df-hj-np-tvz]$")
_ANY = re.compile(r"$")
_END = re.compile(r"$")


def _suffix_patterns(pos: PartOfSpeech, feature: Feature) -> list[InflectionPattern]:
    return [
        InflectionPattern("+s", pos, feature, _ANY, _END, "s"),
        InflectionPattern("+es", pos, feature, _SIBILANT_OR_O, _END, "es"),
        InflectionPattern("y>ies", pos, feature, _CONSONANT_Y, re.compile(r"y$"), "ies"),
    ]


def _past_patterns(feature: Feature) -> list[InflectionPattern]:
    verb = PartOfSpeech.VERB
    return [
        InflectionPattern("+ed", verb, feature, re.compile(r"[^e]$"), _END, "ed"),
        InflectionPattern("e>ed", verb, feature, re.compile(r"e$"), _END, "d"),
        InflectionPattern("double+ed", verb, feature, _CVC, re.compile(r"(.)$"), r"\1\1ed"),
        InflectionPattern("y>ied", verb, feature, _CONSONANT_Y, re.compile(r"y$"), "ied"),
    ]


PATTERNS: tuple[InflectionPattern, ...] = tuple(
    _suffix_patterns(PartOfSpeech.NOUN, Feature.PLURAL)
    + _suffix_patterns(PartOfSpeech.VERB, Feature.THIRD_SINGULAR)
    + _past_patterns(Feature.PAST)
    + _past_patterns(Feature.PAST_PARTICIPLE)
)


def patterns_for(pos: PartOfSpeech, feature: Feature) -> list[InflectionPattern]:
    """Declared patterns for a part of speech and feature, in declaration order"""
    return [p for p in PATTERNS if p.pos is pos and p.feature is feature]
