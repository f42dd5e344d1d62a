"""Inflection request and exception table models"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class PartOfSpeech(str, Enum):
    """Parts of speech the inflector knows"""

    NOUN = "noun"
    VERB = "verb"


class Feature(str, Enum):
    """Inflectional features"""

    CITATION = "citation"
    PLURAL = "plural"
    THIRD_SINGULAR = "third-singular"
    PAST = "past"
    PAST_PARTICIPLE = "past-participle"


class InflectionRequest(BaseModel):
    """A lemma to inflect for one feature"""

    model_config = ConfigDict(frozen=True)

    lemma: str
    pos: PartOfSpeech
    feature: Feature

    @field_validator("lemma")
    @classmethod
    def _lowercase_lemma(cls, value: str) -> str:
        if not value or value != value.lower():
            raise ValueError(f"lemma must be lowercase and non-empty: {value!r}")
        return value


class ExceptionTable(BaseModel):
    """Irregular forms that override every regular pattern"""

    entries: dict[tuple[str, Feature], tuple[str, ...]] = Field(default_factory=dict)

    def lookup(self, lemma: str, feature: Feature) -> Optional[tuple[str, ...]]:
        return self.entries.get((lemma, feature))

    def __len__(self) -> int:
        return len(self.entries)
