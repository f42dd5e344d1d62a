"""Scored sentence and search configuration models"""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# attached to the preceding word when rendering text
_CLOSING = frozenset({".", ",", "!", "?", ";", ":", ")", "'s", "n't", "%"})
_TERMINAL = frozenset({".", "!", "?"})


class ScoredSentence(BaseModel):
    """A word sequence with its language model scores"""

    model_config = ConfigDict(frozen=True)

    words: tuple[str, ...]
    logprob: float
    corrected: float

    @property
    def sentence(self) -> str:
        return " ".join(self.words)

    @property
    def text(self) -> str:
        """Display form: initial capital, punctuation attached, final period"""
        out = ""
        for word in self.words:
            if out and word not in _CLOSING:
                out += " "
            out += word
        if self.words and self.words[-1] not in _TERMINAL:
            out += "."
        return out[:1].upper() + out[1:]


class BeamConfig(BaseModel):
    """N-best search limits"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=1, ge=0)
    # hypotheses kept per (state, LM context)
    beam: int = Field(default=10, ge=1)
    # hypotheses kept per state across contexts; None keeps the search exact
    global_beam: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _beam_covers_n(self) -> "BeamConfig":
        if self.beam < self.n:
            raise ValueError(f"beam K={self.beam} must be at least N={self.n}")
        return self
