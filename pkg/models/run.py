"""Command invocation models"""
import secrets
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

Command = Literal["train", "generate", "extract", "score", "rank", "stats", "validate"]
Strategy = Literal["statistical", "random", "default"]


class RunConfig(BaseModel):
    """One command-line invocation after flags and config file are merged"""

    command: Command

    # inputs and outputs
    corpus: Optional[Path] = None
    grammar: Optional[Path] = None
    lexicon: Optional[Path] = None
    exceptions: Optional[Path] = None
    input: Optional[Path] = None
    lattice: Optional[Path] = None
    model: Optional[Path] = None
    sentences: Optional[Path] = None
    out: Optional[Path] = None

    # language model
    order: int = 2

    # extraction
    strategy: Strategy = "statistical"
    n: int = Field(default=5, ge=0)
    beam: int = Field(default=10, ge=1)
    global_beam: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    seed_derived: bool = False
    per_arc: bool = False
    # also score every path and compare; bounded by the oracle path bound
    verify: bool = False

    output_format: Literal["text", "records"] = "text"
    verbose: bool = False

    @model_validator(mode="after")
    def _check_strategy(self) -> "RunConfig":
        if self.command == "extract" and self.strategy == "statistical" and self.model is None:
            raise ValueError("the statistical strategy requires a model path")
        if self.verify and self.strategy != "statistical":
            raise ValueError("--verify applies to the statistical strategy only")
        if self.command == "extract" and self.strategy == "random" and self.seed is None:
            # echoed with the result so the run can be replayed
            self.seed = secrets.randbits(63)
            self.seed_derived = True
        return self
