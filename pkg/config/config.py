from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from dotenv import dotenv_values


def _flag(value: Optional[str], default: bool) -> bool:
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def _optional_int(value: Optional[str]) -> Optional[int]:
    if value is None or not value.strip() or value.strip().lower() == "none":
        return None
    return int(value)


def _read(path: Optional[Union[str, Path]]) -> dict[str, Optional[str]]:
    """Parse a KEY=VALUE file without touching the process environment"""
    if path is None:
        return {}
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    return dict(dotenv_values(path))


@dataclass
class ModelConfig:
    """Configuration for language model training"""

    # n-gram order, 2 or 3
    order: int = 2

    # Simple Good-Turing switch test and unseen-mass floor
    gt_confidence: float = 1.96
    unseen_floor: float = 1e-6

    # sentence-initial capitalized words not seen lowercase become <NAME>
    detect_initial_names: bool = True

    @classmethod
    def from_file(cls, path: Optional[Union[str, Path]] = None) -> "ModelConfig":
        """Create config from a KEY=VALUE file; missing keys keep their defaults"""
        values = _read(path)
        return cls(
            order=int(values.get("NGRAM_ORDER") or 2),
            gt_confidence=float(values.get("GT_CONFIDENCE") or 1.96),
            unseen_floor=float(values.get("UNSEEN_FLOOR") or 1e-6),
            detect_initial_names=_flag(values.get("DETECT_INITIAL_NAMES"), True),
        )


@dataclass
class ExtractionConfig:
    """Configuration for sentence extraction"""

    strategy: str = "statistical"

    # N-best size, per-context beam K and optional per-state cap
    nbest: int = 5
    beam: int = 10
    global_beam: Optional[int] = None

    # brute-force oracle refuses lattices with more paths than this
    oracle_path_bound: int = 100_000

    # RANDOM picks each arc uniformly instead of each path
    per_arc_random: bool = False

    exception_table_limit: int = 500

    @classmethod
    def from_file(cls, path: Optional[Union[str, Path]] = None) -> "ExtractionConfig":
        """Create config from a KEY=VALUE file; missing keys keep their defaults"""
        values = _read(path)
        return cls(
            strategy=values.get("STRATEGY") or "statistical",
            nbest=int(values.get("NBEST") or 5),
            beam=int(values.get("BEAM_WIDTH") or 10),
            global_beam=_optional_int(values.get("GLOBAL_BEAM")),
            oracle_path_bound=int(values.get("ORACLE_PATH_BOUND") or 100_000),
            per_arc_random=_flag(values.get("PER_ARC_RANDOM"), False),
            exception_table_limit=int(values.get("EXCEPTION_TABLE_LIMIT") or 500),
        )


# Available extraction strategies
STRATEGIES = {
    "statistical": {
        "headers": {2: "STATISTICAL BIGRAM EXTRACTION", 3: "STATISTICAL TRIGRAM EXTRACTION"},
        "requires_model": True,
    },
    "random": {
        "headers": {0: "RANDOM EXTRACTION"},
        "requires_model": False,
    },
    "default": {
        "headers": {0: "DEFAULT EXTRACTION"},
        "requires_model": False,
    },
}

SUPPORTED_ORDERS = (2, 3)


def strategy_header(strategy: str, order: int = 0) -> str:
    """Block title for a strategy; statistical titles depend on the model order"""
    headers = STRATEGIES[strategy]["headers"]
    return headers.get(order) or next(iter(headers.values()))


def validate_config(
    model: Optional[ModelConfig] = None, extraction: Optional[ExtractionConfig] = None
) -> bool:
    """Validate that the configuration is valid"""

    if model is not None:
        if model.order not in SUPPORTED_ORDERS:
            raise ValueError(f"Invalid n-gram order: {model.order}")
        if model.gt_confidence <= 0:
            raise ValueError(f"Invalid Good-Turing confidence: {model.gt_confidence}")
        if not 0 < model.unseen_floor < 1:
            raise ValueError(f"Unseen floor must lie in (0, 1): {model.unseen_floor}")

    if extraction is not None:
        if extraction.strategy not in STRATEGIES:
            raise ValueError(f"Invalid strategy: {extraction.strategy}")
        if extraction.nbest < 0:
            raise ValueError(f"Invalid N: {extraction.nbest}")
        if extraction.beam < extraction.nbest:
            raise ValueError(f"Beam K={extraction.beam} is smaller than N={extraction.nbest}")
        if extraction.global_beam is not None and extraction.global_beam < 1:
            raise ValueError(f"Invalid global beam: {extraction.global_beam}")
        if extraction.oracle_path_bound < 1:
            raise ValueError(f"Invalid oracle path bound: {extraction.oracle_path_bound}")
        if extraction.exception_table_limit < 1:
            raise ValueError(f"Invalid exception table limit: {extraction.exception_table_limit}")

    return True
