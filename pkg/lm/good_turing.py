"""Good-Turing count re-estimation"""
import logging
from typing import Literal, Mapping, Optional

import numpy as np
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

DEFAULT_CONFIDENCE = 1.96
DEFAULT_FLOOR = 1e-6


class GoodTuringEstimate(BaseModel):
    """Adjusted counts r* for every observed count r and the reserved unseen mass"""

    regime: Literal["simple", "turing", "none", "degenerate"]
    total: int
    adjusted: dict[int, float] = Field(default_factory=dict)
    unseen_mass: float
    # log10 S(r) = intercept + slope * log10 r
    slope: Optional[float] = None
    intercept: Optional[float] = None
    # first r estimated from the regression line instead of the raw counts
    switch_point: Optional[int] = None

    def r_star(self, r: int) -> float:
        return self.adjusted[r]

    def conservation(self, freq_of_freq: Mapping[int, int]) -> float:
        """Total probability: sum of N_r r* / N plus the unseen mass"""
        seen = sum(n * self.adjusted[r] for r, n in sorted(freq_of_freq.items()) if n)
        return seen / self.total + self.unseen_mass


def _averaged_counts(rs: np.ndarray, nr: np.ndarray) -> np.ndarray:
    """Z_r = N_r / (0.5 (t - q)) with q, t the neighbouring observed counts"""
    previous = np.concatenate(([0], rs[:-1]))
    following = np.concatenate((rs[1:], [2 * rs[-1] - previous[-1]]))
    return nr / (0.5 * (following - previous))


def good_turing_adjust(
    freq_of_freq: Mapping[int, int],
    regime: Literal["simple", "turing"] = "simple",
    confidence: float = DEFAULT_CONFIDENCE,
    floor: float = DEFAULT_FLOOR,
) -> GoodTuringEstimate:
    """
    Re-estimate counts from a frequency-of-frequency table

    The simple regime uses the raw Turing estimate (r+1) N_{r+1} / N_r while it
    differs significantly from the log-log regression of the averaged N_r curve,
    then the regression from that point on. Adjusted counts are renormalized so
    the seen events share exactly 1 - N_1/N. The turing regime returns the raw
    estimates unchanged.

    Args:
        freq_of_freq: N_r for r >= 1
        regime: "simple" or "turing"
        confidence: z value of the switch test
        floor: unseen mass when the table is degenerate

    Returns:
        GoodTuringEstimate; a table with fewer than two distinct counts falls back
        to maximum likelihood scaled to leave `floor` unseen
    """
    table = {int(r): int(n) for r, n in freq_of_freq.items() if r > 0 and n > 0}
    total = sum(r * n for r, n in table.items())
    if total <= 0:
        raise ValueError("frequency-of-frequency table is empty")
    n1 = table.get(1, 0)

    if n1 == 0:
        return GoodTuringEstimate(
            regime="none", total=total, adjusted={r: float(r) for r in table}, unseen_mass=0.0
        )

    if regime == "turing":
        adjusted = {r: (r + 1) * table.get(r + 1, 0) / n for r, n in sorted(table.items())}
        return GoodTuringEstimate(
            regime="turing", total=total, adjusted=adjusted, unseen_mass=n1 / total
        )

    if len(table) < 2:
        logger.info(f"Degenerate count table {table}; using maximum likelihood with floor {floor}")
        return GoodTuringEstimate(
            regime="degenerate",
            total=total,
            adjusted={r: r * (1.0 - floor) for r in table},
            unseen_mass=floor,
        )

    rs = np.array(sorted(table), dtype=float)
    nr = np.array([table[int(r)] for r in rs], dtype=float)
    zr = _averaged_counts(rs, nr)
    slope, intercept = np.polyfit(np.log10(rs), np.log10(zr), 1)
    if slope >= -1:
        logger.warning(f"Good-Turing regression slope {slope:.3f} >= -1; estimates are unreliable")

    def smoothed(r: float) -> float:
        return 10 ** (intercept + slope * np.log10(r))

    adjusted: dict[int, float] = {}
    switch_point: Optional[int] = None
    for r in sorted(table):
        regressed = (r + 1) * smoothed(r + 1) / smoothed(r)
        if switch_point is None:
            n_r, n_next = table[r], table.get(r + 1, 0)
            if n_next:
                turing = (r + 1) * n_next / n_r
                spread = (r + 1) * np.sqrt(n_next / n_r**2 * (1 + n_next / n_r))
                if abs(turing - regressed) > confidence * spread:
                    adjusted[r] = float(turing)
                    continue
            switch_point = r
        adjusted[r] = float(regressed)

    seen = sum(table[r] * adjusted[r] for r in sorted(table))
    scale = (total - n1) / seen
    adjusted = {r: value * scale for r, value in adjusted.items()}
    logger.debug(
        f"Simple Good-Turing over {len(table)} counts: slope {slope:.4f}, switch at r={switch_point}"
    )
    return GoodTuringEstimate(
        regime="simple",
        total=total,
        adjusted=adjusted,
        unseen_mass=n1 / total,
        slope=float(slope),
        intercept=float(intercept),
        switch_point=switch_point,
    )
