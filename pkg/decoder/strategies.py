"""Model-free extraction: RANDOM and DEFAULT paths"""
import logging
import random

from lattice.analysis import require_valid, suffix_counts
from lattice.core import Lattice

logger = logging.getLogger(__name__)


def random_path(lattice: Lattice, seed: int, per_arc: bool = False) -> tuple[str, ...]:
    """
    Words of a randomly chosen path

    Paths are drawn uniformly: at each state an arc is taken with probability
    (paths through it) / (paths from the state). With `per_arc` every outgoing
    arc is equally likely instead. Draws come from random.Random(seed), so a
    seed reproduces its sentence on every platform.
    """
    require_valid(lattice)
    rng = random.Random(seed)
    counts = suffix_counts(lattice)
    words: list[str] = []
    state = lattice.start
    while state != lattice.final:
        arcs = lattice.out_arcs(state)
        if per_arc:
            chosen = arcs[rng.randrange(len(arcs))]
        else:
            pick = rng.randrange(counts[state])
            for chosen in arcs:
                pick -= counts[chosen.target]
                if pick < 0:
                    break
        if chosen.word is not None:
            words.append(chosen.word)
        state = chosen.target
    logger.debug(f"Random path with seed {seed}: {' '.join(words)}")
    return tuple(words)


def default_path(lattice: Lattice) -> tuple[str, ...]:
    """Words along the first outgoing arc of every state"""
    require_valid(lattice)
    words: list[str] = []
    state = lattice.start
    while state != lattice.final:
        arc = lattice.out_arcs(state)[0]
        if arc.word is not None:
            words.append(arc.word)
        state = arc.target
    return tuple(words)
