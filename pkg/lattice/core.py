"""Word lattices and their composition algebra"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

logger = logging.getLogger(__name__)

# External spelling of the empty string
EPSILON = "*"


@dataclass(frozen=True)
class Arc:
    """A transition; word None is epsilon"""

    source: int
    target: int
    word: Optional[str] = None

    @property
    def is_epsilon(self) -> bool:
        return self.word is None

    @property
    def label(self) -> str:
        return EPSILON if self.word is None else self.word


@dataclass(frozen=True)
class Lattice:
    """
    Acyclic labeled transition network with one start and one final state

    Arcs are kept in a global order; the outgoing arcs of each state keep their
    relative order, which DEFAULT extraction relies on.
    """

    num_states: int
    start: int
    final: int
    arcs: tuple[Arc, ...]
    outgoing: tuple[tuple[Arc, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        for state in (self.start, self.final):
            if not 0 <= state < self.num_states:
                raise ValueError(f"state {state} outside 0..{self.num_states - 1}")
        buckets: list[list[Arc]] = [[] for _ in range(self.num_states)]
        for arc in self.arcs:
            if not (0 <= arc.source < self.num_states and 0 <= arc.target < self.num_states):
                raise ValueError(f"arc {arc.source}->{arc.target} references unknown state")
            buckets[arc.source].append(arc)
        object.__setattr__(self, "outgoing", tuple(tuple(b) for b in buckets))

    def out_arcs(self, state: int) -> tuple[Arc, ...]:
        return self.outgoing[state]

    @property
    def words(self) -> set[str]:
        return {arc.word for arc in self.arcs if arc.word is not None}


def check_word(w: str) -> str:
    """Validate a word token"""
    if not w or any(ch.isspace() for ch in w):
        raise ValueError(f"word token must be non-empty without whitespace: {w!r}")
    if w == EPSILON:
        raise ValueError(f"{EPSILON!r} is reserved for the empty string")
    return w


def _assemble(start: int, final: int, arcs: Sequence[Arc]) -> Lattice:
    """Renumber states densely in a deterministic topological order"""
    out: dict[int, list[Arc]] = {}
    for arc in arcs:
        out.setdefault(arc.source, []).append(arc)

    # reverse DFS postorder from start, following arc order
    order: list[int] = []
    visited = {start}
    stack = [(start, iter(out.get(start, ())))]
    while stack:
        state, children = stack[-1]
        for arc in children:
            if arc.target not in visited:
                visited.add(arc.target)
                stack.append((arc.target, iter(out.get(arc.target, ()))))
                break
        else:
            stack.pop()
            order.append(state)
    order.reverse()
    if final not in visited:
        raise ValueError("final state is unreachable")

    renumber = {old: new for new, old in enumerate(order)}
    new_arcs = [
        Arc(renumber[arc.source], renumber[arc.target], arc.word)
        for old in order
        for arc in out.get(old, ())
    ]
    return Lattice(len(order), renumber[start], renumber[final], tuple(new_arcs))


def wrd(w: str) -> Lattice:
    """The smallest lattice: a single arc labeled w"""
    return Lattice(2, 0, 1, (Arc(0, 1, check_word(w)),))


def epsilon() -> Lattice:
    """Two states joined by one epsilon arc"""
    return Lattice(2, 0, 1, (Arc(0, 1, None),))


def seq(parts: Iterable[Lattice]) -> Lattice:
    """Glue lattices end to start"""
    parts = list(parts)
    if not parts:
        raise ValueError("seq needs at least one part")
    if len(parts) == 1:
        return parts[0]

    arcs: list[Arc] = []
    offset = 0
    joint: Optional[int] = None
    for part in parts:
        def mapped(state: int, part=part, offset=offset, joint=joint) -> int:
            if joint is not None and state == part.start:
                return joint
            return offset + state

        arcs.extend(Arc(mapped(a.source), mapped(a.target), a.word) for a in part.arcs)
        joint = mapped(part.final)
        offset += part.num_states
    return _assemble(parts[0].start, joint, arcs)


def or_(alts: Iterable[Lattice]) -> Lattice:
    """Branch over alternatives sharing a new start and final state"""
    alts = list(alts)
    if not alts:
        raise ValueError("or_ needs at least one alternative")
    if len(alts) == 1:
        return alts[0]

    start, final = 0, 1
    arcs: list[Arc] = []
    offset = 2
    for alt in alts:
        def mapped(state: int, alt=alt, offset=offset) -> int:
            if state == alt.start:
                return start
            if state == alt.final:
                return final
            return offset + state

        arcs.extend(Arc(mapped(a.source), mapped(a.target), a.word) for a in alt.arcs)
        offset += alt.num_states
    return _assemble(start, final, arcs)
