"""Lattice validation, path counting and statistics"""
import logging
from collections import deque
from typing import Iterator

from pydantic import BaseModel, Field

from lattice.core import Lattice

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    """One broken lattice invariant"""

    kind: str
    message: str
    states: tuple[int, ...] = ()


class ValidationReport(BaseModel):
    """Result of validating a lattice"""

    errors: list[Violation] = Field(default_factory=list)
    warnings: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary(self) -> str:
        return "; ".join(v.message for v in self.errors) or "valid"


class LatticeStats(BaseModel):
    """Size and vocabulary figures of a lattice"""

    nodes: int
    arcs: int
    paths: int
    distinct_unigrams: int
    distinct_bigrams: int


class InvalidLatticeError(ValueError):
    """Raised when an operation needs a valid lattice"""

    def __init__(self, report: ValidationReport):
        super().__init__(f"invalid lattice: {report.summary()}")
        self.report = report


def _find_cycle(lattice: Lattice) -> list[int]:
    white, gray, black = 0, 1, 2
    color = [white] * lattice.num_states
    for root in range(lattice.num_states):
        if color[root] != white:
            continue
        color[root] = gray
        path = [root]
        stack = [iter(lattice.out_arcs(root))]
        while stack:
            for arc in stack[-1]:
                if color[arc.target] == gray:
                    return path[path.index(arc.target):] + [arc.target]
                if color[arc.target] == white:
                    color[arc.target] = gray
                    path.append(arc.target)
                    stack.append(iter(lattice.out_arcs(arc.target)))
                    break
            else:
                stack.pop()
                color[path.pop()] = black
    return []


def _reach(lattice: Lattice, origin: int, forward: bool) -> set[int]:
    incoming: dict[int, list[int]] = {}
    if not forward:
        for arc in lattice.arcs:
            incoming.setdefault(arc.target, []).append(arc.source)
    seen = {origin}
    queue = deque([origin])
    while queue:
        state = queue.popleft()
        if forward:
            neighbours = [arc.target for arc in lattice.out_arcs(state)]
        else:
            neighbours = incoming.get(state, [])
        for nxt in neighbours:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _epsilon_only_path(lattice: Lattice, order: list[int]) -> bool:
    reached = {lattice.start}
    for state in order:
        if state in reached:
            reached.update(a.target for a in lattice.out_arcs(state) if a.is_epsilon)
    return lattice.final in reached


def validate(lattice: Lattice) -> ValidationReport:
    """Check every lattice invariant and list the violations"""
    report = ValidationReport()
    if lattice.start == lattice.final:
        report.errors.append(
            Violation(kind="start-final", message="start state equals final state",
                      states=(lattice.start,))
        )

    cycle = _find_cycle(lattice)
    if cycle:
        report.errors.append(
            Violation(kind="cycle", message=f"cycle through states {cycle}",
                      states=tuple(cycle))
        )

    reachable = _reach(lattice, lattice.start, forward=True)
    coreachable = _reach(lattice, lattice.final, forward=False)
    unreachable = tuple(s for s in range(lattice.num_states) if s not in reachable)
    if unreachable:
        report.errors.append(
            Violation(kind="unreachable", message=f"states unreachable from start: {list(unreachable)}",
                      states=unreachable)
        )
    dead_ends = tuple(
        s for s in range(lattice.num_states)
        if s != lattice.final and not lattice.out_arcs(s)
    )
    if dead_ends:
        report.errors.append(
            Violation(kind="extra-final", message=f"non-final states without outgoing arcs: {list(dead_ends)}",
                      states=dead_ends)
        )
    stranded = tuple(
        s for s in range(lattice.num_states) if s not in coreachable and s not in dead_ends
    )
    if stranded:
        report.errors.append(
            Violation(kind="not-coreachable", message=f"states that cannot reach final: {list(stranded)}",
                      states=stranded)
        )
    if lattice.out_arcs(lattice.final):
        report.errors.append(
            Violation(kind="final-arcs", message="final state has outgoing arcs",
                      states=(lattice.final,))
        )

    if report.ok and lattice.words and _epsilon_only_path(lattice, topological_order(lattice)):
        report.warnings.append(
            Violation(kind="epsilon-path", message="some path emits no words")
        )
    return report


def require_valid(lattice: Lattice) -> None:
    """Raise InvalidLatticeError unless the lattice is valid"""
    report = validate(lattice)
    if not report.ok:
        raise InvalidLatticeError(report)


def topological_order(lattice: Lattice) -> list[int]:
    """States in topological order (Kahn, lowest id first among ready states)"""
    indegree = [0] * lattice.num_states
    for arc in lattice.arcs:
        indegree[arc.target] += 1
    ready = deque(s for s in range(lattice.num_states) if indegree[s] == 0)
    order: list[int] = []
    while ready:
        state = ready.popleft()
        order.append(state)
        for arc in lattice.out_arcs(state):
            indegree[arc.target] -= 1
            if indegree[arc.target] == 0:
                ready.append(arc.target)
    if len(order) != lattice.num_states:
        raise InvalidLatticeError(validate(lattice))
    return order


def suffix_counts(lattice: Lattice) -> list[int]:
    """Number of complete paths from each state to the final state"""
    counts = [0] * lattice.num_states
    counts[lattice.final] = 1
    for state in reversed(topological_order(lattice)):
        if state != lattice.final:
            counts[state] = sum(counts[arc.target] for arc in lattice.out_arcs(state))
    return counts


def count_paths(lattice: Lattice) -> int:
    """Exact number of start-to-final arc sequences"""
    require_valid(lattice)
    return suffix_counts(lattice)[lattice.start]


def enumerate_paths(lattice: Lattice) -> Iterator[tuple[str, ...]]:
    """Yield the word sequence of every complete path, in arc order"""
    require_valid(lattice)
    words: list[str] = []
    stack = [iter(lattice.out_arcs(lattice.start))]
    # whether entering each stacked state (past the start) emitted a word
    pushed: list[bool] = []
    while stack:
        arc = next(stack[-1], None)
        if arc is None:
            stack.pop()
            if pushed and pushed.pop():
                words.pop()
            continue
        if arc.word is not None:
            words.append(arc.word)
        if arc.target == lattice.final:
            yield tuple(words)
            if arc.word is not None:
                words.pop()
            continue
        pushed.append(arc.word is not None)
        stack.append(iter(lattice.out_arcs(arc.target)))


def lattice_stats(lattice: Lattice) -> LatticeStats:
    """Nodes, arcs, paths and distinct unigram / bigram counts"""
    require_valid(lattice)
    order = topological_order(lattice)

    # words that can come next from each state, looking through epsilon arcs
    next_words: list[frozenset[str]] = [frozenset()] * lattice.num_states
    for state in reversed(order):
        found: set[str] = set()
        for arc in lattice.out_arcs(state):
            if arc.word is not None:
                found.add(arc.word)
            else:
                found |= next_words[arc.target]
        next_words[state] = frozenset(found)

    bigrams = {
        (arc.word, following)
        for arc in lattice.arcs
        if arc.word is not None
        for following in next_words[arc.target]
    }
    stats = LatticeStats(
        nodes=lattice.num_states,
        arcs=len(lattice.arcs),
        paths=suffix_counts(lattice)[lattice.start],
        distinct_unigrams=len(lattice.words),
        distinct_bigrams=len(bigrams),
    )
    logger.debug(f"Lattice stats: {stats}")
    return stats
