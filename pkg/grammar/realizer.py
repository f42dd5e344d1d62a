"""Bottom-up construction of e-structures and word lattices"""
import logging
import os
from typing import Optional

from grammar.matcher import RealizationError, iter_matches
from lattice.analysis import require_valid
from lattice.core import Lattice, epsilon, or_, seq, wrd
from models.grammar import (
    Eps,
    EStructure,
    Grammar,
    LatticeExpr,
    LexicalItem,
    Lexicon,
    Or,
    Seq,
    SlotRef,
    Wrd,
)
from models.morphology import ExceptionTable, Feature, InflectionRequest, PartOfSpeech
from models.semantics import SemanticNode, SemanticValue
from morphology.inflect import inflect_overgen

logger = logging.getLogger(__name__)

DEFAULT_GOAL = "s"

# features produced by a bare part-of-speech tag
_DEFAULT_FEATURES = {
    PartOfSpeech.NOUN: (Feature.CITATION, Feature.PLURAL),
    PartOfSpeech.VERB: (Feature.CITATION,),
}


def parse_pos_tag(tag: str) -> tuple[Optional[PartOfSpeech], tuple[Feature, ...]]:
    """
    Split a lexicon tag such as 'verb/past+third-singular'

    Returns:
        The part of speech and features to generate; (None, (citation,)) for
        tags the inflector does not handle
    """
    name, _, features = tag.partition("/")
    try:
        pos = PartOfSpeech(name)
    except ValueError:
        return None, (Feature.CITATION,)
    if not features:
        return pos, _DEFAULT_FEATURES[pos]
    try:
        return pos, tuple(Feature(f) for f in features.split("+"))
    except ValueError as e:
        raise RealizationError(f"unknown feature in part-of-speech tag {tag!r}") from e


def _restore_case(form: str, head: str) -> str:
    """Give an inflected form the casing of the citation over their shared prefix"""
    shared = len(os.path.commonprefix([form, head.lower()]))
    return head[:shared] + form[shared:]


def item_lattice(item: LexicalItem, exceptions: Optional[ExceptionTable] = None) -> Lattice:
    """Lattice of every surface form of one lexical item; only the last word is inflected"""
    *modifiers, head = item.citation.split()
    pos, features = parse_pos_tag(item.pos)

    forms: list[str] = []
    for feature in features:
        if pos is None:
            candidates = [head]
        else:
            request = InflectionRequest(lemma=head.lower(), pos=pos, feature=feature)
            candidates = inflect_overgen(request, exceptions)
            if head != head.lower():
                candidates = [_restore_case(c, head) for c in candidates]
        for form in candidates:
            if form not in forms:
                forms.append(form)
    return seq([wrd(w) for w in modifiers] + [or_([wrd(f) for f in forms])])


def leaf_estructure(
    name: str, lexicon: Lexicon, exceptions: Optional[ExceptionTable] = None
) -> EStructure:
    """
    E-structure of a concept or atomic filler straight from the lexicon

    A concept like 'gun, arm' with no entry of its own is realized through the
    entries of each listed synonym, in order.

    Raises:
        RealizationError: when the lexicon has no entry
    """
    entry = lexicon.lookup(name)
    if entry is not None:
        items = list(entry.items)
    else:
        synonyms = [part.strip() for part in name.split(",") if part.strip()]
        entries = [lexicon.lookup(s) for s in synonyms] if len(synonyms) > 1 else []
        if not entries or any(e is None for e in entries):
            raise RealizationError(f"no lexicon entry for |{name}|", concept=name)
        items = [item for e in entries for item in e.items]

    grouped: dict[str, list[Lattice]] = {}
    for item in items:
        grouped.setdefault(item.category, []).append(item_lattice(item, exceptions))
    return EStructure(entries={category: or_(lattices) for category, lattices in grouped.items()})


def eval_expr(expr: LatticeExpr, estructs: dict[str, EStructure]) -> Optional[Lattice]:
    """
    Evaluate a rule body against the slots' e-structures

    Returns:
        The lattice, or None when the expression fails. A Seq fails when any part
        fails; an Or drops failing branches and fails only when all of them do.
    """
    if isinstance(expr, Wrd):
        return wrd(expr.word)
    if isinstance(expr, Eps):
        return epsilon()
    if isinstance(expr, SlotRef):
        estructure = estructs.get(expr.slot)
        if estructure is None:
            return None
        return estructure.get(expr.category)
    if isinstance(expr, Seq):
        parts = []
        for part in expr.parts:
            lattice = eval_expr(part, estructs)
            if lattice is None:
                return None
            parts.append(lattice)
        return seq(parts)
    if isinstance(expr, Or):
        branches = [eval_expr(alt, estructs) for alt in expr.alternatives]
        branches = [b for b in branches if b is not None]
        return or_(branches) if branches else None
    raise TypeError(f"unknown expression {expr!r}")


class Realizer:
    """Builds e-structures for one grammar, lexicon and exception table"""

    def __init__(
        self,
        grammar: Grammar,
        lexicon: Lexicon,
        exceptions: Optional[ExceptionTable] = None,
    ):
        self.grammar = grammar
        self.lexicon = lexicon
        self.exceptions = exceptions
        # children are revisited when a later rule is tried
        self._built: dict[SemanticValue, EStructure] = {}

    def value_estructure(self, value: SemanticValue) -> EStructure:
        if value not in self._built:
            if isinstance(value, str):
                self._built[value] = leaf_estructure(value, self.lexicon, self.exceptions)
            else:
                self._built[value] = self.build(value)
        return self._built[value]

    def build(self, node: SemanticNode) -> EStructure:
        """E-structure of a node, children first"""
        if node.is_leaf:
            return leaf_estructure(node.concept.name, self.lexicon, self.exceptions)

        for match in iter_matches(node, self.grammar.rules):
            rest_slot = match.rule.rest_slot
            estructs = {slot: self.value_estructure(v) for slot, v in match.bindings.items()}

            grouped: dict[str, list[Lattice]] = {}
            for alternative in match.rule.rhs:
                lattice = eval_expr(alternative.expr, estructs)
                if lattice is None:
                    logger.debug(
                        f"Rule {match.rule.position} alternative {alternative.category} failed for {node.concept}"
                    )
                    continue
                grouped.setdefault(alternative.category, []).append(lattice)

            # a recursively matched :rest contributes its own categories after the rule's
            if rest_slot is not None and match.rest:
                for category, lattice in estructs[rest_slot].entries.items():
                    grouped.setdefault(category, []).append(lattice)

            if grouped:
                return EStructure(
                    entries={category: or_(lattices) for category, lattices in grouped.items()}
                )
            logger.info(f"Every alternative of rule {match.rule.position} failed for {node.concept}")

        roles = tuple(sorted(node.role_names))
        raise RealizationError(
            f"no grammar rule realizes {node.concept} with roles {{{', '.join(roles)}}}",
            concept=node.concept.name,
            roles=roles,
        )


def build_estructure(
    node: SemanticNode,
    grammar: Grammar,
    lexicon: Lexicon,
    exceptions: Optional[ExceptionTable] = None,
) -> EStructure:
    """Compute the e-structure of a semantic node bottom-up"""
    return Realizer(grammar, lexicon, exceptions).build(node)


def realize(
    node: SemanticNode,
    grammar: Grammar,
    lexicon: Lexicon,
    goal: str = DEFAULT_GOAL,
    exceptions: Optional[ExceptionTable] = None,
) -> Lattice:
    """
    Word lattice of the goal category for a semantic input

    Raises:
        RealizationError: when the input cannot be realized as the goal category
    """
    estructure = build_estructure(node, grammar, lexicon, exceptions)
    lattice = estructure.get(goal)
    if lattice is None:
        raise RealizationError(
            f"{node.concept} realizes only {estructure.categories}, not {goal}",
            concept=node.concept.name,
        )
    require_valid(lattice)
    logger.info(f"Realized {node.concept} as {goal}: {lattice.num_states} states, {len(lattice.arcs)} arcs")
    return lattice
