"""Derive the DEFAULT sentence straight from grammar and lexicon, without building lattices"""
import argparse
import sys
from pathlib import Path
from typing import Optional

# Add main directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))
from grammar.loader import load_grammar, load_lexicon
from grammar.matcher import RealizationError, iter_matches
from grammar.realizer import parse_pos_tag
from models.grammar import Eps, Grammar, LatticeExpr, Lexicon, Or, Seq, SlotRef, Wrd
from models.morphology import ExceptionTable, InflectionRequest
from models.semantics import SemanticNode, SemanticValue
from morphology.inflect import inflect_overgen, load_exceptions
from semantics.spl import parse_spl

Words = list[str]


def _first_form(citation: str, pos_tag: str, exceptions: Optional[ExceptionTable]) -> Words:
    *modifiers, head = citation.split()
    pos, features = parse_pos_tag(pos_tag)
    if pos is None:
        return modifiers + [head]
    form = inflect_overgen(InflectionRequest(lemma=head.lower(), pos=pos, feature=features[0]), exceptions)[0]
    if head[0].isupper():
        form = form[0].upper() + form[1:]
    return modifiers + [form]


def _leaf(name: str, lexicon: Lexicon, exceptions: Optional[ExceptionTable]) -> dict[str, Words]:
    entry = lexicon.lookup(name)
    if entry is not None:
        items = list(entry.items)
    else:
        parts = [p.strip() for p in name.split(",") if p.strip()]
        entries = [lexicon.lookup(p) for p in parts]
        if len(parts) < 2 or any(e is None for e in entries):
            raise RealizationError(f"no lexicon entry for |{name}|", concept=name)
        items = [item for e in entries for item in e.items]
    first: dict[str, Words] = {}
    for item in items:
        first.setdefault(item.category, _first_form(item.citation, item.pos, exceptions))
    return first


def _expr(expr: LatticeExpr, slots: dict[str, dict[str, Words]]) -> Optional[Words]:
    if isinstance(expr, Wrd):
        return [expr.word]
    if isinstance(expr, Eps):
        return []
    if isinstance(expr, SlotRef):
        return slots.get(expr.slot, {}).get(expr.category)
    if isinstance(expr, Seq):
        words: Words = []
        for part in expr.parts:
            sub = _expr(part, slots)
            if sub is None:
                return None
            words += sub
        return words
    for alternative in expr.alternatives:
        sub = _expr(alternative, slots)
        if sub is not None:
            return sub
    return None


def _value(value: SemanticValue, grammar: Grammar, lexicon: Lexicon, exceptions) -> dict[str, Words]:
    if isinstance(value, str):
        return _leaf(value, lexicon, exceptions)
    return _node(value, grammar, lexicon, exceptions)


def _node(node: SemanticNode, grammar: Grammar, lexicon: Lexicon, exceptions) -> dict[str, Words]:
    if node.is_leaf:
        return _leaf(node.concept.name, lexicon, exceptions)
    for match in iter_matches(node, grammar.rules):
        slots = {slot: _value(v, grammar, lexicon, exceptions) for slot, v in match.bindings.items()}
        first: dict[str, Words] = {}
        for alternative in match.rule.rhs:
            if alternative.category not in first:
                words = _expr(alternative.expr, slots)
                if words is not None:
                    first[alternative.category] = words
        rest_slot = match.rule.rest_slot
        if rest_slot is not None and match.rest:
            for category, words in slots[rest_slot].items():
                first.setdefault(category, words)
        if first:
            return first
    raise RealizationError(f"no grammar rule realizes {node.concept}", concept=node.concept.name)


def first_alternative(
    node: SemanticNode,
    grammar: Grammar,
    lexicon: Lexicon,
    goal: str = "s",
    exceptions: Optional[ExceptionTable] = None,
) -> tuple[str, ...]:
    """Words chosen by taking the first rule alternative, synonym and inflection everywhere"""
    estructure = _node(node, grammar, lexicon, exceptions)
    if goal not in estructure:
        raise RealizationError(f"{node.concept} does not realize {goal}", concept=node.concept.name)
    return tuple(estructure[goal])


def main():
    parser = argparse.ArgumentParser(description="First-alternative derivation of an SPL input")
    parser.add_argument("--grammar", type=Path, required=True)
    parser.add_argument("--lexicon", type=Path, required=True)
    parser.add_argument("--input", type=Path, required=True)
    parser.add_argument("--exceptions", type=Path)
    parser.add_argument("--goal", default="s")
    args = parser.parse_args()

    grammar = load_grammar(args.grammar.read_text(encoding="utf-8"), source=str(args.grammar))
    lexicon = load_lexicon(
        args.lexicon.read_text(encoding="utf-8"), source=str(args.lexicon), categories=grammar.categories
    )
    exceptions = load_exceptions(args.exceptions.read_text(encoding="utf-8")) if args.exceptions else None
    node = parse_spl(args.input.read_text(encoding="utf-8"))
    print(" ".join(first_alternative(node, grammar, lexicon, args.goal, exceptions)))


if __name__ == "__main__":
    main()
