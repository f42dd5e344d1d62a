"""Grammar and lexicon file readers"""
import logging
from typing import Optional

from pydantic import ValidationError

from lattice.core import EPSILON, check_word
from models.grammar import (
    Eps,
    Grammar,
    GrammarRule,
    LatticeExpr,
    LexicalItem,
    Lexicon,
    LexiconEntry,
    Or,
    RuleAlternative,
    Seq,
    SlotPattern,
    SlotRef,
    Wrd,
    slot_refs,
)
from semantics.tokens import Expr, Form, Token, TokenizeError, TokenKind, line_of, read_forms

logger = logging.getLogger(__name__)

ARROW = "->"
_OR_HEADS = {"or", "*or*"}


class GrammarFormatError(ValueError):
    """Raised for malformed grammar or lexicon files"""

    def __init__(self, message: str, position: int, source: str = "<grammar>", line: int = 0):
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")
        self.position = position
        self.source = source
        self.line = line


class _Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source

    def error(self, message: str, position: int) -> GrammarFormatError:
        return GrammarFormatError(message, position, self.source, line_of(self.text, position))

    def forms(self) -> list[Form]:
        try:
            return read_forms(self.text)
        except TokenizeError as e:
            raise self.error(str(e).rsplit(" at position", 1)[0], e.position) from e

    def symbol(self, item: Expr, what: str) -> str:
        if not isinstance(item, Token) or item.kind is not TokenKind.SYMBOL:
            raise self.error(f"expected {what}", item.position)
        return item.value

    def expr(self, item: Expr) -> LatticeExpr:
        if isinstance(item, Token):
            if item.kind is TokenKind.SYMBOL and item.value == EPSILON:
                return Eps()
            raise self.error(f"unexpected atom {item.value!r} in rule body", item.position)
        if not item.items:
            raise self.error("empty expression", item.position)
        head = self.symbol(item.items[0], "expression keyword or slot variable")
        args = item.items[1:]
        keyword = head.lower()
        if keyword == "seq":
            if not args:
                raise self.error("seq needs at least one part", item.position)
            return Seq(parts=tuple(self.expr(a) for a in args))
        if keyword in _OR_HEADS:
            if not args:
                raise self.error(f"{head} needs at least one alternative", item.position)
            return Or(alternatives=tuple(self.expr(a) for a in args))
        if keyword == "wrd":
            if len(args) != 1 or not isinstance(args[0], Token) or args[0].kind not in (
                TokenKind.STRING,
                TokenKind.SYMBOL,
            ):
                raise self.error("wrd takes exactly one word", item.position)
            try:
                return Wrd(word=check_word(args[0].value))
            except ValueError as e:
                raise self.error(str(e), args[0].position) from e
        return self.slot_ref(head, args, item.position)

    def slot_ref(self, slot: str, args: tuple[Expr, ...], position: int) -> LatticeExpr:
        if len(args) != 1:
            raise self.error(f"slot reference ({slot} ...) takes one category", position)
        target = args[0]
        if isinstance(target, Token):
            return SlotRef(slot=slot, category=self.symbol(target, "category"))
        # (x2 (*OR* inf inf-raise))
        if not target.items or self.symbol(target.items[0], "*OR*").lower() not in _OR_HEADS:
            raise self.error("category alternation must be (*OR* cat ...)", target.position)
        categories = [self.symbol(c, "category") for c in target.items[1:]]
        if not categories:
            raise self.error("empty category alternation", target.position)
        refs = tuple(SlotRef(slot=slot, category=c) for c in categories)
        return refs[0] if len(refs) == 1 else Or(alternatives=refs)

    def rule(self, form: Form, index: int) -> GrammarRule:
        arrows = [
            i for i, item in enumerate(form.items)
            if isinstance(item, Token) and item.kind is TokenKind.SYMBOL and item.value == ARROW
        ]
        if len(arrows) != 1:
            raise self.error(f"rule must contain exactly one '{ARROW}'", form.position)
        split = arrows[0]

        lhs: list[SlotPattern] = []
        for pair in form.items[:split]:
            if not isinstance(pair, Form) or len(pair.items) != 2:
                raise self.error("left-hand side entries look like (x1 :role)", pair.position)
            slot = self.symbol(pair.items[0], "slot variable")
            role = self.symbol(pair.items[1], "role keyword")
            if not role.startswith(":"):
                raise self.error(f"role keyword must start with ':': {role}", pair.items[1].position)
            lhs.append(SlotPattern(slot=slot, role=role))

        rhs: list[RuleAlternative] = []
        for alternative in form.items[split + 1 :]:
            if not isinstance(alternative, Form) or len(alternative.items) != 2:
                raise self.error("right-hand side entries look like (category expr)", alternative.position)
            category = self.symbol(alternative.items[0], "category")
            rhs.append(RuleAlternative(category=category, expr=self.expr(alternative.items[1])))

        try:
            return GrammarRule(lhs=tuple(lhs), rhs=tuple(rhs), position=index)
        except ValidationError as e:
            message = e.errors()[0]["msg"].removeprefix("Value error, ")
            raise self.error(message, form.position) from e


def load_grammar(text: str, source: str = "<grammar>") -> Grammar:
    """
    Parse a grammar file

    The first form declares the category inventory, `(categories s np ...)`.
    Every following form is one rule:

        ((x1 :agent) (x2 :patient) (x3 :rest)
         -> (s (seq (x1 np) (x3 v-tensed) (x2 np)))
            (inf (seq (wrd "for") (x1 np) (wrd "to") (x3 v) (x2 np))))

    Raises:
        GrammarFormatError: on syntax errors, unknown categories or bad slots
    """
    reader = _Reader(text, source)
    forms = reader.forms()
    if not forms:
        raise GrammarFormatError("empty grammar", 0, source)

    header = forms[0]
    if not header.items or not (
        isinstance(header.items[0], Token) and header.items[0].value.lower() == "categories"
    ):
        raise reader.error("grammar must start with (categories ...)", header.position)
    categories = tuple(reader.symbol(item, "category") for item in header.items[1:])
    if not categories:
        raise reader.error("no categories declared", header.position)
    known = set(categories)

    rules: list[GrammarRule] = []
    for index, form in enumerate(forms[1:]):
        rule = reader.rule(form, index)
        for alternative in rule.rhs:
            if alternative.category not in known:
                raise reader.error(f"undeclared category {alternative.category!r}", form.position)
            for ref in slot_refs(alternative.expr):
                if ref.category not in known:
                    raise reader.error(
                        f"undeclared category {ref.category!r} in ({ref.slot} ...)", form.position
                    )
        rules.append(rule)

    if not rules:
        raise reader.error("grammar has no rules", header.position)
    logger.info(f"Loaded {len(rules)} rules over {len(categories)} categories from {source}")
    return Grammar(categories=categories, rules=tuple(rules))


def load_lexicon(
    text: str, source: str = "<lexicon>", categories: Optional[tuple[str, ...]] = None
) -> Lexicon:
    """
    Parse a lexicon file of `(|concept| (<cat> "<citation>" <pos>) ...)` forms

    Atomic fillers are keyed by their symbol: `(SHE (np "she" pron) (np "her" pron))`.

    Args:
        text: file contents
        source: name used in error messages
        categories: when given, every entry's category must be one of them

    Raises:
        GrammarFormatError: on malformed entries, duplicate concepts or unknown categories
    """
    reader = _Reader(text, source)
    entries: dict[str, LexiconEntry] = {}
    known = set(categories) if categories is not None else None
    for form in reader.forms():
        if not form.items:
            raise reader.error("empty lexicon entry", form.position)
        head = form.items[0]
        if not isinstance(head, Token) or head.kind not in (TokenKind.CONCEPT, TokenKind.SYMBOL):
            raise reader.error("lexicon entry must start with a concept", form.position)
        concept = head.value.strip()
        if not concept:
            raise reader.error("empty concept name", head.position)
        if concept in entries:
            raise reader.error(f"duplicate lexicon entry for {concept}", head.position)

        items: list[LexicalItem] = []
        for item in form.items[1:]:
            if not isinstance(item, Form) or len(item.items) != 3:
                raise reader.error('expected (<category> "<citation>" <pos>)', item.position)
            category = reader.symbol(item.items[0], "category")
            citation = item.items[1]
            if not isinstance(citation, Token) or citation.kind is not TokenKind.STRING:
                raise reader.error("citation form must be a string", citation.position)
            if not citation.value.split():
                raise reader.error("empty citation form", citation.position)
            if known is not None and category not in known:
                raise reader.error(f"undeclared category {category!r}", item.position)
            pos = reader.symbol(item.items[2], "part-of-speech tag")
            items.append(LexicalItem(category=category, citation=citation.value, pos=pos.lower()))
        if not items:
            raise reader.error(f"lexicon entry {concept} has no renderings", form.position)
        entries[concept] = LexiconEntry(concept=concept, items=tuple(items))

    logger.info(f"Loaded {len(entries)} lexicon entries from {source}")
    return Lexicon(entries=entries)
