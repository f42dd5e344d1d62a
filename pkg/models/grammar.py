"""Grammar, lexicon and e-structure models"""
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from lattice.core import Lattice

REST_ROLE = ":rest"


class Wrd(BaseModel):
    """A single word"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["wrd"] = "wrd"
    word: str


class Eps(BaseModel):
    """The empty string"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["eps"] = "eps"


class Seq(BaseModel):
    """Sequential composition"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["seq"] = "seq"
    parts: tuple["LatticeExpr", ...] = Field(min_length=1)


class Or(BaseModel):
    """Branching over alternatives"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["or"] = "or"
    alternatives: tuple["LatticeExpr", ...] = Field(min_length=1)


class SlotRef(BaseModel):
    """The lattice a slot's e-structure holds for one category"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["slot"] = "slot"
    slot: str
    category: str


LatticeExpr = Annotated[Union[Wrd, Eps, Seq, Or, SlotRef], Field(discriminator="kind")]

Seq.model_rebuild()
Or.model_rebuild()


def slot_refs(expr: LatticeExpr) -> list[SlotRef]:
    """All slot references inside an expression"""
    if isinstance(expr, SlotRef):
        return [expr]
    if isinstance(expr, Seq):
        return [ref for part in expr.parts for ref in slot_refs(part)]
    if isinstance(expr, Or):
        return [ref for alt in expr.alternatives for ref in slot_refs(alt)]
    return []


class SlotPattern(BaseModel):
    """One (slot variable, role keyword) pair of a rule's left-hand side"""

    model_config = ConfigDict(frozen=True)

    slot: str
    role: str

    @field_validator("role")
    @classmethod
    def _lower_role(cls, value: str) -> str:
        return value.lower()

    @property
    def is_rest(self) -> bool:
        return self.role == REST_ROLE


class RuleAlternative(BaseModel):
    """One way of building a category"""

    model_config = ConfigDict(frozen=True)

    category: str
    expr: LatticeExpr


class GrammarRule(BaseModel):
    """A semantic feature pattern with its English renderings"""

    model_config = ConfigDict(frozen=True)

    lhs: tuple[SlotPattern, ...]
    rhs: tuple[RuleAlternative, ...] = Field(min_length=1)
    position: int = 0

    @model_validator(mode="after")
    def _check_slots(self) -> "GrammarRule":
        slots = [p.slot for p in self.lhs]
        if len(set(slots)) != len(slots):
            raise ValueError(f"duplicate slot variables in {slots}")
        if sum(p.is_rest for p in self.lhs) > 1:
            raise ValueError("at most one :rest slot per rule")
        if not any(not p.is_rest for p in self.lhs):
            raise ValueError("a rule must match at least one role besides :rest")
        declared = set(slots)
        for alternative in self.rhs:
            for ref in slot_refs(alternative.expr):
                if ref.slot not in declared:
                    raise ValueError(f"slot {ref.slot} is not bound on the left-hand side")
        return self

    @property
    def rest_slot(self) -> Optional[str]:
        for pattern in self.lhs:
            if pattern.is_rest:
                return pattern.slot
        return None

    @property
    def required_roles(self) -> frozenset[str]:
        return frozenset(p.role for p in self.lhs if not p.is_rest)


class Grammar(BaseModel):
    """Ordered rules over a declared category inventory"""

    model_config = ConfigDict(frozen=True)

    categories: tuple[str, ...]
    rules: tuple[GrammarRule, ...]

    @model_validator(mode="after")
    def _check_categories(self) -> "Grammar":
        known = set(self.categories)
        for rule in self.rules:
            for alternative in rule.rhs:
                if alternative.category not in known:
                    raise ValueError(f"undeclared category {alternative.category!r}")
                for ref in slot_refs(alternative.expr):
                    if ref.category not in known:
                        raise ValueError(f"undeclared category {ref.category!r} in ({ref.slot} ...)")
        return self


class LexicalItem(BaseModel):
    """One rendering of a concept: category, citation form and morphology tag"""

    model_config = ConfigDict(frozen=True)

    category: str
    citation: str = Field(min_length=1)
    pos: str


class LexiconEntry(BaseModel):
    """All renderings of one concept, in preference order"""

    model_config = ConfigDict(frozen=True)

    concept: str
    items: tuple[LexicalItem, ...] = Field(min_length=1)


class Lexicon(BaseModel):
    """Concept name to lexicon entry"""

    model_config = ConfigDict(frozen=True)

    entries: dict[str, LexiconEntry] = Field(default_factory=dict)

    def lookup(self, name: str) -> Optional[LexiconEntry]:
        entry = self.entries.get(name)
        if entry is None:
            lowered = name.lower()
            for key, candidate in self.entries.items():
                if key.lower() == lowered:
                    return candidate
        return entry


class EStructure(BaseModel):
    """Distinct syntactic categories paired with word lattices"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    entries: dict[str, Lattice] = Field(default_factory=dict)

    def get(self, category: str) -> Optional[Lattice]:
        return self.entries.get(category)

    @property
    def categories(self) -> list[str]:
        return list(self.entries)
