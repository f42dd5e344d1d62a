"""First-match rule selection with :rest partial matching"""
import logging
from typing import Iterator, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from models.grammar import GrammarRule
from models.semantics import SemanticNode, SemanticValue

logger = logging.getLogger(__name__)


class RealizationError(ValueError):
    """Raised when a semantic input cannot be turned into a lattice"""

    def __init__(self, message: str, concept: Optional[str] = None, roles: tuple[str, ...] = ()):
        super().__init__(message)
        self.concept = concept
        self.roles = roles


class MatchResult(BaseModel):
    """A selected rule with its slot bindings"""

    model_config = ConfigDict(frozen=True)

    rule: GrammarRule
    bindings: dict[str, SemanticValue]
    rest: frozenset[str]


def matches(rule: GrammarRule, node: SemanticNode) -> bool:
    """A rule matches when its non-rest roles are all present on the node"""
    return rule.required_roles <= set(node.role_names)


def bind(rule: GrammarRule, node: SemanticNode) -> MatchResult:
    """
    Bind a matching rule's slots to the node's fillers

    Unmatched roles go to the rest slot as a node with the same variable and
    concept carrying only those roles. Without a rest slot they are dropped.
    """
    bindings: dict[str, SemanticValue] = {}
    for pattern in rule.lhs:
        if not pattern.is_rest:
            bindings[pattern.slot] = node.role(pattern.role)
    residual = [name for name in node.role_names if name not in rule.required_roles]

    rest_slot = rule.rest_slot
    if rest_slot is not None:
        bindings[rest_slot] = node.with_roles(residual)
    elif residual:
        logger.warning(
            f"Rule {rule.position} has no :rest slot; dropping roles {residual} of {node.concept}"
        )
    return MatchResult(rule=rule, bindings=bindings, rest=frozenset(residual))


def iter_matches(node: SemanticNode, rules: Sequence[GrammarRule]) -> Iterator[MatchResult]:
    """Every matching rule in declared order"""
    for rule in rules:
        if matches(rule, node):
            yield bind(rule, node)


def match_rule(node: SemanticNode, rules: Sequence[GrammarRule]) -> MatchResult:
    """
    The first rule whose non-rest roles are a subset of the node's roles

    Raises:
        RealizationError: when no rule matches
    """
    if not rules:
        raise ValueError("no grammar rules to match against")
    result = next(iter_matches(node, rules), None)
    if result is None:
        roles = tuple(sorted(node.role_names))
        raise RealizationError(
            f"no grammar rule matches {node.concept} with roles {{{', '.join(roles)}}}",
            concept=node.concept.name,
            roles=roles,
        )
    logger.debug(f"{node.concept} {sorted(node.role_names)} matched rule {result.rule.position}")
    return result
