"""Semantic input models"""
import sys
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator


class Concept(BaseModel):
    """An ontology concept such as |gun, arm|"""

    model_config = ConfigDict(frozen=True)

    name: str

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        value = value.strip("|")
        if not value.strip():
            raise ValueError("concept name must be non-empty")
        return sys.intern(value)

    def __str__(self) -> str:
        return f"|{self.name}|"


class RoleFiller(BaseModel):
    """One role keyword and its filler"""

    model_config = ConfigDict(frozen=True)

    keyword: str
    value: "SemanticValue"

    @field_validator("keyword")
    @classmethod
    def _canonical_keyword(cls, value: str) -> str:
        if not value.startswith(":") or len(value) < 2:
            raise ValueError(f"role keyword must start with ':': {value!r}")
        return value.lower()


class SemanticNode(BaseModel):
    """A concept instance with ordered roles"""

    model_config = ConfigDict(frozen=True)

    var: str
    concept: Concept
    roles: tuple[RoleFiller, ...] = ()

    @field_validator("roles")
    @classmethod
    def _distinct_roles(cls, value: tuple[RoleFiller, ...]) -> tuple[RoleFiller, ...]:
        seen = set()
        for role in value:
            if role.keyword in seen:
                raise ValueError(f"duplicate role keyword {role.keyword}")
            seen.add(role.keyword)
        return value

    @property
    def role_names(self) -> tuple[str, ...]:
        return tuple(role.keyword for role in self.roles)

    @property
    def is_leaf(self) -> bool:
        return not self.roles

    def role(self, keyword: str) -> Optional["SemanticValue"]:
        """Get the filler of a role, or None"""
        keyword = keyword.lower()
        for role in self.roles:
            if role.keyword == keyword:
                return role.value
        return None

    def with_roles(self, keywords: list[str]) -> "SemanticNode":
        """Copy of this node keeping only the given roles, in original order"""
        wanted = set(keywords)
        return SemanticNode(
            var=self.var,
            concept=self.concept,
            roles=tuple(role for role in self.roles if role.keyword in wanted),
        )

    def depth(self) -> int:
        children = [r.value for r in self.roles if isinstance(r.value, SemanticNode)]
        return 1 + max((child.depth() for child in children), default=0)


# An atomic filler such as SHE is kept as a plain symbol
SemanticValue = Union[SemanticNode, str]

RoleFiller.model_rebuild()
SemanticNode.model_rebuild()
