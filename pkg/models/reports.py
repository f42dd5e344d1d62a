"""Output block template models"""
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator

_PYTHON_TYPES: dict[str, tuple[type, ...]] = {
    "string": (str,),
    "number": (int, float),
    "boolean": (bool,),
    "list": (list, tuple),
    "object": (dict, BaseModel),
}


class ReportVariableType(str, Enum):
    """Types of report variables"""

    STRING = "string"
    NUMBER = "number"
    BOOLEAN = "boolean"
    LIST = "list"
    OBJECT = "object"

    def accepts(self, value: Any) -> bool:
        # bool is an int subclass but never a count
        if self is ReportVariableType.NUMBER and isinstance(value, bool):
            return False
        return isinstance(value, _PYTHON_TYPES[self.value])


class ReportVariable(BaseModel):
    """A variable filled in by the command producing the block"""

    name: str
    type: ReportVariableType
    description: str
    default: Optional[Any] = None
    required: bool = False


class ReportTemplate(BaseModel):
    """One output block: Jinja2 text plus its declared variables"""

    id: str
    name: str
    description: str
    template: str
    variables: list[ReportVariable] = Field(default_factory=list)
    category: str = "general"
    version: str = "1.0.0"

    @field_validator("variables")
    @classmethod
    def _unique_names(cls, variables: list[ReportVariable]) -> list[ReportVariable]:
        names = [v.name for v in variables]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValueError(f"variables declared twice: {duplicates}")
        return variables

    def get_required_variables(self) -> list[str]:
        """Get list of required variable names"""
        return [var.name for var in self.variables if var.required]

    def get_defaults(self) -> dict[str, Any]:
        """Defaults of the optional variables"""
        return {var.name: var.default for var in self.variables if not var.required}

    def validate_variables(self, variables: dict[str, Any]) -> bool:
        """Validate that all required variables are provided"""
        required = set(self.get_required_variables())
        provided = set(variables.keys())
        return required.issubset(provided)

    def type_errors(self, variables: dict[str, Any]) -> list[str]:
        """Names of declared variables given a value of the wrong type; None always passes"""
        return [
            var.name
            for var in self.variables
            if variables.get(var.name) is not None and not var.type.accepts(variables[var.name])
        ]
