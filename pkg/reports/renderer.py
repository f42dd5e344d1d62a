"""Report template renderer"""
import logging
from typing import Any

from jinja2 import Environment, StrictUndefined, TemplateError

from models.reports import ReportTemplate

logger = logging.getLogger(__name__)


def thousands(value: int) -> str:
    """381440 -> 381,440"""
    return f"{value:,}"


def score(value: float) -> str:
    return f"{value:.6f}"


class ReportRenderer:
    """Renders report templates to plain text"""

    def __init__(self):
        # plain-text output; nothing to escape
        self.env = Environment(autoescape=False, keep_trailing_newline=True, undefined=StrictUndefined)
        self.env.filters["thousands"] = thousands
        self.env.filters["score"] = score

    def render(self, report: ReportTemplate, variables: dict[str, Any]) -> str:
        """
        Render a report template

        Args:
            report: The report template to render
            variables: Template variables; declared defaults fill the gaps

        Returns:
            Rendered text

        Raises:
            ValueError: If required variables are missing or a value has the wrong type
            TemplateError: If template rendering fails
        """
        if not report.validate_variables(variables):
            missing = set(report.get_required_variables()) - set(variables.keys())
            raise ValueError(f"Missing required variables: {missing}")
        wrong = report.type_errors(variables)
        if wrong:
            raise ValueError(f"Variables of the wrong type for {report.id}: {wrong}")

        values = {**report.get_defaults(), **variables}
        try:
            template = self.env.from_string(report.template)
            rendered = template.render(**values)
            logger.debug(f"Rendered report {report.id}")
            return rendered
        except TemplateError as e:
            logger.error(f"Failed to render report {report.id}: {e}")
            raise

    def render_string(self, template_string: str, variables: dict[str, Any]) -> str:
        """Render a template string directly"""
        try:
            template = self.env.from_string(template_string)
            return template.render(**variables)
        except TemplateError as e:
            logger.error(f"Failed to render template: {e}")
            raise
