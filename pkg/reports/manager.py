"""Output block templates bundled with the package"""
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from models.reports import ReportTemplate

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).parent / "templates"

# every block the command line prints
CLI_BLOCKS = frozenset(
    {
        "extraction",
        "input",
        "lattice_created",
        "lattice_stats",
        "model_trained",
        "ranking",
        "scores",
        "validation",
    }
)


class ReportManager:
    """Loads output block templates, one JSON file per block id"""

    def __init__(self, templates_dir: Union[str, Path] = TEMPLATES_DIR):
        self.templates_dir = Path(templates_dir)
        self.reports: dict[str, ReportTemplate] = {}
        self._load_reports()

    def _load_reports(self):
        if not self.templates_dir.exists():
            logger.warning(f"Report templates directory not found: {self.templates_dir}")
            return

        for report_file in sorted(self.templates_dir.glob("*.json")):
            try:
                report = ReportTemplate.model_validate_json(report_file.read_text(encoding="utf-8"))
            except (OSError, ValidationError) as e:
                logger.error(f"Failed to load report template {report_file.name}: {e}")
                continue
            if report.id != report_file.stem:
                logger.warning(f"Report template {report.id} is stored as {report_file.name}")
            if report.id in self.reports:
                logger.warning(f"Report template {report.id} in {report_file.name} replaces an earlier one")
            self.reports[report.id] = report
            logger.debug(f"Loaded report template: {report.id}")

        missing = CLI_BLOCKS - self.reports.keys()
        if missing:
            logger.warning(f"No template for output blocks {sorted(missing)} in {self.templates_dir}")

    def require(self, report_id: str) -> ReportTemplate:
        """Template for a block id; KeyError when it was not loaded"""
        report = self.reports.get(report_id)
        if report is None:
            raise KeyError(f"Unknown report template: {report_id}")
        return report

    def get_reports_by_category(self, category: str) -> list[ReportTemplate]:
        """Get all report templates in a category"""
        return [r for r in self.reports.values() if r.category == category]
