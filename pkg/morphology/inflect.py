"""Over-generating inflection with an exception table"""
import logging
from typing import Optional

from models.morphology import ExceptionTable, Feature, InflectionRequest
from morphology.patterns import patterns_for

logger = logging.getLogger(__name__)

DEFAULT_TABLE_LIMIT = 500


class ExceptionTableError(ValueError):
    """Raised for malformed exception table files"""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def inflect_overgen(
    request: InflectionRequest, exceptions: Optional[ExceptionTable] = None
) -> list[str]:
    """
    All plausible surface forms for a request

    An exception entry is returned as is. Otherwise every matching regular
    pattern is applied once and the distinct results are returned in pattern
    declaration order.
    """
    if exceptions is not None:
        irregular = exceptions.lookup(request.lemma, request.feature)
        if irregular is not None:
            return list(irregular)
    if request.feature is Feature.CITATION:
        return [request.lemma]

    forms: list[str] = []
    for pattern in patterns_for(request.pos, request.feature):
        if pattern.applies(request.lemma):
            form = pattern.apply(request.lemma)
            if form not in forms:
                forms.append(form)
    if not forms:
        # no declared pattern for this pos/feature pair
        forms.append(request.lemma)
    return forms


def load_exceptions(text: str, limit: int = DEFAULT_TABLE_LIMIT) -> ExceptionTable:
    """
    Parse 'lemma<TAB>feature<TAB>form[,form...]' lines

    Blank lines and lines starting with '#' are skipped.

    Raises:
        ExceptionTableError: on malformed lines or duplicate (lemma, feature) keys
    """
    entries: dict[tuple[str, Feature], tuple[str, ...]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in raw.split("\t")]
        if len(fields) != 3 or not all(fields):
            raise ExceptionTableError("expected lemma<TAB>feature<TAB>forms", number)
        lemma, feature_name, forms_field = fields
        try:
            feature = Feature(feature_name)
        except ValueError:
            raise ExceptionTableError(f"unknown feature {feature_name!r}", number) from None
        forms = tuple(f.strip() for f in forms_field.split(",") if f.strip())
        if not forms:
            raise ExceptionTableError("no surface forms", number)
        key = (lemma.lower(), feature)
        if key in entries:
            raise ExceptionTableError(f"duplicate entry for {lemma} {feature.value}", number)
        entries[key] = tuple(dict.fromkeys(forms))

    if len(entries) > limit:
        logger.warning(
            f"Exception table has {len(entries)} entries, more than the limit of {limit}"
        )
    logger.info(f"Loaded {len(entries)} exception entries")
    return ExceptionTable(entries=entries)
