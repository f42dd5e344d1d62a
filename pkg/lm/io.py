"""Versioned text format for n-gram models"""
import hashlib
import json
import logging
import re

from pydantic import ValidationError

from lm.good_turing import GoodTuringEstimate
from lm.model import NGramModel, NGramTable
from lm.tokenize import NAME, NUM

logger = logging.getLogger(__name__)

VERSION = 1
_HEADER = re.compile(r"^NGM v(\d+) order=(\d+) corpus_tokens=(\d+)$")
_SECTION = re.compile(r"^\\(\d+)-grams$")

CLASS_MAP = {
    NAME: "capitalized word not at sentence start, or sentence-initial and unknown",
    NUM: "token containing a digit",
}


class ModelFormatError(ValueError):
    """Raised for unreadable, truncated or mismatched model files"""


def _digest(body: str) -> str:
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


def write_model(model: NGramModel) -> str:
    """Serialize a model; output depends only on the model's contents"""
    lines = [f"NGM v{VERSION} order={model.order} corpus_tokens={model.corpus_tokens}"]
    meta = dict(model.metadata, floor=model.floor)
    lines.append(f"META\t{json.dumps(meta, sort_keys=True)}")
    for m in range(1, model.order + 1):
        table = model.tables[m]
        lines.append(f"ESTIMATE\t{m}\t{table.estimate.model_dump_json()}")
    for m in range(1, model.order + 1):
        table = model.tables[m]
        lines.append(f"\\{m}-grams")
        for ngram in sorted(table.counts):
            lines.append(f"{' '.join(ngram)}\t{table.counts[ngram]}\t{table.logprobs[ngram]!r}")
    for m in range(1, model.order + 1):
        for context in sorted(model.tables[m].unseen):
            lines.append(f"UNSEEN\t{' '.join(context)}\t{model.tables[m].unseen[context]!r}")
    for symbol, description in sorted(CLASS_MAP.items()):
        lines.append(f"CLASS\t{symbol}\t{description}")
    body = "\n".join(lines) + "\n"
    return body + f"CHECKSUM\t{_digest(body)}\n"


def read_model(text: str) -> NGramModel:
    """
    Parse a model file

    Raises:
        ModelFormatError: on a version mismatch, a missing or wrong checksum,
            or malformed lines
    """
    lines = text.splitlines()
    if not lines:
        raise ModelFormatError("empty model file")
    header = _HEADER.match(lines[0])
    if header is None:
        raise ModelFormatError(f"not a model file: {lines[0][:40]!r}")
    version, order, corpus_tokens = (int(g) for g in header.groups())
    if version != VERSION:
        raise ModelFormatError(f"unsupported model version {version}, expected {VERSION}")

    last = lines[-1].split("\t")
    if len(last) != 2 or last[0] != "CHECKSUM":
        raise ModelFormatError("checksum line missing; file is truncated")
    body = "\n".join(lines[:-1]) + "\n"
    if _digest(body) != last[1]:
        raise ModelFormatError("checksum mismatch; file is corrupted")

    metadata: dict = {}
    estimates: dict[int, GoodTuringEstimate] = {}
    tables = {m: NGramTable(order=m) for m in range(1, order + 1)}
    section = 0
    for number, line in enumerate(lines[1:-1], start=2):
        try:
            if line.startswith("META\t"):
                metadata = json.loads(line.split("\t", 1)[1])
            elif line.startswith("ESTIMATE\t"):
                _, m, payload = line.split("\t", 2)
                estimates[int(m)] = GoodTuringEstimate.model_validate_json(payload)
            elif line.startswith("UNSEEN\t"):
                _, context, mass = line.split("\t")
                key = tuple(context.split())
                tables[len(key) + 1].unseen[key] = float(mass)
            elif line.startswith("CLASS\t"):
                continue
            elif _SECTION.match(line):
                section = int(_SECTION.match(line).group(1))
                if section not in tables:
                    raise ModelFormatError(f"line {number}: section {section} exceeds order {order}")
            elif section:
                ngram_field, count, logprob = line.split("\t")
                ngram = tuple(ngram_field.split())
                if len(ngram) != section:
                    raise ModelFormatError(f"line {number}: expected a {section}-gram")
                tables[section].counts[ngram] = int(count)
                tables[section].logprobs[ngram] = float(logprob)
            else:
                raise ModelFormatError(f"line {number}: unexpected line")
        except (ValueError, KeyError, ValidationError) as e:
            if isinstance(e, ModelFormatError):
                raise
            raise ModelFormatError(f"line {number}: {e}") from e

    for m, table in tables.items():
        table.estimate = estimates.get(m)
    floor = metadata.pop("floor", 1e-6)
    try:
        model = NGramModel(
            order=order, corpus_tokens=corpus_tokens, floor=floor, tables=tables, metadata=metadata
        )
    except ValidationError as e:
        raise ModelFormatError(str(e)) from e
    logger.info(f"Read order-{order} model with {len(model.vocabulary)} words")
    return model
