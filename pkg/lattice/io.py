"""Line-based lattice file format"""
import logging
from typing import Optional

from lattice.analysis import InvalidLatticeError, validate
from lattice.core import EPSILON, Arc, Lattice, check_word

logger = logging.getLogger(__name__)

HEADER = "LATTICE v1"


class LatticeFormatError(ValueError):
    """Raised for syntax errors in a lattice file"""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def write_lattice(lattice: Lattice) -> str:
    """Serialize a lattice; arc lines keep the lattice's arc order"""
    lines = [
        HEADER,
        f"states {lattice.num_states}",
        f"start {lattice.start}",
        f"final {lattice.final}",
    ]
    lines.extend(f"arc {a.source} {a.target} {a.label}" for a in lattice.arcs)
    return "\n".join(lines) + "\n"


def _int(value: str, line: int) -> int:
    try:
        number = int(value)
    except ValueError:
        raise LatticeFormatError(f"expected a state id, got {value!r}", line) from None
    if number < 0:
        raise LatticeFormatError(f"negative state id {number}", line)
    return number


def read_lattice(text: str, check: bool = True) -> Lattice:
    """
    Parse a lattice file

    Args:
        text: file contents
        check: validate the loaded lattice and raise InvalidLatticeError on failure

    Raises:
        LatticeFormatError: on syntax errors, with the line number
        InvalidLatticeError: when check is set and the lattice breaks an invariant
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise LatticeFormatError(f"expected header {HEADER!r}", 1)

    fields: dict[str, Optional[int]] = {"states": None, "start": None, "final": None}
    arcs: list[Arc] = []
    for number, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        keyword = parts[0]
        if keyword in fields:
            if len(parts) != 2:
                raise LatticeFormatError(f"'{keyword}' takes one value", number)
            if fields[keyword] is not None:
                raise LatticeFormatError(f"duplicate '{keyword}' line", number)
            fields[keyword] = _int(parts[1], number)
        elif keyword == "arc":
            if len(parts) != 4:
                raise LatticeFormatError("arc lines are 'arc <from> <to> <word|*>'", number)
            label = parts[3]
            word = None if label == EPSILON else check_word(label)
            arcs.append(Arc(_int(parts[1], number), _int(parts[2], number), word))
        else:
            raise LatticeFormatError(f"unknown keyword {keyword!r}", number)

    for keyword, value in fields.items():
        if value is None:
            raise LatticeFormatError(f"missing '{keyword}' line", len(lines))
    try:
        lattice = Lattice(fields["states"], fields["start"], fields["final"], tuple(arcs))
    except ValueError as e:
        raise LatticeFormatError(str(e), len(lines)) from e

    if check:
        report = validate(lattice)
        if not report.ok:
            raise InvalidLatticeError(report)
    logger.debug(f"Read lattice with {lattice.num_states} states, {len(arcs)} arcs")
    return lattice
