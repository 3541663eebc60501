"""
Reads and writes multiplication table files::

    order 3 monoid identity=2
    0 1 0
    1 1 1
    0 1 2
    names: a 0 1

Row i lists the products i*j as 0-based indices.  The names line is
optional.
"""

import logging
import re
from pathlib import Path

import numpy as np

from app.domain.entities import FinSemigroup
from app.domain.errors import FormatError, SemigroupError
from app.domain.terms import Signature

logger = logging.getLogger(__name__)

_HEADER = re.compile(
    r"^order\s+(?P<order>\d+)\s+(?P<sig>monoid|semigroup)"
    r"(?:\s+identity=(?P<identity>\d+))?$"
)


def read_semigroup(text: str, label: str = "") -> FinSemigroup:
    """
    Parses a table file.

    Raises:
        FormatError: If the text is malformed or the table is not an
            associative operation.
    """

    lines = [(n, line.strip()) for n, line in enumerate(text.splitlines(), 1)]
    lines = [(n, line) for n, line in lines if line and not line.startswith("#")]
    if not lines:
        raise FormatError("empty semigroup file")
    number, header = lines[0]
    match = _HEADER.match(header)
    if match is None:
        raise FormatError(f"bad header {header!r}", number)
    order = int(match["order"])
    if len(lines) < order + 1:
        raise FormatError(f"expected {order} table rows", lines[-1][0])
    rows = []
    for number, line in lines[1 : order + 1]:
        try:
            row = [int(v) for v in line.split()]
        except ValueError as error:
            raise FormatError(f"non-numeric row {line!r}", number) from error
        if len(row) != order:
            raise FormatError(f"expected {order} entries, got {len(row)}", number)
        rows.append(row)
    names = None
    for number, line in lines[order + 1 :]:
        if not line.startswith("names:") or names is not None:
            raise FormatError(f"unexpected line {line!r}", number)
        names = tuple(line[len("names:") :].split())
    identity = int(match["identity"]) if match["identity"] is not None else None
    try:
        return FinSemigroup(
            np.array(rows, dtype=np.int64),
            identity=identity,
            names=names,
            signature=Signature(match["sig"]),
            label=label,
        )
    except SemigroupError as error:
        raise FormatError(str(error)) from error


def write_semigroup(semigroup: FinSemigroup) -> str:
    """Writes the table file text of a semigroup."""
    header = f"order {semigroup.order} {semigroup.signature}"
    if semigroup.identity is not None:
        header += f" identity={semigroup.identity}"
    lines = [header]
    lines += [" ".join(str(int(v)) for v in row) for row in semigroup.table]
    if semigroup.names is not None:
        lines.append("names: " + " ".join(semigroup.names))
    return "\n".join(lines) + "\n"


def load_semigroup(path: str | Path) -> FinSemigroup:
    path = Path(path)
    logger.debug(f"Loading semigroup table {path}")
    return read_semigroup(path.read_text(encoding="utf-8"), path.stem)


def save_semigroup(semigroup: FinSemigroup, path: str | Path) -> None:
    Path(path).write_text(write_semigroup(semigroup), encoding="utf-8")
