"""
Historical drawings, as CSV:

    date,lottery,annuity,lump_sum,J,N
    2007-03-06,mega-millions,390m,233m,,212m

Amounts accept scientific notation and an `m` suffix (millions). When J (after-tax lump sum)
is empty, it is derived from the pre-tax lump sum at a flat tax rate.
"""
import datetime
import logging
import math
from dataclasses import dataclass

import pandas as pd

from lottery import DEFAULT_TAX_RATE
from lottery import DrawingParams
from lottery.errors import DomainError
from lottery.errors import DrawingParseError

COLUMNS = ["date", "lottery", "annuity", "lump_sum", "J", "N"]
MILLION_SUFFIXES = ("m", "M")


@dataclass(frozen=True)
class DrawingRecord:
    date: datetime.date
    lottery: str
    announced_annuity_pre_tax: float
    lump_sum_pre_tax: float
    J: float
    N: float

    @property
    def params(self):
        return DrawingParams(N=self.N, J=self.J)


def parse_amount(text):
    """'233m' -> 233e6, '2.12e8' -> 2.12e8, '' -> None. Amounts must be finite and positive."""
    text = text.strip()
    if not text:
        return None
    scale = 1.0
    if text.endswith(MILLION_SUFFIXES):
        text, scale = text[:-1], 1e6
    try:
        value = float(text) * scale
    except ValueError as exc:
        raise DomainError(f"'{text}' is not an amount") from exc
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"amounts must be finite and positive (was: {value})")
    return value


def _parse_row(row, tax_rate):
    try:
        date = datetime.date.fromisoformat(row["date"].strip())
    except ValueError as exc:
        raise DomainError(f"'{row['date']}' is not an ISO date") from exc

    lottery = row["lottery"].strip()
    if not lottery:
        raise DomainError("lottery name is missing")

    annuity = parse_amount(row["annuity"])
    lump_sum = parse_amount(row["lump_sum"])
    J = parse_amount(row["J"])
    N = parse_amount(row["N"])
    if N is None:
        raise DomainError("ticket sales N are missing")
    if J is None:
        if lump_sum is None:
            raise DomainError("either J or the lump sum must be given")
        J = lump_sum * (1 - tax_rate)

    return DrawingRecord(date, lottery, annuity, lump_sum, J, N)


def load_drawings(path, tax_rate=DEFAULT_TAX_RATE):
    """Parses every row, then raises a single DrawingParseError listing all the bad ones"""
    logging.debug(f"Loading drawings from '{path}'")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError as exc:
        raise DrawingParseError(f"'{path}' is empty, expected the header {','.join(COLUMNS)}") from exc

    missing = [column for column in COLUMNS if column not in frame.columns]
    if missing:
        raise DrawingParseError(f"'{path}' is missing the column(s) {missing} (header: {','.join(COLUMNS)})")

    records, problems = [], []
    # row numbers count the header as row 1
    for row_number, row in enumerate(frame.to_dict("records"), start=2):
        try:
            records.append(_parse_row(row, tax_rate))
        except DomainError as exc:
            problems.append((row_number, str(exc)))

    if problems:
        raise DrawingParseError(f"invalid drawings in '{path}'", problems)
    return records


def _amount_to_text(value):
    return "" if value is None else repr(float(value))


def dump_drawings(records, path):
    """Writes records in the format load_drawings() reads; J is always written out"""
    frame = pd.DataFrame(
        [
            {
                "date": record.date.isoformat(),
                "lottery": record.lottery,
                "annuity": _amount_to_text(record.announced_annuity_pre_tax),
                "lump_sum": _amount_to_text(record.lump_sum_pre_tax),
                "J": _amount_to_text(record.J),
                "N": _amount_to_text(record.N),
            }
            for record in records
        ],
        columns=COLUMNS,
    )
    frame.to_csv(path, index=False, lineterminator="\n")
