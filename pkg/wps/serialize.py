"""Exact-value formatting shared by the library and the CLI.

- Rationals as "p/q" strings (q omitted when 1)
- Superscript multiset labels such as "(1,3²,6³)"
- Figure-style degree displays such as "5/(3·6³)"
- TSV tables and stable JSON dumps
"""

import json
from fractions import Fraction
from typing import Iterable, Sequence

from wps.errors import ParseError


_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def format_rational(value) -> str:
    """Render an exact rational as "p/q", or "p" when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text) -> Fraction:
    """Parse "p/q", "p" or an int into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact rational: {text!r}")


def superscript(n: int) -> str:
    return str(n).translate(_SUPERSCRIPTS)


def power_label(base: int, exponent: int) -> str:
    """"6³" for (6, 3), "6" for (6, 1)."""
    return str(base) if exponent == 1 else f"{base}{superscript(exponent)}"


def grouped_label(grouped: Iterable[tuple[int, int]]) -> str:
    """Multiset label "(1,3²,6³)" from (value, multiplicity) pairs; zero multiplicities are skipped."""
    parts = [power_label(m, a) for m, a in grouped if a > 0]
    return "(" + ",".join(parts) + ")"


def run_length(values: Sequence[int]) -> list[tuple[int, int]]:
    """Run-length encode a sorted sequence into (value, multiplicity) pairs."""
    out: list[tuple[int, int]] = []
    for v in values:
        if out and out[-1][0] == v:
            out[-1] = (v, out[-1][1] + 1)
        else:
            out.append((v, 1))
    return out


def product_display(numerator: Fraction, factors: Iterable[tuple[int, int]]) -> str:
    """Display numerator / Π base^exp in the "5/(3·6³)" style.

    The numerator's own denominator is written as the first factor.
    Factors with base 1 or exponent 0 are dropped.
    """
    numerator = Fraction(numerator)
    parts = []
    if numerator.denominator != 1:
        parts.append(str(numerator.denominator))
    parts.extend(power_label(b, e) for b, e in factors if b != 1 and e > 0)
    top = str(numerator.numerator)
    if not parts:
        return top
    if len(parts) == 1:
        return f"{top}/{parts[0]}"
    return f"{top}/(" + "·".join(parts) + ")"


def to_tsv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(cell) for cell in row))
    return "\n".join(lines) + "\n"


def dump_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
