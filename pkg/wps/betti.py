"""Graded Betti tables.

β_{i,j} is stored sparsely as {(i, j): count}. Text rendering follows the
Macaulay layout: one column per homological index i, one row per j - i,
"." for zero entries and a closing "total:" line.
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional

from wps.errors import DimensionError


@dataclass(frozen=True)
class BettiTable:
    """Sparse β_{i,j} of a graded quotient S/I."""
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), b in dict(self.entries).items():
            if b < 0:
                raise DimensionError(f"negative Betti number at ({i},{j})")
            if b:
                clean[(int(i), int(j))] = int(b)
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    @property
    def length(self) -> int:
        """Largest homological index with a nonzero entry."""
        return max((i for i, _ in self.entries), default=0)

    def column(self, i: int) -> dict[int, int]:
        return {j: b for (ii, j), b in sorted(self.entries.items()) if ii == i}

    def totals(self) -> list[int]:
        return [sum(self.column(i).values()) for i in range(self.length + 1)]

    def max_degree(self, i: int) -> Optional[int]:
        """max{j : β_{i,j} != 0}, or None for an empty column."""
        col = self.column(i)
        return max(col) if col else None

    def height(self) -> int:
        """Largest row index j - i."""
        return max((j - i for i, j in self.entries), default=0)

    def to_text(self) -> str:
        if not self.entries:
            return "total:"
        rows = sorted({j - i for i, j in self.entries})
        cols = range(self.length + 1)
        cells = [[str(self[(i, row + i)]) if self[(i, row + i)] else "." for i in cols]
                 for row in rows]
        totals = [str(t) for t in self.totals()]
        width = max(len(c) for c in totals + [c for line in cells for c in line])
        label_width = max(len("total:"), max(len(f"{r}:") for r in rows))
        lines = [" " * label_width + " " + " ".join(str(i).rjust(width) for i in cols)]
        lines.append("total:".rjust(label_width) + " " + " ".join(t.rjust(width) for t in totals))
        for row, line in zip(rows, cells):
            lines.append(f"{row}:".rjust(label_width) + " " + " ".join(c.rjust(width) for c in line))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "betti": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
            "totals": self.totals(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BettiTable":
        return cls({(int(i), int(j)): int(b) for i, j, b in data.get("betti", [])})
