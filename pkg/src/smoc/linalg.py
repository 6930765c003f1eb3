"""Exact rank over the rationals for sparse row collections."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping


class RationalMatrix:
    """Rows are sparse maps column -> rational; columns are arbitrary hashables."""

    def __init__(self, rows: Iterable[Mapping[Hashable, object]] = ()):
        self.rows = [dict(r) for r in rows]

    @classmethod
    def from_dense(cls, dense) -> "RationalMatrix":
        return cls({c: Fraction(x) for c, x in enumerate(row) if x} for row in dense)

    def append(self, row: Mapping) -> None:
        self.rows.append(dict(row))

    def columns(self) -> list:
        return sorted({c for r in self.rows for c in r}, key=_order)

    def rank(self) -> int:
        return Echelon(self.columns()).extend(self.rows)


def _order(c):
    return (type(c).__name__, c)


class Echelon:
    """Incremental row echelon form; pivot of each stored row is its least column."""

    def __init__(self, columns=None):
        self.position = None if columns is None else {c: k for k, c in enumerate(columns)}
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def _index(self, c) -> int:
        if self.position is None:
            self.position = {}
        if c not in self.position:
            self.position[c] = len(self.position)
        return self.position[c]

    def reduce(self, row: Mapping) -> dict:
        """Remainder of ``row`` modulo the stored rows (keys are column positions)."""
        work = {self._index(c): Fraction(v) for c, v in row.items() if v}
        while work:
            col = min(work)
            piv = self.pivots.get(col)
            if piv is None:
                break
            factor = work[col]
            for c, v in piv.items():
                nv = work.get(c, 0) - factor * v
                if nv:
                    work[c] = nv
                else:
                    work.pop(c, None)
        return work

    def add(self, row: Mapping) -> bool:
        """Insert a row; True if it raised the rank."""
        work = self.reduce(row)
        if not work:
            return False
        col = min(work)
        lead = work[col]
        self.pivots[col] = {c: v / lead for c, v in work.items()}
        return True

    def extend(self, rows: Iterable[Mapping]) -> int:
        for row in rows:
            self.add(row)
        return self.rank

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[Mapping]) -> int:
    return Echelon().extend(rows)
