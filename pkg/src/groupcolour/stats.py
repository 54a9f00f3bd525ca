"""Exact commuting statistics.

The commuting probability is always an exact rational; floats appear only
when callers format reports.  The pair count is computed two independent
ways (direct double loop, and |G| times the class number) which must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError
from .groups import ConjugacyData, GroupTable, conjugacy


@dataclass(frozen=True)
class CommutingReport:
    pairs_total: int
    pairs_commuting: int
    c: Fraction
    num_classes: int


def is_abelian(g: GroupTable) -> bool:
    mul = g.mul
    n = g.order
    for x in range(n):
        row = mul[x]
        for y in range(x + 1, n):
            if row[y] != mul[y][x]:
                return False
    return True


def commuting_probability(g: GroupTable, conj: ConjugacyData | None = None) -> CommutingReport:
    n = g.order
    mul = g.mul
    count = 0
    for x in range(n):
        row = mul[x]
        count += sum(1 for y in range(n) if row[y] == mul[y][x])

    if conj is None:
        conj = conjugacy(g)
    by_classes = n * conj.num_classes
    if count != by_classes:
        raise ConsistencyError(
            f"commuting pair count mismatch: loop={count} classes={by_classes}"
        )
    return CommutingReport(
        pairs_total=n * n,
        pairs_commuting=count,
        c=Fraction(count, n * n),
        num_classes=conj.num_classes,
    )
