"""Covers, monochromatic quadruple counts, and the non-commuting Schur number.

A quadruple is (x, y, xy, yx) with all four members in one class; it is
non-commuting when xy != yx.  Pairs are ordered and x = y is allowed.

k(G) is found by exhaustive search over partitions: any cover avoiding
non-commuting quadruples induces an avoiding partition of equal or smaller
size (assign each element to one containing class; subsets of avoiding
classes avoid), and every partition is a cover, so searching partitions
suffices.  The search is exhaustive up to class relabelling: element 0 is
in class 0, and each new class index first appears in element order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .errors import CoverError, ParseError, ValidationError
from .groups import ElementSet, GroupTable
from .stats import is_abelian

DEFAULT_NODE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class Cover:
    """Ordered list of element sets whose union is the whole group.

    Empty classes are dropped on construction; overlaps are permitted.
    """

    classes: tuple[ElementSet, ...]
    group_order: int

    @classmethod
    def of(cls, group_order: int, classes: Iterable[ElementSet]) -> "Cover":
        kept = tuple(c for c in classes if len(c) > 0)
        for c in kept:
            if c.n != group_order:
                raise CoverError("cover class has wrong group order")
        return cls(kept, group_order)

    @property
    def size(self) -> int:
        return len(self.classes)

    def covers_group(self) -> bool:
        bits = 0
        for c in self.classes:
            bits |= c.bits
        return bits == (1 << self.group_order) - 1

    def is_partition(self) -> bool:
        total = 0
        for c in self.classes:
            if total & c.bits:
                return False
            total |= c.bits
        return total == (1 << self.group_order) - 1


def count_quadruples(g: GroupTable, a: ElementSet) -> tuple[int, int]:
    """(total, noncommuting) quadruples (x, y, xy, yx) in A^4, ordered pairs."""
    mul = g.mul
    n = g.order
    abits = a.bits
    total = 0
    noncomm = 0
    for x in a:
        row = mul[x]
        mask_xy = 0
        mask_yx = 0
        mask_nc = 0
        for y in range(n):
            p = row[y]
            q = mul[y][x]
            if (abits >> p) & 1:
                mask_xy |= 1 << y
            if (abits >> q) & 1:
                mask_yx |= 1 << y
            if p != q:
                mask_nc |= 1 << y
        both = abits & mask_xy & mask_yx
        total += both.bit_count()
        noncomm += (both & mask_nc).bit_count()
    return total, noncomm


def class_witness(g: GroupTable, a: ElementSet) -> tuple[int, int] | None:
    """A pair (x, y) with x, y, xy, yx in A and xy != yx, or None."""
    mul = g.mul
    abits = a.bits
    for x in a:
        row = mul[x]
        for y in a:
            p = row[y]
            q = mul[y][x]
            if p != q and (abits >> p) & 1 and (abits >> q) & 1:
                return (x, y)
    return None


def cover_avoids(g: GroupTable, cover: Cover) -> tuple[bool, tuple[int, int, int] | None]:
    """True iff no class has a non-commuting quadruple; else a witness
    (class index, x, y)."""
    if cover.group_order != g.order or not cover.covers_group():
        raise CoverError("classes do not cover G")
    for i, a in enumerate(cover.classes):
        w = class_witness(g, a)
        if w is not None:
            return False, (i, w[0], w[1])
    return True, None


@dataclass(frozen=True)
class SchurResult:
    k_value: int
    avoiding_colouring: Cover | None
    nodes: int
    prunes: int
    complete: bool


class _Budget(Exception):
    pass


def _class_ok(g: GroupTable, mask: int) -> bool:
    """No non-commuting quadruple fully inside the class mask."""
    mul = g.mul
    members = []
    b = mask
    while b:
        low = b & -b
        members.append(low.bit_length() - 1)
        b ^= low
    for x in members:
        row = mul[x]
        for y in members:
            p = row[y]
            q = mul[y][x]
            if p != q and (mask >> p) & 1 and (mask >> q) & 1:
                return False
    return True


def _search_partition(g: GroupTable, m: int, budget: list[int], stats: list[int]) -> list[int] | None:
    """First avoiding partition into at most m classes, canonical order.

    budget is a single-element list counting remaining partition extensions;
    raises _Budget when exhausted.  stats accumulates [nodes, prunes].
    """
    n = g.order
    masks = [0] * m
    assign = [0] * n

    def extend(v: int, used: int) -> bool:
        limit = min(used + 1, m)
        for c in range(limit):
            stats[0] += 1
            budget[0] -= 1
            if budget[0] < 0:
                raise _Budget()
            new_mask = masks[c] | (1 << v)
            if not _class_ok(g, new_mask):
                stats[1] += 1
                continue
            masks[c] = new_mask
            assign[v] = c
            if v == n - 1:
                return True
            if extend(v + 1, max(used, c + 1)):
                return True
            masks[c] ^= 1 << v
        return False

    if extend(0, 0):
        return list(assign)
    return None


def schur_number(g: GroupTable, k_max: int = 6, budget: int = DEFAULT_NODE_BUDGET) -> SchurResult:
    """k(G) by exhaustive canonical-partition search.

    Returns the largest k such that every partition into k classes has a
    monochromatic non-commuting quadruple, together with an avoiding
    (k+1)-partition.  A result past the node budget or k_max is a lower
    bound, flagged incomplete.
    """
    if is_abelian(g):
        raise ValidationError("k(G) is defined for non-Abelian groups only")
    n = g.order
    stats = [0, 0]
    remaining = [budget]
    for m in range(2, k_max + 2):
        try:
            found = _search_partition(g, m, remaining, stats)
        except _Budget:
            return SchurResult(m - 1, None, stats[0], stats[1], complete=False)
        if found is not None:
            masks = [0] * m
            for v, c in enumerate(found):
                masks[c] |= 1 << v
            cover = Cover.of(n, [ElementSet(n, b) for b in masks])
            return SchurResult(m - 1, cover, stats[0], stats[1], complete=True)
    return SchurResult(k_max, None, stats[0], stats[1], complete=False)


def random_cover(g: GroupTable, k: int, seed: int = 0, overlap: float = 0.0) -> Cover:
    """Seeded random cover: one class per element, plus overlap extras.

    Each element gets one uniformly random class; it additionally joins each
    other class with probability `overlap`.  Classes left empty are refilled
    with one random element, so the result is always a valid cover of size k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.order
    rng = random.Random(seed)
    masks = [0] * k
    for x in range(n):
        masks[rng.randrange(k)] |= 1 << x
    if overlap > 0:
        for x in range(n):
            for c in range(k):
                if not (masks[c] >> x) & 1 and rng.random() < overlap:
                    masks[c] |= 1 << x
    for c in range(k):
        if masks[c] == 0:
            masks[c] |= 1 << rng.randrange(n)
    return Cover.of(n, [ElementSet(n, b) for b in masks])


def _strip(line: str) -> str:
    pos = line.find("#")
    if pos >= 0:
        line = line[:pos]
    return line.strip()


def parse_cover_text(text: str, source: str = "<input>") -> Cover:
    """Parse the cover format: "cover <k> <n>" then k index-list lines."""
    items = [(i + 1, _strip(raw)) for i, raw in enumerate(text.splitlines())]
    items = [(no, s) for no, s in items if s]
    if not items:
        raise ParseError("empty cover file", source, 1, 1)
    no, header = items[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "cover":
        raise ParseError("expected header 'cover <k> <n>'", source, no, 1)
    try:
        k, n = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("non-integer sizes in cover header", source, no, 1)
    body = items[1:]
    if len(body) != k:
        raise ParseError(f"expected {k} class lines, found {len(body)}", source, no, 1)
    classes = []
    for no, s in body:
        try:
            idx = [int(v) for v in s.split()]
        except ValueError:
            raise ParseError("non-integer element index", source, no, 1)
        for v in idx:
            if not 0 <= v < n:
                raise ParseError(f"element index {v} out of range 0..{n - 1}", source, no, 1)
        classes.append(ElementSet.from_indices(n, idx))
    return Cover.of(n, classes)


def load_cover(path: str) -> Cover:
    with open(path, "r", encoding="utf-8") as f:
        return parse_cover_text(f.read(), source=path)


def dump_cover(cover: Cover) -> str:
    lines = [f"cover {cover.size} {cover.group_order}"]
    for c in cover.classes:
        lines.append(" ".join(str(v) for v in c))
    return "\n".join(lines) + "\n"
