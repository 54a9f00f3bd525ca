"""Finite groups as explicit Cayley tables over element indices 0..n-1.

All element sets are fixed-width bit vectors, so set algebra (union,
intersection, complement, popcount) is exact and fast on Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import SizeLimitError, ValidationError

DEFAULT_ASSOC_BOUND = 512
DEFAULT_MAX_ORDER = 5040
DEFAULT_SUBGROUP_BOUND = 128


@dataclass(frozen=True)
class ElementSet:
    """Subset of a group of order n, stored as an n-bit vector."""

    n: int
    bits: int

    @classmethod
    def empty(cls, n: int) -> "ElementSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "ElementSet":
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"element index {i} out of range 0..{n - 1}")
            bits |= 1 << i
        return cls(n, bits)

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bit vector has bits outside 0..n-1")

    def __contains__(self, i: int) -> bool:
        return (self.bits >> i) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def members(self) -> list[int]:
        return list(self)

    def _check(self, other: "ElementSet") -> None:
        if self.n != other.n:
            raise ValueError("element sets belong to groups of different orders")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.bits | other.bits)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.bits & ~other.bits)

    def complement(self) -> "ElementSet":
        return ElementSet(self.n, self.bits ^ ((1 << self.n) - 1))

    def issubset(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its full multiplication table.

    `mul[a][b]` is the index of the product ab; `inv[x]` the inverse of x.
    Instances are immutable and safe to share across threads.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    name: str

    def subset(self, indices: Iterable[int]) -> ElementSet:
        return ElementSet.from_indices(self.order, indices)

    def full_set(self) -> ElementSet:
        return ElementSet.full(self.order)

    def conjugate(self, g: int, x: int) -> int:
        """g^-1 x g."""
        return self.mul[self.mul[self.inv[g]][x]][g]

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes and centralizer sizes of a group."""

    class_id: tuple[int, ...]
    classes: tuple[ElementSet, ...]
    class_sizes: tuple[int, ...]
    centralizer_sizes: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class SubgroupList:
    """All subgroups of a group, ordered by size then bit pattern."""

    subgroups: tuple[ElementSet, ...]

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.subgroups)

    def __len__(self) -> int:
        return len(self.subgroups)


def from_cayley_table(
    table: Sequence[Sequence[int]],
    name: str = "G",
    assoc_bound: int = DEFAULT_ASSOC_BOUND,
    check_assoc: bool | None = None,
) -> GroupTable:
    """Validate a multiplication table and return the group it defines.

    Identity and inverses are discovered, not supplied.  Associativity is
    checked exhaustively when n <= assoc_bound; pass check_assoc=True to
    force the O(n^3) check for larger tables, or False to skip it.
    """
    n = len(table)
    if n == 0:
        raise ValidationError("empty table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(v) for v in row)
        if len(row) != n:
            raise ValidationError(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise ValidationError(f"entry {v} in row {i} out of range 0..{n - 1}")
        rows.append(row)
    mul = tuple(rows)

    # Latin square: every row and column is a permutation of 0..n-1.
    target = list(range(n))
    for i in range(n):
        if sorted(mul[i]) != target:
            raise ValidationError(f"not-Latin-square: row {i} is not a permutation")
    for j in range(n):
        if sorted(mul[i][j] for i in range(n)) != target:
            raise ValidationError(f"not-Latin-square: column {j} is not a permutation")

    # Identity: two-sided.
    identity = -1
    for e in range(n):
        if all(mul[e][x] == x for x in range(n)) and all(mul[x][e] == x for x in range(n)):
            identity = e
            break
    if identity < 0:
        raise ValidationError("no-identity: no two-sided identity element")

    # Inverses: two-sided (cheap, and meaningful even if the O(n^3)
    # associativity check is skipped).
    inv = []
    for x in range(n):
        y = mul[x].index(identity)
        if mul[y][x] != identity:
            raise ValidationError(f"no-inverse: element {x} has no two-sided inverse")
        inv.append(y)

    do_check = check_assoc if check_assoc is not None else n <= assoc_bound
    if do_check:
        m = np.array(mul, dtype=np.int64)
        for a in range(n):
            left = m[m[a]]        # left[b, c] = mul[mul[a][b]][c]
            right = m[a][m]       # right[b, c] = mul[a][mul[b][c]]
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise ValidationError(
                    f"non-associative triple ({a},{int(b)},{int(c)}): "
                    f"(ab)c={int(left[b, c])} but a(bc)={int(right[b, c])}"
                )

    return GroupTable(order=n, mul=mul, inv=tuple(inv), identity=identity, name=name)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """p after q: (p*q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def from_permutations(
    generators: Sequence[Sequence[int]],
    degree: int | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
    name: str | None = None,
) -> GroupTable:
    """Group generated by permutations, elements in BFS-from-identity order.

    Generators are applied in input order on the right, so the element
    numbering is deterministic.  An empty generator list gives the trivial
    group.
    """
    gens = [tuple(int(v) for v in g) for g in generators]
    if degree is None:
        if not gens:
            degree = 1
        else:
            degree = len(gens[0])
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValidationError(f"generator {g} is not a permutation of 0..{degree - 1}")

    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        p = elements[i]
        for g in gens:
            q = _compose(p, g)
            if q not in index:
                if len(elements) >= max_order:
                    raise SizeLimitError(
                        f"closure exceeds maximum order {max_order} "
                        f"(found {len(elements)} elements so far)"
                    )
                index[q] = len(elements)
                elements.append(q)
        i += 1

    n = len(elements)
    table = [[index[_compose(elements[a], elements[b])] for b in range(n)] for a in range(n)]
    return from_cayley_table(table, name=name or f"perm{degree}<{n}>")


def direct_product(g: GroupTable, h: GroupTable, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Component-wise product; element (a, b) has index a*|H| + b."""
    n = g.order * h.order
    if n > max_order:
        raise SizeLimitError(f"direct product order {n} exceeds maximum {max_order}")
    hn = h.order
    gmul, hmul = g.mul, h.mul
    table = [[0] * n for _ in range(n)]
    for a1 in range(g.order):
        for b1 in range(hn):
            row = table[a1 * hn + b1]
            for a2 in range(g.order):
                ga = gmul[a1][a2] * hn
                hb1 = hmul[b1]
                for b2 in range(hn):
                    row[a2 * hn + b2] = ga + hb1[b2]
    return from_cayley_table(table, name=f"{g.name}x{h.name}", check_assoc=False if n > DEFAULT_ASSOC_BOUND else None)


def conjugacy(g: GroupTable) -> ConjugacyData:
    """Conjugacy classes by orbit computation, centralizers by direct count."""
    n = g.order
    mul, inv = g.mul, g.inv
    class_id = [-1] * n
    classes: list[ElementSet] = []
    for x in range(n):
        if class_id[x] >= 0:
            continue
        orbit = 0
        for t in range(n):
            orbit |= 1 << mul[mul[inv[t]][x]][t]
        cid = len(classes)
        b = orbit
        while b:
            low = b & -b
            class_id[low.bit_length() - 1] = cid
            b ^= low
        classes.append(ElementSet(n, orbit))
    centralizer = []
    for x in range(n):
        row = mul[x]
        centralizer.append(sum(1 for t in range(n) if row[t] == mul[t][x]))
    return ConjugacyData(
        class_id=tuple(class_id),
        classes=tuple(classes),
        class_sizes=tuple(len(c) for c in classes),
        centralizer_sizes=tuple(centralizer),
    )


def subgroup_closure(g: GroupTable, generators: Iterable[int]) -> ElementSet:
    """Subgroup generated by the given elements (finite, so products suffice)."""
    n = g.order
    mul = g.mul
    mask = 1 << g.identity
    order = [g.identity]
    stack = list(generators)
    while stack:
        x = stack.pop()
        if (mask >> x) & 1:
            continue
        mask |= 1 << x
        order.append(x)
        for m in order:
            stack.append(mul[x][m])
            stack.append(mul[m][x])
    return ElementSet(n, mask)


def is_subgroup(g: GroupTable, s: ElementSet) -> bool:
    if g.identity not in s:
        return False
    mem = s.members()
    bits = s.bits
    mul = g.mul
    for a in mem:
        if not (bits >> g.inv[a]) & 1:
            return False
        row = mul[a]
        for b in mem:
            if not (bits >> row[b]) & 1:
                return False
    return True


def all_subgroups(g: GroupTable, max_group_order: int = DEFAULT_SUBGROUP_BOUND) -> SubgroupList:
    """Complete subgroup list by iterated one-element extensions.

    Every subgroup arises from a chain of one-generator extensions starting
    at the trivial subgroup, so growing the lattice level by level finds
    them all.
    """
    n = g.order
    if n > max_group_order:
        raise SizeLimitError(
            f"subgroup enumeration limited to order {max_group_order}, group has order {n}"
        )
    trivial = 1 << g.identity
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for bits in frontier:
            base = [i for i in range(n) if (bits >> i) & 1]
            for x in range(n):
                if (bits >> x) & 1:
                    continue
                ext = subgroup_closure(g, base + [x]).bits
                if ext not in found:
                    found.add(ext)
                    nxt.append(ext)
        frontier = nxt
    ordered = sorted(found, key=lambda b: (b.bit_count(), b))
    return SubgroupList(tuple(ElementSet(n, b) for b in ordered))


def _require_subgroup(g: GroupTable, s: ElementSet, what: str) -> None:
    if not is_subgroup(g, s):
        raise ValidationError(f"{what} is not a subgroup")


def quotient(g: GroupTable, k: ElementSet) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient by a normal subgroup, on minimum-index coset representatives."""
    _require_subgroup(g, k, "K")
    n = g.order
    mul = g.mul
    kbits = k.bits
    for t in range(n):
        conj = 0
        for h in k:
            conj |= 1 << g.conjugate(t, h)
        if conj != kbits:
            raise ValidationError(f"K is not normal: conjugation by {t} moves it")

    proj = [-1] * n
    reps: list[int] = []
    for x in range(n):
        if proj[x] >= 0:
            continue
        cid = len(reps)
        reps.append(x)
        for h in k:
            proj[mul[x][h]] = cid
    q = len(reps)
    table = [[proj[mul[reps[i]][reps[j]]] for j in range(q)] for i in range(q)]
    qt = from_cayley_table(table, name=f"{g.name}/{k.bits:#x}" if q < n else g.name)
    return qt, tuple(proj)


def coset_action_kernel(g: GroupTable, h: ElementSet) -> ElementSet:
    """Normal core of H: intersection of all conjugates t H t^-1."""
    _require_subgroup(g, h, "H")
    n = g.order
    mul, inv = g.mul, g.inv
    kernel = (1 << n) - 1
    for t in range(n):
        conj = 0
        for x in h:
            conj |= 1 << mul[mul[t][x]][inv[t]]
        kernel &= conj
        if kernel == 1 << g.identity:
            break
    return ElementSet(n, kernel)


def product_set(g: GroupTable, a: ElementSet, b: ElementSet) -> ElementSet:
    """{xy : x in A, y in B}, exact."""
    bits = 0
    mul = g.mul
    bm = b.members()
    for x in a:
        row = mul[x]
        for y in bm:
            bits |= 1 << row[y]
    return ElementSet(g.order, bits)


def iterated_product(g: GroupTable, x: ElementSet, times: int) -> ElementSet:
    """X^times (times >= 1)."""
    if times < 1:
        raise ValueError("times must be >= 1")
    acc = x
    for _ in range(times - 1):
        nxt = product_set(g, acc, x)
        if nxt.bits == acc.bits:
            return acc
        acc = nxt
    return acc


def left_cosets(g: GroupTable, k: ElementSet) -> list[ElementSet]:
    """Left cosets xK, ordered by minimum element index."""
    n = g.order
    seen = 0
    cosets = []
    for x in range(n):
        if (seen >> x) & 1:
            continue
        bits = 0
        for h in k:
            bits |= 1 << g.mul[x][h]
        seen |= bits
        cosets.append(ElementSet(n, bits))
    return cosets
