"""Built-in small groups and the line-oriented group file format.

Group file grammar (UTF-8):
    line 1: "perm <degree>"  or  "table <n>"
    perm mode:  lines "gen <cycles>", cycles like "(0 1)(2 3 4)" (0-indexed,
                fixed points omitted)
    table mode: n lines of n whitespace-separated element indices
    "#" starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import os
import re
from typing import Sequence

from . import groups
from .errors import ParseError, SizeLimitError, ValidationError
from .groups import GroupTable

HEISENBERG_PRIMES = (3, 5, 7)

BUILTIN_NAMES = {
    "cyclic": "cyclic n (order n)",
    "dihedral": "dihedral n (order 2n)",
    "symmetric": "symmetric n, n <= 6 (order n!)",
    "alternating": "alternating n, n <= 6 (order n!/2)",
    "quaternion8": "quaternion group (order 8)",
    "heisenberg": "heisenberg p, p in {3,5,7} (order p^3)",
}


def _cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValidationError("cyclic order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return groups.from_cayley_table(table, name=f"C{n}", check_assoc=False)


def _dihedral(n: int) -> GroupTable:
    # Element f*n + i encodes r^i s^f; r^i s * r^j = r^(i-j) s.
    if n < 1:
        raise ValidationError("dihedral parameter must be >= 1")
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n
            table[i][n + j] = n + (i + j) % n          # r^i * r^j s
            table[n + i][j] = n + (i - j) % n          # r^i s * r^j
            table[n + i][n + j] = (i - j) % n          # r^i s * r^j s
    return groups.from_cayley_table(table, name=f"D{n}", check_assoc=False if size > 128 else None)


def _symmetric(n: int) -> GroupTable:
    if not 1 <= n <= 6:
        raise ValidationError("symmetric n supported for 1 <= n <= 6")
    if n == 1:
        return groups.from_permutations([], degree=1, name="S1")
    gens: list[list[int]] = [[1, 0] + list(range(2, n))]
    if n > 2:
        gens.append(list(range(1, n)) + [0])
    return groups.from_permutations(gens, degree=n, name=f"S{n}")


def _alternating(n: int) -> GroupTable:
    if not 3 <= n <= 6:
        raise ValidationError("alternating n supported for 3 <= n <= 6")
    three = [1, 2, 0] + list(range(3, n))
    gens = [three]
    if n > 3:
        if n % 2 == 1:
            gens.append(list(range(1, n)) + [0])
        else:
            gens.append([0] + list(range(2, n)) + [1])
    return groups.from_permutations(gens, degree=n, name=f"A{n}")


_QUAT_UNITS = {
    # (u1, u2) -> (u3, sign) with units 0=1, 1=i, 2=j, 3=k
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (2, 0): (2, 1), (3, 0): (3, 1),
    (1, 1): (0, -1), (2, 2): (0, -1), (3, 3): (0, -1),
    (1, 2): (3, 1), (2, 1): (3, -1),
    (2, 3): (1, 1), (3, 2): (1, -1),
    (3, 1): (2, 1), (1, 3): (2, -1),
}


def _quaternion8() -> GroupTable:
    # Index 2u + s: element (-1)^s * unit u, units ordered 1, i, j, k.
    def mulq(a: int, b: int) -> int:
        u1, s1 = divmod(a, 2)
        u2, s2 = divmod(b, 2)
        u3, sign = _QUAT_UNITS[(u1, u2)]
        s3 = (s1 + s2 + (0 if sign > 0 else 1)) % 2
        return 2 * u3 + s3

    table = [[mulq(a, b) for b in range(8)] for a in range(8)]
    return groups.from_cayley_table(table, name="Q8")


def _heisenberg(p: int) -> GroupTable:
    # Upper unitriangular 3x3 matrices over F_p, encoded (a, b, c) ->
    # a*p^2 + b*p + c: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
    if p not in HEISENBERG_PRIMES:
        raise ValidationError(f"heisenberg p supported for p in {HEISENBERG_PRIMES}")
    n = p ** 3
    table = [[0] * n for _ in range(n)]
    for a1 in range(p):
        for b1 in range(p):
            for c1 in range(p):
                row = table[a1 * p * p + b1 * p + c1]
                for a2 in range(p):
                    for b2 in range(p):
                        cc = (c1 + a1 * b2) % p
                        base = ((a1 + a2) % p) * p * p + ((b1 + b2) % p) * p
                        for c2 in range(p):
                            row[a2 * p * p + b2 * p + c2] = base + (cc + c2) % p
    return groups.from_cayley_table(table, name=f"Heis{p}", check_assoc=False if n > 128 else None)


def builtin(name: str, params: Sequence[int] = ()) -> GroupTable:
    """Construct a built-in group by name and integer parameters."""
    params = tuple(int(v) for v in params)
    if name == "cyclic":
        return _cyclic(_one_param(name, params))
    if name == "dihedral":
        return _dihedral(_one_param(name, params))
    if name == "symmetric":
        return _symmetric(_one_param(name, params))
    if name == "alternating":
        return _alternating(_one_param(name, params))
    if name == "quaternion8":
        if params:
            raise ValidationError("quaternion8 takes no parameters")
        return _quaternion8()
    if name == "heisenberg":
        return _heisenberg(_one_param(name, params))
    raise ValidationError(f"unknown builtin group {name!r}; see `catalog` for names")


def _one_param(name: str, params: tuple[int, ...]) -> int:
    if len(params) != 1:
        raise ValidationError(f"{name} takes exactly one integer parameter")
    return params[0]


_SPEC_RE = re.compile(r"^([a-z]+[a-z0-9]*)(?::(\d+(?:,\d+)*))?(?:\^(\d+))?$")


def resolve_groupspec(spec: str, max_order: int = groups.DEFAULT_MAX_ORDER) -> GroupTable:
    """Resolve a groupspec: a path to a group file, or a builtin spec.

    Builtin specs look like "cyclic:5", "quaternion8", "dihedral:4^2"
    (the ^k suffix takes the k-th direct power).
    """
    if os.path.sep in spec or os.path.isfile(spec):
        return load_group(spec)
    m = _SPEC_RE.match(spec)
    if not m:
        raise ValidationError(f"cannot parse groupspec {spec!r} (and no such file)")
    name, params, power = m.group(1), m.group(2), m.group(3)
    g = builtin(name, [int(v) for v in params.split(",")] if params else [])
    k = int(power) if power else 1
    if k < 1:
        raise ValidationError("direct power exponent must be >= 1")
    result = g
    for _ in range(k - 1):
        result = groups.direct_product(result, g, max_order=max_order)
    return result


def _strip(line: str) -> str:
    hash_pos = line.find("#")
    if hash_pos >= 0:
        line = line[:hash_pos]
    return line.strip()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, source: str = "<input>", line: int = 0) -> list[int]:
    """Parse a product of parenthesised cycles into a permutation list."""
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        col = text.find(stripped[0]) + 1
        raise ParseError(f"unexpected text {stripped!r} in cycles", source, line, col)
    perm = list(range(degree))
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).split()
        try:
            cyc = [int(v) for v in body]
        except ValueError:
            raise ParseError(f"non-integer entry in cycle {m.group(0)!r}", source, line, m.start() + 1)
        if len(cyc) != len(set(cyc)):
            raise ParseError(f"repeated index in cycle {m.group(0)!r}", source, line, m.start() + 1)
        for v in cyc:
            if not 0 <= v < degree:
                raise ParseError(f"index {v} out of range for degree {degree}", source, line, m.start() + 1)
        # Compose left to right: the rightmost cycle is applied first.
        cyc_perm = list(range(degree))
        for i, v in enumerate(cyc):
            cyc_perm[v] = cyc[(i + 1) % len(cyc)]
        perm = [perm[cyc_perm[i]] for i in range(degree)]
    return perm


def parse_group_text(text: str, source: str = "<input>") -> GroupTable:
    lines = text.splitlines()
    items = [(i + 1, _strip(raw)) for i, raw in enumerate(lines)]
    items = [(no, s) for no, s in items if s]
    if not items:
        raise ParseError("empty group file", source, 1, 1)

    no, header = items[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] not in ("perm", "table"):
        raise ParseError("expected header 'perm <degree>' or 'table <n>'", source, no, 1)
    try:
        size = int(parts[1])
    except ValueError:
        raise ParseError(f"bad size {parts[1]!r} in header", source, no, len(parts[0]) + 2)
    if size < 1:
        raise ParseError("size must be >= 1", source, no, len(parts[0]) + 2)

    body = items[1:]
    if parts[0] == "perm":
        gens = []
        for no, s in body:
            if not s.startswith("gen"):
                raise ParseError("expected 'gen <cycles>' line", source, no, 1)
            gens.append(parse_cycles(s[3:], size, source, no))
        return groups.from_permutations(gens, degree=size)

    if len(body) != size:
        raise ParseError(f"expected {size} table rows, found {len(body)}", source,
                         body[-1][0] if body else no, 1)
    table = []
    for no, s in body:
        try:
            row = [int(v) for v in s.split()]
        except ValueError:
            raise ParseError("non-integer table entry", source, no, 1)
        if len(row) != size:
            raise ParseError(f"row has {len(row)} entries, expected {size}", source, no, 1)
        table.append(row)
    return groups.from_cayley_table(table, name=f"table<{size}>")


def load_group(path: str) -> GroupTable:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    g = parse_group_text(text, source=path)
    return g


def dump_group(g: GroupTable) -> str:
    lines = [f"table {g.order}"]
    for row in g.mul:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def catalog_names() -> list[str]:
    return [f"{name} - {desc}" for name, desc in BUILTIN_NAMES.items()]


def catalog_groups(max_order: int = 64) -> list[GroupTable]:
    """A fixed roster of catalog groups for property tests."""
    roster: list[GroupTable] = []
    for n in range(1, 13):
        roster.append(_cyclic(n))
    for n in range(3, 33):
        if 2 * n <= max_order:
            roster.append(_dihedral(n))
    for n in (3, 4):
        g = _symmetric(n)
        if g.order <= max_order:
            roster.append(g)
    for n in (4, 5):
        g = _alternating(n)
        if g.order <= max_order:
            roster.append(g)
    roster.append(_quaternion8())
    if 27 <= max_order:
        roster.append(_heisenberg(3))
    extras = []
    q8 = _quaternion8()
    c2 = _cyclic(2)
    s3 = _symmetric(3)
    d4 = _dihedral(4)
    for g, h in ((q8, c2), (d4, c2), (s3, s3), (s3, c2)):
        if g.order * h.order <= max_order:
            extras.append(groups.direct_product(g, h))
    roster.extend(extras)
    return [g for g in roster if g.order <= max_order]
