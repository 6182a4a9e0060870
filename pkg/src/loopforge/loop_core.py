"""Finite loops as Cayley tables: validation, translations, subgroups, nuclei.

Elements are 0..n-1.  A valid table has every row and column a permutation
(unique division on both sides) and a two-sided identity element, so each
instance is a loop; associativity is recorded but not required.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NoIdentity, NotLatin, NotSLoop, NotSquare, ParseError
from .perm import Perm


class LoopTable:
    """Validated n x n Cayley table.  Immutable; build via validate_table.

    Division tables are derived lazily: ldiv[a][b] solves a*y = b and
    rdiv[b][a] solves x*a = b.
    """

    __slots__ = ("n", "table", "e", "associative", "_ldiv", "_rdiv")

    def __init__(self, table: tuple, e: int, associative: bool):
        self.table = table
        self.n = len(table)
        self.e = e
        self.associative = associative
        self._ldiv = None
        self._rdiv = None

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @property
    def ldiv(self) -> tuple:
        if self._ldiv is None:
            n = self.n
            ld = [[0] * n for _ in range(n)]
            for a in range(n):
                row = self.table[a]
                for y in range(n):
                    ld[a][row[y]] = y
            self._ldiv = tuple(tuple(r) for r in ld)
        return self._ldiv

    @property
    def rdiv(self) -> tuple:
        if self._rdiv is None:
            n = self.n
            rd = [[0] * n for _ in range(n)]
            for x in range(n):
                row = self.table[x]
                for a in range(n):
                    rd[row[a]][a] = x
            self._rdiv = tuple(tuple(r) for r in rd)
        return self._rdiv

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LoopTable) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"LoopTable(n={self.n}, e={self.e}, associative={self.associative})"


def validate_table(raw: Sequence[Sequence[int]]) -> LoopTable:
    """Check squareness, the Latin property, and a two-sided identity."""
    rows = [tuple(r) for r in raw]
    n = len(rows)
    if n == 0:
        raise NotSquare("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotSquare(f"row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise NotSquare(f"row {i}, column {j}: non-integer entry {v!r}")

    natural = tuple(range(n))
    for i, row in enumerate(rows):
        if tuple(sorted(row)) != natural:
            raise NotLatin(f"row {i} is not a permutation of 0..{n - 1}: {list(row)}")
    for j in range(n):
        col = tuple(sorted(rows[i][j] for i in range(n)))
        if col != natural:
            raise NotLatin(f"column {j} is not a permutation of 0..{n - 1}")

    e = -1
    for x in range(n):
        if rows[x] == natural and all(rows[y][x] == y for y in range(n)):
            e = x
            break
    if e < 0:
        raise NoIdentity("no element is a two-sided identity")

    associative = True
    for x in range(n):
        for y in range(n):
            rxy = rows[rows[x][y]]
            rx = rows[x]
            ry = rows[y]
            if any(rxy[z] != rx[ry[z]] for z in range(n)):
                associative = False
                break
        if not associative:
            break

    return LoopTable(tuple(rows), e, associative)


def translations(L: LoopTable, x: int) -> tuple[Perm, Perm]:
    """Left and right translation by x: y -> x*y and y -> y*x."""
    if not 0 <= x < L.n:
        raise IndexError(f"element {x} outside 0..{L.n - 1}")
    left = Perm(L.table[x])
    right = Perm(L.table[y][x] for y in range(L.n))
    return left, right


def subgroup_violation(L: LoopTable, elements: Iterable[int]) -> str | None:
    """Why the subset fails to be a group under L's operation, or None."""
    s = sorted(set(elements))
    if not s:
        return "empty subset"
    if any(x < 0 or x >= L.n for x in s):
        return f"elements outside 0..{L.n - 1}: {s}"
    if L.e not in s:
        return f"identity {L.e} missing"
    sset = set(s)
    t = L.table
    for a in s:
        for b in s:
            if t[a][b] not in sset:
                return f"not closed: {a}*{b} = {t[a][b]}"
    for a in s:
        for b in s:
            for c in s:
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    return f"not associative at ({a}, {b}, {c})"
    for a in s:
        if not any(t[a][b] == L.e and t[b][a] == L.e for b in s):
            return f"no two-sided inverse for {a}"
    return None


def is_subgroup(L: LoopTable, elements: Iterable[int]) -> bool:
    return subgroup_violation(L, elements) is None


@dataclass(frozen=True)
class SubgroupSet:
    """A subset certified on construction to form a group inside its loop."""

    elements: tuple
    parent: LoopTable

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))
        violation = subgroup_violation(self.parent, self.elements)
        if violation is not None:
            raise ValueError(f"not a subgroup: {violation}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


def _closure(L: LoopTable, seed: Iterable[int]) -> frozenset:
    """Smallest superset of seed closed under the loop operation."""
    t = L.table
    elems = set(seed)
    frontier = list(elems)
    while frontier:
        fresh = []
        current = list(elems)
        for a in current:
            for b in frontier:
                for c in (t[a][b], t[b][a]):
                    if c not in elems:
                        elems.add(c)
                        fresh.append(c)
        frontier = fresh
    return frozenset(elems)


def subgroups(L: LoopTable) -> list[SubgroupSet]:
    """Every subset forming a group under the loop operation.

    Closed subsets are grown from {e} one generator at a time; any closed
    subset is reachable this way, and the group axioms are then checked on
    each candidate.
    """
    start = _closure(L, (L.e,))
    seen = {start}
    queue = [start]
    closed = []
    while queue:
        s = queue.pop()
        closed.append(s)
        for x in range(L.n):
            if x not in s:
                grown = _closure(L, s | {x})
                if grown not in seen:
                    seen.add(grown)
                    queue.append(grown)
    found = [SubgroupSet(tuple(s), L) for s in closed if subgroup_violation(L, s) is None]
    found.sort(key=lambda h: (len(h.elements), h.elements))
    return found


def s_subgroups(L: LoopTable) -> list[SubgroupSet]:
    """Proper non-trivial subgroups: 2 <= size < n."""
    return [h for h in subgroups(L) if 2 <= len(h) < L.n]


def middle_nucleus(L: LoopTable) -> SubgroupSet:
    """Elements g with (x*g)*y = x*(g*y) for all x, y."""
    t = L.table
    n = L.n
    members = []
    for g in range(n):
        col = [t[x][g] for x in range(n)]
        row = t[g]
        if all(t[col[x]][y] == t[x][row[y]] for x in range(n) for y in range(n)):
            members.append(g)
    return SubgroupSet(tuple(members), L)


@dataclass(frozen=True)
class SLoopContext:
    """A loop paired with a chosen proper non-trivial subgroup."""

    loop: LoopTable
    h: SubgroupSet

    def __post_init__(self):
        if self.h.parent != self.loop:
            raise ValueError("subgroup belongs to a different loop")
        if not 2 <= len(self.h) < self.loop.n:
            raise NotSLoop(f"subgroup size {len(self.h)} not in 2..{self.loop.n - 1}")


def s_loop_context(L: LoopTable, elements: Iterable[int]) -> SLoopContext:
    """Validate elements as a proper non-trivial subgroup and pair it with L."""
    violation = subgroup_violation(L, elements)
    if violation is not None:
        raise NotSLoop(f"not a subgroup: {violation}")
    return SLoopContext(L, SubgroupSet(tuple(elements), L))


def format_table(L: LoopTable) -> str:
    """Canonical text form: order line, then one space-separated row per line."""
    lines = [str(L.n)]
    lines.extend(" ".join(str(v) for v in row) for row in L.table)
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> LoopTable:
    """Parse the text form; '#' lines and blank lines are ignored."""
    significant = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        significant.append((lineno, stripped))
    if not significant:
        raise ParseError("no table data")

    lineno, head = significant[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected the order, got {head!r}", line=lineno) from None
    if n < 1:
        raise ParseError(f"order must be positive, got {n}", line=lineno)
    if len(significant) - 1 < n:
        raise ParseError(f"expected {n} rows, found {len(significant) - 1}", line=lineno)
    if len(significant) - 1 > n:
        extra_line = significant[n + 1][0]
        raise ParseError("unexpected data after the table", line=extra_line)

    rows = []
    for lineno, content in significant[1:]:
        tokens = content.split()
        if len(tokens) != n:
            raise ParseError(f"expected {n} entries, found {len(tokens)}", line=lineno)
        row = []
        for col, tok in enumerate(tokens, start=1):
            try:
                row.append(int(tok))
            except ValueError:
                raise ParseError(f"non-integer entry {tok!r}", line=lineno, column=col) from None
        rows.append(row)
    return validate_table(rows)
