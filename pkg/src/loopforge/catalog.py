"""Exhaustive catalogs of small loops, canonical storage, and fixtures.

Loops are stored normalized: the identity is element 0, so the first row
and column read 0..n-1.  Generation therefore enumerates exactly the
reduced Latin squares of each order, in lexicographic order by flattened
table.  Expected counts: 1, 1, 4, 56, 9408 for orders 2 through 6.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import OrderTooLarge, ParseError
from .loop_core import LoopTable, format_table, parse_table, s_subgroups, validate_table
from .perm import Perm

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
INDEX_NAME = "index.tsv"


def content_id(L: LoopTable) -> str:
    """64-bit FNV-1a hash of the canonical text form, as 16 hex digits."""
    h = FNV_OFFSET
    for byte in format_table(L).encode("ascii"):
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


@dataclass(frozen=True)
class CatalogEntry:
    """A normalized loop plus the flags recorded in the catalog index."""

    loop: LoopTable
    associative: bool
    s_subgroup_count: int
    entry_id: str

    def __post_init__(self):
        assert self.loop.e == 0, "catalog entries must be normalized"


def normalize(L: LoopTable) -> tuple[LoopTable, Perm]:
    """Relabel so the identity is 0; returns the loop and the relabeling.

    Swapping the identity with 0 is enough: any relabeling that fixes the
    identity to 0 makes the first row and column natural.
    """
    if L.e == 0:
        return L, Perm(range(L.n))
    imgs = list(range(L.n))
    imgs[0], imgs[L.e] = imgs[L.e], imgs[0]
    relabel = Perm(imgs)
    raw = [[0] * L.n for _ in range(L.n)]
    for x in range(L.n):
        for y in range(L.n):
            raw[imgs[x]][imgs[y]] = imgs[L.table[x][y]]
    return validate_table(raw), relabel


def _reduced_squares(n: int) -> Iterator[list]:
    """Backtracking fill in row-major order; first row and column fixed."""
    table = [[-1] * n for _ in range(n)]
    table[0] = list(range(n))
    for i in range(n):
        table[i][0] = i
    full = (1 << n) - 1
    row_used = [full] + [1 << i for i in range(1, n)]
    col_used = [full] + [1 << j for j in range(1, n)]
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]
    m = len(cells)

    def fill(k: int) -> Iterator[list]:
        if k == m:
            yield [row[:] for row in table]
            return
        r, c = cells[k]
        avail = ~(row_used[r] | col_used[c]) & full
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            table[r][c] = v
            row_used[r] |= bit
            col_used[c] |= bit
            yield from fill(k + 1)
            row_used[r] ^= bit
            col_used[c] ^= bit
        table[r][c] = -1

    yield from fill(0)


def generate_loops(
    n: int,
    nonassociative: bool = False,
    require_s_subgroup: bool = False,
    limit: int | None = None,
    allow_order_six: bool = False,
) -> Iterator[CatalogEntry]:
    """Stream every normalized loop of order n, with optional filters.

    The unbounded order-6 run produces 9408 entries and takes a while, so
    it must be opted into explicitly.  Order checks happen at call time,
    before the stream is touched.
    """
    if n < 2 or n > 6:
        raise OrderTooLarge(f"exhaustive generation covers orders 2..6, got {n}")
    if n == 6 and limit is None and not allow_order_six:
        raise OrderTooLarge("order-6 exhaustive run requires allow_order_six=True")

    def stream() -> Iterator[CatalogEntry]:
        produced = 0
        for raw in _reduced_squares(n):
            L = validate_table(raw)
            if nonassociative and L.associative:
                continue
            count = len(s_subgroups(L))
            if require_s_subgroup and count == 0:
                continue
            yield CatalogEntry(L, L.associative, count, content_id(L))
            produced += 1
            if limit is not None and produced >= limit:
                return

    return stream()


def read_table(path) -> LoopTable:
    text = Path(path).read_text(encoding="ascii")
    try:
        return parse_table(text)
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_table(L: LoopTable, path) -> None:
    Path(path).write_text(format_table(L), encoding="ascii")


def write_catalog(entries, out_dir) -> int:
    """Write <id>.loop files plus an index; returns the entry count."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["id\torder\tassociative\ts_subgroups"]
    count = 0
    for entry in entries:
        write_table(entry.loop, out / f"{entry.entry_id}.loop")
        lines.append(
            f"{entry.entry_id}\t{entry.loop.n}\t{int(entry.associative)}\t{entry.s_subgroup_count}"
        )
        count += 1
    (out / INDEX_NAME).write_text("\n".join(lines) + "\n", encoding="ascii")
    return count


def iter_catalog(dir_path) -> list[tuple[str, Path]]:
    """(id, path) pairs for a catalog directory, in index order.

    Falls back to sorted *.loop files when no index is present.
    """
    base = Path(dir_path)
    index = base / INDEX_NAME
    if index.exists():
        pairs = []
        for lineno, line in enumerate(index.read_text(encoding="ascii").splitlines(), start=1):
            if lineno == 1 and line.startswith("id\t"):
                continue
            if not line.strip():
                continue
            entry_id = line.split("\t", 1)[0]
            pairs.append((entry_id, base / f"{entry_id}.loop"))
        return pairs
    return [(p.stem, p) for p in sorted(base.glob("*.loop"))]


def cyclic_loop(n: int) -> LoopTable:
    """The cyclic group of order n on 0..n-1."""
    return validate_table([[(i + j) % n for j in range(n)] for i in range(n)])


def klein_four() -> LoopTable:
    return validate_table([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])


def n5_loop() -> LoopTable:
    """The smallest-order nonassociative loop used throughout the tests."""
    return validate_table(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 3, 4, 0, 1],
            [3, 4, 1, 2, 0],
            [4, 2, 0, 1, 3],
        ]
    )


CACHE_ENV_VAR = "LOOPFORGE_CACHE"


def report_cache_dir() -> Path | None:
    """Directory named by LOOPFORGE_CACHE, created on demand, or None."""
    value = os.environ.get(CACHE_ENV_VAR)
    if not value:
        return None
    path = Path(value)
    path.mkdir(parents=True, exist_ok=True)
    return path
