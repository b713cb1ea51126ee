"""Block designs: the in-memory model, the text file format, full enumeration.

File format (one design per file):

    # comment lines start with '#' and may appear anywhere
    n k t          <- covering header, or "n k p t" for a lottery header
    a1 a2 ... ak   <- one block per line, k labels from 1..n, pairwise distinct

Blocks are stored sorted ascending per row in a contiguous (B, k) int32
array. Duplicate blocks are retained (and counted), not collapsed: a file
is data, not a set.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .combin import binomial, binomial_table, rank_rows
from .errors import DomainError, ParseError, ResourceLimitError, ValidationError

#: Block-count ceiling for full enumeration; overridable per call.
ENUMERATION_CAP = 20_000_000


@dataclass(frozen=True, eq=False)
class Design:
    """A block design with a covering (n, k, t) or lottery (n, k, p, t) header."""

    pool: int
    block_size: int
    target_size: int
    draw_size: int | None
    blocks: np.ndarray
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        n, k, t, p = self.pool, self.block_size, self.target_size, self.draw_size
        for name, v in (("pool", n), ("block_size", k), ("target_size", t)):
            if not isinstance(v, int) or v < 1:
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
        if p is None:
            if not t <= k <= n:
                raise ValidationError(
                    f"covering header needs t <= k <= n, got ({n}, {k}, {t})")
        else:
            if not isinstance(p, int) or p < 1:
                raise ValidationError(f"draw_size must be a positive integer, got {p!r}")
            if not (t <= min(k, p) and max(k, p) <= n):
                raise ValidationError(
                    f"lottery header needs t <= min(k, p) <= max(k, p) <= n, "
                    f"got ({n}, {k}, {p}, {t})")
        arr = np.ascontiguousarray(self.blocks, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[1] != k:
            raise ValidationError(
                f"blocks must be a (B, {k}) array, got shape {arr.shape}")
        if len(arr) < 1:
            raise ValidationError("a design needs at least one block")
        if arr.min(initial=1) < 1 or arr.max(initial=n) > n:
            raise ValidationError(f"block labels must lie in 1..{n}")
        if k > 1 and not (arr[:, 1:] > arr[:, :-1]).all():
            raise ValidationError("each block must list distinct labels in increasing order")
        arr.setflags(write=False)
        object.__setattr__(self, "blocks", arr)

    @property
    def kind(self) -> str:
        return "covering" if self.draw_size is None else "lottery"

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def duplicate_count(self) -> int:
        return self.block_count - len(np.unique(self.blocks, axis=0))

    def iter_blocks(self):
        for row in self.blocks:
            yield tuple(int(x) for x in row)

    def block_ranks(self) -> np.ndarray:
        """Colex ranks of all blocks among k-subsets of the pool."""
        table = binomial_table(self.pool, self.block_size)
        return rank_rows(self.blocks.astype(np.int64), table)

    def to_covering(self) -> "Design":
        if self.draw_size is None:
            return self
        return Design(self.pool, self.block_size, self.target_size, None,
                      self.blocks, self.provenance)

    def to_lottery(self, draw_size: int | None = None) -> "Design":
        p = self.draw_size if draw_size is None else draw_size
        if p is None:
            p = self.block_size
        if p == self.draw_size:
            return self
        return Design(self.pool, self.block_size, self.target_size, p,
                      self.blocks, self.provenance)

    def __eq__(self, other):
        if not isinstance(other, Design):
            return NotImplemented
        return (self.pool == other.pool and self.block_size == other.block_size
                and self.target_size == other.target_size
                and self.draw_size == other.draw_size
                and np.array_equal(self.blocks, other.blocks))

    def __hash__(self):
        return hash((self.pool, self.block_size, self.target_size,
                     self.draw_size, self.blocks.tobytes()))


def make_design(pool: int, block_size: int, target_size: int,
                blocks: Iterable[Sequence[int]] | np.ndarray,
                draw_size: int | None = None, provenance: str = "") -> Design:
    """Build a Design from any iterable of blocks; rows are sorted for you."""
    if isinstance(blocks, np.ndarray):
        arr = blocks.astype(np.int32, copy=True)
    else:
        arr = np.array([sorted(b) for b in blocks], dtype=np.int32)
        if arr.ndim == 1:           # zero blocks
            arr = arr.reshape(0, block_size)
    if arr.ndim == 2 and arr.shape[1] > 1:
        arr = np.sort(arr, axis=1)
    return Design(pool, block_size, target_size, draw_size, arr, provenance)


def _parse_header(fields: list[str], line_no: int) -> tuple[int, int, int | None, int]:
    if len(fields) not in (3, 4):
        raise ParseError(
            f"header must have 3 fields (n k t) or 4 (n k p t), got {len(fields)}",
            line_no)
    vals = []
    for tok in fields:
        try:
            vals.append(int(tok))
        except ValueError:
            raise ParseError("header field is not an integer", line_no, tok) from None
    if len(vals) == 3:
        n, k, t = vals
        return n, k, None, t
    n, k, p, t = vals
    return n, k, p, t


def parse_design(text: str, *, declared: Sequence[int] | None = None,
                 provenance: str = "") -> Design:
    """Parse design-file text. `declared` supplies the header for headerless
    files as (n, k, t) or (n, k, p, t); every content line is then a block.

    The first comment line, when present, is adopted as provenance (that is
    where format_design puts it), so format -> parse -> format is stable.
    """
    header: tuple[int, int, int | None, int] | None = None
    if declared is not None:
        header = _parse_header([str(x) for x in declared], 0)
    rows: list[list[int]] = []
    row_lines: list[int] = []
    seen_comment = False
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not seen_comment:
                seen_comment = True
                if not provenance:
                    provenance = line.lstrip("#").strip()
            continue
        fields = line.split()
        if header is None:
            header = _parse_header(fields, line_no)
            continue
        n, k, p, t = header
        if len(fields) != k:
            raise ParseError(f"block must list exactly {k} labels, got {len(fields)}",
                             line_no)
        row = []
        for tok in fields:
            try:
                v = int(tok)
            except ValueError:
                raise ParseError("block label is not an integer", line_no, tok) from None
            if not 1 <= v <= n:
                raise ParseError(f"block label out of range 1..{n}", line_no, tok)
            if v in row:
                raise ParseError("block repeats a label", line_no, tok)
            row.append(v)
        rows.append(sorted(row))
        row_lines.append(line_no)
    if header is None:
        raise ParseError("file contains no header line")
    if not rows:
        raise ParseError("file contains no blocks")
    n, k, p, t = header
    arr = np.array(rows, dtype=np.int32)
    try:
        return Design(n, k, t, p, arr, provenance)
    except ValidationError as e:
        raise ParseError(f"invalid design: {e}", row_lines[0]) from None


def parse_design_file(path, *, declared: Sequence[int] | None = None) -> Design:
    with open(os.fspath(path), "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_design(text, declared=declared)


_WRITE_CHUNK_ROWS = 65_536


def _write_design(design: Design, out) -> None:
    if design.provenance:
        first = design.provenance.splitlines()[0]
        out.write(f"# {first}\n")
    if design.draw_size is None:
        out.write(f"{design.pool} {design.block_size} {design.target_size}\n")
    else:
        out.write(f"{design.pool} {design.block_size} {design.draw_size} "
                  f"{design.target_size}\n")
    blocks = design.blocks
    for lo in range(0, len(blocks), _WRITE_CHUNK_ROWS):
        rows = blocks[lo:lo + _WRITE_CHUNK_ROWS].tolist()
        out.write("\n".join(" ".join(map(str, row)) for row in rows))
        out.write("\n")


def format_design(design: Design) -> str:
    """Render to file-format text; inverse of parse_design up to comments."""
    out = io.StringIO()
    _write_design(design, out)
    return out.getvalue()


def write_design_file(design: Design, path) -> None:
    # Streams in row chunks; full enumerations run to hundreds of MB.
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        _write_design(design, fh)


def _fill_colex(pool: int, size: int, out: np.ndarray) -> None:
    # Fills out (C(pool, size) rows) with all size-subsets in colex order:
    # group by largest element, recurse on the prefix.
    if size == 1:
        out[:, 0] = np.arange(1, pool + 1)
        return
    offset = 0
    for top in range(size, pool + 1):
        cnt = binomial(top - 1, size - 1)
        _fill_colex(top - 1, size - 1, out[offset:offset + cnt])
        out[offset:offset + cnt, size - 1] = top
        offset += cnt


def enumerate_full_design(pool: int, block_size: int, *,
                          target_size: int | None = None,
                          draw_size: int | None = None,
                          cap: int = ENUMERATION_CAP) -> Design:
    """Every block_size-subset of {1..pool} as one design, colex block order.

    Row b is exactly the subset with colex rank b. target_size defaults to
    block_size (always a valid covering header).
    """
    if not 1 <= block_size <= pool:
        raise DomainError(f"need 1 <= block_size <= pool, got ({pool}, {block_size})")
    count = binomial(pool, block_size)
    if count > cap:
        raise ResourceLimitError(
            f"full enumeration would produce {count} blocks, above the cap {cap}; "
            f"raise the cap to proceed")
    arr = np.empty((count, block_size), dtype=np.int32)
    _fill_colex(pool, block_size, arr)
    t = block_size if target_size is None else target_size
    return Design(pool, block_size, t, draw_size, arr,
                  provenance=f"all {block_size}-subsets of 1..{pool}")
