"""Sparse partially filled integer grids and the combinators every construction uses.

A grid is an m x n array in which only some cells hold an integer. Entries are
stored sparsely as a mapping (row, col) -> value with 1-based indices. The value
0 is normally forbidden (an empty cell is an absent key, not a zero); signed
magic arrays over an odd-size ground set and magic rectangles legitimately
contain a single 0 entry, so a grid can be flagged explicit_zero to admit it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def mod1(x: int, m: int) -> int:
    """Reduce x modulo m with residues in [1, m]."""
    return (x - 1) % m + 1


class UnsupportedCase(Exception):
    """Raised when parameters fall outside every implemented construction.

    The message names the hypothesis that failed, so callers (and the command
    line tool) can report why rather than just that.
    """


class OracleExhausted(Exception):
    """Raised when a construction needed a search-backed seed and the search
    budget ran out before either finding one or proving none exists."""


class Grid:
    """A partially filled m x n integer array.

    Attributes
    ----------
    m : int
        Row count.
    n : int
        Column count.
    cells : dict[tuple[int, int], int]
        Mapping (row, col) -> entry, rows in [1, m], cols in [1, n].
    explicit_zero : bool
        Whether a 0 entry is admissible (signed magic arrays with odd ms,
        magic rectangles). Defaults to False.
    """

    __slots__ = ("m", "n", "cells", "explicit_zero")

    def __init__(self, m, n, cells=None, explicit_zero=False):
        if m < 1 or n < 1:
            raise ValueError(f"bad dimensions {m}x{n}")
        self.m = m
        self.n = n
        self.explicit_zero = explicit_zero
        self.cells = {}
        if cells:
            for (r, c), v in cells.items():
                if not (1 <= r <= m and 1 <= c <= n):
                    raise ValueError(f"cell ({r},{c}) outside {m}x{n}")
                if v == 0 and not explicit_zero:
                    raise ValueError(f"zero entry at ({r},{c}) without explicit_zero")
                self.cells[(r, c)] = int(v)

    @staticmethod
    def from_rows(rows, explicit_zero=False):
        """Build a grid from a list of row lists, None marking an empty cell."""
        m = len(rows)
        n = len(rows[0]) if rows else 0
        cells = {}
        for i, row in enumerate(rows, start=1):
            if len(row) != n:
                raise ValueError("ragged rows")
            for j, v in enumerate(row, start=1):
                if v is not None:
                    cells[(i, j)] = v
        return Grid(m, n, cells, explicit_zero=explicit_zero)

    def rows_list(self):
        """Inverse of from_rows: list of row lists with None for empty cells."""
        return [[self.cells.get((i, j)) for j in range(1, self.n + 1)]
                for i in range(1, self.m + 1)]

    def __eq__(self, other):
        return (isinstance(other, Grid) and self.m == other.m
                and self.n == other.n and self.cells == other.cells)

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.cells.items())))

    def __repr__(self):
        return f"Grid({self.m}x{self.n}, {len(self.cells)} filled)"


# ordered column sums of a block, one per column
ColumnSignature = tuple


@dataclass(frozen=True)
class HeffterParams:
    """Parameter tuple (m, n, s, k, lambda, t) of an integer relative Heffter array.

    Validates 4 <= s <= n, 4 <= k <= m, ms = nk, lam | 2ms and t | 2ms/lam,
    and derives v = 2ms/lam + t and ell = v/t.
    """

    m: int
    n: int
    s: int
    k: int
    lam: int
    t: int

    def __post_init__(self):
        m, n, s, k, lam, t = self.m, self.n, self.s, self.k, self.lam, self.t
        if not (4 <= s <= n and 4 <= k <= m):
            raise ValueError(f"need 4 <= s <= n and 4 <= k <= m, got {self}")
        if m * s != n * k:
            raise ValueError(f"ms != nk for {self}")
        if lam < 1 or (2 * m * s) % lam != 0:
            raise ValueError(f"lambda={lam} does not divide 2ms={2 * m * s}")
        if t < 1 or (2 * m * s // lam) % t != 0:
            raise ValueError(f"t={t} does not divide 2ms/lambda={2 * m * s // lam}")

    @property
    def v(self) -> int:
        return 2 * self.m * self.s // self.lam + self.t

    @property
    def ell(self) -> int:
        return self.v // self.t


@dataclass(frozen=True)
class SupportSpec:
    """The admissible support of an integer relative Heffter array.

    Elements are [1, floor(t*ell/2)] minus the multiples {ell, 2*ell, ...} up to
    floor(t/2)*ell. Each element must appear (up to sign) full_multiplicity
    times, except half_element which, when present (ell even and t odd),
    appears half_multiplicity times.
    """

    base_hi: int
    excluded: frozenset = field(repr=False)
    half_element: int | None
    full_multiplicity: int
    half_multiplicity: int

    def elements(self) -> set:
        return set(range(1, self.base_hi + 1)) - self.excluded

    def multiplicity(self, x: int) -> int:
        if x == self.half_element:
            return self.half_multiplicity
        return self.full_multiplicity


def support_spec(ms: int, lam: int, t: int) -> SupportSpec:
    """Support spec from the raw quantities: ms, the fold lam, the subgroup order t."""
    if (2 * ms) % lam != 0 or (2 * ms // lam) % t != 0:
        raise ValueError(f"invalid (ms, lam, t) = ({ms}, {lam}, {t})")
    ell = 2 * ms // (lam * t) + 1
    base_hi = t * ell // 2
    excluded = frozenset(j * ell for j in range(1, t // 2 + 1))
    half = t * ell // 2 if (ell % 2 == 0 and t % 2 == 1) else None
    spec = SupportSpec(base_hi, excluded, half, lam, lam // 2)
    count = len(spec.elements()) * lam - (lam // 2 if half is not None else 0)
    assert count == ms, f"support size {count} != ms"
    return spec


def phi_support(p: HeffterParams) -> SupportSpec:
    """Support spec for params p: base interval, excluded multiples, multiplicities."""
    return support_spec(p.m * p.s, p.lam, p.t)


def row_sum(g: Grid, i: int) -> int:
    if not 1 <= i <= g.m:
        raise IndexError(f"row {i} outside [1,{g.m}]")
    return sum(v for (r, _), v in g.cells.items() if r == i)


def col_sum(g: Grid, j: int) -> int:
    if not 1 <= j <= g.n:
        raise IndexError(f"col {j} outside [1,{g.n}]")
    return sum(v for (_, c), v in g.cells.items() if c == j)


def column_signature(g: Grid) -> ColumnSignature:
    sums = [0] * g.n
    for (_, c), v in g.cells.items():
        sums[c - 1] += v
    return tuple(sums)


def row_signature(g: Grid) -> tuple:
    sums = [0] * g.m
    for (r, _), v in g.cells.items():
        sums[r - 1] += v
    return tuple(sums)


def is_shiftable(g: Grid) -> bool:
    """True iff every row and every column has as many positive as negative entries."""
    rpos = [0] * (g.m + 1)
    rneg = [0] * (g.m + 1)
    cpos = [0] * (g.n + 1)
    cneg = [0] * (g.n + 1)
    for (r, c), v in g.cells.items():
        if v > 0:
            rpos[r] += 1
            cpos[c] += 1
        elif v < 0:
            rneg[r] += 1
            cneg[c] += 1
    return rpos == rneg and cpos == cneg


def shift(g: Grid, x: int) -> Grid:
    """The grid g +- x: add x to every positive entry and -x to every negative one."""
    if x < 0:
        raise ValueError(f"shift amount must be nonnegative, got {x}")
    if not is_shiftable(g):
        raise ValueError("shift of a non-shiftable grid is undefined")
    cells = {rc: (v + x if v > 0 else v - x) for rc, v in g.cells.items()}
    return Grid(g.m, g.n, cells, explicit_zero=g.explicit_zero)


def transpose(g: Grid) -> Grid:
    return Grid(g.n, g.m, {(c, r): v for (r, c), v in g.cells.items()},
                explicit_zero=g.explicit_zero)


def entry_list(g: Grid) -> list:
    """The multiset E(g) of all entries, as a sorted list."""
    return sorted(g.cells.values())


def support(g: Grid) -> set:
    """The set of absolute values of the entries of g."""
    return {abs(v) for v in g.cells.values()}


def juxtapose(blocks) -> Grid:
    """Horizontal concatenation of fully filled grids of equal height."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("nothing to juxtapose")
    m = blocks[0].m
    cells = {}
    off = 0
    zero_ok = False
    for b in blocks:
        if b.m != m:
            raise ValueError(f"height mismatch: {b.m} != {m}")
        if len(b.cells) != b.m * b.n:
            raise ValueError("juxtapose requires fully filled blocks")
        zero_ok = zero_ok or b.explicit_zero
        for (r, c), v in b.cells.items():
            cells[(r, c + off)] = v
        off += b.n
    return Grid(m, off, cells, explicit_zero=zero_ok)


def diagonal_cells(m: int, n: int, i: int) -> list:
    """Cells of the i-th diagonal: row r paired with column i+r-1 (mod n, in [1,n])."""
    return [(r, mod1(i + r - 1, n)) for r in range(1, m + 1)]


# --- serialization -----------------------------------------------------------

def to_json(g: Grid) -> str:
    items = [{"r": r, "c": c, "v": v} for (r, c), v in sorted(g.cells.items())]
    return json.dumps({"m": g.m, "n": g.n, "cells": items})


def from_json(text: str) -> Grid:
    obj = json.loads(text)
    cells = {(e["r"], e["c"]): e["v"] for e in obj["cells"]}
    zero_ok = any(v == 0 for v in cells.values())
    return Grid(obj["m"], obj["n"], cells, explicit_zero=zero_ok)


def to_csv(g: Grid) -> str:
    lines = [f"{g.m},{g.n}"]
    for i in range(1, g.m + 1):
        row = [str(g.cells[(i, j)]) if (i, j) in g.cells else ""
               for j in range(1, g.n + 1)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> Grid:
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    m, n = (int(x) for x in lines[0].split(","))
    cells = {}
    for i, ln in enumerate(lines[1:m + 1], start=1):
        fields = ln.split(",")
        if len(fields) != n:
            raise ValueError(f"row {i} has {len(fields)} fields, expected {n}")
        for j, f in enumerate(fields, start=1):
            if f.strip() != "":
                cells[(i, j)] = int(f)
    zero_ok = any(v == 0 for v in cells.values())
    return Grid(m, n, cells, explicit_zero=zero_ok)


def to_pretty(g: Grid) -> str:
    """Aligned-column rendering with empty cells left blank."""
    text = [[str(g.cells[(i, j)]) if (i, j) in g.cells else ""
             for j in range(1, g.n + 1)] for i in range(1, g.m + 1)]
    widths = [max(len(text[i][j]) for i in range(g.m)) or 1 for j in range(g.n)]
    return "\n".join("  ".join(t.rjust(w) for t, w in zip(row, widths)).rstrip()
                     for row in text) + "\n"
