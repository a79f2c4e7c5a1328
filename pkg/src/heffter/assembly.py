"""Diagonal assemblers turning block sequences into full arrays.

The base unit is the P-construction: d blocks of size 2 x 2b with alternating
opposite column sums are written along a wrapped diagonal of a 2d x d array,
first rows on top, second rows below, which forces every column of the result
to sum to zero. A whole array is then a grid of such units over column slices
of one block sequence, or, when both fill parameters are 2 mod 4, a square of
staggered whole blocks with one tiled band stacked underneath.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .blocks import Block, make_block, repeat
from .core import Grid, HeffterParams, mod1, transpose
from .pairs import nice_pair
from .verify import verify_blocchi2


@dataclass(frozen=True)
class PSequence:
    """d blocks of size 2 x 2b whose column sums alternate (s1,-s1,s2,-s2,...)
    with one shared signature; the diagonal layout needs 2b <= d."""

    blocks: tuple
    d: int
    b: int

    def __post_init__(self):
        if self.d != len(self.blocks):
            raise ValueError(f"d={self.d} but {len(self.blocks)} blocks given")
        widths = {blk.width for blk in self.blocks}
        if widths != {2 * self.b}:
            raise ValueError(f"blocks of width {sorted(widths)}, expected {2 * self.b}")
        if 2 * self.b > self.d:
            raise ValueError(f"{2 * self.b} columns per block exceed d={self.d}")
        cert = verify_blocchi2(self.blocks)
        if not cert.ok:
            raise ValueError(f"blocks violate the column-sum pattern: "
                             f"{cert.violations[0]}")


def p_sequence(blocks) -> PSequence:
    blocks = tuple(blocks)
    return PSequence(blocks, len(blocks), blocks[0].width // 2)


def assemble_P(ps: PSequence) -> Grid:
    """The 2d x d array with block i's first row on the diagonal cells
    (i, i+j-1) and its second row on (d+i, i+j-1), columns wrapped mod d."""
    d, b = ps.d, ps.b
    cells = {}
    for i, blk in enumerate(ps.blocks, start=1):
        g = blk.grid
        for j in range(1, 2 * b + 1):
            col = mod1(i + j - 1, d)
            cells[(i, col)] = g.cells[(1, j)]
            cells[(d + i, col)] = g.cells[(2, j)]
    return Grid(2 * d, d, cells)


def _column_slice(blk: Block, lo: int, hi: int) -> Block:
    """The 2 x (hi-lo+1) block made of columns lo..hi of blk."""
    cells = {}
    for (r, c), v in blk.grid.cells.items():
        if lo <= c <= hi:
            cells[(r, c - lo + 1)] = v
    return make_block(Grid(2, hi - lo + 1, cells))


def tile_grid(blocks, m: int, n: int, s: int) -> Grid:
    """m x n array tiling P-units over column slices of a length-m/2 sequence.

    With d = gcd(m/2, n) and a = sd/n, block h splits into n/d slices of
    width a; tile (i, j) is the P-unit over the j-th slices of blocks
    (i-1)d+1 .. id. Every row ends up with s filled cells and every column
    with 2a * (m/2d) of them.
    """
    blocks = tuple(blocks)
    assert len(blocks) == m // 2, f"{len(blocks)} blocks for m={m}"
    d = gcd(m // 2, n)
    assert (s * d) % n == 0, f"sd/n not integral for (m,n,s)=({m},{n},{s})"
    a = s * d // n
    assert a % 2 == 0, f"internal error: odd slice width a={a}"
    mbar = m // (2 * d)
    nbar = n // d
    cells = {}
    for i in range(mbar):
        band = blocks[i * d:(i + 1) * d]
        for j in range(nbar):
            ps = p_sequence(_column_slice(blk, a * j + 1, a * (j + 1))
                            for blk in band)
            unit = assemble_P(ps)
            for (r, c), v in unit.cells.items():
                cells[(i * 2 * d + r, j * d + c)] = v
    return Grid(m, n, cells)


def construct_s2k0(p: HeffterParams, budget=None) -> Grid:
    """Shiftable integer Heffter array for s = 2 and k = 0 (mod 4)."""
    if p.s % 4 != 2 or p.k % 4 != 0:
        raise ValueError(f"need s = 2 and k = 0 mod 4, got s={p.s}, k={p.k}")
    pair = nice_pair(p, budget)
    lam1 = p.m // (2 * len(pair.b1.blocks))
    return tile_grid(repeat(lam1, pair.b1).blocks, p.m, p.n, p.s)


def construct_k2s0(p: HeffterParams, budget=None) -> Grid:
    """Shiftable integer Heffter array for s = 0 and k = 2 (mod 4): the
    transpose of the swapped-parameter build."""
    if p.s % 4 != 0 or p.k % 4 != 2:
        raise ValueError(f"need s = 0 and k = 2 mod 4, got s={p.s}, k={p.k}")
    swapped = HeffterParams(p.n, p.m, p.k, p.s, p.lam, p.t)
    return transpose(construct_s2k0(swapped, budget))


def _staggered_square(blocks, n: int, s: int) -> Grid:
    """n x n array with block r's top-left entry at cell (2r-1, 2r-1),
    columns wrapped mod n; n/2 blocks of size 2 x s give s filled cells in
    every row and column."""
    cells = {}
    for r, blk in enumerate(blocks):
        g = blk.grid
        for j in range(1, s + 1):
            col = mod1(2 * r + j, n)
            cells[(2 * r + 1, col)] = g.cells[(1, j)]
            cells[(2 * r + 2, col)] = g.cells[(2, j)]
    return Grid(n, n, cells)


def construct_sk2_even(p: HeffterParams, budget=None) -> Grid:
    """Shiftable integer Heffter array for s = k = 2 (mod 4) with m even.

    The first n/2 blocks of the second sequence form a staggered n x n
    square; the last (m-n)/2 blocks of the first sequence tile the remaining
    (m-n) x n band, which is empty when m = n.
    """
    if p.s % 4 != 2 or p.k % 4 != 2:
        raise ValueError(f"need s = k = 2 mod 4, got s={p.s}, k={p.k}")
    if p.m % 2 != 0:
        raise ValueError(f"need m even, got m={p.m}")
    if p.m < p.n:
        swapped = HeffterParams(p.n, p.m, p.k, p.s, p.lam, p.t)
        return transpose(construct_sk2_even(swapped, budget))
    pair = nice_pair(p, budget)
    lam1 = p.m // (2 * len(pair.b1.blocks))
    b1 = repeat(lam1, pair.b1).blocks
    b2 = repeat(lam1, pair.b2).blocks
    half = p.n // 2
    square = _staggered_square(b2[:half], p.n, p.s)
    if p.m == p.n:
        return square
    band = tile_grid(b1[half:], p.m - p.n, p.n, p.s)
    cells = dict(square.cells)
    for (r, c), v in band.cells.items():
        cells[(p.n + r, c)] = v
    return Grid(p.m, p.n, cells)
