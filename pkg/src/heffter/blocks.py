"""Elementary building blocks and sequence algebra.

Every construction in the package assembles small fixed blocks (2 or 3 rows)
whose column sums and support multiplicities are known in closed form. Blocks
carry their column signature and multiplicity so assembly loops never
recompute them; construction recomputes both and fails loudly on a mismatch.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import Grid, column_signature, is_shiftable, shift, support


@dataclass(frozen=True)
class Block:
    """A small fully or partially filled grid with its column signature.

    mu is the common multiplicity of the support within the entries (each
    element of support appears, up to sign, exactly mu times), or None when
    multiplicities are not uniform.
    """

    grid: Grid
    signature: tuple
    mu: int | None

    def __post_init__(self):
        assert self.signature == column_signature(self.grid)

    @property
    def width(self):
        return self.grid.n

    def shifted(self, x: int) -> "Block":
        return make_block(shift(self.grid, x))

    def entries(self):
        return sorted(self.grid.cells.values())


def make_block(rows_or_grid) -> Block:
    g = rows_or_grid if isinstance(rows_or_grid, Grid) else Grid.from_rows(rows_or_grid)
    counts = Counter(abs(v) for v in g.cells.values())
    mus = set(counts.values())
    mu = mus.pop() if len(mus) == 1 else None
    return Block(g, column_signature(g), mu)


@dataclass(frozen=True)
class BlockSequence:
    """An ordered sequence of blocks of one common width."""

    blocks: tuple

    def __post_init__(self):
        widths = {b.width for b in self.blocks}
        if len(widths) > 1:
            raise ValueError(f"mixed block widths {sorted(widths)}")

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i):
        got = self.blocks[i]
        return BlockSequence(got) if isinstance(i, slice) else got

    def shifted(self, x: int) -> "BlockSequence":
        return BlockSequence(tuple(b.shifted(x) for b in self.blocks))

    def supports(self) -> set:
        out = set()
        for b in self.blocks:
            out |= support(b.grid)
        return out


def seq(*blocks) -> BlockSequence:
    return BlockSequence(tuple(blocks))


def repeat(n: int, s: BlockSequence) -> BlockSequence:
    """n copies of the whole sequence, concatenated: (B1..Br, B1..Br, ...)."""
    return BlockSequence(tuple(s.blocks) * n)


def concat(*seqs) -> BlockSequence:
    out = []
    for s in seqs:
        out.extend(s.blocks)
    return BlockSequence(tuple(out))


def b_ab(a: int, b: int) -> Block:
    """The 3x2 diagonal block with row sums (-a, a) and column sums (-b, b).

    Filled cells: (1,1)=1, (1,2)=-(a+1), (3,1)=-(b+1), (3,2)=a+b+1; the middle
    row is empty.
    """
    if a < 0 or b < 0:
        raise ValueError(f"need a,b >= 0, got ({a},{b})")
    g = Grid(3, 2, {(1, 1): 1, (1, 2): -(a + 1),
                    (3, 1): -(b + 1), (3, 2): a + b + 1})
    return make_block(g)


def _blk(row1, row2) -> Block:
    return make_block([list(row1), list(row2)])


def _l44(ell: int) -> dict:
    A = _blk((1, -2, -3, 4), (-1, 2, 3, -4))
    F = _blk((1, -2, -4, 5), (-1, 2, 4, -5))
    E = _blk((1, -1, 3, -4, -3, 4), (-2, 2, -1, 2, 3, -4))
    G = _blk((4, 2, -2, 2, -1, -5), (-5, -1, 4, -4, 1, 5))
    E2 = _blk((1, 3, -1, -4, -3, 4), (-2, -1, 2, 2, 3, -4))
    G2 = _blk((4, -2, 2, 2, -1, -5), (-5, 4, -1, -4, 1, 5))
    H = _blk((1, -(ell + 1), -(2 * ell + 1), 3 * ell + 1),
             (-1, ell + 1, 2 * ell + 1, -(3 * ell + 1)))
    L = _blk((1, 3 * ell + 1, -(ell + 1), ell + 1, -1, -(3 * ell + 1)),
             (-(ell + 1), -(2 * ell + 1), 2 * ell + 1, -(2 * ell + 1), 1, 3 * ell + 1))
    return {"A": A, "F": F, "E": E, "G": G, "E'": E2, "G'": G2, "H": H, "L": L}


def _l45(ell: int) -> dict:
    A = _blk((1, -1, 2, -2), (-1, 1, -2, 2))
    E = _blk((1, 2, -1, 1, -1, -2), (-2, -1, 2, -2, 1, 2))
    F = _blk((1, -1, ell + 1, -(ell + 1)), (-1, 1, -(ell + 1), ell + 1))
    G = _blk((1, ell + 1, -1, 1, -1, -(ell + 1)),
             (-(ell + 1), -1, ell + 1, -(ell + 1), 1, ell + 1))
    return {"A": A, "E": E, "F": F, "G": G}


def _l46() -> dict:
    return {
        "U3": _blk((1, -2, -4, 5), (-1, 2, 4, -5)),
        "U5": _blk((1, -2, -3, 4), (-1, 2, 3, -4)),
        "V1": _blk((2, -2, -5, -6, 4, 7), (-3, 3, 6, 5, -4, -7)),
        "V3": _blk((1, -1, -5, -6, 4, 7), (-2, 2, 6, 5, -4, -7)),
        "V5": _blk((6, -6, -2, -3, 1, 4), (-7, 7, 3, 2, -1, -4)),
        "V7": _blk((1, -1, -4, -5, 3, 6), (-2, 2, 5, 4, -3, -6)),
        "Z": _blk((1, -1, 4, -5, -7, 8), (-2, 2, -4, 5, 7, -8)),
        "Z'": _blk((1, 4, -1, -5, -7, 8), (-2, -4, 2, 5, 7, -8)),
    }


def _l47(ell: int) -> dict:
    W4 = _blk((1, -(ell + 1), -(2 * ell + 1), 3 * ell + 1),
              (-1, ell + 1, 2 * ell + 1, -(3 * ell + 1)))
    W6 = _blk((1, -1, -(3 * ell + 1), -(4 * ell + 1), 2 * ell + 1, 5 * ell + 1),
              (-(ell + 1), ell + 1, 4 * ell + 1, 3 * ell + 1,
               -(2 * ell + 1), -(5 * ell + 1)))
    return {"W4": W4, "W6": W6}


def _l48(p: int, y: int) -> dict:
    if p < 3 or p % 2 == 0 or y < 1:
        raise ValueError(f"need odd p >= 3 and y >= 1, got p={p}, y={y}")
    a, b = (p + 1) * y + 2, (p + 2) * y + 2
    W4 = _blk((y + 1, -(2 * y + 1), -a, b), (-(y + 1), 2 * y + 1, a, -b))
    W6 = _blk((2 * y + 1, -(2 * y + 1), 1, -(y + 1), -a, b),
              (-(p * y + 2), p * y + 2, -1, y + 1, a, -b))
    W6p = _blk((2 * y + 1, 1, -(2 * y + 1), -(y + 1), -a, b),
               (-(p * y + 2), -1, p * y + 2, y + 1, a, -b))
    return {"W4": W4, "W6": W6, "W6'": W6p}


def _q(lam2: int) -> dict:
    if lam2 % 4 != 0 or lam2 < 4:
        raise ValueError(f"need lam2 divisible by 4, got {lam2}")
    reps = lam2 // 4
    return {"Q": _blk((1, -1) * reps, (-1, 1) * reps)}


_FAMILIES = {
    "L44": (_l44, ("ell",)),
    "L45": (_l45, ("ell",)),
    "L46": (_l46, ()),
    "L47": (_l47, ("ell",)),
    "L48": (_l48, ("p", "y")),
    "Q": (_q, ("lam2",)),
}


def lemma_blocks(family: str, **params) -> dict:
    """Named map of the elementary blocks of one construction family.

    Families: L44 (ell), L45 (ell), L46 (no params), L47 (ell), L48 (p, y),
    Q (lam2). The same letter in different families names a different block.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown block family {family!r}")
    fn, names = _FAMILIES[family]
    missing = [k for k in names if k not in params]
    extra = [k for k in params if k not in names]
    if missing or extra:
        raise ValueError(f"{family} takes {names}, got {sorted(params)}")
    return fn(**params)


def h_seq(b: int) -> BlockSequence:
    """(V7, V7 shifted 6, ..., V7 shifted 6(b-1)); support [1, 6b]. H(0) is empty."""
    if b < 0:
        raise ValueError("need b >= 0")
    v7 = _l46()["V7"]
    return BlockSequence(tuple(v7.shifted(6 * c) for c in range(b)))


def juxtapose_blocks(blocks) -> Block:
    """Side-by-side concatenation of fully filled blocks into one wider block."""
    from .core import juxtapose
    return make_block(juxtapose([b.grid for b in blocks]))


def expected_conditions() -> dict:
    """Which block condition each elementary block satisfies, as a closed table.

    Maps (family, name) -> (passes verify_blocchi, passes verify_blocchiOLD)
    for the singleton sequence holding just that block.
    """
    both, first_only, second_only = (True, True), (True, False), (False, True)
    table = {}
    for nm in ("A", "F", "H"):
        table[("L44", nm)] = both
    table[("L44", "E")] = first_only
    table[("L44", "G")] = first_only
    table[("L44", "E'")] = second_only
    table[("L44", "G'")] = second_only
    table[("L44", "L")] = both
    for nm in ("A", "E", "F", "G"):
        table[("L45", nm)] = both
    for nm in ("U3", "U5", "V1", "V3", "V5", "V7"):
        table[("L46", nm)] = both
    table[("L46", "Z")] = first_only
    table[("L46", "Z'")] = second_only
    table[("L47", "W4")] = both
    table[("L47", "W6")] = both
    table[("L48", "W4")] = both
    table[("L48", "W6")] = first_only
    table[("L48", "W6'")] = second_only
    table[("Q", "Q")] = both
    return table
