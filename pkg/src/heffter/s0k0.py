"""Constructions for both fill parameters divisible by 4.

One 3x2 block template is shifted by a planned sequence of offsets and the
copies are laid along a diagonal: block j is anchored so its top-left entry
lands in cell (j+1, 4*q_j + j + 1) with q_j = floor(j / lcm(m,n)), all
reduced to residues in [1,m] x [1,n]. The offset sequence is chosen so block
supports tile the admissible support with the right multiplicities.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import lcm

from .core import Grid, HeffterParams, mod1, phi_support, support_spec
from .blocks import Block, b_ab


@dataclass(frozen=True)
class PlacementPlan:
    """Shift offsets plus the diagonal anchor rule for an m x n target."""

    m: int
    n: int
    offsets: tuple

    def anchor(self, j: int) -> tuple:
        q = j // lcm(self.m, self.n)
        return (mod1(j + 1, self.m), mod1(4 * q + j + 1, self.n))


def place_blocks(m: int, n: int, template, plan: PlacementPlan) -> Grid:
    """Place one shifted copy of the template per plan offset along the diagonal.

    template is a Block or a callable (j, offset) -> Block. Raises on cell
    collision (naming the two colliding block indices) and on a result whose
    row/column fills are not uniform or whose sums are nonzero.
    """
    cells = {}
    owner = {}
    for j, y in enumerate(plan.offsets):
        blk = template(j, y) if callable(template) else template
        shifted = blk.shifted(y)
        ar, ac = plan.anchor(j)
        for (r0, c0), val in shifted.grid.cells.items():
            rc = (mod1(ar + r0 - 1, m), mod1(ac + c0 - 1, n))
            if rc in cells:
                raise ValueError(
                    f"blocks {owner[rc]} and {j} collide at cell {rc}")
            cells[rc] = val
            owner[rc] = j
    g = Grid(m, n, cells)
    _check_uniform(g)
    return g


def _check_uniform(g: Grid):
    rfill = Counter(r for r, _ in g.cells)
    cfill = Counter(c for _, c in g.cells)
    if len(set(rfill.values())) != 1 or len(rfill) != g.m:
        raise RuntimeError("internal error: non-uniform row fill after placement")
    if len(set(cfill.values())) != 1 or len(cfill) != g.n:
        raise RuntimeError("internal error: non-uniform column fill after placement")
    rsum = Counter()
    csum = Counter()
    for (r, c), v in g.cells.items():
        rsum[r] += v
        csum[c] += v
    if any(rsum[r] != 0 for r in rsum) or any(csum[c] != 0 for c in csum):
        raise RuntimeError("internal error: nonzero line sum after placement")


def _interval(lo: int, hi: int, step: int = 1) -> list:
    return list(range(lo, hi + 1, step))


def fold_offsets(ms: int, lam: int, t: int) -> list:
    """Offsets y so that four-entry blocks covering {y+1} four times tile the
    support: each full element lands lam/4 times, a half element lam/8 times.

    Needs lam divisible by 4; a half element additionally forces lam divisible
    by 8. The list repeats the sorted base wholesale, half-copies appended.
    """
    assert lam % 4 == 0
    spec = support_spec(ms, lam, t)
    if spec.half_element is None:
        y = sorted(i - 1 for i in spec.elements()) * (lam // 4)
    else:
        assert lam % 8 == 0
        x1 = sorted(i - 1 for i in spec.elements() - {spec.half_element})
        y = x1 * (lam // 4) + [spec.half_element - 1] * (lam // 8)
    assert len(y) == ms // 4
    return y


def build_plan(p: HeffterParams) -> tuple:
    """Pick the block template and offset sequence for params p.

    Requires s and k divisible by 4. The chosen offsets repeat a base list X
    wholesale (never interleaved) and always tile the admissible support; the
    tiling is asserted before any placement happens.
    """
    m, s, lam, t, ell = p.m, p.s, p.lam, p.t, p.ell
    ms = m * s
    if p.s % 4 != 0 or p.k % 4 != 0:
        raise ValueError(f"both fill parameters must be divisible by 4, got {p}")

    if lam % 4 == 0 or ms % lam != 0:
        # lam not dividing ms forces lam divisible by 8, so this branch is
        # exactly the lam divisible by 4 territory (fold_offsets checks)
        block = b_ab(0, 0)
        y = fold_offsets(ms, lam, t)
    elif lam % 2 == 0:
        if ell % 2 == 1:
            block = b_ab(1, 0)
            xs = [_interval(i * ell, (i + 1) * ell - 3, 2) for i in range(t // 2)]
            x = [v for xi in xs for v in xi]
            if t % 2 == 1:
                assert ell % 4 == 1
                x += _interval((t - 1) * ell // 2, (t - 1) * ell // 2 + 2 * ((ell - 5) // 4), 2)
        else:
            assert t % 4 == 0
            block = b_ab(ell, 0)
            x = [v for i in range(t // 4) for v in _interval(2 * i * ell, (2 * i + 1) * ell - 2)]
        y = x * (lam // 2)
    elif t % 8 == 0:
        block = b_ab(ell, 2 * ell)
        x = [v for i in range(t // 8) for v in _interval(4 * i * ell, (4 * i + 1) * ell - 2)]
        y = x * lam
    elif t % 8 == 4:
        block = b_ab(1, ell)
        x = [v for i in range(t // 4) for v in _interval(2 * i * ell, (2 * i + 1) * ell - 3, 2)]
        y = x * lam
    else:
        # odd lam, t not divisible by 4
        assert ell % 4 == 1
        block = b_ab(1, 2)
        tops = t // 2 if t % 2 == 0 else (t - 1) // 2
        x = [v for i in range(tops) for v in _interval(i * ell, (i + 1) * ell - 5, 4)]
        if t % 2 == 1:
            assert ell % 8 == 1
            x += _interval((t - 1) * ell // 2, (t - 1) * ell // 2 + 4 * ((ell - 9) // 8), 4)
        y = x * lam

    assert len(y) == ms // 4, f"offset count {len(y)} != ms/4 for {p}"
    _assert_support_tiling(p, block, y)
    return block, PlacementPlan(p.m, p.n, tuple(y))


def _assert_support_tiling(p: HeffterParams, block: Block, offsets):
    got = Counter()
    for yv in offsets:
        for v in block.shifted(yv).grid.cells.values():
            got[abs(v)] += 1
    spec = phi_support(p)
    want = Counter({e: spec.multiplicity(e) for e in spec.elements()})
    assert got == want, f"support tiling mismatch for {p}"


def construct_s0k0(p: HeffterParams) -> Grid:
    """Shiftable integer Heffter array for s,k both divisible by 4."""
    block, plan = build_plan(p)
    return place_blocks(p.m, p.n, block, plan)
