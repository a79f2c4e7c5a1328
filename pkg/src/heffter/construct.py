"""Top-level dispatch: Heffter arrays by residue case, signed magic arrays,
and the affine relabeling that turns a shiftable SMA into a magic rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .assembly import construct_k2s0, construct_s2k0, construct_sk2_even
from .core import (
    Grid,
    HeffterParams,
    OracleExhausted,
    UnsupportedCase,
    is_shiftable,
    shift,
    transpose,
)
from .s0k0 import construct_s0k0
from .verify import verify_integer_heffter, verify_mr, verify_sma


@dataclass(frozen=True)
class MRSpec:
    """Parameter bundle for a magic rectangle, with its forced sum constants."""

    m: int
    n: int
    s: int
    k: int

    def __post_init__(self):
        if not (1 <= self.s <= self.n and 1 <= self.k <= self.m):
            raise ValueError(
                f"need 1 <= s <= n and 1 <= k <= m, got ({self.m},{self.n};{self.s},{self.k})"
            )
        if self.m * self.s != self.n * self.k:
            raise ValueError(f"ms = {self.m * self.s} != nk = {self.n * self.k}")
        if (self.s * (self.m * self.s - 1)) % 2 or (self.k * (self.m * self.s - 1)) % 2:
            raise ValueError("sum constants are not integers for these parameters")

    @property
    def c1(self) -> int:
        return self.s * (self.m * self.s - 1) // 2

    @property
    def c2(self) -> int:
        return self.k * (self.m * self.s - 1) // 2

    @property
    def omega(self) -> range:
        return range(self.m * self.s)


def construct_heffter(p: HeffterParams, budget=None) -> Grid:
    """Integer lambda-fold relative Heffter array for the four residue cases.

    Dispatches on (s mod 4, k mod 4): (0,0) places diagonal 3x2 blocks, (2,0)
    and (0,2) tile a nice pair through the wrapped-diagonal P arrangement, and
    (2,2) staggers one block family into a square plus an optional band, which
    needs m and n both even. Anything else raises UnsupportedCase.
    """
    s4, k4 = p.s % 4, p.k % 4
    if s4 == 0 and k4 == 0:
        g = construct_s0k0(p)
    elif s4 == 2 and k4 == 0:
        g = construct_s2k0(p, budget)
    elif s4 == 0 and k4 == 2:
        g = construct_k2s0(p, budget)
    elif s4 == 2 and k4 == 2:
        if p.m % 2 or p.n % 2:
            raise UnsupportedCase(
                f"s = {p.s} and k = {p.k} are both 2 (mod 4); this case needs "
                f"m and n both even, got m = {p.m}, n = {p.n}"
            )
        g = construct_sk2_even(p, budget)
    else:
        raise UnsupportedCase(
            f"no construction for s = {p.s}, k = {p.k}: both must be even"
        )
    cert = verify_integer_heffter(g, p)
    assert cert.ok, cert.violations
    return g


def _check_sma_params(m, n, s, k):
    if s % 2 or k % 2 or s < 4 or k < 4:
        raise ValueError(f"need s, k even and >= 4, got s = {s}, k = {k}")
    if not (s <= n and k <= m):
        raise ValueError(f"need s <= n and k <= m, got ({m},{n};{s},{k})")
    if m * s != n * k:
        raise ValueError(f"ms = {m * s} != nk = {n * k}")


_seed_cache: dict = {}


def _square_seed(n, s, budget) -> Grid:
    """Square array from the bounded search, cached per (n, s)."""
    from .oracle import search_sma

    got = _seed_cache.get((n, s))
    if got is None:
        got = search_sma(n, n, s, s, budget)
        if not isinstance(got, Grid):
            raise OracleExhausted(
                f"oracle budget exhausted looking for the square seed "
                f"SMA({n},{n};{s},{s})"
            )
        _seed_cache[(n, s)] = got
    return got


def _stack(top: Grid, bottom: Grid) -> Grid:
    assert top.n == bottom.n
    cells = dict(top.cells)
    for (i, j), v in bottom.cells.items():
        cells[(top.m + i, j)] = v
    return Grid(top.m + bottom.m, top.n, cells)


def construct_sma(m, n, s, k, budget=None) -> Grid:
    """Signed magic array for all even s, k with 4 <= s <= n, 4 <= k <= m,
    ms = nk.

    Whenever s or k is 0 (mod 4), or m and n are even, the lambda = 2, t = 1
    Heffter array is itself a shiftable SMA. The leftover case has m, n both
    odd with s, k both 2 (mod 4): orient so m >= n, stack a searched square
    on top of a shiftable even-height array built recursively, with the
    bottom entries shifted past the top's support.
    """
    _check_sma_params(m, n, s, k)
    if not (s % 4 == 2 and k % 4 == 2 and m % 2 and n % 2):
        g = construct_heffter(HeffterParams(m, n, s, k, 2, 1), budget)
        cert = verify_sma(g, s, k)
        assert cert.ok, cert.violations
        return g
    if n > m:
        return transpose(construct_sma(n, m, k, s, budget))
    top = _square_seed(n, s, budget)
    if m == n:
        return top
    band = construct_sma(m - n, n, s, k - s, budget)
    g = _stack(top, shift(band, n * s // 2))
    cert = verify_sma(g, s, k)
    assert cert.ok, cert.violations
    return g


def mr_from_sma(g: Grid, s, k) -> Grid:
    """Magic rectangle from a shiftable signed magic array.

    Negative entries x become x + ms/2 and positive entries y become
    y + ms/2 - 1, so the image is [0, ms-1] and each row gains s/2 copies
    of ms/2 and s/2 copies of ms/2 - 1 on top of its zero sum.
    """
    cert = verify_sma(g, s, k)
    if not cert.ok:
        raise ValueError(f"input is not a signed magic array: {cert.violations[0]}")
    if not is_shiftable(g):
        raise ValueError("input array is not shiftable")
    half = g.m * s // 2
    cells = {
        pos: (x + half if x < 0 else x + half - 1) for pos, x in g.cells.items()
    }
    out = Grid(g.m, g.n, cells, explicit_zero=True)
    got = verify_mr(out, s, k)
    assert got.ok, got.violations
    return out


def construct_mr(m, n, s, k, budget=None) -> Grid:
    """Magic rectangle for the four residue cases of the existence theorem.

    Same case split as construct_heffter; s, k both 2 (mod 4) needs m and n
    both even, because only then is the signed magic array shiftable.
    """
    spec = MRSpec(m, n, s, k)
    if s % 2 or k % 2 or s < 4 or k < 4:
        raise UnsupportedCase(
            f"no magic rectangle construction for s = {s}, k = {k}: "
            f"both must be even and >= 4"
        )
    if s % 4 == 2 and k % 4 == 2 and (m % 2 or n % 2):
        raise UnsupportedCase(
            f"s = {s} and k = {k} are both 2 (mod 4); this case needs "
            f"m and n both even, got m = {m}, n = {n}"
        )
    g = construct_sma(spec.m, spec.n, spec.s, spec.k, budget)
    return mr_from_sma(g, s, k)
