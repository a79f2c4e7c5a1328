"""Exact verifiers for every array class the package builds.

Each verifier returns a Certificate rather than raising: content failures are
reported with the violated clause and a witness, capped at 16 violations so a
badly broken grid does not flood the report. All arithmetic is exact integer
arithmetic.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .core import (Grid, HeffterParams, column_signature, is_shiftable,
                   phi_support, row_signature)

VIOLATION_CAP = 16


@dataclass
class Certificate:
    """Verification report: ok iff violations is empty.

    violations is a list of (clause, detail, witness) tuples, where witness is
    a cell, row or column index when one pinpoints the failure, else None.
    """

    ok: bool = True
    violations: list = field(default_factory=list)
    _truncated: int = 0

    def add(self, clause, detail, witness=None):
        self.ok = False
        if len(self.violations) < VIOLATION_CAP:
            self.violations.append((clause, detail, witness))
        else:
            self._truncated += 1

    def to_json(self) -> str:
        items = [{"clause": c, "detail": d, "witness": w}
                 for c, d, w in self.violations]
        obj = {"ok": self.ok, "violations": items}
        if self._truncated:
            obj["truncated"] = self._truncated
        return json.dumps(obj)

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class CyclicContext:
    """Modular setting of a cyclic verification: Z_v with subgroup J of order t."""

    v: int
    t: int
    J: frozenset
    iota: int | None

    @staticmethod
    def for_params(p: HeffterParams) -> "CyclicContext":
        v, t, ell = p.v, p.t, p.ell
        J = frozenset((j * ell) % v for j in range(t))
        assert len(J) == t
        return CyclicContext(v, t, J, v // 2 if v % 2 == 0 else None)


def _check_fill(cert: Certificate, g: Grid, s: int, k: int):
    rfill = [0] * (g.m + 1)
    cfill = [0] * (g.n + 1)
    for (r, c) in g.cells:
        rfill[r] += 1
        cfill[c] += 1
    for i in range(1, g.m + 1):
        if rfill[i] != s:
            cert.add("row-fill", f"row {i} has {rfill[i]} filled cells, expected {s}", i)
    for j in range(1, g.n + 1):
        if cfill[j] != k:
            cert.add("col-fill", f"col {j} has {cfill[j]} filled cells, expected {k}", j)


def _check_zero_sums(cert: Certificate, g: Grid, modulus=None):
    for i, t in enumerate(row_signature(g), start=1):
        bad = (t % modulus != 0) if modulus else (t != 0)
        if bad:
            cert.add("row-sum", f"row {i} sums to {t}", i)
    for j, t in enumerate(column_signature(g), start=1):
        bad = (t % modulus != 0) if modulus else (t != 0)
        if bad:
            cert.add("col-sum", f"col {j} sums to {t}", j)


def verify_sma(g: Grid, s: int, k: int) -> Certificate:
    """Check g is a signed magic array with s entries per row and k per column."""
    cert = Certificate()
    _check_fill(cert, g, s, k)
    ms = g.m * s
    if ms % 2 == 1:
        omega = set(range(-(ms - 1) // 2, (ms - 1) // 2 + 1))
    else:
        omega = set(range(-ms // 2, ms // 2 + 1)) - {0}
    got = Counter(g.cells.values())
    for x in sorted(omega - set(got)):
        cert.add("coverage", f"element {x} missing")
    for x, c in sorted(got.items()):
        if x not in omega:
            cert.add("coverage", f"unexpected element {x}")
        elif c != 1:
            cert.add("coverage", f"element {x} appears {c} times, expected once")
    _check_zero_sums(cert, g)
    return cert


def verify_integer_heffter(g: Grid, p: HeffterParams) -> Certificate:
    """Check g satisfies the integer relative Heffter conditions for params p."""
    cert = Certificate()
    if (g.m, g.n) != (p.m, p.n):
        cert.add("dims", f"grid is {g.m}x{g.n}, params say {p.m}x{p.n}")
        return cert
    _check_fill(cert, g, p.s, p.k)
    spec = phi_support(p)
    elems = spec.elements()
    got = Counter(abs(v) for v in g.cells.values())
    for x in sorted(elems - set(got)):
        cert.add("multiplicity", f"support element {x} missing")
    for x, c in sorted(got.items()):
        if x not in elems:
            cert.add("multiplicity", f"entry {x} outside admissible support")
        elif c != spec.multiplicity(x):
            cert.add("multiplicity",
                     f"element {x} appears {c} times up to sign, "
                     f"expected {spec.multiplicity(x)}")
    _check_zero_sums(cert, g)
    return cert


def verify_cyclic_heffter(g: Grid, p: HeffterParams) -> Certificate:
    """Check g, reduced mod v, is a lambda-fold Heffter array over Z_v relative to J."""
    cert = Certificate()
    if (g.m, g.n) != (p.m, p.n):
        cert.add("dims", f"grid is {g.m}x{g.n}, params say {p.m}x{p.n}")
        return cert
    ctx = CyclicContext.for_params(p)
    v = ctx.v
    _check_fill(cert, g, p.s, p.k)
    reduced = Counter()
    for (r, c), e in sorted(g.cells.items()):
        x = e % v
        if x in ctx.J:
            cert.add("subgroup", f"entry {e} lies in J mod {v}", (r, c))
        reduced[x] += 1
    for x in range(v):
        if x in ctx.J:
            continue
        occ = reduced[x] + reduced[(v - x) % v]
        if occ != p.lam:
            cert.add("lambda-count",
                     f"residue {x} appears {occ} times in E(A) u -E(A), "
                     f"expected {p.lam}")
    _check_zero_sums(cert, g, modulus=v)
    return cert


def verify_mr(g: Grid, s: int, k: int) -> Certificate:
    """Check g is a magic rectangle on [0, ms-1] with the forced constants."""
    cert = Certificate()
    _check_fill(cert, g, s, k)
    ms = g.m * s
    got = Counter(g.cells.values())
    for x in range(ms):
        if got[x] == 0:
            cert.add("coverage", f"value {x} missing")
    for x, c in sorted(got.items()):
        if not 0 <= x < ms:
            cert.add("coverage", f"unexpected value {x}")
        elif c != 1:
            cert.add("coverage", f"value {x} appears {c} times, expected once")
    # constants forced by the definition; compare doubled sums to stay integral
    for i, t in enumerate(row_signature(g), start=1):
        if 2 * t != s * (ms - 1):
            cert.add("row-sum", f"row {i} sums to {t}, expected {s * (ms - 1)}/2", i)
    for j, t in enumerate(column_signature(g), start=1):
        if 2 * t != k * (ms - 1):
            cert.add("col-sum", f"col {j} sums to {t}, expected {k * (ms - 1)}/2", j)
    return cert


# --- block-sequence conditions ------------------------------------------------

def _as_grids(seq):
    # accept Block objects (carrying .grid) or bare grids
    return [getattr(b, "grid", b) for b in seq]


def _common_width(grids):
    widths = {g.n for g in grids}
    if len(widths) != 1:
        raise ValueError(f"blocks of mixed widths {sorted(widths)}")
    (w,) = widths
    if w % 2 != 0:
        raise ValueError(f"block width {w} is odd, expected 2b")
    return w


def verify_blocchi(seq) -> Certificate:
    """Blocks are shiftable 2-row, zero row sums, column sums (s1,-s1,s2,-s2,...)
    for one signature shared by the whole sequence."""
    grids = _as_grids(seq)
    cert = Certificate()
    if not grids:
        cert.add("empty", "no blocks")
        return cert
    w = _common_width(grids)
    sigma = column_signature(grids[0])[0::2]
    for idx, b in enumerate(grids, start=1):
        if b.m != 2:
            cert.add("shape", f"block {idx} has {b.m} rows, expected 2", idx)
            continue
        gS = column_signature(b)
        for i in range(w // 2):
            if gS[2 * i] != sigma[i] or gS[2 * i + 1] != -sigma[i]:
                cert.add("col-pattern",
                         f"block {idx} cols {2 * i + 1},{2 * i + 2} sum to "
                         f"({gS[2 * i]},{gS[2 * i + 1]}), expected "
                         f"({sigma[i]},{-sigma[i]})", idx)
        for r, t in enumerate(row_signature(b), start=1):
            if t != 0:
                cert.add("row-sum", f"block {idx} row {r} sums to {t}", idx)
        if not is_shiftable(b):
            cert.add("shiftable", f"block {idx} is not shiftable", idx)
    return cert


def verify_blocchiOLD(seq) -> Certificate:
    """Blocks are shiftable 2-row, zero row sums, one shared column-sum vector
    whose odd positions sum to 0 and even positions sum to 0."""
    grids = _as_grids(seq)
    cert = Certificate()
    if not grids:
        cert.add("empty", "no blocks")
        return cert
    _common_width(grids)
    sigma = column_signature(grids[0])
    if sum(sigma[0::2]) != 0 or sum(sigma[1::2]) != 0:
        cert.add("alt-sum",
                 f"odd/even position sums ({sum(sigma[0::2])},{sum(sigma[1::2])}) "
                 "are not both zero")
    for idx, b in enumerate(grids, start=1):
        if b.m != 2:
            cert.add("shape", f"block {idx} has {b.m} rows, expected 2", idx)
            continue
        if column_signature(b) != sigma:
            cert.add("col-pattern",
                     f"block {idx} column sums {column_signature(b)} differ "
                     f"from shared {sigma}", idx)
        for r, t in enumerate(row_signature(b), start=1):
            if t != 0:
                cert.add("row-sum", f"block {idx} row {r} sums to {t}", idx)
        if not is_shiftable(b):
            cert.add("shiftable", f"block {idx} is not shiftable", idx)
    return cert


def verify_blocchi2(seq) -> Certificate:
    """Only the alternating column-sign pattern (s1,-s1,...); no shiftability
    or row-sum requirement."""
    grids = _as_grids(seq)
    cert = Certificate()
    if not grids:
        cert.add("empty", "no blocks")
        return cert
    w = _common_width(grids)
    sigma = column_signature(grids[0])[0::2]
    for idx, b in enumerate(grids, start=1):
        if b.m != 2:
            cert.add("shape", f"block {idx} has {b.m} rows, expected 2", idx)
            continue
        gS = column_signature(b)
        for i in range(w // 2):
            if gS[2 * i] != sigma[i] or gS[2 * i + 1] != -sigma[i]:
                cert.add("col-pattern",
                         f"block {idx} cols {2 * i + 1},{2 * i + 2} sum to "
                         f"({gS[2 * i]},{gS[2 * i + 1]}), expected "
                         f"({sigma[i]},{-sigma[i]})", idx)
    return cert


def verify_nice_pair(pair) -> Certificate:
    """First sequence per verify_blocchi, second per verify_blocchiOLD, equal
    length, and matching entry multisets block by block."""
    b1 = getattr(pair, "b1", None)
    b2 = getattr(pair, "b2", None)
    if b1 is None:
        b1, b2 = pair
    g1, g2 = _as_grids(b1), _as_grids(b2)
    cert = Certificate()
    if len(g1) != len(g2):
        cert.add("length", f"sequence lengths differ: {len(g1)} vs {len(g2)}")
    c1 = verify_blocchi(g1)
    for clause, detail, w in c1.violations:
        cert.add("first:" + clause, detail, w)
    c2 = verify_blocchiOLD(g2)
    for clause, detail, w in c2.violations:
        cert.add("second:" + clause, detail, w)
    for i, (a, b) in enumerate(zip(g1, g2), start=1):
        if Counter(a.cells.values()) != Counter(b.cells.values()):
            cert.add("entry-match", f"blocks {i} hold different entry multisets", i)
    return cert
