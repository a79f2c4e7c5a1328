"""Bounded backtracking searches for the seed objects the closed forms skip.

Three searches share one discipline: a fixed deterministic exploration order,
first solution wins, and a budget counted in visited nodes with a wall clock
cap on top. Exhausting the space yields NotFound for the grid searches; the
pair search instead yields Exhausted, because its canonical chunking restricts
the space and so proves nothing about the instance at large.
"""

from __future__ import annotations

import os
import time
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass

from .blocks import BlockSequence, make_block
from .core import Grid, mod1, transpose
from .pairs import NicePair
from .verify import verify_nice_pair, verify_sma


class _Sentinel:
    """Falsy named marker so callers can write `if not got: ...`."""

    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name

    def __bool__(self):
        return False


NotFound = _Sentinel("NotFound")
Exhausted = _Sentinel("Exhausted")


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**7
    time_cap: float = 30.0


def default_budget() -> SearchBudget:
    """Budget from HEFFTER_ORACLE_BUDGET, "NODES" or "NODES:SECONDS"."""
    raw = os.environ.get("HEFFTER_ORACLE_BUDGET", "")
    if not raw:
        return SearchBudget()
    head, _, tail = raw.partition(":")
    nodes = int(head)
    cap = float(tail) if tail else SearchBudget.time_cap
    return SearchBudget(nodes, cap)


class _OutOfBudget(Exception):
    pass


class _SoftOut(Exception):
    """A local quota ran dry; the global budget may still have room."""

    def __init__(self, outer=False):
        self.outer = outer


class _Ticker:
    """Counts search nodes down and trips once nodes or wall clock run out.

    The optional quotas meter sub-searches: `quota` guards one segmentation
    attempt, `outer_quota` a whole chunk partition, and both raise the soft
    exception so the caller can fall through to its next alternative.
    """

    __slots__ = ("left", "deadline", "quota", "outer_quota")

    def __init__(self, budget: SearchBudget):
        self.left = budget.max_nodes
        self.deadline = time.monotonic() + budget.time_cap
        self.quota = None
        self.outer_quota = None

    def tick(self):
        self.left -= 1
        if self.left <= 0:
            raise _OutOfBudget
        if self.left % 4096 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget
        if self.outer_quota is not None:
            self.outer_quota -= 1
            if self.outer_quota <= 0:
                raise _SoftOut(outer=True)
        if self.quota is not None:
            self.quota -= 1
            if self.quota <= 0:
                raise _SoftOut()


# --- filled-grid searches -------------------------------------------------

def _grid_dfs(m, n, s, k, values, caps, cap_key, ticker):
    """Row-major cell search; returns a cells dict or None.

    values is the candidate list in canonical order (|v| ascending, positive
    before negative); caps maps cap_key(v) to how many placements of v remain.
    At each cell the fill branches come first, the empty branch last. A row or
    column with exactly one slot left forces its value, and partial sums are
    kept within reach of the largest remaining candidate.
    """
    big = max(abs(v) for v in values)
    rfill, cfill = [0] * m, [0] * n
    rsum, csum = [0] * m, [0] * n
    out = {}

    def feasible(v, i, j, rneed, cneed):
        if caps.get(cap_key(v), 0) <= 0:
            return False
        if not out and v < 0:
            # a global sign flip is a symmetry; keep the branch where the
            # first placed entry is nonnegative
            return False
        if abs(rsum[i] + v) > (rneed - 1) * big:
            return False
        if abs(csum[j] + v) > (cneed - 1) * big:
            return False
        return True

    def place(v, i, j):
        caps[cap_key(v)] -= 1
        rfill[i] += 1
        cfill[j] += 1
        rsum[i] += v
        csum[j] += v
        out[(i + 1, j + 1)] = v

    def unplace(v, i, j):
        caps[cap_key(v)] += 1
        rfill[i] -= 1
        cfill[j] -= 1
        rsum[i] -= v
        csum[j] -= v
        del out[(i + 1, j + 1)]

    def go(idx):
        ticker.tick()
        if idx == m * n:
            return True
        i, j = divmod(idx, n)
        rneed = s - rfill[i]
        cneed = k - cfill[j]
        if rneed > 0 and cneed > 0:
            if rneed == 1 and cneed == 1:
                cand = [-rsum[i]] if rsum[i] == csum[j] else []
            elif rneed == 1:
                cand = [-rsum[i]]
            elif cneed == 1:
                cand = [-csum[j]]
            else:
                cand = values
            for v in cand:
                if feasible(v, i, j, rneed, cneed):
                    place(v, i, j)
                    if go(idx + 1):
                        return True
                    unplace(v, i, j)
        if rneed < n - j and cneed < m - i:
            return go(idx + 1)
        return False

    return dict(out) if go(0) else None


def _interval_sum(lo, hi):
    return (hi * (hi + 1) - (lo - 1) * lo) // 2 if hi >= lo else 0


def _canon_groups(n, g):
    """Equal-sum split of [1, n*g] into n groups of g, in closed form.

    Even g pairs x with N+1-x. Odd g needs n odd (otherwise the common sum
    is not an integer and the caller falls back to the signed search); it
    seeds each group with a triple and pairs off the rest. The triples use
    the doubling permutation 2j mod n, which makes 1+j, n+1+h+d-j, 3n-d
    sweep each third of [1, 3n] exactly once while keeping the sum at
    (9n+3)/2.
    """
    N = n * g
    groups = [[] for _ in range(n)]
    if g % 2 == 0:
        for t in range(g // 2):
            for j in range(n):
                x = 1 + t * n + j
                groups[j].extend((x, N + 1 - x))
        return groups
    if n % 2 == 0 or g < 3:
        return None
    h = (n - 1) // 2
    for j in range(n):
        d = (2 * j) % n
        groups[j].extend((1 + j, n + 1 + h + d - j, 3 * n - d))
    for t in range((g - 3) // 2):
        for j in range(n):
            x = 3 * n + 1 + t * n + j
            groups[j].extend((x, N + 3 * n + 1 - x))
    return groups


def _square_groups(n, g, ticker):
    """Partition 1..n*g into n signed groups of size g sharing one sum and one
    sign profile, or None. Groups feed the diagonal-pair square layout."""
    N = n * g
    total = N * (N + 1) // 2
    # all-positive groups suffice whenever the forced sum is integral: the
    # layout balances signs on its own, so this is plain equal-sum partition
    got = _canon_groups(n, g)
    if got is not None:
        return got
    if n % 2 == 0 and total % 2 == 1:
        # the group sums must add up to n*h0, which is even, yet sign flips
        # preserve the parity of the grand total; no grouping exists
        return None
    for q in sorted(range(1, g), key=lambda x: (abs(2 * x - g), x)):
        p = g - q
        m_lo = _interval_sum(1, n * q)
        m_hi = _interval_sum(N - n * q + 1, N)
        h_lo = -(-(total - 2 * m_hi) // n)
        h_hi = (total - 2 * m_lo) // n
        if h_lo > h_hi:
            continue
        center = (h_lo + h_hi) // 2
        cands = []
        for off in range(0, h_hi - h_lo + 1):
            for h0 in (center + off, center - off - 1):
                if h_lo <= h0 <= h_hi and (n * h0 - total) % 2 == 0:
                    cands.append(h0)
            if len(cands) >= 9:
                break
        for h0 in cands:
            got = _assign_groups(n, g, p, q, h0, ticker)
            if got is not None:
                return got
    return None


def _assign_groups(n, g, p, q, h0, ticker):
    """Deterministic DFS assigning N..1 to (group, sign) under per-group
    positive/negative slot caps and the shared target sum. Prunes on the
    per-group reachable-sum window and on whether the remaining pool can
    still split into the open positive and negative slots with the right
    total."""
    state = [[p, q, 0] for _ in range(n)]  # positive slots, negative slots, sum
    chosen = [[] for _ in range(n)]
    want = n * h0

    def fits(i, v, sign):
        sp, sn, cur = state[i]
        if sign > 0:
            if sp == 0:
                return False
            sp -= 1
        else:
            if sn == 0:
                return False
            sn -= 1
        cur += sign * v
        rem = v - 1
        if sp + sn > rem:
            return False
        hi = cur + _interval_sum(rem - sp + 1, rem) - _interval_sum(1, sn)
        lo = cur + _interval_sum(1, sp) - _interval_sum(rem - sn + 1, rem)
        return lo <= h0 <= hi

    def go(v, acc, neg_slots):
        ticker.tick()
        if v == 0:
            return acc == want
        pool = v - 1
        base = _interval_sum(1, pool) - want + acc
        seen = set()
        order = sorted(range(n), key=lambda i: (state[i][2], i))
        for i in order:
            sig = tuple(state[i])
            if sig in seen:
                continue
            seen.add(sig)
            for sign in (1, -1):
                if not fits(i, v, sign):
                    continue
                # the rest of the pool must split into the open negative
                # slots with signed totals still reaching the target
                num = base + sign * v
                if num % 2:
                    continue
                nsum = num // 2
                ns = neg_slots - (sign < 0)
                if not (_interval_sum(1, ns)
                        <= nsum
                        <= _interval_sum(pool - ns + 1, pool)):
                    continue
                sp, sn, cur = state[i]
                state[i] = [sp - (sign > 0), sn - (sign < 0), cur + sign * v]
                chosen[i].append(sign * v)
                if go(v - 1, acc + sign * v, ns):
                    return True
                chosen[i].pop()
                state[i] = [sp, sn, cur]
        return False

    total = _interval_sum(1, n * g)
    if (total - want) % 2:
        return None
    return ([sorted(grp, reverse=True) for grp in chosen]
            if go(n * g, 0, n * q) else None)


def _square_sma_fast(n, s, ticker):
    """Cells of a shiftable square array via the diagonal-pair layout: column
    j holds +G_u(j) at row j-2u and -G_u(j) spills into column j+1 on the
    same row, so rows cancel pairwise and column sums telescope to zero."""
    groups = _square_groups(n, s // 2, ticker)
    if groups is None:
        return None
    cells = {}
    for u in range(s // 2):
        for j in range(1, n + 1):
            v = groups[j - 1][u]
            r = mod1(j - 2 * u, n)
            cells[(r, j)] = v
            cells[(r, mod1(j + 1, n))] = -v
    return cells


def _colpool_dfs(m, n, ticker):
    """Cells of a fully filled m x n array, m even, or None.

    Column c owns m/2 magnitudes spread across bands of n, with every other
    band rotated by one so each pool mixes parities; the column takes both
    signs of each, so column sums vanish by construction and the search only
    has to zero the rows. Candidate values are tried nearest-to-cancelling
    first and the last cell of each row is forced.
    """
    pools = [[((c + (t % 2)) % n) + 1 + t * n for t in range(m // 2)]
             for c in range(n)]
    avail = [{} for _ in range(n)]
    for c in range(n):
        for x in pools[c]:
            avail[c][x] = avail[c][-x] = True
    rsum = [0] * m
    out = {}
    reach_after = [0] * n
    for c in range(n - 1, 0, -1):
        reach_after[c - 1] = reach_after[c] + max(pools[c])

    def go(idx):
        ticker.tick()
        if idx == m * n:
            return True
        r, c = divmod(idx, n)
        if c == n - 1:
            v = -rsum[r]
            if avail[c].get(v):
                avail[c][v] = False
                out[(r + 1, c + 1)] = v
                if go(idx + 1):
                    return True
                avail[c][v] = True
                del out[(r + 1, c + 1)]
            return False
        cand = sorted((v for v, ok in avail[c].items() if ok),
                      key=lambda v: (abs(rsum[r] + v), v < 0))
        for v in cand:
            if not out and v < 0:
                continue
            if abs(rsum[r] + v) > reach_after[c]:
                continue
            avail[c][v] = False
            rsum[r] += v
            out[(r + 1, c + 1)] = v
            if go(idx + 1):
                return True
            avail[c][v] = True
            rsum[r] -= v
            del out[(r + 1, c + 1)]
        return False

    return dict(out) if go(0) else None


def search_sma(m, n, s, k, budget=None):
    """Backtracking search for a signed magic array; Grid, NotFound or Exhausted.

    The instance is searched in the orientation with the narrower rows, since
    the row constraint then binds sooner. Fully filled even-height grids and
    square instances with even fill get structured first attempts (column
    pools, grouped diagonal pairs); the general cell-by-cell search runs on
    whatever budget remains, so NotFound still means the space is exhausted.
    """
    if not (1 <= s <= n and 1 <= k <= m and m * s == n * k):
        raise ValueError(f"inconsistent parameters ({m},{n};{s},{k})")
    if n > m:
        got = search_sma(n, m, k, s, budget)
        return transpose(got) if isinstance(got, Grid) else got
    budget = budget or default_budget()
    ticker = _Ticker(budget)
    ms = m * s
    if s == n and k == m and m % 2 == 0 and n >= 2:
        try:
            cells = _colpool_dfs(m, n, ticker)
        except _OutOfBudget:
            return Exhausted
        if cells is not None:
            g = Grid(m, n, cells)
            assert verify_sma(g, s, k).ok
            return g
    elif m == n and s == k and s % 2 == 0 and s >= 2:
        try:
            cells = _square_sma_fast(n, s, ticker)
        except _OutOfBudget:
            return Exhausted
        if cells is not None:
            g = Grid(m, n, cells)
            assert verify_sma(g, s, k).ok
            return g
    half = ms // 2
    values = []
    if ms % 2 == 1:
        values.append(0)
    for x in range(1, half + 1):
        values += [x, -x]
    caps = {v: 1 for v in values}
    try:
        cells = _grid_dfs(m, n, s, k, values, caps, lambda v: v, ticker)
    except _OutOfBudget:
        return Exhausted
    if cells is None:
        return NotFound
    g = Grid(m, n, cells, explicit_zero=(ms % 2 == 1))
    assert verify_sma(g, s, k).ok
    return g


def search_heffter(p, budget=None):
    """Backtracking search for an integer relative Heffter array with params p."""
    from .core import phi_support
    from .verify import verify_integer_heffter

    budget = budget or default_budget()
    spec = phi_support(p)
    values = []
    caps = {}
    for x in sorted(spec.elements()):
        values += [x, -x]
        caps[x] = spec.multiplicity(x)
    try:
        cells = _grid_dfs(p.m, p.n, p.s, p.k, values, caps, abs, _Ticker(budget))
    except _OutOfBudget:
        return Exhausted
    if cells is None:
        return NotFound
    g = Grid(p.m, p.n, cells)
    assert verify_integer_heffter(g, p).ok
    return g


# --- nice-pair search -----------------------------------------------------
#
# The pair is built from a canonical partition of the reduced support into
# chunks of 2c values, one chunk per block position. Each chunk is cut at the
# same offsets into slots of width 8, 12, 16 or 20, and every slot is solved
# as a miniature pair of two-row blocks satisfying slot-local versions of all
# the conditions: zero row sums in both blocks, column sums in adjacent
# opposite pairs on the first side, a zero-sum odd/even interleave on the
# second, equal entry multisets between the sides, no equal-sign columns, and
# balanced signs in every row. Those conditions only see differences between
# the slot's values, so a solved slot transfers verbatim to any translate.
# Blocks must agree on both column-sum sequences position by position;
# agreement is negotiated slot by slot, sourcing candidates from the chunk
# with the most irregular value gaps, and falls back across chunk partitions
# and slot layouts ordered by how badly they fragment the value clusters.

_pair_cache = {}
_free_memo = {}
_match_memo = {}
_split_memo = {}
_seg_pool = {}

_FREE_CAP = 16
_CAND_CAP = 40

# Seed slot patterns: signed 1-based positions into the slot's sorted values,
# two rows per side. Tried before any search; a pattern is kept only if the
# full slot check passes on the concrete values, so each covers every value
# shape it happens to fit, evenly spread or clustered at one stride.
_SEED8 = (((2, -6, -3, 7), (-1, 5, 4, -8)),
          ((5, -8, -1, 4), (-6, 7, 2, -3)))
_SEED12 = (((2, 7, -4, 10, -3, -12), (-1, -8, 5, -11, 6, 9)),
           ((9, 7, 2, -11, -3, -4), (-12, -8, -1, 10, 5, 6)))
_SEED20A = (((2, -15, 4, 17, -7, 19, -5, -11, -13, 9),
             (-1, 14, -3, -18, 8, -20, 6, 10, 16, -12)),
            ((-11, 16, 10, -7, 19, 2, -15, 4, -5, -13),
             (9, -18, -12, 6, -20, -1, 17, -3, 8, 14)))
_SEED20B = (((2, -8, 4, -14, -5, 19, -15, 16, -9, 10),
             (-1, 7, -3, 13, 6, -20, 17, -18, 11, -12)),
            ((10, -15, -14, -8, 16, 2, 19, 4, -9, -5),
             (-12, 13, 11, 7, -18, -1, -20, -3, 17, 6)))

_SEEDS = {8: (_SEED8,), 12: (_SEED12,), 16: (), 20: (_SEED20A, _SEED20B)}


def _apply_pattern(pat, vals):
    return tuple(tuple(tuple((1 if j > 0 else -1) * vals[abs(j) - 1] for j in row)
                       for row in rows) for rows in pat)


def _pattern_of(sol, vals):
    idx = {v: i + 1 for i, v in enumerate(vals)}
    return tuple(tuple(tuple((1 if x > 0 else -1) * idx[abs(x)] for x in row)
                       for row in rows) for rows in sol)


def _sig_of(sol):
    one, two = sol
    sig1 = tuple(a + b for a, b in zip(one[0], one[1]))
    sig2 = tuple(a + b for a, b in zip(two[0], two[1]))
    return sig1, sig2


def _slot_check(sol):
    """All slot-local conditions for a candidate pair of two-row fillings."""
    (r1a, r2a), (r1b, r2b) = sol
    w = len(r1a)
    if sum(r1a) or sum(r2a) or sum(r1b) or sum(r2b):
        return False
    s1 = [a + b for a, b in zip(r1a, r2a)]
    for i in range(0, w, 2):
        if s1[i + 1] != -s1[i]:
            return False
    s2 = [a + b for a, b in zip(r1b, r2b)]
    if sum(s2[0::2]) or sum(s2[1::2]):
        return False
    if Counter(r1a + r2a) != Counter(r1b + r2b):
        return False
    for ra, rb in ((r1a, r2a), (r1b, r2b)):
        for x, y in zip(ra, rb):
            if (x > 0) == (y > 0):
                return False
        if sum(1 for v in ra if v > 0) != w // 2:
            return False
    return True


def _zero_split(sums, ticker):
    """Lex-first boolean mask selecting half of sums with zero total, or None."""
    key = tuple(sums)
    if key in _split_memo:
        return _split_memo[key]
    c = len(sums)
    need = c // 2
    odds = sum(1 for v in sums if v % 2)
    evens = c - odds
    ok_parity = any(j % 2 == 0 and need - j <= evens
                    for j in range(max(0, need - evens), min(odds, need) + 1))
    mask = None
    if ok_parity:
        chosen = []

        def go(i, take, tot):
            ticker.tick()
            if take == need:
                return tot == 0
            if c - i < need - take:
                return False
            hi = sum(sorted(sums[i:], reverse=True)[:need - take])
            lo = sum(sorted(sums[i:])[:need - take])
            if tot + lo > 0 or tot + hi < 0:
                return False
            chosen.append(i)
            if go(i + 1, take + 1, tot + sums[i]):
                return True
            chosen.pop()
            return go(i + 1, take, tot)

        if go(0, 0, 0):
            mask = [False] * c
            for i in chosen:
                mask[i] = True
            mask = tuple(mask)
    _split_memo[key] = mask
    return mask


def _first_cols(vals, left, ticker):
    """Yield (cols, tops) pairings of vals into signed columns (+p, -q).

    left: Counter of required column sums, or None to enumerate freely. Tops
    are chosen alongside so the top row sums to zero and stays sign-balanced;
    in free mode a running imbalance bound keeps the column sums pairable
    into opposite couples.
    """
    c = len(vals) // 2
    half = c // 2
    order = sorted(vals)
    maxv = order[-1]
    pos_of = {v: i for i, v in enumerate(order)}
    used = [False] * len(order)
    cols, tops = [], []
    bal = Counter()
    state = [0, 0, 0]  # top sum, positive tops, imbalance
    lo = [0]

    def place(p, q, top, rem):
        d = p - q
        if left is not None:
            if left[d] <= 0:
                return None
        ts = state[0] + top
        if abs(ts) > rem * maxv:
            return None
        pc = state[1] + (1 if top > 0 else 0)
        if pc > half or (c - rem - pc) > half:
            return None
        if left is None:
            di = -1 if bal[-d] > bal[d] else 1
            if state[2] + di > rem:
                return None
        else:
            di = 0
            left[d] -= 1
        bal[d] += 1
        state[0], state[1], state[2] = ts, pc, state[2] + di
        cols.append((p, q))
        tops.append(top)
        return (d, top, di)

    def unplace(rec):
        d, top, di = rec
        cols.pop()
        tops.pop()
        bal[d] -= 1
        if left is not None:
            left[d] += 1
        state[0] -= top
        state[1] -= 1 if top > 0 else 0
        state[2] -= di

    def options(x):
        if left is None:
            i = pos_of[x]
            for j in range(i + 1, len(order)):
                if not used[j]:
                    y = order[j]
                    yield (y, x)
                    yield (x, y)
        else:
            for g in sorted({abs(d) for d in left if left[d] > 0}):
                y = x + g
                j = pos_of.get(y)
                if j is None or used[j]:
                    continue
                if left[g] > 0:
                    yield (y, x)
                if left[-g] > 0:
                    yield (x, y)

    def go(placed):
        ticker.tick()
        if placed == c:
            if state[0] == 0:
                yield tuple(cols), tuple(tops)
            return
        i = lo[0]
        while used[i]:
            i += 1
        keep, lo[0] = lo[0], i
        x = order[i]
        used[i] = True
        rem = c - placed - 1
        for p, q in options(x):
            j = pos_of[p if q == x else q]
            if used[j]:
                continue
            used[j] = True
            lo2 = lo[0]
            for top in (p, -q):
                rec = place(p, q, top, rem)
                if rec is None:
                    continue
                yield from go(placed + 1)
                unplace(rec)
            used[j] = False
            lo[0] = lo2
        used[i] = False
        lo[0] = keep

    yield from go(0)


def _second_cols(pos, neg, left, ticker):
    """Yield (cols, tops) bipartite pairings (+p, -q), p in pos, q in neg."""
    c = len(pos)
    half = c // 2
    P = sorted(pos)
    N = sorted(neg)
    maxv = max(P[-1], N[-1])
    usedP = [False] * c
    usedN = [False] * c
    n_of = {v: i for i, v in enumerate(N)}
    cols, tops = [], []
    state = [0, 0]
    lo = [0]

    def neighbors(p):
        if left is not None:
            for d in sorted(left, key=abs):
                if left[d] > 0:
                    j = n_of.get(p - d)
                    if j is not None and not usedN[j]:
                        yield j
            return
        i = bisect_left(N, p)
        a, b = i - 1, i
        while a >= 0 or b < c:
            if b >= c or (a >= 0 and p - N[a] <= N[b] - p):
                yield a
                a -= 1
            else:
                yield b
                b += 1

    def go(placed):
        ticker.tick()
        if placed == c:
            if state[0] == 0:
                yield tuple(cols), tuple(tops)
            return
        i = lo[0]
        while usedP[i]:
            i += 1
        keep, lo[0] = lo[0], i
        p = P[i]
        usedP[i] = True
        rem = c - placed - 1
        for j in neighbors(p):
            if usedN[j]:
                continue
            q = N[j]
            d = p - q
            usedN[j] = True
            if left is not None:
                left[d] -= 1
            for top in (p, -q):
                ts = state[0] + top
                if abs(ts) > rem * maxv:
                    continue
                pc = state[1] + (1 if top > 0 else 0)
                if pc > half or (c - rem - pc) > half:
                    continue
                cols.append((p, q))
                tops.append(top)
                state[0], state[1] = ts, pc
                yield from go(placed + 1)
                state[0], state[1] = ts - top, pc - (1 if top > 0 else 0)
                cols.pop()
                tops.pop()
            if left is not None:
                left[d] += 1
            usedN[j] = False
        usedP[i] = False
        lo[0] = keep

    yield from go(0)


def _free_orders(cols1, tops1, cols2, tops2, ticker):
    """Canonical positional orders for a freely found slot solution.

    First side: opposite sum couples (g, -g), g ascending. Second side: a
    zero-sum half of the sums on odd positions interleaved with the rest.
    None when either arrangement is impossible.
    """
    plus, minus = {}, {}
    for col, top in sorted(zip(cols1, tops1)):
        d = col[0] - col[1]
        (plus if d > 0 else minus).setdefault(abs(d), []).append((col, top))
    order1 = []
    for g in sorted(plus):
        if len(plus[g]) != len(minus.get(g, ())):
            return None
        for _ in plus[g]:
            order1.extend((g, -g))
    pairs2 = sorted(zip(cols2, tops2), key=lambda ct: (ct[0][0] - ct[0][1], ct[0]))
    tau = [col[0] - col[1] for col, _ in pairs2]
    mask = _zero_split(tau, ticker)
    if mask is None:
        return None
    odd = [tau[i] for i in range(len(tau)) if mask[i]]
    even = [tau[i] for i in range(len(tau)) if not mask[i]]
    order2 = []
    for i in range(len(odd)):
        order2.extend((odd[i], even[i]))
    return tuple(order1), tuple(order2)


def _place_columns(cols, tops, order):
    """Rows with column sums following order exactly, columns spent in a
    deterministic per-sum queue."""
    groups = {}
    for col, top in sorted(zip(cols, tops)):
        groups.setdefault(col[0] - col[1], []).append((col, top))
    row1, row2 = [], []
    for d in order:
        col, top = groups[d].pop(0)
        p, q = col
        row1.append(top)
        row2.append(-q if top == p else p)
    return tuple(row1), tuple(row2)


def _slot_free(vals, ticker):
    """Candidate slot solutions for a value tuple, canonical order, memoized.

    Abandoned searches leave their partial candidate list behind, so later
    calls on a translate of the same values replay it before searching on.
    """
    delta = tuple(v - vals[0] for v in vals)
    done, out = _free_memo.get(delta, (False, None))
    seen = set()
    if out is not None:
        for sig1, sig2, pat in out:
            seen.add((sig1, sig2))
            yield sig1, sig2, _apply_pattern(pat, vals)
        if done or len(out) >= _FREE_CAP:
            return
    else:
        out = []
        _free_memo[delta] = (False, out)
    w = len(vals)

    def emit(sol):
        sig = _sig_of(sol)
        if sig in seen:
            return None
        seen.add(sig)
        out.append((sig[0], sig[1], _pattern_of(sol, vals)))
        return sig[0], sig[1], sol

    for pat in _SEEDS.get(w, ()):
        sol = _apply_pattern(pat, vals)
        if _slot_check(sol):
            got = emit(sol)
            if got:
                yield got
                if len(out) >= _FREE_CAP:
                    _free_memo[delta] = (True, out)
                    return
    for cols1, tops1 in _first_cols(list(vals), None, ticker):
        pos = sorted(p for p, _ in cols1)
        neg = sorted(q for _, q in cols1)
        for cols2, tops2 in _second_cols(pos, neg, None, ticker):
            arr = _free_orders(cols1, tops1, cols2, tops2, ticker)
            if arr is not None:
                order1, order2 = arr
                sol = (_place_columns(cols1, tops1, order1),
                       _place_columns(cols2, tops2, order2))
                if _slot_check(sol):
                    got = emit(sol)
                    if got:
                        yield got
                        if len(out) >= _FREE_CAP:
                            _free_memo[delta] = (True, out)
                            return
            break
    _free_memo[delta] = (True, out)


def _slot_match(vals, sig1, sig2, ticker):
    """A slot filling of vals reproducing both column-sum sequences, or None."""
    delta = tuple(v - vals[0] for v in vals)
    key = (delta, sig1, sig2)
    if key in _match_memo:
        pat = _match_memo[key]
        return _apply_pattern(pat, vals) if pat else None
    for pat in _SEEDS.get(len(vals), ()):
        sol = _apply_pattern(pat, vals)
        if _sig_of(sol) == (sig1, sig2) and _slot_check(sol):
            _match_memo[key] = _pattern_of(sol, vals)
            return sol
    for cols1, tops1 in _first_cols(list(vals), Counter(sig1), ticker):
        pos = sorted(p for p, _ in cols1)
        neg = sorted(q for _, q in cols1)
        for cols2, tops2 in _second_cols(pos, neg, Counter(sig2), ticker):
            sol = (_place_columns(cols1, tops1, sig1),
                   _place_columns(cols2, tops2, sig2))
            if _slot_check(sol):
                _match_memo[key] = _pattern_of(sol, vals)
                return sol
            break
    _match_memo[key] = None
    return None


# --- chunk partitions -------------------------------------------------------

def _support_values(a, c, t):
    """Reduced support: 1..ac + t//2 with every multiple of the period cut."""
    rho = 2 * a * c // t + 1
    excluded = {j * rho for j in range(1, t // 2 + 1)}
    return [x for x in range(1, a * c + t // 2 + 1) if x not in excluded]


def _runs_of(sup):
    """Maximal runs of consecutive values as (start index, length)."""
    runs = []
    start = 0
    for i in range(1, len(sup) + 1):
        if i == len(sup) or sup[i] != sup[i - 1] + 1:
            runs.append((start, i - start))
            start = i
    return runs


def _aligned_chunks(a, c, t, sup):
    """Chunks cut window by window across groups of equal runs, or None.

    When all runs between the support holes have one length, slicing h
    grouped runs into width-w windows gives every chunk the same value
    deltas, so one solved chunk transfers to all of them.
    """
    runs = _runs_of(sup)
    L = runs[0][1]
    if any(ln != L for _, ln in runs):
        return None
    u = len(runs)
    e = a // 2
    for h in range(1, u + 1):
        if u % h or (2 * c) % h:
            continue
        w = 2 * c // h
        if w > L or L % w:
            continue
        if (u // h) * (L // w) != e:
            continue
        chunks = []
        for g in range(u // h):
            grp = runs[g * h:(g + 1) * h]
            for j in range(L // w):
                ch = []
                for st, _ in grp:
                    ch.extend(sup[st + j * w: st + (j + 1) * w])
                chunks.append(tuple(ch))
        if any(sum(ch) % 2 for ch in chunks):
            continue
        return chunks, w
    return None


def _parity_repair(chunks):
    """Even out chunk sums by swapping odd-difference values across adjacent
    chunk boundaries; returns re-sorted chunks or None."""
    work = [list(ch) for ch in chunks]
    for i in range(len(work) - 1):
        if sum(work[i]) % 2 == 0:
            continue
        done = False
        for pi in range(len(work[i]) - 1, -1, -1):
            for qi in range(len(work[i + 1])):
                if (work[i][pi] + work[i + 1][qi]) % 2 == 1:
                    work[i][pi], work[i + 1][qi] = work[i + 1][qi], work[i][pi]
                    done = True
                    break
            if done:
                break
        if not done:
            return None
    if any(sum(ch) % 2 for ch in work):
        return None
    return [tuple(sorted(ch)) for ch in work]


def _segmentations(c):
    """Ways to cut a 2c-value chunk into slots of width 8, 12, 16 or 20, in a
    neutral base order: the narrow standard layout first, wide parts last.
    Width 4 is useless (a zero-sum two-entry row needs a repeated value) and
    odd column counts cannot balance signs locally, so widths stay multiples
    of 4."""
    if c in _seg_pool:
        return _seg_pool[c]
    n = 2 * c
    acc = []

    def rec(rem, parts):
        if rem == 0:
            acc.append(tuple(parts))
            return
        for w in (12, 8, 16, 20):
            if w <= rem:
                parts.append(w)
                rec(rem - w, parts)
                parts.pop()

    rec(n, [])
    if n % 8 == 4 and n >= 12:
        primary = (12,) + (8,) * ((n - 12) // 8)
    elif n % 8 == 0:
        primary = (8,) * (n // 8)
    else:
        primary = None
    acc.sort(key=lambda ws: (ws != primary, sum(1 for w in ws if w >= 16),
                             len(ws), tuple(-w for w in ws)))
    _seg_pool[c] = acc
    return acc


def _piece_shape(piece):
    """Cluster sizes of the piece (split at gaps > 3) plus whether it forms a
    regular grid: equal-size clusters at one stride, where seed patterns and
    cheap searches carry over."""
    sizes = []
    starts = [piece[0]]
    run = 1
    for i in range(1, len(piece)):
        if piece[i] - piece[i - 1] > 3:
            sizes.append(run)
            run = 1
            starts.append(piece[i])
        else:
            run += 1
    sizes.append(run)
    regular = len(set(sizes)) == 1 and len(
        set(b - a for a, b in zip(starts, starts[1:]))) <= 1
    return sizes, regular


def _seg_badness(chunk, widths):
    """Predicted cost of cutting this chunk at the given widths.  Slot pieces
    stranding three or fewer values of a cluster are near-certain dead ends;
    each extra cluster per slot costs a little search, and wide slots over
    irregularly split clusters cost a lot.  Regular grids stay cheap at any
    cluster size."""
    bad = 0
    pos = 0
    for w in widths:
        sizes, regular = _piece_shape(chunk[pos:pos + w])
        pos += w
        if regular:
            if len(sizes) > 1:
                bad += 1
        else:
            for s in sizes:
                if s <= 3:
                    bad += 10
            bad += len(sizes) - 1
        if w >= 16:
            bad += 1 + (2 if len(sizes) > 1 and not regular else 0)
    return bad


def _slot_repair(chunk, widths):
    """Reorder one chunk's values so every slot has even sum.  Walks cuts left
    to right, swapping a pair with odd difference across a bad cut, nearest to
    the boundary first and never disturbing cuts already fixed."""
    vals = list(chunk)
    cuts = []
    pos = 0
    for w in widths[:-1]:
        pos += w
        cuts.append(pos)
    prev = 0
    for p in cuts:
        if sum(vals[:p]) % 2 == 0:
            prev = p
            continue
        done = False
        for i in range(p - 1, prev - 1, -1):
            for j in range(p, len(vals)):
                if (vals[i] - vals[j]) % 2:
                    vals[i], vals[j] = vals[j], vals[i]
                    done = True
                    break
            if done:
                break
        if not done:
            return None
        prev = p
    return tuple(vals)


def _solve_partition(base, c, e, ticker):
    """Per-slot consensus over a fixed chunk partition; (rows, reason)."""
    fail = "no-segmentation"
    pool = _segmentations(c)
    ranked = sorted(range(len(pool)),
                    key=lambda i: (_seg_badness(base[0], pool[i]), i))
    for idx in ranked[:16]:
        widths = pool[idx]
        # wide slots legitimately need more nodes before they pay off
        scale = 4 if max(widths) >= 16 else 1
        ticker.quota = max(60_000 * scale, ticker.left // (16 // scale))
        chunks = []
        ok = True
        for ch in base:
            r = _slot_repair(ch, widths)
            if r is None:
                ok = False
                break
            chunks.append(r)
        if not ok:
            fail = "slot-parity"
            continue
        bounds = [0]
        for w in widths:
            bounds.append(bounds[-1] + w)
        nslots = len(widths)
        rows_try = [[None] * nslots for _ in range(e)]
        solved_all = True
        try:
            for sj in range(nslots):
                lo, hi = bounds[sj], bounds[sj + 1]
                slot_vals = [ch[lo:hi] for ch in chunks]
                solved = None
                tried = 0
                # most irregular chunk first: its few candidates are the
                # likeliest to be realizable in the flexible uniform chunks
                srcs = sorted(range(e), key=lambda i: -len(set(
                    slot_vals[i][j + 1] - slot_vals[i][j]
                    for j in range(len(slot_vals[i]) - 1))))
                for src in srcs:
                    for sig1, sig2, sol in _slot_free(slot_vals[src], ticker):
                        tried += 1
                        if tried > _CAND_CAP:
                            break
                        sols = {src: sol}
                        src_delta = tuple(v - slot_vals[src][0]
                                          for v in slot_vals[src])
                        pat = None
                        good = True
                        for i in range(e):
                            if i == src:
                                continue
                            di = tuple(v - slot_vals[i][0]
                                       for v in slot_vals[i])
                            if di == src_delta:
                                # conditions only see value deltas, so the
                                # found filling transfers verbatim
                                if pat is None:
                                    pat = _pattern_of(sol, slot_vals[src])
                                sols[i] = _apply_pattern(pat, slot_vals[i])
                                continue
                            r = _slot_match(slot_vals[i], sig1, sig2, ticker)
                            if r is None:
                                good = False
                                break
                            sols[i] = r
                        if good:
                            solved = sols
                            break
                    if solved or tried > _CAND_CAP:
                        break
                if not solved:
                    solved_all = False
                    fail = f"slot{sj}"
                    break
                for i in range(e):
                    rows_try[i][sj] = solved[i]
        except _SoftOut as so:
            if so.outer:
                return None, "partition-budget"
            fail = "soft-budget"
            continue
        if solved_all:
            return rows_try, "slots"
    return None, fail


def search_nice_pair(m, c, lam1, t, budget=None):
    """Search a nice pair of m/(2*lam1) blocks of width c, each support
    element of the reduced problem appearing exactly once up to sign.

    Returns the pair or Exhausted; the canonical chunking means an exhausted
    search is not a nonexistence proof.
    """
    if c % 2 == 1 or c < 2:
        raise ValueError(f"block width {c} must be even and positive")
    if m % (2 * lam1) != 0:
        raise ValueError(f"lam1 = {lam1} must divide m/2 = {m}/2")
    a = m // lam1
    e = a // 2
    if (2 * a * c) % t != 0:
        raise ValueError(f"t = {t} must divide 2ac = {2 * a * c}")
    key = (a, c, t)
    if key in _pair_cache:
        return _pair_cache[key]
    if not _segmentations(c):
        return Exhausted
    sup = _support_values(a, c, t)
    assert len(sup) == a * c
    ticker = _Ticker(budget or default_budget())
    per_chunk_rows = None
    try:
        got = _aligned_chunks(a, c, t, sup)
        aligned = got[0] if got else None
        contig = _parity_repair(
            [tuple(sup[i * 2 * c:(i + 1) * 2 * c]) for i in range(e)])
        cands = []
        for pref, base in ((0, aligned), (1, contig)):
            if base is None or (pref == 1 and base == aligned):
                continue
            best = min(_seg_badness(base[0], ws) for ws in _segmentations(c))
            deltas = len(set(tuple(v - ch[0] for v in ch) for ch in base))
            # fragmentation risk plus consensus risk from unequal chunks;
            # single-delta partitions solve once and transfer everywhere
            cands.append((best + 2 * (deltas - 1), pref, base))
        if not cands:
            return Exhausted
        cands.sort(key=lambda x: (x[0], x[1]))
        partitions = [base for _, _, base in cands]
        for pi, base in enumerate(partitions):
            if pi < len(partitions) - 1:
                ticker.outer_quota = max(300_000, ticker.left // 3)
            else:
                ticker.outer_quota = None
            per_chunk_rows, _ = _solve_partition(base, c, e, ticker)
            if per_chunk_rows is not None:
                break
            ticker.quota = None
    except _OutOfBudget:
        return Exhausted
    if per_chunk_rows is None:
        return Exhausted
    b1, b2 = [], []
    for i in range(e):
        r1a = [x for sol in per_chunk_rows[i] for x in sol[0][0]]
        r2a = [x for sol in per_chunk_rows[i] for x in sol[0][1]]
        r1b = [x for sol in per_chunk_rows[i] for x in sol[1][0]]
        r2b = [x for sol in per_chunk_rows[i] for x in sol[1][1]]
        b1.append(make_block([r1a, r2a]))
        b2.append(make_block([r1b, r2b]))
    pair = NicePair(BlockSequence(tuple(b1)), BlockSequence(tuple(b2)))
    assert verify_nice_pair(pair).ok
    _pair_cache[key] = pair
    return pair
