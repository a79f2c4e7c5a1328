"""Matched pairs of block sequences feeding the diagonal-tiling assemblers.

A pair holds two sequences of 2 x s blocks over the same per-index supports:
the first satisfies the paired-column-sum condition (verify_blocchi), the
second the alternating-zero condition (verify_blocchiOLD). Which recipe
applies is driven by a factorization lam = lambda1 * lambda2 with lambda1
dividing m/2 and lambda2 dividing 2s; lambda1 only controls how often the
built sequence is repeated downstream, so every builder here produces the
sequence for lambda1 copies, of length m/(2*lambda1), covering each
admissible support element lambda2 times.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .blocks import Block, BlockSequence, juxtapose_blocks, lemma_blocks, seq
from .core import HeffterParams, OracleExhausted, support_spec
from .s0k0 import fold_offsets


@dataclass(frozen=True)
class Factorization:
    lambda1: int
    lambda2: int


@dataclass(frozen=True)
class NicePair:
    """Two equal-length block sequences with matching per-index supports."""

    b1: BlockSequence
    b2: BlockSequence


def _class_rank(d: int, s: int) -> int:
    # preference order: divisible by 4 or (2 mod 4 and >= 6), then s/2,
    # then 2, then the remaining odd values (those go to the search oracle)
    if d % 4 == 0 or (d % 4 == 2 and d >= 6):
        return 0
    if d == s // 2:
        return 1
    if d == 2:
        return 2
    return 3


def choose_factorization(lam: int, m: int, s: int) -> Factorization:
    """Split lam as lambda1 * lambda2 with lambda1 | m/2 and lambda2 | 2s.

    Among valid splits, prefer the lambda2 class with the cheapest recipe and
    break ties by the smallest lambda2. Requires lam | ms; raises ValueError
    when no valid split exists.
    """
    if m % 2 != 0:
        raise ValueError(f"m must be even, got {m}")
    if (m * s) % lam != 0:
        raise ValueError(f"lam={lam} must divide ms={m * s}")
    cands = [d for d in range(1, lam + 1)
             if lam % d == 0 and (2 * s) % d == 0 and (m // 2) % (lam // d) == 0]
    if not cands:
        raise ValueError(f"no factorization of lam={lam} fits m={m}, s={s}")
    d = min(cands, key=lambda d: (_class_rank(d, s), d))
    return Factorization(lam // d, d)


def _chain(kinds: dict, period, stride: int, copies: int, tail=(), tail_shift=0):
    """Blocks (kinds[name] shifted base+stride*c) for c < copies, then the tail."""
    out = [kinds[name].shifted(base + stride * c)
           for c in range(copies) for name, base in period]
    out += [kinds[name].shifted(base + tail_shift) for name, base in tail]
    return out


def _finish(m, s, lam1, lam2, t, b1_blocks, b2_blocks) -> NicePair:
    size = m // (2 * lam1)
    assert len(b1_blocks) == len(b2_blocks) == size
    spec = support_spec(m * s, lam1 * lam2, t)
    for blocks in (b1_blocks, b2_blocks):
        assert all(b.width == s for b in blocks)
        got = Counter(abs(v) for b in blocks for v in b.entries())
        want = Counter()
        for e in spec.elements():
            mult = spec.multiplicity(e)
            assert mult % lam1 == 0
            want[e] = mult // lam1
        assert got == want, f"support mismatch for (m,s,lam1,lam2,t)={(m, s, lam1, lam2, t)}"
    return NicePair(seq(*b1_blocks), seq(*b2_blocks))


@lru_cache(maxsize=None)
def nice_pair_s_half(m: int, s: int, lam1: int, t: int) -> NicePair:
    """Pair for lambda2 = s/2 (s congruent 2 mod 4, so lambda2 is odd).

    Each block covers a window of four consecutive support values s/2 times;
    the windows walk the support in steps of 4, hopping the excluded values.
    """
    lam2 = s // 2
    assert s % 4 == 2 and s >= 6 and m % (2 * lam1) == 0
    ell = 2 * m * s // (lam1 * lam2 * t) + 1
    r = (s - 6) // 4
    lb = lemma_blocks("L44", ell=ell)
    kinds = {
        "B": juxtapose_blocks([lb["E"]] + [lb["A"]] * r),
        "B'": juxtapose_blocks([lb["E'"]] + [lb["A"]] * r),
        "C": juxtapose_blocks([lb["G"]] + [lb["F"]] * r),
        "C'": juxtapose_blocks([lb["G'"]] + [lb["F"]] * r),
        "K": juxtapose_blocks([lb["L"]] + [lb["H"]] * r),
    }
    if ell % 4 == 1:
        period = [("B", 4 * i) for i in range((ell - 1) // 4)]
        if t % 2 == 0:
            copies, tail = t // 2, ()
        else:
            assert ell % 8 == 1
            copies = (t - 1) // 2
            tail = [("B", 4 * i) for i in range((ell - 1) // 8)]
        args = (period, ell, copies, tail, (t - 1) * ell // 2)
    elif ell % 2 == 1:
        assert t % 4 == 0
        x = (ell - 3) // 4
        period = ([("B", 4 * i) for i in range(x)] + [("C", ell - 3)]
                  + [("B", ell + 2 + 4 * i) for i in range(x)])
        args = (period, 2 * ell, t // 4, (), 0)
    else:
        assert t % 8 == 0
        period = [("K", i) for i in range(ell - 1)]
        args = (period, 4 * ell, t // 8, (), 0)
    swap = {"B": "B'", "C": "C'", "K": "K"}
    period2 = [(swap[name], base) for name, base in args[0]]
    tail2 = [(swap[name], base) for name, base in args[3]]
    b1 = _chain(kinds, *args)
    b2 = _chain(kinds, period2, args[1], args[2], tail2, args[4])
    return _finish(m, s, lam1, lam2, t, b1, b2)


@lru_cache(maxsize=None)
def nice_pair_2mod4_ge6(m: int, s: int, lam1: int, lam2: int, t: int) -> NicePair:
    """Pair for lambda2 congruent 2 mod 4, lambda2 >= 6.

    Narrow blocks cover two support values lambda2 times each; s/lambda2 of
    them juxtaposed make one block of the pair. Both conditions hold for the
    same sequence, so the pair repeats it.
    """
    assert lam2 % 4 == 2 and lam2 >= 6 and s % lam2 == 0
    ell = 2 * m * s // (lam1 * lam2 * t) + 1
    r = (lam2 - 6) // 4
    lb = lemma_blocks("L45", ell=ell)
    if ell % 2 == 1:
        core = juxtapose_blocks([lb["E"]] + [lb["A"]] * r)
        period = [core.shifted(2 * i) for i in range((ell - 1) // 2)]
        if t % 2 == 0:
            narrow = [b.shifted(ell * c) for c in range(t // 2) for b in period]
        else:
            assert ell % 4 == 1
            narrow = [b.shifted(ell * c) for c in range((t - 1) // 2) for b in period]
            narrow += [core.shifted(2 * i + (t - 1) * ell // 2)
                       for i in range((ell - 1) // 4)]
    else:
        assert t % 4 == 0
        core = juxtapose_blocks([lb["G"]] + [lb["F"]] * r)
        period = [core.shifted(i) for i in range(ell - 1)]
        narrow = [b.shifted(2 * ell * c) for c in range(t // 4) for b in period]
    q = s // lam2
    blocks = [juxtapose_blocks(narrow[i * q:(i + 1) * q])
              for i in range(len(narrow) // q)]
    return _finish(m, s, lam1, lam2, t, blocks, blocks)


def _window_tails(ell: int, size: int, n_top: int, t: int, lam1: int, m: int, s: int):
    """Width-6 closing blocks covering the support above n_top, one per block.

    Returns the (first-condition, second-condition) tail lists; they differ
    only when ell = 3.
    """
    lb = lemma_blocks("L46")
    extent = t * ell // 2
    # the four-value windows leave off at n_top one short of a multiple of ell
    # (or at 0 exactly); the closing run restarts at that multiple
    base = ell * ((n_top + ell - 1) // ell)
    if ell == 3:
        g1 = [lb["Z"].shifted(base + 9 * c) for c in range(size)]
        g2 = [lb["Z'"].shifted(base + 9 * c) for c in range(size)]
        return g1, g2
    if ell == 5:
        pairs = size // 2
        g1 = []
        for c in range(pairs):
            g1 += [lb["V5"].shifted(base + 15 * c), lb["V3"].shifted(base + 15 * c + 7)]
        if size % 2 == 1:
            assert t % 2 == 1
            g1.append(lb["V5"].shifted(m * s // (2 * lam1) + (t - 15) // 2))
        return g1, list(g1)
    skips = {1: lb["V1"], 3: lb["V3"], 5: lb["V5"]}
    pos, g1 = n_top, []
    for _ in range(size):
        nxt = (pos // ell + 1) * ell
        if nxt <= pos + 6:
            r = nxt - pos
            assert r in skips, f"unexpected skip offset {r} at {pos} (ell={ell})"
            g1.append(skips[r].shifted(pos))
            pos += 7
        else:
            g1.append(lb["V7"].shifted(pos))
            pos += 6
    # the top of the support sits one short of extent whenever extent itself
    # is an excluded multiple of ell (t even)
    end = extent - 1 if t % 2 == 0 else extent
    assert pos == end, f"tail walk ended at {pos}, expected {end}"
    return g1, list(g1)


def _pair_window(m: int, s: int, lam1: int, t: int) -> NicePair:
    # lambda2 = 2 with t | ms/(2*lam1): four-value windows below a cutoff,
    # width-6 windows with one skip above it
    q = (s - 6) // 4
    ell = m * s // (lam1 * t) + 1
    assert ell % 2 == 1
    lb = lemma_blocks("L46")
    need = m * q // (2 * lam1)
    if ell % 4 == 1:
        period = [lb["U5"].shifted(4 * i) for i in range((ell - 1) // 4)]
        stride = ell
    else:
        x = (ell - 3) // 4
        period = ([lb["U5"].shifted(4 * i) for i in range(x)]
                  + [lb["U3"].shifted(4 * x)]
                  + [lb["U5"].shifted(4 * x + 5 + 4 * i) for i in range(x)])
        stride = 2 * ell
    u_blocks = [period[j % len(period)].shifted(stride * (j // len(period)))
                for j in range(need)]
    n_top = max((abs(v) for b in u_blocks for v in b.entries()), default=0)
    eta = n_top // ell
    assert n_top == 2 * m * q // lam1 + eta
    size = m // (2 * lam1)
    g1, g2 = _window_tails(ell, size, n_top, t, lam1, m, s)
    b1 = [juxtapose_blocks(u_blocks[i * q:(i + 1) * q] + [g1[i]]) for i in range(size)]
    b2 = [juxtapose_blocks(u_blocks[i * q:(i + 1) * q] + [g2[i]]) for i in range(size)]
    return _finish(m, s, lam1, 2, t, b1, b2)


def _pair_prime_block(m: int, s: int, lam1: int, t: int, p: int) -> NicePair:
    # lambda2 = 2 with t divisible by 4p: one wide unit covers the 2p support
    # values sitting just past consecutive multiples of ell
    ell = m * s // (lam1 * t) + 1
    lb = lemma_blocks("L47", ell=ell)
    unit = juxtapose_blocks(
        [lb["W6"]] + [lb["W4"].shifted((4 * j + 6) * ell) for j in range((p - 3) // 2)])
    xs = [2 * p * i * ell + r for i in range(t // (4 * p)) for r in range(ell - 1)]
    h = s // (2 * p)
    blocks = [juxtapose_blocks([unit.shifted(x) for x in xs[i * h:(i + 1) * h]])
              for i in range(len(xs) // h)]
    return _finish(m, s, lam1, 2, t, blocks, blocks)


def _pair_prime_linear(m: int, s: int, lam1: int, t: int, p: int) -> NicePair:
    # lambda2 = 2 with t | ms/(lam1*p): supports advance in steps of
    # y = (ell-1)/p, so the wide unit is built from the stepped block family
    y = m * s // (lam1 * t * p)
    ell = p * y + 1
    assert ell == m * s // (lam1 * t) + 1
    lb = lemma_blocks("L48", p=p, y=y)
    shifts = [2 * (j + 1) * y for j in range((p - 3) // 2)]
    unit1 = juxtapose_blocks([lb["W6"]] + [lb["W4"].shifted(x) for x in shifts])
    unit2 = juxtapose_blocks([lb["W6'"]] + [lb["W4"].shifted(x) for x in shifts])
    xs = [2 * i * ell + r for i in range(t // 4) for r in range(y)]
    h = s // (2 * p)
    b1 = [juxtapose_blocks([unit1.shifted(x) for x in xs[i * h:(i + 1) * h]])
          for i in range(len(xs) // h)]
    b2 = [juxtapose_blocks([unit2.shifted(x) for x in xs[i * h:(i + 1) * h]])
          for i in range(len(xs) // h)]
    return _finish(m, s, lam1, 2, t, b1, b2)


def _smallest_odd_prime_factor(s: int) -> int:
    v = s
    while v % 2 == 0:
        v //= 2
    assert v > 1, f"{s} has no odd prime factor"
    d = 3
    while d * d <= v:
        if v % d == 0:
            return d
        d += 2
    return v


@lru_cache(maxsize=None)
def nice_pair_lambda2(m: int, s: int, lam1: int, t: int) -> NicePair:
    """Pair for lambda2 = 2, split by how t sits against ms/lam1.

    t | ms/(2*lam1) gives the window walk; otherwise the smallest odd prime
    factor p of s steps in, with t | ms/(lam1*p) handled by the linear-step
    unit and the remaining case (t divisible by 4p) by the block-step unit.
    """
    assert s % 4 == 2 and s >= 6
    ms = m * s
    assert ms % lam1 == 0 and (ms // lam1) % t == 0
    if (ms // (2 * lam1)) % t == 0:
        return _pair_window(m, s, lam1, t)
    p = _smallest_odd_prime_factor(s)
    if t % 4 == 0 and (ms // (lam1 * p)) % t == 0:
        return _pair_prime_linear(m, s, lam1, t, p)
    assert t % (4 * p) == 0
    return _pair_prime_block(m, s, lam1, t, p)


@lru_cache(maxsize=None)
def nice_pair_mod4(m: int, s: int, lam1: int, lam2: int, t: int) -> NicePair:
    """Pair for lambda2 divisible by 4: every support value gets its own
    width-lambda2/2 column group, blocks take consecutive runs of values."""
    assert lam2 % 4 == 0
    ms = m * s
    assert ms % (lam1 * lam2) == 0
    phi = sorted(support_spec(ms, lam1 * lam2, t).elements())
    run = 2 * s // lam2
    size = m // (2 * lam1)
    assert len(phi) == run * size
    unit = lemma_blocks("Q", lam2=lam2)["Q"]
    blocks = [juxtapose_blocks([unit.shifted(x - 1) for x in phi[i * run:(i + 1) * run]])
              for i in range(size)]
    return _finish(m, s, lam1, lam2, t, blocks, blocks)


def nice_pair_odd(m: int, s: int, lam1: int, lam2: int, t: int, budget=None) -> NicePair:
    """Pair for the leftover odd lambda2: a width s/lambda2 pair with every
    support value used once is found by bounded search, then each of its
    blocks is juxtaposed with itself lambda2 times."""
    assert lam2 % 2 == 1 and s % lam2 == 0
    from .oracle import Exhausted, search_nice_pair
    found = search_nice_pair(m, s // lam2, lam1, t, budget)
    if found is Exhausted:
        raise OracleExhausted(
            f"seed pair search ran out of budget for (m,s,lam1,lam2,t)="
            f"{(m, s, lam1, lam2, t)}")
    b1 = [juxtapose_blocks([b] * lam2) for b in found.b1]
    b2 = [juxtapose_blocks([b] * lam2) for b in found.b2]
    return _finish(m, s, lam1, lam2, t, b1, b2)


@lru_cache(maxsize=None)
def nice_pair_not_dividing(m: int, s: int, lam: int, t: int) -> NicePair:
    """Pair for lam not dividing ms (forcing lam divisible by 8): the fold
    offsets drive plus-minus column pairs, s/2 of them per block.

    Unlike the other builders this one is never repeated downstream: the
    sequence has length m/2 and covers full elements lam times, the half
    element lam/2 times.
    """
    ms = m * s
    assert ms % lam != 0 and lam % 8 == 0 and m % 2 == 0
    ys = fold_offsets(ms, lam, t)
    unit = lemma_blocks("Q", lam2=4)["Q"]
    half = s // 2
    blocks = [juxtapose_blocks([unit.shifted(y) for y in ys[i * half:(i + 1) * half]])
              for i in range(len(ys) // half)]
    return _finish(m, s, 1, lam, t, blocks, blocks)


def nice_pair(p: HeffterParams, budget=None) -> NicePair:
    """Dispatch to the right pair builder for params p (s congruent 2 mod 4).

    The result always has length m/(2*lambda1) for the chosen factorization;
    callers recover lambda1 as m // (2 * len(pair.b1)).
    """
    m, s, lam, t = p.m, p.s, p.lam, p.t
    if s % 4 != 2:
        raise ValueError(f"pair recipes need s congruent 2 mod 4, got s={s}")
    if m % 2 != 0:
        raise ValueError(f"pair recipes need m even, got m={m}")
    if (m * s) % lam != 0:
        return nice_pair_not_dividing(m, s, lam, t)
    f = choose_factorization(lam, m, s)
    l1, l2 = f.lambda1, f.lambda2
    if l2 % 4 == 0:
        return nice_pair_mod4(m, s, l1, l2, t)
    if l2 % 4 == 2 and l2 >= 6:
        return nice_pair_2mod4_ge6(m, s, l1, l2, t)
    if l2 == 2:
        return nice_pair_lambda2(m, s, l1, t)
    if l2 == s // 2:
        return nice_pair_s_half(m, s, l1, t)
    return nice_pair_odd(m, s, l1, l2, t, budget)
