"""Exact integer-side arithmetic: sieves, von Mangoldt values, psi,
interval prime counts, and k-free decompositions.

All interval operations are segmented, so queries near 10^12 only ever
need a base table of primes up to 10^6. Segments are processed in a
fixed order (optionally by a thread pool) and merged deterministically.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, CoverageError, DomainError

DEFAULT_SEGMENT_LENGTH = 1 << 20
DEFAULT_SIEVE_BUDGET = 10 ** 8

# Windows at most this long are counted by per-candidate primality
# testing instead of sieving; cheaper once the window is much shorter
# than the base prime list.
MR_WINDOW = 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                 47, 53, 59, 61)


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending. Immutable; safe to share."""

    limit: int
    primes: np.ndarray  # int64, ascending

    def count_upto(self, x: int) -> int:
        """pi(x) by binary search; requires x <= limit."""
        if x > self.limit:
            raise CoverageError(f"pi({x}) beyond table limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))


@dataclass(frozen=True)
class LambdaSegment:
    """Prime powers in the half-open range (lo, hi].

    Parallel arrays: n = p**r runs ascending, log_p = log(p).
    """

    lo: int
    hi: int
    n: np.ndarray        # int64
    log_p: np.ndarray    # float64
    p: np.ndarray        # int64
    r: np.ndarray        # int64

    @property
    def entries(self) -> list[tuple[int, float, int, int]]:
        return [(int(a), float(b), int(c), int(d))
                for a, b, c, d in zip(self.n, self.log_p, self.p, self.r)]


@dataclass(frozen=True)
class KfreeDecomposition:
    """The unique n = q * m**k with q free of k-th prime powers."""

    n: int
    k: int
    q: int
    m: int


def sieve_primes(limit: int, budget: int = DEFAULT_SIEVE_BUDGET) -> PrimeTable:
    """Complete prime table up to ``limit`` (inclusive)."""
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > budget:
        raise CapacityError(
            f"sieve limit {limit} exceeds memory budget {budget}")
    is_comp = np.zeros(limit + 1, dtype=bool)
    is_comp[:2] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not is_comp[p]:
            is_comp[p * p:: p] = True
    primes = np.nonzero(~is_comp)[0].astype(np.int64)
    return PrimeTable(limit=limit, primes=primes)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; valid for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def iroot(n: int, r: int) -> int:
    """Largest integer a with a**r <= n."""
    if n < 0 or r < 1:
        raise DomainError(f"iroot({n}, {r})")
    if n == 0:
        return 0
    a = int(round(n ** (1.0 / r)))
    while a > 0 and a ** r > n:
        a -= 1
    while (a + 1) ** r <= n:
        a += 1
    return a


def is_prime_power(n: int):
    """(p, r) with n = p**r if n is a prime power, else None."""
    if n < 1:
        raise DomainError(f"is_prime_power({n})")
    if n == 1:
        return None
    for r in range(n.bit_length() - 1, 0, -1):
        a = iroot(n, r)
        if a ** r == n and is_prime(a):
            return a, r
    return None


def _check_interval(lo: int, hi: int, base: PrimeTable) -> None:
    if not 0 <= lo <= hi:
        raise DomainError(f"need 0 <= lo <= hi, got ({lo}, {hi})")
    if base.limit * base.limit < hi:
        raise CoverageError(
            f"base table to {base.limit} cannot certify primes up to {hi}")


def _segment_primes(lo: int, hi: int, base: PrimeTable) -> np.ndarray:
    """Primes in (lo, hi] by odd-only sieving with the base table."""
    out_two = lo < 2 <= hi
    o0 = lo + 1
    if o0 % 2 == 0:
        o0 += 1
    if o0 > hi:
        return np.array([2], dtype=np.int64) if out_two else \
            np.empty(0, dtype=np.int64)
    n_odds = (hi - o0) // 2 + 1
    mask = np.ones(n_odds, dtype=bool)
    if o0 == 1:
        mask[0] = False
    root = math.isqrt(hi)
    odd_primes = base.primes[1: bisect_right(base.primes, root)]
    for p in odd_primes.tolist():
        start = max(p * p, ((o0 + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start <= hi:
            mask[(start - o0) // 2:: p] = False
    primes = o0 + 2 * np.nonzero(mask)[0].astype(np.int64)
    if out_two:
        primes = np.concatenate(([2], primes))
    return primes


def _segments(lo: int, hi: int, seg_len: int):
    s = lo
    while s < hi:
        e = min(s + seg_len, hi)
        yield s, e
        s = e


def prime_count_interval(lo: int, hi: int, base: PrimeTable, *,
                         seg_len: int = DEFAULT_SEGMENT_LENGTH,
                         threads: int = 1) -> int:
    """#{p prime : lo < p <= hi}."""
    if lo < 1:
        raise DomainError(f"prime_count_interval requires lo >= 1, got {lo}")
    _check_interval(lo, hi, base)
    if lo == hi:
        return 0
    if hi <= base.limit:
        return int(np.searchsorted(base.primes, hi, side="right")
                   - np.searchsorted(base.primes, lo, side="right"))
    if hi - lo <= MR_WINDOW:
        return sum(1 for n in range(lo + 1, hi + 1) if is_prime(n))
    segs = list(_segments(lo, hi, seg_len))
    if threads > 1 and len(segs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(
                lambda se: len(_segment_primes(se[0], se[1], base)), segs))
    else:
        counts = [len(_segment_primes(s, e, base)) for s, e in segs]
    return sum(counts)  # fixed-order merge; integer, so exact anyway


def prime_counts_at(thresholds, base: PrimeTable, *,
                    seg_len: int = DEFAULT_SEGMENT_LENGTH) -> np.ndarray:
    """pi(t) for every t in ``thresholds``, via one growing sieve pass.

    Far cheaper than independent interval counts when many thresholds
    share the range, e.g. the x // m**k ladder of the counting module.
    """
    ts = np.asarray(thresholds, dtype=np.int64)
    if ts.size == 0:
        return np.zeros(0, dtype=np.int64)
    hi = int(ts.max())
    if hi < 1:
        return np.zeros(ts.shape, dtype=np.int64)
    if hi <= base.limit:
        return np.searchsorted(base.primes, ts, side="right").astype(np.int64)
    _check_interval(1, hi, base)
    order = np.sort(np.unique(ts))
    counts = np.zeros(order.size, dtype=np.int64)
    running = 0
    for s, e in _segments(0, hi, seg_len):
        ps = _segment_primes(s, e, base)
        i0, i1 = np.searchsorted(order, [s, e], side="right")
        for i in range(i0, i1):
            counts[i] = running + np.searchsorted(ps, order[i], side="right")
        running += len(ps)
    lookup = dict(zip(order.tolist(), counts.tolist()))
    return np.array([lookup[int(t)] if t >= 1 else 0 for t in ts],
                    dtype=np.int64)


def lambda_segment(lo: int, hi: int, base: PrimeTable,
                   seg_len: int = DEFAULT_SEGMENT_LENGTH) -> LambdaSegment:
    """All n in (lo, hi] with Lambda(n) != 0, with exact (p, r)."""
    _check_interval(lo, hi, base)
    parts = [_segment_primes(s, e, base) for s, e in _segments(lo, hi, seg_len)]
    primes = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    ns = [primes]
    ps = [primes]
    rs = [np.ones(len(primes), dtype=np.int64)]
    # higher powers: p <= sqrt(hi) always lies within the base table
    extra = []
    for p in base.primes[: bisect_right(base.primes, math.isqrt(hi))].tolist():
        pr, r = p * p, 2
        while pr <= hi:
            if pr > lo:
                extra.append((pr, p, r))
            pr *= p
            r += 1
    if extra:
        extra.sort()
        e = np.array(extra, dtype=np.int64)
        ns.append(e[:, 0])
        ps.append(e[:, 1])
        rs.append(e[:, 2])
    n_all = np.concatenate(ns)
    p_all = np.concatenate(ps)
    r_all = np.concatenate(rs)
    order = np.argsort(n_all, kind="stable")
    n_all, p_all, r_all = n_all[order], p_all[order], r_all[order]
    return LambdaSegment(lo=lo, hi=hi, n=n_all,
                         log_p=np.log(p_all.astype(np.float64)),
                         p=p_all, r=r_all)


def psi(x, base: PrimeTable, seg_len: int = DEFAULT_SEGMENT_LENGTH) -> float:
    """Chebyshev psi(x) = sum of Lambda(n) over n <= x.

    Per-segment sums are merged with math.fsum, so the accumulated
    rounding error stays at a few ulps even for 10^8-term sums.
    """
    xf = math.floor(x)
    if xf < 1:
        raise DomainError(f"psi requires x >= 1, got {x}")
    if xf == 1:
        return 0.0
    partials = []
    for s, e in _segments(1, xf, seg_len):
        seg = lambda_segment(s, e, base, seg_len)
        partials.append(float(np.sum(seg.log_p)))
    return math.fsum(partials)


def weighted_lambda_sums_at(thresholds, base: PrimeTable, *,
                            primes_only: bool = False,
                            seg_len: int = DEFAULT_SEGMENT_LENGTH
                            ) -> np.ndarray:
    """psi(t) (or theta(t) with ``primes_only``) for each threshold,
    in one segmented pass."""
    ts = np.asarray(thresholds, dtype=np.int64)
    if ts.size == 0:
        return np.zeros(0, dtype=np.float64)
    hi = int(ts.max())
    out = np.zeros(ts.shape, dtype=np.float64)
    if hi < 2:
        return out
    _check_interval(1, hi, base)
    order = np.sort(np.unique(ts))
    vals = np.zeros(order.size, dtype=np.float64)
    running: list[float] = []
    for s, e in _segments(1, hi, seg_len):
        seg = lambda_segment(s, e, base, seg_len)
        logs = seg.log_p if not primes_only else seg.log_p[seg.r == 1]
        ns = seg.n if not primes_only else seg.n[seg.r == 1]
        i0, i1 = np.searchsorted(order, [s, e], side="right")
        for i in range(i0, i1):
            j = np.searchsorted(ns, order[i], side="right")
            vals[i] = math.fsum(running + [float(np.sum(logs[:j]))])
        running.append(float(np.sum(logs)))
    lookup = dict(zip(order.tolist(), vals.tolist()))
    return np.array([lookup[int(t)] if t >= 2 else 0.0 for t in ts],
                    dtype=np.float64)


_KFREE_CACHE: dict[str, PrimeTable] = {}


def _kfree_base(n: int) -> PrimeTable:
    need = max(iroot(n, 3) + 1, 100)
    tbl = _KFREE_CACHE.get("t")
    if tbl is None or tbl.limit < need:
        tbl = sieve_primes(max(need, 10 ** 4))
        _KFREE_CACHE["t"] = tbl
    return tbl


def kfree_decompose(n: int, k: int) -> KfreeDecomposition:
    """Unique n = q * m**k with q k-free.

    Trial division by primes up to n^(1/3), then a deterministic
    primality classification of the cofactor; intended for n <= 10^12.
    """
    if n < 1:
        raise DomainError(f"kfree_decompose requires n >= 1, got {n}")
    if k < 2:
        raise DomainError(f"kfree_decompose requires k >= 2, got {k}")
    q = m = 1
    tmp = n
    for p in _kfree_base(n).primes.tolist():
        if p * p * p > tmp:
            break
        if tmp % p == 0:
            e = 0
            while tmp % p == 0:
                tmp //= p
                e += 1
            q *= p ** (e % k)
            m *= p ** (e // k)
    if tmp > 1:
        s = math.isqrt(tmp)
        if s * s == tmp:
            # cofactor is p^2 with p prime (no factor <= cbrt remains)
            q *= s ** (2 % k)
            m *= s ** (2 // k)
        else:
            # prime, or a product of two distinct primes: exponents 1
            q *= tmp
    return KfreeDecomposition(n=n, k=k, q=q, m=m)
