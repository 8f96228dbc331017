"""k-radius primes: the predicate, scanning, and density measurements.

A prime p qualifies for radius k when p = 1 mod 2k and the k-th power
residues of 1..k are pairwise distinct; such primes admit a partition of
Z_p* into (p-1)/2k multiplier blocks and hence near-optimal sequences.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import logarithms, numtheory
from .errors import NotKRadiusPrime

DEFAULT_HORIZON = 10**7
CSV_HEADER = "k,limit,primes_scanned,hits,observed,predicted"


def _qualifies(p: int, k: int) -> bool:
    """Predicate body; assumes p is prime."""
    if p % (2 * k) != 1:
        return False
    # The congruence makes (p-1)/k even, which the block-disjointness
    # argument relies on.
    assert ((p - 1) // k) % 2 == 0
    if k == 1:
        return True
    e = (p - 1) // k
    powers = [pow(i, e, p) for i in range(1, k + 1)]
    return len(set(powers)) == k


def is_k_radius_prime(p: int, k: int) -> bool:
    """True iff prime p = 1 mod 2k and 1..k have distinct k-th power residues."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not numtheory.is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _qualifies(p, k)


def next_k_radius_prime(n: int, k: int, horizon: int = DEFAULT_HORIZON) -> int | None:
    """Smallest k-radius prime >= n, or None if none up to the horizon."""
    if k < 1:
        raise ValueError("k must be >= 1")
    step = 2 * k
    p = max(n, 3)
    p += (1 - p) % step  # first candidate = 1 mod 2k
    while p <= horizon:
        if numtheory.is_prime(p) and _qualifies(p, k):
            return p
        p += step
    return None


def induced_log(p: int, k: int) -> logarithms.LogFn:
    """The length-k function read off a k-radius prime's power residues.

    Taking discrete logs of the residues a**((p-1)/k) with respect to the
    k-th root of unity alpha**((p-1)/k) amounts to reducing dlog(a) mod k.
    """
    if not is_k_radius_prime(p, k):
        raise NotKRadiusPrime(f"{p} is not a {k}-radius prime")
    alpha = numtheory.primitive_root(p)
    pv = {q: numtheory.discrete_log(alpha, q, p) % k for q in numtheory.primes(k)}
    return logarithms.eval_vector(k, pv)


def predicted_density(k: int, max_k: int = logarithms.DEFAULT_MAX_K) -> Fraction:
    """Closed-form density of k-radius primes among all primes.

    Needs the exact special-class count for length k, so the counting
    budget applies. The k=5 value of this formula (2/125) is known not to
    match the measured density, which is ten times smaller; the formula
    is implemented as stated.
    """
    f_spec = logarithms.count(k, logarithms.SPECIAL, max_k=max_k)
    phi2k = numtheory.euler_phi(2 * k)
    denom = phi2k * k ** numtheory.prime_count(k)
    if k % 2 == 1:
        return Fraction(f_spec, denom)
    omega = len(numtheory.factorize(k // 2))
    return Fraction(f_spec * 2**omega, denom)


@dataclass(frozen=True)
class DensityReport:
    """Predicted versus observed proportion of k-radius primes up to a limit."""

    k: int
    limit: int
    primes_scanned: int
    k_radius_count: int
    observed: Fraction
    predicted: Fraction


def _scan_interval(args) -> tuple[int, int, list[int]]:
    """Count primes and k-radius primes in [lo, hi] with a segmented sieve."""
    k, lo, hi, collect = args
    lo = max(lo, 2)
    if hi < lo:
        return 0, 0, []
    base = numtheory.primes(math.isqrt(hi))
    size = hi - lo + 1
    flags = bytearray([1]) * size
    for q in base:
        start = max(q * q, (lo + q - 1) // q * q)
        flags[start - lo :: q] = bytearray(len(flags[start - lo :: q]))
    n_primes = 0
    hits = 0
    found: list[int] = []
    step = 2 * k
    for i in range(size):
        if not flags[i]:
            continue
        p = lo + i
        n_primes += 1
        if p % step == 1 and _qualifies(p, k):
            hits += 1
            if collect:
                found.append(p)
    return n_primes, hits, found


def scan_k_radius_primes(k: int, limit: int, workers: int = 1) -> list[int]:
    """All k-radius primes <= limit, ascending; shardable across workers."""
    parts = _run_shards(k, limit, workers, collect=True)
    out: list[int] = []
    for _, _, found in parts:
        out.extend(found)
    return out


def _run_shards(k: int, limit: int, workers: int, collect: bool):
    if k < 1 or limit < 2:
        raise ValueError("need k >= 1 and limit >= 2")
    workers = max(1, workers)
    bounds = []
    span = (limit - 1) // workers + 1
    lo = 2
    while lo <= limit:
        hi = min(lo + span - 1, limit)
        bounds.append((k, lo, hi, collect))
        lo = hi + 1
    if workers == 1 or len(bounds) == 1:
        return [_scan_interval(b) for b in bounds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_scan_interval, bounds))


def density_scan(
    k: int,
    limit: int,
    workers: int = 1,
    max_k: int = logarithms.DEFAULT_MAX_K,
) -> DensityReport:
    """Scan all primes <= limit and compare the hit rate with the prediction."""
    parts = _run_shards(k, limit, workers, collect=False)
    n_primes = sum(p for p, _, _ in parts)
    hits = sum(h for _, h, _ in parts)
    observed = Fraction(hits, n_primes) if n_primes else Fraction(0)
    return DensityReport(
        k=k,
        limit=limit,
        primes_scanned=n_primes,
        k_radius_count=hits,
        observed=observed,
        predicted=predicted_density(k, max_k=max_k),
    )


def csv_row(report: DensityReport) -> str:
    """One CSV row: k, limit, primes_scanned, hits, observed, predicted."""
    return (
        f"{report.k},{report.limit},{report.primes_scanned},"
        f"{report.k_radius_count},{float(report.observed)!r},"
        f"{float(report.predicted)!r}"
    )
