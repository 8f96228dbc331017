"""Logarithmic functions of length k: search, classification, exact counting.

A logarithmic function maps {1..k} into Z_k with f(ab) = f(a) + f(b)
whenever ab <= k, so it is determined by its values at the primes <= k.
A logarithm is a bijective logarithmic function. The counting machinery
enumerates one representative per symmetry class (value-sorted blocks of
interchangeable primes, f(2) scaled onto a divisor of k) and weights it
by the exact class size, which reproduces the known counts for small k.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import numtheory
from .errors import BudgetExceeded, CountingError

LOG = "log"
KM = "km"
SPECIAL = "special"
CLASSES = (LOG, KM, SPECIAL)

DEFAULT_MAX_K = 42
DEFAULT_IMAGE_MAX_K = 20


@dataclass
class LogFn:
    """A logarithmic function: values at primes plus the induced vector."""

    k: int
    prime_values: dict[int, int]
    full_vector: tuple[int, ...]

    def value(self, m: int) -> int:
        return self.full_vector[m - 1]


@dataclass(frozen=True)
class Classification:
    is_logarithm: bool
    is_km: bool
    is_special_km: bool


@dataclass(frozen=True)
class BlockPartition:
    """Primes <= k grouped into interchangeable blocks."""

    k: int
    blocks: tuple[tuple[int, ...], ...]


def _spf_table(k: int) -> list[int]:
    spf = list(range(k + 1))
    for i in range(2, math.isqrt(k) + 1):
        if spf[i] == i:
            for j in range(i * i, k + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def eval_vector(k: int, prime_values: dict[int, int]) -> LogFn:
    """Build the LogFn induced by one value in Z_k per prime <= k."""
    qs = numtheory.primes(k)
    if sorted(prime_values) != qs:
        raise ValueError(f"need exactly one value per prime <= {k}")
    if any(not 0 <= v < k for v in prime_values.values()):
        raise ValueError("prime values must lie in [0, k)")
    spf = _spf_table(k)
    vec = [0] * (k + 1)
    for m in range(2, k + 1):
        q = spf[m]
        vec[m] = (vec[m // q] + prime_values[q]) % k
    return LogFn(k, dict(prime_values), tuple(vec[1:]))


def classify(f: LogFn) -> Classification:
    """Flag f as a logarithm and, if so, test the KM / special parities.

    For odd k every logarithm qualifies for both. For even k the special
    condition asks f(m) to be even for every divisor m of k/2; the KM
    condition asks the same for divisors of k that are 1 mod 4 (when
    k = 2 mod 4) or for divisors of k/4 (when 4 | k).
    """
    k = f.k
    is_log = len(set(f.full_vector)) == k
    if not is_log:
        return Classification(False, False, False)
    if k % 2 == 1:
        return Classification(True, True, True)
    special = all(f.value(m) % 2 == 0 for m in numtheory.divisors(k // 2))
    if k % 4 == 2:
        km = all(f.value(m) % 2 == 0 for m in numtheory.divisors(k) if m % 4 == 1)
    else:
        km = all(f.value(m) % 2 == 0 for m in numtheory.divisors(k // 4))
    return Classification(True, km, special)


def blocks(k: int, cls: str = LOG) -> BlockPartition:
    """Partition the primes <= k into interchangeable blocks.

    Primes up to sqrt(k) sit alone; a prime q in (sqrt(k), k] joins the
    primes sharing floor(k/q). The prime 2 is always kept alone (its value
    anchors the scaling normal form), and for the KM / special classes any
    prime dividing k is pulled into a singleton as well.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    singles: list[tuple[int, ...]] = []
    grouped: dict[int, list[int]] = {}
    for q in numtheory.primes(k):
        if q == 2 or q * q <= k:
            singles.append((q,))
        elif cls in (KM, SPECIAL) and k % q == 0:
            singles.append((q,))
        else:
            grouped.setdefault(k // q, []).append(q)
    parts = singles + [tuple(g) for g in grouped.values()]
    parts.sort(key=lambda b: b[0])
    return BlockPartition(k, tuple(parts))


def _parity_targets(k: int, cls: str) -> set[int]:
    """Indices m whose value must be even for membership in cls."""
    if k % 2 == 1:
        return set()
    if cls == SPECIAL:
        return set(numtheory.divisors(k // 2))
    if cls == KM:
        if k % 4 == 2:
            return {m for m in numtheory.divisors(k) if m % 4 == 1}
        return set(numtheory.divisors(k // 4))
    return set()


class _Engine:
    """Backtracking search over prime values with symmetry breaking.

    Values are assigned in ascending prime order; after each assignment
    the components at newly-smooth indices are checked for repeats (and
    for the parity conditions of the requested class). Within a block the
    values must increase, f(2) must divide k, and in search mode f(3) is
    forced minimal under the scalars fixing f(2).
    """

    def __init__(self, k: int, cls: str, enforce_f3: bool):
        self.k = k
        self.cls = cls
        self.enforce_f3 = enforce_f3
        self.qs = numtheory.primes(k)
        self.r = len(self.qs)
        part = blocks(k, cls)
        self.block_fact = 1
        for b in part.blocks:
            self.block_fact *= math.factorial(len(b))
        pred = {}
        for b in part.blocks:
            for prev, q in zip(b, b[1:]):
                pred[q] = prev
        qidx = {q: j for j, q in enumerate(self.qs)}
        self.pred = [qidx[pred[q]] if q in pred else -1 for q in self.qs]
        self.singleton_idx = [
            qidx[b[0]] for b in part.blocks if len(b) == 1
        ]
        spf = _spf_table(k)
        lpf = [0] * (k + 1)
        for m in range(2, k + 1):
            lpf[m] = max(lpf[m // spf[m]], spf[m])
        targets = _parity_targets(k, cls)
        self.new_items: list[list[tuple[int, int, bool]]] = []
        self.mult_items: list[list[tuple[int, int]]] = []
        for q in self.qs:
            new = []
            mult = []
            for m in range(q, k + 1, q):
                e = 0
                t = m
                while t % q == 0:
                    t //= q
                    e += 1
                mult.append((m, e))
                if lpf[m] == q:
                    new.append((m, e, m in targets))
            self.new_items.append(new)
            self.mult_items.append(mult)
        self.f2_candidates = [d for d in numtheory.divisors(k) if d < k]
        self.units = [a for a in range(1, k) if math.gcd(a, k) == 1]
        self._stab_cache: dict[int, list[int]] = {}
        self.partial = [0] * (k + 1)
        self.used = bytearray(k)
        self.used[0] = 1  # f(1) = 0 is always taken
        self.assigned = [0] * self.r

    def _stab(self, f2: int) -> list[int]:
        cached = self._stab_cache.get(f2)
        if cached is None:
            cached = [a for a in self.units if a * f2 % self.k == f2]
            self._stab_cache[f2] = cached
        return cached

    def _candidates(self, j: int) -> list[int]:
        k = self.k
        q = self.qs[j]
        if q == 2:
            base = self.f2_candidates
        elif q == 3 and self.enforce_f3:
            stab = self._stab(self.assigned[0])
            base = [
                v for v in range(k) if all(a * v % k >= v for a in stab)
            ]
        else:
            base = range(k)
        if self.pred[j] >= 0:
            lo = self.assigned[self.pred[j]] + 1
            return [v for v in base if v >= lo]
        return list(base)

    def _multiplicity(self) -> int:
        return numtheory.euler_phi(self.k // self.assigned[0]) * self.block_fact

    def _check_representative(self):
        # The scalars fixing f(2) must move the singleton-prime values to
        # pairwise distinct vectors, otherwise a class would be counted
        # more than once.
        k = self.k
        sing = [self.assigned[j] for j in self.singleton_idx]
        seen = set()
        for a in self._stab(self.assigned[0]):
            t = tuple(a * s % k for s in sing)
            if t in seen:
                raise CountingError(
                    f"singleton values {sing} collide under scaling (k={k})"
                )
            seen.add(t)

    def count(self, prefix: tuple[int, ...] = ()) -> int:
        return self._dfs_count(0, prefix)

    def _dfs_count(self, j: int, prefix: tuple[int, ...]) -> int:
        if j == self.r:
            self._check_representative()
            return self._multiplicity()
        k = self.k
        partial = self.partial
        used = self.used
        new = self.new_items[j]
        mult = self.mult_items[j]
        total = 0
        cands = (prefix[j],) if j < len(prefix) else self._candidates(j)
        for v in cands:
            vals = []
            ok = True
            for m, e, needs_even in new:
                val = (partial[m] + e * v) % k
                if used[val] or (needs_even and val & 1):
                    ok = False
                    break
                used[val] = 1
                vals.append(val)
            if not ok:
                for val in vals:
                    used[val] = 0
                continue
            for m, e in mult:
                partial[m] = (partial[m] + e * v) % k
            self.assigned[j] = v
            total += self._dfs_count(j + 1, prefix)
            for m, e in mult:
                partial[m] = (partial[m] - e * v) % k
            for val in vals:
                used[val] = 0
        return total

    def search(self) -> LogFn | None:
        return self._dfs_search(0)

    def search_many(self, limit: int) -> list[LogFn]:
        out: list[LogFn] = []
        self._dfs_search_many(0, limit, out)
        return out

    def _dfs_search_many(self, j: int, limit: int, out: list[LogFn]):
        if j == self.r:
            out.append(eval_vector(self.k, dict(zip(self.qs, self.assigned))))
            return
        k = self.k
        partial = self.partial
        used = self.used
        for v in self._candidates(j):
            if len(out) >= limit:
                return
            vals = []
            ok = True
            for m, e, needs_even in self.new_items[j]:
                val = (partial[m] + e * v) % k
                if used[val] or (needs_even and val & 1):
                    ok = False
                    break
                used[val] = 1
                vals.append(val)
            if not ok:
                for val in vals:
                    used[val] = 0
                continue
            for m, e in self.mult_items[j]:
                partial[m] = (partial[m] + e * v) % k
            self.assigned[j] = v
            self._dfs_search_many(j + 1, limit, out)
            for m, e in self.mult_items[j]:
                partial[m] = (partial[m] - e * v) % k
            for val in vals:
                used[val] = 0

    def _dfs_search(self, j: int) -> LogFn | None:
        if j == self.r:
            return eval_vector(self.k, dict(zip(self.qs, self.assigned)))
        k = self.k
        partial = self.partial
        used = self.used
        new = self.new_items[j]
        mult = self.mult_items[j]
        for v in self._candidates(j):
            vals = []
            ok = True
            for m, e, needs_even in new:
                val = (partial[m] + e * v) % k
                if used[val] or (needs_even and val & 1):
                    ok = False
                    break
                used[val] = 1
                vals.append(val)
            if not ok:
                for val in vals:
                    used[val] = 0
                continue
            for m, e in mult:
                partial[m] = (partial[m] + e * v) % k
            self.assigned[j] = v
            found = self._dfs_search(j + 1)
            for m, e in mult:
                partial[m] = (partial[m] - e * v) % k
            for val in vals:
                used[val] = 0
            if found is not None:
                return found
        return None

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """All surviving partial assignments of the first `depth` primes."""
        out: list[tuple[int, ...]] = []
        self._dfs_prefix(0, depth, out)
        return out

    def _dfs_prefix(self, j: int, depth: int, out: list):
        if j == depth:
            out.append(tuple(self.assigned[:depth]))
            return
        k = self.k
        partial = self.partial
        used = self.used
        for v in self._candidates(j):
            vals = []
            ok = True
            for m, e, needs_even in self.new_items[j]:
                val = (partial[m] + e * v) % k
                if used[val] or (needs_even and val & 1):
                    ok = False
                    break
                used[val] = 1
                vals.append(val)
            if not ok:
                for val in vals:
                    used[val] = 0
                continue
            for m, e in self.mult_items[j]:
                partial[m] = (partial[m] + e * v) % k
            self.assigned[j] = v
            self._dfs_prefix(j + 1, depth, out)
            for m, e in self.mult_items[j]:
                partial[m] = (partial[m] - e * v) % k
            for val in vals:
                used[val] = 0


def _trivial_logfn(k: int) -> LogFn:
    if k == 1:
        return eval_vector(1, {})
    return eval_vector(2, {2: 1})


def search(k: int, cls: str = LOG) -> LogFn | None:
    """First logarithm of the requested class in lexicographic order,
    or None when none exists."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    if k <= 2:
        return _trivial_logfn(k)
    return _Engine(k, cls, enforce_f3=True).search()


def search_many(k: int, cls: str = LOG, limit: int = 8) -> list[LogFn]:
    """Up to `limit` class representatives in lexicographic search order."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    if limit < 1:
        return []
    if k <= 2:
        return [_trivial_logfn(k)]
    return _Engine(k, cls, enforce_f3=True).search_many(limit)


def _count_shard(args) -> int:
    k, cls, prefix = args
    return _Engine(k, cls, enforce_f3=False).count(prefix)


def count(k: int, cls: str = LOG, max_k: int = DEFAULT_MAX_K, workers: int = 1) -> int:
    """Exact number of length-k functions of the given class.

    Each search representative contributes phi(k/f(2)) times the product
    of the block-size factorials. Counts above the budget ceiling raise
    BudgetExceeded; results are identical for any worker count.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    if k > max_k:
        raise BudgetExceeded(f"k={k} exceeds the counting budget {max_k}")
    if k <= 2:
        return 1
    if workers <= 1:
        return _Engine(k, cls, enforce_f3=False).count()
    depth = 1 if numtheory.prime_count(k) == 1 else 2
    tasks = _Engine(k, cls, enforce_f3=False).prefixes(depth)
    if len(tasks) <= 1:
        return _Engine(k, cls, enforce_f3=False).count()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_count_shard, [(k, cls, t) for t in tasks]))
    return sum(parts)


def log_from_safe_prime(k: int) -> LogFn | None:
    """Discrete-log construction when 2k+1 or k+1 is prime.

    With p = 2k+1 the dlog is reduced from Z_2k onto Z_k and the result
    always satisfies the special parity conditions, so that route is
    preferred; with p = k+1 the map a -> dlog(a) mod p is itself a
    logarithm (special whenever 8 | k). Returns None when neither modulus
    is prime.
    """
    for p in (2 * k + 1, k + 1):
        if numtheory.is_prime(p):
            alpha = numtheory.primitive_root(p)
            pv = {
                q: numtheory.discrete_log(alpha, q, p) % k
                for q in numtheory.primes(k)
            }
            return eval_vector(k, pv)
    return None


def image_stats(k: int, max_k: int = DEFAULT_IMAGE_MAX_K) -> tuple[int, int]:
    """Exact (M_k, R_k) by exhausting all k**pi(k) functions with pruning.

    M_k is the largest image size of any logarithmic function of length
    k; R_k is the largest y such that some logarithmic function is
    injective on the y-smooth part of {1..k}.
    """
    if k > max_k:
        raise BudgetExceeded(f"k={k} exceeds the image-statistics budget {max_k}")
    if k == 1:
        return 1, 1
    qs = numtheory.primes(k)
    r = len(qs)
    spf = _spf_table(k)
    lpf = [0] * (k + 1)
    for m in range(2, k + 1):
        lpf[m] = max(lpf[m // spf[m]], spf[m])
    new_items = []
    mult_items = []
    for q in qs:
        new = []
        mult = []
        for m in range(q, k + 1, q):
            e = 0
            t = m
            while t % q == 0:
                t //= q
                e += 1
            mult.append((m, e))
            if lpf[m] == q:
                new.append((m, e))
        new_items.append(new)
        mult_items.append(mult)
    partial = [0] * (k + 1)
    cnt = [0] * k
    cnt[0] = 1
    state = {"M": 1, "depth": 0, "distinct": 1, "determined": 1}

    def dfs(j: int, injective: bool) -> bool:
        if injective and j > state["depth"]:
            state["depth"] = j
        if j == r:
            if state["distinct"] > state["M"]:
                state["M"] = state["distinct"]
            return state["M"] == k and state["depth"] == r
        new = new_items[j]
        mult = mult_items[j]
        for v in range(k):
            vals = [(partial[m] + e * v) % k for m, e in new]
            gained = 0
            inj = injective
            for val in vals:
                if cnt[val]:
                    inj = False
                else:
                    gained += 1
                cnt[val] += 1
            if len(set(vals)) != len(vals):
                inj = False
            bound = state["distinct"] + gained + (k - state["determined"] - len(vals))
            promising_m = bound > state["M"]
            promising_r = inj and state["depth"] < r
            if promising_m or promising_r:
                state["distinct"] += gained
                state["determined"] += len(vals)
                for m, e in mult:
                    partial[m] = (partial[m] + e * v) % k
                done = dfs(j + 1, inj)
                for m, e in mult:
                    partial[m] = (partial[m] - e * v) % k
                state["distinct"] -= gained
                state["determined"] -= len(vals)
                if done:
                    for val in vals:
                        cnt[val] -= 1
                    return True
            for val in vals:
                cnt[val] -= 1
        return False

    dfs(0, True)
    m_k = state["M"]
    depth = state["depth"]
    r_k = k if depth == r else qs[depth] - 1
    return m_k, r_k


def format_logfn(f: LogFn) -> str:
    """Serialize as ``k=<int>`` then ``q=<prime> f=<value>`` lines."""
    lines = [f"k={f.k}"]
    lines.extend(f"q={q} f={f.prime_values[q]}" for q in sorted(f.prime_values))
    return "\n".join(lines) + "\n"


def parse_logfn(text: str) -> LogFn:
    k = None
    pv = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("k="):
            k = int(line.split("=", 1)[1])
        else:
            parts = dict(tok.split("=", 1) for tok in line.split())
            pv[int(parts["q"])] = int(parts["f"])
    if k is None:
        raise ValueError("missing 'k=<int>' line")
    return eval_vector(k, pv)
