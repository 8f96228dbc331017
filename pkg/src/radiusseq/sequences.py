"""The k-radius sequence type, its verifier, bounds and basic constructions.

An n-ary k-radius sequence is a finite word over {0..n-1} in which every
pair of distinct alphabet symbols occurs somewhere at positions at most k
apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AlphabetViolation, NotVerified


@dataclass(frozen=True)
class RadiusSequence:
    """A candidate n-ary k-radius sequence."""

    n: int
    k: int
    symbols: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        object.__setattr__(self, "symbols", tuple(self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)


def verify(seq: RadiusSequence) -> tuple[bool, list[tuple[int, int]]]:
    """Check the k-radius property by sliding a window of length k+1.

    Returns (ok, missing) where missing lists every unordered pair of
    distinct alphabet symbols that never co-occurs within distance k.
    """
    n, k, symbols = seq.n, seq.k, seq.symbols
    bad = [s for s in symbols if s < 0 or s >= n]
    if bad:
        raise AlphabetViolation(f"symbol {bad[0]} outside alphabet of size {n}")
    # flat n*n marking table; pairs are indexed as min*n + max
    marks = bytearray(n * n)
    count = 0
    for i, s in enumerate(symbols):
        for j in range(i - k if i > k else 0, i):
            t = symbols[j]
            if t == s:
                continue
            idx = t * n + s if t < s else s * n + t
            if not marks[idx]:
                marks[idx] = 1
                count += 1
    if count == n * (n - 1) // 2:
        return True, []
    missing = [
        (x, y)
        for x in range(n)
        for y in range(x + 1, n)
        if not marks[x * n + y]
    ]
    return False, missing


def lower_bound(n: int, k: int) -> int:
    """Smallest length not excluded by the counting bound C(n,2)/k < length."""
    return math.comb(n, 2) // k + 1


def naive_sequence(n: int, k: int) -> RadiusSequence:
    """Concatenation of all two-symbol words x,y with x < y; length 2*C(n,2)."""
    symbols = []
    for x in range(n):
        for y in range(x + 1, n):
            symbols.append(x)
            symbols.append(y)
    return RadiusSequence(n, k, tuple(symbols))


def one_radius_optimal(n: int) -> RadiusSequence:
    """A 1-radius sequence of the exact optimal length.

    Realized as an Eulerian trail on the complete graph, so consecutive
    symbols always differ. For even n a perfect matching on the vertices
    2..n-1 is doubled, leaving 0 and 1 as the odd-degree trail endpoints;
    the length is then C(n,2) + n/2, against C(n,2) + 1 for odd n.
    """
    if n == 1:
        return RadiusSequence(1, 1, (0,))
    edges = [(x, y) for x in range(n) for y in range(x + 1, n)]
    if n % 2 == 0:
        edges.extend((2 * i, 2 * i + 1) for i in range(1, (n - 2) // 2 + 1))
    adj = [[] for _ in range(n)]
    for eid, (x, y) in enumerate(edges):
        adj[x].append((eid, y))
        adj[y].append((eid, x))
    used = bytearray(len(edges))
    ptr = [0] * n
    stack = [0]
    trail = []
    while stack:
        v = stack[-1]
        lst = adj[v]
        i = ptr[v]
        while i < len(lst) and used[lst[i][0]]:
            i += 1
        ptr[v] = i
        if i == len(lst):
            trail.append(stack.pop())
        else:
            eid, w = lst[i]
            used[eid] = 1
            stack.append(w)
    trail.reverse()
    if len(trail) != len(edges) + 1:
        raise AssertionError("Eulerian trail failed to use every edge")
    return RadiusSequence(n, 1, tuple(trail))


def shrink_alphabet(seq: RadiusSequence, x: int) -> RadiusSequence:
    """Drop the x most frequent symbols and relabel onto {0..n-x-1}.

    Frequency ties are broken in favour of the smaller symbol. The input
    must verify; the output then verifies as an (n-x)-ary k-radius
    sequence of length at most len(seq) - ceil(x*len(seq)/n).
    """
    if not 1 <= x < seq.n:
        raise ValueError("need 1 <= x < n")
    ok, _ = verify(seq)
    if not ok:
        raise NotVerified("input sequence fails the k-radius check")
    freq = [0] * seq.n
    for s in seq.symbols:
        freq[s] += 1
    ranked = sorted(range(seq.n), key=lambda s: (-freq[s], s))
    dropped = set(ranked[:x])
    survivors = sorted(s for s in range(seq.n) if s not in dropped)
    relabel = {s: i for i, s in enumerate(survivors)}
    symbols = tuple(relabel[s] for s in seq.symbols if s not in dropped)
    return RadiusSequence(seq.n - x, seq.k, symbols)


def format_sequence(seq: RadiusSequence, comments: list[str] | None = None) -> str:
    """Serialize to the shared text format: optional comments, a header
    line ``n=<int> k=<int>``, then whitespace-separated decimal symbols."""
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"n={seq.n} k={seq.k}")
    lines.append(" ".join(str(s) for s in seq.symbols))
    return "\n".join(lines) + "\n"


def parse_sequence(text: str, n: int | None = None, k: int | None = None) -> RadiusSequence:
    """Parse the text format; explicit n/k arguments override the header."""
    header_n = header_k = None
    symbols: list[int] = []
    saw_content = False
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_content and line.startswith("n="):
            parts = dict(tok.split("=", 1) for tok in line.split())
            header_n = int(parts["n"])
            header_k = int(parts["k"])
            saw_content = True
            continue
        saw_content = True
        symbols.extend(int(tok) for tok in line.split())
    n = n if n is not None else header_n
    k = k if k is not None else header_k
    if n is None or k is None:
        raise ValueError("alphabet size and radius not given and no header found")
    return RadiusSequence(n, k, tuple(symbols))
