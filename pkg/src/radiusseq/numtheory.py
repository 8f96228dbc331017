"""Exact modular and lattice arithmetic underpinning every construction.

Everything here is pure integer / rational arithmetic: deterministic
primality, orders, Legendre symbols, primitive roots, baby-step
giant-step discrete logs, integer kernel lattices via Hermite normal
form, and LLL reduction with exact Gram-Schmidt coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSolution

# Witnesses 2..37 make Miller-Rabin deterministic for all n < 3.3 * 10^24,
# comfortably covering the 64-bit range this library targets.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for all 64-bit integers."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def sieve(limit: int) -> bytearray:
    """Flags[i] == 1 iff i is prime, for 0 <= i <= limit."""
    flags = bytearray([1]) * (limit + 1) if limit >= 0 else bytearray()
    for i in range(min(1, limit) + 1):
        flags[i] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return flags


def primes(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    flags = sieve(limit)
    return [i for i in range(2, limit + 1) if flags[i]]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as (prime, exponent) pairs, ascending."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    phi = n
    for p, _ in factorize(n):
        phi -= phi // p
    return phi


def prime_count(n: int) -> int:
    """pi(n): number of primes <= n."""
    if n < 2:
        return 0
    return sum(sieve(n))


def arithmetic_functions(n: int) -> tuple[int, int, int]:
    """Return (phi(n), omega(n), pi(n)) for n >= 1."""
    if n < 1:
        raise ValueError("arithmetic_functions requires n >= 1")
    fac = factorize(n)
    phi = n
    for p, _ in fac:
        phi -= phi // p
    return phi, len(fac), prime_count(n)


def multiplicative_order(a: int, n: int) -> int:
    """Least l >= 1 with a**l == 1 mod n; requires gcd(a, n) == 1."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    a %= n
    if math.gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1: no multiplicative order")
    t = euler_phi(n)
    for p, _ in factorize(t):
        while t % p == 0 and pow(a, t // p, n) == 1:
            t //= p
    return t


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, +1} via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def primitive_root(p: int) -> int:
    """Smallest positive residue generating Z_p*, for prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    fac = [q for q, _ in factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
        g += 1


def discrete_log(base: int, target: int, p: int) -> int:
    """Least x >= 0 with base**x == target mod p, by baby-step giant-step.

    Raises NoSolution when target is outside the subgroup generated by base.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    base %= p
    target %= p
    if base == 0 or target == 0:
        raise ValueError("base and target must be nonzero mod p")
    if target == 1:
        return 0
    d = multiplicative_order(base, p)
    m = math.isqrt(d) + 1
    baby = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = cur * base % p
    giant = pow(base, -m, p)
    y = target
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % d
        y = y * giant % p
    raise NoSolution(f"{target} is not a power of {base} mod {p}")


def smooth_numbers(limit: int, bound: int) -> list[int]:
    """All m in [1, limit] whose prime factors are all <= bound, ascending."""
    if limit < 1 or bound < 1:
        raise ValueError("limit and bound must be >= 1")
    smooth = bytearray([1]) * (limit + 1)
    for q in primes(limit):
        if q > bound:
            smooth[q::q] = bytearray(len(smooth[q::q]))
    return [m for m in range(1, limit + 1) if smooth[m]]


@dataclass(frozen=True)
class IntBasis:
    """Basis of a full-rank sublattice of Z^dim, stored as integer rows."""

    dim: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.dim or any(len(r) != self.dim for r in self.rows):
            raise ValueError("basis must be square")
        if self.dim > 0 and self.determinant() == 0:
            raise ValueError("basis rows are linearly dependent")

    def determinant(self) -> int:
        return determinant(self.rows)


def determinant(rows) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def hermite_normal_form(rows) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows: pivots positive, entries above each pivot
    reduced into [0, pivot). Unimodular row operations only, so the row
    lattice is preserved.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return []
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if mat[i][c] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][c]))
            for i in nz:
                if i != i0:
                    q = mat[i][c] // mat[i0][c]
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[i0])]
        nz = [i for i in range(r, nrows) if mat[i][c] != 0]
        if not nz:
            continue
        piv = nz[0]
        mat[r], mat[piv] = mat[piv], mat[r]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
        r += 1
    return mat[:r]


def kernel_lattice(exps: list[int], m: int) -> IntBasis:
    """Basis of {v in Z^r : sum(v_i * exps_i) == 0 mod m}.

    The determinant equals the order of the subgroup of Z_m generated by
    the exps, i.e. the index of the kernel in Z^r.
    """
    r = len(exps)
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if r == 0:
        return IntBasis(0, ())
    stack = []
    for i, a in enumerate(exps):
        row = [a % m] + [0] * r
        row[1 + i] = 1
        stack.append(row)
    stack.append([m] + [0] * r)
    hnf = hermite_normal_form(stack)
    kernel_rows = [tuple(row[1:]) for row in hnf if row[0] == 0]
    if len(kernel_rows) != r:
        raise AssertionError("kernel extraction lost rank")
    basis = IntBasis(r, tuple(kernel_rows))
    expected = m // math.gcd(m, *[a % m for a in exps]) if exps else 1
    if abs(basis.determinant()) != expected:
        raise AssertionError("kernel determinant mismatch")
    return basis


def _gram_schmidt(b: list[list[int]]):
    n = len(b)
    ortho: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            denom = _dot(ortho[j], ortho[j])
            if denom == 0:
                raise ValueError("rank-deficient basis")
            mu[i][j] = _dot(b[i], ortho[j]) / denom
            v = [x - mu[i][j] * y for x, y in zip(v, ortho[j])]
        if all(x == 0 for x in v):
            raise ValueError("rank-deficient basis")
        ortho.append(v)
    return ortho, mu


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def lll_reduce(basis: IntBasis, delta: Fraction = Fraction(3, 4)) -> IntBasis:
    """LLL-reduce an integer basis with exact rational arithmetic.

    Returns a basis of the same lattice whose rows are sorted by
    Euclidean length ascending; with the classical Lovasz parameter 3/4
    the product of the row norms is at most 2**(r(r-1)/4) * |det|.
    """
    n = basis.dim
    if n == 0:
        return basis
    b = [list(r) for r in basis.rows]
    ortho, mu = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in reversed(range(k)):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = round(mu[k][j])
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                ortho, mu = _gram_schmidt(b)
        if _dot(ortho[k], ortho[k]) >= (delta - mu[k][k - 1] ** 2) * _dot(
            ortho[k - 1], ortho[k - 1]
        ):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            ortho, mu = _gram_schmidt(b)
            k = max(k - 1, 1)
    b.sort(key=lambda row: sum(x * x for x in row))
    return IntBasis(n, tuple(tuple(row) for row in b))
