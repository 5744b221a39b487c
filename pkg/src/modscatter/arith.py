"""Integer arithmetic around the congruence x^2 == -1 (mod q).

Solvability is governed by the factorization of q: solutions exist exactly
when 4 does not divide q and no prime factor of q is 3 (mod 4).  In the
solvable cases the number of solutions in [1, q) is 2**m, where m counts the
distinct odd prime factors (each of which is then 1 (mod 4)).  The convention
for q = 1 is a count of 1, matching the single trivial geodesic it indexes
downstream.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

MAX_N = 2**63 - 1

_TRIAL_LIMIT = 10**6
# Deterministic Miller-Rabin witness set: valid for every n below 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Largest modulus for which the vectorised scan keeps p*p + 1 inside int64.
_SCAN_LIMIT = 3_037_000_499
_SCAN_CHUNK = 1 << 22


@dataclass(frozen=True)
class Factorization:
    """n = prod p**e over `factors`, primes strictly increasing; n = 1 is empty."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)


class CongruenceClass(enum.Enum):
    NO_SOLUTIONS = "no_solutions"  # 4 | q, or some prime factor is 3 (mod 4)
    ODD = "odd"                    # q odd with every prime factor 1 (mod 4); includes q = 1
    TWICE_ODD = "twice_odd"        # q = 2m with m odd and every prime factor of m 1 (mod 4)


@dataclass(frozen=True)
class Classification:
    kind: CongruenceClass
    omega: int  # distinct prime factors of the odd part; 0 when NO_SOLUTIONS


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 64-bit integers."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Nontrivial factor of an odd composite n (Brent's variant of Pollard rho)."""
    rng = random.Random(0xC0FFEE ^ n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factorize(n: int) -> Factorization:
    """Unique prime factorization of 1 <= n < 2**63.

    Trial division up to 10**6, then Miller-Rabin plus Brent rho for any
    remaining cofactor, so single large moduli stay tractable.
    """
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in [1, 2**63 - 1], got {n}")
    m = n
    factors: list[tuple[int, int]] = []
    d = 2
    while d <= _TRIAL_LIMIT and d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        if d * d > m:
            factors.append((m, 1))
        else:
            big: dict[int, int] = {}
            _factor_into(m, big)
            factors.extend(sorted(big.items()))
    return Factorization(n, tuple(factors))


def classify(f: Factorization) -> Classification:
    """Solvability class of x^2 == -1 modulo f.n, with the odd-part omega."""
    two_exp = 0
    omega = 0
    for p, e in f.factors:
        if p == 2:
            two_exp = e
        elif p % 4 == 3:
            return Classification(CongruenceClass.NO_SOLUTIONS, 0)
        else:
            omega += 1
    if two_exp >= 2:
        return Classification(CongruenceClass.NO_SOLUTIONS, 0)
    if two_exp == 1:
        return Classification(CongruenceClass.TWICE_ODD, omega)
    return Classification(CongruenceClass.ODD, omega)


def count_sqrt_minus_one(q: int) -> int:
    """Number of p in [1, q) with p*p == -1 (mod q); returns 1 for q = 1."""
    c = classify(factorize(q))
    if c.kind is CongruenceClass.NO_SOLUTIONS:
        return 0
    return 1 << c.omega


def sqrt_minus_one_brute(q: int) -> list[int]:
    """Exhaustive-scan oracle: all p in [1, q) with p*p + 1 == 0 (mod q), sorted.

    Definitional and independent of the classification above.  Returns [] for
    q = 1 (the count convention there is handled by the caller).  Uses a
    chunked int64 scan while (q-1)**2 fits, otherwise exact Python integers.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if q == 1:
        return []
    out: list[int] = []
    if q <= _SCAN_LIMIT:
        for lo in range(1, q, _SCAN_CHUNK):
            p = np.arange(lo, min(lo + _SCAN_CHUNK, q), dtype=np.int64)
            hits = p[(p * p + 1) % q == 0]
            out.extend(int(v) for v in hits)
    else:
        out.extend(p for p in range(1, q) if (p * p + 1) % q == 0)
    return out


def sqrt_minus_one_mod_prime(p: int) -> tuple[int, int]:
    """The two square roots of -1 modulo a prime p == 1 (mod 4), smaller first.

    Computed as a**((p-1)/4) for the smallest quadratic non-residue a; the
    result is verified before returning.
    """
    if p % 4 != 1:
        raise ValueError(f"p must be 1 (mod 4), got {p}")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    a = 2
    while pow(a, (p - 1) // 2, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    if x * x % p != p - 1:
        raise ArithmeticError(f"root verification failed for p = {p}")
    return (x, p - x) if x < p - x else (p - x, x)


def hensel_lift(x0: int, p: int, j: int) -> int:
    """Lift a root of x^2 == -1 (mod p**j) to the unique root mod p**(j+1)
    congruent to x0 (mod p**j).

    Writes x1 = x0 + p**j * y0 where y0 solves
    2*x0*y0 == -(x0**2 + 1)/p**j (mod p), which is uniquely solvable since
    gcd(2*x0, p) = 1 for odd p.
    """
    if j < 1:
        raise ValueError("j must be at least 1")
    pj = p**j
    x0 %= pj
    if (x0 * x0 + 1) % pj != 0:
        raise ValueError(f"{x0}^2 + 1 is not divisible by {p}^{j}")
    t = (x0 * x0 + 1) // pj
    y0 = (-t * pow(2 * x0 % p, -1, p)) % p
    x1 = x0 + pj * y0
    assert (x1 * x1 + 1) % (pj * p) == 0
    return x1


def sqrt_minus_one_crt(q: int | Factorization) -> list[int]:
    """All solutions of x^2 == -1 (mod q) assembled from prime-power roots.

    Each odd prime power contributes a pair {r, p**e - r} (base root lifted
    through the exponent); a single factor of 2 pins the residue 1 mod 2.
    Sign choices are combined by the Chinese Remainder Theorem in
    lexicographic order and the result is sorted.  Rejects moduli with no
    solutions and q < 2.
    """
    f = q if isinstance(q, Factorization) else factorize(q)
    c = classify(f)
    if c.kind is CongruenceClass.NO_SOLUTIONS:
        raise ValueError(f"x^2 == -1 (mod {f.n}) has no solutions")
    if f.n < 2:
        raise ValueError("q must be at least 2")
    systems: list[tuple[int, tuple[int, ...]]] = []
    for p, e in f.factors:
        if p == 2:
            systems.append((2, (1,)))
        else:
            r = sqrt_minus_one_mod_prime(p)[0]
            for j in range(1, e):
                r = hensel_lift(r, p, j)
            pe = p**e
            systems.append((pe, (r, pe - r)))
    sols = []
    for combo in itertools.product(*(roots for _, roots in systems)):
        x, m = 0, 1
        for (mod_i, _), r_i in zip(systems, combo):
            x += m * ((r_i - x) * pow(m, -1, mod_i) % mod_i)
            m *= mod_i
        sols.append(x)
    return sorted(sols)
