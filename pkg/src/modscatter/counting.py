"""Sieves and counting functions for the congruence x^2 == -1 and the
scattering family, with their first-order growth laws.

A single smallest-prime pass per segment produces, for every q up to the
limit, the totient phi(q) and the solution count of x^2 == -1 (mod q)
(classified through the odd part of q).  Prefix sums then give

  total roots   T(x)  = sum_{q <= x} roots(q)          ~ 3x/(2*pi)
  odd share     t(x)  = same sum over odd q            ~ x/pi
  members       M(x)  = sum_{q <= x} (phi(q)+roots(q))/2  ~ 3x^2/(2*pi^2)

and the geodesic count by sojourn bound, Pi(Y) = M(floor(sqrt(Y)/t0)),
grows like 3Y/(2*pi^2*t0^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

DEFAULT_LIMIT_CAP = 50_000_000
_SEGMENT = 1 << 22


class MemoryBudgetExceeded(ValueError):
    """Requested table is larger than the configured memory budget."""


@dataclass(frozen=True)
class CountTable:
    """Per-q arrays (index = q, entry 0 unused) plus exact prefix sums."""

    limit: int
    phi: np.ndarray            # int32: Euler totient
    roots: np.ndarray          # uint8: solutions of p^2 == -1 (mod q), with roots[1] = 1
    roots_cum: np.ndarray      # int64: cumulative roots
    odd_roots_cum: np.ndarray  # int64: cumulative roots over odd q only
    members_cum: np.ndarray    # int64: cumulative (phi + roots) / 2


def _small_primes(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


def _phi_roots_segment(lo: int, hi: int, primes: list[int]):
    """phi and root-count arrays for the values lo, lo+1, ..., hi-1.

    `primes` must cover every prime up to sqrt(hi - 1).  Only slice
    operations touch the arrays: one pass per prime for phi and the residue
    classification, one pass per prime power to strip factors off `rem`.
    """
    n = hi - lo
    phi = np.arange(lo, hi, dtype=np.int64)
    rem = phi.copy()
    ok = np.ones(n, dtype=bool)
    omega = np.zeros(n, dtype=np.uint8)
    first4 = -(-lo // 4) * 4
    if first4 < hi:
        ok[first4 - lo :: 4] = False  # multiples of 4 never admit a root
    for p in primes:
        first = -(-lo // p) * p
        if first >= hi:
            continue
        sl = slice(first - lo, n, p)
        phi[sl] -= phi[sl] // p
        if p % 4 == 1:
            omega[sl] += 1
        elif p % 4 == 3:
            ok[sl] = False
        pk = p
        while pk < hi:
            fk = -(-lo // pk) * pk
            if fk < hi:
                rem[fk - lo :: pk] //= p
            pk *= p
    big = rem > 1  # leftover cofactors are primes above sqrt(hi - 1)
    if big.any():
        r = rem[big]
        phi[big] = phi[big] // r * (r - 1)
        idx = np.nonzero(big)[0]
        r4 = r & 3
        ok[idx[r4 == 3]] = False
        omega[idx[r4 == 1]] += 1
    roots = np.zeros(n, dtype=np.uint8)
    roots[ok] = np.left_shift(1, omega[ok].astype(np.int64)).astype(np.uint8)
    if lo == 0:
        phi[0] = 0
        roots[0] = 0
    return phi, roots


def sieve_tables(limit: int, limit_cap: int = DEFAULT_LIMIT_CAP) -> CountTable:
    """Materialized count table for all q <= limit.

    Rejects limits above `limit_cap` (the stored arrays cost 29 bytes per
    entry); use checkpoint_sums for isolated large evaluation points.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    if limit > limit_cap:
        raise MemoryBudgetExceeded(
            f"limit {limit} exceeds the table budget of {limit_cap} entries"
        )
    primes = _small_primes(math.isqrt(limit))
    size = limit + 1
    phi = np.zeros(size, dtype=np.int32)
    roots = np.zeros(size, dtype=np.uint8)
    roots_cum = np.zeros(size, dtype=np.int64)
    odd_roots_cum = np.zeros(size, dtype=np.int64)
    members_cum = np.zeros(size, dtype=np.int64)
    run_phi = run_roots = run_odd = 0
    for lo in range(0, size, _SEGMENT):
        hi = min(lo + _SEGMENT, size)
        ph, rt = _phi_roots_segment(lo, hi, primes)
        phi[lo:hi] = ph
        roots[lo:hi] = rt
        c_phi = np.cumsum(ph, dtype=np.int64) + run_phi
        c_roots = np.cumsum(rt, dtype=np.int64) + run_roots
        odd = rt.astype(np.int64)
        odd[lo % 2 :: 2] = 0  # zero the even-q slots
        c_odd = np.cumsum(odd) + run_odd
        roots_cum[lo:hi] = c_roots
        odd_roots_cum[lo:hi] = c_odd
        members_cum[lo:hi] = (c_phi + c_roots) >> 1  # phi + roots is even termwise
        run_phi, run_roots, run_odd = int(c_phi[-1]), int(c_roots[-1]), int(c_odd[-1])
    return CountTable(limit, phi, roots, roots_cum, odd_roots_cum, members_cum)


def checkpoint_sums(points: Iterable[int]) -> dict[int, tuple[int, int, int]]:
    """(total roots, odd-q roots, members) at each requested x, streamed
    segment by segment so memory stays bounded regardless of max(points)."""
    want = sorted({int(x) for x in points})
    if not want:
        return {}
    if want[0] < 0:
        raise ValueError("points must be nonnegative")
    top = want[-1]
    primes = _small_primes(math.isqrt(top)) if top >= 1 else []
    out: dict[int, tuple[int, int, int]] = {}
    run_phi = run_roots = run_odd = 0
    pending = iter(want)
    nxt = next(pending)
    for lo in range(0, top + 1, _SEGMENT):
        hi = min(lo + _SEGMENT, top + 1)
        ph, rt = _phi_roots_segment(lo, hi, primes)
        c_phi = np.cumsum(ph, dtype=np.int64) + run_phi
        c_roots = np.cumsum(rt, dtype=np.int64) + run_roots
        odd = rt.astype(np.int64)
        odd[lo % 2 :: 2] = 0
        c_odd = np.cumsum(odd) + run_odd
        while nxt is not None and nxt < hi:
            k = nxt - lo
            out[nxt] = (
                int(c_roots[k]),
                int(c_odd[k]),
                int((c_phi[k] + c_roots[k]) >> 1),
            )
            nxt = next(pending, None)
        run_phi, run_roots, run_odd = int(c_phi[-1]), int(c_roots[-1]), int(c_odd[-1])
        if nxt is None:
            break
    return out


def _floor_index(x: float, table: CountTable) -> int:
    ix = math.floor(x)
    if ix > table.limit:
        raise ValueError(f"x = {x} exceeds the table limit {table.limit}")
    return max(ix, 0)


def total_roots(x: float, table: CountTable) -> int:
    """Sum of the root counts of x^2 == -1 over all moduli q <= x."""
    return int(table.roots_cum[_floor_index(x, table)])


def odd_modulus_roots(x: float, table: CountTable) -> int:
    """Same sum restricted to odd moduli.  Satisfies, exactly,
    total_roots(x) == odd_modulus_roots(x) + odd_modulus_roots(x/2)."""
    return int(table.odd_roots_cum[_floor_index(x, table)])


def total_members(x: float, table: CountTable) -> int:
    """Number of scattering fractions with denominator at most x."""
    return int(table.members_cum[_floor_index(x, table)])


def sojourn_threshold(Y: float, t0: float) -> int:
    """Largest q >= 0 with (q*t0)**2 <= Y, found by adjusting an initial
    floating guess so perfect-square thresholds land exactly."""
    if t0 <= 1:
        raise ValueError(f"t0 must exceed 1, got {t0}")
    if Y <= 0:
        return 0
    k = max(int(math.sqrt(Y) / t0), 0)
    while ((k + 1) * t0) ** 2 <= Y:
        k += 1
    while k > 0 and (k * t0) ** 2 > Y:
        k -= 1
    return k


def count_geodesics(Y: float, t0: float, table: CountTable) -> int:
    """Number of scattering geodesics whose sojourn time is at most log(Y),
    i.e. of fractions p/q with (q*t0)**2 <= Y."""
    k = sojourn_threshold(Y, t0)
    if k > table.limit:
        raise ValueError(f"threshold {k} exceeds the table limit {table.limit}")
    return int(table.members_cum[k])


def roots_sum_in_bounds(x: float, table: CountTable) -> bool:
    """Whether 2*floor(sqrt(x-1)) - 1 <= total_roots(x) <= (2/3)*(x+1)**1.5.

    Both inequalities hold for every x >= 5; this evaluates them at one x.
    """
    if x < 5:
        raise ValueError("bounds are asserted for x >= 5 only")
    s = total_roots(x, table)
    lower = 2 * math.isqrt(math.floor(x) - 1) - 1
    upper = (2.0 / 3.0) * (x + 1.0) ** 1.5
    return lower <= s <= upper


_KINDS = ("S", "tau", "psi", "pi")


def main_term(kind: str, x: float, t0: float | None = None) -> float:
    """First-order growth law for one counting function at x (Y for pi)."""
    if kind == "S":
        return 3.0 * x / (2.0 * math.pi)
    if kind == "tau":
        return x / math.pi
    if kind == "psi":
        return 3.0 * x * x / (2.0 * math.pi**2)
    if kind == "pi":
        if t0 is None:
            raise ValueError("kind 'pi' needs t0")
        return 3.0 * x / (2.0 * (math.pi * t0) ** 2)
    raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")


@dataclass(frozen=True)
class AsymptoticReport:
    kind: str
    x: float
    exact: int
    predicted: float

    @property
    def ratio(self) -> float:
        return self.exact / self.predicted

    @property
    def abs_error(self) -> float:
        return abs(self.exact - self.predicted)


def asymptotic_report(
    kind: str, x: float, table: CountTable, t0: float | None = None
) -> AsymptoticReport:
    """Exact count next to its predicted main term at the point x (Y for pi)."""
    if kind == "S":
        exact = total_roots(x, table)
    elif kind == "tau":
        exact = odd_modulus_roots(x, table)
    elif kind == "psi":
        exact = total_members(x, table)
    elif kind == "pi":
        if t0 is None:
            raise ValueError("kind 'pi' needs t0")
        exact = count_geodesics(x, t0, table)
    else:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    return AsymptoticReport(kind, x, exact, main_term(kind, x, t0))
