"""Exhaustive re-verification of the ample-stability criterion on loop and
generalized Kronecker quivers.

For m-Kronecker quivers the scan normalizes each dimension vector into the
window d1 <= d2 <= (m/2) d1 using source/sink reflections and dualization,
skips vectors whose reduced coprime part (p, q) has m p q - p^2 - q^2 < 0
(empty or zero-dimensional moduli), and runs the criterion with theta = (1, 0)
on the normalized vector. Exceptions are recorded by normalized vector and
deduplicated, since many grid cells share one normalized representative.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .quiver import kronecker_quiver, loop_quiver
from .stability import check_ample_stability_criterion

Pair = tuple[int, int]


@dataclass(frozen=True)
class KroneckerInstance:
    """An m-Kronecker dimension vector with its coprime reduction (n p, n q)."""

    m: int
    d: Pair

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if len(self.d) != 2 or any(x < 0 for x in self.d) or self.d == (0, 0):
            raise ValueError("d must be a nonzero pair of nonnegative integers")

    @property
    def n(self) -> int:
        return math.gcd(*self.d)

    @property
    def pq(self) -> Pair:
        n = self.n
        return (self.d[0] // n, self.d[1] // n)

    @property
    def is_normalized(self) -> bool:
        d1, d2 = self.d
        return 0 < d1 <= d2 and 2 * d2 <= self.m * d1


def kronecker_reflect_source(m: int, d: Sequence[int]) -> Pair:
    """(d1, d2) -> (m d2 - d1, d2). Errors if the image leaves the nonnegative cone."""
    d1, d2 = (int(x) for x in d)
    if m * d2 - d1 < 0:
        raise ValueError(f"source reflection of {tuple(d)} has a negative entry")
    return (m * d2 - d1, d2)


def kronecker_reflect_sink(m: int, d: Sequence[int]) -> Pair:
    """(d1, d2) -> (d1, m d1 - d2). Errors if the image leaves the nonnegative cone."""
    d1, d2 = (int(x) for x in d)
    if m * d1 - d2 < 0:
        raise ValueError(f"sink reflection of {tuple(d)} has a negative entry")
    return (d1, m * d1 - d2)


def kronecker_dualize(d: Sequence[int]) -> Pair:
    d1, d2 = (int(x) for x in d)
    return (d2, d1)


@dataclass(frozen=True)
class NormalizationResult:
    normalized: Optional[Pair]  # None on a degenerate orbit
    moves: tuple[str, ...]

    @property
    def degenerate(self) -> bool:
        return self.normalized is None


def normalize_kronecker(m: int, d: Sequence[int]) -> NormalizationResult:
    """Drive d into the window d1 <= d2 <= (m/2) d1 by dualize / sink reflections.

    Orbits that hit a zero entry, would leave the nonnegative cone, or revisit a
    state are flagged degenerate; this covers real-root vectors and small cases.
    """
    if m < 3:
        raise ValueError("normalization window needs m >= 3")
    cur: Pair = (int(d[0]), int(d[1]))
    if any(x < 0 for x in cur):
        raise ValueError("d must be nonnegative")
    moves: list[str] = []
    seen = set()
    while True:
        if cur[0] == 0 or cur[1] == 0 or cur in seen:
            return NormalizationResult(None, tuple(moves))
        seen.add(cur)
        if cur[0] > cur[1]:
            cur = kronecker_dualize(cur)
            moves.append("dualize")
            continue
        if 2 * cur[1] <= m * cur[0]:
            return NormalizationResult(cur, tuple(moves))
        nxt = m * cur[0] - cur[1]
        if nxt < 0:
            return NormalizationResult(None, tuple(moves))
        cur = (cur[0], nxt)
        moves.append("sink")


@dataclass(frozen=True)
class ScanResult:
    exceptions: tuple  # loop: (m, d) ints; kronecker: (m, (d1, d2))
    scanned: int
    elapsed: float


def _resolve_workers(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("QUIVERMOD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _loop_chunk(args: tuple[int, tuple[int, ...]]) -> list[tuple[int, int]]:
    m, ds = args
    q = loop_quiver(m)
    bad = []
    for d in ds:
        report = check_ample_stability_criterion(q, (0,), (d,))
        if not report.verdict:
            bad.append((m, d))
    return bad


def loop_criterion_exceptions(
    m_range: Sequence[int], d_range: Sequence[int], workers: Optional[int] = None
) -> ScanResult:
    """Run the criterion on every loop quiver cell; slope is constant on one
    vertex so every proper decomposition qualifies and theta is irrelevant."""
    ms = sorted(set(int(m) for m in m_range))
    ds = tuple(sorted(set(int(d) for d in d_range)))
    if any(m < 2 for m in ms):
        raise ValueError("loop scan needs m >= 2")
    if any(d < 2 for d in ds):
        raise ValueError("loop scan needs d >= 2 (d = 1 passes vacuously)")
    t0 = time.perf_counter()
    tasks = [(m, ds) for m in ms]
    nworkers = _resolve_workers(workers)
    if nworkers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(nworkers, len(tasks))) as pool:
            chunks = list(pool.map(_loop_chunk, tasks))
    else:
        chunks = [_loop_chunk(t) for t in tasks]
    exceptions = sorted(set(x for chunk in chunks for x in chunk))
    return ScanResult(tuple(exceptions), len(ms) * len(ds), time.perf_counter() - t0)


def _kronecker_chunk(args: tuple[int, tuple[Pair, ...]]) -> list[tuple[int, Pair]]:
    m, cells = args
    q = kronecker_quiver(m)
    bad = []
    for cell in cells:
        n = math.gcd(*cell)
        p, qq = cell[0] // n, cell[1] // n
        if m * p * qq - p * p - qq * qq < 0:
            continue  # stable moduli empty or a single point
        norm = normalize_kronecker(m, cell)
        if norm.degenerate:
            continue
        report = check_ample_stability_criterion(q, (1, 0), norm.normalized)
        if not report.verdict:
            bad.append((m, norm.normalized))
    return bad


def kronecker_criterion_exceptions(
    m_range: Sequence[int],
    box: Sequence[Pair],
    workers: Optional[int] = None,
) -> ScanResult:
    """Scan (m, cell) pairs; criterion failures are keyed by normalized vector."""
    ms = sorted(set(int(m) for m in m_range))
    if any(m < 3 for m in ms):
        raise ValueError("kronecker scan needs m >= 3")
    cells = tuple(sorted(set((int(a), int(b)) for a, b in box)))
    if any(a < 1 or b < 1 for a, b in cells):
        raise ValueError("box cells must have positive entries")
    t0 = time.perf_counter()
    tasks = [(m, cells) for m in ms]
    nworkers = _resolve_workers(workers)
    if nworkers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(nworkers, len(tasks))) as pool:
            chunks = list(pool.map(_kronecker_chunk, tasks))
    else:
        chunks = [_kronecker_chunk(t) for t in tasks]
    exceptions = sorted(set(x for chunk in chunks for x in chunk))
    return ScanResult(tuple(exceptions), len(ms) * len(cells), time.perf_counter() - t0)


def grid_box(d1_max: int, d2_max: int) -> list[Pair]:
    """[1, d1_max] x [1, d2_max] as a list of cells."""
    return [(a, b) for a in range(1, d1_max + 1) for b in range(1, d2_max + 1)]


@dataclass(frozen=True)
class KroneckerTrace:
    """Audit record for one decomposition (a, b) + (c, dd) of a normalized (n p, n q).

    k = p dd + q a - n p q is nonnegative exactly when slope((a,b)) >= slope((c,dd)).
    The bound p q >= (m p q - p^2 - q^2) a dd + (p a + q dd) k holds exactly when
    <(a,b),(c,dd)> >= -1, i.e. when the decomposition violates the criterion margin.
    For m = 3 the equality n a p + n dd q = a^2 + dd^2 + 3 a dd - 1 restates
    <(a,b),(c,dd)> = -1.
    """

    m: int
    d: Pair
    n: int
    p: int
    q: int
    a: int
    b: int
    c: int
    dd: int
    k: int
    bound_lhs: int
    bound_rhs: int
    bound_holds: bool
    euler_pairing: int
    slope_holds: bool
    equality_lhs: Optional[int]  # m = 3 only
    equality_rhs: Optional[int]


def kronecker_inequality_trace(m: int, d: Sequence[int], e: Sequence[int]) -> KroneckerTrace:
    inst = KroneckerInstance(m, (int(d[0]), int(d[1])))
    if not inst.is_normalized:
        raise ValueError(f"{inst.d} is not normalized for m = {m}")
    a, b = (int(x) for x in e)
    c, dd = inst.d[0] - a, inst.d[1] - b
    if min(a, b, c, dd) < 0 or (a, b) == (0, 0) or (c, dd) == (0, 0):
        raise ValueError("e must give a proper decomposition of d")
    if a == 0 or dd == 0:
        # a = 0 forces c = 0 under the slope condition (and dually dd = 0 forces b = 0),
        # so these splits carry no information for the audit
        raise ValueError("degenerate split: first entry of e and last entry of f must be positive")
    n = inst.n
    p, q = inst.pq
    k = p * dd + q * a - n * p * q
    lhs = p * q
    rhs = (m * p * q - p * p - q * q) * a * dd + (p * a + q * dd) * k
    pairing = a * c + b * dd - m * a * dd
    eq_l = n * a * p + n * dd * q if m == 3 else None
    eq_r = a * a + dd * dd + 3 * a * dd - 1 if m == 3 else None
    return KroneckerTrace(
        m=m, d=inst.d, n=n, p=p, q=q, a=a, b=b, c=c, dd=dd,
        k=k, bound_lhs=lhs, bound_rhs=rhs, bound_holds=lhs >= rhs,
        euler_pairing=pairing, slope_holds=k >= 0,
        equality_lhs=eq_l, equality_rhs=eq_r,
    )
