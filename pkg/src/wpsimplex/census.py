"""Enumeration experiments over all Delta(1,q) of a fixed normalized volume.

V(M) is the set of simplices with N(q) = M, one per partition of M - 1, and
un(M) the fraction of them with unimodal h*.  The sweep over V(M) is exact
(every partition) or sampled (exactly uniform random partitions, seeded and
reproducible).  A second experiment counts, over every support vector r
that is a distinct-part partition of some M <= M_max with some r_j not
dividing r_d, how many IDP reflexive vectors that support carries; the
multiplicity-bound box makes each such search finite.

Sharding: the per-partition kernel is pure and the aggregation is counter
addition, so exact sweeps can fan partitions out to worker processes and
merge in any order with bit-identical results.  Sampled runs are sequential
by construction (one seeded stream).

Records carry mode, seed and package version so emitted tables are
auditable; values for volumes beyond exhaustive reach are estimates with
binomial confidence intervals, never claimed exact.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby, product
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from ._version import __version__
from .idp import is_idp, satisfies_necessary_condition
from .weights import SupportForm

__all__ = [
    "CensusRecord",
    "IdpCensusRecord",
    "enumerate_partitions",
    "partition_count",
    "random_partition",
    "un_exact",
    "un_sampled",
    "idp_census",
    "idp_reflexives_on_support",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ["M", "count", "unimodal_count", "un_fraction", "mode", "seed", "ms"]

# numpy int64 is safe while max_part * (N-1) stays well below 2^63
_NUMPY_SAFE = 2**62


def enumerate_partitions(total: int, distinct_only: bool = False) -> Iterator[tuple[int, ...]]:
    """All partitions of ``total`` as weakly increasing tuples.

    Yielded exactly once each, in ascending lexicographic order on the
    sorted tuples; ``distinct_only`` restricts to strictly increasing parts.
    """
    if total < 1:
        raise ValueError("total must be >= 1")

    def rec(remaining: int, min_part: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min_part, remaining + 1):
            nxt = part + 1 if distinct_only else part
            for rest in rec(remaining - part, nxt):
                yield (part,) + rest

    return rec(total, 1)


def _count_table(total: int) -> list[list[int]]:
    """table[n][k] = number of partitions of n into parts <= k (exact ints)."""
    table = [[0] * (total + 1) for _ in range(total + 1)]
    table[0] = [1] * (total + 1)
    for n in range(1, total + 1):
        row = table[n]
        for k in range(1, total + 1):
            row[k] = row[k - 1] + (table[n - k][k] if k <= n else 0)
    return table


_TABLE_CACHE: dict[int, list[list[int]]] = {}


def _counts(total: int) -> list[list[int]]:
    best = max((t for t in _TABLE_CACHE if t >= total), default=None)
    if best is not None:
        return _TABLE_CACHE[best]
    if len(_TABLE_CACHE) > 4:
        _TABLE_CACHE.clear()
    table = _count_table(total)
    _TABLE_CACHE[total] = table
    return table


def partition_count(n: int) -> int:
    """p(n); p(0) = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    return _counts(n)[n][n]


def random_partition(total: int, rng: random.Random) -> tuple[int, ...]:
    """Exactly uniform random partition of ``total``.

    Walks the count recurrence table[n][k] = table[n][k-1] + table[n-k][k],
    choosing at each state whether a part of size k occurs with probability
    proportional to the exact counts.  No rejection, fully seed-driven.
    """
    if total < 1:
        raise ValueError("total must be >= 1")
    table = _counts(total)
    parts: list[int] = []
    n, k = total, total
    while n > 0:
        draw = rng.randrange(table[n][min(k, len(table[n]) - 1)])
        if draw < table[n - k][k] if k <= n else False:
            parts.append(k)
            n -= k
        else:
            k -= 1
    return tuple(sorted(parts))


def _grouped(parts: tuple[int, ...]) -> list[tuple[int, int]]:
    return [(value, sum(1 for _ in run)) for value, run in groupby(parts)]


def _hstar_counts_py(pairs: list[tuple[int, int]], volume: int) -> list[int]:
    counts = [0] * (sum(x for _, x in pairs) + 1)
    for b in range(volume):
        w = b
        for r, x in pairs:
            w -= x * (r * b // volume)
        counts[w] += 1
    return counts


def _hstar_counts_np(pairs: list[tuple[int, int]], volume: int) -> list[int]:
    b = np.arange(volume, dtype=np.int64)
    w = b.copy()
    for r, x in pairs:
        w -= x * ((r * b) // volume)
    return np.bincount(w, minlength=sum(x for _, x in pairs) + 1).tolist()


def hstar_counts(parts: tuple[int, ...], volume: int) -> list[int]:
    """h* coefficients of the partition ``parts`` (with N = volume), exact."""
    pairs = _grouped(parts)
    if parts and parts[-1] * volume < _NUMPY_SAFE and volume > 16:
        return _hstar_counts_np(pairs, volume)
    return _hstar_counts_py(pairs, volume)


def _is_unimodal(counts: list[int]) -> bool:
    descending = False
    prev = counts[0]
    for cur in counts[1:]:
        if cur < prev:
            descending = True
        elif cur > prev and descending:
            return False
        prev = cur
    return True


@dataclass(frozen=True)
class CensusRecord:
    """Per-volume aggregate of the unimodality census.

    ``count_idp`` counts simplices that are reflexive and IDP (the IDP test
    is only defined on reflexive inputs).  ``un_fraction`` is exact as a
    Fraction; the CSV/JSON emitters render its decimal value.
    """

    M: int
    count_simplices: int
    count_unimodal: int
    count_reflexive: int
    count_idp: int
    un_fraction: Fraction
    mode: str
    sample_size: Optional[int]
    seed: Optional[int]
    ci_halfwidth: Optional[float]
    wall_time_ms: int
    version: str

    @property
    def un_decimal(self) -> float:
        return float(self.un_fraction)

    def csv_row(self) -> list:
        return [self.M, self.count_simplices, self.count_unimodal,
                repr(self.un_decimal), self.mode,
                "" if self.seed is None else self.seed, self.wall_time_ms]

    def json_dict(self) -> dict:
        return {
            "M": self.M,
            "count": self.count_simplices,
            "unimodal_count": self.count_unimodal,
            "reflexive_count": self.count_reflexive,
            "idp_count": self.count_idp,
            "un_fraction": self.un_decimal,
            "un_exact": [self.un_fraction.numerator, self.un_fraction.denominator],
            "mode": self.mode,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "ci_halfwidth": self.ci_halfwidth,
            "ms": self.wall_time_ms,
            "version": self.version,
        }


def _measure(parts: tuple[int, ...], volume: int) -> tuple[bool, bool, bool]:
    """(unimodal, reflexive, idp) for one partition."""
    counts = hstar_counts(parts, volume)
    unimodal = _is_unimodal(counts)
    reflexive = all(volume % r == 0 for r, _ in _grouped(parts))
    idp = False
    if reflexive:
        sf = SupportForm(*zip(*_grouped(parts)))
        idp = bool(is_idp(sf).idp)
    return unimodal, reflexive, idp


def _census_chunk(arg: tuple[list[tuple[int, ...]], int]) -> tuple[int, int, int, int]:
    chunk, volume = arg
    unimodal = reflexive = idp = 0
    for parts in chunk:
        u, r, i = _measure(parts, volume)
        unimodal += u
        reflexive += r
        idp += i
    return len(chunk), unimodal, reflexive, idp


def _chunks(iterator, size):
    chunk = []
    for item in iterator:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def un_exact(M: int, *, workers: int = 1) -> CensusRecord:
    """Exact un(M): sweep every partition of M - 1.

    With ``workers > 1`` the partition stream is sharded over a process
    pool; the counters add commutatively, so the result is independent of
    scheduling.
    """
    if M < 2:
        raise ValueError("M must be >= 2")
    start = time.perf_counter()
    total = unimodal = reflexive = idp = 0
    stream = enumerate_partitions(M - 1)
    if workers > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            jobs = ((chunk, M) for chunk in _chunks(stream, 1024))
            for n, u, r, i in pool.imap_unordered(_census_chunk, jobs):
                total += n
                unimodal += u
                reflexive += r
                idp += i
    else:
        for parts in stream:
            u, r, i = _measure(parts, M)
            total += 1
            unimodal += u
            reflexive += r
            idp += i
    ms = int((time.perf_counter() - start) * 1000)
    return CensusRecord(M=M, count_simplices=total, count_unimodal=unimodal,
                        count_reflexive=reflexive, count_idp=idp,
                        un_fraction=Fraction(unimodal, total), mode="exact",
                        sample_size=None, seed=None, ci_halfwidth=None,
                        wall_time_ms=ms, version=__version__)


def un_sampled(M: int, sample_size: int, seed: int) -> CensusRecord:
    """Sampled un(M) from exactly uniform random partitions of M - 1.

    The record carries the sample fraction and a 95% binomial confidence
    half-width (normal approximation, 1.96 * sqrt(p(1-p)/n)).  Identical
    (M, sample_size, seed) always reproduce the identical record.
    """
    if M < 2:
        raise ValueError("M must be >= 2")
    if sample_size < 1:
        raise ValueError("sample_size must be >= 1")
    start = time.perf_counter()
    rng = random.Random(seed)
    unimodal = reflexive = idp = 0
    for _ in range(sample_size):
        parts = random_partition(M - 1, rng)
        u, r, i = _measure(parts, M)
        unimodal += u
        reflexive += r
        idp += i
    frac = Fraction(unimodal, sample_size)
    p = unimodal / sample_size
    ci = 1.96 * math.sqrt(p * (1.0 - p) / sample_size)
    ms = int((time.perf_counter() - start) * 1000)
    return CensusRecord(M=M, count_simplices=sample_size, count_unimodal=unimodal,
                        count_reflexive=reflexive, count_idp=idp,
                        un_fraction=frac, mode="sampled", sample_size=sample_size,
                        seed=seed, ci_halfwidth=ci, wall_time_ms=ms,
                        version=__version__)


# ---------------------------------------------------------------------------
# IDP census over qualifying support vectors


def _box_bounds(r: tuple[int, ...]) -> Optional[tuple[list[int], int]]:
    """Multiplicity box for a strictly increasing support with some r_j
    not dividing r_d; None when no such j exists (support not qualifying)."""
    d = len(r)
    if d < 2:
        return None
    top = r[-1]
    limits = [r[j] // (top % r[j]) for j in range(d - 1) if top % r[j]]
    if not limits:
        return None
    prefix = [r[i + 1] // r[i] for i in range(d - 1)]
    return prefix, min(limits)


def idp_reflexives_on_support(r: tuple[int, ...]) -> list[SupportForm]:
    """All IDP reflexive multiplicity vectors over a qualifying support.

    Candidates range over the multiplicity-bound box; the last multiplicity
    is solved from the reflexivity congruence instead of scanned, and
    supports whose lcm exceeds the largest reachable volume are dismissed
    outright.  Completeness rests on the bound theorem: every IDP reflexive
    over r lies inside the box.
    """
    box = _box_bounds(r)
    if box is None:
        return []
    prefix, last_bound = box
    if last_bound < 1:
        return []
    lcm = math.lcm(*r)
    max_volume = 1 + sum(b * ri for b, ri in zip(prefix, r[:-1])) + last_bound * r[-1]
    if lcm > max_volume:
        return []
    top = r[-1]
    g = math.gcd(top, lcm)
    step = lcm // g
    inv = pow(top // g, -1, step) if step > 1 else 0
    found = []
    for xs in product(*(range(1, b + 1) for b in prefix)):
        base = 1 + sum(x * ri for x, ri in zip(xs, r[:-1]))
        rhs = (-base) % lcm
        if rhs % g:
            continue
        x0 = (rhs // g) * inv % step if step > 1 else 1
        if x0 == 0:
            x0 = step
        for xd in range(x0, last_bound + 1, step):
            sf = SupportForm(r, xs + (xd,))
            if not satisfies_necessary_condition(sf)[0]:
                continue
            if is_idp(sf).idp:
                found.append(sf)
    return found


@dataclass(frozen=True)
class IdpCensusRecord:
    """Totals of the qualifying-support census up to M_max."""

    m_max: int
    count_r_vectors: int
    count_idp_reflexives: int
    per_m: dict[int, tuple[int, int]]
    wall_time_ms: int
    version: str

    def json_dict(self) -> dict:
        return {
            "m_max": self.m_max,
            "count_r_vectors": self.count_r_vectors,
            "count_idp_reflexives": self.count_idp_reflexives,
            "per_m": {str(m): list(v) for m, v in sorted(self.per_m.items())},
            "ms": self.wall_time_ms,
            "version": self.version,
        }


def _census_m(M: int) -> tuple[int, int]:
    """(qualifying r-vectors, IDP reflexives they support) for one volume M."""
    r_count = 0
    idp_count = 0
    for r in enumerate_partitions(M, distinct_only=True):
        if _box_bounds(r) is None:
            continue
        r_count += 1
        idp_count += len(idp_reflexives_on_support(r))
    return r_count, idp_count


def idp_census(M_max: int, *, checkpoint_dir: Optional[str] = None,
               progress=None) -> IdpCensusRecord:
    """Census of supports that are distinct-part partitions of M <= M_max
    with some part not dividing the largest.

    Long runs checkpoint after every completed M (one JSON state file in
    ``checkpoint_dir``) and resume from it transparently.
    """
    if M_max < 3:
        raise ValueError("M_max must be >= 3")
    start = time.perf_counter()
    per_m: dict[int, tuple[int, int]] = {}
    state_path = None
    if checkpoint_dir is not None:
        state_path = Path(checkpoint_dir) / f"idp_census_{M_max}.json"
        if state_path.exists():
            loaded = json.loads(state_path.read_text())
            per_m = {int(k): tuple(v) for k, v in loaded.get("per_m", {}).items()}
    for M in range(3, M_max + 1):
        if M in per_m:
            continue
        per_m[M] = _census_m(M)
        if state_path is not None:
            state_path.parent.mkdir(parents=True, exist_ok=True)
            state_path.write_text(json.dumps(
                {"per_m": {str(k): list(v) for k, v in per_m.items()}}))
        if progress is not None:
            progress(M, per_m[M])
    ms = int((time.perf_counter() - start) * 1000)
    return IdpCensusRecord(
        m_max=M_max,
        count_r_vectors=sum(v[0] for v in per_m.values()),
        count_idp_reflexives=sum(v[1] for v in per_m.values()),
        per_m=per_m,
        wall_time_ms=ms,
        version=__version__,
    )
