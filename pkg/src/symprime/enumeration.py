"""Exact counts and inventories: extreme triples and quadruples, symmetric and
asymmetric primes, the symmetry graph with its cliques, and counterexample
scans for the structural facts about symmetric sequences."""

from __future__ import annotations

import enum
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InvalidArgumentError, RangeError
from .families import TUPLE_FAMILIES, Family, TupleFamily
from .forms import LinearFormSystem
from .primes import DEFAULT_MEM_BUDGET, PrimeSieve, build_sieve, divisors
from .symmetry import (
    SymmetricSequence,
    classify_extreme,
    is_symmetric_pair_lattice,
    is_symmetric_sequence,
    symmetric_partners,
)

COUNT_CHUNK = 1 << 20


@dataclass
class CountResult:
    family: Family
    x: int
    count: int
    elapsed: float  # seconds
    witnesses: list | None = None

    def __post_init__(self):
        if self.witnesses is not None:
            assert len(self.witnesses) == self.count

    def to_dict(self) -> dict:
        out = {"family": self.family.value, "x": self.x, "count": self.count, "elapsed": self.elapsed}
        if self.witnesses is not None:
            out["witnesses"] = [w.primes if isinstance(w, SymmetricSequence) else w for w in self.witnesses]
            out["witnesses"] = [list(w) if isinstance(w, tuple) else w for w in out["witnesses"]]
        return out


def ensure_sieve(
    limit: int,
    sieve: PrimeSieve | None = None,
    threads: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> PrimeSieve:
    """Reuse ``sieve`` when it reaches ``limit``, otherwise build a new one."""
    if sieve is not None and sieve.limit >= limit:
        return sieve
    return build_sieve(max(limit, 2), threads=threads, mem_budget=mem_budget)


def _workers(threads: int | None) -> int:
    return max(1, threads or os.cpu_count() or 1)


def count_form_tuples(
    system: LinearFormSystem,
    kmax: int,
    sieve: PrimeSieve,
    *,
    modulus: int = 1,
    residues: tuple[int, ...] = (0,),
    threads: int | None = None,
    return_ks: bool = False,
    chunk: int = COUNT_CHUNK,
):
    """Count 1 <= k <= kmax (restricted to the given residues mod ``modulus``)
    where every form of ``system`` is prime.

    Returns the count, or ``(count, ks)`` with the sorted qualifying k when
    ``return_ks`` is set. Chunks are summed in a fixed order, so the answer
    does not depend on ``threads``.
    """
    if kmax < 1:
        return (0, np.zeros(0, dtype=np.int64)) if return_ks else 0
    top = max(f(kmax) for f in system.forms)
    if top > sieve.limit:
        raise RangeError(f"forms reach {top} at k = {kmax}, beyond sieve limit {sieve.limit}")

    tasks = []
    for r in sorted(set(x % modulus for x in residues)):
        first = r if r >= 1 else modulus
        n = 0 if first > kmax else (kmax - first) // modulus + 1
        tasks.extend((first, modulus, j, min(j + chunk, n)) for j in range(0, n, chunk))

    def run(task):
        first, step, j0, j1 = task
        ks = first + step * np.arange(j0, j1, dtype=np.int64)
        ok = np.ones(ks.shape, dtype=bool)
        for f in system.forms:
            cand = ks[ok]
            ok[ok] = sieve.lookup_array(f.a * cand + f.b)
        return ks[ok]

    workers = _workers(threads)
    if workers == 1 or len(tasks) <= 1:
        parts = [run(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, tasks))
    count = sum(int(p.size) for p in parts)
    if not return_ks:
        return count
    ks = np.sort(np.concatenate(parts)) if parts else np.zeros(0, dtype=np.int64)
    return count, ks


def _kmax_for(fam: TupleFamily, x: int) -> int:
    first = fam.system.forms[0]
    return (x - first.b) // first.a


def count_family(
    family: Family,
    x: int,
    sieve: PrimeSieve | None = None,
    *,
    witnesses: bool = False,
    threads: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> CountResult:
    """Count primes p <= x that start an extreme sequence of the given shape."""
    family = Family(family)
    if family not in TUPLE_FAMILIES:
        raise InvalidArgumentError(f"{family.value} is not an extreme-tuple family")
    if x < 3:
        raise InvalidArgumentError(f"x must be >= 3, got {x}")
    t0 = time.perf_counter()
    fam = TUPLE_FAMILIES[family]
    sieve = ensure_sieve(2 * x + 1, sieve, threads, mem_budget)
    kmax = _kmax_for(fam, x)
    out = count_form_tuples(
        fam.system,
        kmax,
        sieve,
        modulus=fam.modulus,
        residues=fam.residues,
        threads=threads,
        return_ks=witnesses,
    )
    wit = None
    if witnesses:
        count, ks = out
        wit = [SymmetricSequence(tuple(f(k) for f in fam.system.forms)) for k in ks.tolist()]
    else:
        count = out
    return CountResult(family, x, count, time.perf_counter() - t0, wit)


def count_extreme_half(x: int, sieve: PrimeSieve | None = None, **kw) -> CountResult:
    """Number of primes p <= x with (p, (3p-1)/2, 2p-1) all prime."""
    return count_family(Family.EXTREME_HALF, x, sieve, **kw)


def count_extreme_third(x: int, sieve: PrimeSieve | None = None, **kw) -> CountResult:
    """Number of primes p <= x with (p, (4p-1)/3, 2p-1) all prime."""
    return count_family(Family.EXTREME_THIRD, x, sieve, **kw)


def count_extreme_quadruples(x: int, sieve: PrimeSieve | None = None, **kw) -> CountResult:
    """Number of primes p <= x with (p, (4p-1)/3, (3p-1)/2, 2p-1) all prime."""
    return count_family(Family.EXTREME_QUADRUPLE, x, sieve, **kw)


# -- symmetric / asymmetric primes ------------------------------------------


def symmetric_flags(primes: np.ndarray, sieve: PrimeSieve) -> np.ndarray:
    """For each prime p in ``primes``, whether p has any symmetric partner.

    A partner is p +/- d for a divisor d of p - 1. Every divisor either is at
    most sqrt(p - 1) or has a cofactor that is, so looping t up to
    sqrt(max p - 1) and trying d = t and d = (p - 1)/t reaches all of them.
    """
    primes = np.asarray(primes, dtype=np.int64)
    flags = np.zeros(primes.shape, dtype=bool)
    if primes.size == 0:
        return flags
    if 2 * int(primes.max()) - 1 > sieve.limit:
        raise RangeError(f"partners reach {2 * int(primes.max()) - 1}, beyond sieve limit {sieve.limit}")
    idx = np.arange(primes.size)
    pm1 = primes - 1
    for t in range(1, math.isqrt(int(pm1.max())) + 1):
        if idx.size == 0:
            break
        p = primes[idx]
        sel = (pm1[idx] % t) == 0
        p_sel = p[sel]
        hit = np.zeros(p_sel.shape, dtype=bool)
        for d in (np.full(p_sel.shape, t, dtype=np.int64), (p_sel - 1) // t):
            hit |= sieve.lookup_array(p_sel + d)
            low = p_sel - d
            ok = low >= 2
            hit[ok] |= sieve.lookup_array(low[ok])
        done = idx[sel][hit]
        flags[done] = True
        keep = np.ones(idx.shape, dtype=bool)
        keep[np.flatnonzero(sel)[hit]] = False
        idx = idx[keep]
    return flags


def _symmetric_inventory(x: int, sieve, threads, mem_budget):
    if x < 2:
        raise InvalidArgumentError(f"x must be >= 2, got {x}")
    sieve = ensure_sieve(2 * x, sieve, threads, mem_budget)
    primes = sieve.primes_between(2, x - 1) if x > 2 else np.zeros(0, dtype=np.int64)
    return primes, symmetric_flags(primes, sieve)


def count_symmetric_primes(
    x: int,
    sieve: PrimeSieve | None = None,
    *,
    witnesses: bool = False,
    threads: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> CountResult:
    """Number of primes p < x belonging to at least one symmetric pair."""
    t0 = time.perf_counter()
    primes, flags = _symmetric_inventory(x, sieve, threads, mem_budget)
    wit = primes[flags].tolist() if witnesses else None
    return CountResult(Family.SYMMETRIC_PRIMES, x, int(flags.sum()), time.perf_counter() - t0, wit)


def count_asymmetric_primes(
    x: int,
    sieve: PrimeSieve | None = None,
    *,
    witnesses: bool = False,
    threads: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> CountResult:
    t0 = time.perf_counter()
    primes, flags = _symmetric_inventory(x, sieve, threads, mem_budget)
    wit = primes[~flags].tolist() if witnesses else None
    return CountResult(Family.ASYMMETRIC_PRIMES, x, int((~flags).sum()), time.perf_counter() - t0, wit)


def list_asymmetric_primes(x: int, sieve: PrimeSieve | None = None, **kw) -> list[int]:
    """Primes p < x that belong to no symmetric pair."""
    primes, flags = _symmetric_inventory(x, sieve, kw.get("threads"), kw.get("mem_budget", DEFAULT_MEM_BUDGET))
    return primes[~flags].tolist()


# -- symmetry graph -------------------------------------------------------------


@dataclass
class SymmetryGraph:
    """Primes <= x joined when they form a symmetric pair.

    ``forward[p]`` holds the neighbours q > p, all of which lie in (p, 2p - 1].
    """

    x: int
    vertices: list[int]
    edges: list[tuple[int, int]]
    forward: dict[int, list[int]] = field(repr=False)

    def neighbors(self, p: int) -> list[int]:
        back = [a for a, b in self.edges if b == p]
        return sorted(back + self.forward.get(p, []))

    def degree(self, p: int) -> int:
        return len(self.neighbors(p))

    def edge_rows(self) -> list[tuple[int, int, int]]:
        return [(p, q, q - p) for p, q in self.edges]

    def to_csv(self) -> str:
        lines = ["p,q,gap"] + [f"{p},{q},{g}" for p, q, g in self.edge_rows()]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        """One ``v <prime>`` line per vertex, then one ``e <p> <q> <gap>`` line per edge."""
        lines = [f"# symmetry graph: primes <= {self.x}, {len(self.vertices)} vertices, {len(self.edges)} edges"]
        lines += [f"v {p}" for p in self.vertices]
        lines += [f"e {p} {q} {g}" for p, q, g in self.edge_rows()]
        return "\n".join(lines) + "\n"


def build_symmetry_graph(
    x: int,
    sieve: PrimeSieve | None = None,
    *,
    threads: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> SymmetryGraph:
    """All symmetric pairs p < q <= x. The gap q - p divides p - 1, so edges are
    found by pairing each p with p + d over the divisors d of p - 1."""
    if x < 2:
        raise InvalidArgumentError(f"x must be >= 2, got {x}")
    sieve = ensure_sieve(2 * x, sieve, threads, mem_budget)
    primes = sieve.primes_between(2, x)
    ps, qs = [], []
    pm1 = primes - 1
    for t in range(1, math.isqrt(max(int(pm1.max()), 1)) + 1):
        p = primes[pm1 % t == 0]
        for d in {t: np.full(p.shape, t, dtype=np.int64), "cof": (p - 1) // t}.values():
            q = p + d
            ok = q <= x
            ok[ok] = sieve.lookup_array(q[ok])
            ps.append(p[ok])
            qs.append(q[ok])
    key = np.unique(np.concatenate(ps) * (x + 1) + np.concatenate(qs))
    edges = [(int(k // (x + 1)), int(k % (x + 1))) for k in key]
    forward: dict[int, list[int]] = {}
    for p, q in edges:
        forward.setdefault(p, []).append(q)
    return SymmetryGraph(x, primes.tolist(), edges, forward)


def find_cliques(graph: SymmetryGraph, m: int) -> list[SymmetricSequence]:
    """Every m-clique of ``graph``, ordered by smallest element.

    Cliques grow along forward neighbourhoods, which stay inside [p, 2p - 1]
    for the smallest member p and are tiny in practice. Cost grows with the
    number of edges and quickly with clique density; fine to x around 10^5.
    """
    if m < 3:
        raise InvalidArgumentError("clique size must be >= 3")
    fwd = {p: set(qs) for p, qs in graph.forward.items()}
    out: list[SymmetricSequence] = []

    def extend(clique: list[int], cands: list[int]) -> None:
        if len(clique) == m:
            out.append(SymmetricSequence(tuple(clique)))
            return
        for i, v in enumerate(cands):
            if len(clique) + len(cands) - i < m:
                return
            nxt = fwd.get(v, ())
            extend(clique + [v], [w for w in cands[i + 1 :] if w in nxt])

    for p in graph.vertices:
        cands = graph.forward.get(p, [])
        if len(cands) >= m - 1:
            extend([p], cands)
    return out


# -- counterexample scans ---------------------------------------------------------


class ScanProperty(str, enum.Enum):
    LEMMA1A = "lemma1a"
    LEMMA1B = "lemma1b"
    LEMMA2 = "lemma2"
    THEOREM1 = "theorem1"
    MAXLEN4 = "maxlen4"
    CONGRUENCE_HALF = "congruence-half"
    CONGRUENCE_QUAD = "congruence-quad"
    EQUIVALENCE = "equivalence"


@dataclass
class ScanReport:
    property: ScanProperty
    x: int
    checked: int
    counterexamples: list
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "property": self.property.value,
            "x": self.x,
            "checked": self.checked,
            "counterexample_count": len(self.counterexamples),
            "counterexamples": [list(c) if isinstance(c, tuple) else c for c in self.counterexamples],
            "elapsed": self.elapsed,
        }


def _scan_lemma1(primes, sieve, offsets, need_mod12):
    checked, bad = 0, []
    a, b = offsets
    for p in primes:
        if sieve.lookup(p + a) and sieve.lookup(p + b):
            checked += 1
            triple = (p, p + a, p + b)
            if is_symmetric_sequence(triple) and (not need_mod12 or p % 12 != 1):
                bad.append(triple)
    return checked, bad


def _scan_lemma2(primes, sieve):
    checked, bad = 0, []
    for p in primes:
        for q in symmetric_partners(p, sieve):
            if q > p:
                checked += 1
                if 3 * p - 1 < 2 * q and q < 2 * p - 1:
                    bad.append((p, q))
    return checked, bad


def _extreme_middles(p, sieve):
    """Middles q of extreme triples (p, q, 2p - 1), found from all divisors of p - 1."""
    top = 2 * p - 1
    out = []
    for d in divisors(p - 1):
        q = p + d
        if q < top and sieve.lookup(q) and math.gcd(q - 1, top - 1) == top - q:
            out.append(q)
    return out


def _scan_theorem1(primes, sieve):
    checked, bad = 0, []
    for p in primes:
        if p < 3 or not sieve.lookup(2 * p - 1):
            continue
        middles = _extreme_middles(p, sieve)
        checked += 1
        for q in middles:
            d = q - p
            if 3 * d != p - 1 and 2 * d != p - 1:
                bad.append((p, q, 2 * p - 1))
        claimed = sorted(s.primes[1] for s in classify_extreme(p, sieve) if len(s) == 3)
        if claimed != sorted(middles):
            bad.append((p, "classify_extreme disagrees", tuple(claimed), tuple(middles)))
    return checked, bad


def _scan_maxlen4(primes, sieve):
    checked, bad = 0, []
    for p in primes:
        if p < 3 or not sieve.lookup(2 * p - 1):
            continue
        checked += 1
        middles = _extreme_middles(p, sieve)
        longest = 2
        quads = 0
        for size in range(1, len(middles) + 1):
            for sub in combinations(middles, size):
                if all(math.gcd(a - 1, b - 1) == b - a for a, b in combinations(sub, 2)):
                    longest = max(longest, size + 2)
                    quads += size == 2
        if longest > 4 or len(middles) > 2 or quads > 1:
            bad.append((p, longest, len(middles), quads))
    return checked, bad


def _scan_congruence_half(primes, sieve):
    checked, bad = 0, []
    for p in primes:
        if p < 3:
            continue
        q, r = (3 * p - 1) // 2, 2 * p - 1
        if sieve.lookup(q) and sieve.lookup(r) and is_symmetric_sequence((p, q, r)):
            checked += 1
            if p % 12 != 1:
                bad.append((p, q, r))
    return checked, bad


def _scan_congruence_quad(primes, sieve):
    checked, bad = 0, []
    for p in primes:
        if p < 3:
            continue
        for seq in classify_extreme(p, sieve):
            if len(seq) == 4:
                checked += 1
                if p % 6 != 1 or not is_symmetric_sequence(seq.primes):
                    bad.append(seq.primes)
    return checked, bad


def _scan_equivalence(primes, sieve):
    checked, bad = 0, []
    odd = [p for p in primes if p > 2]
    for p in odd:
        for q in sieve.primes_between(p + 1, 2 * p - 1).tolist():
            checked += 1
            if (math.gcd(p - 1, q - 1) == q - p) != is_symmetric_pair_lattice(p, q):
                bad.append((p, q))
    return checked, bad


_SCANS = {
    ScanProperty.LEMMA1A: lambda ps, s: _scan_lemma1(ps, s, (2, 6), False),
    ScanProperty.LEMMA1B: lambda ps, s: _scan_lemma1(ps, s, (4, 6), True),
    ScanProperty.LEMMA2: _scan_lemma2,
    ScanProperty.THEOREM1: _scan_theorem1,
    ScanProperty.MAXLEN4: _scan_maxlen4,
    ScanProperty.CONGRUENCE_HALF: _scan_congruence_half,
    ScanProperty.CONGRUENCE_QUAD: _scan_congruence_quad,
    ScanProperty.EQUIVALENCE: _scan_equivalence,
}


def verify_scan(
    prop: ScanProperty | str,
    x: int,
    sieve: PrimeSieve | None = None,
    *,
    threads: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> ScanReport:
    """Check one structural property for every prime p <= x (for ``equivalence``, p < x)
    and collect counterexamples; an empty list means the property held."""
    prop = ScanProperty(prop)
    if x < 2:
        raise InvalidArgumentError(f"x must be >= 2, got {x}")
    t0 = time.perf_counter()
    sieve = ensure_sieve(2 * x + 7, sieve, threads, mem_budget)
    hi = x - 1 if prop is ScanProperty.EQUIVALENCE else x
    primes = sieve.primes_between(2, hi).tolist() if hi >= 2 else []
    checked, bad = _SCANS[prop](primes, sieve)
    return ScanReport(prop, x, checked, bad, time.perf_counter() - t0)
