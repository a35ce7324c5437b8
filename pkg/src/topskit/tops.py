"""Fractal tops: greedy addresses, overlap classification, and the
shift-invariance of the set of top addresses.

The top address of a point is the lexicographically least address that
projects to it; it is computed greedily by always taking the least edge
whose image interval still contains the point.  The set of all top
addresses is shift invariant exactly when certain regions, built from
overlaps between an edge image and the images of smaller sibling edges,
are empty; the regions grow with the path length considered, so the
first level already decides invariance while deeper levels locate more
of the offending points.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Optional, Sequence

from .exactnum import ExactReal, compare
from .gifs import GraphIFS, Interval, IntervalSet
from .symbolic import EventuallyPeriodicString, Word, format_word

TOTALLY_DISCONNECTED = "TotallyDisconnected"
JUST_TOUCHING = "JustTouching"
OVERLAPPING = "Overlapping"
TOUCHING_OSC_UNDETERMINED = "TouchingOscUndetermined"

# Full permutation listings are kept in reports up to this many entries.
_RESULTS_LIMIT = 5040


# ---------------------------------------------------------------------------
# Greedy top addresses.
# ---------------------------------------------------------------------------


@dataclass
class TopAddress:
    word: Word
    tail_point: ExactReal
    tail_vertex: str

    def to_json(self):
        return {
            "word": format_word(self.word),
            "tail_point": self.tail_point.to_json(),
            "tail_vertex": self.tail_vertex,
        }


def _greedy_step(g: GraphIFS, x: ExactReal, vertex: str) -> tuple[int, ExactReal, str]:
    for label in g.out_labels(vertex):
        lo, hi = g.image_interval(label)
        if compare(lo, x) <= 0 and compare(x, hi) <= 0:
            e = g.edge(label)
            return label, g.map(label).inverse()(x), e.target
    raise RuntimeError(
        f"point {x} in the component of {vertex} is covered by no edge image; "
        "certified hulls forbid this"
    )


def top_address(g: GraphIFS, x, vertex: str, depth: int) -> TopAddress:
    """The first ``depth`` symbols of the top address of x in the
    component of ``vertex``, with the exact leftover point and vertex.

    Works symbol by symbol: the least edge whose image contains the
    point is taken and the point is pulled back through it.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if vertex not in g.vertices:
        raise ValueError(f"unknown vertex {vertex!r}")
    x = x if isinstance(x, ExactReal) else ExactReal(x)
    g.ensure_valid()
    g.require_certified()
    lo, hi = g.component_hulls()[vertex]
    if compare(x, lo) < 0 or compare(x, hi) > 0:
        raise ValueError(f"point {x} lies outside the component of {vertex}")
    word = []
    for _ in range(depth):
        label, x, vertex = _greedy_step(g, x, vertex)
        word.append(label)
    return TopAddress(word=tuple(word), tail_point=x, tail_vertex=vertex)


# ---------------------------------------------------------------------------
# Overlap classification.
# ---------------------------------------------------------------------------


@dataclass
class Classification:
    verdict: str
    witness_edges: Optional[tuple[int, int]]
    witness_interval: Optional[Interval]

    def to_json(self):
        return {
            "verdict": self.verdict,
            "witness": (
                None
                if self.witness_edges is None
                else {
                    "edges": list(self.witness_edges),
                    "interval": [
                        self.witness_interval[0].to_json(),
                        self.witness_interval[1].to_json(),
                    ],
                }
            ),
        }


def classify(g: GraphIFS) -> Classification:
    """Sort the system into totally disconnected, just touching (open set
    condition with component interiors), overlapping (some pair of same
    source edge images shares interior, with a witness pair), or touching
    with the interior open set condition failing.

    Disjointness of hull images already proves disjointness of the true
    images, so the totally disconnected verdict needs no certificate;
    every other verdict requires hulls certified equal to components.
    """
    g.ensure_valid()
    any_touch = False
    overlap = None
    for v in g.vertices:
        labels = g.out_labels(v)
        for p, i in enumerate(labels):
            for j in labels[p + 1 :]:
                (ilo, ihi), (jlo, jhi) = g.image_interval(i), g.image_interval(j)
                lo = ilo if compare(ilo, jlo) >= 0 else jlo
                hi = ihi if compare(ihi, jhi) <= 0 else jhi
                c = compare(lo, hi)
                if c <= 0:
                    any_touch = True
                    if c < 0 and overlap is None:
                        overlap = ((i, j), (lo, hi))
    if not any_touch:
        return Classification(TOTALLY_DISCONNECTED, None, None)
    g.require_certified()
    if overlap is not None:
        return Classification(OVERLAPPING, overlap[0], overlap[1])
    hulls = g.component_hulls()
    if all(compare(lo, hi) < 0 for lo, hi in hulls.values()) and osc_check(
        g, {v: hulls[v] for v in g.vertices}
    ):
        return Classification(JUST_TOUCHING, None, None)
    return Classification(TOUCHING_OSC_UNDETERMINED, None, None)


def osc_check(g: GraphIFS, opens: dict[str, Interval]) -> bool:
    """Test the open set condition for the given nonempty open intervals
    U_v: every f_i(U_target) must land inside U_source, and the open
    images of distinct edges must be pairwise disjoint."""
    g.ensure_valid()
    for v in g.vertices:
        if v not in opens:
            raise ValueError(f"no open set supplied for vertex {v}")
        lo, hi = opens[v]
        if compare(lo, hi) >= 0:
            raise ValueError(f"open set for {v} is empty")
    images = {}
    for e in g.edges:
        lo, hi = g.map(e.label).map_interval(opens[e.target])
        ulo, uhi = opens[e.source]
        if compare(ulo, lo) > 0 or compare(hi, uhi) > 0:
            return False
        images[e.label] = (lo, hi)
    # exact pairwise disjointness of the open image intervals
    labels = sorted(images)
    for p, i in enumerate(labels):
        for j in labels[p + 1 :]:
            lo = images[i][0] if compare(images[i][0], images[j][0]) >= 0 else images[j][0]
            hi = images[i][1] if compare(images[i][1], images[j][1]) <= 0 else images[j][1]
            if compare(lo, hi) < 0:
                return False
    return True


# ---------------------------------------------------------------------------
# The regions deciding shift invariance.
# ---------------------------------------------------------------------------


@dataclass
class UpsilonRegion:
    n: int
    regions: dict[str, IntervalSet]

    def is_empty(self) -> bool:
        return all(r.is_empty for r in self.regions.values())

    def to_json(self):
        return {
            "n": self.n,
            "regions": {v: r.to_json() for v, r in self.regions.items()},
        }


def _paths_with_target(g: GraphIFS, vertex: str, length: int):
    """All edge-label paths of the given length whose final edge ends at
    the vertex."""
    if length == 1:
        for label in g.in_labels(vertex):
            yield (label,)
        return
    for tail in _paths_with_target(g, vertex, length - 1):
        head = g.edge(tail[0]).source
        for label in g.in_labels(head):
            yield (label,) + tail


def _smaller_sibling_union(g: GraphIFS, label: int) -> IntervalSet:
    """The union of image intervals of edges sharing the source of
    ``label`` but carrying a smaller label."""
    source = g.edge(label).source
    return IntervalSet(
        g.image_interval(k) for k in g.out_labels(source) if k < label
    )


def _region_step(g: GraphIFS, length: int) -> dict[str, IntervalSet]:
    """For each vertex v, the set of points of A_v whose every length-
    ``length`` incoming path collides with a smaller sibling of its first
    edge: the intersection over such paths of the pullback of
    f_path(A_v) intersected with the smaller-sibling image union."""
    hulls = g.component_hulls()
    out = {}
    for v in g.vertices:
        running: Optional[IntervalSet] = None
        for path in _paths_with_target(g, v, length):
            siblings = _smaller_sibling_union(g, path[0])
            if siblings.is_empty:
                running = IntervalSet()
                break
            f = g.compose_path(path)
            image = IntervalSet([f.map_interval(hulls[v])])
            hit = image.intersect(siblings)
            if hit.is_empty:
                running = IntervalSet()
                break
            pulled = hit.preimage(f)
            running = pulled if running is None else running.intersect(pulled)
            if running.is_empty:
                break
        assert running is not None, "strong connectivity guarantees incoming paths"
        out[v] = running
    return out


def upsilon_region(g: GraphIFS, n: int) -> UpsilonRegion:
    """The level-n region of points whose top address cannot arise as a
    shifted top address, accumulated over path lengths 1..n; the set of
    top addresses is shift invariant exactly when level 1 is empty."""
    if n < 1:
        raise ValueError("n must be at least 1")
    g.ensure_valid()
    g.require_certified()
    regions = {v: IntervalSet() for v in g.vertices}
    for length in range(1, n + 1):
        step = _region_step(g, length)
        regions = {v: regions[v].union(step[v]) for v in g.vertices}
    return UpsilonRegion(n=n, regions=regions)


# ---------------------------------------------------------------------------
# Invariance verdicts.
# ---------------------------------------------------------------------------


@dataclass
class InvarianceVerdict:
    shift_invariant: bool
    witness_vertex: Optional[str] = None
    witness_point: Optional[ExactReal] = None
    witness_address: Optional[EventuallyPeriodicString] = None
    witness_prefix: Optional[Word] = None

    def to_json(self):
        return {
            "shift_invariant": self.shift_invariant,
            "witness_vertex": self.witness_vertex,
            "witness_point": (
                None if self.witness_point is None else self.witness_point.to_json()
            ),
            "witness_address": (
                None if self.witness_address is None else str(self.witness_address)
            ),
            "witness_prefix": (
                None if self.witness_prefix is None else format_word(self.witness_prefix)
            ),
        }


def invariance_verdict(g: GraphIFS, address_cap: int = 64) -> InvarianceVerdict:
    """Decide shift invariance of the set of top addresses.  When it
    fails, report the least point of the offending region together with
    its top address (resolved to eventually periodic form when the greedy
    orbit revisits an exact state within ``address_cap`` steps)."""
    region = upsilon_region(g, 1)
    if region.is_empty():
        return InvarianceVerdict(shift_invariant=True)
    vertex = None
    point = None
    for v in g.vertices:
        p = region.regions[v].min_point()
        if p is not None and (point is None or compare(p, point) < 0):
            vertex, point = v, p
    word: list[int] = []
    states: list[tuple[str, ExactReal]] = [(vertex, point)]
    x, v = point, vertex
    address = None
    for _ in range(address_cap):
        label, x, v = _greedy_step(g, x, v)
        word.append(label)
        hit = next(
            (
                k
                for k, (sv, sx) in enumerate(states)
                if sv == v and compare(sx, x) == 0
            ),
            None,
        )
        if hit is not None:
            address = EventuallyPeriodicString(word[:hit], word[hit:])
            break
        states.append((v, x))
    return InvarianceVerdict(
        shift_invariant=False,
        witness_vertex=vertex,
        witness_point=point,
        witness_address=address,
        witness_prefix=None if address is not None else tuple(word),
    )


# ---------------------------------------------------------------------------
# Searching edge orderings.
# ---------------------------------------------------------------------------


@dataclass
class OrderingReport:
    total: int
    evaluated: int
    sampled: bool
    invariant_count: int
    noninvariant_count: int
    invariant_example: Optional[tuple[int, ...]]
    noninvariant_example: Optional[tuple[int, ...]]
    results: Optional[list[tuple[tuple[int, ...], bool]]]

    def to_json(self):
        return {
            "total": self.total,
            "evaluated": self.evaluated,
            "sampled": self.sampled,
            "invariant": self.invariant_count,
            "not_invariant": self.noninvariant_count,
            "invariant_example": (
                None if self.invariant_example is None else list(self.invariant_example)
            ),
            "noninvariant_example": (
                None
                if self.noninvariant_example is None
                else list(self.noninvariant_example)
            ),
            "results": (
                None
                if self.results is None
                else [
                    {"permutation": list(p), "shift_invariant": inv}
                    for p, inv in self.results
                ]
            ),
        }


def _upsilon1_empty_under(g: GraphIFS, perm: Sequence[int]) -> bool:
    """Whether the level-1 region is empty after relabeling edge i as
    perm[i-1].  Uses the unpermuted geometry caches directly."""
    hulls = g.component_hulls()
    for v in g.vertices:
        running: Optional[IntervalSet] = None
        for j in g.in_labels(v):
            source = g.edge(j).source
            siblings = IntervalSet(
                g.image_interval(k)
                for k in g.out_labels(source)
                if perm[k - 1] < perm[j - 1]
            )
            if siblings.is_empty:
                running = IntervalSet()
                break
            f = g.map(j)
            image = IntervalSet([g.image_interval(j)])
            hit = image.intersect(siblings)
            if hit.is_empty:
                running = IntervalSet()
                break
            pulled = hit.preimage(f)
            running = pulled if running is None else running.intersect(pulled)
            if running.is_empty:
                break
        if running is not None and not running.is_empty:
            return False
    return True


def _ordering_chunk(args) -> list[bool]:
    g, perms = args
    g.component_hulls()
    return [_upsilon1_empty_under(g, p) for p in perms]


def ordering_search(
    g: GraphIFS,
    sample: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
) -> OrderingReport:
    """Evaluate shift invariance for relabelings of the edges.

    With ``sample=None`` all N! permutations are tried (guarded to
    N <= 10); otherwise ``sample`` distinct permutations are drawn
    deterministically from the given seed.  Full per-permutation results
    are included in the report up to 5040 evaluations, summaries beyond.
    """
    g.ensure_valid()
    g.require_certified()
    n = g.n_edges
    total = factorial(n)
    if sample is not None and sample < 1:
        raise ValueError("sample must be positive")
    if sample is None and n > 10:
        raise ValueError(
            f"{n}! permutations is too many to enumerate; supply a sampling budget"
        )
    if sample is None or sample >= total:
        perms = list(itertools.permutations(range(1, n + 1)))
        sampled = False
    else:
        rng = random.Random(seed)
        chosen = set()
        base = list(range(1, n + 1))
        while len(chosen) < sample:
            rng.shuffle(base)
            chosen.add(tuple(base))
        perms = sorted(chosen)
        sampled = True

    if threads > 1 and len(perms) >= 64:
        chunk = max(1, len(perms) // (threads * 8))
        chunks = [perms[i : i + chunk] for i in range(0, len(perms), chunk)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = []
            for result in pool.map(_ordering_chunk, [(g, c) for c in chunks]):
                outcomes.extend(result)
    else:
        outcomes = _ordering_chunk((g, perms))

    invariant_example = noninvariant_example = None
    inv_count = 0
    for p, ok in zip(perms, outcomes):
        if ok:
            inv_count += 1
            if invariant_example is None:
                invariant_example = p
        elif noninvariant_example is None:
            noninvariant_example = p
    results = list(zip(perms, outcomes)) if len(perms) <= _RESULTS_LIMIT else None
    return OrderingReport(
        total=total,
        evaluated=len(perms),
        sampled=sampled,
        invariant_count=inv_count,
        noninvariant_count=len(perms) - inv_count,
        invariant_example=invariant_example,
        noninvariant_example=noninvariant_example,
        results=results,
    )
