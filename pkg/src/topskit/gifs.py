"""Graph-directed iterated function systems of affine contractions on R.

A system is a finite strongly connected digraph with edges labeled
1..N, where edge i carries an invertible affine contraction f_i from
the component of its target vertex into the component of its source
vertex.  The components A_v are the unique nonempty compact sets with

    A_v  =  union of f_i(A_{target(i)}) over edges i with source(i) = v.

Hulls of the components are solved exactly: the interval Hutchinson
operator is iterated until the pattern of extremum-attaining edges
stabilizes, the resulting linear system is solved in closed form, and
the solution is certified by one exact application of the operator.
A component hull equals the component itself exactly when the edge
images tile it with no gaps; that certificate gates every operation
that treats hulls as components.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Mapping, Optional, Sequence

from .exactnum import ExactReal, ValidationError, compare, parse_exact
from .symbolic import EventuallyPeriodicString, Word

Interval = tuple[ExactReal, ExactReal]

_HULL_ITERATION_CAP = 500


class ConfigError(ValueError):
    """Raised for malformed system descriptions."""


class PathError(ValueError):
    """Raised for edge sequences that do not form a valid path."""


class GraphValidationError(ValueError):
    """Raised when an operation needs a valid system but validation fails."""


class HullError(RuntimeError):
    """Raised when component hulls cannot be computed."""


class UncertifiedHullError(RuntimeError):
    """Raised when an operation needs hulls certified equal to components."""


# ---------------------------------------------------------------------------
# Affine maps.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """x -> a*x + b with a != 0."""

    a: ExactReal
    b: ExactReal

    def __post_init__(self):
        a = self.a if isinstance(self.a, ExactReal) else ExactReal(self.a)
        b = self.b if isinstance(self.b, ExactReal) else ExactReal(self.b)
        if a.sign() == 0:
            raise ValidationError("affine map must be invertible (a != 0)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __call__(self, x) -> ExactReal:
        return self.a * x + self.b

    def inverse(self) -> "AffineMap":
        return AffineMap(1 / self.a, -self.b / self.a)

    def after(self, other: "AffineMap") -> "AffineMap":
        """The composition self o other."""
        return AffineMap(self.a * other.a, self.a * other.b + self.b)

    def is_contraction(self) -> bool:
        return compare(abs(self.a), 1) < 0

    def fixed_point(self) -> ExactReal:
        if compare(self.a, 1) == 0:
            raise ValueError("x -> x + b has no fixed point")
        return self.b / (1 - self.a)

    def map_interval(self, interval: Interval) -> Interval:
        lo, hi = interval
        p, q = self(lo), self(hi)
        return (p, q) if self.a.sign() > 0 else (q, p)


@dataclass(frozen=True)
class Edge:
    label: int
    source: str
    target: str


# ---------------------------------------------------------------------------
# Finite unions of closed intervals.
# ---------------------------------------------------------------------------


class IntervalSet:
    """A finite union of closed intervals with exact endpoints, kept
    sorted, pairwise disjoint and with touching intervals merged.
    Degenerate single-point intervals are allowed."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        items = []
        for lo, hi in intervals:
            lo = lo if isinstance(lo, ExactReal) else ExactReal(lo)
            hi = hi if isinstance(hi, ExactReal) else ExactReal(hi)
            if compare(lo, hi) > 0:
                raise ValueError("interval with lo > hi")
            items.append((lo, hi))
        items.sort(key=cmp_to_key(lambda u, v: compare(u[0], v[0])))
        merged: list[list[ExactReal]] = []
        for lo, hi in items:
            if merged and compare(lo, merged[-1][1]) <= 0:
                if compare(hi, merged[-1][1]) > 0:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "intervals", tuple((lo, hi) for lo, hi in merged))

    def __setattr__(self, name, value):
        raise AttributeError("IntervalSet is immutable")

    def __reduce__(self):
        return (IntervalSet, (self.intervals,))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(tuple(self.intervals) + tuple(other.intervals))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for alo, ahi in self.intervals:
            for blo, bhi in other.intervals:
                lo = alo if compare(alo, blo) >= 0 else blo
                hi = ahi if compare(ahi, bhi) <= 0 else bhi
                if compare(lo, hi) <= 0:
                    out.append((lo, hi))
        return IntervalSet(out)

    def preimage(self, f: AffineMap) -> "IntervalSet":
        """The exact preimage under the invertible affine map f."""
        inv = f.inverse()
        return IntervalSet(inv.map_interval(iv) for iv in self.intervals)

    def image(self, f: AffineMap) -> "IntervalSet":
        return IntervalSet(f.map_interval(iv) for iv in self.intervals)

    def contains_point(self, x) -> bool:
        return any(
            compare(lo, x) <= 0 and compare(x, hi) <= 0 for lo, hi in self.intervals
        )

    def subset_of(self, other: "IntervalSet") -> bool:
        return all(
            any(compare(blo, lo) <= 0 and compare(hi, bhi) <= 0 for blo, bhi in other)
            for lo, hi in self.intervals
        )

    def min_point(self) -> Optional[ExactReal]:
        return self.intervals[0][0] if self.intervals else None

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        if len(self.intervals) != len(other.intervals):
            return False
        return all(
            compare(a[0], b[0]) == 0 and compare(a[1], b[1]) == 0
            for a, b in zip(self.intervals, other.intervals)
        )

    __hash__ = None

    def to_json(self):
        return [[lo.to_json(), hi.to_json()] for lo, hi in self.intervals]

    def __repr__(self):
        return f"IntervalSet({[[str(lo), str(hi)] for lo, hi in self.intervals]})"


# ---------------------------------------------------------------------------
# The system.
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]
    hulls: Optional[dict[str, Interval]]
    exact: Optional[dict[str, bool]]

    def to_json(self):
        return {
            "ok": self.ok,
            "violations": list(self.violations),
            "hulls": (
                None
                if self.hulls is None
                else {v: [lo.to_json(), hi.to_json()] for v, (lo, hi) in self.hulls.items()}
            ),
            "exact": None if self.exact is None else dict(self.exact),
        }


class GraphIFS:
    """A labeled graph-directed IFS; see the module docstring."""

    def __init__(
        self,
        vertices: Sequence[str],
        edges: Sequence[Edge],
        maps: Sequence[AffineMap],
        name: Optional[str] = None,
        comment: Optional[str] = None,
        field_generator: Optional[ExactReal] = None,
    ):
        vertices = tuple(vertices)
        if not vertices:
            raise ConfigError("at least one vertex is required")
        if len(set(vertices)) != len(vertices):
            raise ConfigError("vertex names must be distinct")
        edges = tuple(edges)
        maps = tuple(maps)
        if not edges:
            raise ConfigError("at least one edge is required")
        if len(edges) != len(maps):
            raise ConfigError("each edge needs exactly one map")
        if sorted(e.label for e in edges) != list(range(1, len(edges) + 1)):
            raise ConfigError(f"edge labels must be exactly 1..{len(edges)}")
        vset = set(vertices)
        for e in edges:
            if e.source not in vset or e.target not in vset:
                raise ConfigError(f"edge {e.label} references an unknown vertex")
        order = sorted(range(len(edges)), key=lambda k: edges[k].label)
        self.vertices = vertices
        self.edges = tuple(edges[k] for k in order)
        self.maps = tuple(maps[k] for k in order)
        self.name = name
        self.comment = comment
        self.field_generator = field_generator
        self._hulls: Optional[dict[str, Interval]] = None
        self._exact: Optional[dict[str, bool]] = None
        self._images: Optional[dict[int, Interval]] = None

    # -- basic structure ------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge(self, label: int) -> Edge:
        if not 1 <= label <= len(self.edges):
            raise PathError(f"no edge labeled {label}")
        return self.edges[label - 1]

    def map(self, label: int) -> AffineMap:
        self.edge(label)
        return self.maps[label - 1]

    def out_labels(self, vertex: str) -> tuple[int, ...]:
        return tuple(e.label for e in self.edges if e.source == vertex)

    def in_labels(self, vertex: str) -> tuple[int, ...]:
        return tuple(e.label for e in self.edges if e.target == vertex)

    # -- validation -----------------------------------------------------------

    def strongly_connected(self) -> bool:
        fwd = {v: set() for v in self.vertices}
        rev = {v: set() for v in self.vertices}
        for e in self.edges:
            fwd[e.source].add(e.target)
            rev[e.target].add(e.source)

        def reaches_all(adj):
            seen = {self.vertices[0]}
            stack = [self.vertices[0]]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            return len(seen) == len(self.vertices)

        return reaches_all(fwd) and reaches_all(rev)

    def period(self) -> int:
        """The gcd of all cycle lengths; 1 means primitive.  Only
        meaningful for strongly connected systems."""
        from math import gcd

        level = {self.vertices[0]: 0}
        queue = [self.vertices[0]]
        fwd = {v: [] for v in self.vertices}
        for e in self.edges:
            fwd[e.source].append(e.target)
        while queue:
            u = queue.pop(0)
            for w in fwd[u]:
                if w not in level:
                    level[w] = level[u] + 1
                    queue.append(w)
        g = 0
        for e in self.edges:
            g = gcd(g, level[e.source] + 1 - level[e.target])
        return abs(g)

    def validate(self) -> ValidationReport:
        violations = []
        for e, f in zip(self.edges, self.maps):
            if not f.is_contraction():
                violations.append(
                    f"edge {e.label}: slope magnitude not strictly between 0 and 1"
                )
        for v in self.vertices:
            if not self.out_labels(v):
                violations.append(f"vertex {v}: no outgoing edge")
            if not self.in_labels(v):
                violations.append(f"vertex {v}: no incoming edge")
        structurally_ok = not violations
        if structurally_ok and not self.strongly_connected():
            violations.append("digraph is not strongly connected")
            structurally_ok = False
        if structurally_ok:
            p = self.period()
            if p != 1:
                violations.append(f"digraph has period {p}; not primitive")
                structurally_ok = False
        hulls = exact = None
        if structurally_ok:
            try:
                hulls = self.component_hulls()
                exact = self.hull_exact_flags()
            except HullError as err:
                violations.append(str(err))
            else:
                for i, u in enumerate(self.vertices):
                    for w in self.vertices[i + 1 :]:
                        (ulo, uhi), (wlo, whi) = hulls[u], hulls[w]
                        if compare(uhi, wlo) >= 0 and compare(whi, ulo) >= 0:
                            violations.append(
                                f"component hulls of {u} and {w} are not disjoint"
                            )
        return ValidationReport(
            ok=not violations, violations=violations, hulls=hulls, exact=exact
        )

    def ensure_valid(self) -> None:
        report = self.validate()
        if not report.ok:
            raise GraphValidationError("; ".join(report.violations))

    # -- component hulls ------------------------------------------------------

    def component_hulls(self) -> dict[str, Interval]:
        """Exact hulls [min A_v, max A_v] of the components."""
        if self._hulls is not None:
            return self._hulls
        for e, f in zip(self.edges, self.maps):
            if not f.is_contraction():
                raise HullError(
                    f"cannot compute hulls: edge {e.label} is not a contraction"
                )
        for v in self.vertices:
            if not self.out_labels(v):
                raise HullError(f"cannot compute hulls: vertex {v} has no outgoing edge")
        zero = ExactReal(0)
        cur = {v: (zero, zero) for v in self.vertices}
        prev_pattern = None
        for _ in range(_HULL_ITERATION_CAP):
            nxt, pattern = self._hull_step(cur)
            if pattern == prev_pattern:
                solution = self._solve_pattern(pattern)
                applied, _ = self._hull_step(solution)
                if all(
                    compare(applied[v][0], solution[v][0]) == 0
                    and compare(applied[v][1], solution[v][1]) == 0
                    for v in self.vertices
                ):
                    self._hulls = solution
                    return solution
            prev_pattern = pattern
            cur = nxt
        raise HullError(
            "hull iteration did not stabilize; the extremum pattern keeps changing"
        )

    def _hull_step(self, cur):
        nxt = {}
        pattern = {}
        for v in self.vertices:
            best_lo = best_hi = None
            pat_lo = pat_hi = None
            for label in self.out_labels(v):
                e = self.edge(label)
                f = self.map(label)
                lo, hi = f.map_interval(cur[e.target])
                positive = f.a.sign() > 0
                if best_lo is None or compare(lo, best_lo) < 0:
                    best_lo = lo
                    pat_lo = (label, "lo" if positive else "hi")
                if best_hi is None or compare(hi, best_hi) > 0:
                    best_hi = hi
                    pat_hi = (label, "hi" if positive else "lo")
            nxt[v] = (best_lo, best_hi)
            pattern[v] = (pat_lo, pat_hi)
        return nxt, pattern

    def _solve_pattern(self, pattern):
        """Solve the linear system induced by a stabilized extremum pattern.
        Each variable depends on exactly one other, so the functional graph
        is chains into cycles; cycles solve as fixed points of affine maps."""

        def dependency(var):
            side, v = var
            label, tside = pattern[v][0 if side == "lo" else 1]
            f = self.map(label)
            return (tside, self.edge(label).target), f.a, f.b

        solved: dict[tuple[str, str], ExactReal] = {}
        for v in self.vertices:
            for side in ("lo", "hi"):
                start = (side, v)
                if start in solved:
                    continue
                chain = []
                index = {}
                cur = start
                while cur not in solved and cur not in index:
                    index[cur] = len(chain)
                    chain.append(cur)
                    cur = dependency(cur)[0]
                if cur not in solved:
                    # cycle: compose value(node) = a*value(next) + b maps
                    # around it; |a_acc| < 1 so the fixed point exists
                    k = index[cur]
                    a_acc, b_acc = ExactReal(1), ExactReal(0)
                    for node in chain[k:]:
                        _, a, b = dependency(node)
                        b_acc = b_acc + a_acc * b
                        a_acc = a_acc * a
                    solved[cur] = b_acc / (1 - a_acc)
                for node in reversed(chain):
                    nxt_var, a, b = dependency(node)
                    solved[node] = a * solved[nxt_var] + b
        return {v: (solved[("lo", v)], solved[("hi", v)]) for v in self.vertices}

    def image_interval(self, label: int) -> Interval:
        """The exact interval f_label(hull of the target component)."""
        if self._images is None:
            hulls = self.component_hulls()
            self._images = {
                e.label: self.map(e.label).map_interval(hulls[e.target])
                for e in self.edges
            }
        return self._images[label]

    def hull_exact_flags(self) -> dict[str, bool]:
        """exact[v] is True when the edge images tile hull(v) with no gaps,
        certifying hull(v) == A_v."""
        if self._exact is not None:
            return self._exact
        hulls = self.component_hulls()
        flags = {}
        for v in self.vertices:
            union = IntervalSet(self.image_interval(i) for i in self.out_labels(v))
            flags[v] = union == IntervalSet([hulls[v]])
        self._exact = flags
        return flags

    def require_certified(self) -> None:
        flags = self.hull_exact_flags()
        bad = [v for v in self.vertices if not flags[v]]
        if bad:
            raise UncertifiedHullError(
                "component hulls are not certified equal to the components "
                f"at {', '.join(bad)}; edge images leave gaps"
            )

    # -- paths and addresses ----------------------------------------------------

    def path_is_valid(self, word: Sequence[int]) -> bool:
        word = tuple(word)
        try:
            for label in word:
                self.edge(label)
        except PathError:
            return False
        return all(
            self.edge(word[k]).target == self.edge(word[k + 1]).source
            for k in range(len(word) - 1)
        )

    def _check_path(self, word: Word) -> None:
        for label in word:
            self.edge(label)
        for k in range(len(word) - 1):
            if self.edge(word[k]).target != self.edge(word[k + 1]).source:
                raise PathError(
                    f"edge {word[k]} (into {self.edge(word[k]).target}) cannot be "
                    f"followed by edge {word[k + 1]} "
                    f"(out of {self.edge(word[k + 1]).source})"
                )

    def compose_path(self, word: Sequence[int]) -> AffineMap:
        """f_w1 o f_w2 o ... o f_wn for a valid path w."""
        word = tuple(word)
        if not word:
            raise PathError("the empty path has no composite map")
        self._check_path(word)
        f = self.map(word[-1])
        for label in reversed(word[:-1]):
            f = self.map(label).after(f)
        return f

    def path_source(self, word: Sequence[int]) -> str:
        word = tuple(word)
        self._check_path(word)
        return self.edge(word[0]).source

    def path_target(self, word: Sequence[int]) -> str:
        word = tuple(word)
        self._check_path(word)
        return self.edge(word[-1]).target

    def address_interval(
        self, word: Sequence[int], vertex: Optional[str] = None
    ) -> Interval:
        """The interval f_w(hull of the target component); for the empty
        word, the hull of the given vertex."""
        word = tuple(word)
        hulls = self.component_hulls()
        if not word:
            if vertex is None:
                raise PathError("the empty path needs an explicit vertex")
            if vertex not in hulls:
                raise PathError(f"unknown vertex {vertex!r}")
            return hulls[vertex]
        f = self.compose_path(word)
        return f.map_interval(hulls[self.path_target(word)])

    def address_vertex(self, address: EventuallyPeriodicString) -> str:
        """The source vertex of an infinite address."""
        return self.edge(address.symbol(0)).source

    def pi_point(self, address: EventuallyPeriodicString) -> ExactReal:
        """The point the infinite address projects to: the shrinking
        intersection of its address intervals."""
        word = address.pre + address.per + address.per
        self._check_path(word)
        cycle = self.compose_path(address.per)
        x = cycle.fixed_point()
        if address.pre:
            x = self.compose_path(address.pre)(x)
        return x

    # -- relabeling ---------------------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "GraphIFS":
        """A copy in which the edge labeled i is relabeled perm[i-1].
        Geometry is unchanged, so hull caches carry over."""
        perm = tuple(perm)
        if sorted(perm) != list(range(1, len(self.edges) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.edges)}: {perm!r}")
        edges = [
            Edge(label=perm[e.label - 1], source=e.source, target=e.target)
            for e in self.edges
        ]
        out = GraphIFS(
            self.vertices,
            edges,
            self.maps,
            name=self.name,
            comment=self.comment,
            field_generator=self.field_generator,
        )
        out._hulls = self._hulls
        out._exact = self._exact
        return out


# ---------------------------------------------------------------------------
# Configuration files.
# ---------------------------------------------------------------------------


def from_config(data: Mapping) -> GraphIFS:
    """Build a system from its JSON description.

    Schema: {"vertices": [names], "edges": [{"label", "source", "target",
    "a", "b"}], optional "name", "comment" and "field"}.  Numbers are
    rational strings, {"poly", "interval"} root objects, or, when a
    top-level "field" generator is declared, {"coeffs": [...]} polynomial
    expressions in that generator.
    """
    if not isinstance(data, Mapping):
        raise ConfigError("system description must be a JSON object")
    for key in ("vertices", "edges"):
        if key not in data:
            raise ConfigError(f"missing {key!r}")
    generator = None
    if "field" in data and data["field"] is not None:
        try:
            generator = parse_exact(data["field"])
        except ValidationError as exc:
            raise ConfigError(f"bad field generator: {exc}") from exc
        if generator.is_rational:
            raise ConfigError("field generator must be irrational")
    vertices = data["vertices"]
    if not isinstance(vertices, (list, tuple)) or not all(
        isinstance(v, str) for v in vertices
    ):
        raise ConfigError('"vertices" must be a list of names')
    edges = []
    maps = []
    if not isinstance(data["edges"], (list, tuple)):
        raise ConfigError('"edges" must be a list')
    for item in data["edges"]:
        if not isinstance(item, Mapping):
            raise ConfigError("each edge must be an object")
        missing = {"label", "source", "target", "a", "b"} - set(item)
        if missing:
            raise ConfigError(f"edge missing keys: {sorted(missing)}")
        label = item["label"]
        if not isinstance(label, int) or isinstance(label, bool):
            raise ConfigError(f"edge label must be an integer, got {label!r}")
        try:
            a = parse_exact(item["a"], field=generator)
            b = parse_exact(item["b"], field=generator)
        except ValidationError as exc:
            raise ConfigError(f"edge {label}: bad number: {exc}") from exc
        edges.append(Edge(label=label, source=item["source"], target=item["target"]))
        try:
            maps.append(AffineMap(a, b))
        except ValidationError as exc:
            raise ConfigError(f"edge {label}: {exc}") from exc
    return GraphIFS(
        vertices,
        edges,
        maps,
        name=data.get("name"),
        comment=data.get("comment"),
        field_generator=generator,
    )


def load_config(path) -> GraphIFS:
    """Load a system from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return from_config(data)


def to_config(g: GraphIFS) -> dict:
    """The JSON description of a system (inverse of from_config)."""

    def number(x: ExactReal):
        if x.is_rational:
            return str(x.as_fraction())
        gen = g.field_generator
        if gen is not None and gen._field is not None and x._field is gen._field:
            return {"coeffs": [str(c) for c in x._coeffs]}
        return x.to_json()

    out = {}
    if g.name is not None:
        out["name"] = g.name
    if g.comment is not None:
        out["comment"] = g.comment
    if g.field_generator is not None:
        out["field"] = g.field_generator.to_json()
    out["vertices"] = list(g.vertices)
    out["edges"] = [
        {
            "label": e.label,
            "source": e.source,
            "target": e.target,
            "a": number(f.a),
            "b": number(f.b),
        }
        for e, f in zip(g.edges, g.maps)
    ]
    return out
