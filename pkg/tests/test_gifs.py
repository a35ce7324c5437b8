"""Tests for graph-directed IFS: maps, interval sets, hulls, and addresses."""

import random
from fractions import Fraction

import pytest

from topskit.exactnum import ExactReal, ValidationError
from topskit.gifs import (
    AffineMap,
    ConfigError,
    Edge,
    GraphIFS,
    IntervalSet,
    PathError,
    UncertifiedHullError,
    from_config,
    to_config,
)
from topskit.symbolic import EventuallyPeriodicString as EPS


def fr(p, q=1):
    return ExactReal(Fraction(p, q))


def two_component_config() -> dict:
    return {
        "name": "two-component chain",
        "vertices": ["v1", "v2"],
        "edges": [
            {"label": 1, "source": "v1", "target": "v1", "a": "1/2", "b": "0"},
            {"label": 2, "source": "v1", "target": "v2", "a": "1/2", "b": "-1/2"},
            {"label": 3, "source": "v2", "target": "v1", "a": "1/2", "b": "2"},
            {"label": 4, "source": "v2", "target": "v2", "a": "1/2", "b": "3/2"},
        ],
    }


def two_map_config(rho: Fraction) -> dict:
    return {
        "vertices": ["v"],
        "edges": [
            {"label": 1, "source": "v", "target": "v", "a": str(rho), "b": "0"},
            {
                "label": 2,
                "source": "v",
                "target": "v",
                "a": str(rho),
                "b": str(1 - rho),
            },
        ],
    }


def golden_config() -> dict:
    return {
        "field": {"poly": [-1, 1, 1], "interval": ["1/2", "1"]},
        "vertices": ["v"],
        "edges": [
            {
                "label": 1,
                "source": "v",
                "target": "v",
                "a": {"coeffs": ["0", "1"]},
                "b": "0",
            },
            {
                "label": 2,
                "source": "v",
                "target": "v",
                "a": {"coeffs": ["0", "1"]},
                "b": {"coeffs": ["1", "-1"]},
            },
        ],
    }


# ---------------------------------------------------------------------------
# affine maps
# ---------------------------------------------------------------------------


def test_affine_map_basics():
    f = AffineMap(Fraction(1, 2), Fraction(2))
    assert f(fr(1)) == Fraction(5, 2)
    assert f.is_contraction()
    assert f.fixed_point() == 4
    g = f.inverse()
    assert g(f(fr(7, 3))) == Fraction(7, 3)
    h = f.after(g)
    assert h(fr(5)) == 5


def test_affine_map_rejects_zero_slope():
    with pytest.raises(ValidationError):
        AffineMap(0, 1)


def test_affine_map_negative_slope_interval():
    f = AffineMap(Fraction(-1, 2), Fraction(1))
    lo, hi = f.map_interval((fr(0), fr(1)))
    assert (lo, hi) == (Fraction(1, 2), 1)
    assert not AffineMap(Fraction(-3, 2), 0).is_contraction()
    assert f.fixed_point() == Fraction(2, 3)


def test_affine_composition_order():
    f = AffineMap(Fraction(1, 2), 0)
    g = AffineMap(Fraction(1, 3), 1)
    # (f after g)(x) = f(g(x))
    assert f.after(g)(fr(6)) == f(g(fr(6)))


# ---------------------------------------------------------------------------
# interval sets
# ---------------------------------------------------------------------------


def iset(*pairs):
    return IntervalSet([(fr(a, b), fr(c, d)) for (a, b), (c, d) in pairs])


def test_interval_set_merges_overlaps_and_touching():
    s = iset(((0, 1), (1, 2)), ((1, 2), (1, 1)), ((3, 1), (4, 1)))
    assert len(s) == 2
    (a, b), (c, d) = list(s)
    assert (a, b) == (0, 1)
    assert (c, d) == (3, 4)


def test_interval_set_operations():
    s = iset(((0, 1), (1, 1)))
    t = iset(((1, 2), (3, 2)))
    inter = s.intersect(t)
    assert list(inter) == [(Fraction(1, 2), 1)]
    u = s.union(t)
    assert list(u) == [(0, Fraction(3, 2))]
    assert s.contains_point(fr(1, 2))
    assert not s.contains_point(fr(3, 2))
    assert inter.subset_of(s)
    assert not s.subset_of(inter)
    assert s.min_point() == 0
    assert IntervalSet().is_empty
    assert IntervalSet().min_point() is None


def test_interval_set_image_preimage():
    s = iset(((0, 1), (1, 1)))
    f = AffineMap(Fraction(1, 2), Fraction(1))
    img = s.image(f)
    assert list(img) == [(1, Fraction(3, 2))]
    assert img.preimage(f) == s
    # negative slope reverses each interval
    g = AffineMap(Fraction(-1, 1), Fraction(0))
    assert list(s.image(g)) == [(-1, 0)]


def test_interval_set_degenerate_points():
    s = IntervalSet([(fr(2), fr(2))])
    assert not s.is_empty
    assert s.contains_point(fr(2))
    assert s.to_json() == [["2", "2"]]


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def test_two_component_validates():
    g = from_config(two_component_config())
    report = g.validate()
    assert report.ok
    assert report.violations == []
    assert g.strongly_connected()
    assert g.period() == 1


def test_single_map_validates_with_point_hull():
    g = from_config(
        {
            "vertices": ["v"],
            "edges": [
                {"label": 1, "source": "v", "target": "v", "a": "1/2", "b": "0"}
            ],
        }
    )
    assert g.validate().ok
    assert g.component_hulls()["v"] == (0, 0)


def test_not_strongly_connected_fails():
    g = from_config(
        {
            "vertices": ["v1", "v2"],
            "edges": [
                {"label": 1, "source": "v1", "target": "v1", "a": "1/2", "b": "0"},
                {"label": 2, "source": "v2", "target": "v1", "a": "1/2", "b": "0"},
                {"label": 3, "source": "v2", "target": "v2", "a": "1/2", "b": "1"},
            ],
        }
    )
    report = g.validate()
    assert not report.ok
    assert any("connected" in v for v in report.violations)


def test_expansive_map_fails():
    cfg = two_map_config(Fraction(2, 3))
    cfg["edges"][0]["a"] = "3/2"
    report = from_config(cfg).validate()
    assert not report.ok
    assert any("slope" in v for v in report.violations)


def test_imprimitive_graph_fails():
    g = from_config(
        {
            "vertices": ["v1", "v2"],
            "edges": [
                {"label": 1, "source": "v1", "target": "v2", "a": "1/2", "b": "0"},
                {"label": 2, "source": "v2", "target": "v1", "a": "1/2", "b": "1"},
            ],
        }
    )
    report = g.validate()
    assert not report.ok
    assert any("primitive" in v for v in report.violations)
    assert g.period() == 2


def test_missing_out_edge_fails():
    g = from_config(
        {
            "vertices": ["v1", "v2"],
            "edges": [
                {"label": 1, "source": "v1", "target": "v1", "a": "1/2", "b": "0"},
                {"label": 2, "source": "v1", "target": "v2", "a": "1/2", "b": "1"},
            ],
        }
    )
    report = g.validate()
    assert not report.ok


def test_config_errors():
    with pytest.raises(ConfigError):
        from_config({"vertices": ["v"]})
    cfg = two_component_config()
    cfg["edges"][1]["label"] = 1
    with pytest.raises((ConfigError, ValueError)):
        from_config(cfg).validate()
    cfg = two_component_config()
    cfg["edges"][0]["source"] = "nope"
    with pytest.raises((ConfigError, ValueError)):
        from_config(cfg)
    cfg = two_component_config()
    cfg["edges"][0]["a"] = "not a number"
    with pytest.raises(ConfigError):
        from_config(cfg)


def test_labels_must_be_contiguous():
    cfg = two_component_config()
    cfg["edges"][3]["label"] = 9
    with pytest.raises((ConfigError, ValueError)):
        from_config(cfg)


# ---------------------------------------------------------------------------
# hulls
# ---------------------------------------------------------------------------


def test_two_component_hulls_pinned():
    g = from_config(two_component_config())
    hulls = g.component_hulls()
    assert hulls["v1"] == (0, 1)
    assert hulls["v2"] == (2, 3)
    assert g.hull_exact_flags() == {"v1": True, "v2": True}
    g.require_certified()


def test_two_map_hull_pinned():
    for rho in (Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)):
        g = from_config(two_map_config(rho))
        assert g.component_hulls()["v"] == (0, 1)
        assert g.hull_exact_flags()["v"] is True


def test_golden_two_map_hull():
    g = from_config(golden_config())
    assert g.component_hulls()["v"] == (0, 1)
    assert g.field_generator is not None
    rho = g.map(1).a
    assert rho * rho == 1 - rho


def test_cantor_hull_not_exact():
    g = from_config(
        {
            "vertices": ["v"],
            "edges": [
                {"label": 1, "source": "v", "target": "v", "a": "1/3", "b": "0"},
                {"label": 2, "source": "v", "target": "v", "a": "1/3", "b": "2/3"},
            ],
        }
    )
    assert g.component_hulls()["v"] == (0, 1)
    assert g.hull_exact_flags()["v"] is False
    with pytest.raises(UncertifiedHullError):
        g.require_certified()


def test_negative_slope_hull():
    # f1(x) = -x/2, f2(x) = -x/2 + 1: A = [-1/3, 2/3] solves the equation
    g = from_config(
        {
            "vertices": ["v"],
            "edges": [
                {"label": 1, "source": "v", "target": "v", "a": "-1/2", "b": "0"},
                {"label": 2, "source": "v", "target": "v", "a": "-1/2", "b": "1"},
            ],
        }
    )
    lo, hi = g.component_hulls()["v"]
    # independent check: the hull must be a fixed point of the interval step
    images = [g.image_interval(1), g.image_interval(2)]
    assert min(i[0] for i in images) == lo
    assert max(i[1] for i in images) == hi


def test_hull_fixed_point_property():
    for cfg in (two_component_config(), two_map_config(Fraction(3, 5)), golden_config()):
        g = from_config(cfg)
        hulls = g.component_hulls()
        for v in g.vertices:
            images = [g.image_interval(k) for k in g.out_labels(v)]
            assert min(i[0] for i in images) == hulls[v][0]
            assert max(i[1] for i in images) == hulls[v][1]


def test_hull_matches_float_iteration():
    for cfg in (two_component_config(), two_map_config(Fraction(2, 3))):
        g = from_config(cfg)
        hulls = g.component_hulls()
        approx = {v: (0.0, 0.0) for v in g.vertices}
        for _ in range(200):
            new = {}
            for v in g.vertices:
                pts = []
                for k in g.out_labels(v):
                    e = g.edge(k)
                    f = g.map(k)
                    a = float(f.a.as_fraction())
                    b = float(f.b.as_fraction())
                    for x in approx[e.target]:
                        pts.append(a * x + b)
                new[v] = (min(pts), max(pts))
            approx = new
        eps = Fraction(1, 10**9)
        for v in g.vertices:
            assert abs(float(hulls[v][0].approximate(eps)) - approx[v][0]) < 1e-8
            assert abs(float(hulls[v][1].approximate(eps)) - approx[v][1]) < 1e-8


# ---------------------------------------------------------------------------
# paths and addresses
# ---------------------------------------------------------------------------


def test_path_validity_two_component():
    g = from_config(two_component_config())
    assert g.path_is_valid((1, 1, 2))
    assert g.path_is_valid((2, 4, 3))
    assert not g.path_is_valid((2, 1))  # edge 2 lands in v2, edge 1 leaves v1
    assert not g.path_is_valid((1, 3))
    with pytest.raises(PathError):
        g.compose_path((2, 1))
    with pytest.raises(PathError):
        g.compose_path((0,))


def test_compose_path_pinned():
    g = from_config(two_component_config())
    f43 = g.compose_path((4, 3))
    assert f43(fr(0)) == Fraction(5, 2)
    assert f43.a == Fraction(1, 4)
    single = g.compose_path((3,))
    assert single(fr(0)) == 2 and single(fr(1)) == Fraction(5, 2)


def test_compose_path_two_map_formula():
    rho = Fraction(2, 3)
    g = from_config(two_map_config(rho))
    rng = random.Random(3)
    for _ in range(20):
        word = tuple(rng.choice((1, 2)) for _ in range(rng.randrange(1, 9)))
        f = g.compose_path(word)
        assert f.a == rho ** len(word)
        offset = (1 - rho) * sum(
            (c - 1) * rho**i for i, c in enumerate(word)
        )
        assert f.b == offset


def test_compose_path_is_homomorphism():
    g = from_config(two_component_config())
    rng = random.Random(17)
    words = [(1,), (2,), (1, 2), (2, 4), (3, 1), (4, 4, 3)]
    for _ in range(25):
        alpha = words[rng.randrange(len(words))]
        beta = words[rng.randrange(len(words))]
        if g.path_target(alpha) != g.path_source(beta):
            continue
        combined = g.compose_path(alpha + beta)
        split = g.compose_path(alpha).after(g.compose_path(beta))
        assert combined.a == split.a and combined.b == split.b


def test_address_interval_pinned():
    g = from_config(two_component_config())
    assert g.address_interval((3,)) == (2, Fraction(5, 2))
    assert g.address_interval((), vertex="v2") == (2, 3)
    with pytest.raises(PathError):
        g.address_interval(())
    with pytest.raises(PathError):
        g.address_interval((), vertex="zz")
    t = from_config(two_map_config(Fraction(2, 3)))
    assert t.address_interval((2, 1)) == (Fraction(1, 3), Fraction(7, 9))


def test_address_interval_nesting_and_shrinkage():
    g = from_config(two_component_config())
    rng = random.Random(5)
    for _ in range(30):
        word = []
        vertex = "v1"
        for _ in range(rng.randrange(1, 10)):
            k = rng.choice(g.out_labels(vertex))
            word.append(k)
            vertex = g.edge(k).target
            # nesting: every extension stays inside
        for cut in range(1, len(word)):
            outer = g.address_interval(word[:cut])
            inner = g.address_interval(word)
            assert outer[0] <= inner[0] and inner[1] <= outer[1]
        lo, hi = g.address_interval(word)
        width = hi - lo
        assert width <= Fraction(1, 2 ** len(word))


def test_pi_point_pinned():
    g = from_config(two_component_config())
    assert g.pi_point(EPS((3,), (1,))) == 2
    assert g.pi_point(EPS((), (1,))) == 0
    assert g.pi_point(EPS((2, 3), (1,))) == Fraction(1, 2)
    assert g.address_vertex(EPS((3,), (1,))) == "v2"
    assert g.address_vertex(EPS((), (1,))) == "v1"
    with pytest.raises(PathError):
        g.pi_point(EPS((2,), (1,)))


def test_pi_point_in_address_intervals():
    g = from_config(two_component_config())
    addresses = [
        EPS((3,), (1,)),
        EPS((), (4, 3, 1, 2)),
        EPS((1, 1, 2), (4,)),
        EPS((2,), (4, 3, 1, 1, 2)),
    ]
    for sigma in addresses:
        x = g.pi_point(sigma)
        for k in range(1, 12):
            lo, hi = g.address_interval(sigma.prefix(k))
            assert lo <= x <= hi


# ---------------------------------------------------------------------------
# relabeling and serialization
# ---------------------------------------------------------------------------


def test_relabel_roundtrip():
    g = from_config(two_component_config())
    h = g.relabel((1, 4, 3, 2))
    # old edge 2 is now labeled 4 and vice versa; geometry unchanged
    assert h.edge(4).source == "v1" and h.edge(4).target == "v2"
    assert h.map(4).b == Fraction(-1, 2)
    assert h.edge(2).source == "v2" and h.map(2).b == Fraction(3, 2)
    assert h.component_hulls() == g.component_hulls()
    back = h.relabel((1, 4, 3, 2))
    assert to_config(back) == to_config(g)
    with pytest.raises(ValueError):
        g.relabel((1, 2, 3))
    with pytest.raises(ValueError):
        g.relabel((1, 2, 2, 4))


def test_config_roundtrip():
    for cfg in (two_component_config(), two_map_config(Fraction(5, 7)), golden_config()):
        g = from_config(cfg)
        data = to_config(g)
        h = from_config(data)
        assert to_config(h) == data
        assert g.component_hulls() == h.component_hulls()


def test_golden_config_numbers_share_field():
    g = from_config(golden_config())
    a = g.map(2).a
    b = g.map(2).b
    # arithmetic across the two parsed numbers must work (same generator)
    assert a + b == 1
    data = to_config(g)
    assert data["edges"][1]["b"] == {"coeffs": ["1", "-1"]}
