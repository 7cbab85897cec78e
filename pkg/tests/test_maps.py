from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from voronoi_maps.enumerate_oracle import build_iltfm, unrooted_classes
from voronoi_maps.maps import (
    BipointedQuad, IltFM, MapDomainError, PlanarMap, ambjorn_budd, check_rebound, distances,
    iltfm_code, label_bipointed, miermont_forward, miermont_inverse, parity_classify, parse,
    path3, quad_code, self_loop, serialize, validate, voronoi_areas,
)


def leaf(label):
    return (label, ())


def triangle():
    return PlanarMap.from_cycles([(0, 1), (2, 3), (4, 5)], [[0, 5], [1, 2], [3, 4]])


@pytest.fixture(scope="module")
def classes():
    return {E: list(unrooted_classes(E).values()) for E in range(1, 6)}


# rotation systems ---------------------------------------------------------


def test_self_loop_counts():
    m = self_loop().map
    assert validate(m) == []
    assert (m.n_vertices, m.n_edges, m.n_faces) == (1, 1, 2)


def test_path_counts():
    m = path3().map
    assert validate(m) == []
    assert (m.n_vertices, m.n_edges, m.n_faces) == (3, 2, 1)


def test_fixed_point_alpha_is_diagnosed():
    m = PlanarMap((0, 1), (1, 0))
    assert any("involution violation" in d for d in validate(m))


def test_disconnected_is_diagnosed():
    m = PlanarMap.from_cycles([(0, 1), (2, 3)], [[0], [1], [2], [3]])
    assert any("transitivity violation" in d for d in validate(m))


def test_non_planar_is_diagnosed():
    # one vertex, two interleaved loops: a torus
    m = PlanarMap.from_cycles([(0, 2), (1, 3)], [[0, 1, 2, 3]])
    assert any("Euler violation" in d for d in validate(m))


def test_distances():
    q = path3()
    assert distances(q.map, q.v1) == [0, 1, 2]
    t = triangle()
    for v in range(3):
        assert sorted(distances(t, v)) == [0, 1, 1]


def test_label_bipointed_path():
    q = label_bipointed(path3())
    assert list(q.map.labels) == [0, 1, 0]


def test_label_bipointed_rejects_odd_distance():
    t = triangle()
    with pytest.raises(MapDomainError):
        label_bipointed(BipointedQuad(t, 0, 1))


# bijections ---------------------------------------------------------------------


def test_forward_path3():
    q = path3()
    t = miermont_forward(q)
    assert t.check() == []
    assert (t.map.n_vertices, t.map.n_edges) == (1, 1)
    assert list(t.map.labels) == [1]
    assert iltfm_code(t) == iltfm_code(self_loop())


def test_inverse_self_loop():
    q = miermont_inverse(self_loop())
    assert quad_code(q) == quad_code(label_bipointed(path3()))


def test_ambjorn_budd_path3():
    g = ambjorn_budd(path3())
    assert (g.map.n_vertices, g.map.n_edges) == (2, 1)
    assert distances(g.map, g.v1)[g.v2] == 1


def test_voronoi_areas_examples():
    assert voronoi_areas(self_loop()) == (Fraction(1, 2), Fraction(1, 2))
    t, _ = build_iltfm((1,), ((1, (leaf(2),)),), (leaf(1),))
    assert voronoi_areas(t) == (Fraction(3, 2), Fraction(1, 2))


def test_parity_examples():
    even, _ = build_iltfm((1, 2), (leaf(1), leaf(2)), (leaf(1), leaf(2)))
    odd, _ = build_iltfm((1, 1), (leaf(1), leaf(1)), (leaf(1), leaf(1)))
    assert parity_classify(even) == ("even", 1)
    assert parity_classify(odd) == ("odd", 1)
    assert parity_classify(self_loop()) == ("odd", 1)


def test_iltfm_check_flags_bad_minimum():
    assert any("minimum label" in d for d in self_loop(label=2).check())


def test_rebound_path3():
    assert check_rebound(path3()).ok


@pytest.mark.parametrize("E", range(1, 6))
def test_exhaustive_round_trip(classes, E):
    for t in classes[E]:
        q = miermont_inverse(t)
        assert q.check() == []
        assert q.map.n_faces == E
        assert iltfm_code(miermont_forward(q)) == iltfm_code(t)


@pytest.mark.parametrize("E", range(1, 6))
def test_exhaustive_distance_and_parity(classes, E):
    for t in classes[E]:
        q = miermont_inverse(t)
        kind, s = parity_classify(t)
        assert distances(q.map, q.v1)[q.v2] == 2 * s
        ab = ambjorn_budd(q)
        assert ab.map.n_edges == E
        d1, d2 = distances(ab.map, ab.v1), distances(ab.map, ab.v2)
        assert list(ab.map.labels) == [min(a, b) for a, b in zip(d1, d2)]
        assert (d1[ab.v2] % 2 == 1) == (kind == "odd")


@pytest.mark.parametrize("E", range(1, 6))
def test_exhaustive_rebound(classes, E):
    for t in classes[E]:
        assert check_rebound(miermont_inverse(t)).ok


def test_quads_are_distinct(classes):
    for E in range(1, 6):
        codes = {quad_code(miermont_inverse(t)) for t in classes[E]}
        assert len(codes) == len(classes[E])


def test_class_counts(classes):
    assert [len(classes[E]) for E in range(1, 6)] == [1, 6, 40, 324, 2830]


# serialisation --------------------------------------------------------------


def test_serialise_round_trip_kinds():
    q = label_bipointed(path3())
    t = miermont_forward(q)
    g = ambjorn_budd(q)
    for obj in (q.map, q, t, g):
        text = serialize(obj)
        back = parse(text)
        assert serialize(back) == text


def test_parse_rejects_self_paired_dart():
    doc = '{"schema_version":1,"kind":"planar_map","darts":2,"alpha":[[0,0]],"sigma":[[0,1]]}'
    with pytest.raises(MapDomainError, match="involution violation"):
        parse(doc)


def test_parse_rejects_unknown_schema():
    with pytest.raises(MapDomainError):
        parse('{"schema_version":99}')


# properties -----------------------------------------------------------------


_POOL = [t for E in range(1, 5) for t in unrooted_classes(E).values()]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_POOL))
def test_forward_inverse_forward(t):
    q = miermont_inverse(t)
    fresh = BipointedQuad(PlanarMap(q.map.alpha, q.map.sigma), q.v1, q.v2)
    assert quad_code(miermont_inverse(miermont_forward(fresh))) == quad_code(q)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_POOL))
def test_areas_sum_to_edges(t):
    a1, a2 = voronoi_areas(t)
    assert a1 + a2 == t.n_edges
    assert min(a1, a2) >= Fraction(1, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_POOL))
def test_serialise_iltfm_preserves_class(t):
    back = parse(serialize(t))
    assert isinstance(back, IltFM)
    assert iltfm_code(back) == iltfm_code(t)
