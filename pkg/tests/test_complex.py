import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hrdet.complex import (
    FIXTURE_NAMES,
    ComplexError,
    NonOrientable,
    NotPseudomanifold,
    SimplicialComplex,
    closed_star,
    f_h_vectors,
    fixture,
    is_homology_manifold,
    is_pseudomanifold,
    link,
    orient,
    orientation_violations,
    reduced_betti,
    stellar_subdivide,
    strongly_connected,
    topology_report,
)

SPHERES = [n for n in FIXTURE_NAMES if not n.startswith("rp2")]


@pytest.mark.parametrize(
    "name, f, h",
    [
        ("s0", [1, 2], [1, 1]),
        ("simplex_boundary:3", [1, 4, 6, 4], [1, 1, 1, 1]),
        ("sigma:2", [1, 4, 4], [1, 2, 1]),
        ("cycle:5", [1, 5, 5], [1, 3, 1]),
        ("octahedron", [1, 6, 12, 8], [1, 3, 3, 1]),
        ("rp2", [1, 6, 15, 10], [1, 3, 6, 0]),
    ],
)
def test_known_face_numbers(name, f, h):
    assert f_h_vectors(fixture(name)) == (f, h)


@pytest.mark.parametrize("name", SPHERES)
def test_spheres(name):
    c = fixture(name)
    report = topology_report(c)
    assert report.is_homology_sphere and report.connected or c.d == 1
    _, h = f_h_vectors(c)
    assert h == h[::-1]
    assert sum(h) == len(c.facets)
    assert orientation_violations(c, orient(c)) == []


def test_projective_plane_depends_on_characteristic():
    c = fixture("rp2")
    assert reduced_betti(c, 0) == [0, 0, 0]
    assert reduced_betti(c, 2) == [0, 1, 1]
    assert is_homology_manifold(c, 2)
    with pytest.raises(NonOrientable):
        orient(c)
    o = orient(c, 2)
    assert o.char2 and set(o.sign.values()) == {1}


def test_suspended_projective_plane_is_a_singular_pseudomanifold():
    c = fixture("rp2_suspension")
    assert is_pseudomanifold(c)
    # the suspension points have the projective plane as link
    assert not is_homology_manifold(c, 0)
    assert not is_homology_manifold(c, 2)
    with pytest.raises(NonOrientable):
        orient(c)


def test_seed_convention():
    c = fixture("sigma:3")
    assert orient(c)[c.facets[0]] == 1
    s = fixture("s0")
    assert orient(s)[(1,)] == -1 and orient(s)[(2,)] == 1


def test_flip_reverses_every_sign():
    c = fixture("octahedron")
    o = orient(c)
    assert all(o.flipped()[f] == -o[f] for f in c.facets)
    assert orientation_violations(c, o.flipped()) == []
    bad = o.with_sign(c.facets[-1], -o[c.facets[-1]])
    assert len(orientation_violations(c, bad)) == c.d


def test_link_and_star():
    c = fixture("octahedron")
    lk = link(c, (1,))
    assert lk.facets == ((3, 5), (3, 6), (4, 5), (4, 6))
    assert link(c, (1, 3, 5)) is None
    assert list(closed_star(c, (1,)).facets) == c.facets_containing((1,))
    with pytest.raises(ComplexError):
        link(c, (1, 2))


def test_non_pseudomanifolds_are_rejected():
    c = SimplicialComplex(4, [(1, 2), (1, 3), (1, 4)])
    assert not is_pseudomanifold(c)
    with pytest.raises(NotPseudomanifold):
        orient(c)


def test_fixture_errors():
    with pytest.raises(KeyError):
        fixture("klein_bottle")
    with pytest.raises(KeyError):
        fixture("sigma")


def test_json_roundtrip():
    c = fixture("stacked:3:2")
    assert SimplicialComplex.from_json(c.to_json()) == c


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=4), st.lists(st.integers(min_value=0, max_value=10**6), max_size=3))
def test_stellar_subdivision_preserves_spheres(d, picks):
    c = fixture(f"simplex_boundary:{d}")
    for p in picks:
        f = c.facets[p % len(c.facets)]
        old_f, old_h = f_h_vectors(c)
        c = stellar_subdivide(c, f)
        new_f, new_h = f_h_vectors(c)
        assert new_f[1] == old_f[1] + 1
        # a stellar subdivision of a facet raises h_1 .. h_{d-1} by one
        assert new_h == [old_h[0]] + [x + 1 for x in old_h[1:-1]] + [old_h[-1]]
    assert strongly_connected(c)
    assert is_homology_manifold(c)
    assert orientation_violations(c, orient(c)) == []
    with pytest.raises(ComplexError):
        stellar_subdivide(c, tuple(range(1, d)))
