import itertools
import json

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from toridegen.lattice import express_in_basis, rank, rational_nullspace, integral_vector
from toridegen.polytope import (Facet, LatticePolytope, PolytopeError, build_delta_star,
                                delta_star_basis, dual, faces, hull_facets, is_reflexive,
                                is_terminal_fano, lattice_points)

from conftest import delta_star

SQUARE = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
DIAMOND = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def brute_force_facets(vertices):
    """Facets as primitive (normal, offset) by trying every n-subset of vertices."""
    n = len(vertices[0])
    out = set()
    for sub in itertools.combinations(vertices, n):
        rows = [(*v, -1) for v in sub]
        if rank(rows) < n:
            continue
        ns = rational_nullspace(rows)
        if len(ns) != 1:
            continue
        r = integral_vector(ns[0])
        normal, off = r[:n], r[n]
        vals = [sum(a * b for a, b in zip(normal, v)) for v in vertices]
        if all(x <= off for x in vals):
            out.add((normal, off))
        elif all(x >= off for x in vals):
            out.add((tuple(-a for a in normal), -off))
    return out


def facet_set(p):
    return {(f.normal, f.offset) for f in p.facets}


def test_square_facets():
    p = hull_facets(SQUARE)
    assert facet_set(p) == {((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)}


def test_diamond_facets():
    p = hull_facets(DIAMOND)
    assert facet_set(p) == {((a, b), 1) for a in (1, -1) for b in (1, -1)}


@pytest.mark.parametrize("d", [2, 3, 4])
def test_delta_star_facets_match_brute_force(d):
    p = delta_star(d)
    assert facet_set(p) == brute_force_facets(list(p.vertices))
    # product of two (d-1)-simplices: 2d facets with d(d-1) vertices each
    assert len(p.facets) == 2 * d
    assert all(len(p.facet_vertices(i)) == d * (d - 1) for i in range(len(p.facets)))


def test_random_polytopes_match_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(2, 4))
        pts = [tuple(int(x) for x in rng.integers(-3, 4, n)) for _ in range(n + 4)]
        pts += [tuple(3 if i == j else 0 for j in range(n)) for i in range(n)] + [(-3,) * n]
        p = hull_facets(pts)
        assert facet_set(p) == brute_force_facets(list(p.vertices))
        # vertices are exactly the extreme points
        hull = ConvexHull(np.array(pts, dtype=float))
        assert set(p.vertices) == {pts[i] for i in hull.vertices}


def test_hull_errors():
    with pytest.raises(PolytopeError, match="origin not interior"):
        hull_facets([(0, 0), (1, 0), (0, 1), (1, 1)])
    with pytest.raises(PolytopeError, match="degenerate polytope"):
        hull_facets([(1, 1), (-1, -1), (2, 2)])


def test_hull_drops_interior_points():
    p = hull_facets(SQUARE + [(0, 0), (1, 0)])
    assert set(p.vertices) == set(SQUARE)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_build_delta_star_shape(d):
    p = delta_star(d)
    assert p.lattice_dim == 2 * (d - 1)
    assert len(p.vertices) == d * d
    assert all(f.offset > 0 for f in p.facets)
    assert p.sublattice_index == d


def test_build_delta_star_vertex_order():
    from toridegen.polytope import delta_star_generators
    b = delta_star_basis(3)
    gens = delta_star_generators(3)
    assert list(delta_star(3).vertices) == [express_in_basis(g, b) for g in gens]
    assert gens[0] == (1, 0, 1, 0) and gens[-1] == (-1, -1, -1, -1)


def test_build_delta_star_rejects_small_d():
    with pytest.raises(PolytopeError):
        build_delta_star(1)


def hull_membership_oracle(p):
    """Lattice points by qhull equations, independent of the exact facets."""
    verts = np.array(p.vertices, dtype=float)
    hull = ConvexHull(verts)
    lo = verts.min(axis=0).astype(int)
    hi = verts.max(axis=0).astype(int)
    out = []
    for x in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if np.all(hull.equations[:, :-1] @ np.array(x) + hull.equations[:, -1] <= 1e-9):
            out.append(x)
    return out


def test_lattice_points_square():
    assert len(lattice_points(hull_facets(SQUARE))) == 9


@pytest.mark.parametrize("d,count", [(2, 5), (3, 10), (4, 17)])
def test_lattice_points_delta_star(d, count, backend):
    p = delta_star(d)
    pts = lattice_points(p, backend=backend)
    assert len(pts) == count
    assert pts == sorted(pts)
    assert pts == hull_membership_oracle(p)


def test_lattice_points_threads_agree():
    p = delta_star(3)
    assert lattice_points(p, threads=4) == lattice_points(p, threads=1)


def test_reflexive_examples():
    assert is_reflexive(hull_facets(SQUARE))
    assert not is_reflexive(hull_facets([(-1,), (2,)]))
    for d in (2, 3, 4):
        assert is_reflexive(delta_star(d))


def test_terminal_examples():
    assert not is_terminal_fano(hull_facets(SQUARE))
    assert is_terminal_fano(hull_facets(DIAMOND))
    for d in (2, 3, 4):
        assert is_terminal_fano(delta_star(d))
    with pytest.raises(PolytopeError, match="not reflexive"):
        is_terminal_fano(hull_facets([(-1,), (2,)]))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_double_dual(d):
    p = delta_star(d)
    assert set(dual(dual(p)).vertices) == set(p.vertices)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_vertex_incidence(d):
    p = delta_star(d)
    for v in p.vertices:
        slacks = [f.slack(v) for f in p.facets]
        assert min(slacks) == 0
        assert sum(s == 0 for s in slacks) >= 2 * (d - 1)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_lattice_points_swap_symmetry(d):
    p = delta_star(d)
    b = delta_star_basis(d)
    k = d - 1
    pts = set(lattice_points(p))
    for x in pts:
        amb = tuple(sum(c * v[j] for c, v in zip(x, b.basis)) for j in range(2 * k))
        swapped = amb[k:] + amb[:k]
        assert express_in_basis(swapped, b) in pts


def test_faces_of_square():
    fs = faces(hull_facets(SQUARE))
    assert sorted(f.dim for f in fs) == [0, 0, 0, 0, 1, 1, 1, 1]


def test_faces_of_delta_star_three():
    fs = faces(delta_star(3))
    # faces of a product of triangles: products of nonempty faces, minus the whole
    assert len(fs) == 7 * 7 - 1
    squares = [f for f in fs if f.dim == 2 and len(f.vertex_indices) == 4]
    assert len(squares) == 9


def test_json_round_trip(tmp_path):
    p = delta_star(3)
    path = tmp_path / "p.json"
    path.write_text(p.dumps())
    q = LatticePolytope.from_json(json.loads(path.read_text()))
    assert q == p
    assert q.dumps() == p.dumps()


def test_json_rejects_bad_facets():
    data = hull_facets(SQUARE).to_json()
    data["facets"][0]["offset"] = 0
    with pytest.raises(PolytopeError):
        LatticePolytope.from_json(data)


def test_facet_slack():
    assert Facet((1, 0), 1).slack((1, 5)) == 0
