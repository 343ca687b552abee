"""Lattice polytopes with exact facet descriptions.

Facets are found by the double description method on the cone of
inequalities satisfied by the vertices; everything is integer arithmetic.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from . import kernels
from .lattice import (express_in_basis, primitive, rank, rational_nullspace,
                      integral_vector, sublattice_from_generators, SublatticeBasis)


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: int

    def slack(self, x: Sequence[int]) -> int:
        return self.offset - sum(a * b for a, b in zip(self.normal, x))


@dataclass(frozen=True)
class LatticePolytope:
    """Full-dimensional lattice polytope with the origin in its interior.

    ``facets`` hold inequalities ``<normal, x> <= offset`` with primitive
    integer normals.
    """
    lattice_dim: int
    vertices: tuple
    facets: tuple
    sublattice_index: int = 1

    def facet_vertices(self, i: int) -> frozenset:
        f = self.facets[i]
        return frozenset(k for k, v in enumerate(self.vertices) if f.slack(v) == 0)

    def contains(self, x: Sequence[int]) -> bool:
        return all(f.slack(x) >= 0 for f in self.facets)

    def to_json(self) -> dict:
        return {
            "lattice_dim": self.lattice_dim,
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(f.normal), "offset": f.offset} for f in self.facets],
            "sublattice_index": self.sublattice_index,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LatticePolytope":
        vertices = tuple(tuple(int(a) for a in v) for v in data["vertices"])
        if "facets" in data and data["facets"]:
            facets = tuple(Facet(tuple(int(a) for a in f["normal"]), int(f["offset"]))
                           for f in data["facets"])
            p = cls(int(data["lattice_dim"]), vertices, facets,
                    int(data.get("sublattice_index", 1)))
            _validate(p)
            return p
        p = hull_facets(vertices)
        return cls(p.lattice_dim, p.vertices, p.facets, int(data.get("sublattice_index", 1)))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class FaceDescriptor:
    tight_facet_indices: frozenset
    vertex_indices: frozenset
    dim: int


def _validate(p: LatticePolytope) -> None:
    for v in p.vertices:
        if not p.contains(v):
            raise PolytopeError("vertex violates a facet inequality")
    for i in range(len(p.facets)):
        verts = [p.vertices[k] for k in p.facet_vertices(i)]
        if _affine_rank(verts) != p.lattice_dim - 1:
            raise PolytopeError(f"facet {i} is not supported by enough vertices")


def _affine_rank(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    return rank([[1, *p] for p in points]) - 1


def extreme_rays(a: Sequence[Sequence[int]]) -> list[tuple]:
    """Extreme rays of the pointed cone ``{x : a x >= 0}``.

    ``a`` must have full column rank.  Rays come back as primitive integer
    vectors, sorted.
    """
    rows = [tuple(r) for r in a]
    dim = len(rows[0])
    # greedy choice of dim independent rows
    basis_idx: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in basis_idx + [i]]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == dim:
                break
    if len(basis_idx) < dim:
        raise PolytopeError("constraint matrix does not have full column rank")

    # initial cone: columns of the inverse of the chosen rows
    rays: list[tuple] = []
    tight: list[frozenset] = []
    sub = [rows[i] for i in basis_idx]
    for j in range(dim):
        others = [sub[k] for k in range(dim) if k != j]
        ns = rational_nullspace(others) if others else [[1]]
        r = integral_vector(ns[0])
        if sum(x * y for x, y in zip(sub[j], r)) < 0:
            r = tuple(-x for x in r)
        rays.append(r)
        tight.append(frozenset(basis_idx[k] for k in range(dim) if k != j))

    done = set(basis_idx)
    for i in range(len(rows)):
        if i in done:
            continue
        row = rows[i]
        vals = [sum(x * y for x, y in zip(row, r)) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zero]
        new_tight = [tight[k] for k in pos] + [tight[k] | {i} for k in zero]
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if len(common) < dim - 2:
                    continue
                # combinatorial adjacency: no third ray is tight on all of common
                if any(k != p and k != q and common <= tight[k] for k in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                r = primitive([vp * b - vq * c for b, c in zip(rays[q], rays[p])])
                new_rays.append(r)
                new_tight.append(common | {i})
        rays, tight = new_rays, new_tight
        done.add(i)
    return sorted(set(rays))


def hull_facets(vertices: Sequence[Sequence[int]], sublattice_index: int = 1) -> LatticePolytope:
    pts = [tuple(int(a) for a in v) for v in vertices]
    if not pts:
        raise PolytopeError("degenerate polytope")
    n = len(pts[0])
    homog = [(1, *(-a for a in v)) for v in pts]
    if rank(homog) < n + 1:
        raise PolytopeError("degenerate polytope")
    facets = []
    for r in extreme_rays(homog):
        off, normal = r[0], r[1:]
        if off <= 0:
            raise PolytopeError("origin not interior")
        g = 0
        for a in normal:
            g = gcd(g, a)
        facets.append(Facet(tuple(a // g for a in normal), off // g))
    facets.sort(key=lambda f: (f.normal, f.offset), reverse=True)
    # drop non-extreme and repeated input points, keeping order
    seen = set()
    verts = []
    for v in pts:
        if v in seen:
            continue
        seen.add(v)
        tight_normals = [f.normal for f in facets if f.slack(v) == 0]
        if tight_normals and rank(tight_normals) == n:
            verts.append(v)
    return LatticePolytope(n, tuple(verts), tuple(facets), sublattice_index)


def delta_star_generators(d: int) -> list[tuple]:
    """The d^2 points e_i + f_j in Z^{2(d-1)}, row-major in (i, j).

    e_d and f_d are minus the sums of the other basis vectors.
    """
    if d < 2:
        raise PolytopeError("d must be at least 2")
    k = d - 1

    def e(i):
        return tuple(1 if t == i else 0 for t in range(k)) if i < k else (-1,) * k

    return [e(i) + e(j) for i in range(d) for j in range(d)]


def delta_star_basis(d: int) -> SublatticeBasis:
    return sublattice_from_generators(delta_star_generators(d))


def build_delta_star(d: int) -> LatticePolytope:
    """Convex hull of the points e_i + f_j, in coordinates of the lattice they generate."""
    gens = delta_star_generators(d)
    basis = sublattice_from_generators(gens)
    coords = [express_in_basis(g, basis) for g in gens]
    p = hull_facets(coords, sublattice_index=basis.index)
    if len(p.vertices) != d * d:
        raise PolytopeError("unexpected vertex count")
    return p


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("TORIDEGEN_THREADS", "1")))
    except ValueError:
        return 1


def lattice_points(p: LatticePolytope, threads: Optional[int] = None, backend=None) -> list[tuple]:
    """All lattice points of ``p`` in lexicographic order."""
    n = p.lattice_dim
    lo = [min(v[k] for v in p.vertices) for k in range(n)]
    hi = [max(v[k] for v in p.vertices) for k in range(n)]
    normals = [list(f.normal) for f in p.facets]
    offsets = [f.offset for f in p.facets]
    threads = threads or _thread_cap()
    firsts = list(range(lo[0], hi[0] + 1))
    if threads <= 1 or len(firsts) < 2:
        return kernels.box_points(lo, hi, normals, offsets, backend=backend)

    def slab(a):
        return kernels.box_points([a] + lo[1:], [a] + hi[1:], normals, offsets, backend=backend)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(slab, firsts))
    return [x for part in parts for x in part]


def is_reflexive(p: LatticePolytope) -> bool:
    return all(f.offset == 1 for f in p.facets)


def is_terminal_fano(p: LatticePolytope) -> bool:
    if not is_reflexive(p):
        raise PolytopeError("not reflexive")
    expected = set(p.vertices) | {(0,) * p.lattice_dim}
    return set(lattice_points(p)) == expected


def dual(p: LatticePolytope) -> LatticePolytope:
    """Polar dual of a reflexive polytope."""
    if not is_reflexive(p):
        raise PolytopeError("not reflexive")
    return hull_facets([f.normal for f in p.facets])


def faces(p: LatticePolytope) -> list[FaceDescriptor]:
    """All nonempty proper faces, from facet-vertex incidences."""
    facet_sets = [p.facet_vertices(i) for i in range(len(p.facets))]
    found = set(facet_sets)
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in found:
                    found.add(c)
                    nxt.append(c)
        frontier = nxt
    out = []
    for verts in found:
        tight = frozenset(i for i, s in enumerate(facet_sets) if verts <= s)
        dim = _affine_rank([p.vertices[k] for k in verts])
        out.append(FaceDescriptor(tight, verts, dim))
    out.sort(key=lambda f: (f.dim, sorted(f.vertex_indices)))
    return out
