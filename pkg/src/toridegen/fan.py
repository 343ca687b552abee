"""Complete fans, piecewise-linear functions on them and their invariants."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .lattice import (kernel_basis, rank, rational_nullspace, smith_invariants,
                      solve_rational, express_in_basis, sublattice_from_generators,
                      transpose)
from .polytope import LatticePolytope, extreme_rays, is_reflexive


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    rays: tuple
    max_cones: tuple
    dim: int

    @classmethod
    def from_rays_and_cones(cls, rays, cones) -> "Fan":
        rays = tuple(tuple(int(a) for a in r) for r in rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in cones)
        if not rays:
            raise FanError("fan without rays")
        return cls(rays, cones, len(rays[0]))

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        return cls.from_rays_and_cones(data["rays"], data["max_cones"])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def cone_rays(self, cone: Sequence[int]) -> list[tuple]:
        return [self.rays[i] for i in cone]


@dataclass(frozen=True)
class PLFunction:
    ray_values: tuple
    # one covector per maximal cone, in max_cones order
    linear_parts: tuple

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for lam in self.linear_parts for x in lam)


class ConeKind(enum.Enum):
    SMOOTH = "smooth"
    NODE = "node"
    OTHER = "other"


@dataclass(frozen=True)
class ConeClass:
    kind: ConeKind
    witness: tuple


def face_fan(p: LatticePolytope) -> Fan:
    if not is_reflexive(p):
        raise FanError("face fan requires a reflexive polytope")
    cones = [tuple(sorted(p.facet_vertices(i))) for i in range(len(p.facets))]
    return Fan(tuple(p.vertices), tuple(cones), p.lattice_dim)


def _in_cone_relations(f: Fan) -> list[list[Fraction]]:
    """Linear relations among the rays of each maximal cone, padded to all rays."""
    k = len(f.rays)
    rels = []
    for cone in f.max_cones:
        # relations c with sum c_i e_i = 0 over the cone's rays
        for c in rational_nullspace(transpose(f.cone_rays(cone))):
            row = [Fraction(0)] * k
            for idx, val in zip(cone, c):
                row[idx] = val
            rels.append(row)
    return rels


def pl_space_dim(f: Fan) -> int:
    rels = _in_cone_relations(f)
    return len(f.rays) - (rank(rels) if rels else 0)


def picard_rank(f: Fan) -> int:
    return pl_space_dim(f) - f.dim


def class_rank(f: Fan) -> int:
    return len(f.rays) - f.dim


def admissible_dim(f: Fan) -> int:
    return pl_space_dim(f)


def is_admissible(f: Fan, logs: Sequence) -> tuple[bool, Optional[PLFunction]]:
    """Whether ray values extend to a PL function; returns the witness when they do."""
    if len(logs) != len(f.rays):
        raise FanError("one value per ray required")
    values = tuple(Fraction(x) for x in logs)
    parts = []
    for cone in f.max_cones:
        lam = solve_rational(f.cone_rays(cone), [values[i] for i in cone])
        if lam is None:
            return False, None
        parts.append(tuple(lam))
    return True, PLFunction(values, tuple(parts))


def is_cartier(f: Fan, values: Sequence[int]) -> bool:
    ok, pl = is_admissible(f, values)
    return ok and all(Fraction(v).denominator == 1 for v in values) and pl.is_integral()


def is_semiample(f: Fan, values: Sequence[int]) -> bool:
    """Convexity of the PL function with these ray values.

    Orientation follows the anticanonical convention: the all-ones vector on a
    reflexive face fan is convex.  Each cone's linear part must stay below
    the value on every ray.
    """
    ok, pl = is_admissible(f, values)
    if not ok:
        return False
    for lam in pl.linear_parts:
        for r, v in zip(f.rays, pl.ray_values):
            if sum(a * b for a, b in zip(lam, r)) > v:
                return False
    return True


def _cartier_lattice(f: Fan) -> list[tuple]:
    """Basis of integer ray-value vectors that are PL with integral linear parts."""
    n, k = f.dim, len(f.rays)
    cones = f.max_cones
    # unknowns: one integer covector per cone; constraints: agreement on shared rays
    owner: dict[int, int] = {}
    eqs = []
    for ci, cone in enumerate(cones):
        for i in cone:
            if i not in owner:
                owner[i] = ci
                continue
            row = [0] * (n * len(cones))
            for a in range(n):
                row[owner[i] * n + a] += f.rays[i][a]
                row[ci * n + a] -= f.rays[i][a]
            eqs.append(row)
    if len(owner) != k:
        raise FanError("ray not contained in any maximal cone")
    if eqs:
        sol = kernel_basis(eqs)
    else:
        sol = [tuple(int(i == j) for j in range(n * len(cones))) for i in range(n * len(cones))]
    images = []
    for x in sol:
        images.append(tuple(sum(x[owner[i] * n + a] * f.rays[i][a] for a in range(n))
                            for i in range(k)))
    basis = sublattice_from_generators(images)
    return [tuple(b) for b in basis.basis]


def anticanonical_factor(f: Fan) -> int:
    """Multiple of the Picard generator represented by the all-ones PL function."""
    if picard_rank(f) != 1:
        raise FanError("not rank one")
    cart = sublattice_from_generators(_cartier_lattice(f))
    k = len(f.rays)
    linear = [tuple(r[a] for r in f.rays) for a in range(f.dim)]
    coords = [express_in_basis(v, cart) for v in linear]
    # integer functional on the Cartier lattice killing the linear functions
    ker = kernel_basis(coords)
    if len(ker) != 1:
        raise FanError("unexpected Picard lattice rank")
    w = ker[0]
    ones = express_in_basis((1,) * k, cart)
    return abs(sum(a * b for a, b in zip(ones, w)))


def normalized_anticanonical(f: Fan, cone_index: int) -> tuple:
    """All-ones PL function minus the linear function equal to 1 on one maximal cone.

    On a reflexive face fan this vanishes on the chosen facet's rays.
    """
    cone = f.max_cones[cone_index]
    lam = solve_rational(f.cone_rays(cone), [1] * len(cone))
    if lam is None:
        raise FanError("all-ones vector is not linear on this cone")
    vals = [1 - sum(a * b for a, b in zip(lam, r)) for r in f.rays]
    return tuple(int(v) if v.denominator == 1 else v for v in vals)


def all_cones(f: Fan) -> list[frozenset]:
    """Every nonzero cone of the fan as a set of ray indices."""
    found: set[frozenset] = set()
    for cone in f.max_cones:
        rays = f.cone_rays(cone)
        if rank(rays) < f.dim:
            # lower-dimensional max cone: take its face poset inside its span
            facet_sets = _low_dim_facets(rays, cone)
        else:
            facet_sets = []
            for u in extreme_rays(rays):
                facet_sets.append(frozenset(i for i, r in zip(cone, rays)
                                            if sum(a * b for a, b in zip(u, r)) == 0))
        local = {frozenset(cone)}
        frontier = set(facet_sets)
        local |= frontier
        while frontier:
            nxt = set()
            for a in frontier:
                for b in facet_sets:
                    c = a & b
                    if c and c not in local:
                        nxt.add(c)
            local |= nxt
            frontier = nxt
        found |= local
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def _low_dim_facets(rays, cone) -> list[frozenset]:
    # project onto a lattice basis of the span and recurse on the full-dim case
    span = sublattice_from_generators(rays)
    coords = [express_in_basis(r, span) for r in rays]
    if len(coords[0]) == 1:
        return [frozenset([i]) for i in cone]
    out = []
    for u in extreme_rays(coords):
        out.append(frozenset(i for i, r in zip(cone, coords)
                             if sum(a * b for a, b in zip(u, r)) == 0))
    return out


def is_smooth_cone(rays: Sequence[Sequence[int]]) -> bool:
    if rank(rays) != len(rays):
        return False
    return all(x == 1 for x in smith_invariants(rays))


def _is_node(rays: Sequence[Sequence[int]]) -> bool:
    if len(rays) != 4 or rank(rays) != 3:
        return False
    if not all(x == 1 for x in smith_invariants(rays)):
        return False
    ker = kernel_basis(transpose(rays))
    if len(ker) != 1:
        return False
    rel = ker[0]
    return sorted(rel) == [-1, -1, 1, 1]


def classify_cones(f: Fan) -> list[ConeClass]:
    """Minimal non-smooth cones: singular cones all of whose proper faces are smooth."""
    cones = all_cones(f)
    smooth = {c: is_smooth_cone(f.cone_rays(sorted(c))) for c in cones}
    out = []
    for c in cones:
        if smooth[c]:
            continue
        if all(smooth[b] for b in cones if b < c):
            rays = f.cone_rays(sorted(c))
            kind = ConeKind.NODE if _is_node(rays) else ConeKind.OTHER
            out.append(ConeClass(kind, tuple(sorted(c))))
    return out


def cone_relation(f: Fan, cone: Sequence[int]) -> tuple:
    """Primitive integer relation among the rays of a cone with a single relation."""
    ker = kernel_basis(transpose(f.cone_rays(cone)))
    if len(ker) != 1:
        raise FanError("cone does not have exactly one relation")
    return ker[0]


def p2_fan() -> Fan:
    return Fan.from_rays_and_cones([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])


def projective_space_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = list(combinations(range(n + 1), n))
    return Fan.from_rays_and_cones(rays, cones)


def invariant_report(f: Fan) -> dict:
    pr = picard_rank(f)
    return {
        "pl_dim": pl_space_dim(f),
        "picard_rank": pr,
        "class_rank": class_rank(f),
        "anticanonical_factor": anticanonical_factor(f) if pr == 1 else None,
        "singular_cones": [{"rays": list(c.witness),
                            "class": "node" if c.kind is ConeKind.NODE else "other"}
                           for c in classify_cones(f)],
    }
