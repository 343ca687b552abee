"""Mirror Laurent systems, relation semigroups and period series.

Three routes to the period of the V_d mirror family live here: the main period
summed over nonnegative ray relations, the residue period extracted as
constant terms of powers of the Laurent polynomial F, and the closed form
((dm)!)^2 / (m!)^(2d).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, prod
from typing import Sequence, Union

from . import kernels
from .fan import (Fan, face_fan, is_admissible, is_cartier, is_semiample,
                  normalized_anticanonical)
from .lattice import integer_inverse, rank
from .polynomial import Polynomial
from .polytope import build_delta_star, delta_star_generators, extreme_rays


class MirrorError(ValueError):
    pass


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return factorial(n)


@dataclass(frozen=True)
class NefPartition:
    fan: Fan
    parts: tuple

    def __post_init__(self):
        k = len(self.fan.rays)
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        seen: set = set()
        for p in parts:
            if not p:
                raise MirrorError("empty part")
            if seen & p:
                raise MirrorError("parts are not disjoint")
            seen |= p
        if seen != set(range(k)):
            raise MirrorError("parts do not cover the rays")
        for i, p in enumerate(parts):
            values = [int(j in p) for j in range(k)]
            if not is_cartier(self.fan, values):
                raise MirrorError(f"divisor of part {i} is not Cartier")
            if not is_semiample(self.fan, values):
                raise MirrorError(f"divisor of part {i} is not semiample")


@dataclass(frozen=True)
class PeriodSeries:
    coefficients: tuple
    variable: str = "z"

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, m: int) -> int:
        return self.coefficients[m]

    def to_json(self) -> dict:
        return {"variable": self.variable, "order": self.order,
                "coefficients": [str(c) for c in self.coefficients]}


@dataclass(frozen=True)
class ContingencyTable:
    d: int
    entries: tuple
    margin: int

    def __post_init__(self):
        if any(sum(row) != self.margin for row in self.entries):
            raise MirrorError("row sum differs from margin")
        if any(sum(col) != self.margin for col in zip(*self.entries)):
            raise MirrorError("column sum differs from margin")

    def flat(self) -> tuple:
        return tuple(x for row in self.entries for x in row)


ParamPower = tuple  # ("t0", k): the coefficient is t0**k
Coefficient = Union[int, Fraction, ParamPower]


@dataclass(frozen=True)
class LaurentSystem:
    """Equations ``1 = F_i`` in ``n_vars`` torus variables.

    Each ``F_i`` is a Laurent polynomial with one extra trailing variable for
    the deformation parameter.
    """
    n_vars: int
    equations: tuple
    parameter: str = "t0"

    def to_json(self) -> dict:
        return {"n_vars": self.n_vars, "parameter": self.parameter,
                "equations": [e.to_json() for e in self.equations]}


def is_relation(f: Fan, l: Sequence[int]) -> bool:
    return all(sum(c * r[a] for c, r in zip(l, f.rays)) == 0 for a in range(f.dim))


def _split_basis(f: Fan) -> tuple[list[int], list[int]]:
    """Indices of free rays and of a linearly independent set of dim rays."""
    basis: list[int] = []
    for i in reversed(range(len(f.rays))):
        if rank([f.rays[j] for j in basis + [i]]) > len(basis):
            basis.append(i)
            if len(basis) == f.dim:
                break
    if len(basis) < f.dim:
        raise MirrorError("rays do not span the lattice")
    basis.sort()
    free = [i for i in range(len(f.rays)) if i not in basis]
    return free, basis


def _weighted_relations(f: Fan, weights: Sequence[int], bound: int, backend=None) -> list[tuple]:
    """Nonnegative relations l with sum(weights * l) <= bound; weights positive."""
    free, basis = _split_basis(f)
    adj, det = integer_inverse([f.rays[i] for i in basis])
    raw = kernels.nonneg_relations([f.rays[i] for i in free], [weights[i] for i in free],
                                   adj, det, [weights[i] for i in basis], bound, backend=backend)
    out = []
    nf = len(free)
    for row in raw:
        l = [0] * len(f.rays)
        for i, v in zip(free, row[:nf]):
            l[i] = v
        for i, v in zip(basis, row[nf:]):
            l[i] = v
        out.append(tuple(l))
    out.sort(key=lambda l: (sum(l), l))
    return out


def enumerate_L(f: Fan, degree_bound: int, backend=None) -> list[tuple]:
    """Nonnegative integer relations among the rays with total size <= degree_bound."""
    if degree_bound < 0:
        return []
    return _weighted_relations(f, [1] * len(f.rays), degree_bound, backend=backend)


def pairing(l: Sequence[int], part) -> int:
    return sum(l[j] for j in part)


def _positive_shift(f: Fan, psi: Sequence[int]) -> list[Fraction]:
    """Ray values psi - lambda that are all positive, for some linear lambda.

    Maximizes the smallest shifted value exactly over the vertices of
    {(lambda, s) : <lambda, e_j> + s <= psi_j}.  Such a shift exists iff every
    nonzero nonnegative relation has positive psi-degree.
    """
    if all(v > 0 for v in psi):
        return [Fraction(v) for v in psi]
    n = f.dim
    # homogenized cone in (x0, lambda, s)
    rows = [(v, *(-a for a in r), -1) for v, r in zip(psi, f.rays)]
    rows.append((1,) + (0,) * (n + 1))
    best = None
    for ray in extreme_rays(rows):
        x0 = ray[0]
        if x0 <= 0:
            continue
        s = Fraction(ray[-1], x0)
        if best is None or s > best[0]:
            best = (s, [Fraction(a, x0) for a in ray[1:-1]])
    if best is None or best[0] <= 0:
        raise MirrorError("series not graded")
    lam = best[1]
    return [Fraction(v) - sum(a * b for a, b in zip(lam, r)) for v, r in zip(psi, f.rays)]


def relation_coefficient(l: Sequence[int], parts) -> int:
    """prod_i <l, D_i>! / prod_j l_j!, checked to be an integer."""
    num = prod(_fact(pairing(l, p)) for p in parts)
    den = prod(_fact(x) for x in l)
    q, r = divmod(num, den)
    if r:
        raise MirrorError("non-integral period coefficient; partition is invalid")
    return q


def main_period(np: NefPartition, psi: Sequence[int], order: int, variable: str = "t0",
                backend=None) -> PeriodSeries:
    """Main period specialized along a_j = t0^psi(e_j), up to t0^order."""
    f = np.fan
    if len(psi) != len(f.rays):
        raise MirrorError("one psi value per ray required")
    if any(Fraction(v).denominator != 1 for v in psi):
        raise MirrorError("psi must be integral")
    psi = [int(v) for v in psi]
    ok, _ = is_admissible(f, psi)
    if not ok:
        raise MirrorError("psi is not piecewise linear on the fan")
    if order < 0:
        raise MirrorError("negative order")
    coeffs = [0] * (order + 1)
    shifted = _positive_shift(f, psi)
    den = 1
    for w in shifted:
        den = den * w.denominator // gcd(den, w.denominator)
    weights = [int(w * den) for w in shifted]
    for l in _weighted_relations(f, weights, order * den, backend=backend):
        grade = sum(a * b for a, b in zip(psi, l))
        if grade < 0 or grade > order:
            # shifted and unshifted degrees agree on relations
            raise MirrorError("inconsistent grading")
        coeffs[grade] += relation_coefficient(l, np.parts)
    return PeriodSeries(tuple(coeffs), variable)


def contingency_tables(d: int, m: int, backend=None) -> list[ContingencyTable]:
    """d x d tables with all margins m, largest leading entries first."""
    if d < 1 or m < 0:
        raise MirrorError("need d >= 1 and m >= 0")
    out = []
    for flat in kernels.contingency_tables(d, m, backend=backend):
        rows = tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(d))
        out.append(ContingencyTable(d, rows, m))
    return out


def table_identity_check(d: int, m: int, backend=None) -> tuple[int, int]:
    """Both sides of sum_K (m!)^d / prod k_ij! = (dm)! / (m!)^d."""
    if d < 1 or m < 0:
        raise MirrorError("need d >= 1 and m >= 0")
    mf = Fraction(_fact(m)) ** d
    lhs = Fraction(0)
    for flat in kernels.contingency_tables(d, m, backend=backend):
        lhs += mf / prod(_fact(k) for k in flat)
    if lhs.denominator != 1:
        raise MirrorError("table sum is not integral")
    rhs, r = divmod(_fact(d * m), _fact(m) ** d)
    assert r == 0
    return int(lhs), rhs


def closed_form_coefficient(d: int, m: int) -> int:
    num = _fact(d * m) ** 2
    q, r = divmod(num, _fact(m) ** (2 * d))
    assert r == 0, "closed form is not integral"
    return q


def closed_form_series(d: int, order: int) -> PeriodSeries:
    return PeriodSeries(tuple(closed_form_coefficient(d, m) for m in range(order + 1)))


def vdn_mirror_family(d: int) -> LaurentSystem:
    """1 = F(t, u, z): monomials t_i u_j with z on the d monomials having i = d.

    Exponents are in the ambient coordinates (t_1..t_{d-1}, u_1..u_{d-1}).
    """
    if d < 2:
        raise MirrorError("d must be at least 2")
    n = 2 * (d - 1)
    terms = {}
    for idx, h in enumerate(delta_star_generators(d)):
        i = idx // d
        terms[h + (int(i == d - 1),)] = 1
    return LaurentSystem(n, (Polynomial(n + 1, terms, laurent=True),), parameter="z")


def mirror_equations(np: NefPartition, coeffs: Sequence[Coefficient], parameter: str = "t0") -> LaurentSystem:
    """One equation 1 = sum_{j in J_i} a_j t^{e_j} per part."""
    f = np.fan
    if len(coeffs) != len(f.rays):
        raise MirrorError("one coefficient per ray required")
    eqs = []
    for part in np.parts:
        terms = {}
        for j in sorted(part):
            c = coeffs[j]
            if isinstance(c, tuple):
                exp, val = f.rays[j] + (int(c[1]),), 1
            else:
                exp, val = f.rays[j] + (0,), Fraction(c)
            terms[exp] = terms.get(exp, 0) + val
        eqs.append(Polynomial(f.dim + 1, terms, laurent=True))
    return LaurentSystem(f.dim, tuple(eqs), parameter=parameter)


def psi_coefficients(psi: Sequence[int], parameter: str = "t0") -> list[ParamPower]:
    return [(parameter, int(v)) for v in psi]


def vdn_setup(d: int) -> tuple[NefPartition, tuple]:
    """Face fan of Delta*_d with the single full part and psi vanishing on the i < d rays."""
    f = face_fan(build_delta_star(d))
    facet = _first_row_facet(f, d)
    psi = normalized_anticanonical(f, facet)
    return NefPartition(f, (frozenset(range(len(f.rays))),)), psi


def _first_row_facet(f: Fan, d: int) -> int:
    target = tuple(range(d * (d - 1)))
    for ci, cone in enumerate(f.max_cones):
        if tuple(cone) == target:
            return ci
    raise MirrorError("facet spanned by the rays with i < d not found")


def vdn_main_period(d: int, order: int, backend=None) -> PeriodSeries:
    """Main period of the V_d mirror as a series in z = t0^d."""
    np, psi = vdn_setup(d)
    raw = main_period(np, psi, order * d, backend=backend)
    out = []
    for g, c in enumerate(raw.coefficients):
        if g % d:
            if c:
                raise MirrorError("psi-degree not divisible by d")
            continue
        out.append(c)
    return PeriodSeries(tuple(out), "z")


def residue_period(d: int, order: int, method: str = "laurent") -> PeriodSeries:
    """Coefficients of sum_N CT(F^N) in powers of z.

    ``method="laurent"`` expands powers of the mirror Laurent polynomial and
    reads off torus constant terms; ``method="tables"`` sums
    (dm)!/prod k_ij! over contingency tables.
    """
    if d < 2:
        raise MirrorError("d must be at least 2")
    if method == "tables":
        coeffs = []
        for m in range(order + 1):
            n = d * m
            coeffs.append(sum(_fact(n) // prod(_fact(k) for k in flat)
                              for flat in kernels.contingency_tables(d, m)))
        return PeriodSeries(tuple(coeffs))
    if method != "laurent":
        raise MirrorError(f"unknown method {method!r}")
    F = vdn_mirror_family(d).equations[0]
    nv = F.n_vars - 1
    fterms = [(e, int(c)) for e, c in F.terms.items()]
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    power = {(0,) * (nv + 1): 1}
    # every constant term of F^N has z-degree N/d
    for _ in range(d * order):
        nxt: dict = {}
        for e1, c1 in power.items():
            for e2, c2 in fterms:
                zdeg = e1[nv] + e2[nv]
                if zdeg > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                nxt[e] = nxt.get(e, 0) + c1 * c2
        power = {e: c for e, c in nxt.items() if c}
        for e, c in power.items():
            if not any(e[:nv]):
                coeffs[e[nv]] += c
    return PeriodSeries(tuple(coeffs))


def quintic_setup() -> tuple[NefPartition, tuple]:
    from .fan import projective_space_fan
    f = projective_space_fan(4)
    return NefPartition(f, (frozenset(range(5)),)), (0, 0, 0, 0, 1)


def table_to_relation(t: ContingencyTable) -> tuple:
    return t.flat()
