"""Weight orders, initial parts and toric degenerations of subalgebras."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .lattice import kernel_basis, transpose
from .polynomial import Polynomial


class DegenerationError(ValueError):
    pass


@dataclass(frozen=True)
class WeightOrder:
    weights: tuple

    def weight(self, exp: Sequence[int]) -> int:
        return sum(a * w for a, w in zip(exp, self.weights))


@dataclass(frozen=True)
class GeneratorSet:
    generators: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.generators) != len(self.labels):
            raise DegenerationError("one label per generator required")
        if len(set(self.labels)) != len(self.labels):
            raise DegenerationError("labels must be unique")

    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.generators],
                "labels": [list(l) if isinstance(l, tuple) else l for l in self.labels]}


def initial_part(f: Polynomial, w: WeightOrder) -> Polynomial:
    """Sum of the terms of ``f`` of maximal weight."""
    if f.is_zero():
        raise DegenerationError("zero polynomial has no initial part")
    if len(w.weights) != f.n_vars:
        raise DegenerationError("weight vector length differs from variable count")
    top = max(w.weight(e) for e in f.terms)
    return Polynomial(f.n_vars, {e: c for e, c in f.terms.items() if w.weight(e) == top},
                      f.laurent)


def sturmfels_weights(r: int, s: int) -> WeightOrder:
    """Weight (j-1) * s^(i-1) on X_ij, row-major over the r x s matrix."""
    if not 2 <= r <= s:
        raise DegenerationError("need 2 <= r <= s")
    return WeightOrder(tuple((j - 1) * s ** (i - 1) for i in range(1, r + 1) for j in range(1, s + 1)))


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def plucker_minors(r: int, s: int) -> GeneratorSet:
    """Maximal minors of the generic r x s matrix, labeled by 1-based column tuples."""
    if not 2 <= r <= s:
        raise DegenerationError("need 2 <= r <= s")
    nv = r * s
    gens, labels = [], []
    for cols in combinations(range(s), r):
        terms = {}
        for p in permutations(range(r)):
            exp = [0] * nv
            # row i uses column cols[p[i]]
            for i in range(r):
                exp[i * s + cols[p[i]]] += 1
            terms[tuple(exp)] = _perm_sign(p)
        gens.append(Polynomial(nv, terms))
        labels.append(tuple(c + 1 for c in cols))
    return GeneratorSet(tuple(gens), tuple(labels))


def diagonal_monomial(r: int, s: int, cols: Sequence[int]) -> tuple:
    exp = [0] * (r * s)
    for i, c in enumerate(cols):
        exp[i * s + c - 1] = 1
    return tuple(exp)


def initial_terms_diagonal_check(r: int, s: int) -> bool:
    w = sturmfels_weights(r, s)
    g = plucker_minors(r, s)
    for f, cols in zip(g.generators, g.labels):
        init = initial_part(f, w)
        if len(init) != 1 or next(iter(init.terms)) != diagonal_monomial(r, s, cols):
            return False
    return True


def initial_exponents(g: GeneratorSet, w: WeightOrder) -> list[tuple]:
    out = []
    for i, f in enumerate(g.generators):
        init = initial_part(f, w)
        if len(init) != 1:
            raise DegenerationError(f"weight order not generic for generator {i}")
        out.append(next(iter(init.terms)))
    return out


def initial_algebra_relations(g: GeneratorSet, w: WeightOrder) -> list[tuple[tuple, tuple]]:
    """Binomial relations among the initial monomials, from a kernel lattice basis.

    Each pair ``(u, v)`` means prod m_i^u_i = prod m_i^v_i.
    """
    exps = initial_exponents(g, w)
    ker = kernel_basis(transpose(exps))
    pairs = []
    for k in ker:
        u = tuple(max(a, 0) for a in k)
        v = tuple(max(-a, 0) for a in k)
        pairs.append((u, v))
    return pairs


@dataclass(frozen=True)
class FamilyMember:
    """f(t^-w1 u1, ..., t^-wn un) scaled by t^wmax, with t kept formal."""
    base: Polynomial
    order: WeightOrder

    @property
    def top_weight(self) -> int:
        return max(self.order.weight(e) for e in self.base.terms)

    def family_polynomial(self) -> Polynomial:
        """The normalized family as a polynomial with t appended as the last variable."""
        top = self.top_weight
        return Polynomial(self.base.n_vars + 1,
                          {e + (top - self.order.weight(e),): c for e, c in self.base.terms.items()},
                          self.base.laurent)

    def limit(self) -> Polynomial:
        return initial_part(self.base, self.order)


def degenerate(f: Polynomial, w: WeightOrder) -> FamilyMember:
    if f.is_zero():
        raise DegenerationError("zero polynomial has no initial part")
    if len(w.weights) != f.n_vars:
        raise DegenerationError("weight vector length differs from variable count")
    return FamilyMember(f, w)


def specialize(fm: FamilyMember, t) -> Polynomial:
    """Member of the normalized family at parameter ``t``.

    ``t = 0`` gives the limit member, which is the initial part.
    """
    t = Fraction(t)
    if t == 0:
        return fm.limit()
    fam = fm.family_polynomial()
    return fam.substitute(fam.n_vars - 1, t).drop_variable(fam.n_vars - 1)
