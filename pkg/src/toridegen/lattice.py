"""Exact integer and rational linear algebra.

Matrices are plain lists of rows of Python ints (arbitrary precision).
Vectors are tuples of ints.  Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

IntVector = tuple
IntMatrix = list


class LatticeError(ValueError):
    pass


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    if not m:
        return ()
    return tuple(sum(v[i] * m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def primitive(v: Sequence[int]) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  ``h`` is in
    row echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)`` and zero rows at the bottom.
    """
    a = [list(map(int, row)) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = identity(nrows)
    p = 0
    for c in range(ncols):
        if p == nrows:
            break
        for i in range(p + 1, nrows):
            if a[i][c] == 0:
                continue
            if a[p][c] == 0:
                a[p], a[i] = a[i], a[p]
                u[p], u[i] = u[i], u[p]
                continue
            x, y = a[p][c], a[i][c]
            g, s, t = _xgcd(x, y)
            xg, yg = x // g, y // g
            rp, ri = a[p], a[i]
            a[p] = [s * e + t * f for e, f in zip(rp, ri)]
            a[i] = [-yg * e + xg * f for e, f in zip(rp, ri)]
            up, ui = u[p], u[i]
            u[p] = [s * e + t * f for e, f in zip(up, ui)]
            u[i] = [-yg * e + xg * f for e, f in zip(up, ui)]
        piv = a[p][c]
        if piv == 0:
            continue
        if piv < 0:
            a[p] = [-e for e in a[p]]
            u[p] = [-e for e in u[p]]
            piv = -piv
        for r in range(p):
            q = a[r][c] // piv
            if q:
                a[r] = [e - q * f for e, f in zip(a[r], a[p])]
                u[r] = [e - q * f for e, f in zip(u[r], u[p])]
        p += 1
    return a, u


def smith_invariants(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of ``m`` (each divides the next)."""
    a = [list(map(int, row)) for row in m]
    if not a or not a[0]:
        return []
    while True:
        a, _ = hermite_normal_form(a)
        a = [row for row in a if any(row)]
        if not a:
            return []
        a, _ = hermite_normal_form(transpose(a))
        a = [row for row in a if any(row)]
        if all(a[i][j] == 0 for i in range(len(a)) for j in range(len(a[0])) if i != j):
            break
        a = transpose(a)
    diag = [abs(a[i][i]) for i in range(min(len(a), len(a[0])))]
    diag = [x for x in diag if x]
    # diag(a, b) ~ diag(gcd, lcm)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return diag


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def solve_rational(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One solution x of ``a x = b`` over Q, or None when inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    if not aug:
        return [Fraction(0)] * ncols
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = red[i][ncols]
    return x


def rational_nullspace(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {x : m x = 0} over Q."""
    if not m:
        return []
    ncols = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, c in enumerate(piv):
            x[c] = -red[i][f]
        basis.append(x)
    return basis


def integral_vector(v: Sequence[Fraction]) -> tuple:
    """Smallest positive integer multiple of a rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def kernel_basis(m: Sequence[Sequence[int]]) -> list[tuple]:
    """Basis of the saturated integer kernel ``{k in Z^cols : m k = 0}``.

    The basis is returned in Hermite normal form, so it is canonical.
    """
    if not m:
        raise LatticeError("empty matrix")
    ncols = len(m[0])
    h, u = hermite_normal_form(transpose(m))
    kern = [u[i] for i in range(ncols) if not any(h[i])]
    if not kern:
        return []
    kh, _ = hermite_normal_form(kern)
    return [tuple(row) for row in kh if any(row)]


@dataclass(frozen=True)
class SublatticeBasis:
    ambient_dim: int
    basis: tuple
    # None when the rank is below ambient_dim (infinite index)
    index: Optional[int]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> IntMatrix:
        return [list(b) for b in self.basis]


def sublattice_from_generators(gens: Sequence[Sequence[int]]) -> SublatticeBasis:
    if not gens:
        raise LatticeError("empty generating set")
    dims = {len(g) for g in gens}
    if len(dims) != 1:
        raise LatticeError("generators have different dimensions")
    n = dims.pop()
    h, _ = hermite_normal_form(gens)
    basis = tuple(tuple(row) for row in h if any(row))
    index = None
    if len(basis) == n:
        index = 1
        for i, row in enumerate(basis):
            index *= row[i]
    return SublatticeBasis(n, basis, index)


def express_in_basis(v: Sequence[int], b: SublatticeBasis) -> tuple:
    """Integer coordinates of ``v`` with respect to the rows of ``b``."""
    if len(v) != b.ambient_dim:
        raise LatticeError("dimension mismatch")
    sol = solve_rational(transpose(b.matrix()), list(v))
    if sol is None:
        raise LatticeError("not a lattice member")
    if any(x.denominator != 1 for x in sol):
        raise LatticeError("not a lattice member")
    return tuple(int(x) for x in sol)


def integer_inverse(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, int]:
    """Return ``(adj, det)`` with ``m @ adj == det * I`` and det > 0 up to sign."""
    n = len(m)
    inv = []
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve_rational(m, e)
        if x is None:
            raise LatticeError("singular matrix")
        cols.append(x)
    den = 1
    for col in cols:
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
    for i in range(n):
        inv.append([int(cols[j][i] * den) for j in range(n)])
    return inv, den
