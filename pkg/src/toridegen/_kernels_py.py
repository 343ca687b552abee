"""Pure-Python versions of the enumeration kernels.

Each function here has a twin with an identical signature and output in the
compiled ``_ckernels`` extension.
"""


def contingency_tables(d, m):
    """All d x d nonnegative tables with every row and column sum m.

    Tables are flat row-major tuples in descending lexicographic order.
    """
    if d == 0:
        return [()]
    out = []
    cells = [0] * (d * d)
    colrem = [m] * d

    def rec(pos, rowrem):
        i, j = divmod(pos, d)
        if i == d - 1:
            # last row is forced by the column remainders
            for jj in range(d):
                cells[i * d + jj] = colrem[jj]
            out.append(tuple(cells))
            return
        if j == d - 1:
            v = rowrem
            if v > colrem[j]:
                return
            cells[pos] = v
            colrem[j] -= v
            rec(pos + 1, m)
            colrem[j] += v
            return
        for v in range(min(rowrem, colrem[j]), -1, -1):
            cells[pos] = v
            colrem[j] -= v
            rec(pos + 1, rowrem - v)
            colrem[j] += v

    if d == 1:
        return [(m,)]
    rec(0, m)
    return out


def box_points(lo, hi, normals, offsets):
    """Integer points x with lo <= x <= hi and <normal, x> <= offset for all facets.

    Output is in lexicographic order.
    """
    n = len(lo)
    out = []
    if any(l > h for l, h in zip(lo, hi)):
        return out
    x = list(lo)
    while True:
        ok = True
        for a, b in zip(normals, offsets):
            s = 0
            for k in range(n):
                s += a[k] * x[k]
            if s > b:
                ok = False
                break
        if ok:
            out.append(tuple(x))
        k = n - 1
        while k >= 0 and x[k] == hi[k]:
            x[k] = lo[k]
            k -= 1
        if k < 0:
            return out
        x[k] += 1


def nonneg_relations(free_vecs, free_w, adj, det, basis_w, bound):
    """Nonnegative integer relations split into free and basis coordinates.

    Enumerates free coefficient vectors f >= 0 with sum(free_w * f) <= bound,
    sets x = sum f_j * free_vecs[j] and solves for basis coefficients
    c = -(x @ adj) / det.  Keeps solutions where c is integral, nonnegative and
    the total weight sum(free_w*f) + sum(basis_w*c) stays within bound.
    Returns a list of tuples f + c.
    """
    kf = len(free_vecs)
    n = len(adj)
    out = []
    f = [0] * kf
    x = [0] * n

    def finish(used):
        c = []
        w = used
        for i in range(n):
            s = 0
            for k in range(n):
                s += x[k] * adj[k][i]
            s = -s
            if s % det:
                return
            q = s // det
            if q < 0:
                return
            w += basis_w[i] * q
            if w > bound:
                return
            c.append(q)
        out.append(tuple(f) + tuple(c))

    def rec(j, used):
        if j == kf:
            finish(used)
            return
        wj = free_w[j]
        vec = free_vecs[j]
        v = 0
        while used + wj * v <= bound:
            f[j] = v
            rec(j + 1, used + wj * v)
            v += 1
            for k in range(n):
                x[k] += vec[k]
        # undo the accumulated increments
        for k in range(n):
            x[k] -= v * vec[k]
        f[j] = 0

    rec(0, 0)
    return out
