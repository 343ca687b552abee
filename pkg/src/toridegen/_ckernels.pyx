# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Same signatures and outputs as ``toridegen._kernels_py``.  All arithmetic is
on C ``long long``; callers guarantee the magnitudes fit.
"""
from libc.stdlib cimport malloc, free


def contingency_tables(int d, long long m):
    if d == 0:
        return [()]
    cdef int ncell = d * d
    cdef long long *cells = <long long *>malloc(ncell * sizeof(long long))
    cdef long long *colrem = <long long *>malloc(d * sizeof(long long))
    # per-position loop state for an explicit DFS stack
    cdef long long *rowrem_at = <long long *>malloc((ncell + 1) * sizeof(long long))
    cdef int pos, i, j, jj
    cdef long long v, rowrem
    out = []
    try:
        for j in range(d):
            colrem[j] = m
        pos = 0
        rowrem_at[0] = m
        cells[0] = -1
        # cells[pos] == -1 means "not yet started"
        while pos >= 0:
            i = pos // d
            j = pos % d
            if i == d - 1:
                for jj in range(d):
                    cells[i * d + jj] = colrem[jj]
                out.append(tuple([cells[k] for k in range(ncell)]))
                pos -= 1
                continue
            rowrem = rowrem_at[pos]
            if cells[pos] == -1:
                if j == d - 1:
                    v = rowrem
                    if v > colrem[j]:
                        pos -= 1
                        continue
                else:
                    v = rowrem if rowrem < colrem[j] else colrem[j]
            else:
                colrem[j] += cells[pos]
                if j == d - 1 or cells[pos] == 0:
                    cells[pos] = -1
                    pos -= 1
                    continue
                v = cells[pos] - 1
            cells[pos] = v
            colrem[j] -= v
            if j == d - 1:
                rowrem_at[pos + 1] = m
            else:
                rowrem_at[pos + 1] = rowrem - v
            pos += 1
            if pos < ncell and (pos // d) != d - 1:
                cells[pos] = -1
    finally:
        free(cells)
        free(colrem)
        free(rowrem_at)
    return out


cdef void _scan(int n, long long *lo, long long *hi, int nf,
                long long *normals, long long *offsets,
                long long *buf, long long *count) nogil:
    cdef long long *x = buf
    cdef int k, f
    cdef long long s
    cdef bint ok
    count[0] = 0
    for k in range(n):
        if lo[k] > hi[k]:
            return
        x[k] = lo[k]
    cdef long long *dst
    while True:
        ok = True
        for f in range(nf):
            s = 0
            for k in range(n):
                s += normals[f * n + k] * x[k]
            if s > offsets[f]:
                ok = False
                break
        if ok:
            dst = buf + n * (count[0] + 1)
            for k in range(n):
                dst[k] = x[k]
            count[0] += 1
        k = n - 1
        while k >= 0 and x[k] == hi[k]:
            x[k] = lo[k]
            k -= 1
        if k < 0:
            return
        x[k] += 1


def box_points(lo, hi, normals, offsets):
    cdef int n = len(lo)
    cdef int nf = len(normals)
    cdef long long total = 1
    cdef int k, f
    for k in range(n):
        if lo[k] > hi[k]:
            return []
        total *= (hi[k] - lo[k] + 1)
    cdef long long *clo = <long long *>malloc(n * sizeof(long long))
    cdef long long *chi = <long long *>malloc(n * sizeof(long long))
    cdef long long *cnorm = <long long *>malloc((nf * n + 1) * sizeof(long long))
    cdef long long *coff = <long long *>malloc((nf + 1) * sizeof(long long))
    # slot 0 holds the running point, then one slot per accepted point
    cdef long long *buf = <long long *>malloc(n * (total + 1) * sizeof(long long))
    cdef long long count = 0
    out = []
    try:
        for k in range(n):
            clo[k] = lo[k]
            chi[k] = hi[k]
        for f in range(nf):
            coff[f] = offsets[f]
            for k in range(n):
                cnorm[f * n + k] = normals[f][k]
        with nogil:
            _scan(n, clo, chi, nf, cnorm, coff, buf, &count)
        for f in range(count):
            out.append(tuple([buf[n * (f + 1) + k] for k in range(n)]))
    finally:
        free(clo)
        free(chi)
        free(cnorm)
        free(coff)
        free(buf)
    return out


def nonneg_relations(free_vecs, free_w, adj, det, basis_w, bound):
    cdef int kf = len(free_vecs)
    cdef int n = len(adj)
    cdef long long cdet = det
    cdef long long cbound = bound
    cdef long long *vecs = <long long *>malloc((kf * n + 1) * sizeof(long long))
    cdef long long *fw = <long long *>malloc((kf + 1) * sizeof(long long))
    cdef long long *cadj = <long long *>malloc((n * n + 1) * sizeof(long long))
    cdef long long *bw = <long long *>malloc((n + 1) * sizeof(long long))
    cdef long long *f = <long long *>malloc((kf + 1) * sizeof(long long))
    cdef long long *used = <long long *>malloc((kf + 2) * sizeof(long long))
    cdef long long *x = <long long *>malloc((n + 1) * sizeof(long long))
    cdef long long *c = <long long *>malloc((n + 1) * sizeof(long long))
    cdef int i, j, k
    cdef long long s, q, w
    cdef bint ok
    out = []
    try:
        for j in range(kf):
            fw[j] = free_w[j]
            for k in range(n):
                vecs[j * n + k] = free_vecs[j][k]
        for i in range(n):
            bw[i] = basis_w[i]
            for k in range(n):
                cadj[i * n + k] = adj[i][k]
            x[i] = 0
        for j in range(kf):
            f[j] = 0
        used[0] = 0
        j = 0
        # odometer over the free coordinates; used[j] is the weight of f[:j]
        while True:
            if j == kf:
                ok = True
                w = used[kf]
                for i in range(n):
                    s = 0
                    for k in range(n):
                        s += x[k] * cadj[k * n + i]
                    s = -s
                    if s % cdet != 0:
                        ok = False
                        break
                    q = s // cdet
                    if q < 0:
                        ok = False
                        break
                    w += bw[i] * q
                    if w > cbound:
                        ok = False
                        break
                    c[i] = q
                if ok:
                    out.append(tuple([f[k] for k in range(kf)]) + tuple([c[k] for k in range(n)]))
                # advance: increment the deepest free coordinate that still fits
                j = kf - 1
                while j >= 0:
                    if used[j] + fw[j] * (f[j] + 1) <= cbound:
                        f[j] += 1
                        for k in range(n):
                            x[k] += vecs[j * n + k]
                        used[j + 1] = used[j] + fw[j] * f[j]
                        j += 1
                        break
                    for k in range(n):
                        x[k] -= f[j] * vecs[j * n + k]
                    f[j] = 0
                    j -= 1
                if j < 0:
                    break
                continue
            f[j] = 0
            used[j + 1] = used[j]
            j += 1
    finally:
        free(vecs)
        free(fw)
        free(cadj)
        free(bw)
        free(f)
        free(used)
        free(x)
        free(c)
    return out
