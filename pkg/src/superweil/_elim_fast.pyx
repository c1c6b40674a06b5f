# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse exact linear algebra kernels.

Cython twin of superweil._elim_py: the same algorithms with the same
deterministic pivot rule, so both backends produce identical output.
Coefficients stay Python objects (gmpy2.mpq or Fraction); the win is
removing interpreter overhead from the row/column loops.
"""

BACKEND = "cython"


cdef long _leading(dict row, long ncols):
    cdef long lead = -1
    cdef long k
    for key in row:
        k = key
        if k < ncols and (lead < 0 or k < lead):
            lead = k
    return lead


cpdef void row_axpy(dict target, dict source, factor):
    """target += factor * source, dropping entries that cancel."""
    cdef object k, v, w
    for k, v in source.items():
        w = target.get(k)
        if w is None:
            target[k] = factor * v
        else:
            w = w + factor * v
            if w:
                target[k] = w
            else:
                del target[k]


def eliminate(list rows, long ncols, bint reduced=True):
    """Sparse Gaussian elimination, destructive on `rows`.

    Same contract as superweil._elim_py.eliminate.
    """
    cdef dict buckets = {}
    cdef list zero_rows = []
    cdef dict row, pivot, upper, prow
    cdef long lead, col
    cdef Py_ssize_t k, j

    for row in rows:
        lead = _leading(row, ncols)
        if lead < 0:
            if row:
                zero_rows.append(row)
            continue
        if lead in buckets:
            (<list>buckets[lead]).append(row)
        else:
            buckets[lead] = [row]

    cdef list pivots = []
    cdef list pivot_rows = []
    cdef list queue
    col = 0
    while buckets:
        if col not in buckets:
            col = min(buckets)
        queue = <list>buckets.pop(col)
        pivot = <dict>queue[0]
        inv = 1 / pivot[col]
        if inv != 1:
            for key in list(pivot):
                pivot[key] = pivot[key] * inv
        pivots.append(col)
        pivot_rows.append(pivot)
        for j in range(1, len(queue)):
            row = <dict>queue[j]
            row_axpy(row, pivot, -row[col])
            lead = _leading(row, ncols)
            if lead < 0:
                if row:
                    zero_rows.append(row)
            elif lead in buckets:
                (<list>buckets[lead]).append(row)
            else:
                buckets[lead] = [row]
        col += 1

    if reduced:
        for k in range(len(pivots) - 1, 0, -1):
            col = pivots[k]
            prow = <dict>pivot_rows[k]
            for j in range(k):
                upper = <dict>pivot_rows[j]
                c = upper.get(col)
                if c is not None:
                    row_axpy(upper, prow, -c)
    return pivots, pivot_rows, zero_rows


def nullspace_from_rref(list pivots, list pivot_rows, long ncols, one):
    """Kernel basis from reduced echelon form; same contract as the Python twin."""
    cdef set pivot_set = set(pivots)
    cdef list basis = []
    cdef long f
    cdef dict vec, row
    cdef Py_ssize_t k
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: one}
        for k in range(len(pivots)):
            row = <dict>pivot_rows[k]
            c = row.get(f)
            if c is not None:
                vec[pivots[k]] = -c
        basis.append(vec)
    return basis


def compose_cols(list cols_a, list cols_b):
    """Columns of A∘B from columns of A and B: out[j] = sum_i B[i,j] * A[:,i]."""
    cdef list out = []
    cdef dict col, acc
    for col in cols_b:
        acc = {}
        for i, c in col.items():
            row_axpy(acc, <dict>cols_a[i], c)
        out.append(acc)
    return out
