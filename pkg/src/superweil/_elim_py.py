"""Pure-Python sparse exact linear algebra kernels.

Reference implementation of the hot loops: sparse Gaussian elimination
over exact rationals and column-sparse operator composition.  The Cython
twin in _elim_fast implements the same algorithms with the same pivot
rule, so both backends produce bit-identical output; superweil.kernels
picks one at import time.

Row/vector representation: dict {index: coefficient} with no zero values.
Indices >= ncols are passive "tail" columns used for bookkeeping (they are
carried through row operations but never pivoted on).

Pivot rule (determinism contract): columns are processed in ascending
order; the pivot row for a column is the earliest-queued row whose current
leading index is that column, where rows are queued in input order and
re-queued immediately after each reduction.
"""

from __future__ import annotations

BACKEND = "python"


def _leading(row, ncols):
    lead = -1
    for k in row:
        if k < ncols and (lead < 0 or k < lead):
            lead = k
    return lead


def row_axpy(target, source, factor):
    """target += factor * source, dropping entries that cancel."""
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


def eliminate(rows, ncols, reduced=True):
    """Sparse Gaussian elimination, destructive on `rows`.

    Returns (pivots, pivot_rows, zero_rows): pivots is the ascending list
    of pivot columns, pivot_rows[k] the row with leading 1 at pivots[k]
    (fully reduced above and below when reduced=True), zero_rows the rows
    whose active part (< ncols) vanished, in elimination order, holding
    only tail entries.
    """
    buckets = {}
    zero_rows = []
    for row in rows:
        lead = _leading(row, ncols)
        if lead < 0:
            if row:
                zero_rows.append(row)
            continue
        buckets.setdefault(lead, []).append(row)

    pivots = []
    pivot_rows = []
    col = 0
    while buckets:
        if col not in buckets:
            col = min(buckets)
        queue = buckets.pop(col)
        pivot = queue[0]
        inv = 1 / pivot[col]
        if inv != 1:
            for k in list(pivot):
                pivot[k] = pivot[k] * inv
        pivots.append(col)
        pivot_rows.append(pivot)
        for row in queue[1:]:
            row_axpy(row, pivot, -row[col])
            lead = _leading(row, ncols)
            if lead < 0:
                if row:
                    zero_rows.append(row)
            else:
                buckets.setdefault(lead, []).append(row)
        col += 1

    if reduced:
        # Back-eliminate: clear each pivot column from all earlier rows.
        for k in range(len(pivots) - 1, 0, -1):
            col = pivots[k]
            prow = pivot_rows[k]
            for j in range(k):
                upper = pivot_rows[j]
                c = upper.get(col)
                if c is not None:
                    row_axpy(upper, prow, -c)
    return pivots, pivot_rows, zero_rows


def nullspace_from_rref(pivots, pivot_rows, ncols, one):
    """Kernel basis from a reduced echelon form, one vector per free column.

    Vector for free column f has entry `one` at f and -row[f] at each pivot
    column; vectors are listed by ascending free column.
    """
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: one}
        for col, row in zip(pivots, pivot_rows):
            c = row.get(f)
            if c is not None:
                vec[col] = -c
        basis.append(vec)
    return basis


def compose_cols(cols_a, cols_b):
    """Columns of A∘B from columns of A and B: out[j] = sum_i B[i,j] * A[:,i]."""
    out = []
    for col in cols_b:
        acc = {}
        for i, c in col.items():
            row_axpy(acc, cols_a[i], c)
        out.append(acc)
    return out
