"""Exact linear algebra over the coefficient rings in :mod:`prohecke.rings`.

Matrices are numpy object arrays whose entries are ring elements.  Vectors
are row vectors and modules are right modules, so a map ``x -> x A`` is
stored as the matrix ``A`` with rows indexed by the source basis.
"""

from __future__ import annotations

import numpy as np

from .rings import ZZ


def matrix(ring, rows, ncols=None):
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = np.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        for j in range(ncols):
            out[i, j] = ring(r[j])
    return out


def zeros(ring, r, c):
    out = np.empty((r, c), dtype=object)
    out.fill(ring.zero)
    return out


def identity(ring, n):
    out = zeros(ring, n, n)
    for i in range(n):
        out[i, i] = ring.one
    return out


def coerce(ring, a):
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = ring(v)
    return out


def mat_eq(a, b):
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.flat, b.flat))


def is_zero(a):
    return all(x == 0 for x in a.flat)


def mat_pow(ring, a, e):
    out = identity(ring, a.shape[0])
    base = a
    while e:
        if e & 1:
            out = out @ base
        base = base @ base
        e >>= 1
    return out


def kron(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.empty((ra * rb, ca * cb), dtype=object)
    for i in range(ra):
        for j in range(ca):
            out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = a[i, j] * b
    return out


def block(ring, blocks, row_sizes, col_sizes):
    """Assemble a matrix from a dict {(i, j): submatrix}."""
    r0 = np.cumsum([0] + list(row_sizes))
    c0 = np.cumsum([0] + list(col_sizes))
    out = zeros(ring, int(r0[-1]), int(c0[-1]))
    for (i, j), m in blocks.items():
        out[r0[i]:r0[i + 1], c0[j]:c0[j + 1]] = m
    return out


def det(ring, a):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = a.shape[0]
    if n == 0:
        return ring.one
    m = [[ring(x) for x in row] for row in a]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = ring.divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return ring(m[n - 1][n - 1] * sign)


def rank(ring, a):
    """Rank over the fraction field (fraction-free elimination)."""
    m = [[ring(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    prev = ring.one
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = ring.divexact(m[i][j] * m[r][c] - m[i][c] * m[r][j], prev)
            m[i][c] = ring.zero
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def inverse(ring, a):
    """Inverse of a matrix whose determinant is a unit of ``ring``."""
    n = a.shape[0]
    if ring.is_field:
        m = [[ring(x) for x in row] + [ring.one if i == j else ring.zero for j in range(n)]
             for i, row in enumerate(a)]
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            inv = ring.inverse(m[c][c])
            m[c] = [x * inv for x in m[c]]
            for i in range(n):
                if i != c and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return matrix(ring, [row[n:] for row in m], n)
    right, d = _fraction_free_gauss_jordan(ring, a)
    if not ring.is_unit(d):
        raise ZeroDivisionError(f"determinant {d} is not a unit")
    return right * ring.inverse(d)


def _fraction_free_gauss_jordan(ring, a):
    """Bareiss Gauss-Jordan on [a | I]; returns (right block, final pivot).

    At the end the left block is ``d * I`` and the right block is ``d * a^-1``.
    """
    n = a.shape[0]
    m = [[ring(x) for x in row] + [ring.one if i == j else ring.zero for j in range(n)]
         for i, row in enumerate(a)]
    prev = ring.one
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        for i in range(n):
            if i == k:
                continue
            m[i] = [ring.divexact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
                    for j in range(2 * n)]
        prev = m[k][k]
    d = m[0][0]
    assert all(m[i][i] == d for i in range(n))
    return matrix(ring, [row[n:] for row in m], n), d


def solve_left(ring, a, b):
    """Some x with x a = b for a field, or None."""
    if not ring.is_field:
        raise ValueError("solve_left needs a field")
    rows_a = [list(r) for r in a]
    n, m = a.shape
    aug = [rows_a[i] + [ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    # column echelon of a^T via row ops on the stacked rows
    basis = []
    for row in aug:
        row = [ring(x) for x in row]
        for piv, brow in basis:
            if row[piv] != 0:
                f = row[piv]
                row = [x - f * y for x, y in zip(row, brow)]
        p = next((j for j in range(m) if row[j] != 0), None)
        if p is None:
            continue
        inv = ring.inverse(row[p])
        row = [x * inv for x in row]
        new = []
        for piv, brow in basis:
            if brow[p] != 0:
                f = brow[p]
                brow = [x - f * y for x, y in zip(brow, row)]
            new.append((piv, brow))
        basis = new + [(p, row)]
    target = [ring(x) for x in b] + [ring.zero] * n
    for piv, brow in basis:
        if target[piv] != 0:
            f = target[piv]
            target = [x - f * y for x, y in zip(target, brow)]
    if any(x != 0 for x in target[:m]):
        return None
    return [-x for x in target[m:]]


class EchelonForm:
    """Row echelon basis of a submodule of R^n found with unit pivots only.

    ``pivots[k]`` is the pivot column of ``rows[k]``; each pivot entry is 1
    and every other row is zero in that column.  When the spanning set cannot
    be reduced with unit pivots, ``stuck`` holds the leftover nonzero rows and
    the submodule may fail to be a direct summand.
    """

    def __init__(self, ring, vectors, ncols):
        self.ring = ring
        self.ncols = ncols
        self.rows = []
        self.pivots = []
        self.stuck = []
        pending = [[ring(x) for x in v] for v in vectors]
        pending = [v for v in pending if any(x != 0 for x in v)]
        progress = True
        while pending and progress:
            progress = False
            left = []
            for v in pending:
                v = self.reduce(v)
                if all(x == 0 for x in v):
                    continue
                p = next((j for j in range(ncols) if v[j] != 0 and ring.is_unit(v[j])), None)
                if p is None:
                    left.append(v)
                    continue
                self._add(v, p)
                progress = True
            pending = left
        self.stuck = [v for v in (self.reduce(v) for v in pending) if any(x != 0 for x in v)]

    def _add(self, v, p):
        ring = self.ring
        inv = ring.inverse(v[p])
        v = [x * inv for x in v]
        for k, row in enumerate(self.rows):
            if row[p] != 0:
                f = row[p]
                self.rows[k] = [x - f * y for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)

    def reduce(self, v):
        v = list(v)
        for p, row in zip(self.pivots, self.rows):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    @property
    def complete(self):
        return not self.stuck

    def free_columns(self):
        ps = set(self.pivots)
        return [j for j in range(self.ncols) if j not in ps]


def smith_normal_form(a):
    """Smith form of an integer matrix: returns (d, u, v) with u a v = d."""
    a = [[int(x) for x in row] for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(x, i, j):
        x[i], x[j] = x[j], x[i]

    def swap_cols(x, i, j):
        for row in x:
            row[i], row[j] = row[j], row[i]

    def add_row(x, src, dst, f):
        x[dst] = [b + f * c for b, c in zip(x[dst], x[src])]

    def add_col(x, src, dst, f):
        for row in x:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(a, t, pi)
        swap_rows(u, t, pi)
        swap_cols(a, t, pj)
        swap_cols(v, t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    f = a[i][t] // a[t][t]
                    add_row(a, t, i, -f)
                    add_row(u, t, i, -f)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    f = a[t][j] // a[t][t]
                    add_col(a, t, j, -f)
                    add_col(v, t, j, -f)
                    if a[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                add_row(a, bad[0], t, 1)
                add_row(u, bad[0], t, 1)
                continue
            entries = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            entries += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, pi, pj = min(entries)
            swap_rows(a, t, pi)
            swap_rows(u, t, pi)
            swap_cols(a, t, pj)
            swap_cols(v, t, pj)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(a):
    """Nonzero diagonal entries of the Smith form of an integer matrix."""
    if len(a) == 0 or len(a[0]) == 0:
        return []
    d, _, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


def integer_cokernel(vectors, ncols):
    """Structure of ZZ^ncols / span(vectors): (free rank, torsion list)."""
    vectors = [[ZZ(x) for x in v] for v in vectors]
    if not vectors:
        return ncols, []
    f = invariant_factors(vectors)
    return ncols - len(f), [x for x in f if x != 1]


def left_kernel(ring, a):
    """Basis of {x : x a = 0} over a field, as a list of row vectors."""
    if not ring.is_field:
        raise ValueError("left_kernel needs a field")
    n, m = a.shape
    # row reduce a^T; the kernel of x -> x a is the null space of a^T
    rows = [[ring(a[i, j]) for i in range(n)] for j in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ring.inverse(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in piv_cols]
    out = []
    for fc in free:
        v = [ring.zero] * n
        v[fc] = ring.one
        for k, pc in enumerate(piv_cols):
            v[pc] = -rows[k][fc]
        out.append(v)
    return out
