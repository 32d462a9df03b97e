"""Matrices over a polynomial ring: determinants, Pfaffians, Jacobian duals.

Row and column deletion take 1-based indices so that signs and labels line
up with the T-variable bookkeeping used throughout the pipeline: deleting
column j of an iteration matrix pairs with the variable T_j and the sign
(-1)^(j+1).
"""

from __future__ import annotations

from itertools import combinations

from .ring import partial_column


class PolyMatrix:
    """Immutable rows x cols matrix of Polynomial entries."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, ring, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for entry in row:
                flat.append(ring.poly(entry))
        return cls(ring, nrows, ncols, flat)

    def at(self, i, j):
        """Entry in row i, column j, 0-based."""
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def to_strings(self):
        return [[str(e) for e in self.row(i)] for i in range(self.rows)]

    def transpose(self):
        flat = [self.at(i, j)
                for j in range(self.cols) for i in range(self.rows)]
        return PolyMatrix(self.ring, self.cols, self.rows, flat)

    def append_column(self, col):
        if len(col) != self.rows:
            raise ValueError("column length mismatch")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.append(self.ring.poly(col[i]))
        return PolyMatrix(self.ring, self.rows, self.cols + 1, flat)

    def __eq__(self, other):
        if isinstance(other, PolyMatrix):
            return (self.rows == other.rows and self.cols == other.cols
                    and self.entries == other.entries)
        return NotImplemented

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "PolyMatrix(%dx%d over %r)" % (self.rows, self.cols,
                                              self.ring)

    def __neg__(self):
        return PolyMatrix(self.ring, self.rows, self.cols,
                          [-e for e in self.entries])


def delete_row(m, i):
    """m without row i, 1-based."""
    if not 1 <= i <= m.rows:
        raise IndexError("row index out of range: %d" % i)
    rows = m.to_rows()
    del rows[i - 1]
    flat = [e for row in rows for e in row]
    return PolyMatrix(m.ring, m.rows - 1, m.cols, flat)


def delete_column(m, j):
    """m without column j, 1-based."""
    if not 1 <= j <= m.cols:
        raise IndexError("column index out of range: %d" % j)
    flat = []
    for i in range(m.rows):
        row = m.row(i)
        del row[j - 1]
        flat.extend(row)
    return PolyMatrix(m.ring, m.rows, m.cols - 1, flat)


def det(m):
    """Determinant by fraction-free Bareiss elimination.

    Row swaps repair zero pivots; a pivot column with no nonzero entry
    certifies a singular matrix, so the answer is 0 with no further
    elimination.  Every interior division is exact.  The empty 0x0 matrix
    has determinant 1.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a nonsquare matrix")
    n = m.rows
    ring = m.ring
    if n == 0:
        return ring.one
    if n == 1:
        return m.at(0, 0)
    a = [m.row(i) for i in range(n)]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                q = num.exact_div(prev)
                if q is None:
                    raise ArithmeticError("inexact division in elimination")
                a[i][j] = q
            a[i][k] = ring.zero
        prev = pivot
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


def det_cofactor(m):
    """Determinant by cofactor expansion along the first row."""
    if m.rows != m.cols:
        raise ValueError("determinant of a nonsquare matrix")
    n = m.rows
    ring = m.ring
    if n == 0:
        return ring.one
    if n == 1:
        return m.at(0, 0)
    total = ring.zero
    rest = delete_row(m, 1)
    for j in range(n):
        c = m.at(0, j)
        if c.is_zero:
            continue
        minor = det_cofactor(delete_column(rest, j + 1))
        total = total + (c * minor if j % 2 == 0 else -(c * minor))
    return total


def is_alternating(m):
    """Square, zero diagonal, and m[j][i] == -m[i][j]."""
    if m.rows != m.cols:
        return False
    for i in range(m.rows):
        if not m.at(i, i).is_zero:
            return False
        for j in range(i + 1, m.cols):
            if m.at(j, i) != -m.at(i, j):
                return False
    return True


def has_linear_x_entries(m):
    """Every entry zero or bihomogeneous of bidegree (1, 0)."""
    for e in m.entries:
        if not e.is_zero and e.bidegree() != (1, 0):
            return False
    return True


def pfaffian(m):
    """Pfaffian of an alternating matrix of even size.

    Expansion along the first row: Pf(A) = sum_j (-1)^j a_1j Pf(A_1j)
    where A_1j deletes rows and columns 1 and j.  Pf of the 0x0 matrix
    is 1; odd sizes are rejected.
    """
    if not is_alternating(m):
        raise ValueError("pfaffian of a non-alternating matrix")
    if m.rows % 2 == 1:
        raise ValueError("pfaffian undefined for odd size %d" % m.rows)
    ring = m.ring

    def pf(idx):
        if not idx:
            return ring.one
        i0 = idx[0]
        total = ring.zero
        for pos in range(1, len(idx)):
            c = m.at(i0, idx[pos])
            if c.is_zero:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = c * pf(rest)
            total = total + (term if pos % 2 == 1 else -term)
        return total

    return pf(tuple(range(m.rows)))


def submaximal_pfaffians(m):
    """Signed Pfaffians [(-1)^(i+1) Pf(m minus row/col i)] for i = 1..n.

    For an alternating (d+1) x (d+1) matrix with d even these are the
    generators of the associated Gorenstein ideal, ordered so that the
    matrix presents them: m times the column of signed Pfaffians is zero.
    """
    if not is_alternating(m):
        raise ValueError("expected an alternating matrix")
    if m.rows % 2 == 0:
        raise ValueError("submaximal pfaffians need odd matrix size")
    out = []
    for i in range(1, m.rows + 1):
        p = pfaffian(delete_row(delete_column(m, i), i))
        out.append(p if i % 2 == 1 else -p)
    return out


def minors(m, k):
    """All k x k minors, rows and columns in lexicographic order."""
    if k < 0 or k > min(m.rows, m.cols):
        raise ValueError("minor size out of range")
    out = []
    for rows in combinations(range(m.rows), k):
        for cols in combinations(range(m.cols), k):
            sub = PolyMatrix(m.ring, k, k,
                             [m.at(i, j) for i in rows for j in cols])
            out.append(det(sub))
    return out


def jacobian_dual(alt):
    """B with [x1..x{d+1}] . B == [T1..T{d+1}] . alt, entries linear in T.

    alt must have entries that are linear forms in the x-variables; the
    coefficient of x_k in the j-th entry of [T] . alt lands in B[k][j], so
    B is unique with linear T-entries and B . [T]^t == 0 whenever alt is
    alternating.
    """
    ring = alt.ring
    n = ring.n
    if alt.rows != n or alt.cols != n:
        raise ValueError("expected a %dx%d matrix" % (n, n))
    if not has_linear_x_entries(alt):
        raise ValueError("entries must be linear forms in x1..x%d" % n)
    cols = [[dict() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        t_exp = ring.T(i + 1).lead_exp()
        for j in range(n):
            for _, e, c in alt.at(i, j).terms:
                k = next(s for s in ring.x_slots if e[s])
                acc = cols[j][k]
                acc[t_exp] = (acc.get(t_exp, 0) + c) % ring.p
    flat = []
    for k in range(n):
        for j in range(n):
            flat.append(ring.from_dict(cols[j][k]))
    return PolyMatrix(ring, n, n, flat)


def modified_jacobian_dual(alt, f, rule="min"):
    """[B(alt) | C] where [x1..x{d+1}] . C == f.

    f must be x-homogeneous of degree >= 1 (no T part); the splitting rule
    for the extra column is 'min' or 'max' as in partial_column.
    """
    if f.is_zero:
        raise ValueError("f must be nonzero")
    bd = f.bidegree()
    if bd is None or bd[1] != 0 or bd[0] < 1:
        raise ValueError("f must be x-homogeneous of positive degree")
    return jacobian_dual(alt).append_column(partial_column(f, rule))


def iteration_matrix(dual, g, rule="min"):
    """[B(alt) | C] with [x1..x{d+1}] . C == g, for a bihomogeneous g."""
    return dual.append_column(partial_column(g, rule))
