"""Exact dense linear algebra over a :class:`~qalg.fields.FieldDescriptor`.

Vectors are lists of scalars, matrices are lists of rows. Everything is
Gauss-Jordan elimination; matrices here are at most a few hundred entries
wide, so nothing cleverer is needed.
"""

from __future__ import annotations

from .errors import NotInvertible, ShapeMismatch


def zeros(field, n):
    z = field.zero
    return [z] * n


def unit(field, n, i):
    v = zeros(field, n)
    v[i] = field.one
    return v


def identity(field, n):
    return [unit(field, n, i) for i in range(n)]


def add(u, v):
    return [a + b for a, b in zip(u, v)]


def sub(u, v):
    return [a - b for a, b in zip(u, v)]


def scale(c, v):
    return [c * a for a in v]


def is_zero(v):
    return not any(v)


def axpy(c, x, y):
    """Return c*x + y."""
    if not c:
        return list(y)
    return [c * a + b if a else b for a, b in zip(x, y)]


def matvec(m, v):
    out = []
    for row in m:
        acc = None
        for a, b in zip(row, v):
            if a and b:
                acc = a * b if acc is None else acc + a * b
        out.append(acc if acc is not None else (row[0] * 0 if row else None))
    return out


def matmul(a, b):
    if a and b and len(a[0]) != len(b):
        raise ShapeMismatch("inner dimensions differ")
    cols = list(zip(*b))
    return [matvec([list(c) for c in cols], row) for row in a]


def transpose(m):
    return [list(r) for r in zip(*m)]


def rref(rows, field, ncols=None):
    """Reduced row echelon form. Returns ``(nonzero_rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        if inv != field.one:
            m[r] = [x * inv for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[1])


def nullspace(m, field, ncols=None):
    """Basis of {x : m x = 0}."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return identity(field, ncols)
    red, pivots = rref(m, field, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = zeros(field, ncols)
        v[free] = field.one
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(m, b, field):
    """One solution of m x = b, or ``None`` when inconsistent."""
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(field, ncols)
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def det(m, field):
    n = len(m)
    if any(len(r) != n for r in m):
        raise ShapeMismatch("determinant of a non-square matrix")
    a = [list(r) for r in m]
    d = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return field.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d = d * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[c])]
    return d


def inverse(m, field):
    n = len(m)
    aug = [list(row) + unit(field, n, i) for i, row in enumerate(m)]
    red, pivots = rref(aug, field, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise NotInvertible("matrix is singular")
    return [row[n:] for row in red]


class Subspace:
    """A subspace of k^n held in reduced echelon form."""

    def __init__(self, field, n, vectors=()):
        self.field = field
        self.n = n
        vectors = [list(v) for v in vectors if any(v)]
        if vectors:
            self.rows, self.pivots = rref(vectors, field, n)
        else:
            self.rows, self.pivots = [], []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        """Remainder of ``v`` after clearing the pivot coordinates."""
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                c = v[pc]
                v = [x - c * y if y else x for x, y in zip(v, row)]
        return v

    def __contains__(self, v):
        return not any(self.reduce(v))

    def coords(self, v):
        """Coordinates of ``v`` with respect to ``self.rows``; raises if outside."""
        c = [v[pc] for pc in self.pivots]
        if any(self.reduce(v)):
            raise ValueError("vector not in subspace")
        return c

    def is_coordinate_subspace(self):
        """True when every echelon row is a standard unit vector."""
        return all(sum(1 for x in row if x) == 1 for row in self.rows)

    def complement_indices(self):
        pivset = set(self.pivots)
        return [i for i in range(self.n) if i not in pivset]


class Basis:
    """An ordered basis of a subspace, with coordinate extraction."""

    def __init__(self, field, n, vectors):
        self.field = field
        self.n = n
        self.vectors = [list(v) for v in vectors]
        k = len(self.vectors)
        # augment with identity to recover coordinates from the echelon form
        aug = [v + unit(field, k, i) for i, v in enumerate(self.vectors)]
        red, pivots = rref(aug, field, n + k) if aug else ([], [])
        if len([p for p in pivots if p < n]) != k:
            raise ValueError("vectors are linearly dependent")
        self._rows = red
        self._pivots = pivots

    def __len__(self):
        return len(self.vectors)

    def coords(self, v):
        v = list(v) + zeros(self.field, len(self.vectors))
        out = zeros(self.field, len(self.vectors))
        for row, pc in zip(self._rows, self._pivots):
            if pc >= self.n:
                break
            c = v[pc]
            if c:
                v = [x - c * y if y else x for x, y in zip(v, row)]
                for i in range(len(out)):
                    if row[self.n + i]:
                        out[i] = out[i] + c * row[self.n + i]
        if any(v[: self.n]):
            raise ValueError("vector not in span")
        return out
