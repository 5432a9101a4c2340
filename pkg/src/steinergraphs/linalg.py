"""Exact linear algebra over finite fields and over the rationals.

Matrices are sequences of row sequences of integers.  Over a finite
field the entries are element indices of a :class:`~steinergraphs.gf.Field`;
over the rationals they are Python ints (with kernels returned as
primitive integer vectors).  Reduced row echelon form is the canonical
representative of a row space, so two subspaces are equal exactly when
their ``row_basis`` tuples are equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatchError, MixedFieldsError
from .gf import Field

Row = tuple[int, ...]
Rows = tuple[Row, ...]


def _check_rect(rows) -> int:
    if not rows:
        raise DimensionMismatchError("matrix needs at least one row")
    ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatchError("ragged matrix")
    return ncols


def _check_entries(field: Field, rows) -> None:
    q = field.q
    for r in rows:
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < q:
                raise MixedFieldsError(f"entry {x!r} is not in GF({q})")


def rref(field: Field, rows) -> tuple[Rows, int, Row]:
    """Reduced row echelon form.

    Returns (matrix of the same shape with zero rows at the bottom,
    rank, pivot column indices).  Pivots are scaled to 1 and cleared
    above and below, so the result is the canonical representative of
    the row space.
    """
    ncols = _check_rect(rows)
    _check_entries(field, rows)
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        if inv != 1:
            m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in m), r, tuple(pivots)


def row_basis(field: Field, rows) -> Rows:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    m, rank, _ = rref(field, rows)
    return m[:rank]


def rank(field: Field, rows) -> int:
    return rref(field, rows)[1]


def transpose(rows) -> Rows:
    _check_rect(rows)
    return tuple(zip(*rows))


def kernel(field: Field, rows) -> Rows:
    """Canonical basis of the right null space {x : rows.x = 0}."""
    ncols = _check_rect(rows)
    m, _, pivots = rref(field, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = field.neg(m[i][f])
        basis.append(tuple(vec))
    if not basis:
        return ()
    return row_basis(field, basis)


def solve(field: Field, rows, rhs) -> Row | None:
    """One solution x of rows.x = rhs (free variables set to 0), or None."""
    ncols = _check_rect(rows)
    if len(rhs) != len(rows):
        raise DimensionMismatchError("right-hand side length mismatch")
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    m, _, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return tuple(x)


def mat_vec(field: Field, rows, vec) -> Row:
    ncols = _check_rect(rows)
    if len(vec) != ncols:
        raise DimensionMismatchError("vector length mismatch")
    out = []
    for r in rows:
        acc = 0
        for a, b in zip(r, vec):
            acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return tuple(out)


def inverse(field: Field, rows) -> Rows:
    """Inverse of a square matrix over the field.

    Raises DimensionMismatchError for non-square input and ValueError for
    singular matrices.
    """
    ncols = _check_rect(rows)
    n = len(rows)
    if n != ncols:
        raise DimensionMismatchError("inverse needs a square matrix")
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    aug = tuple(tuple(r) + ident[i] for i, r in enumerate(rows))
    m, rk, _ = rref(field, aug)
    if rk != n:
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in m[:n])


def in_rowspace(field: Field, rows, vec) -> bool:
    ncols = _check_rect(rows)
    if len(vec) != ncols:
        raise DimensionMismatchError("vector length mismatch")
    base = row_basis(field, rows)
    return rank(field, base + (tuple(vec),)) == len(base)


def rowspace_sum(field: Field, a, b) -> Rows:
    if _check_rect(a) != _check_rect(b):
        raise DimensionMismatchError("ambient dimensions differ")
    return row_basis(field, tuple(a) + tuple(b))


def rowspace_intersect(field: Field, a, b) -> Rows:
    """Canonical basis of (row space of a) ∩ (row space of b)."""
    if _check_rect(a) != _check_rect(b):
        raise DimensionMismatchError("ambient dimensions differ")
    ab = row_basis(field, a)
    bb = row_basis(field, b)
    if not ab or not bb:
        return ()
    stacked = ab + bb
    vecs = []
    for rel in kernel(field, transpose(stacked)):
        # rel is a relation sum_i rel_i * stacked_i = 0, so the partial sum
        # over the rows of a lies in both row spaces
        v = [0] * len(ab[0])
        for coeff, arow in zip(rel[: len(ab)], ab):
            if coeff:
                v = [field.add(x, field.mul(coeff, y)) for x, y in zip(v, arow)]
        if any(v):
            vecs.append(tuple(v))
    if not vecs:
        return ()
    return row_basis(field, vecs)


# -- exact rational kernels of integer matrices ------------------------------


def bareiss_echelon(rows) -> tuple[list[list[int]], list[int]]:
    """Fraction-free integer echelon form (Bareiss).

    Returns (echelon rows, pivot column indices).  All divisions are
    exact, so entries stay integers of moderate size.
    """
    ncols = _check_rect(rows)
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            row = m[i]
            top = m[r]
            for j in range(c, ncols):
                row[j] = (row[j] * piv - mic * top[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def _primitive(vec) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g > 1:
        vec = [x // g for x in vec]
    lead = next((x for x in vec if x), 0)
    if lead < 0:
        vec = [-x for x in vec]
    return tuple(vec)


def rational_kernel(rows) -> tuple[tuple[int, ...], ...]:
    """Basis of the right null space over the rationals of an integer
    matrix, as primitive integer vectors (gcd 1, first nonzero entry
    positive), one per free column in increasing column order."""
    ncols = _check_rect(rows)
    ech, pivots = bareiss_echelon(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            row = ech[i]
            acc = Fraction(0)
            for j in range(c + 1, ncols):
                if row[j] and x[j]:
                    acc += row[j] * x[j]
            x[c] = -acc / row[c]
        lcm = 1
        for xi in x:
            d = xi.denominator
            lcm = lcm // gcd(lcm, d) * d
        basis.append(_primitive([int(xi * lcm) for xi in x]))
    return tuple(basis)
