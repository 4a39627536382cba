"""Exact integer/rational vector and matrix kernel.

Everything here works on tuples of Python ints (rational rows are cleared to
integers first), so results are exact and hashable.
"""

from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "primitive",
    "dot",
    "as_int_rows",
    "echelon",
    "rank",
    "kernel_basis",
    "canonical_basis",
    "reduce_modulo",
]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _content(v):
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries, keeping direction."""
    g = _content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    if g == 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _clear_row(row):
    denom = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            denom = lcm(denom, x.denominator)
    return tuple(int(x * denom) for x in row)


def as_int_rows(rows):
    """Scale each rational row to an integer row (same row space)."""
    return [_clear_row(r) for r in rows]


def echelon(rows, ncols=None):
    """Integer reduced row echelon form.

    Returns ``(rows, pivots)`` where every pivot column is zero in all other
    rows, each row is primitive and its pivot entry is positive.  The form
    is unique for a given row space.
    """
    work = [list(r) for r in as_int_rows(rows) if any(r)]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        p = next((i for i in range(r, len(work)) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        prow = work[r]
        pc = prow[c]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                row = work[i]
                new = [pc * x - f * y for x, y in zip(row, prow)]
                g = _content(new)
                if g > 1:
                    new = [x // g for x in new]
                work[i] = new
        pivots.append(c)
        r += 1
    out = []
    for row, c in zip(work[:r], pivots):
        row = list(primitive(row))
        if row[c] < 0:
            row = [-x for x in row]
        out.append(tuple(row))
    return out, pivots


def rank(rows):
    """Row rank over the rationals."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return len(echelon(rows)[1])


def kernel_basis(rows, ncols=None):
    """Primitive integer basis of the right null space of a matrix."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    ech, pivots = echelon(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        scale = 1
        for row, c in zip(ech, pivots):
            if row[f]:
                scale = lcm(scale, row[c])
        v = [0] * ncols
        v[f] = scale
        for row, c in zip(ech, pivots):
            if row[f]:
                v[c] = -row[f] * scale // row[c]
        basis.append(primitive(v))
    return basis


def canonical_basis(rows, ncols):
    """Canonical basis of a row space: integer RREF rows, first entry positive."""
    return echelon(rows, ncols)[0]


def reduce_modulo(v, basis, pivots):
    """Eliminate the pivot coordinates of ``v`` using an echelon ``basis``.

    The result is a positive multiple of the unique representative of
    ``v + span(basis)`` vanishing on the pivot columns.
    """
    v = list(v)
    for row, c in zip(basis, pivots):
        if v[c]:
            f = v[c]
            p = row[c]
            v = [p * x - f * y for x, y in zip(v, row)]
    return tuple(v)
