"""Exact linear algebra over the rationals.

Only what the lattice and hull code actually needs: reduced row
echelon form, rank, row-space membership, and nullspaces of small
systems.  Everything works on tuples of Fraction and never leaves
exact arithmetic.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows):
    """Reduced row echelon form.

    Returns (basis, pivots) where basis is a tuple of reduced rows
    (leading coefficient 1, zeros above and below each pivot) and
    pivots the matching pivot-column indices.  The basis tuple is a
    canonical representative of the row space, usable as a dict key.
    """
    basis = []
    pivots = []
    for row in rows:
        red = reduce_row(row, basis, pivots)
        piv = _leading_index(red)
        if piv is None:
            continue
        red = tuple(x / red[piv] for x in red)
        # keep earlier rows reduced against the new pivot
        for i, b in enumerate(basis):
            if b[piv] != 0:
                basis[i] = tuple(x - b[piv] * y for x, y in zip(b, red))
        pos = 0
        while pos < len(pivots) and pivots[pos] < piv:
            pos += 1
        basis.insert(pos, red)
        pivots.insert(pos, piv)
    return tuple(basis), tuple(pivots)


def reduce_row(row, basis, pivots):
    """Reduce a row against an RREF basis; the residual is exact."""
    red = list(Fraction(x) for x in row)
    for b, piv in zip(basis, pivots):
        c = red[piv]
        if c != 0:
            for j in range(len(red)):
                red[j] -= c * b[j]
    return tuple(red)


def _leading_index(row):
    for j, x in enumerate(row):
        if x != 0:
            return j
    return None


def rank(rows):
    return len(rref(rows)[0])


def in_rowspace(row, basis, pivots):
    return all(x == 0 for x in reduce_row(row, basis, pivots))


def nullspace(rows, ncols):
    """Basis of the right nullspace of the given rows (ncols unknowns)."""
    basis, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for b, piv in zip(basis, pivots):
            vec[piv] = -b[f]
        out.append(tuple(vec))
    return out
