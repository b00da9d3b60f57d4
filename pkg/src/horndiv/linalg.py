"""Exact linear algebra over a fraction field (Fraction or RatFunc entries).

Vectors are tuples, subspaces are lists of row vectors.  Elements only need
+, -, *, / and truthiness for the zero test, so both fields share the code.
"""

from __future__ import annotations


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[0])


def nullspace(rows, ncols):
    """Basis of {x : row . x = 0 for every row}."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    zero = _zero_like(rows)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def _zero_like(rows, fallback=None):
    for r in rows:
        for x in r:
            return x - x
    if fallback is not None:
        return fallback - fallback
    from fractions import Fraction
    return Fraction(0)


def span_sum(a, b):
    return rref(list(a) + list(b))[0] if (a or b) else []


def span_intersection(a, b, ncols):
    """Row-space intersection via the left kernel of the stacked basis."""
    if not a or not b:
        return []
    a = rref(a, ncols)[0]
    b = rref(b, ncols)[0]
    stacked = a + b
    # columns of stacked^T; left kernel = nullspace of transpose
    transpose = [tuple(stacked[i][j] for i in range(len(stacked))) for j in range(ncols)]
    ker = nullspace(transpose, len(stacked))
    zero = _zero_like(a)
    out = []
    for c in ker:
        v = [zero] * ncols
        for coeff, row in zip(c[: len(a)], a):
            if coeff:
                v = [x + coeff * y for x, y in zip(v, row)]
        out.append(tuple(v))
    return rref(out, ncols)[0] if out else []


def orthogonal(rows, ncols, zero=None):
    """Annihilator {y : y . x = 0 for x in rows} (standard bilinear form)."""
    if not rows:
        z = zero if zero is not None else _zero_like(rows)
        return [tuple((z + 1) if i == j else z for j in range(ncols)) for i in range(ncols)]
    return nullspace(rows, ncols)


def in_span(v, rows):
    if not any(v):
        return True
    if not rows:
        return False
    return rank(list(rows) + [v]) == rank(rows)


def contains_space(big, small):
    return all(in_span(v, big) for v in small)


def coordinates(v, basis):
    """Coefficients c with sum c_i basis_i = v; None if v is outside the span."""
    k = len(basis)
    n = len(v)
    aug = [tuple(basis[i][j] for i in range(k)) + (v[j],) for j in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    zero = v[0] - v[0]
    c = [zero] * k
    for row, pc in zip(red, pivots):
        c[pc] = row[k]
    return c


def matmul(a, b):
    return [tuple(sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in zip(*b)) for row in a]


def inverse(a):
    n = len(a)
    one = a[0][0] - a[0][0] + 1
    zero = one - one
    aug = [tuple(a[i]) + tuple(one if i == j else zero for j in range(n)) for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [tuple(row[n:]) for row in red]

