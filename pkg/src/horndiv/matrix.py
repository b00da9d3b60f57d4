"""Dense matrices over a PID with Smith and Hermite normal forms.

Invariant factors come out in *decreasing* divisibility order (each factor
divisible by the next, zeros first).  The common ascending convention is
only used internally and at the oracle boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .errors import DimensionError, NoSolution
from .rings import ZZ_RING


class PidMatrix:
    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [[ring.coerce(x) for x in r] for r in rows]
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise DimensionError("ragged matrix")

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, m, n):
        return cls(ring, [[ring.zero] * n for _ in range(m)])

    @classmethod
    def diag(cls, ring, entries, ncols=None):
        n = len(entries)
        ncols = n if ncols is None else ncols
        out = cls.zeros(ring, n, ncols)
        for i, d in enumerate(entries):
            out.rows[i][i] = ring.coerce(d)
        return out

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        return PidMatrix(self.ring, [list(r) for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, PidMatrix) and self.ring == other.ring and self.rows == other.rows

    def __matmul__(self, other: PidMatrix) -> PidMatrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.ring.zero
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        if not cols:
            out = [[] for _ in self.rows]
        return PidMatrix(self.ring, out)

    def T(self):
        return PidMatrix(self.ring, [list(c) for c in zip(*self.rows)])

    def is_diagonal(self):
        return all(not x for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self):
        return [self.rows[i][i] for i in range(min(self.shape))]

    def submatrix(self, rows, cols):
        return PidMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def to_field(self):
        f = self.ring.to_field
        return [tuple(f(x) for x in r) for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.fmt(x) for x in r) for r in self.rows)
        return f"PidMatrix[{body}]"


@dataclass
class SnfResult:
    U: PidMatrix
    V: PidMatrix
    D: PidMatrix
    factors: list

    def check(self, A: PidMatrix) -> bool:
        return self.U @ A @ self.V == self.D


# -- elementary operations on raw row lists ---------------------------------

def _row_combine(m, i, j, a, b, c, d):
    """rows (i, j) <- (a*ri + b*rj, c*ri + d*rj)."""
    ri, rj = m[i], m[j]
    m[i] = [a * x + b * y for x, y in zip(ri, rj)]
    m[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _col_combine(m, i, j, a, b, c, d):
    for row in m:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def _snf_ascending(A: PidMatrix):
    """Classical ascending SNF with transforms: U A V = diag(d1 | d2 | ...)."""
    R = A.ring
    m, n = A.shape
    a = [list(r) for r in A.rows]
    U = PidMatrix.identity(R, m).rows
    V = PidMatrix.identity(R, n).rows
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None or R.size(a[i][j]) < best[0]):
                        best = (R.size(a[i][j]), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                U[t], U[pi] = U[pi], U[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                for row in V:
                    row[t], row[pj] = row[pj], row[t]
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    x = a[i][t]
                    if not x:
                        continue
                    p = a[t][t]
                    if R.divides(p, x):
                        q = R.exact_div(x, p)
                        a[i] = [u - q * v for u, v in zip(a[i], a[t])]
                        U[i] = [u - q * v for u, v in zip(U[i], U[t])]
                    else:
                        g, s, tt = R.xgcd(p, x)
                        pg, xg = R.exact_div(p, g), R.exact_div(x, g)
                        _row_combine(a, t, i, s, tt, -xg, pg)
                        _row_combine(U, t, i, s, tt, -xg, pg)
                        dirty = True
                for j in range(t + 1, n):
                    x = a[t][j]
                    if not x:
                        continue
                    p = a[t][t]
                    if R.divides(p, x):
                        q = R.exact_div(x, p)
                        for row in a:
                            row[j] = row[j] - q * row[t]
                        for row in V:
                            row[j] = row[j] - q * row[t]
                    else:
                        g, s, tt = R.xgcd(p, x)
                        pg, xg = R.exact_div(p, g), R.exact_div(x, g)
                        _col_combine(a, t, j, s, tt, -xg, pg)
                        _col_combine(V, t, j, s, tt, -xg, pg)
                        dirty = True
            # pivot must divide the remaining block
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] and not R.divides(p, a[i][j])), None)
            if bad is None:
                break
            i = bad[0]
            a[t] = [u + v for u, v in zip(a[t], a[i])]
            U[t] = [u + v for u, v in zip(U[t], U[i])]
        if t < m and t < n and a[t][t]:
            u = R.unit_part(a[t][t])
            if u != 1:
                inv = _unit_inverse(R, u)
                a[t] = [x * inv for x in a[t]]
                U[t] = [x * inv for x in U[t]]
    return PidMatrix(R, U), PidMatrix(R, V), PidMatrix(R, a)


def _unit_inverse(R, u):
    if R is ZZ_RING or R.name == "int":
        return u  # +-1
    return pow(int(u), R.p - 2, R.p)


def snf(A: PidMatrix) -> SnfResult:
    R = A.ring
    m, n = A.shape
    U, V, D = _snf_ascending(A)
    k = min(m, n)
    # decreasing divisibility: reverse the runs of equal factors, keep order inside a run
    # (so an already-diagonal input with equal entries keeps identity transforms)
    d = [D[i, i] for i in range(k)]
    runs, start = [], 0
    for i in range(1, k + 1):
        if i == k or d[i] != d[start]:
            runs.append(list(range(start, i)))
            start = i
    perm = [i for run in reversed(runs) for i in run] + list(range(k, max(m, n)))
    pr = perm[:k] + list(range(k, m))
    pc = perm[:k] + list(range(k, n))
    Ur = [U.rows[i] for i in pr]
    Vr = [[r[j] for j in pc] for r in V.rows]
    Dr = [[D.rows[i][j] for j in pc] for i in pr]
    U2, V2, D2 = PidMatrix(R, Ur), PidMatrix(R, Vr), PidMatrix(R, Dr)
    return SnfResult(U2, V2, D2, D2.diagonal())


def invariant_factors(A: PidMatrix):
    return snf(A).factors


# -- determinants -----------------------------------------------------------

def det(A: PidMatrix):
    """Fraction-free Bareiss elimination."""
    R = A.ring
    n = A.nrows
    if n != A.ncols:
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return R.one
    a = [list(r) for r in A.rows]
    sign = 1
    prev = R.one
    for k in range(n - 1):
        if not a[k][k]:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return R.zero
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = R.exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def adjugate(A: PidMatrix) -> PidMatrix:
    R = A.ring
    n = A.nrows
    if n != A.ncols:
        raise DimensionError("adjugate of a non-square matrix")
    if n == 1:
        return PidMatrix(R, [[R.one]])
    out = [[R.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = A.submatrix([r for r in range(n) if r != i], [c for c in range(n) if c != j])
            c = det(minor)
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return PidMatrix(R, out)


def minors_gcd(A: PidMatrix, k: int):
    R = A.ring
    m, n = A.shape
    if not 1 <= k <= min(m, n):
        raise DimensionError(f"minor size {k} out of range for {m}x{n}")
    g = R.zero
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            g = R.gcd(g, det(A.submatrix(rows, cols)))
            if R.is_unit(g):
                return R.one
    return R.normalize(g) if g else g


def is_unimodular(A: PidMatrix) -> bool:
    return A.nrows == A.ncols and A.ring.is_unit(det(A))


# -- Hermite form -----------------------------------------------------------

def hnf_rows(ring, rows, ncols):
    """Row Hermite basis of the lattice spanned by ``rows``.

    Output rows are upper triangular in pivot columns, pivots normalized and
    entries above each pivot reduced to canonical remainders.
    """
    R = ring
    a = [list(r) for r in rows if any(r)]
    out = []
    for c in range(ncols):
        nz = [r for r in a if r[c]]
        if not nz:
            continue
        rest = [r for r in a if not r[c]]
        piv = nz[0]
        for r in nz[1:]:
            x, y = piv[c], r[c]
            g, s, t = R.xgcd(x, y)
            xg, yg = R.exact_div(x, g), R.exact_div(y, g)
            new_piv = [s * u + t * v for u, v in zip(piv, r)]
            other = [-yg * u + xg * v for u, v in zip(piv, r)]
            piv = new_piv
            if any(other):
                rest.append(other)
        u = R.unit_part(piv[c])
        if u != 1:
            inv = _unit_inverse(R, u)
            piv = [v * inv for v in piv]
        for prev in out:
            if prev[c]:
                q, _ = R.divmod(prev[c], piv[c])
                if q:
                    for j in range(ncols):
                        prev[j] = prev[j] - q * piv[j]
        out.append(piv)
        a = [r for r in rest if any(r)]
    return out


def hnf(A: PidMatrix) -> PidMatrix:
    return PidMatrix(A.ring, hnf_rows(A.ring, A.rows, A.ncols))


# -- fraction-field solving -------------------------------------------------

def solve_fraction(A: PidMatrix, b):
    """One solution x of A x = b over the fraction field (free vars = 0)."""
    R = A.ring
    m, n = A.shape
    if len(b) != m:
        raise DimensionError("right-hand side length mismatch")
    f = R.to_field
    aug = [tuple(f(x) for x in A.rows[i]) + (f(b[i]) if not _is_field(b[i]) else b[i],) for i in range(m)]
    red, pivots = linalg.rref(aug, n + 1)
    if n in pivots:
        raise NoSolution("inconsistent system")
    x = [R.field_zero() for _ in range(n)]
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x


def _is_field(x):
    from fractions import Fraction
    from .rings import RatFunc
    return isinstance(x, (Fraction, RatFunc))


def kernel_fraction(A: PidMatrix):
    return linalg.nullspace(A.to_field(), A.ncols) if A.nrows else [
        tuple(A.ring.field_one() if i == j else A.ring.field_zero() for j in range(A.ncols))
        for i in range(A.ncols)]


def field_inverse(A: PidMatrix):
    return linalg.inverse(A.to_field())


def clear_denominators(ring, vec):
    """Scale a fraction-field vector to a primitive PID vector."""
    d = ring.one
    for x in vec:
        den = ring.denominator(x)
        d = ring.exact_div(d * den, ring.gcd(d, den)) if den != ring.one else d
    ints = [ring.from_field(x * ring.to_field(d)) for x in vec]
    g = ring.zero
    for x in ints:
        g = ring.gcd(g, x)
    if g and not ring.is_unit(g):
        ints = [ring.exact_div(x, g) for x in ints]
    return ints
