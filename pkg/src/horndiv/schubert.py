"""Flags, Schubert conditions and triple-intersection witnesses.

All geometry happens in F^N where F is the fraction field of the PID.  A
Schubert requirement is a pair (X, y) meaning dim(Q ∩ X) >= y.  The witness
solver repeatedly
  * drops requirements that hold for every Q,
  * turns y = dim X into "X ⊆ Q" and y = r into "Q ⊆ X",
  * passes to the quotient B/A once Q is pinned between A and B,
  * dualizes (Q -> Q^perp) when r > N/2,
and finishes with closed-form solutions for r = 1 (intersect everything) and
r = 2 (a plane meeting three subspaces).  This handles every triple with
N <= 5 as well as N = 4, r = 2; anything else is reported as a budget
failure, never as emptiness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import PreconditionError, WitnessNotFound
from .matrix import clear_denominators
from .modules import Submodule, TorsionModule, saturate
from .valuation import divides


def _one_like(v):
    return v[0] - v[0] + 1


class Flag:
    """Complete flag given by an ordered basis of F^N."""

    def __init__(self, vectors):
        self.vectors = [tuple(v) for v in vectors]
        n = len(self.vectors)
        if n and (any(len(v) != n for v in self.vectors) or linalg.rank(self.vectors) != n):
            raise PreconditionError("flag vectors must form a basis")
        self.omega = None

    @property
    def N(self):
        return len(self.vectors)

    def space(self, k):
        return self.vectors[:k]

    @classmethod
    def from_lifts(cls, lifts, N, one):
        """Flag through the given vectors, dependent slots filled by standard vectors."""
        zero = one - one
        chosen = []
        std = [tuple(one if i == j else zero for j in range(N)) for i in range(N)]
        for v in lifts:
            v = tuple(v)
            if any(v) and linalg.rank(chosen + [v]) == len(chosen) + 1:
                chosen.append(v)
            else:
                for e in std:
                    if linalg.rank(chosen + [e]) == len(chosen) + 1:
                        chosen.append(e)
                        break
        for e in std:
            if len(chosen) == N:
                break
            if linalg.rank(chosen + [e]) == len(chosen) + 1:
                chosen.append(e)
        return cls(chosen)

    def __repr__(self):
        return f"Flag({self.vectors})"


class Subspace:
    def __init__(self, rows, N=None):
        rows = [tuple(r) for r in rows]
        if N is None:
            N = len(rows[0]) if rows else 0
        self.N = N
        self.rows = linalg.rref(rows, N)[0] if rows else []

    @property
    def dim(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.rows == other.rows

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rows={self.rows})"


def intersection_dim(Q_rows, X_rows):
    return len(Q_rows) + len(X_rows) - linalg.rank(list(Q_rows) + list(X_rows)) if Q_rows and X_rows else 0


def schubert_member(Q: Subspace, E: Flag, I) -> bool:
    I = tuple(I)
    if len(I) != Q.dim:
        raise PreconditionError("condition set size must equal dim Q")
    return all(intersection_dim(Q.rows, E.space(i)) >= x for x, i in enumerate(I, 1))


# -- flags attached to modules ---------------------------------------------------

def big_flag(M: TorsionModule, basis) -> Flag:
    one = M.ring.field_one()
    lifts = [tuple(M.ring.to_field(x) for x in v) for v in basis]
    return Flag.from_lifts(lifts, M.N, one)


def small_flag(M: TorsionModule, basis) -> Flag:
    one = M.ring.field_one()
    lifts = [tuple(M.ring.to_field(x) for x in v) for v in basis]
    F = Flag.from_lifts(lifts[::-1], M.N, one)
    if M.N:
        F.omega = M.theta[0] * M.theta[0]
    return F


# -- witness solver ------------------------------------------------------------------

@dataclass
class WitnessResult:
    Q: Subspace
    strategy: str
    seed: int | None = None
    perturbations: list = field(default_factory=list)


def _std(n, one):
    zero = one - one
    return [tuple(one if i == j else zero for j in range(n)) for i in range(n)]


def _extend_basis(A, B):
    """Vectors of B completing the rows of A to a basis of span(B)."""
    out = []
    cur = list(A)
    for b in B:
        if linalg.rank(cur + [b]) > len(cur):
            cur.append(b)
            out.append(b)
    return out


def _reduce_requirements(n, r, reqs):
    """Absorb forced containments; returns (A, B, remaining) or None."""
    one = None
    for X, _ in reqs:
        if X:
            one = _one_like(X[0])
            break
    A, B = [], None
    changed = True
    while changed:
        changed = False
        keep = []
        for X, y in reqs:
            d = len(X)
            if y <= max(0, d + r - n):
                continue
            if y > min(d, r):
                return None
            if y == d:
                if not linalg.contains_space(A, X):
                    A = linalg.span_sum(A, X)
                    changed = True
                continue
            if y == r:
                if B is None:
                    B = X
                    changed = True
                elif not linalg.contains_space(X, B):
                    B = linalg.span_intersection(B, X, n)
                    changed = True
                continue
            keep.append((X, y))
        reqs = keep
        if len(A) > r or (B is not None and len(B) < r):
            return None
    if B is not None and not linalg.contains_space(B, A):
        return None
    return A, B, reqs, one


def _solve(n, r, reqs, one, depth=0):
    """Basis of some r-dim Q meeting every (X, y); None when unsupported or infeasible."""
    if depth > 4 * n + 8:
        return None
    red = _reduce_requirements(n, r, reqs)
    if red is None:
        return None
    A, B, reqs, one2 = red
    one = one2 or one
    if B is None:
        B = _std(n, one)
    if A or len(B) < n:
        C = _extend_basis(A, B)
        basis = list(A) + C
        k = len(A)
        n2, r2 = len(C), r - len(A)
        new = []
        for X, y in reqs:
            Xb = linalg.span_intersection(X, B, n) if len(B) < n else X
            y2 = y - intersection_dim(Xb, A)
            img = []
            for v in Xb:
                c = linalg.coordinates(v, basis)
                img.append(tuple(c[k:]))
            img = linalg.rref(img, n2)[0] if img else []
            new.append((img, y2))
        if r2 == 0:
            sol = []
        elif r2 == n2:
            sol = _std(n2, one)
        else:
            sol = _solve(n2, r2, new, one, depth + 1)
        if sol is None:
            return None
        zero = one - one
        lifted = []
        for z in sol:
            v = [zero] * n
            for coeff, c in zip(z, C):
                if coeff:
                    v = [a + coeff * b for a, b in zip(v, c)]
            lifted.append(tuple(v))
        return linalg.rref(list(A) + lifted, n)[0]
    if r == 0:
        return []
    if r == n:
        return _std(n, one)
    if 2 * r > n:
        dual = [(linalg.orthogonal(X, n, one - one), n - r - len(X) + y) for X, y in reqs]
        sol = _solve(n, n - r, dual, one, depth + 1)
        if sol is None:
            return None
        return linalg.rref(linalg.orthogonal(sol, n, one - one), n)[0]
    if r == 1:
        V = _std(n, one)
        for X, _ in reqs:
            V = linalg.span_intersection(V, X, n)
            if not V:
                return None
        return [V[0]]
    if r == 2:
        return _meet_plane(n, [X for X, _ in reqs], one)
    return None


def _meet_plane(n, spaces, one):
    """A 2-plane meeting every given subspace (each of dimension >= 2)."""
    # meeting a smaller space implies meeting any larger one containing it
    mins = []
    for X in sorted(spaces, key=len):
        if not any(linalg.contains_space(X, Y) for Y in mins):
            mins.append(X)
    if not mins:
        return _std(n, one)[:2]
    if len(mins) == 1:
        X = mins[0]
        return linalg.rref(X[:2], n)[0]
    if len(mins) == 2:
        X, Y = mins
        a = X[0]
        b = next(v for v in Y if linalg.rank([a, v]) == 2)
        return linalg.rref([a, b], n)[0]
    if len(mins) > 3:
        return None
    X, Y, Z = mins
    for P, R_, S in ((X, Y, Z), (X, Z, Y), (Y, Z, X)):
        common = linalg.span_intersection(P, R_, n)
        if common:
            v = common[0]
            w = next((u for u in S if linalg.rank([v, u]) == 2), None)
            if w is None:
                continue
            return linalg.rref([v, w], n)[0]
    W = linalg.span_intersection(Z, linalg.span_sum(X, Y), n)
    if not W:
        return None
    g = W[0]
    c = linalg.coordinates(g, list(X) + list(Y))
    zero = one - one
    a = tuple(sum((ci * x[j] for ci, x in zip(c[: len(X)], X)), zero) for j in range(n))
    b = tuple(gj - aj for gj, aj in zip(g, a))
    if not any(a):
        return linalg.rref([X[0], g], n)[0]
    if not any(b):
        return linalg.rref([Y[0], g], n)[0]
    return linalg.rref([a, b], n)[0]


def intersect_witness(E: Flag, F: Flag, G: Flag, I, J, K) -> WitnessResult:
    I, J, K = tuple(I), tuple(J), tuple(K)
    r = len(I)
    n = E.N
    if not (len(J) == len(K) == r) or not (F.N == G.N == n):
        raise PreconditionError("inconsistent flag dimensions or set sizes")
    one = _one_like(E.vectors[0]) if n else None
    reqs = []
    for flag, S in ((E, I), (F, J), (G, K)):
        for x, s in enumerate(S, 1):
            reqs.append((linalg.rref(flag.space(s), n)[0], x))
    sol = _solve(n, r, reqs, one)
    if sol is None or len(sol) != r:
        raise WitnessNotFound(f"no witness found for N={n}, r={r}")
    Q = Subspace(sol, n)
    if not (schubert_member(Q, E, I) and schubert_member(Q, F, J) and schubert_member(Q, G, K)):
        raise WitnessNotFound("candidate failed re-verification")
    strategy = "S1" if min(r, n - r) <= 1 else "S2"
    return WitnessResult(Q, strategy)


# -- from subspaces to submodules ---------------------------------------------------

def integral_rows(ring, Q: Subspace):
    return [clear_denominators(ring, v) for v in Q.rows]


def lattice_of_subspace(ring, Q: Subspace, N):
    """Row basis of Q ∩ R^N."""
    if not Q.rows:
        return []
    return saturate(ring, N, integral_rows(ring, Q))


def project_to_module(Q: Subspace, M: TorsionModule) -> Submodule:
    return Submodule(M, lattice_of_subspace(M.ring, Q, M.N))


@dataclass
class BoundsReport:
    invariants: list
    checks: list

    @property
    def ok(self):
        return all(c["pass"] for c in self.checks)


def verify_big_bounds(M: TorsionModule, Q: Subspace, I) -> BoundsReport:
    beta = project_to_module(Q, M).invariants()
    checks = []
    for x, i in enumerate(I, 1):
        checks.append({"x": x, "bound": f"theta_{i} | beta_{x}", "pass": divides(M.theta[i - 1], beta[x - 1])})
    checks.append({"x": None, "bound": "multiplicity <= r",
                   "pass": all(b.is_unit() for b in beta[len(I):])})
    return BoundsReport(beta, checks)


def verify_small_bounds(M: TorsionModule, Q: Subspace, I) -> BoundsReport:
    N, r = M.N, len(I)
    alpha = project_to_module(Q, M).invariants()
    checks = []
    for x in range(1, r + 1):
        idx = N + 1 - I[r - x]
        checks.append({"x": x, "bound": f"alpha_{x} | theta_{idx}", "pass": divides(alpha[x - 1], M.theta[idx - 1])})
    checks.append({"x": None, "bound": "multiplicity <= r",
                   "pass": all(a.is_unit() for a in alpha[r:])})
    return BoundsReport(alpha, checks)
