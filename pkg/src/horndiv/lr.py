"""Littlewood-Richardson coefficients and Horn index triples.

Subsets I = {i_1 < ... < i_r} of {1..N} correspond to partitions in the
r x (N-r) box by lambda_x = i_{r+1-x} - (r+1-x).  The triple intersection
number c_IJK is computed as c^{lambda(K)}_{lambda*(I), lambda*(J)} where
lambda* is the box complement; it is symmetric in I, J, K and reduces to the
count of points in a zero-dimensional triple Schubert intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .valuation import contains, partition


@dataclass(frozen=True)
class SetTriple:
    N: int
    r: int
    I: tuple
    J: tuple
    K: tuple

    def __post_init__(self):
        if not 1 <= self.r <= self.N:
            raise ValueError(f"need 1 <= r <= N, got r={self.r}, N={self.N}")
        for name in "IJK":
            s = tuple(getattr(self, name))
            object.__setattr__(self, name, s)
            _check_set(s, self.N, self.r, name)

    @classmethod
    def of(cls, N, I, J, K):
        return cls(N, len(I), tuple(I), tuple(J), tuple(K))

    def reflected(self):
        """(I, J~, K~) in the same N."""
        return SetTriple(self.N, self.r, self.I, tilde(self.J, self.N), tilde(self.K, self.N))

    def as_lists(self):
        return [list(self.I), list(self.J), list(self.K)]

    def __str__(self):
        f = lambda s: ",".join(map(str, s))
        return f"{f(self.I)};{f(self.J)};{f(self.K)}"


def _check_set(s, N, r, name="set"):
    if len(s) != r:
        raise ValueError(f"{name} must have {r} elements, got {len(s)}")
    if any(not 1 <= x <= N for x in s):
        raise ValueError(f"{name} has elements outside 1..{N}")
    if any(s[i] >= s[i + 1] for i in range(len(s) - 1)):
        raise ValueError(f"{name} must be strictly increasing")


def set_to_partition(I, N, r=None) -> tuple:
    I = tuple(I)
    r = len(I) if r is None else r
    _check_set(I, N, r)
    return partition(I[r - x] - (r - x + 1) for x in range(1, r + 1))


def partition_to_set(lam, N, r) -> tuple:
    lam = tuple(lam) + (0,) * (r - len(lam))
    return tuple(lam[r - x] + x for x in range(1, r + 1))


def box_complement(lam, r, w) -> tuple:
    lam = tuple(lam) + (0,) * (r - len(lam))
    if len(lam) > r or (lam and lam[0] > w):
        raise ValueError(f"{lam} does not fit in a {r}x{w} box")
    return partition(w - lam[r - 1 - x] for x in range(r))


def tilde(J, N) -> tuple:
    return tuple(sorted(N + 1 - j for j in J))


# -- LR tableaux -------------------------------------------------------------

def _cells(lam, mu):
    mu = tuple(mu) + (0,) * (len(lam) - len(mu))
    return [(i, j) for i in range(len(lam)) for j in range(lam[i] - 1, mu[i] - 1, -1)]


def lr_tableaux(lam, mu, nu):
    """Yield every LR tableau of shape lam/mu and content nu as a row list."""
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    if not contains(lam, mu) or sum(lam) != sum(mu) + sum(nu):
        return
    if not nu:
        yield [[] for _ in lam]
        return
    mu_p = mu + (0,) * (len(lam) - len(mu))
    cells = _cells(lam, mu)
    fill: dict = {}
    count = [0] * (len(nu) + 1)

    def rec(k):
        if k == len(cells):
            yield [[fill[(i, j)] for j in range(mu_p[i], lam[i])] for i in range(len(lam))]
            return
        i, j = cells[k]
        hi = min(len(nu), i + 1)
        if j + 1 < lam[i]:
            hi = min(hi, fill[(i, j + 1)])
        lo = 1
        if i > 0 and j >= mu_p[i - 1] and j < lam[i - 1]:
            lo = fill[(i - 1, j)] + 1
        for v in range(lo, hi + 1):
            if count[v] >= nu[v - 1]:
                continue
            if v > 1 and count[v - 1] <= count[v]:
                continue
            count[v] += 1
            fill[(i, j)] = v
            yield from rec(k + 1)
            count[v] -= 1
        fill.pop((i, j), None)

    yield from rec(0)


@lru_cache(maxsize=None)
def _lr(lam, mu, nu):
    if not contains(lam, mu) or not contains(lam, nu) or sum(lam) != sum(mu) + sum(nu):
        return 0
    # enumerate with the smaller content; c is symmetric in mu, nu
    if sum(nu) > sum(mu):
        mu, nu = nu, mu
    return sum(1 for _ in lr_tableaux(lam, mu, nu))


def lr_coefficient(lam, mu, nu) -> int:
    return _lr(partition(lam), partition(mu), partition(nu))


# -- Schubert index triples ----------------------------------------------------

def dimension_condition(T: SetTriple) -> bool:
    return sum(i + j + k - 3 * x for x, (i, j, k) in enumerate(zip(T.I, T.J, T.K), 1)) == 2 * T.r * (T.N - T.r)


def intersection_number(T: SetTriple) -> int:
    if not dimension_condition(T):
        return 0
    N, r = T.N, T.r
    w = N - r
    a = box_complement(set_to_partition(T.I, N, r), r, w)
    b = box_complement(set_to_partition(T.J, N, r), r, w)
    return lr_coefficient(set_to_partition(T.K, N, r), a, b)


def subsets(N, r):
    return list(combinations(range(1, N + 1), r))


@lru_cache(maxsize=None)
def _horn(N, r, include_positive):
    out = []
    for I in subsets(N, r):
        for J in subsets(N, r):
            Jt = tilde(J, N)
            for K in subsets(N, r):
                T = SetTriple(N, r, I, Jt, tilde(K, N))
                if not dimension_condition(T):
                    continue
                c = intersection_number(T)
                if c == 1 or (include_positive and c > 0):
                    out.append(SetTriple(N, r, I, J, K))
    return tuple(out)


def horn_triples(N, r, include_positive=False):
    if not 1 <= r <= N:
        raise ValueError(f"need 1 <= r <= N, got r={r}, N={N}")
    return list(_horn(N, r, bool(include_positive)))


def all_horn_triples(N, include_positive=False):
    return [T for r in range(1, N + 1) for T in horn_triples(N, r, include_positive)]


def stability_check(T: SetTriple, N2: int) -> bool:
    if N2 <= T.N:
        raise ValueError("stability needs a strictly larger ambient dimension")
    here = intersection_number(T.reflected())
    there = intersection_number(SetTriple(N2, T.r, T.I, tilde(T.J, N2), tilde(T.K, N2)))
    return here == there
