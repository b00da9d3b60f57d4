"""Independent brute-force oracles used by the tests and the acceptance suite.

Nothing in here calls the tableau enumerator, the SNF-based invariant code or
the witness solver; each oracle reaches its answer by a different route.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

from .valuation import conjugate, partition

# -- Schur polynomials through the bialternant --------------------------------
# polynomials are dicts {exponent tuple: int}


def _poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _alternant(exps, n):
    """a_exps = det[x_i ^ exps_j]."""
    from itertools import permutations
    out = {}
    for perm in permutations(range(n)):
        sign = 1
        p = list(perm)
        for i in range(n):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sign = -sign
        e = [0] * n
        for i in range(n):
            e[perm[i]] = exps[i]
        out[tuple(e)] = out.get(tuple(e), 0) + sign
    return {e: c for e, c in out.items() if c}


def _divide_linear(P, i, j, n):
    """Exact quotient of P by (x_i - x_j), by synthetic division in x_i."""
    # group P by the x_i exponent
    by_deg = {}
    for e, c in P.items():
        rest = e[:i] + (0,) + e[i + 1:]
        by_deg.setdefault(e[i], {})
        by_deg[e[i]][rest] = by_deg[e[i]].get(rest, 0) + c
    if not by_deg:
        return {}
    top = max(by_deg)
    q = {}
    carry = {}
    for k in range(top, 0, -1):
        # q_{k-1} = P_k + x_j q_k
        cur = dict(by_deg.get(k, {}))
        for e, c in carry.items():
            e2 = list(e)
            e2[j] += 1
            e2 = tuple(e2)
            cur[e2] = cur.get(e2, 0) + c
        cur = {e: c for e, c in cur.items() if c}
        carry = cur
        for e, c in cur.items():
            e2 = list(e)
            e2[i] = k - 1
            q[tuple(e2)] = c
    # consistency: P_0 must equal -x_j q_0
    rem = dict(by_deg.get(0, {}))
    for e, c in carry.items():
        e2 = list(e)
        e2[j] += 1
        e2 = tuple(e2)
        rem[e2] = rem.get(e2, 0) + c
    if any(rem.values()):
        raise ArithmeticError("inexact division by a linear factor")
    return q


@lru_cache(maxsize=None)
def schur_poly(nu, n):
    """s_nu(x_1..x_n) as a monomial dict, computed as a_{nu+delta} / a_delta."""
    nu = tuple(nu) + (0,) * (n - len(nu))
    if len(nu) > n:
        return ()
    delta = tuple(range(n - 1, -1, -1))
    P = _alternant(tuple(a + d for a, d in zip(nu, delta)), n)
    for i in range(n):
        for j in range(i + 1, n):
            P = _divide_linear(P, i, j, n)
    return tuple(sorted(P.items()))


def lr_bialternant(lam, mu, nu) -> int:
    """c^lam_{mu nu} = [x^{lam+delta}] a_{mu+delta} s_nu."""
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    if len(mu) > len(lam) or len(nu) > len(lam):
        return 0
    # conjugate when that needs fewer variables
    if lam and lam[0] < len(lam):
        lam, mu, nu = conjugate(lam), conjugate(mu), conjugate(nu)
        if len(mu) > len(lam) or len(nu) > len(lam):
            return 0
    n = len(lam)
    if n == 0:
        return 1
    delta = tuple(range(n - 1, -1, -1))
    a_mu = _alternant(tuple(a + d for a, d in zip(mu + (0,) * (n - len(mu)), delta)), n)
    s_nu = dict(schur_poly(nu, n))
    target = tuple(a + d for a, d in zip(lam + (0,) * (n - len(lam)), delta))
    total = 0
    for e, c in a_mu.items():
        need = tuple(t - x for t, x in zip(target, e))
        if min(need) >= 0:
            total += c * s_nu.get(need, 0)
    return total


# -- finite abelian p-groups ----------------------------------------------------

def group_elements(orders):
    return list(product(*[range(o) for o in orders]))


def subgroup_closure(gens, orders):
    """All elements of the subgroup generated by gens (breadth-first)."""
    zero = tuple(0 for _ in orders)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(g[i] % orders[i] for i in range(len(orders))) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % o for a, b, o in zip(x, g, orders))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _times(k, x, orders):
    return tuple((k * a) % o for a, o in zip(x, orders))


def _type_from_counts(counts, p):
    """Partition from |G[p^k]| for k = 0, 1, ..."""
    import math
    logs = [round(math.log(c, p)) for c in counts]
    conj = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
    conj = [c for c in conj if c]
    return conjugate(conj)


def subgroup_type(elems, orders, p):
    elems = list(elems)
    top = max(orders) if orders else 1
    counts = []
    k = 0
    while True:
        pk = p ** k
        counts.append(sum(1 for x in elems if not any(_times(pk, x, orders))))
        if counts[-1] == len(elems):
            break
        k += 1
        if pk > top:
            break
    return _type_from_counts(counts, p)


def quotient_type(sub, orders, p):
    sub = set(sub)
    allx = group_elements(orders)
    counts = []
    k = 0
    while True:
        pk = p ** k
        c = sum(1 for x in allx if _times(pk, x, orders) in sub)
        counts.append(c // len(sub))
        if c == len(allx):
            break
        k += 1
    return _type_from_counts(counts, p)


def all_subgroups(orders):
    """Every subgroup, each as a frozenset (closure over growing generator sets)."""
    allx = group_elements(orders)
    found = {frozenset(subgroup_closure([], orders))}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for x in allx:
                if x in H:
                    continue
                K = frozenset(subgroup_closure(list(H) + [x], orders)) if len(H) < 64 else \
                    frozenset(_closure_with(H, x, orders))
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return found


def _closure_with(H, x, orders):
    out = set(H)
    y = x
    while True:
        shifted = {tuple((a + b) % o for a, b, o in zip(h, y, orders)) for h in H}
        if shifted <= out:
            break
        out |= shifted
        y = tuple((a + b) % o for a, b, o in zip(y, x, orders))
    return out


# -- lattice enumeration of submodules -----------------------------------------

def hermite_lattices(p, lam):
    """Every lattice Theta Z^N ⊆ L ⊆ Z^N for theta = p^lam, as a Hermite row basis."""
    N = len(lam)

    def contains_theta(H):
        for i in range(N):
            # solve theta_i e_i = sum_k c_k H_k, triangular from the left
            target = [0] * N
            target[i] = p ** lam[i]
            c = [0] * N
            for j in range(N):
                s = target[j] - sum(c[k] * H[k][j] for k in range(j))
                if s % H[j][j]:
                    return False
                c[j] = s // H[j][j]
        return True

    for exps in product(*[range(l + 1) for l in lam]):
        d = [p ** a for a in exps]
        slots = [(i, j) for j in range(N) for i in range(j)]
        for vals in product(*[range(d[j]) for (_, j) in slots]):
            H = [[0] * N for _ in range(N)]
            for i in range(N):
                H[i][i] = d[i]
            for (i, j), v in zip(slots, vals):
                H[i][j] = v
            if contains_theta(H):
                yield H


# -- finite-field Schubert counting ----------------------------------------------

def _rank_mod(rows, p):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def grassmannian_points(N, r, p):
    """All r-dimensional subspaces of GF(p)^N as reduced echelon matrices."""
    for pivots in combinations(range(N), r):
        free = [(x, c) for x in range(r) for c in range(pivots[x] + 1, N) if c not in pivots]
        for vals in product(range(p), repeat=len(free)):
            Q = [[0] * N for _ in range(r)]
            for x, c in enumerate(pivots):
                Q[x][c] = 1
            for (x, c), v in zip(free, vals):
                Q[x][c] = v
            yield Q


def count_schubert_points(flags, sets, N, r, p):
    """Number of GF(p)-points Q with dim(Q ∩ F_{s_x}) >= x for every flag."""
    total = 0
    for Q in grassmannian_points(N, r, p):
        ok = True
        for F, S in zip(flags, sets):
            for x, s in enumerate(S, 1):
                # dim(Q ∩ F_s) = r + s - rank(Q + F_s)
                if r + s - _rank_mod(Q + F[:s], p) < x:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            total += 1
    return total
