"""Realizing Jordan data (lambda, mu, nu) by a module and a submodule.

Feasibility is decided by interlacing, the determinant (weight) condition
and positivity of the LR coefficient.  Construction works one atom at a time
and peels M down to S along an LR tableau: the cells labelled k..1 are
removed one label at a time, each step taking the kernel of a surjection onto
a cyclic module R/p^{nu_k} so that the intermediate submodule has exactly the
type prescribed by the tableau.  Surjections are searched over p-power
coefficient patterns (then over random unit coefficients); every candidate
pair is verified by recomputing both invariant sequences.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .errors import Infeasible, NotFound
from .lr import lr_coefficient, lr_tableaux
from .modules import Submodule, TorsionModule, compose, ev_partitions
from .rings import ZZ_RING
from .valuation import contains, partition


@dataclass(frozen=True)
class JordanData:
    lam: dict
    mu: dict
    nu: dict

    @classmethod
    def at(cls, atom, lam, mu, nu):
        return cls({atom: partition(lam)}, {atom: partition(mu)}, {atom: partition(nu)})

    def __post_init__(self):
        for name in ("lam", "mu", "nu"):
            d = {int(a): partition(p) for a, p in getattr(self, name).items()}
            object.__setattr__(self, name, {a: p for a, p in d.items() if p})

    def atoms(self):
        return sorted(set(self.lam) | set(self.mu) | set(self.nu))

    def __hash__(self):
        return hash(tuple((a, self.lam.get(a, ()), self.mu.get(a, ()), self.nu.get(a, ())) for a in self.atoms()))


@dataclass
class Feasibility:
    ok: bool
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def feasible(d: JordanData) -> Feasibility:
    reasons = []
    for a in d.atoms():
        lam, mu, nu = d.lam.get(a, ()), d.mu.get(a, ()), d.nu.get(a, ())
        here = []
        if not contains(lam, mu):
            here.append(f"atom {a}: interlacing fails, mu {mu} not inside lambda {lam}")
        if not contains(lam, nu):
            here.append(f"atom {a}: interlacing fails, nu {nu} not inside lambda {lam}")
        if sum(lam) != sum(mu) + sum(nu):
            here.append(f"atom {a}: determinant condition fails, |lambda|={sum(lam)} != {sum(mu)}+{sum(nu)}")
        if not here and lr_coefficient(lam, mu, nu) == 0:
            here.append(f"atom {a}: LR coefficient c^{lam}_{{{mu},{nu}}} is zero")
        reasons += here
    return Feasibility(not reasons, reasons)


# -- construction ------------------------------------------------------------------

def _chain(lam, mu, tab):
    """Shapes mu = tau^0 ⊂ tau^1 ⊂ ... ⊂ tau^k = lam read off an LR tableau."""
    k = max((v for row in tab for v in row), default=0)
    mu_p = tuple(mu) + (0,) * (len(lam) - len(mu))
    out = []
    for j in range(k + 1):
        out.append(partition(mu_p[i] + sum(1 for v in tab[i] if v <= j) for i in range(len(lam))))
    return out


def _kernel(M: TorsionModule, T: Submodule, phi, q):
    """Kernel of the map T -> R/q sending the x-th basis vector of T to phi[x]."""
    R = M.ring
    basis = T.as_module.basis_lifts()
    x0 = next(x for x, c in enumerate(phi) if R.is_unit(R.gcd(c, q)))
    _, inv, _ = R.xgcd(phi[x0], q)
    gens = []
    for x, b in enumerate(basis):
        if x == x0:
            gens.append([q * v for v in b])
        else:
            c = R.divmod(phi[x] * inv, q)[1]
            gens.append([u - c * v for u, v in zip(b, basis[x0])])
    return Submodule(M, gens)


def _type(M, S):
    return ev_partitions(S.invariants())


def _phi_candidates(R, p, orders, nu_k, rng=None, tries=0):
    """p-power patterns for a surjection onto R/p^nu_k, then random units."""
    opts = []
    for t in orders:
        o = [R.zero]
        for e in range(nu_k):
            if t >= nu_k - e:
                o.append(p ** e)
        opts.append(o)
    for phi in product(*opts):
        if any(R.is_unit(c) for c in phi):
            yield list(phi)
    if rng is not None:
        q = p ** nu_k
        for _ in range(tries):
            phi = []
            for t, o in zip(orders, opts):
                c = rng.choice(o)
                if R.is_zero(c):
                    phi.append(c)
                else:
                    phi.append(R.divmod(c * R.coerce(rng.randint(1, 50)), q)[1])
            if any(R.is_unit(R.gcd(c, q)) for c in phi):
                yield phi


def _realize_atom(R, atom, lam, mu, nu, rng, tableau=None):
    p = R.atom_element(atom)
    M = TorsionModule.from_partitions(R, {atom: lam})
    if not nu:
        return M, M.whole()
    if not mu:
        return M, M.zero()
    tabs = [tableau] if tableau is not None else list(lr_tableaux(lam, mu, nu))
    for tab in tabs:
        chain = _chain(lam, mu, tab)
        k = len(chain) - 1

        def peel(T, j):
            # T has type chain[j]; find T' of type chain[j-1] with T/T' cyclic of order p^nu_j
            if j == 0:
                return T if _type_quot(T).get(atom, ()) == nu else None
            sub = T.as_module
            orders = [R.valuation(d, p) if not R.is_unit(d) else 0 for d in sub.factors]
            q = p ** nu[j - 1]
            for phi in _phi_candidates(R, p, orders, nu[j - 1], rng, tries=40):
                K = _kernel(M, T, phi, q)
                if _type(M, K).get(atom, ()) != chain[j - 1]:
                    continue
                res = peel(K, j - 1)
                if res is not None:
                    return res
            return None

        S = peel(M.whole(), k)
        if S is not None and _type(M, S).get(atom, ()) == mu and _type_quot(S).get(atom, ()) == nu:
            return M, S
    return None


def _type_quot(S):
    return ev_partitions(S.quotient_invariants())


def realize(d: JordanData, ring=ZZ_RING, seed=0, tableau=None):
    """Module with theta = lambda and a submodule of type mu and cotype nu."""
    f = feasible(d)
    if not f:
        raise Infeasible(f.reasons)
    rng = random.Random(seed)
    parts = {}
    for a in d.atoms():
        res = _realize_atom(ring, a, d.lam.get(a, ()), d.mu.get(a, ()), d.nu.get(a, ()), rng, tableau)
        if res is None:
            raise NotFound(f"atom {a}: construction search exhausted on feasible data")
        parts[a] = res
    if not parts:
        M = TorsionModule(ring, [])
        return M, M.zero()
    if len(parts) == 1:
        M, S = next(iter(parts.values()))
    else:
        M, S = compose(parts)
    if not verify_realization(d, M, S):
        raise NotFound("realization failed verification")
    return M, S


def verify_realization(d: JordanData, M, S) -> bool:
    return (M.partitions() == {a: p for a, p in d.lam.items()}
            and ev_partitions(S.invariants()) == d.mu
            and ev_partitions(S.quotient_invariants()) == d.nu)
