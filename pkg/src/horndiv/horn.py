"""Multiplicative Horn inequalities for (module, submodule) pairs.

:func:`analyze` follows the constructive route: three flags (standard basis
of M, reversed basis of S mapped into R^N through its lattice, reversed basis
of M/S), a point Q of the triple Schubert intersection, and the submodule
cut out by Q.  Its invariants, and those of its intersection with S and its
image in M/S, certify the divisibility item by item.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NoComplement, PreconditionError, WitnessNotFound
from .lr import SetTriple, horn_triples
from .matrix import PidMatrix, hnf_rows
from .modules import (Subquotient, Submodule, TorsionModule, complement, ev_partitions)
from .schubert import Flag, intersect_witness, project_to_module
from .valuation import divides, merge, partition


def _sum_at(part, idx):
    return sum(part[i - 1] if i - 1 < len(part) else 0 for i in idx)


def horn_sides(lam, mu, nu, T: SetTriple) -> dict:
    """Per atom: (sum over I of lambda, sum over J of mu + sum over K of nu)."""
    atoms = sorted(set(lam) | set(mu) | set(nu))
    return {a: (_sum_at(lam.get(a, ()), T.I), _sum_at(mu.get(a, ()), T.J) + _sum_at(nu.get(a, ()), T.K))
            for a in atoms}


def horn_check(lam, mu, nu, T: SetTriple) -> bool:
    return all(l <= r for l, r in horn_sides(lam, mu, nu, T).values())


def is_saturated_triple(lam, mu, nu, T) -> bool:
    return all(l == r for l, r in horn_sides(lam, mu, nu, T).values())


@dataclass
class HornReport:
    triple: SetTriple
    M: TorsionModule
    S: Submodule
    lam: dict
    mu: dict
    nu: dict
    theta_sub: list
    theta_quot: list
    beta: list = field(default_factory=list)
    beta1: list = field(default_factory=list)
    beta2: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    status: str = "ok"
    witness: object = None
    seed: int = 0
    perturbations: list = field(default_factory=list)
    special: Submodule = None
    special_sub: Submodule = None
    special_quot_lattice: list = None
    complements: dict = None

    @property
    def ok(self):
        return all(c["pass"] for c in self.checks)

    @property
    def saturation(self):
        return is_saturated_triple(self.lam, self.mu, self.nu, self.triple)

    def failed(self):
        return [c for c in self.checks if not c["pass"]]


def _random_base_change(ring, theta, rng, bound=3):
    """det-1 matrix L*U with theta_m/theta_n | L[n][m] (n > m): keeps bases bases."""
    N = len(theta)
    elems = [ring.from_exponents(t) for t in theta]
    L = PidMatrix.identity(ring, N).rows
    U = PidMatrix.identity(ring, N).rows
    for n in range(N):
        for m in range(N):
            c = ring.coerce(rng.randint(-bound, bound))
            if n > m:
                L[n][m] = c * ring.exact_div(elems[m], elems[n])
            elif n < m:
                U[n][m] = c
    return PidMatrix(ring, L) @ PidMatrix(ring, U)


def _flags(M: TorsionModule, S: Submodule, rng=None):
    R = M.ring
    one = R.field_one()
    N = M.N
    h = M.standard_basis()
    sub, quot = S.as_module, S.quotient
    y_sub = sub.basis_lifts()
    y_quot = quot.basis_lifts()
    if rng is not None:
        u = _random_base_change(R, M.theta, rng)
        h = (u @ PidMatrix(R, h)).rows
        # perturb the S-basis in its own coordinates, then map through the lattice
        u1 = _random_base_change(R, [M.to_ev(d) for d in sub.factors], rng)
        y_sub = (u1 @ PidMatrix(R, sub.Vinv) @ PidMatrix(R, sub.outer)).rows
        u2 = _random_base_change(R, [M.to_ev(d) for d in quot.factors], rng)
        y_quot = (u2 @ PidMatrix(R, quot.Vinv) @ PidMatrix(R, quot.outer)).rows
    to_f = lambda rows: [tuple(R.to_field(x) for x in r) for r in rows]
    E = Flag.from_lifts(to_f(h), N, one)
    F = Flag.from_lifts(to_f(y_sub)[::-1], N, one)
    G = Flag.from_lifts(to_f(y_quot)[::-1], N, one)
    return E, F, G


def _check(name, ok, detail=""):
    return {"name": name, "pass": bool(ok), "detail": detail}


def analyze(M: TorsionModule, S: Submodule, T: SetTriple, seed=0, reseeds=3, validate_triple=True) -> HornReport:
    if T.N != M.N:
        raise PreconditionError(f"triple is for N={T.N} but the module has rank {M.N}")
    if validate_triple and T not in horn_triples(T.N, T.r):
        raise PreconditionError(f"{T} is not a Horn triple")
    theta_sub, theta_quot = S.invariants(), S.quotient_invariants()
    rep = HornReport(T, M, S, M.partitions(), ev_partitions(theta_sub), ev_partitions(theta_quot),
                     theta_sub, theta_quot, seed=seed)
    sides = horn_sides(rep.lam, rep.mu, rep.nu, T)
    rep.checks.append(_check("horn", all(l <= r for l, r in sides.values()),
                             "; ".join(f"atom {a}: {l} <= {r}" for a, (l, r) in sides.items())))
    wt = {a: (sum(rep.lam.get(a, ())), sum(rep.mu.get(a, ())) + sum(rep.nu.get(a, ())))
          for a in set(rep.lam) | set(rep.mu) | set(rep.nu)}
    rep.checks.append(_check("weight identity", all(x == y for x, y in wt.values())))

    Rt = T.reflected()
    witness = None
    for attempt in range(reseeds + 1):
        rng = None if attempt == 0 else random.Random(f"{seed}:{attempt}")
        E, F, G = _flags(M, S, rng)
        try:
            witness = intersect_witness(E, F, G, Rt.I, Rt.J, Rt.K)
            break
        except WitnessNotFound:
            rep.perturbations.append({"attempt": attempt, "result": "not-found"})
    if witness is None:
        rep.status = "witness-unavailable"
        return rep
    witness.seed = seed
    rep.witness = witness
    if rep.perturbations:
        rep.perturbations.append({"attempt": len(rep.perturbations), "result": "found"})

    R = M.ring
    Msp = project_to_module(witness.Q, M)
    M1 = Msp.intersect(S)
    outer = hnf_rows(R, [list(r) for r in Msp.H] + [list(r) for r in S.H], M.N)
    M2 = Subquotient(R, outer, S.H)
    rep.special, rep.special_sub, rep.special_quot_lattice = Msp, M1, outer
    rep.beta = Msp.invariants()
    rep.beta1 = M1.invariants()
    rep.beta2 = [M.to_ev(d) for d in M2.factors]
    r = T.r
    for x, i in enumerate(T.I, 1):
        rep.checks.append(_check(f"(1) theta_{i} | beta_{x}", divides(M.theta[i - 1], rep.beta[x - 1])))
    for x, j in enumerate(T.J, 1):
        rep.checks.append(_check(f"(2) beta'_{x} | theta'_{j}", divides(rep.beta1[x - 1], theta_sub[j - 1])))
    for x, k in enumerate(T.K, 1):
        rep.checks.append(_check(f"(3) beta''_{x} | theta''_{k}", divides(rep.beta2[x - 1], theta_quot[k - 1])))
    for name, inv in (("beta", rep.beta), ("beta'", rep.beta1), ("beta''", rep.beta2)):
        rep.checks.append(_check(f"multiplicity of {name} <= {r}", all(b.is_unit() for b in inv[r:])))
    pb, p1, p2 = ev_partitions(rep.beta), ev_partitions(rep.beta1), ev_partitions(rep.beta2)
    atoms = set(pb) | set(p1) | set(p2)
    rep.checks.append(_check("(4) |beta| = |beta'| + |beta''|",
                             all(sum(pb.get(a, ())) == sum(p1.get(a, ())) + sum(p2.get(a, ())) for a in atoms)))
    return rep


def analyze_all(M, S, seed=0, reseeds=3):
    out = []
    for r in range(1, M.N + 1):
        for T in horn_triples(M.N, r):
            out.append(analyze(M, S, T, seed=seed, reseeds=reseeds, validate_triple=False))
    return out


def _unselected(parts: dict, idx, N):
    """Per-atom partition of the theta's whose (1-based) index is not in idx."""
    out = {}
    for a, p in parts.items():
        p = tuple(p) + (0,) * (N - len(p))
        out[a] = partition(p[i] for i in range(N) if i + 1 not in idx)
    return out


def _complement_in(parent_theta, ring, coords_gens):
    Mod = TorsionModule(ring, parent_theta)
    sub = Submodule(Mod, coords_gens)
    return Mod, sub, complement(Mod, sub)


def saturation_split(rep: HornReport) -> HornReport:
    if rep.witness is None:
        raise PreconditionError("report carries no witness")
    if not rep.saturation:
        raise PreconditionError("the Horn divisibility is not an equality")
    M, S, T = rep.M, rep.S, rep.triple
    R = M.ring
    N = M.N
    comps = {}
    # (a) the special submodule inside M
    try:
        C = complement(M, rep.special)
        got = ev_partitions(C.invariants())
        want = _unselected(rep.lam, T.I, N)
        ok = _same(got, want) and _same({a: merge(got.get(a, ()), ev_partitions(rep.beta).get(a, ())) for a in rep.lam}, rep.lam)
        comps["M"] = C
        rep.checks.append(_check("complement of M-special", ok, f"{got} vs {want}"))
    except NoComplement as e:
        rep.checks.append(_check("complement of M-special", False, str(e)))
    # (b) its intersection with S, inside S
    sub = S.as_module
    gens = [sub.coords(v) for v in rep.special_sub.H]
    try:
        Mod, s1, C1 = _complement_in(rep.theta_sub, R, gens)
        got = ev_partitions(C1.invariants())
        want = _unselected(rep.mu, T.J, N)
        comps["S"] = (Mod, C1)
        rep.checks.append(_check("complement of S-special", _same(got, want), f"{got} vs {want}"))
    except NoComplement as e:
        rep.checks.append(_check("complement of S-special", False, str(e)))
    # (c) its image in M/S
    quot = S.quotient
    gens = [quot.coords(v) for v in rep.special.H]
    try:
        Mod, s2, C2 = _complement_in(rep.theta_quot, R, gens)
        got = ev_partitions(C2.invariants())
        want = _unselected(rep.nu, T.K, N)
        comps["M/S"] = (Mod, C2)
        rep.checks.append(_check("complement of quotient-special", _same(got, want), f"{got} vs {want}"))
    except NoComplement as e:
        rep.checks.append(_check("complement of quotient-special", False, str(e)))
    rep.complements = comps
    return rep


def _same(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(tuple(a.get(k, ())) == tuple(b.get(k, ())) for k in keys)
