"""Quick invariant checks behind ``horndiv selftest`` (a few seconds)."""

import random

from .horn import analyze_all, horn_check
from .inverse import JordanData, feasible, realize, verify_realization
from .lr import SetTriple, horn_triples, lr_coefficient
from .matrix import PidMatrix, det, minors_gcd, snf
from .modules import Submodule, TorsionModule, ev_partitions
from .oracles import lr_bialternant
from .rings import ZZ_RING
from .valuation import partitions_of, partitions_up_to, subpartitions


def _snf(rng):
    R = ZZ_RING
    for _ in range(40):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = PidMatrix(R, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        res = snf(A)
        if not res.check(A) or not R.is_unit(det(res.U)) or not R.is_unit(det(res.V)):
            return False
        prod = 1
        for k, f in enumerate(reversed(res.factors), 1):
            prod *= f
            if prod != minors_gcd(A, k):
                return False
    return True


def _lr():
    for lam in partitions_up_to(5):
        for mu in subpartitions(lam):
            for nu in partitions_of(sum(lam) - sum(mu)):
                if lr_coefficient(lam, mu, nu) != lr_bialternant(lam, mu, nu):
                    return False
    return lr_coefficient((3, 2, 1), (2, 1), (2, 1)) == 2


def _table():
    want = [SetTriple.of(2, (1,), (1,), (1,)), SetTriple.of(2, (2,), (1,), (2,)), SetTriple.of(2, (2,), (2,), (1,))]
    return sorted(horn_triples(2, 1), key=str) == sorted(want, key=str)


def _analyze(rng):
    R = ZZ_RING
    M = TorsionModule.from_partitions(R, {2: (3, 2, 1)})
    for _ in range(3):
        S = Submodule(M, [[rng.randint(0, 7) for _ in range(3)] for _ in range(2)])
        for rep in analyze_all(M, S, seed=rng.randint(0, 999)):
            if rep.status == "ok" and not rep.ok:
                return False
            if not horn_check(rep.lam, rep.mu, rep.nu, rep.triple):
                return False
    return True


def _realize():
    for lam, mu, nu in (((2, 1), (1, 1), (1,)), ((3, 2, 1), (2, 1), (2, 1)), ((2,), (1,), (1,))):
        d = JordanData.at(2, lam, mu, nu)
        if not feasible(d):
            return False
        M, S = realize(d)
        if not verify_realization(d, M, S):
            return False
    return True


def run_all(seed=0):
    rng = random.Random(seed)
    return [
        ("snf transforms and minors", _snf(rng)),
        ("lr tableaux vs bialternant (|lambda| <= 5)", _lr()),
        ("horn triple table N=2", _table()),
        ("witness pipeline on Z/8+Z/4+Z/2", _analyze(rng)),
        ("inverse realization round trip", _realize()),
    ]
