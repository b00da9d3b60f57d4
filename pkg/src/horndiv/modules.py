"""Finite torsion modules over a PID, their submodules and quotients.

A module is always held in diagonal form R^N / diag(theta) R^N with
theta[0] divisible by theta[1] and so on.  Elements are row vectors in R^N;
a submodule is recorded through the lattice L = span(generators) + Theta R^N,
stored as its row Hermite basis H (N x N, upper triangular).

Subquotients outer/inner of two full-rank lattices are diagonalized by SNF of
C = inner * outer^-1.  That single device gives S = L / Theta R^N,
M / S = R^N / L, and their bases, coordinates and lifts.
"""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .errors import DimensionError, DomainError, NoComplement, NotFound, PreconditionError
from .matrix import PidMatrix, det, hnf_rows, snf
from .valuation import ExponentVector, divides, is_chain, quo


def _int_matrix(ring, field_rows):
    return [[ring.from_field(x) for x in r] for r in field_rows]


def _inverse_unimodular(A: PidMatrix) -> list:
    return _int_matrix(A.ring, linalg.inverse(A.to_field()))


class TorsionModule:
    def __init__(self, ring, theta):
        theta = [t if isinstance(t, ExponentVector) else ring.to_exponents(ring.coerce(t)) for t in theta]
        if not is_chain(theta):
            raise PreconditionError("theta must satisfy theta[n+1] | theta[n]")
        self.ring = ring
        self.theta = tuple(theta)
        self.elements = tuple(ring.from_exponents(t) for t in theta)
        self.atoms = tuple(sorted({a for t in theta for a in t.support}))
        self._primes = {a: ring.atom_element(a) for a in self.atoms}

    @classmethod
    def from_partitions(cls, ring, parts: dict, n=None):
        """Module whose theta localized at atom a is the partition parts[a]."""
        if n is None:
            n = max((len(p) for p in parts.values()), default=0)
        theta = []
        for i in range(n):
            theta.append(ExponentVector({a: (p[i] if i < len(p) else 0) for a, p in parts.items()}))
        return cls(ring, theta)

    @property
    def N(self):
        return len(self.theta)

    def __repr__(self):
        return f"TorsionModule({self.ring.name}, {list(self.theta)})"

    def __eq__(self, other):
        return isinstance(other, TorsionModule) and self.ring == other.ring and self.theta == other.theta

    def partitions(self) -> dict:
        return ev_partitions(self.theta)

    def order_weight(self):
        return sum(t.weight() for t in self.theta)

    def theta_matrix(self) -> PidMatrix:
        return PidMatrix.diag(self.ring, self.elements)

    def reduce(self, v):
        R = self.ring
        if len(v) != self.N:
            raise DimensionError(f"vector of length {len(v)} in a module of rank {self.N}")
        return tuple(R.divmod(R.coerce(x), t)[1] for x, t in zip(v, self.elements))

    def is_zero(self, v):
        return not any(self.reduce(v))

    def scale(self, c, v):
        return self.reduce([c * x for x in v])

    def add(self, u, v):
        return self.reduce([a + b for a, b in zip(u, v)])

    def standard_basis(self):
        R = self.ring
        return [tuple(R.one if i == j else R.zero for j in range(self.N)) for i in range(self.N)]

    def to_ev(self, d) -> ExponentVector:
        """Exponent vector of a nonzero element supported on this module's atoms."""
        R = self.ring
        if R.is_zero(d):
            raise DomainError("zero has no exponent vector")
        out = {}
        for a, p in self._primes.items():
            v = R.valuation(d, p)
            if v:
                out[a] = v
        ev = ExponentVector(out)
        if not R.is_unit(R.exact_div(d, R.from_exponents(ev))):
            return R.to_exponents(d)
        return ev

    def whole(self) -> Submodule:
        return Submodule(self, self.standard_basis())

    def zero(self) -> Submodule:
        return Submodule(self, [])


def ev_partitions(evs) -> dict:
    atoms = sorted({a for t in evs for a in t.support})
    return {a: tuple(sorted((t[a] for t in evs if t[a]), reverse=True)) for a in atoms}


class Subquotient:
    """outer / inner for full-rank lattices inner ⊆ outer given by row bases."""

    def __init__(self, ring, outer, inner):
        self.ring = ring
        n = len(outer)
        self.n = n
        self.outer = [list(r) for r in outer]
        self.outer_inv = linalg.inverse([tuple(ring.to_field(x) for x in r) for r in outer]) if n else []
        fin = [tuple(ring.to_field(x) for x in r) for r in inner]
        C = _int_matrix(ring, linalg.matmul(fin, self.outer_inv)) if n else []
        res = snf(PidMatrix(ring, C))
        self.snf = res
        self.factors = [ring.normalize(d) for d in res.factors]
        self.V = res.V
        self.Vinv = _inverse_unimodular(res.V) if n else []

    def coords(self, x):
        """Coordinates of a point of the outer lattice, reduced mod the factors."""
        R = self.ring
        c = linalg.matmul([tuple(R.to_field(v) for v in x)], self.outer_inv)[0]
        c = [R.from_field(v) for v in c]
        z = (PidMatrix(R, [c]) @ self.V).rows[0]
        return [R.divmod(v, d)[1] if d else v for v, d in zip(z, self.factors)]

    def lift(self, z):
        R = self.ring
        c = (PidMatrix(R, [list(z)]) @ PidMatrix(R, self.Vinv)).rows[0]
        return (PidMatrix(R, [c]) @ PidMatrix(R, self.outer)).rows[0]

    def basis_lifts(self):
        """Row j: a lift of the j-th cyclic generator, annihilator factors[j]."""
        R = self.ring
        if not self.n:
            return []
        return (PidMatrix(R, self.Vinv) @ PidMatrix(R, self.outer)).rows


class Submodule:
    def __init__(self, parent: TorsionModule, generators=()):
        self.parent = parent
        R = parent.ring
        gens = [parent.reduce(g) for g in generators]
        self.generators = [g for g in gens if any(g)]
        rows = [list(g) for g in self.generators] + parent.theta_matrix().rows
        self.H = hnf_rows(R, rows, parent.N)
        if len(self.H) != parent.N:
            raise DomainError("lattice is not of full rank")
        self._sub = None
        self._quot = None

    @classmethod
    def from_lattice(cls, parent, H):
        return cls(parent, [list(r) for r in H])

    def __repr__(self):
        return f"Submodule(gens={self.generators})"

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.parent == other.parent and self.H == other.H

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.H))

    @property
    def as_module(self) -> Subquotient:
        if self._sub is None:
            self._sub = Subquotient(self.parent.ring, self.H, self.parent.theta_matrix().rows)
        return self._sub

    @property
    def quotient(self) -> Subquotient:
        if self._quot is None:
            R = self.parent.ring
            ident = PidMatrix.identity(R, self.parent.N).rows
            self._quot = Subquotient(R, ident, self.H)
        return self._quot

    def invariants(self):
        return [self.parent.to_ev(d) for d in self.as_module.factors]

    def quotient_invariants(self):
        return [self.parent.to_ev(d) for d in self.quotient.factors]

    def contains(self, v) -> bool:
        R = self.parent.ring
        field = [tuple(R.to_field(x) for x in r) for r in self.H]
        c = linalg.coordinates(tuple(R.to_field(x) for x in v), field)
        return c is not None and all(R.denominator(x) == R.one for x in c)

    def contains_sub(self, other: Submodule) -> bool:
        return all(self.contains(r) for r in other.H)

    def intersect(self, other: Submodule) -> Submodule:
        return Submodule.from_lattice(self.parent, lattice_intersection(self.parent.ring, self.H, other.H))

    def plus(self, other: Submodule) -> Submodule:
        return Submodule(self.parent, self.generators + other.generators)

    def is_zero(self):
        return not self.generators

    def is_whole(self):
        return all(self.parent.ring.is_unit(self.H[i][i]) for i in range(self.parent.N))

    def basis(self):
        """Generators with exact annihilators given by :meth:`invariants`."""
        return [self.parent.reduce(v) for v in self.as_module.basis_lifts()]


def lattice_intersection(ring, H1, H2):
    """Row basis of rowspace(H1) ∩ rowspace(H2) (both full rank)."""
    n = len(H1)
    zero = [ring.zero] * n
    rows = [list(a) + list(a) for a in H1] + [list(b) + zero for b in H2]
    H = hnf_rows(ring, rows, 2 * n)
    # rows with vanishing first half carry the intersection in their second half
    return [r[n:] for r in H if not any(r[:n])]


# -- invariants --------------------------------------------------------------

def submodule_invariants(M: TorsionModule, S: Submodule):
    return S.invariants()


def quotient_invariants(M: TorsionModule, S: Submodule):
    return S.quotient_invariants()


def jordan_model(P: PidMatrix) -> TorsionModule:
    if P.nrows != P.ncols:
        raise DimensionError("presentation must be square")
    if not det(P):
        raise PreconditionError("singular presentation defines an infinite module")
    R = P.ring
    return TorsionModule(R, [R.to_exponents(d) for d in snf(P).factors])


def present(P: PidMatrix, generators=()):
    """Module R^N / rowspace(P) and a submodule, moved to diagonal coordinates."""
    M = jordan_model(P)
    V = snf(P).V
    gens = [(PidMatrix(P.ring, [list(g)]) @ V).rows[0] for g in generators]
    return M, Submodule(M, gens)


# -- bases -------------------------------------------------------------------

def is_basis(M: TorsionModule, vs) -> bool:
    if len(vs) != M.N:
        return False
    if not Submodule(M, vs).is_whole():
        return False
    return all(M.is_zero([t * x for x in v]) for t, v in zip(M.elements, vs))


def base_change(M: TorsionModule, basis, u: PidMatrix):
    R = M.ring
    N = M.N
    if u.shape != (N, N):
        raise DimensionError("base change matrix must be N x N")
    problems = []
    d = det(u)
    if R.is_zero(d):
        problems.append("det(u) = 0")
    elif M.N and not _coprime_to(M, d, M.theta[0]):
        problems.append("det(u) shares a factor with theta_1")
    for n in range(N):
        for m in range(n):
            need = quo(M.theta[m], M.theta[n])
            if not R.divides(R.from_exponents(need), u[n, m]):
                problems.append(f"theta_{m + 1}/theta_{n + 1} does not divide u[{n + 1}][{m + 1}]")
    if problems:
        raise PreconditionError("; ".join(problems))
    out = []
    for n in range(N):
        acc = [R.zero] * N
        for m in range(N):
            if u[n, m]:
                acc = [a + u[n, m] * b for a, b in zip(acc, basis[m])]
        out.append(M.reduce(acc))
    if not is_basis(M, out):
        raise PreconditionError("base change did not produce a basis")
    return out


def _coprime_to(M, d, ev):
    R = M.ring
    return all(R.valuation(d, R.atom_element(a)) == 0 for a in ev.support)


# -- complements -------------------------------------------------------------

def complement(M: TorsionModule, S: Submodule) -> Submodule:
    """Invariant direct complement of S, or :class:`NoComplement`.

    Each cyclic generator of M/S is lifted and corrected by an element of S
    so that its order drops to the order of its image.  The congruences are
    solvable coordinatewise exactly when the extension splits.
    """
    R = M.ring
    sub, quot = S.as_module, S.quotient
    sig = sub.factors
    lifts = quot.basis_lifts()
    gens = []
    for y, d in zip(lifts, quot.factors):
        if R.is_unit(d):
            continue
        t = sub.coords([-d * v for v in y])
        c = []
        for ti, si in zip(t, sig):
            if R.is_unit(si):
                c.append(R.zero)
                continue
            g, a, _ = R.xgcd(d, si)
            if not R.divides(g, ti):
                raise NoComplement(f"order of a quotient generator cannot be lowered to {R.fmt(d)}")
            c.append(a * R.exact_div(ti, g))
        s = sub.lift(c)
        gens.append(M.reduce([a + b for a, b in zip(y, s)]))
    C = Submodule(M, gens)
    if not C.intersect(S).is_zero() or not C.plus(S).is_whole():
        raise NoComplement("internal check failed")
    return C


def is_direct_sum(M: TorsionModule, A: Submodule, B: Submodule) -> bool:
    return A.intersect(B).is_zero() and A.plus(B).is_whole()


# -- primary decomposition ---------------------------------------------------

def primary_decompose(M: TorsionModule, S: Submodule) -> dict:
    R = M.ring
    out = {}
    for a in M.atoms:
        local = TorsionModule(R, [ExponentVector({a: t[a]}) for t in M.theta])
        gens = [local.reduce(g) for g in S.generators]
        out[a] = (local, Submodule(local, gens))
    return out


def compose(parts: dict):
    """Inverse of :func:`primary_decompose` via CRT idempotents."""
    items = sorted(parts.items())
    if not items:
        raise PreconditionError("nothing to compose")
    R = items[0][1][0].ring
    N = max(m.N for _, (m, _) in items)
    theta = []
    for n in range(N):
        theta.append(ExponentVector({a: (m.theta[n][a] if n < m.N else 0) for a, (m, _) in items}))
    M = TorsionModule(R, theta)
    gens = []
    for a, (m, s) in items:
        idem = []
        for n in range(N):
            local = R.from_exponents(ExponentVector({a: theta[n][a]}))
            other = R.exact_div(M.elements[n], local)
            # e = other * inv(other mod local): 1 mod local, 0 mod other
            if R.is_unit(local):
                idem.append(R.zero)
                continue
            _, s_, _ = R.xgcd(other, local)
            idem.append(other * s_)
        for g in s.generators:
            g = list(g) + [R.zero] * (N - len(g))
            gens.append(M.reduce([x * e for x, e in zip(g, idem)]))
    return M, Submodule(M, gens)


# -- lattices in R^N -----------------------------------------------------------

def _saturation_data(ring, N, gens):
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return [], ring.one
    res = snf(PidMatrix(ring, gens))
    Vinv = _inverse_unimodular(res.V)
    rows, d = [], ring.one
    for i, f in enumerate(res.factors):
        if not ring.is_zero(f):
            rows.append(Vinv[i])
            d = d * f
    return hnf_rows(ring, rows, N), ring.normalize(d)


def saturate(ring, N, gens):
    return _saturation_data(ring, N, gens)[0]


def d_invariant(ring, N, gens) -> ExponentVector:
    d = _saturation_data(ring, N, gens)[1]
    return ring.to_exponents(d)


def is_saturated(ring, N, gens) -> bool:
    return ring.is_unit(_saturation_data(ring, N, gens)[1])


def select_unimodular_minor(ring, U, allowed, atom):
    """Lexicographically first r-subset of ``allowed`` whose minor is prime to ``atom``."""
    r = len(U)
    p = ring.atom_element(atom)
    cols = sorted(allowed)
    for js in combinations(cols, r):
        d = det(PidMatrix(ring, [[row[j] for j in js] for row in U]))
        if not ring.is_zero(d) and ring.valuation(d, p) == 0:
            return js
    raise NotFound(f"no {r}x{r} minor prime to atom {atom}")


# -- structural checks -------------------------------------------------------

def interlacing_ok(M: TorsionModule, S: Submodule) -> bool:
    sub, q = S.invariants(), S.quotient_invariants()
    return all(divides(a, t) and divides(b, t) for a, b, t in zip(sub, q, M.theta))


def determinant_identity_ok(M: TorsionModule, S: Submodule) -> bool:
    lam, mu, nu = M.partitions(), ev_partitions(S.invariants()), ev_partitions(S.quotient_invariants())
    return all(sum(lam.get(a, ())) == sum(mu.get(a, ())) + sum(nu.get(a, ())) for a in set(lam) | set(mu) | set(nu))
