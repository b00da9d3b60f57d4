"""Divisibility arithmetic for PID elements taken up to units.

An element is stored as an :class:`ExponentVector`, a finitely supported map
from atoms (integer labels of primes) to positive exponents.  Divisibility,
gcd and lcm become pointwise comparisons, minima and maxima of exponents.

Partitions are plain tuples of weakly decreasing positive integers; a
partition is the list of exponents of a divisibility chain at one atom.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from itertools import zip_longest

from .errors import DomainError

Atom = int
Partition = tuple


class ExponentVector:
    """Immutable exponent map ``atom -> exponent``; the empty map is the unit."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        data: dict[int, int] = {}
        for atom, exp in items:
            atom, exp = int(atom), int(exp)
            if atom < 0:
                raise ValueError(f"atom labels are nonnegative, got {atom}")
            if exp < 0:
                raise ValueError(f"negative exponent {exp} at atom {atom}")
            if exp:
                data[atom] = data.get(atom, 0) + exp
        self._items = tuple(sorted(data.items()))
        self._hash = hash(self._items)

    @classmethod
    def unit(cls) -> ExponentVector:
        return _UNIT

    @classmethod
    def single(cls, atom: int, exp: int) -> ExponentVector:
        return cls({atom: exp})

    def __getitem__(self, atom: int) -> int:
        for a, e in self._items:
            if a == atom:
                return e
        return 0

    def items(self):
        return self._items

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self._items)

    def is_unit(self) -> bool:
        return not self._items

    def weight(self) -> int:
        return sum(e for _, e in self._items)

    def as_dict(self) -> dict[int, int]:
        return dict(self._items)

    def __eq__(self, other):
        if not isinstance(other, ExponentVector):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return self._hash

    def __mul__(self, other: ExponentVector) -> ExponentVector:
        return mul(self, other)

    def __bool__(self):
        # truthy when non-unit, mirroring "nonconstant inner function"
        return bool(self._items)

    def __repr__(self):
        if not self._items:
            return "ExponentVector(unit)"
        body = ", ".join(f"{a}:{e}" for a, e in self._items)
        return f"ExponentVector({{{body}}})"


_UNIT = ExponentVector()


def divides(a: ExponentVector, b: ExponentVector) -> bool:
    return all(e <= b[atom] for atom, e in a.items())


def gcd(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    return ExponentVector({atom: min(e, b[atom]) for atom, e in a.items()})


def lcm(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    data = a.as_dict()
    for atom, e in b.items():
        data[atom] = max(data.get(atom, 0), e)
    return ExponentVector(data)


def mul(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    return ExponentVector(list(a.items()) + list(b.items()))


def quo(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    """Exact quotient ``a / b``; raises :class:`DomainError` unless ``b | a``."""
    if not divides(b, a):
        raise DomainError(f"{b} does not divide {a}")
    return ExponentVector({atom: e - b[atom] for atom, e in a.items()})


def product(vs: Iterable[ExponentVector]) -> ExponentVector:
    out = _UNIT
    for v in vs:
        out = mul(out, v)
    return out


def localize_family(fs: Sequence[ExponentVector]) -> dict[int, list[int]]:
    """Exponents of every member of ``fs`` at each atom of the union support."""
    atoms = sorted({a for f in fs for a in f.support})
    return {atom: [f[atom] for f in fs] for atom in atoms}


def from_local(local: Mapping[int, Sequence[int]], length: int | None = None) -> list[ExponentVector]:
    """Inverse of :func:`localize_family` (sequences are zero padded)."""
    if length is None:
        length = max((len(v) for v in local.values()), default=0)
    out = []
    for n in range(length):
        out.append(ExponentVector({a: (seq[n] if n < len(seq) else 0) for a, seq in local.items()}))
    return out


# -- partitions -------------------------------------------------------------

def partition(parts: Iterable[int]) -> Partition:
    """Canonical form: sorted decreasing, zeros dropped."""
    ps = [int(p) for p in parts]
    if any(p < 0 for p in ps):
        raise ValueError(f"negative part in {ps}")
    return tuple(sorted((p for p in ps if p), reverse=True))


def is_partition(parts: Sequence[int]) -> bool:
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)) and all(p >= 0 for p in parts)


def merge(mu: Sequence[int], nu: Sequence[int]) -> Partition:
    return partition(list(mu) + list(nu))


def weight(lam: Sequence[int]) -> int:
    return sum(lam)


def conjugate(lam: Sequence[int]) -> Partition:
    lam = partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def contains(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff the diagram of ``mu`` sits inside the diagram of ``lam``."""
    if len(partition(mu)) > len(partition(lam)):
        return False
    return all(m <= l for l, m in zip_longest(lam, mu, fillvalue=0))


def padded(lam: Sequence[int], n: int) -> tuple[int, ...]:
    lam = tuple(lam)
    if len(partition(lam)) > n:
        raise ValueError(f"{lam} has more than {n} nonzero parts")
    lam = tuple(p for p in lam if p)
    return lam + (0,) * (n - len(lam))


def partitions_of(n: int, max_part: int | None = None, max_len: int | None = None):
    """All partitions of ``n`` (decreasing lexicographic order)."""
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first, max_len - 1):
            yield (first,) + rest


def partitions_up_to(n: int, max_len: int | None = None):
    for k in range(n + 1):
        yield from partitions_of(k, max_len=max_len)


def subpartitions(lam: Sequence[int]):
    """Every partition contained in ``lam``."""
    lam = partition(lam)

    def rec(i, bound):
        if i == len(lam):
            yield ()
            return
        for p in range(min(bound, lam[i]), -1, -1):
            if p == 0:
                yield ()
            else:
                for rest in rec(i + 1, p):
                    yield (p,) + rest

    yield from rec(0, lam[0] if lam else 0)


def chain_exponents(chain: Sequence[ExponentVector]) -> dict[int, Partition]:
    """Per-atom partitions of a divisibility chain in decreasing order."""
    return {atom: partition(seq) for atom, seq in localize_family(list(chain)).items()}


def is_chain(chain: Sequence[ExponentVector]) -> bool:
    return all(divides(chain[i + 1], chain[i]) for i in range(len(chain) - 1))
