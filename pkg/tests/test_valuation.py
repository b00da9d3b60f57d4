from hypothesis import given, strategies as st

from horndiv.valuation import (ExponentVector as EV, conjugate, contains, divides, from_local, gcd, is_chain,
                               is_partition, lcm, localize_family, merge, mul, partition, partitions_of,
                               partitions_up_to, product, quo, subpartitions)
from horndiv.errors import DomainError
import pytest

p, q = 2, 3
evs = st.dictionaries(st.sampled_from([2, 3, 5]), st.integers(0, 4), max_size=3).map(EV)


def test_divides_examples():
    assert divides(EV.unit(), EV({p: 5}))
    assert not divides(EV({p: 2}), EV({p: 1}))
    assert divides(EV({p: 1, q: 1}), EV({p: 2, q: 1}))


def test_gcd_lcm_quo_examples():
    assert gcd(EV({p: 2}), EV({q: 3})).is_unit()
    assert lcm(EV({p: 1}), EV({p: 2})) == EV({p: 2})
    assert quo(EV({p: 2, q: 1}), EV({p: 1})) == EV({p: 1, q: 1})
    with pytest.raises(DomainError):
        quo(EV({p: 1}), EV({q: 1}))


def test_zero_exponents_dropped():
    assert EV({p: 0, q: 2}) == EV({q: 2})
    assert EV({p: 0}).is_unit() and not EV({p: 0})


def test_localize_examples():
    assert localize_family([EV({p: 2, q: 1}), EV({p: 1, q: 3})]) == {p: [2, 1], q: [1, 3]}
    assert localize_family([]) == {}
    assert localize_family([EV({p: 1})]) == {p: [1]}


def test_merge_examples():
    assert merge((2,), (1,)) == (2, 1)
    assert merge((), ()) == ()
    assert merge((3, 1), (2, 2)) == (3, 2, 2, 1)


@given(evs, evs, evs)
def test_lattice_laws(a, b, c):
    assert gcd(a, b) == gcd(b, a) and lcm(a, b) == lcm(b, a)
    assert gcd(a, gcd(b, c)) == gcd(gcd(a, b), c)
    assert gcd(a, lcm(a, b)) == a and lcm(a, gcd(a, b)) == a
    assert mul(gcd(a, b), lcm(a, b)) == mul(a, b)
    assert divides(gcd(a, b), a) and divides(a, lcm(a, b))
    assert quo(mul(a, b), b) == a
    assert product([a, b, c]).weight() == a.weight() + b.weight() + c.weight()


@given(st.lists(evs, max_size=5))
def test_localize_roundtrip(fs):
    assert from_local(localize_family(fs), len(fs)) == fs


def test_partition_helpers():
    assert partition([1, 0, 3, 2]) == (3, 2, 1)
    assert is_partition((3, 3, 1)) and not is_partition((1, 2))
    assert conjugate((3, 1)) == (2, 1, 1)
    assert contains((3, 2), (2, 2)) and not contains((3,), (1, 1))
    assert len(list(partitions_of(5))) == 7
    assert sum(1 for _ in partitions_up_to(4)) == 1 + 1 + 2 + 3 + 5
    assert set(subpartitions((2, 1))) == {(), (1,), (2,), (1, 1), (2, 1)}


@given(st.integers(0, 9))
def test_conjugate_involution(n):
    for lam in partitions_of(n):
        assert conjugate(conjugate(lam)) == lam
        assert sum(conjugate(lam)) == n


def test_chain():
    assert is_chain([EV({p: 3}), EV({p: 1}), EV.unit()])
    assert not is_chain([EV({p: 1}), EV({p: 2})])
