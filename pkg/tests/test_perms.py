import pytest
from hypothesis import given, strategies as st

from nilweight.perms import MalformedPermError, Perm


def random_perm(draw_list):
    return Perm(draw_list)


perms = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.permutations(list(range(n))).map(Perm)
)


def test_identity_and_parse():
    e = Perm.identity(4)
    assert e.is_identity()
    assert Perm.parse("()", 4) == e
    assert Perm.parse("", 4) == e
    p = Perm.parse("(1,2)(3,4)", 4)
    assert p.images == (1, 0, 3, 2)
    assert p.cycle_string() == "(1,2)(3,4)"


def test_parse_rejects_repeated_point():
    with pytest.raises(MalformedPermError, match="repeated point"):
        Perm.parse("(1,2,2)", 3)
    with pytest.raises(MalformedPermError, match="two cycles"):
        Perm.parse("(1,2)(2,3)", 3)
    with pytest.raises(MalformedPermError, match="out of range"):
        Perm.parse("(1,5)", 3)
    with pytest.raises(MalformedPermError):
        Perm.parse("(1 2,3)", 3)


def test_composition_is_left_to_right():
    a = Perm.parse("(1,2)", 3)
    b = Perm.parse("(2,3)", 3)
    # 1 -a-> 2 -b-> 3, so the product maps point 1 to point 3
    assert (a * b).images[0] == 2
    assert (a * b).cycle_string() == "(1,3,2)"


def test_order_and_cycles():
    p = Perm.parse("(1,2)(3,4,5)", 5)
    assert p.order() == 6
    assert Perm.parse("(1,2,3,4,5)", 5).order() == 5
    assert Perm.identity(3).order() == 1


def test_conjugation_relabels_cycles():
    x = Perm.parse("(1,2,3)", 4)
    g = Perm.parse("(3,4)", 4)
    assert x.conjugate(g) == Perm.parse("(1,2,4)", 4)


@given(perms, perms, perms)
def test_associativity(p, q, r):
    if p.degree == q.degree == r.degree:
        assert ((p * q) * r) == (p * (q * r))


@given(perms)
def test_inverse_roundtrip(p):
    assert (p * p.inverse()).is_identity()
    assert p.inverse().inverse() == p


@given(perms)
def test_conjugate_definition(p):
    n = p.degree
    for g in [Perm.parse("(1,2)", 2), Perm.identity(2)]:
        pass  # degree mix is not allowed; use same-degree conjugators below
    q = Perm(tuple(reversed(range(n))))
    assert p.conjugate(q) == q.inverse() * p * q


@given(perms, perms)
def test_product_degree_guard(p, q):
    if p.degree == q.degree:
        assert (p * q).degree == p.degree
    else:
        with pytest.raises(MalformedPermError):
            p * q


def test_pow():
    p = Perm.parse("(1,2,3,4)", 4)
    assert p**2 == Perm.parse("(1,3)(2,4)", 4)
    assert p**-1 == p.inverse()
    assert (p**0).is_identity()
