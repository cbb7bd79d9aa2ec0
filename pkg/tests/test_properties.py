"""Algebraic laws as hypothesis property tests."""

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_force_longest_path
from maxplusnet import EPS, MaxPlusMatrix, graph_view, oplus, otimes

scalars = st.one_of(st.just(EPS), st.integers(-50, 50))


def matrices(max_order=6, min_order=1):
    def build(n):
        return st.lists(
            st.lists(scalars, min_size=n, max_size=n),
            min_size=n, max_size=n).map(MaxPlusMatrix.from_rows)
    return st.integers(min_order, max_order).flatmap(build)


def same_order_matrices(count, max_order=6):
    def build(n):
        row = st.lists(scalars, min_size=n, max_size=n)
        mat = st.lists(row, min_size=n, max_size=n).map(
            MaxPlusMatrix.from_rows)
        return st.tuples(*[mat] * count)
    return st.integers(1, max_order).flatmap(build)


# --- scalar semiring axioms


@given(scalars, scalars, scalars)
def test_oplus_associative(a, b, c):
    assert oplus(oplus(a, b), c) == oplus(a, oplus(b, c))


@given(scalars, scalars)
def test_oplus_commutative(a, b):
    assert oplus(a, b) == oplus(b, a)


@given(scalars)
def test_oplus_idempotent(a):
    assert oplus(a, a) == a


@given(scalars, scalars, scalars)
def test_otimes_associative(a, b, c):
    assert otimes(otimes(a, b), c) == otimes(a, otimes(b, c))


@given(scalars, scalars)
def test_otimes_commutative_on_scalars(a, b):
    assert otimes(a, b) == otimes(b, a)


@given(scalars, scalars, scalars)
def test_otimes_distributes_over_oplus(a, b, c):
    assert otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c))


@given(scalars)
def test_neutral_and_absorbing_elements(a):
    assert oplus(a, EPS) == a
    assert otimes(a, 0) == a
    assert otimes(a, EPS) is EPS


# --- matrix laws


@given(same_order_matrices(3))
def test_mat_oplus_associative(xyz):
    x, y, z = xyz
    assert x.oplus(y).oplus(z) == x.oplus(y.oplus(z))


@settings(max_examples=40)
@given(same_order_matrices(3, max_order=4))
def test_mat_otimes_associative(xyz):
    x, y, z = xyz
    assert x.otimes(y).otimes(z) == x.otimes(y.otimes(z))


@settings(max_examples=40)
@given(same_order_matrices(3, max_order=4))
def test_mat_otimes_distributes(xyz):
    x, y, z = xyz
    assert x.otimes(y.oplus(z)) == x.otimes(y).oplus(x.otimes(z))


@given(matrices())
def test_null_and_identity_matrix_laws(x):
    n = x.order
    assert x.oplus(MaxPlusMatrix.nulls(n)) == x
    assert x.otimes(MaxPlusMatrix.eye(n)) == x
    assert MaxPlusMatrix.eye(n).otimes(x) == x
    assert x.otimes(MaxPlusMatrix.nulls(n)) == MaxPlusMatrix.nulls(n)


@settings(max_examples=40)
@given(matrices(max_order=4), st.integers(0, 6))
def test_star_power_expansion(x, q):
    lhs = MaxPlusMatrix.eye(x.order).oplus(x).power(q)
    rhs = MaxPlusMatrix.eye(x.order)
    for m in range(1, q + 1):
        rhs = rhs.oplus(x.power(m))
    assert lhs == rhs


@given(matrices(max_order=4))
def test_transpose_antihomomorphism(x):
    assert x.otimes(x).transpose() == x.transpose().otimes(x.transpose())


# --- graph interpretation


@settings(max_examples=60)
@given(matrices(max_order=5))
def test_longest_path_matches_brute_force(x):
    view = graph_view(x)
    expected = brute_force_longest_path(x)
    if expected is None:
        assert not view.acyclic
    else:
        assert view.acyclic
        assert view.longest_path_length == expected


@settings(max_examples=60)
@given(matrices(max_order=5))
def test_nilpotency_dichotomy(x):
    """Acyclic: X^q nulls exactly above the longest path length.
    Cyclic: X^q never nulls (checked up to 2n)."""
    n = x.order
    view = graph_view(x)
    nulls = MaxPlusMatrix.nulls(n)
    if view.acyclic:
        p = view.longest_path_length
        if p > 0:
            assert x.power(p) != nulls
        for q in range(p + 1, p + 3):
            assert x.power(q) == nulls
    else:
        for q in range(1, 2 * n + 1):
            assert x.power(q) != nulls
