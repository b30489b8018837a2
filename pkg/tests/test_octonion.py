import numpy as np
import pytest

from albert_e6 import linalg
from albert_e6 import octonion as oc
from albert_e6.gf import FieldError, NotInvertibleError, field
from albert_e6.octonion import (
    Octonion,
    centre_basis,
    oct_annihilators,
    oct_inverse,
    oct_is_sociable_pair,
    oct_mul,
    rule_table,
)
from albert_e6.verify import octonion_identities

from conftest import random_unit


def e(F, name):
    return Octonion.basis(F, name)


def test_table_products(F):
    assert e(F, "e1") * e(F, "ew") == e(F, "e-wb")
    assert e(F, "ew") * e(F, "e1") == -e(F, "e-wb")
    assert e(F, "e-1") * e(F, "e1") == -e(F, "e0")
    assert e(F, "e-1") * e(F, "e-0") == e(F, "e-1")


def test_table_matches_generating_rules():
    assert rule_table() == oc.TABLE


def test_unit(F, rng):
    one = Octonion.one(F)
    assert one.coords == (0, 0, 0, 1, 1, 0, 0, 0)
    for _ in range(20):
        x = Octonion.random(F, rng)
        assert one * x == x == x * one


def test_conjugation_examples(F):
    assert e(F, "e0").conj() == e(F, "e-0")
    assert e(F, "e1").conj() == -e(F, "e1")
    assert Octonion.one(F).conj() == Octonion.one(F)


def test_norm_trace_examples(F):
    e0 = e(F, "e0")
    assert e0.norm() == 0 and e0.trace() == 1
    one = Octonion.one(F)
    assert one.norm() == 1 and one.trace() == F(2)
    assert (e(F, "e-1") + e(F, "e1")).norm() == 1


def test_polar_examples(F, rng):
    assert e(F, "e0").polar(e(F, "e-0")) == 1
    assert e(F, "e1").polar(e(F, "e0")) == 0
    for _ in range(20):
        x, y = Octonion.random(F, rng), Octonion.random(F, rng)
        assert x.polar(x) == F(2) * x.norm()
        assert x.polar(y) == (x * y.conj()).trace()


def test_inverse():
    F = field(3)
    one = Octonion.one(F)
    assert oct_inverse(one) == one
    x = e(F, "e0") - e(F, "e-0")
    assert x.norm() == F(2)
    assert oct_inverse(x) == x
    assert x * oct_inverse(x) == one == oct_inverse(x) * x
    with pytest.raises(NotInvertibleError):
        oct_inverse(e(F, "e1"))


def test_inverse_random(F, rng):
    for _ in range(20):
        u = random_unit(F, rng)
        assert u * u.inverse() == Octonion.one(F)


def test_annihilators_of_basis(F):
    for name in ("e1", "e0", "ew", "e-wb"):
        x = e(F, name)
        left, right = oct_annihilators(x)
        assert len(left) == len(right) == 4
        assert all((x.conj() * y).is_zero() for y in left)
        assert all((y * x.conj()).is_zero() for y in right)


def test_annihilators_reject_invertible_and_zero(F):
    with pytest.raises(ValueError):
        oct_annihilators(Octonion.one(F))
    with pytest.raises(ValueError):
        oct_annihilators(Octonion.zero(F))


def test_centre_is_scalars(F):
    basis = centre_basis(F)
    assert len(basis) == 1
    assert basis[0].as_scalar() is not None


def test_as_scalar():
    F = field(5)
    assert Octonion.scalar(F, 3).as_scalar() == F(3)
    with pytest.raises(FieldError):
        e(F, "e0").as_scalar()


def test_not_commutative_not_associative(F):
    assert e(F, "e0") * e(F, "e1") != e(F, "e1") * e(F, "e0")
    basis = [Octonion.basis(F, i) for i in range(8)]
    assert any((x * y) * z != x * (y * z) for x in basis for y in basis for z in basis)


def test_sociable_pairs(F):
    one = Octonion.one(F)
    assert oct_is_sociable_pair(one, one)
    # e0 and e-0 are orthogonal idempotents in an associative subalgebra
    assert oct_is_sociable_pair(e(F, "e0"), e(F, "e-0"))
    x, y = e(F, "e1"), e(F, "ew")
    expect = all((x * y) * z == x * (y * z) for z in (Octonion.basis(F, i) for i in range(8)))
    assert oct_is_sociable_pair(e(F, "e1"), e(F, "ew")) == expect


def test_identities_exhaustive_pairs_gf2():
    F = field(2)
    X = np.indices((2,) * 8).reshape(8, -1).T
    I, J = (t.ravel() for t in np.meshgrid(np.arange(256), np.arange(256), indexing="ij"))
    checks = octonion_identities(F, X[I], X[J], X[J[::-1]])
    for name, ok in checks.items():
        assert ok.all(), name


@pytest.mark.parametrize("q", [3, 4, 5])
def test_identities_random_triples(q, rng):
    F = field(q)
    X, Y, Z = (F.random(rng, (20000, 8)) for _ in range(3))
    for name, ok in octonion_identities(F, X, Y, Z).items():
        assert ok.all(), name


def test_parse_and_format(F, rng):
    for _ in range(10):
        x = Octonion.random(F, rng)
        assert Octonion.parse(F, str(x)) == x
    assert Octonion.parse(F, "-e1") == -e(F, "e1")
    assert Octonion.parse(F, "0").is_zero()
    with pytest.raises(FieldError):
        Octonion.parse(F, "[1,2]")


def test_left_right_matrices(F, rng):
    x, y = Octonion.random(F, rng), Octonion.random(F, rng)
    L = oc.left_matrix(F, x.coords)
    R = oc.right_matrix(F, x.coords)
    yv = np.array(y.coords)
    assert tuple(linalg.matmul(F, yv[None], L)[0]) == oct_mul(x, y).coords
    assert tuple(linalg.matmul(F, yv[None], R)[0]) == oct_mul(y, x).coords
