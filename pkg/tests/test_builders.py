"""Builders: doubling tower, extension blocks, cyclic algebras, map zoo."""

import pytest

from twistkit.algebra import vanishes_outside
from twistkit.builders import (cayley_dickson, cyclic_algebra,
                               extension_as_algebra, ground_algebra, make_map,
                               number_field_algebra, quadratic_conjugation,
                               standard_involution)
from twistkit.errors import HypothesisError, SingularMapError
from twistkit.fields import ExtensionField, PrimeField, RationalField
from twistkit.fixtures import sqrt2_block
from twistkit.forms import verify_multiplicative
from twistkit.linalg import Matrix, vec_eq, vec_scale
from twistkit.twist import division_exhaustive


def test_first_doubling_is_complex_like():
    q = RationalField()
    c2 = cayley_dickson(ground_algebra(q), q.element(-1))
    assert c2.dim == 2
    assert vec_eq(c2.unit, [q.one(), q.zero()])
    # i^2 = -1 and the norm is x^2 + y^2
    assert vec_eq(c2.multiply(c2.basis(1), c2.basis(1)),
                  vec_scale(q.element(-1), c2.unit))
    assert c2.norm.evaluate([q.element(3), q.element(4)]) == q.element(25)


def test_quaternion_table(H):
    q = H.field
    one, i, j, k = (H.basis(n) for n in range(4))
    cases = {
        (1, 2): (1, 3), (2, 1): (-1, 3), (2, 3): (1, 1), (3, 2): (-1, 1),
        (3, 1): (1, 2), (1, 3): (-1, 2),
    }
    for (a, b), (sign, target) in cases.items():
        assert vec_eq(H.multiply(H.basis(a), H.basis(b)),
                      vec_scale(q.element(sign), H.basis(target)))
    for n in range(1, 4):
        assert vec_eq(H.multiply(H.basis(n), H.basis(n)),
                      vec_scale(q.element(-1), one))


def test_octonion_unit_norm(O):
    assert O.dim == 8
    assert vec_eq(O.unit, O.basis(0))
    assert O.norm.certificate == "positive-definite"
    g = O.norm.gram()
    assert g == Matrix.identity(O.field, 8)


def test_doubling_errors():
    q = RationalField()
    with pytest.raises(HypothesisError):
        cayley_dickson(ground_algebra(q), q.zero())
    no_norm = number_field_algebra([-2, 0, 1])
    with pytest.raises(HypothesisError):
        cayley_dickson(no_norm, q.element(-1))


def test_standard_involution_scalar_identities(H, O):
    for alg in (H, O):
        conj = standard_involution(alg)
        for idx in range(alg.dim):
            e = alg.basis(idx)
            bar = conj.apply(e)
            prod = alg.multiply(e, bar)
            assert vec_eq(prod, vec_scale(alg.norm.evaluate(e), alg.unit))
            s = [a + b for a, b in zip(e, bar)]
            t = alg.norm.polarize(alg.unit, e)
            assert vec_eq(s, vec_scale(t, alg.unit))


def test_extension_as_algebra(F9, F27):
    three = PrimeField(3)
    assert vec_eq(F9.multiply(F9.basis(1), F9.basis(1)),
                  vec_scale(three.element(2), F9.basis(0)))
    frob = make_map(F9, "frob:1")
    assert frob.rows == Matrix(three, [[three.element(1), three.element(0)],
                                       [three.element(0), three.element(2)]]).rows
    s = make_map(F27, "frob:1")
    assert s @ s @ s == Matrix.identity(three, 3)


def test_cyclic_algebra_rational_fixture(cyclicQ):
    # contains K as the first coordinate block, with the block table equal to
    # the commutative source block
    k = sqrt2_block()
    assert vanishes_outside(cyclicQ, range(2))
    for i in range(2):
        for j in range(2):
            assert vec_eq(cyclicQ.table[i][j][:2], k.table[i][j])
    u = cyclicQ.basis(2)
    assert cyclicQ.norm.evaluate(u) == cyclicQ.field.element(-3)


def test_cyclic_algebra_finite_has_zero_divisors():
    kalg = extension_as_algebra(ExtensionField(3, 2))
    sigma = make_map(kalg, "frob:1")
    a = cyclic_algebra(kalg, sigma, PrimeField(3).element(2))
    assert a.dim == 4
    status, witness = division_exhaustive(a)
    assert status == "zero-divisor"
    x, y = witness
    assert any(x) and any(y) and not any(a.multiply(x, y))


def test_cyclic_algebra_relation_validation():
    kalg = extension_as_algebra(ExtensionField(3, 2))
    bad_sigma = Matrix.identity(kalg.field, 2).scale(kalg.field.element(2))
    with pytest.raises(HypothesisError):
        cyclic_algebra(kalg, bad_sigma, PrimeField(3).element(2))
    sigma = make_map(kalg, "frob:1")
    with pytest.raises(HypothesisError):
        cyclic_algebra(kalg, sigma, PrimeField(3).element(0))


def test_quadratic_conjugation():
    k = sqrt2_block()
    sig = quadratic_conjugation(k)
    assert vec_eq(sig.apply(k.basis(1)), vec_scale(k.field.element(-1), k.basis(1)))
    assert sig @ sig == Matrix.identity(k.field, 2)


def test_make_map_inner_and_reflection(H):
    fi = make_map(H, "inner:[0,1,0,0]")
    q = H.field
    assert [fi.rows[a][a] for a in range(4)] == [q.element(1), q.element(1),
                                                 q.element(-1), q.element(-1)]
    fr = make_map(H, {"map": "reflection", "q": [0, 1, 0, 0]})
    assert fr == fi
    # inner(q) composed with inner(q^-1) is the identity
    g1 = make_map(H, "inner:[1,1,0,0]")
    from twistkit.builders import algebra_inverse
    qinv = algebra_inverse(H, H.element_from_string("[1,1,0,0]"))
    g2 = make_map(H, {"map": "inner", "q": [repr(v) for v in qinv]})
    assert g1 @ g2 == Matrix.identity(q, 4)


def test_make_map_conjugation(H):
    conj = make_map(H, "conj")
    q = H.field
    assert [conj.rows[a][a] for a in range(4)] == [q.element(1), q.element(-1),
                                                   q.element(-1), q.element(-1)]


def test_make_map_errors(H, O):
    with pytest.raises(SingularMapError):
        make_map(H, {"map": "inner", "q": [0, 0, 0, 0]})
    # inner maps of non-central octonions are not automorphisms
    with pytest.raises(HypothesisError):
        make_map(O, {"map": "inner", "q": [0, 1, 0, 0, 0, 0, 0, 0]})
    no_norm = number_field_algebra([-2, 0, 1])
    with pytest.raises(HypothesisError):
        make_map(no_norm, "conj")
    with pytest.raises(SingularMapError):
        make_map(H, {"map": "explicit", "matrix": [["0"] * 4] * 4})
    with pytest.raises(HypothesisError):
        make_map(H, "frob:1")


def test_dim2_doubling_over_f5_multiplicative():
    f5 = PrimeField(5)
    d5 = cayley_dickson(ground_algebra(f5), f5.element(2))
    assert verify_multiplicative(d5, d5.norm)
    status, _ = division_exhaustive(d5)
    assert status == "certified"
    # the split doubling (square c) also composes, but has zero divisors
    d5s = cayley_dickson(ground_algebra(f5), f5.element(4))
    assert verify_multiplicative(d5s, d5s.norm)
    assert division_exhaustive(d5s)[0] == "zero-divisor"
