import random

import pytest

from gda.bruhat import bruhat_decompose, is_strict, reconstruct
from gda.errors import NotHomogeneousMatrix, Singular
from gda.gmatrix import ShiftedMatrixAlgebra
from gda.samples import (
    staircase_shifts,
    quaternion_symbol,
    quaternion_symbol_sub,
    quaternion_symbol_with_room,
    zeta8_symbol,
)
from gda.sampling import (
    random_invertible_homogeneous,
    random_monomial,
    random_strict_tuple,
)

QUAT = quaternion_symbol(13)
Z8 = zeta8_symbol()
ROOM5 = quaternion_symbol_with_room(5, 7)
SUB = quaternion_symbol_sub(13)


def configs():
    yield ShiftedMatrixAlgebra(QUAT, 2)
    yield ShiftedMatrixAlgebra(QUAT, 3)
    yield ShiftedMatrixAlgebra(Z8, 2)
    yield ShiftedMatrixAlgebra(ROOM5, 2, staircase_shifts(ROOM5, 2, (0, 0, 1)))
    yield ShiftedMatrixAlgebra(SUB, 2, [(0, 0), (1, 0)])
    yield ShiftedMatrixAlgebra(ROOM5, 3, [(0, 0, 0), (0, 0, 1), (0, 0, 0)])


def test_identity_decomposition():
    s = ShiftedMatrixAlgebra(QUAT, 3)
    form = bruhat_decompose(s, s.identity())
    assert form.perm == (0, 1, 2)
    assert form.t.entries == s.identity().entries
    assert form.v.entries == s.identity().entries
    assert all(u.coeff == QUAT.field.one for u in form.units)
    assert form.t_certificate == ()
    assert form.degree == (0, 0)


def test_monomial_recovers_exactly():
    s = ShiftedMatrixAlgebra(QUAT, 3)
    rng = random.Random(0)
    for _ in range(50):
        m = random_monomial(s, rng)
        form = bruhat_decompose(s, s.monomial_to_matrix(m))
        assert form.perm == m.perm
        assert form.units == m.units
        assert form.t.entries == s.identity().entries
        assert form.v.entries == s.identity().entries


def test_roundtrip_and_degrees():
    for s in configs():
        rng = random.Random(1)
        zero = (0,) * s.algebra.ambient_rank
        for _ in range(40):
            a = random_invertible_homogeneous(s, rng)
            form = bruhat_decompose(s, a)
            assert reconstruct(s, form).entries == a.entries
            assert form.strict and is_strict(s, form)
            assert s.homogeneity(form.t) == zero
            assert s.homogeneity(form.v) == zero
            assert s.homogeneity(s.monomial_to_matrix(form.monomial())) == form.degree
            assert form.degree == s.homogeneity(a)


def test_certificate_multiplies_to_t():
    for s in configs():
        rng = random.Random(2)
        for _ in range(20):
            a = random_invertible_homogeneous(s, rng)
            form = bruhat_decompose(s, a)
            t = s.identity()
            for i, j, x in form.t_certificate:
                assert i > j
                # every factor passes the elementary degree validation
                t = s.mat_multiply(t, s.elementary(i, j, x))
            assert t.entries == form.t.entries


def test_construct_then_decompose_uniqueness():
    for s in configs():
        rng = random.Random(3)
        for _ in range(40):
            t, m, v = random_strict_tuple(s, rng)
            a = s.mat_multiply(t, s.mat_multiply(s.monomial_to_matrix(m), v))
            form = bruhat_decompose(s, a)
            assert form.perm == m.perm
            assert form.units == m.units
            assert form.t.entries == t.entries
            assert form.v.entries == v.entries


def test_partial_uniqueness_nonstrict():
    # pi and U are recovered even when the Bruhat product is not strict
    s = ShiftedMatrixAlgebra(QUAT, 2)
    e = QUAT
    rng = random.Random(4)
    for _ in range(40):
        t, m, _ = random_strict_tuple(s, rng)
        # force V with a (0, 1) entry regardless of strictness
        x = e.monomial_el(e.field.random_unit(rng), (0, 0))
        v = s.elementary(0, 1, x)
        a = s.mat_multiply(t, s.mat_multiply(s.monomial_to_matrix(m), v))
        form = bruhat_decompose(s, a)
        assert form.perm == m.perm
        assert form.units == m.units


def test_not_strict_detection():
    # n = 2, pi a transposition, V with nonzero upper entry: not strict
    s = ShiftedMatrixAlgebra(QUAT, 2)
    e = QUAT
    m = s.monomial(
        [e.unit(e.field.one, (0, 0)), e.unit(e.field.one, (0, 0))], (1, 0)
    )
    x = e.monomial_el(e.field.one, (0, 0))
    v = s.elementary(0, 1, x)
    from gda.bruhat import BruhatForm

    form = BruhatForm(
        t=s.identity(),
        t_certificate=(),
        units=m.units,
        perm=m.perm,
        v=v,
        degree=(0, 0),
        strict=False,
    )
    assert not is_strict(s, form)
    # the strict form of that product has the (1, 0) entry moved into T
    a = s.mat_multiply(s.monomial_to_matrix(m), v)
    form2 = bruhat_decompose(s, a)
    assert is_strict(s, form2)
    assert reconstruct(s, form2).entries == a.entries


def test_singular_detection():
    s = ShiftedMatrixAlgebra(QUAT, 2)
    e = QUAT
    one = e.one_el
    rows = [[one, one], [one, one]]
    with pytest.raises(Singular) as exc:
        bruhat_decompose(s, s.matrix(rows))
    assert exc.value.row == 2
    with pytest.raises(Singular):
        bruhat_decompose(s, s.zero_matrix())


def test_not_homogeneous_rejected():
    s = ShiftedMatrixAlgebra(QUAT, 2)
    e = QUAT
    mixed = e.add(e.one_el, e.monomial_el(e.field.one, (1, 0)))
    rows = [[mixed, e.zero_el], [e.zero_el, e.one_el]]
    with pytest.raises(NotHomogeneousMatrix):
        bruhat_decompose(s, s.matrix(rows))
