import random

import pytest

from gda.errors import (
    ExceptionalF2Config,
    InfiniteT0Star,
    OrderTooSmall,
    ValidationError,
)
from gda.gmatrix import ShiftedMatrixAlgebra
from gda.samples import (
    gf2_graded_field,
    graded_field,
    staircase_shifts,
    quaternion_symbol,
    quaternion_symbol_with_room,
    two_symbol_product,
    zeta8_symbol,
)
from gda.sampling import random_degree0_invertible
from gda.sk import (
    eta,
    in_Sh1,
    kernel_group,
    nrd_S,
    nrd_S0,
    sk_E,
    sk_h_shifted,
    sk_h_unshifted,
    xi,
)

QUAT = quaternion_symbol(13)
TWOSYM = two_symbol_product(13)
ROOM5 = quaternion_symbol_with_room(5, 7)
GF = graded_field(13)
Z8 = zeta8_symbol()


def test_nrd_identity_and_diagonal():
    s = ShiftedMatrixAlgebra(QUAT, 2)
    f = QUAT.field
    assert nrd_S0(s, s.identity()) == f.one
    assert nrd_S(s, s.identity()) == f.one
    # staircase: nrd_S0(diag(u_i)) = prod u_i, nrd_S = (prod u_i)^s
    sh = ShiftedMatrixAlgebra(ROOM5, 3, staircase_shifts(ROOM5, 3, (0, 0, 1)))
    f5 = ROOM5.field
    units = [ROOM5.unit(f5.from_int(c), (0, 0, 0)) for c in (2, 3, 2)]
    d = sh.diagonal(units)
    assert nrd_S0(sh, d) == f5.from_int(12 % 5)
    assert nrd_S(sh, d) == f5.pow(f5.from_int(12 % 5), ROOM5.s)


def test_nrd_block_triangular_law():
    # upper block-triangular degree-0 matrix: nrd is the product over the
    # diagonal sub-blocks
    s = ShiftedMatrixAlgebra(QUAT, 4)
    e = QUAT
    f = e.field
    rng = random.Random(0)
    for _ in range(30):
        a = random_degree0_invertible(ShiftedMatrixAlgebra(QUAT, 2), rng)
        b = random_degree0_invertible(ShiftedMatrixAlgebra(QUAT, 2), rng)
        rows = [[e.zero_el] * 4 for _ in range(4)]
        for i in range(2):
            for j in range(2):
                rows[i][j] = a.entries[i][j]
                rows[2 + i][2 + j] = b.entries[i][j]
                # random degree-0 junk above the diagonal blocks
                rows[i][2 + j] = e.scalar_el(f.random(rng))
        big = s.matrix(rows)
        s2 = ShiftedMatrixAlgebra(QUAT, 2)
        assert nrd_S(s, big) == f.mul(nrd_S(s2, a), nrd_S(s2, b))


def test_nrd_multiplicative():
    for s in (
        ShiftedMatrixAlgebra(TWOSYM, 2),
        ShiftedMatrixAlgebra(ROOM5, 2, staircase_shifts(ROOM5, 2, (0, 0, 1))),
        ShiftedMatrixAlgebra(Z8, 2),
    ):
        rng = random.Random(1)
        f = s.algebra.field
        for _ in range(25):
            a = random_degree0_invertible(s, rng)
            b = random_degree0_invertible(s, rng)
            assert nrd_S(s, s.mat_multiply(a, b)) == f.mul(nrd_S(s, a), nrd_S(s, b))
            assert nrd_S(s, a) == f.pow(nrd_S0(s, a), s.algebra.s)


def test_in_Sh1():
    s = ShiftedMatrixAlgebra(TWOSYM, 2)
    e = TWOSYM
    f = e.field
    assert in_Sh1(s, s.identity())
    # nonzero degree: never in S_h^(1)
    m = s.monomial_to_matrix(
        s.monomial([e.unit(f.one, (1, 0, 0, 0))] * 2, (0, 1))
    )
    assert not in_Sh1(s, m)
    # diag(w, 1) with w in mu_s: w^s = 1
    for w in e.mu_s.elements():
        d = s.diagonal([e.unit(w, (0,) * 4), e.unit(f.one, (0,) * 4)])
        assert in_Sh1(s, d)
    # an element whose norm is not 1
    d = s.diagonal([e.unit(f.from_int(2), (0,) * 4), e.unit(f.one, (0,) * 4)])
    assert in_Sh1(s, d) == (f.pow(f.from_int(2), e.s) == f.one)


def test_eta_xi_composition():
    for e in (QUAT, TWOSYM):
        for n in (2, 3):
            s = ShiftedMatrixAlgebra(e, n)
            for w in e.mu_s.elements():
                m = eta(s, w)
                assert in_Sh1(s, m)
                assert xi(s, m) == w
    with pytest.raises(ValidationError):
        eta(ShiftedMatrixAlgebra(QUAT, 2), QUAT.field.from_int(2))


def test_eta_xi_homomorphism():
    e = TWOSYM
    s = ShiftedMatrixAlgebra(e, 2)
    f = e.field
    for w1 in e.mu_s.elements():
        for w2 in e.mu_s.elements():
            lhs = xi(s, s.mat_multiply(eta(s, w1), eta(s, w2)))
            assert lhs == f.mul(w1, w2)


def test_eta_xi_exceptional_config():
    e2 = gf2_graded_field()
    s = ShiftedMatrixAlgebra(e2, 2)
    with pytest.raises(ExceptionalF2Config):
        eta(s, e2.field.one)
    with pytest.raises(ExceptionalF2Config):
        xi(s, s.identity())


def test_sk_E_values():
    r = sk_E(QUAT)
    assert r.invariant_factors.is_trivial  # mu_2/mu_2
    r = sk_E(TWOSYM)
    assert r.invariant_factors.invariant_factors == (2,)  # mu_4/mu_2
    assert r.components == {"mu_s_order": 4, "mu_e_order": 2}
    assert sk_E(GF).invariant_factors.is_trivial
    assert sk_E(ROOM5).invariant_factors.is_trivial  # mu_2/mu_2 over GF(5)
    assert sk_E(zeta8_symbol()).invariant_factors.is_trivial  # mu_8/mu_8


def test_kernel_group():
    assert kernel_group(TWOSYM, 2).invariant_factors.invariant_factors == (2,)
    assert kernel_group(TWOSYM, 3).invariant_factors.is_trivial
    assert kernel_group(GF, 5).invariant_factors.is_trivial
    # periodicity in n mod e
    for e in (QUAT, TWOSYM, Z8):
        for n in range(1, 7):
            a = kernel_group(e, n)
            b = kernel_group(e, n + e.e)
            assert a.invariant_factors == b.invariant_factors
    # kernel order divides |Lambda / n Lambda|
    for e in (QUAT, TWOSYM, Z8):
        for n in range(1, 7):
            k = kernel_group(e, n)
            assert k.components["lambda_mod_n_order"] % max(k.invariant_factors.order, 1) == 0


def test_sk_h_unshifted():
    r = sk_h_unshifted(TWOSYM, 2)
    assert r.invariant_factors.invariant_factors == (4,)
    assert r.components["kernel_order"] == 2
    assert r.components["sk_E_order"] == 2
    r = sk_h_unshifted(TWOSYM, 3)
    assert r.invariant_factors.invariant_factors == (2,)
    # graded field: trivial for every n
    for n in (1, 2, 3, 4):
        assert sk_h_unshifted(GF, n).invariant_factors.is_trivial
    # exact sequence order identity |SK^h| = gcd(n,e) * |SK(E)|
    for e in (QUAT, TWOSYM, ROOM5, Z8):
        for n in range(1, 7):
            r = sk_h_unshifted(e, n)
            assert r.order == kernel_group(e, n).invariant_factors.order * sk_E(e).order


def test_sk_exponent_four_cases():
    from gda.samples import mixed_symbol_product, quartic_symbol

    quartic = quartic_symbol(13)
    assert quartic.s == 4 and quartic.e == 4
    assert sk_E(quartic).invariant_factors.is_trivial  # mu_4/mu_4
    assert sk_h_unshifted(quartic, 2).invariant_factors.invariant_factors == (2,)

    mixed = mixed_symbol_product(17)
    assert mixed.s == 8 and mixed.e == 4
    assert mixed.quotient_ET.invariant_factors == (2, 2, 4, 4)
    assert mixed.lam.invariant_factors == (2, 2, 2, 2, 2, 4)
    assert sk_E(mixed).invariant_factors.invariant_factors == (2,)
    expected = {1: (2,), 2: (4,), 3: (2,), 4: (8,), 5: (2,), 6: (4,)}
    for n, factors in expected.items():
        r = sk_h_unshifted(mixed, n)
        assert r.invariant_factors.invariant_factors == factors, n
        assert r.order == kernel_group(mixed, n).invariant_factors.order * 2


def test_sk_h_unshifted_exceptional():
    with pytest.raises(ExceptionalF2Config):
        sk_h_unshifted(gf2_graded_field(), 2)
    # n = 3 over GF(2) is fine
    assert sk_h_unshifted(gf2_graded_field(), 3).invariant_factors.is_trivial


def test_sk_h_shifted_values():
    # GF(5), s = e = 2, m = 7 > 6: |SK^h| = 4 * 2 / 2 = 4
    r = sk_h_shifted(ROOM5, 2, (0, 0, 1))
    assert r.invariant_factors.invariant_factors == (2, 2)
    assert r.order == 4
    # n = 3 with m = 10 > 9: |SK^h| = 16
    e10 = quaternion_symbol_with_room(5, 10)
    r = sk_h_shifted(e10, 3, (0, 0, 1))
    assert r.order == 16
    assert r.invariant_factors.invariant_factors == (4, 4)


def test_sk_h_shifted_exponent_four():
    # staircase shifts over a 4-torsion symbol: formula matches the oracle
    from gda.algebra import make_algebra
    from gda.oracle import sk_oracle
    from gda.samples import staircase_shifts
    from gda.scalars import PrimeField

    f = PrimeField(13)
    i4 = f.mu(4).generator
    for n, m, factors in ((2, 7, (12,)), (3, 10, (12, 12))):
        c = [[f.one, i4, f.one], [f.inv(i4), f.one, f.one], [f.one, f.one, f.one]]
        e = make_algebra(f, 3, [[1, 0, 0], [0, 1, 0], [0, 0, m]], c)
        assert e.s == 4 and e.e == 4
        r = sk_h_shifted(e, n, (0, 0, 1))
        assert r.invariant_factors.invariant_factors == factors
        s = ShiftedMatrixAlgebra(e, n, staircase_shifts(e, n, (0, 0, 1)))
        orc = sk_oracle(s, method="closure")
        assert orc.invariant_factors == r.invariant_factors


def test_sk_h_shifted_validation():
    with pytest.raises(OrderTooSmall):
        sk_h_shifted(quaternion_symbol_with_room(5, 6), 2, (0, 0, 1))
    with pytest.raises(ValidationError):
        sk_h_shifted(GF, 2, (0,))
    # delta of infinite coset order satisfies m > 3n
    e = quaternion_symbol_with_room(5, 7)
    from gda.algebra import make_algebra
    from gda.scalars import PrimeField

    f = PrimeField(5)
    one, m1 = f.one, f.minus_one
    narrow = make_algebra(
        f, 3, [[1, 0, 0], [0, 1, 0]], [[one, m1], [m1, one]]
    )
    r = sk_h_shifted(narrow, 2, (0, 0, 1))
    assert r.order == 4


def test_sk_h_shifted_structural_over_cyclotomic():
    e = zeta8_symbol()
    # need a delta of large coset order: extend ambient space
    from gda.algebra import make_algebra
    from gda.scalars import CyclotomicField

    f = CyclotomicField(8)
    z = f.zeta()
    wide = make_algebra(
        f, 3, [[1, 0, 0], [0, 1, 0]], [[f.one, z], [f.inv(z), f.one]]
    )
    with pytest.raises(InfiniteT0Star):
        sk_h_shifted(wide, 2, (0, 0, 1))
    r = sk_h_shifted(wide, 2, (0, 0, 1), structural=True)
    assert r.is_structural
    assert r.order is None
    assert r.components["t0_star_copies"] == 1
    assert r.components["mu_s_order"] == 8
    assert r.components["h_order"] == 8
