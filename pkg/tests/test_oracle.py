import random

import pytest

from gda.errors import InfiniteCoefficientField, SizeBudgetExceeded
from gda.gmatrix import ShiftedMatrixAlgebra
from gda.oracle import (
    _abelian_type_from_order_stats,
    _order_stats_of,
    closure,
    commutator_subgroup_Sh,
    fm_block_dets,
    fm_identity,
    fm_inv,
    fm_mul,
    fm_nrd,
    projected_s0_order,
    s0_generators,
    sk_oracle,
    verify_closure_is_group,
)
from gda.samples import (
    graded_field,
    staircase_shifts,
    quaternion_symbol,
    quaternion_symbol_sub,
    quaternion_symbol_with_room,
    two_symbol_product,
    zeta8_symbol,
)

QUAT13 = quaternion_symbol(13)
TWOSYM = two_symbol_product(13)
ROOM5 = quaternion_symbol_with_room(5, 7)


def test_closure_trivial_and_cyclic():
    g5 = graded_field(5, 1)
    s = ShiftedMatrixAlgebra(g5, 2)
    f = g5.field
    ident = fm_identity(f, 2)
    grp = closure(s, [ident])
    assert grp.order == 1
    # diag(g, 1) with g generating GF(5)^*: cyclic of order 4
    rows = [list(r) for r in ident]
    rows[0][0] = f.primitive_root()
    grp = closure(s, [tuple(tuple(r) for r in rows)])
    assert grp.order == 4


def test_closure_sl2_f3():
    g3 = graded_field(3, 1)
    s = ShiftedMatrixAlgebra(g3, 2)
    f = g3.field
    gens = []
    for i, j in ((0, 1), (1, 0)):
        for x in f.units():
            rows = [list(r) for r in fm_identity(f, 2)]
            rows[i][j] = x
            gens.append(tuple(tuple(r) for r in rows))
    grp = closure(s, gens)
    # |SL_2(F_3)| = (9 - 1)(9 - 3)/2 = 24
    assert grp.order == 24
    rng = random.Random(0)
    assert verify_closure_is_group(grp, rng)


def test_closure_full_gl():
    for p, n, expected in ((3, 2, 48), (5, 2, 480)):
        g = graded_field(p, 1)
        s = ShiftedMatrixAlgebra(g, n)
        grp = closure(s, s0_generators(s))
        assert grp.order == expected == projected_s0_order(s)


def test_closure_budget():
    g13 = graded_field(13, 1)
    s = ShiftedMatrixAlgebra(g13, 2)
    with pytest.raises(SizeBudgetExceeded):
        closure(s, s0_generators(s), budget=100)


def test_closure_infinite_field():
    z8 = zeta8_symbol()
    s = ShiftedMatrixAlgebra(z8, 2)
    with pytest.raises(InfiniteCoefficientField):
        sk_oracle(s)


def test_commutator_subgroup_unshifted():
    # two-symbol GF(13), n = 2: [S_h^*, S_h^*] = SL_2(GF(13)), mu_2 I inside
    s = ShiftedMatrixAlgebra(TWOSYM, 2)
    grp = commutator_subgroup_Sh(s)
    assert grp.order == 2184  # 13 * (13^2 - 1)
    f = TWOSYM.field
    for m in grp.elements:
        dets = fm_block_dets(s, m)
        assert dets == [f.one]
    minus_i = tuple(
        tuple(f.minus_one if i == j else f.zero for j in range(2)) for i in range(2)
    )
    assert minus_i in grp.elements


def test_commutator_subgroup_graded_field_unshifted():
    # graded field: [S_h^*, S_h^*] = SL_n over GF(3) and GF(5)
    for p, expected in ((3, 24), (5, 120)):
        g = graded_field(p, 1)
        s = ShiftedMatrixAlgebra(g, 2)
        grp = commutator_subgroup_Sh(s)
        assert grp.order == expected


def test_commutator_subgroup_staircase():
    # staircase shifts: [S_h^*, S_h^*] = mu_e I_n, order 2
    s = ShiftedMatrixAlgebra(ROOM5, 2, staircase_shifts(ROOM5, 2, (0, 0, 1)))
    grp = commutator_subgroup_Sh(s)
    assert grp.order == 2
    f = ROOM5.field
    minus_i = tuple(
        tuple(f.minus_one if i == j else f.zero for j in range(2)) for i in range(2)
    )
    assert minus_i in grp.elements


def test_commutators_have_norm_one():
    for s in (
        ShiftedMatrixAlgebra(QUAT13, 2),
        ShiftedMatrixAlgebra(ROOM5, 2, staircase_shifts(ROOM5, 2, (0, 0, 1))),
        ShiftedMatrixAlgebra(quaternion_symbol_sub(5), 2, [(0, 0), (1, 0)]),
    ):
        grp = commutator_subgroup_Sh(s)
        f = s.algebra.field
        for m in grp.elements:
            assert fm_nrd(grp.context, m) == f.one


def test_sk_oracle_examples():
    # n = 1 is SK(E) itself
    assert sk_oracle(ShiftedMatrixAlgebra(TWOSYM, 1)).order == 2
    assert sk_oracle(ShiftedMatrixAlgebra(QUAT13, 1)).order == 1
    # two-symbol, n = 2 unshifted: order 4
    r = sk_oracle(ShiftedMatrixAlgebra(TWOSYM, 2))
    assert r.order == 4
    assert r.invariant_factors.invariant_factors == (4,)
    # staircase GF(5), n = 2, m = 7: order 4
    sh = ShiftedMatrixAlgebra(ROOM5, 2, staircase_shifts(ROOM5, 2, (0, 0, 1)))
    r = sk_oracle(sh)
    assert r.order == 4
    assert r.invariant_factors.invariant_factors == (2, 2)


def test_sk_oracle_exponent_four():
    # exponent-4 algebras: both routes match the closed forms
    from gda.samples import mixed_symbol_product, quartic_symbol
    from gda.sk import sk_E, sk_h_unshifted

    quartic = quartic_symbol(13)
    for n in (1, 2):
        closed = sk_E(quartic) if n == 1 else sk_h_unshifted(quartic, n)
        for method in ("closure", "abelianized"):
            orc = sk_oracle(ShiftedMatrixAlgebra(quartic, n), method=method)
            assert orc.invariant_factors == closed.invariant_factors

    mixed = mixed_symbol_product(17)
    assert sk_oracle(ShiftedMatrixAlgebra(mixed, 1)).invariant_factors.invariant_factors == (2,)
    r2 = sk_oracle(ShiftedMatrixAlgebra(mixed, 2), method="closure")
    assert r2.invariant_factors.invariant_factors == (4,)
    assert (
        sk_oracle(ShiftedMatrixAlgebra(mixed, 2), method="abelianized").invariant_factors
        == r2.invariant_factors
    )
    for n, factors in ((3, (2,)), (4, (8,))):
        orc = sk_oracle(ShiftedMatrixAlgebra(mixed, n), method="abelianized")
        assert orc.invariant_factors.invariant_factors == factors
        assert orc.invariant_factors == sk_h_unshifted(mixed, n).invariant_factors


def test_sk_oracle_modes_agree():
    cases = [
        ShiftedMatrixAlgebra(TWOSYM, 1),
        ShiftedMatrixAlgebra(TWOSYM, 2),
        ShiftedMatrixAlgebra(QUAT13, 2),
        ShiftedMatrixAlgebra(ROOM5, 2, staircase_shifts(ROOM5, 2, (0, 0, 1))),
        ShiftedMatrixAlgebra(ROOM5, 3, [(0, 0, 0), (0, 0, 1), (0, 0, 0)]),
        ShiftedMatrixAlgebra(quaternion_symbol_sub(5), 2, [(0, 0), (1, 0)]),
        ShiftedMatrixAlgebra(graded_field(5, 1), 2),
    ]
    for s in cases:
        a = sk_oracle(s, method="closure")
        b = sk_oracle(s, method="abelianized")
        assert a.invariant_factors == b.invariant_factors, repr(s)


def test_unramified_kernel_equals_commutator_closure():
    # graded fields, n = 2, GF(3) and GF(5): ker(det_E) inside S_0^* is
    # exactly the commutator subgroup of GL_n^h (the monomorphism statement)
    from gda.dieudonne import det_E
    from gda.oracle import fm_to_graded

    for p in (3, 5):
        g = graded_field(p, 1)
        s = ShiftedMatrixAlgebra(g, 2)
        grp = closure(s, s0_generators(s))
        kernel = {
            m
            for m in grp.elements
            if det_E(s, fm_to_graded(s, m)) == g.identity_class()
        }
        comm = commutator_subgroup_Sh(s)
        assert kernel == set(comm.elements)


def test_eta_surjective_onto_sh1_classes():
    # S_h^(1) is generated by the commutator subgroup of S_0^* together with
    # the eta images of mu_s(T_0)
    from gda.oracle import fm_from_graded
    from gda.sk import eta

    for e, n in ((quaternion_symbol(5), 2), (graded_field(5, 1), 2)):
        s = ShiftedMatrixAlgebra(e, n)
        f = e.field
        s0 = closure(s, s0_generators(s))
        sh1 = {m for m in s0.elements if fm_nrd(s, m) == f.one}
        gens = []
        for i, j in s.elementary_positions():
            for x in f.units():
                rows = [list(r) for r in fm_identity(f, n)]
                rows[i][j] = x
                gens.append(tuple(tuple(r) for r in rows))
        for w in e.mu_s.elements():
            gens.append(fm_from_graded(s, eta(s, w)))
        spanned = closure(s, gens)
        assert set(spanned.elements) == sh1


def test_randomized_cross_validation():
    # fuzz: random small algebras and shifts, closure vs abelianized vs the
    # closed form where it applies
    from gda.algebra import make_algebra
    from gda.scalars import PrimeField
    from gda.sk import sk_h_unshifted

    rng = random.Random(20240)
    trials = 0
    attempts = 0
    while trials < 10 and attempts < 60:
        attempts += 1
        p = rng.choice([3, 5, 13, 17])
        f = PrimeField(p)
        rank = rng.choice([2, 3])
        orders = [d for d in (1, 2, 4) if (p - 1) % d == 0]
        c = [[f.one] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i + 1, rank):
                d = rng.choice(orders)
                grp = f.mu(d)
                w = grp.elements()[rng.randrange(grp.order)]
                c[i][j] = w
                c[j][i] = f.inv(w)
        scale = rng.choice([1, 2])
        basis = [[scale if i == j else 0 for j in range(rank)] for i in range(rank)]
        e = make_algebra(f, rank, basis, c)
        pool = [tuple(rng.randrange(2) for _ in range(rank)) for _ in range(2)]
        s = ShiftedMatrixAlgebra(e, 2, pool)
        if projected_s0_order(s) > 80000:
            continue
        trials += 1
        a = sk_oracle(s, method="closure")
        b = sk_oracle(s, method="abelianized")
        assert a.invariant_factors == b.invariant_factors, (p, rank, pool)
        if s.eps_form.sizes == (2,):
            # same-coset shifts are graded-isomorphic to the unshifted algebra
            closed = sk_h_unshifted(e, 2)
            assert closed.invariant_factors == a.invariant_factors, (p, rank)
    assert trials == 10


def test_abelian_type_from_order_stats():
    assert _abelian_type_from_order_stats(1, {1: 1}).is_trivial
    assert _abelian_type_from_order_stats(4, {1: 1, 2: 3}).invariant_factors == (2, 2)
    assert _abelian_type_from_order_stats(4, {1: 1, 2: 1, 4: 2}).invariant_factors == (4,)
    assert _abelian_type_from_order_stats(8, {1: 1, 2: 3, 4: 4}).invariant_factors == (2, 4)
    assert _order_stats_of((2, 4)) == {1: 1, 2: 3, 4: 4}
    assert _order_stats_of(()) == {1: 1}


def test_fm_helpers():
    f = QUAT13.field
    rng = random.Random(1)
    for _ in range(20):
        m = tuple(
            tuple(f.random(rng) for _ in range(2)) for _ in range(2)
        )
        from gda.fieldmat import det as fdet

        if f.is_zero(fdet(f, [list(r) for r in m])):
            continue
        inv = fm_inv(f, m)
        assert fm_mul(f, m, inv) == fm_identity(f, 2)
