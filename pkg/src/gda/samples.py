"""Built-in sample algebras used by the test suites and the CLI fixtures."""

from __future__ import annotations

from .algebra import make_algebra
from .gmatrix import ShiftedMatrixAlgebra
from .scalars import CyclotomicField, PrimeField


def quaternion_symbol(p=13):
    """Quaternion-type symbol over GF(p): Gamma_E = Z^2, [e_1, e_2] = -1.

    Totally ramified with index 2 and exponent 2.
    """
    f = PrimeField(p)
    return make_algebra(
        f,
        2,
        [[1, 0], [0, 1]],
        [[f.one, f.minus_one], [f.minus_one, f.one]],
    )


def two_symbol_product(p=13):
    """Product of two independent quaternion-type symbols: index 4, exponent 2."""
    f = PrimeField(p)
    one, m1 = f.one, f.minus_one
    c = [[one] * 4 for _ in range(4)]
    c[0][1] = c[1][0] = m1
    c[2][3] = c[3][2] = m1
    basis = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return make_algebra(f, 4, basis, c)


def quartic_symbol(p=13):
    """Symbol with a commutation value of order 4: index 4, exponent 4.

    Needs p = 1 mod 4 so that GF(p) has a primitive fourth root of unity.
    """
    f = PrimeField(p)
    i4 = f.mu(4).generator
    if f.pow(i4, 2) != f.minus_one:
        raise ValueError(f"GF({p}) has no primitive fourth root of unity")
    return make_algebra(
        f,
        2,
        [[1, 0], [0, 1]],
        [[f.one, i4], [f.inv(i4), f.one]],
    )


def mixed_symbol_product(p=17):
    """A 2-torsion symbol times a 4-torsion symbol: index 8, exponent 4."""
    f = PrimeField(p)
    i4 = f.mu(4).generator
    if f.pow(i4, 2) != f.minus_one:
        raise ValueError(f"GF({p}) has no primitive fourth root of unity")
    one, m1 = f.one, f.minus_one
    c = [[one] * 4 for _ in range(4)]
    c[0][1] = c[1][0] = m1
    c[2][3] = i4
    c[3][2] = f.inv(i4)
    basis = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return make_algebra(f, 4, basis, c)


def graded_field(p=13, rank=1):
    """Trivial commutation: a graded field with s = e = 1."""
    f = PrimeField(p)
    basis = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    c = [[f.one] * rank for _ in range(rank)]
    return make_algebra(f, rank, basis, c)


def quaternion_symbol_with_room(p=5, m=7):
    """Quaternion symbol over GF(p) inside Z^3 with an extra direction.

    Gamma_E is spanned by (1,0,0), (0,1,0), (0,0,m); the vector (0,0,1) has
    coset order m modulo Gamma_E, which is what the shifted matrix examples
    need.
    """
    f = PrimeField(p)
    one, m1 = f.one, f.minus_one
    c = [[one, m1, one], [m1, one, one], [one, one, one]]
    basis = [[1, 0, 0], [0, 1, 0], [0, 0, m]]
    return make_algebra(f, 3, basis, c)


def zeta8_symbol():
    """Symbol algebra over Q(zeta_8) with [e_1, e_2] = zeta_8: index 8, exponent 8."""
    f = CyclotomicField(8)
    z = f.zeta()
    return make_algebra(
        f,
        2,
        [[1, 0], [0, 1]],
        [[f.one, z], [f.inv(z), f.one]],
    )


def quaternion_symbol_sub(p=13):
    """Quaternion-type symbol on the sublattice 2Z^2 of Z^2.

    Leaves room for shift vectors like (1, 0) of coset order 2.
    """
    f = PrimeField(p)
    return make_algebra(
        f,
        2,
        [[2, 0], [0, 2]],
        [[f.one, f.minus_one], [f.minus_one, f.one]],
    )


def gf2_graded_field():
    """Graded field over GF(2); M_2 over it is the exceptional configuration."""
    f = PrimeField(2)
    return make_algebra(f, 1, [[1]], [[f.one]])


def matrix_algebra(e, n, shifts=None):
    return ShiftedMatrixAlgebra(e, n, shifts)


def staircase_shifts(e, n, delta):
    """The shift pattern (0, delta, 2*delta, ..., (n-1)*delta)."""
    delta = tuple(int(x) for x in delta)
    return [tuple(i * d for d in delta) for i in range(n)]
