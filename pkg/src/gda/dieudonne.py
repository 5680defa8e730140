"""The homogeneous Dieudonne determinant and its kernel.

det_E sends a homogeneous invertible matrix with strict Bruhat form
T U P_pi V to the class of sgn(pi) u_1 ... u_n modulo [E_h^*, E_h^*].  The
degree-0 determinant det_0 is the blockwise ordinary determinant over
E_0 = T_0, and the two fit into a commutative square through the inclusion
of unit groups.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fieldmat
from .algebra import AbelianizedUnit, HomogeneousUnit
from .bruhat import bruhat_decompose
from .errors import NotDegreeZero, NotHomogeneousMatrix, Singular
from .gmatrix import NOT_HOMOGENEOUS, ZERO_MATRIX, GradedMatrix, perm_sign, normalize_shift

DetValue = AbelianizedUnit


def delta_monomial(s, m):
    """Class of sgn(pi) u_1 ... u_n for a homogeneous monomial matrix."""
    e = s.algebra
    if s.monomial_degree(m) is NOT_HOMOGENEOUS:
        raise NotHomogeneousMatrix("monomial matrix is not homogeneous")
    prod = HomogeneousUnit(e.field.one, (0,) * e.ambient_rank)
    for u in m.units:
        prod = e.unit_mul(prod, u)
    if perm_sign(m.perm) < 0:
        prod = HomogeneousUnit(e.field.neg(prod.coeff), prod.degree)
    return e.abelianize(prod)


def block_det_product(s, a):
    """Product of the ordinary determinants of the degree-0 blocks."""
    lam = s.homogeneity(a)
    zero = (0,) * s.algebra.ambient_rank
    if lam is not ZERO_MATRIX and lam != zero:
        raise NotDegreeZero("determinant of the degree-0 part needs a degree-0 matrix")
    f = s.algebra.field
    out = f.one
    for block in s.block_decompose(a):
        d = fieldmat.det(f, block)
        if f.is_zero(d):
            raise Singular("a diagonal block is singular")
        out = f.mul(out, d)
    return out


def det0(s, a):
    """Dieudonne determinant of the semisimple degree-0 part.

    E_0 = T_0 is commutative here, so the value group E_0^*/[E_0^*, E_0^*]
    is E_0^* itself and the result is a plain field element.
    """
    return block_det_product(s, a)


def det0_class(s, a):
    """Image of det0 in E_h^*/[E_h^*, E_h^*]."""
    e = s.algebra
    return e.abelianize(e.unit(det0(s, a), (0,) * e.ambient_rank))


def det_E(s, a):
    """The homogeneous Dieudonne determinant of a matrix in S_h^*."""
    form = bruhat_decompose(s, a)
    return delta_monomial(s, form.monomial())


@dataclass(frozen=True)
class KernelWitness:
    """Factorization A = (product of elementary factors) * D.

    The factors are (i, j, x) elementary data in the source algebra; d is the
    block-diagonal matrix with blocks D_{r_l}(c_l), and c_values are the c_l
    with product lying in [E_h^*, E_h^*] = mu_e(T_0).
    """

    factors: tuple
    d: GradedMatrix
    c_values: tuple


def in_kernel(s, a):
    """Membership in ker(det_E), with a certificate when true.

    Returns (bool, KernelWitness or None).  A homogeneous matrix of nonzero
    degree is never in the kernel since its determinant has degree n*lambda.
    """
    e = s.algebra
    value = det_E(s, a)
    if value != e.identity_class():
        return False, None
    zero = (0,) * e.ambient_rank
    lam = s.homogeneity(a)
    assert lam == zero, "kernel members have degree zero"
    factors, d, cs = _elementary_diagonal_factorization(s, a)
    assert e.in_commutator_subgroup(_product(e.field, cs))
    return True, KernelWitness(tuple(factors), d, tuple(cs))


def _product(f, xs):
    out = f.one
    for x in xs:
        out = f.mul(out, x)
    return out


def _elementary_diagonal_factorization(s, a):
    """Write a degree-0 invertible matrix as elementaries times a D-matrix.

    Works blockwise over E_0 = T_0 in the eps-form algebra and pulls the
    factors back to the source coordinates.
    """
    e = s.algebra
    f = e.field
    norm = normalize_shift(s)
    work = norm.target if not s.is_eps_form else s
    blocks = s.block_decompose(a)
    ranges = work.block_ranges()
    global_factors = []
    c_values = []
    d_blocks = []
    for (lo, _hi), block in zip(ranges, blocks):
        r = len(block)
        ops, diag = fieldmat.gauss_to_diagonal(f, block)
        # ops applied in order give O_m ... O_1 B = diag, so
        # B = O_1^-1 O_2^-1 ... O_m^-1 diag with e_ij(x)^-1 = e_ij(-x)
        for i, j, x in ops:
            global_factors.append((lo + i, lo + j, f.neg(x)))
        transfer, c = fieldmat.diagonal_transfer_factors(f, diag)
        for i, j, x in transfer:
            global_factors.append((lo + i, lo + j, x))
        c_values.append(c)
        d_block = fieldmat.identity(f, r)
        d_block[r - 1][r - 1] = c
        d_blocks.append(d_block)
    d_eps = work.embed_blocks(d_blocks)
    if s.is_eps_form:
        factors = [(i, j, e.scalar_el(x)) for i, j, x in global_factors]
        d = d_eps
    else:
        factors = [
            norm.untransport_elementary(i, j, e.scalar_el(x))
            for i, j, x in global_factors
        ]
        d = norm.untransport(d_eps)
    return factors, d, c_values


def witness_product(s, witness):
    """Multiply a kernel witness back out."""
    out = s.identity()
    for i, j, x in witness.factors:
        out = s.mat_multiply(out, s.elementary(i, j, x))
    return s.mat_multiply(out, witness.d)


def check_diagram(s, samples):
    """det0 followed by the inclusion equals det_E on degree-0 invertibles."""
    for a in samples:
        if det0_class(s, a) != det_E(s, a):
            return False
    return True
