"""Strict Bruhat normal form A = T U P_pi V for homogeneous invertible matrices.

The elimination follows the classical construction row by row: the pivot of
row j is its leftmost nonzero entry (necessarily a homogeneous unit), and
rows below are cleared by homogeneous elementary matrices, so every
intermediate matrix stays homogeneous of the same degree.  T is returned
together with its certificate of elementary factors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotHomogeneousMatrix, Singular
from .gmatrix import (
    NOT_HOMOGENEOUS,
    ZERO_MATRIX,
    GradedMatrix,
    MonomialMatrix,
)


@dataclass(frozen=True)
class BruhatForm:
    t: GradedMatrix
    t_certificate: tuple  # (i, j, x) triples multiplying out to T, in order
    units: tuple  # diagonal of U as HomogeneousUnits
    perm: tuple  # pi, with the nonzero entry of column j in row pi[j]
    v: GradedMatrix
    degree: tuple
    strict: bool

    def monomial(self):
        return MonomialMatrix(self.units, self.perm)


def bruhat_decompose(s, a):
    """Unique strict Bruhat normal form of a homogeneous invertible matrix.

    Raises Singular (with the offending row) when a row reduces to zero, and
    NotHomogeneousMatrix when the input is not homogeneous.
    """
    e = s.algebra
    n = s.n
    lam = s.homogeneity(a)
    if lam is NOT_HOMOGENEOUS:
        raise NotHomogeneousMatrix("input matrix is not homogeneous")
    if lam is ZERO_MATRIX:
        raise Singular("zero matrix", row=1)

    rows = [list(r) for r in a.entries]
    rho = [None] * n
    cert = []
    for j in range(n):
        pcol = None
        for c in range(n):
            if not rows[j][c].is_zero:
                pcol = c
                break
        if pcol is None:
            raise Singular("row reduced to zero", row=j + 1)
        rho[j] = pcol
        piv_inv = e.unit_to_element(e.invert_homogeneous(e.as_unit(rows[j][pcol])))
        for i in range(j + 1, n):
            entry = rows[i][pcol]
            if entry.is_zero:
                continue
            x = e.multiply(entry, piv_inv)
            negx = e.neg(x)
            rows[i] = [
                e.add(rows[i][c], e.multiply(negx, rows[j][c])) for c in range(n)
            ]
            cert.append((i, j, x))
    assert sorted(rho) == list(range(n))

    units = tuple(e.as_unit(rows[i][rho[i]]) for i in range(n))
    pi = [None] * n
    for r, c in enumerate(rho):
        pi[c] = r
    pi = tuple(pi)

    # V = P_pi^-1 U^-1 A^(n-1): scale row i by u_i^-1, then move it to row rho(i)
    scaled = []
    for i in range(n):
        u_inv = e.unit_to_element(e.invert_homogeneous(units[i]))
        scaled.append([e.multiply(u_inv, x) for x in rows[i]])
    v_rows = [None] * n
    for i in range(n):
        v_rows[rho[i]] = tuple(scaled[i])
    v = GradedMatrix(tuple(v_rows), (0,) * e.ambient_rank)

    t = s.identity()
    for i, j, x in cert:
        t = s.mat_multiply(t, s.elementary(i, j, x))

    form = BruhatForm(
        t=t,
        t_certificate=tuple(cert),
        units=units,
        perm=pi,
        v=v,
        degree=lam,
        strict=True,
    )
    assert is_strict(s, form)
    return form


def is_strict(s, form):
    """True iff P_pi V P_pi^-1 is unipotent upper triangular."""
    pi = form.perm
    n = s.n
    rho = [0] * n
    for c, r in enumerate(pi):
        rho[r] = c
    e = s.algebra
    for i in range(n):
        # conjugated entry (i, j) is V[rho(i)][rho(j)]
        if form.v.entries[rho[i]][rho[i]] != e.one_el:
            return False
        for j in range(i):
            if not form.v.entries[rho[i]][rho[j]].is_zero:
                return False
    return True


def reconstruct(s, form):
    """Multiply T * U * P_pi * V back out."""
    m = s.monomial_to_matrix(form.monomial())
    return s.mat_multiply(form.t, s.mat_multiply(m, form.v))
