"""Seeded random generators for elements, units and homogeneous matrices.

Random invertible matrices are built as products of homogeneous elementary
matrices, diagonal units and achievable monomial matrices, so invertibility
and homogeneity hold by construction while still covering the whole
homogeneous unit group.
"""

from __future__ import annotations

from .algebra import HomogeneousUnit


def random_unit(e, rng, radius=2):
    coeff = e.field.random_unit(rng)
    return HomogeneousUnit(coeff, random_gamma(e, rng, radius))


def random_gamma(e, rng, radius=2):
    deg = [0] * e.ambient_rank
    for g in e.gamma_basis:
        a = rng.randrange(-radius, radius + 1)
        for t in range(e.ambient_rank):
            deg[t] += a * g[t]
    return tuple(deg)


def random_element(e, rng, nterms=3, radius=2):
    terms = {}
    for _ in range(nterms):
        u = random_unit(e, rng, radius)
        terms[u.degree] = e.field.add(terms.get(u.degree, e.field.zero), u.coeff)
    return e.element(terms)


def random_block_diag_units(s, rng):
    """diag(u_1..u_n) with all u_i of degree 0: always in S_0^*."""
    e = s.algebra
    zero = (0,) * e.ambient_rank
    units = [HomogeneousUnit(e.field.random_unit(rng), zero) for _ in range(s.n)]
    return s.diagonal(units)


def random_elementary(s, rng, positions=None):
    e = s.algebra
    if positions is None:
        positions = s.elementary_positions()
    if not positions:
        return s.identity()
    i, j = positions[rng.randrange(len(positions))]
    d = tuple(a - b for a, b in zip(s.shifts[j], s.shifts[i]))
    x = e.monomial_el(e.field.random_unit(rng), d)
    return s.elementary(i, j, x)


def random_degree0_invertible(s, rng, factors=4):
    """Random element of S_0^*: elementaries times block-diagonal units."""
    positions = s.elementary_positions()
    out = random_block_diag_units(s, rng)
    for _ in range(factors):
        out = s.mat_multiply(out, random_elementary(s, rng, positions))
        if rng.randrange(2):
            out = s.mat_multiply(random_block_diag_units(s, rng), out)
    return out


def random_block_perm(s, rng):
    """A permutation preserving the eps-form blocks (valid degree-0 monomial)."""
    perm = list(range(s.n))
    for lo, hi in s.block_ranges():
        sub = list(range(lo, hi))
        rng.shuffle(sub)
        perm[lo:hi] = sub
    return tuple(perm)


def random_monomial(s, rng, radius=2):
    """Random homogeneous monomial matrix of a random achievable degree."""
    e = s.algebra
    cosets = s._achievable_cosets()
    rep, sigma = cosets[rng.randrange(len(cosets))]
    base = s.achievable_monomial(rep, sigma)
    # randomize within the fiber: random degree-0 block permutation with
    # random unit coefficients, and a random central monomial scalar
    if s.is_eps_form:
        perm = random_block_perm(s, rng)
    else:
        perm = tuple(range(s.n))
    zero = (0,) * e.ambient_rank
    units = [HomogeneousUnit(e.field.random_unit(rng), zero) for _ in range(s.n)]
    mixer = s.monomial(units, perm)
    out = s.monomial_mul(base, mixer)
    gamma = random_gamma(e, rng, radius)
    scalar = s.monomial(
        [HomogeneousUnit(e.field.random_unit(rng), gamma) for _ in range(s.n)],
        tuple(range(s.n)),
    )
    return s.monomial_mul(scalar, out)


def random_invertible_homogeneous(s, rng, factors=3):
    """Random element of S_h^*."""
    m = s.monomial_to_matrix(random_monomial(s, rng))
    left = random_degree0_invertible(s, rng, factors)
    right = random_degree0_invertible(s, rng, factors)
    return s.mat_multiply(left, s.mat_multiply(m, right))


def random_strict_tuple(s, rng):
    """(T, units, pi, V) in strict Bruhat position.

    T is unipotent lower with entries only where elementaries exist; V is
    unipotent upper, supported where the degree allows and where
    pi(i) < pi(j) keeps P_pi V P_pi^-1 upper triangular.
    """
    e = s.algebra
    n = s.n
    m = random_monomial(s, rng)
    pi = m.perm
    allowed = set(s.elementary_positions())

    t = s.identity()
    for i in range(n):
        for j in range(i):
            if (i, j) in allowed and rng.randrange(2):
                d = tuple(a - b for a, b in zip(s.shifts[j], s.shifts[i]))
                x = e.monomial_el(e.field.random_unit(rng), d)
                t = s.mat_multiply(t, s.elementary(i, j, x))

    v = s.identity()
    for i in range(n):
        for j in range(i + 1, n):
            # strictness: entry (i, j) of V lands at (pi(i), pi(j)) after
            # conjugation, so it must stay above the diagonal
            if (i, j) in allowed and pi[i] < pi[j] and rng.randrange(2):
                d = tuple(a - b for a, b in zip(s.shifts[j], s.shifts[i]))
                x = e.monomial_el(e.field.random_unit(rng), d)
                v = s.mat_multiply(v, s.elementary(i, j, x))
    return t, m, v
