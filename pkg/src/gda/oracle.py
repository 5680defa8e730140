"""Brute-force verification over finite coefficient fields.

The degree-0 unit group S_0^* is a finite product of general linear groups
over T_0, represented here as plain n x n tuples of field values in the
eps-form coordinates.  Two independent routes compute SK^h:

  * closure mode enumerates S_0^* by breadth-first multiplication,
    filters the reduced-norm-1 subgroup, builds the commutator subgroup of
    S_h^* as a normal closure of generator commutators, counts cosets and
    reads the abelian isomorphism type off the element-order statistics;

  * abelianized mode collapses the blockwise-determinant kernel (a product
    of special linear groups, classically inside the commutator subgroup)
    and computes the quotient of the two resulting subgroups of (T_0^*)^k
    by integer lattice arithmetic.

Both are independent of the closed-form route in module sk; closure mode is
exact brute force and is used to cross-check abelianized mode on small
instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from . import fieldmat
from .errors import (
    ExceptionalF2Config,
    InfiniteCoefficientField,
    SizeBudgetExceeded,
)
from .gmatrix import ShiftedMatrixAlgebra, normalize_shift
from .grading import FiniteAbelianGroup, Lattice, kernel_mod, quotient
from .sk import GroupDescription

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """An explicitly enumerated group of degree-0 matrices in eps-form."""

    context: ShiftedMatrixAlgebra
    elements: dict  # key (the matrix tuple) -> matrix tuple

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, m):
        return m in self.elements

    def sample(self, rng, count):
        keys = list(self.elements)
        return [keys[rng.randrange(len(keys))] for _ in range(count)]


# -- fast degree-0 matrices over T_0 ------------------------------------------


def fm_identity(f, n):
    return tuple(tuple(f.one if i == j else f.zero for j in range(n)) for i in range(n))


def fm_mul(f, a, b):
    n = len(a)
    out = []
    for i in range(n):
        arow = a[i]
        row = []
        for j in range(n):
            acc = f.zero
            for t in range(n):
                x = arow[t]
                if not f.is_zero(x):
                    y = b[t][j]
                    if not f.is_zero(y):
                        acc = f.add(acc, f.mul(x, y))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def fm_inv(f, a):
    inv = fieldmat.inverse(f, [list(r) for r in a])
    return tuple(tuple(r) for r in inv)


def fm_from_graded(s_eps, a):
    """Degree-0 GradedMatrix in an eps-form algebra -> fast matrix."""
    blocks = s_eps.block_decompose(a)
    f = s_eps.algebra.field
    n = s_eps.n
    rows = [[f.zero] * n for _ in range(n)]
    for (lo, _), block in zip(s_eps.block_ranges(), blocks):
        for i, brow in enumerate(block):
            for j, x in enumerate(brow):
                rows[lo + i][lo + j] = x
    return tuple(tuple(r) for r in rows)


def fm_to_graded(s_eps, m):
    e = s_eps.algebra
    rows = []
    for i in range(s_eps.n):
        rows.append(tuple(e.scalar_el(x) for x in m[i]))
    return s_eps.matrix(rows)


def fm_block_dets(s_eps, m):
    f = s_eps.algebra.field
    out = []
    for lo, hi in s_eps.block_ranges():
        block = [[m[i][j] for j in range(lo, hi)] for i in range(lo, hi)]
        out.append(fieldmat.det(f, block))
    return out


def fm_nrd(s_eps, m):
    f = s_eps.algebra.field
    acc = f.one
    for d in fm_block_dets(s_eps, m):
        acc = f.mul(acc, d)
    return f.pow(acc, s_eps.algebra.s)


# -- generators -----------------------------------------------------------------


def s0_generators(s_eps):
    """Fast generators of S_0^*: in-block elementaries and one diagonal unit per block."""
    f = s_eps.algebra.field
    if not f.is_finite:
        raise InfiniteCoefficientField("the oracle needs a finite coefficient field")
    n = s_eps.n
    gens = []
    w = f.primitive_root()
    for lo, hi in s_eps.block_ranges():
        for i in range(lo, hi):
            for j in range(lo, hi):
                if i != j:
                    rows = [list(r) for r in fm_identity(f, n)]
                    rows[i][j] = f.one
                    gens.append(tuple(tuple(r) for r in rows))
        if w != f.one:
            rows = [list(r) for r in fm_identity(f, n)]
            rows[lo][lo] = w
            gens.append(tuple(tuple(r) for r in rows))
    return gens


def monomial_generators(s_eps):
    """Homogeneous monomial generators: central scalars and coset witnesses."""
    e = s_eps.algebra
    out = []
    ident = tuple(range(s_eps.n))
    for g in e.gamma_basis:
        units = [e.unit(e.field.one, g) for _ in range(s_eps.n)]
        out.append(s_eps.monomial(units, ident))
    zero_rep = e.gamma_E.coset_rep((0,) * e.ambient_rank)
    for rep, sigma in s_eps._achievable_cosets():
        if rep == zero_rep:
            continue
        out.append(s_eps.achievable_monomial(rep, sigma))
    return out


@dataclass(frozen=True)
class _ConjMap:
    """Conjugation by a homogeneous monomial, acting on fast matrices.

    Entry (i, j) of m a m^-1 is twist[i][j] * a[rho(i)][rho(j)], and the
    blocks get permuted; the twists are field scalars because homogeneous
    components are one-dimensional.
    """

    rho: tuple
    twist: tuple
    block_perm: tuple  # target block index -> source block index

    def apply(self, f, a):
        n = len(a)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                t = self.twist[i][j]
                if t is None:
                    row.append(f.zero)
                else:
                    row.append(f.mul(t, a[self.rho[i]][self.rho[j]]))
            out.append(tuple(row))
        return tuple(out)


def _conj_map(s_eps, m):
    e = s_eps.algebra
    rho = m.inverse_perm()
    n = s_eps.n
    twist = []
    for i in range(n):
        row = []
        for j in range(n):
            if s_eps.block_of_index(i) == s_eps.block_of_index(j):
                u = e.unit_mul(m.units[i], e.invert_homogeneous(m.units[j]))
                assert u.degree == (0,) * e.ambient_rank
                row.append(u.coeff)
            else:
                row.append(None)
        twist.append(tuple(row))
    nblocks = len(s_eps.block_sizes)
    block_perm = []
    for blk in range(nblocks):
        lo, _ = s_eps.block_ranges()[blk]
        block_perm.append(s_eps.block_of_index(rho[lo]))
    return _ConjMap(rho, tuple(twist), tuple(block_perm))


# -- closure ----------------------------------------------------------------------


def closure(s, gens, budget=DEFAULT_BUDGET):
    """The subgroup generated by degree-0 matrices, enumerated breadth first.

    Accepts GradedMatrix or fast-matrix generators; the result lives in the
    eps-form algebra.
    """
    s_eps, fast_gens = _to_fast_generators(s, gens)
    f = s_eps.algebra.field
    els = _mulclose(f, fast_gens, s_eps.n, budget)
    return FiniteMatrixGroup(s_eps, els)


def _to_fast_generators(s, gens):
    s_eps = s if s.is_eps_form else normalize_shift(s).target
    norm = None if s.is_eps_form else normalize_shift(s)
    fast = []
    for g in gens:
        if isinstance(g, tuple):
            fast.append(g)
        else:
            a = g if norm is None else norm.transport(g)
            fast.append(fm_from_graded(s_eps, a))
    return s_eps, fast


def _mulclose(f, gens, n, budget):
    ident = fm_identity(f, n)
    els = {ident: ident}
    frontier = []
    for g in gens:
        if g not in els:
            els[g] = g
            frontier.append(g)
    while frontier:
        new = []
        for b in frontier:
            for g in gens:
                c = fm_mul(f, b, g)
                if c not in els:
                    els[c] = c
                    new.append(c)
                    if len(els) > budget:
                        raise SizeBudgetExceeded(
                            f"closure exceeded the budget of {budget} elements"
                        )
        frontier = new
    return els


def commutator_subgroup_Sh(s, budget=DEFAULT_BUDGET):
    """The commutator subgroup of S_h^* as an explicit finite group.

    Seeds with all commutators of a generating system of S_h^* (degree-0
    generators, central scalar monomials, and one monomial per achievable
    degree coset) and closes under multiplication and conjugation by the
    generators, which yields the normal closure.
    """
    s_eps, seeds, conj_maps = _commutator_system(s)
    f = s_eps.algebra.field
    gens = list(seeds)
    while True:
        els = _mulclose(f, gens, s_eps.n, budget)
        fresh = []
        seen = set(els)
        for h in els.values():
            for cm in conj_maps:
                c = cm.apply(f, h)
                if c not in seen:
                    seen.add(c)
                    fresh.append(c)
        if not fresh:
            return FiniteMatrixGroup(s_eps, els)
        gens.extend(fresh)


def _commutator_system(s):
    s_eps = s if s.is_eps_form else normalize_shift(s).target
    e = s_eps.algebra
    f = e.field
    if not f.is_finite:
        raise InfiniteCoefficientField("the oracle needs a finite coefficient field")
    fast_gens = s0_generators(s_eps)
    mono_gens = monomial_generators(s_eps)

    seeds = []
    # commutators of degree-0 generators
    inv_cache = [fm_inv(f, g) for g in fast_gens]
    for a, ai in zip(fast_gens, inv_cache):
        for b, bi in zip(fast_gens, inv_cache):
            c = fm_mul(f, fm_mul(f, a, b), fm_mul(f, ai, bi))
            seeds.append(c)
    # commutators [m, a] = conj_m(a) * a^-1 and [m, m']
    conj_maps = []
    for m in mono_gens:
        cm = _conj_map(s_eps, m)
        conj_maps.append(cm)
        m_inv = s_eps.monomial_inv(m)
        conj_maps.append(_conj_map(s_eps, m_inv))
        for a, ai in zip(fast_gens, inv_cache):
            seeds.append(fm_mul(f, cm.apply(f, a), ai))
        for m2 in mono_gens:
            comm = s_eps.monomial_mul(
                s_eps.monomial_mul(m, m2),
                s_eps.monomial_mul(s_eps.monomial_inv(m), s_eps.monomial_inv(m2)),
            )
            seeds.append(fm_from_graded(s_eps, s_eps.monomial_to_matrix(comm)))
    # conjugation by degree-0 generators
    for g, gi in zip(fast_gens, inv_cache):
        conj_maps.append(_FastConj(g, gi))
    ident = fm_identity(f, s_eps.n)
    seeds = [x for x in dict.fromkeys(seeds) if x != ident]
    return s_eps, seeds, conj_maps


@dataclass(frozen=True)
class _FastConj:
    g: tuple
    g_inv: tuple

    def apply(self, f, a):
        return fm_mul(f, fm_mul(f, self.g, a), self.g_inv)


def projected_s0_order(s):
    """|S_0^*| = product over blocks of |GL_r(T_0)|."""
    f = s.algebra.field
    if not f.is_finite:
        return None
    p = f.p
    total = 1
    for r in s.block_sizes:
        for i in range(r):
            total *= p**r - p**i
    return total


# -- SK^h oracle -------------------------------------------------------------------


def sk_oracle(s, method="auto", budget=DEFAULT_BUDGET):
    """SK^h(S) computed independently of the closed-form route.

    method is one of "auto", "closure", "abelianized".  Closure mode is the
    raw brute force; abelianized mode only assumes the classical facts that
    blockwise SL lies in the commutator subgroup (no M_2(GF(2)) blocks) and
    that determinants of the degree-0 part realize every unit tuple.
    """
    s_eps = s if s.is_eps_form else normalize_shift(s).target
    f = s_eps.algebra.field
    if not f.is_finite:
        raise InfiniteCoefficientField("the oracle needs a finite coefficient field")
    if method == "auto":
        size = projected_s0_order(s_eps)
        method = "closure" if size is not None and size <= min(budget, 10**6) else "abelianized"
    if method == "closure":
        return _sk_oracle_closure(s_eps, budget)
    if method == "abelianized":
        return _sk_oracle_abelianized(s_eps, budget)
    raise ValueError(f"unknown oracle method {method!r}")


def _sk_oracle_closure(s_eps, budget):
    f = s_eps.algebra.field
    s0 = _mulclose(f, s0_generators(s_eps), s_eps.n, budget)
    sh1 = [m for m in s0.values() if fm_nrd(s_eps, m) == f.one]
    comm = commutator_subgroup_Sh(s_eps, budget)
    for c in comm.elements:
        assert fm_nrd(s_eps, c) == f.one, "commutators must have reduced norm 1"
    order = len(sh1) // comm.order
    assert len(sh1) % comm.order == 0
    coset_of = {}
    reps = []
    for m in sh1:
        if m in coset_of:
            continue
        rid = len(reps)
        reps.append(m)
        for c in comm.elements.values():
            coset_of[fm_mul(f, m, c)] = rid
    assert len(reps) == order
    stats = {}
    for m in reps:
        t = 1
        acc = m
        while acc not in comm.elements:
            acc = fm_mul(f, acc, m)
            t += 1
        stats[t] = stats.get(t, 0) + 1
    factors = _abelian_type_from_order_stats(order, stats)
    return GroupDescription(
        factors,
        "oracle: closure enumeration and coset counting",
        {
            "method": "closure",
            "s0_order": len(s0),
            "sh1_order": len(sh1),
            "commutator_order": comm.order,
        },
    )


def _sk_oracle_abelianized(s_eps, budget):
    e = s_eps.algebra
    f = e.field
    if f.p == 2 and any(r == 2 for r in s_eps.block_sizes):
        raise ExceptionalF2Config(
            "abelianized oracle needs SL_r inside the commutator subgroup, "
            "which fails for M_2(GF(2)) blocks"
        )
    q = f.p - 1
    k = len(s_eps.block_sizes)
    # image of S_h^(1) in (T_0^*)^k: tuples whose product is an s-th root of 1
    image_lattice = kernel_mod([[e.s]] * k, q)
    # image of the commutator subgroup: dlog vectors of generator commutators,
    # closed under the block permutations induced by monomial generators
    _, seeds, conj_maps = _commutator_system(s_eps)
    vectors = set()
    for m in seeds:
        dets = fm_block_dets(s_eps, m)
        vectors.add(tuple(f.dlog(d) for d in dets))
    block_perms = [
        cm.block_perm for cm in conj_maps if isinstance(cm, _ConjMap)
    ]
    frontier = list(vectors)
    while frontier:
        new = []
        for v in frontier:
            for bp in block_perms:
                w = tuple(v[bp[i]] for i in range(k))
                if w not in vectors:
                    vectors.add(w)
                    new.append(w)
        frontier = new
    rows = [[q if i == j else 0 for j in range(k)] for i in range(k)]
    rows.extend([list(v) for v in vectors])
    comm_lattice = Lattice.from_generators(k, rows)
    group, free = quotient(image_lattice, comm_lattice)
    assert free == 0
    return GroupDescription(
        group,
        "oracle: abelianized determinant quotient",
        {
            "method": "abelianized",
            "blocks": list(s_eps.block_sizes),
            "commutator_image_index": _lattice_index(comm_lattice),
            "sh1_image_index": _lattice_index(image_lattice),
        },
    )


def _lattice_index(lat):
    from .grading import det_int

    if lat.rank != lat.ambient_rank:
        return None
    return abs(det_int([list(r) for r in lat.basis]))


def _abelian_type_from_order_stats(order, stats):
    """Invariant factors of an abelian group from its element-order statistics."""
    for chain in _divisibility_chains(order):
        if _order_stats_of(chain) == stats:
            return FiniteAbelianGroup(chain)
    raise AssertionError(f"no abelian group of order {order} matches {stats}")


def _divisibility_chains(order, dmax=None):
    if order == 1:
        yield ()
        return
    for d in _divisors(order):
        if d < 2:
            continue
        if dmax is not None and dmax % d != 0:
            continue
        for rest in _divisibility_chains(order // d, d):
            yield rest + (d,)


def _divisors(n):
    out = [i for i in range(1, n + 1) if n % i == 0]
    return out


def _order_stats_of(factors):
    if not factors:
        return {1: 1}
    exponent = factors[-1]
    divisors = _divisors(exponent)
    leq = {m: prod(gcd(d, m) for d in factors) for m in divisors}
    count = {}
    for m in sorted(divisors):
        count[m] = leq[m] - sum(count[d] for d in divisors if d != m and m % d == 0)
    return {m: c for m, c in count.items() if c}


def verify_closure_is_group(group, rng, samples=50):
    """Spot-check closure output: products and inverses stay inside."""
    f = group.context.algebra.field
    keys = list(group.elements)
    for _ in range(samples):
        a = keys[rng.randrange(len(keys))]
        b = keys[rng.randrange(len(keys))]
        if fm_mul(f, a, b) not in group.elements:
            return False
        if fm_inv(f, a) not in group.elements:
            return False
    return True
