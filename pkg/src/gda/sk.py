"""Reduced norms on the degree-0 part and closed-form reduced Whitehead groups.

For this algebra family the center of E_0 is T_0 itself, so the reduced norm
of a degree-0 matrix is the blockwise determinant product raised to the
power s = ind(E).  Homogeneous units of nonzero degree never have reduced
norm 1, which confines everything to S_0^* and makes the closed forms
below finite computations:

  SK(E)            = mu_s(T_0) / mu_e(T_0)
  SK^h(M_n(E))     = mu_s(T_0) / mu_e(T_0)^n          (unshifted)
  kernel           = Z / gcd(n, e)
  SK^h(shifted)    = ((T_0^*)^(n-1) x mu_s(T_0)) / H  (staircase shifts)

with H generated by (w, ..., w, w^(2-n)) for w running over mu_e(T_0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .dieudonne import block_det_product, det0
from .errors import (
    ExceptionalF2Config,
    InfiniteT0Star,
    OrderTooSmall,
    ValidationError,
)
from .gmatrix import NOT_HOMOGENEOUS, ZERO_MATRIX
from .grading import INFINITE, FiniteAbelianGroup, coset_order, smith_normal_form


@dataclass(frozen=True)
class GroupDescription:
    """A computed abelian group with provenance and named constituents.

    invariant_factors is None for structural (symbolic) results over
    infinite coefficient fields.
    """

    invariant_factors: object
    provenance: str
    components: dict = field(default_factory=dict)

    @property
    def order(self):
        if self.invariant_factors is None:
            return None
        return self.invariant_factors.order

    @property
    def is_structural(self):
        return self.invariant_factors is None

    def __str__(self):
        if self.invariant_factors is None:
            return f"<structural: {self.provenance}>"
        return str(self.invariant_factors)


def nrd_S0(s, a):
    """Reduced norm of the semisimple degree-0 part: blockwise determinants."""
    return block_det_product(s, a)


def nrd_S(s, a):
    """Reduced norm of S on S_0^*: nrd_S0 raised to the index of E."""
    return s.algebra.field.pow(nrd_S0(s, a), s.algebra.s)


def in_Sh1(s, a):
    """Membership in S_h^(1): false off degree 0, else nrd_S(a) = 1.

    Nrd maps the degree-lambda component into degree n*s*lambda, so reduced
    norm 1 forces degree 0.
    """
    lam = s.homogeneity(a)
    if lam is ZERO_MATRIX or lam is NOT_HOMOGENEOUS:
        return False
    if lam != (0,) * s.algebra.ambient_rank:
        return False
    return nrd_S(s, a) == s.algebra.field.one


def _guard_f2(s):
    if s.warn_m2f2:
        raise ExceptionalF2Config(
            "the degree-0 part contains an M_2(GF(2)) factor; formulas do not apply"
        )


def eta(s, c):
    """The filtration map c -> diag(c, 1, ..., 1) on reduced-norm-1 scalars."""
    _guard_f2(s)
    e = s.algebra
    f = e.field
    if f.is_zero(c):
        raise ValidationError("eta needs a unit")
    if f.pow(c, e.s) != f.one:
        raise ValidationError("eta is defined on elements with c^s = 1")
    units = [e.unit(c if i == 0 else f.one, (0,) * e.ambient_rank) for i in range(s.n)]
    return s.diagonal(units)


def xi(s, a):
    """The inverse filtration map, induced by the degree-0 determinant."""
    _guard_f2(s)
    if not in_Sh1(s, a):
        raise ValidationError("xi is defined on S_h^(1)")
    return det0(s, a)


def sk_E(e):
    """SK of the algebra itself: mu_s(T_0) / mu_e(T_0), trivial for graded fields."""
    s0 = e.mu_s.order
    e0 = e.mu_e.order
    order = s0 // e0
    factors = FiniteAbelianGroup((order,)) if order > 1 else FiniteAbelianGroup.trivial()
    provenance = (
        "graded field: SK is trivial"
        if e.is_graded_field
        else "totally ramified closed form mu_s/mu_e"
    )
    return GroupDescription(
        factors,
        provenance,
        {"mu_s_order": s0, "mu_e_order": e0},
    )


def kernel_group(e, n):
    """The kernel term of the exact sequence: Z/gcd(n, e), with the Lambda bound."""
    g = gcd(n, e.e)
    factors = FiniteAbelianGroup((g,)) if g > 1 else FiniteAbelianGroup.trivial()
    lam_mod_n = e.lam.mod_n(n)
    assert lam_mod_n.order % factors.order == 0, "kernel order must divide |Lambda/n Lambda|"
    return GroupDescription(
        factors,
        "kernel Z/gcd(n, e) of the exact sequence",
        {
            "gcd_n_e": g,
            "lambda_mod_n": lam_mod_n.invariant_factors,
            "lambda_mod_n_order": lam_mod_n.order,
        },
    )


def sk_h_unshifted(e, n):
    """SK^h of the unshifted matrix algebra M_n(E).

    Totally ramified: mu_s(T_0) / mu_e(T_0)^n, cyclic of order
    gcd(n, e) * |SK(E)|; graded fields give the trivial group.
    """
    if n < 1:
        raise ValidationError("matrix size must be positive")
    if n == 2 and e.field.is_finite and getattr(e.field, "p", 0) == 2:
        raise ExceptionalF2Config("M_2(GF(2)) is outside the supported range of the closed forms")
    ker = kernel_group(e, n)
    ske = sk_E(e)
    s0 = e.mu_s.order
    e0 = e.mu_e.order
    # mu_e^n inside the cyclic group mu_s has order e0 / gcd(n, e0)
    order = s0 * gcd(n, e0) // e0
    assert order == ker.components["gcd_n_e"] * ske.order
    factors = FiniteAbelianGroup((order,)) if order > 1 else FiniteAbelianGroup.trivial()
    return GroupDescription(
        factors,
        "unshifted exact sequence: mu_s/mu_e^n",
        {
            "kernel": ker.invariant_factors.invariant_factors,
            "kernel_order": ker.components["gcd_n_e"],
            "sk_E_order": ske.order,
        },
    )


def sk_h_shifted(e, n, delta, structural=False):
    """SK^h of M_n(E)(0, delta, ..., (n-1) delta) with coset order above 3n.

    Requires E totally ramified.  Finite T_0 yields invariant factors via a
    Smith normal form of the quotient presentation; over an infinite T_0 the
    result is only structural and is returned symbolically when structural
    is set, otherwise InfiniteT0Star is raised.
    """
    if n < 2:
        raise ValidationError("the shifted example needs n > 1")
    if e.is_graded_field:
        raise ValidationError("the shifted formula needs a totally ramified algebra")
    m = coset_order(delta, e.gamma_E)
    if m is not INFINITE and m <= 3 * n:
        raise OrderTooSmall(f"coset order {m} of delta must exceed 3n = {3 * n}")
    s0 = e.mu_s.order
    e0 = e.mu_e.order
    if not e.field.is_finite:
        if not structural:
            raise InfiniteT0Star(
                "T_0^* is infinite; request structural=True for the symbolic result"
            )
        return GroupDescription(
            None,
            "shifted staircase formula ((T_0^*)^(n-1) x mu_s)/H over infinite T_0",
            {
                "t0_star_copies": n - 1,
                "mu_s_order": s0,
                "h_order": e0,
                "torsion_free_rank_witness": "T_0^* is not torsion",
            },
        )
    q = e.field.p - 1
    # additive presentation of (Z/q)^(n-1) x Z/s0 modulo the diagonal image
    # of mu_e: generator (a, ..., a, b) with a = q/e0, b = (2-n) * s0/e0
    rows = []
    for i in range(n - 1):
        row = [0] * n
        row[i] = q
        rows.append(row)
    row = [0] * n
    row[n - 1] = s0
    rows.append(row)
    h = [q // e0] * (n - 1) + [((2 - n) * (s0 // e0)) % s0]
    rows.append(h)
    _, d, _ = smith_normal_form(rows)
    factors = sorted(
        d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i] > 1
    )
    group = FiniteAbelianGroup(tuple(factors))
    return GroupDescription(
        group,
        "shifted staircase formula ((T_0^*)^(n-1) x mu_s)/H",
        {
            "t0_star_order": q,
            "mu_s_order": s0,
            "h_order": e0,
            "coset_order": "infinite" if m is INFINITE else m,
        },
    )
