"""Graded division algebras as twisted group algebras over an exact field.

An algebra is determined by the coefficient field T_0, a grade lattice
Gamma_E inside Z^k given by a chosen generator basis g_1..g_r, and a
commutation matrix c_ij of roots of unity.  Basis monomials multiply by the
fixed 2-cocycle

    e_gamma * e_delta = sigma(gamma, delta) * e_{gamma+delta},
    sigma(gamma, delta) = prod_{i>j} c_ij^(a_i * b_j)

in generator coordinates, so [e_{g_i}, e_{g_j}] = c_ij for i < j.  Every
homogeneous component is one-dimensional over T_0 and coefficients are
central; this realizes graded fields and the totally ramified twisted
algebras (tensor products of graded symbol algebras).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .errors import (
    DegreeOutsideGammaE,
    InfiniteIndexRadical,
    NonSquareIndex,
    NotRootOfUnity,
    ValidationError,
    ZeroCoefficient,
)
from .grading import INFINITE, Lattice, exterior_square, kernel_mod, quotient


@dataclass(frozen=True)
class AlgebraElement:
    """Finite T_0-linear combination of basis monomials e_gamma.

    Terms are stored sorted by degree with no zero coefficients, so equality
    is structural.
    """

    terms: tuple

    @property
    def is_zero(self):
        return not self.terms

    def single_term(self):
        """(degree, coeff) if the element is a monomial, else None."""
        if len(self.terms) == 1:
            return self.terms[0]
        return None

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r})*e{list(d)}" for d, c in self.terms)


@dataclass(frozen=True)
class HomogeneousUnit:
    """A nonzero monomial c * e_gamma; these are exactly the units of E."""

    coeff: object
    degree: tuple


@dataclass(frozen=True)
class AbelianizedUnit:
    """Class of a homogeneous unit in E_h^* / [E_h^*, E_h^*].

    The coefficient is canonicalized modulo mu_e(T_0), so structural
    equality is class equality.
    """

    degree: tuple
    coeff_class: object


class GradedDivisionAlgebra:
    def __init__(self, field, ambient_rank, gamma_basis, commutation):
        self.field = field
        self.ambient_rank = int(ambient_rank)
        self.gamma_basis = tuple(tuple(int(x) for x in g) for g in gamma_basis)
        self.rank = len(self.gamma_basis)
        self.commutation = tuple(tuple(row) for row in commutation)
        self._coords_cache = {}
        self._validate_basis()
        self._validate_commutation()
        self.gamma_E = Lattice.from_generators(self.ambient_rank, self.gamma_basis)
        self._setup_pairing()
        self._setup_radical()
        q, free = quotient(self.gamma_E, self.gamma_T)
        if free:
            raise InfiniteIndexRadical("radical has infinite index in the grade lattice")
        self.quotient_ET = q
        order = q.order
        s = isqrt(order)
        if s * s != order:
            raise NonSquareIndex(f"|Gamma_E/Gamma_T| = {order} is not a perfect square")
        fs = q.invariant_factors
        if any(fs[i] != fs[i + 1] for i in range(0, len(fs) - 1, 2)) or len(fs) % 2:
            raise NonSquareIndex("induced pairing is not of the form H x H")
        self.s = s
        self.lam = exterior_square(q)
        self.e = q.exponent
        if not self.lam.is_trivial and self.lam.exponent != self.e:
            raise NonSquareIndex("exponent of the exterior square is inconsistent")
        self.mu_e = field.mu(self.e)
        if self.mu_e.order != self.e:
            raise NotRootOfUnity(
                f"field has only {self.mu_e.order} of the required {self.e} roots of unity"
            )
        self.mu_s = field.mu(self.s)
        self._identity_class = None

    # -- validation ----------------------------------------------------

    def _validate_basis(self):
        r = self.rank
        if r == 0:
            raise ValidationError("grade lattice needs at least one generator")
        for g in self.gamma_basis:
            if len(g) != self.ambient_rank:
                raise ValidationError("generator length does not match ambient rank")
        # generators must be Z-linearly independent
        lat = Lattice.from_generators(self.ambient_rank, self.gamma_basis)
        if lat.rank != r:
            raise ValidationError("grade lattice generators are linearly dependent")

    def _validate_commutation(self):
        f = self.field
        r = self.rank
        c = self.commutation
        if len(c) != r or any(len(row) != r for row in c):
            raise ValidationError("commutation matrix must be square of the basis size")
        for i in range(r):
            if c[i][i] != f.one:
                raise ValidationError("commutation matrix must have 1 on the diagonal")
            for j in range(r):
                if f.is_zero(c[i][j]):
                    raise NotRootOfUnity("commutation entries must be nonzero")
                if f.order_of_unit(c[i][j]) is INFINITE:
                    raise NotRootOfUnity(
                        f"commutation entry c[{i}][{j}] is not a root of unity"
                    )
            for j in range(i + 1, r):
                if c[j][i] != f.inv(c[i][j]):
                    raise ValidationError("commutation matrix must be antisymmetric")

    def _setup_pairing(self):
        f = self.field
        r = self.rank
        orders = [
            f.order_of_unit(self.commutation[i][j])
            for i in range(r)
            for j in range(r)
        ]
        self.pairing_modulus = lcm(1, *orders)
        m = self.pairing_modulus
        zeta = f.mu(m).generator
        pows = []
        x = f.one
        for _ in range(m):
            pows.append(x)
            x = f.mul(x, zeta)
        self.zeta = zeta
        self._zeta_pows = pows
        index = {v: i for i, v in enumerate(pows)}
        try:
            self._nmat = [
                [index[self.commutation[i][j]] for j in range(r)] for i in range(r)
            ]
        except KeyError:
            raise NotRootOfUnity("commutation entries do not lie in a common cyclic group")

    def _setup_radical(self):
        # Gamma_T = {gamma : beta(gamma, g_j) = 1 for all j}, solved as the
        # kernel of the exponent matrix modulo the pairing modulus
        coeff_lattice = kernel_mod(self._nmat, self.pairing_modulus)
        gens = []
        for row in coeff_lattice.basis:
            vec = [0] * self.ambient_rank
            for a, g in zip(row, self.gamma_basis):
                for t in range(self.ambient_rank):
                    vec[t] += a * g[t]
            gens.append(vec)
        self.gamma_T = Lattice.from_generators(self.ambient_rank, gens)

    # -- coordinates and pairing ---------------------------------------

    def coords(self, degree):
        """Coordinates of an ambient vector in the chosen generator basis."""
        degree = tuple(int(x) for x in degree)
        cached = self._coords_cache.get(degree)
        if cached is not None:
            return cached
        coords = _solve_integer(self.gamma_basis, degree)
        if coords is None:
            raise DegreeOutsideGammaE(f"{degree} is not in the grade lattice")
        self._coords_cache[degree] = coords
        return coords

    def in_gamma_E(self, degree):
        try:
            self.coords(degree)
            return True
        except DegreeOutsideGammaE:
            return False

    def sigma(self, gamma, delta):
        """The 2-cocycle on generator coordinates."""
        a = self.coords(gamma)
        b = self.coords(delta)
        m = self.pairing_modulus
        exp = 0
        for i in range(self.rank):
            if a[i]:
                for j in range(i):
                    if b[j]:
                        exp += self._nmat[i][j] * a[i] * b[j]
        return self._zeta_pows[exp % m]

    def beta(self, gamma, delta):
        """The commutation bicharacter; equals [e_gamma, e_delta]."""
        a = self.coords(gamma)
        b = self.coords(delta)
        m = self.pairing_modulus
        exp = 0
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                exp += self._nmat[i][j] * (a[i] * b[j] - a[j] * b[i])
        return self._zeta_pows[exp % m]

    # -- elements --------------------------------------------------------

    def element(self, terms):
        """Build an AlgebraElement from an iterable or mapping degree -> coeff."""
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        acc = {}
        for degree, coeff in items:
            degree = tuple(int(x) for x in degree)
            self.coords(degree)
            if degree in acc:
                coeff = self.field.add(acc[degree], coeff)
            acc[degree] = coeff
        clean = tuple(sorted((d, c) for d, c in acc.items() if not self.field.is_zero(c)))
        return AlgebraElement(clean)

    @property
    def zero_el(self):
        return AlgebraElement(())

    @property
    def one_el(self):
        return self.element({(0,) * self.ambient_rank: self.field.one})

    def scalar_el(self, coeff):
        return self.element({(0,) * self.ambient_rank: coeff})

    def monomial_el(self, coeff, degree):
        return self.element({tuple(degree): coeff})

    def unit(self, coeff, degree):
        if self.field.is_zero(coeff):
            raise ZeroCoefficient("homogeneous units need a nonzero coefficient")
        degree = tuple(int(x) for x in degree)
        self.coords(degree)
        return HomogeneousUnit(coeff, degree)

    def unit_to_element(self, u):
        return self.element({u.degree: u.coeff})

    def as_unit(self, x):
        """View a monomial AlgebraElement as a HomogeneousUnit."""
        t = x.single_term()
        if t is None:
            raise ZeroCoefficient("element is not a nonzero monomial")
        return HomogeneousUnit(t[1], t[0])

    def add(self, x, y):
        acc = dict(x.terms)
        for d, c in y.terms:
            if d in acc:
                acc[d] = self.field.add(acc[d], c)
            else:
                acc[d] = c
        clean = tuple(sorted((d, c) for d, c in acc.items() if not self.field.is_zero(c)))
        return AlgebraElement(clean)

    def neg(self, x):
        return AlgebraElement(tuple((d, self.field.neg(c)) for d, c in x.terms))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def multiply(self, x, y):
        f = self.field
        acc = {}
        for d1, c1 in x.terms:
            for d2, c2 in y.terms:
                d = tuple(a + b for a, b in zip(d1, d2))
                c = f.mul(f.mul(c1, c2), self.sigma(d1, d2))
                if d in acc:
                    acc[d] = f.add(acc[d], c)
                else:
                    acc[d] = c
        clean = tuple(sorted((d, c) for d, c in acc.items() if not f.is_zero(c)))
        return AlgebraElement(clean)

    def scalar_mul(self, coeff, x):
        if self.field.is_zero(coeff):
            return self.zero_el
        return AlgebraElement(
            tuple((d, self.field.mul(coeff, c)) for d, c in x.terms)
        )

    # -- homogeneous unit group ------------------------------------------

    def unit_mul(self, u, v):
        d = tuple(a + b for a, b in zip(u.degree, v.degree))
        c = self.field.mul(
            self.field.mul(u.coeff, v.coeff), self.sigma(u.degree, v.degree)
        )
        return HomogeneousUnit(c, d)

    def invert_homogeneous(self, u):
        if self.field.is_zero(u.coeff):
            raise ZeroCoefficient("cannot invert a zero coefficient")
        neg_d = tuple(-x for x in u.degree)
        c = self.field.inv(
            self.field.mul(u.coeff, self.sigma(u.degree, neg_d))
        )
        return HomogeneousUnit(c, neg_d)

    def commutator(self, u, v):
        """The scalar u v u^-1 v^-1, which equals beta(deg u, deg v)."""
        return self.beta(u.degree, v.degree)

    def psi(self, gamma, delta):
        """Value of the wedge-to-commutator map on (gamma + Gamma_T) ^ (delta + Gamma_T)."""
        return self.beta(gamma, delta)

    # -- abelianization ----------------------------------------------------

    def abelianize(self, u):
        """Canonical class of a homogeneous unit modulo [E_h^*, E_h^*] = mu_e(T_0)."""
        if self.field.is_zero(u.coeff):
            raise ZeroCoefficient("cannot abelianize a zero coefficient")
        self.coords(u.degree)
        return AbelianizedUnit(u.degree, self._coeff_class(u.coeff))

    def _coeff_class(self, c):
        f = self.field
        g = self.mu_e.order
        if g == 1:
            return c
        if f.is_finite:
            t = f.dlog(c)
            return f.pow(f.primitive_root(), t % ((f.p - 1) // g))
        return min(f.mul(c, w) for w in self.mu_e.elements())

    def class_mul(self, a, b):
        d = tuple(x + y for x, y in zip(a.degree, b.degree))
        c = self.field.mul(a.coeff_class, b.coeff_class)
        return AbelianizedUnit(d, self._coeff_class(c))

    def class_pow(self, a, n):
        out = self.identity_class()
        base = a
        n = int(n)
        if n < 0:
            base = self.class_inv(a)
            n = -n
        for _ in range(n):
            out = self.class_mul(out, base)
        return out

    def class_inv(self, a):
        d = tuple(-x for x in a.degree)
        return AbelianizedUnit(d, self._coeff_class(self.field.inv(a.coeff_class)))

    def identity_class(self):
        if self._identity_class is None:
            self._identity_class = self.abelianize(
                HomogeneousUnit(self.field.one, (0,) * self.ambient_rank)
            )
        return self._identity_class

    def in_commutator_subgroup(self, x):
        """Membership of a scalar in [E_h^*, E_h^*], i.e. in mu_e(T_0).

        Only valid for this constructive family, where the commutator
        subgroup is exactly mu_e(T_0).
        """
        return self.mu_e.contains(x)

    # -- descriptive -------------------------------------------------------

    @property
    def is_graded_field(self):
        return self.s == 1

    def describe(self):
        return {
            "field": repr(self.field),
            "ambient_rank": self.ambient_rank,
            "gamma_e_rank": self.rank,
            "index": self.s,
            "exponent": self.e,
            "quotient": str(self.quotient_ET),
            "lambda": str(self.lam),
        }


def _solve_integer(rows, target):
    """Solve x * rows = target over Q, returning integer coordinates or None."""
    r = len(rows)
    k = len(target)
    # Gaussian elimination on the transposed system rows^T x = target
    aug = [[Fraction(rows[i][c]) for i in range(r)] + [Fraction(target[c])] for c in range(k)]
    piv_cols = []
    row = 0
    for col in range(r):
        sel = None
        for i in range(row, k):
            if aug[i][col]:
                sel = i
                break
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(k):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        piv_cols.append(col)
        row += 1
    # consistency
    for i in range(row, k):
        if aug[i][r]:
            return None
    coords = [Fraction(0)] * r
    for i, col in enumerate(piv_cols):
        coords[col] = aug[i][r]
    if any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)


def make_algebra(field, ambient_rank, gamma_basis, commutation):
    """Validated construction of a graded division algebra."""
    return GradedDivisionAlgebra(field, ambient_rank, gamma_basis, commutation)
