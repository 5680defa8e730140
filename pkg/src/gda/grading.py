"""Exact arithmetic for integer lattices in Z^k and their finite quotients.

Everything here runs on Python integers, so there is no overflow and no
rounding anywhere.  Lattices are kept in row-style Hermite normal form,
which makes equality, membership and coset representatives canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .errors import NotASubgroup


class _Infinite:
    """Sentinel for an infinite order or index."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"


INFINITE = _Infinite()


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det_int(mat):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(mat):
    """Smith normal form with transforms: returns (U, D, V) with U*mat*V = D.

    D is diagonal with d_1 | d_2 | ... and nonnegative entries; U and V are
    unimodular.  Total on integer matrices, including empty and zero ones.
    """
    a = [[int(x) for x in row] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def row_sub(i, j, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # move a smallest-magnitude nonzero entry of the trailing block to (t, t)
        pos = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, pos = x, (i, j)
        if pos is None:
            break
        if pos[0] != t:
            row_swap(t, pos[0])
        if pos[1] != t:
            col_swap(t, pos[1])

        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_sub(i, t, q)
                    if a[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_sub(j, t, q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break

        # pivot must divide the rest of the block for the divisibility chain
        piv = a[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        t += 1

    for i in range(min(m, n)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return u, a, v


def hermite_normal_form(rows, width):
    """Row-style Hermite normal form; returns the nonzero rows.

    Pivot columns strictly increase, pivots are positive, and entries above
    a pivot are reduced into [0, pivot).
    """
    h = [list(map(int, r)) for r in rows if any(r)]
    r = 0
    for c in range(width):
        nz = [i for i in range(r, len(h)) if h[i][c]]
        while len(nz) > 1:
            nz.sort(key=lambda i: abs(h[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = h[i][c] // h[i0][c]
                h[i] = [x - q * y for x, y in zip(h[i], h[i0])]
            nz = [i for i in range(r, len(h)) if h[i][c]]
        if not nz:
            continue
        i0 = nz[0]
        h[r], h[i0] = h[i0], h[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
        r += 1
    return [tuple(row) for row in h[:r]]


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^k, stored as Hermite-reduced basis rows."""

    ambient_rank: int
    basis: tuple

    @classmethod
    def from_generators(cls, ambient_rank, generators):
        for g in generators:
            if len(g) != ambient_rank:
                raise ValueError("generator length does not match ambient rank")
        return cls(ambient_rank, tuple(hermite_normal_form(generators, ambient_rank)))

    @classmethod
    def full(cls, ambient_rank):
        return cls.from_generators(ambient_rank, _identity(ambient_rank))

    @classmethod
    def zero(cls, ambient_rank):
        return cls(ambient_rank, ())

    @classmethod
    def scaled(cls, ambient_rank, factor):
        gens = [[factor if i == j else 0 for j in range(ambient_rank)] for i in range(ambient_rank)]
        return cls.from_generators(ambient_rank, gens)

    @property
    def rank(self):
        return len(self.basis)

    def _pivots(self):
        pivots = []
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            pivots.append(c)
        return pivots

    def rational_coordinates(self, v):
        """Solve x * basis = v over Q, or None if v is outside the span."""
        if len(v) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        w = [Fraction(x) for x in v]
        coords = []
        for row, p in zip(self.basis, self._pivots()):
            q = w[p] / row[p]
            coords.append(q)
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        if any(w):
            return None
        return coords

    def contains(self, v):
        coords = self.rational_coordinates(v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def integral_coordinates(self, v):
        coords = self.rational_coordinates(v)
        if coords is None or any(c.denominator != 1 for c in coords):
            return None
        return tuple(int(c) for c in coords)

    def coset_rep(self, v):
        """Canonical representative of v + L, reduced at every pivot column."""
        w = list(map(int, v))
        for row, p in zip(self.basis, self._pivots()):
            q = w[p] // row[p]
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        return tuple(w)

    def add(self, other):
        """Lattice sum self + other."""
        return Lattice.from_generators(self.ambient_rank, list(self.basis) + list(other.basis))

    def is_sublattice_of(self, other):
        return all(other.contains(row) for row in self.basis)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant factor form d_1 | d_2 | ... | d_r with every d_i >= 2."""

    invariant_factors: tuple

    def __post_init__(self):
        fs = self.invariant_factors
        for d in fs:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for x, y in zip(fs, fs[1:]):
            if y % x:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls):
        return cls(())

    @classmethod
    def from_cyclic_orders(cls, orders):
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        primes = {}
        for d in orders:
            d = int(d)
            if d < 1:
                raise ValueError("cyclic orders must be positive")
            f = _factorize(d)
            for p, e in f.items():
                primes.setdefault(p, []).append(e)
        depth = max((len(v) for v in primes.values()), default=0)
        factors = []
        for i in range(depth):
            d = 1
            for p, exps in primes.items():
                exps_sorted = sorted(exps, reverse=True)
                if i < len(exps_sorted):
                    d *= p ** exps_sorted[i]
            factors.append(d)
        factors = sorted(d for d in factors if d > 1)
        return cls(tuple(factors))

    @property
    def order(self):
        return prod(self.invariant_factors) if self.invariant_factors else 1

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self):
        return not self.invariant_factors

    def mod_n(self, n):
        """The quotient Q/nQ."""
        return FiniteAbelianGroup.from_cyclic_orders(
            [gcd(d, n) for d in self.invariant_factors]
        )

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def quotient(sup, sub):
    """Invariant factors and free rank of sup / sub.

    Raises NotASubgroup if some generator of sub lies outside sup.
    """
    if sup.ambient_rank != sub.ambient_rank:
        raise NotASubgroup("lattices live in different ambient ranks")
    rows = []
    for g in sub.basis:
        coords = sup.integral_coordinates(g)
        if coords is None:
            raise NotASubgroup(f"generator {g} is not in the larger lattice")
        rows.append(coords)
    free_rank = sup.rank - sub.rank
    if not rows:
        return FiniteAbelianGroup.trivial(), free_rank
    padded = [list(r) + [0] * (sup.rank - len(r)) for r in rows]
    _, d, _ = smith_normal_form(padded)
    factors = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        x = d[i][i]
        if x == 0:
            raise NotASubgroup("subgroup generators are not independent")
        if x > 1:
            factors.append(x)
    return FiniteAbelianGroup(tuple(sorted(factors))), free_rank


def exterior_square(q):
    """Exterior square of a finite abelian group in invariant factor form.

    For q = Z/d_1 + ... + Z/d_r with d_1 | ... | d_r the result is the sum of
    Z/d_i over pairs i < j, so d_i occurs with multiplicity r - i.
    """
    fs = q.invariant_factors
    r = len(fs)
    out = []
    for i in range(r):
        out.extend([fs[i]] * (r - 1 - i))
    return FiniteAbelianGroup(tuple(sorted(out)))


def coset_order(v, lattice):
    """Least m >= 1 with m*v in the lattice, or INFINITE."""
    coords = lattice.rational_coordinates(v)
    if coords is None:
        return INFINITE
    return lcm(1, *(c.denominator for c in coords))


def kernel_mod(mat, modulus):
    """The lattice {a in Z^r : a * mat = 0 (mod modulus)} for an r x c matrix.

    Solved through the Smith normal form: with U mat V = D the solutions are
    b U for b_i divisible by modulus / gcd(d_i, modulus).
    """
    r = len(mat)
    u, d, _ = smith_normal_form(mat)
    c = len(mat[0]) if mat and mat[0] else 0
    rows = []
    for i in range(r):
        di = d[i][i] if i < min(r, c) else 0
        scale = modulus // gcd(di, modulus) if di else 1
        rows.append([scale * x for x in u[i]])
    return Lattice.from_generators(r, rows)
