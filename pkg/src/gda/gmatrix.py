"""Shifted matrix algebras M_n(E)(shifts) over a graded division algebra.

The (i, j) entry of a degree-lambda matrix lies in the component of degree
lambda + shift_j - shift_i.  Permutation matrices follow the convention that
column j carries its 1 in row pi(j), so P_pi P_tau = P_{pi tau} and left
multiplication by P_pi moves row i to row pi(i).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraElement, HomogeneousUnit
from .errors import (
    NotDegreeZero,
    NotHomogeneousMatrix,
    SamePosition,
    WrongDegree,
)
from .grading import Lattice


class _Sentinel:
    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


NOT_HOMOGENEOUS = _Sentinel("NotHomogeneous")
ZERO_MATRIX = _Sentinel("ZeroMatrix")


@dataclass(frozen=True)
class GradedMatrix:
    entries: tuple  # n x n tuple of AlgebraElements
    cached_degree: object = field(default=None, compare=False)

    def __getitem__(self, pos):
        return self.entries[pos[0]][pos[1]]

    @property
    def n(self):
        return len(self.entries)


@dataclass(frozen=True)
class MonomialMatrix:
    """U * P_pi: exactly one nonzero entry per row and column.

    units[i] sits at position (i, pi^-1(i)); perm[j] = pi(j) is the row of
    the nonzero entry in column j.
    """

    units: tuple
    perm: tuple

    @property
    def n(self):
        return len(self.units)

    def inverse_perm(self):
        inv = [0] * len(self.perm)
        for j, i in enumerate(self.perm):
            inv[i] = j
        return tuple(inv)


def perm_sign(perm):
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class EpsilonForm:
    """Shift normalization data: grouped cosets, sizes and translations."""

    perm: tuple  # new index i came from old index perm[i]
    eps: tuple  # one representative shift per block
    sizes: tuple  # multiplicities r_1..r_k
    translations: tuple  # alpha_i in Gamma_E moving old shift to the block rep


class ShiftedMatrixAlgebra:
    def __init__(self, algebra, n, shifts=None):
        if n < 1:
            raise ValueError("matrix size must be positive")
        self.algebra = algebra
        self.n = int(n)
        k = algebra.ambient_rank
        if shifts is None:
            shifts = [(0,) * k] * n
        self.shifts = tuple(tuple(int(x) for x in s) for s in shifts)
        if len(self.shifts) != n or any(len(s) != k for s in self.shifts):
            raise ValueError("need one shift vector of ambient rank per row")
        self.eps_form = self._compute_eps_form()
        self.block_sizes = self.eps_form.sizes
        self.warn_m2f2 = (
            algebra.field.is_finite
            and getattr(algebra.field, "p", 0) == 2
            and any(r == 2 for r in self.block_sizes)
        )

    def __repr__(self):
        return f"M_{self.n}({self.algebra.field!r}-algebra)({list(self.shifts)})"

    # -- epsilon form -----------------------------------------------------

    def _compute_eps_form(self):
        lat = self.algebra.gamma_E
        reps = [lat.coset_rep(s) for s in self.shifts]
        order = []
        groups = {}
        for i, r in enumerate(reps):
            if r not in groups:
                groups[r] = []
                order.append(r)
            groups[r].append(i)
        perm = tuple(i for r in order for i in groups[r])
        eps = tuple(order)  # canonical coset representatives
        sizes = tuple(len(groups[r]) for r in order)
        translations = []
        for blk, r in enumerate(order):
            for i in groups[r]:
                alpha = tuple(a - b for a, b in zip(eps[blk], self.shifts[i]))
                translations.append(alpha)
        return EpsilonForm(perm, eps, sizes, tuple(translations))

    @property
    def is_eps_form(self):
        ef = self.eps_form
        return ef.perm == tuple(range(self.n)) and all(
            not any(a) for a in ef.translations
        )

    def block_ranges(self):
        out = []
        start = 0
        for r in self.block_sizes:
            out.append((start, start + r))
            start += r
        return out

    def block_of_index(self, i):
        for blk, (lo, hi) in enumerate(self.block_ranges()):
            if lo <= i < hi:
                return blk
        raise IndexError(i)

    # -- constructors ------------------------------------------------------

    def matrix(self, entries, cached_degree=None):
        if len(entries) != self.n or any(len(r) != self.n for r in entries):
            raise ValueError("entries must form an n x n grid")
        rows = []
        for row in entries:
            cells = []
            for x in row:
                if not isinstance(x, AlgebraElement):
                    raise TypeError("matrix entries must be AlgebraElements")
                cells.append(x)
            rows.append(tuple(cells))
        return GradedMatrix(tuple(rows), cached_degree)

    def zero_matrix(self):
        z = self.algebra.zero_el
        return GradedMatrix(tuple((z,) * self.n for _ in range(self.n)))

    def identity(self):
        e = self.algebra
        rows = []
        for i in range(self.n):
            rows.append(
                tuple(e.one_el if i == j else e.zero_el for j in range(self.n))
            )
        return GradedMatrix(tuple(rows), (0,) * e.ambient_rank)

    def scalar_matrix(self, x):
        """x * I_n for an algebra element x."""
        e = self.algebra
        rows = []
        for i in range(self.n):
            rows.append(tuple(x if i == j else e.zero_el for j in range(self.n)))
        return GradedMatrix(tuple(rows))

    def diagonal(self, units):
        e = self.algebra
        rows = []
        for i in range(self.n):
            rows.append(
                tuple(
                    e.unit_to_element(units[i]) if i == j else e.zero_el
                    for j in range(self.n)
                )
            )
        return GradedMatrix(tuple(rows))

    def elementary(self, i, j, x):
        """e_ij(x) = I + E_ij(x); homogeneous of degree 0.

        Requires x homogeneous with deg(x) = shift_j - shift_i, or x = 0.
        """
        if i == j:
            raise SamePosition("elementary matrices need i != j")
        e = self.algebra
        if x.is_zero:
            return self.identity()
        term = x.single_term()
        expected = tuple(a - b for a, b in zip(self.shifts[j], self.shifts[i]))
        if term is None or term[0] != expected:
            raise WrongDegree(
                f"entry of e_{i}{j} must be homogeneous of degree {expected}"
            )
        rows = [list(r) for r in self.identity().entries]
        rows[i][j] = x
        return GradedMatrix(tuple(tuple(r) for r in rows), (0,) * e.ambient_rank)

    def elementary_positions(self):
        """Positions (i, j), i != j, where nonzero homogeneous elementaries exist."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                d = tuple(a - b for a, b in zip(self.shifts[j], self.shifts[i]))
                if self.algebra.in_gamma_E(d):
                    out.append((i, j))
        return out

    def monomial(self, units, perm):
        """Validated homogeneous monomial matrix U * P_pi."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        m = MonomialMatrix(tuple(units), tuple(perm))
        if self.monomial_degree(m) is NOT_HOMOGENEOUS:
            raise NotHomogeneousMatrix("monomial matrix is not homogeneous")
        return m

    def monomial_degree(self, m):
        inv = m.inverse_perm()
        lam = None
        for i, u in enumerate(m.units):
            # entry u_i at (i, inv[i]) lies in E_{lam + shift_{inv[i]} - shift_i}
            cand = tuple(
                d - a + b
                for d, a, b in zip(u.degree, self.shifts[inv[i]], self.shifts[i])
            )
            if lam is None:
                lam = cand
            elif lam != cand:
                return NOT_HOMOGENEOUS
        return lam

    def monomial_to_matrix(self, m):
        e = self.algebra
        rows = [[e.zero_el] * self.n for _ in range(self.n)]
        inv = m.inverse_perm()
        for i, u in enumerate(m.units):
            rows[i][inv[i]] = e.unit_to_element(u)
        lam = self.monomial_degree(m)
        cached = lam if lam is not NOT_HOMOGENEOUS else None
        return GradedMatrix(tuple(tuple(r) for r in rows), cached)

    def monomial_mul(self, m1, m2):
        # (U P_pi)(U' P_pi') = (U * pi(U')) P_{pi pi'}
        inv1 = m1.inverse_perm()
        e = self.algebra
        units = tuple(
            e.unit_mul(m1.units[i], m2.units[inv1[i]]) for i in range(self.n)
        )
        perm = tuple(m1.perm[m2.perm[j]] for j in range(self.n))
        return MonomialMatrix(units, perm)

    def monomial_inv(self, m):
        e = self.algebra
        inv = m.inverse_perm()
        units = tuple(
            e.invert_homogeneous(m.units[m.perm[a]]) for a in range(self.n)
        )
        return MonomialMatrix(units, inv)

    def permutation_monomial(self, perm):
        e = self.algebra
        one = e.field.one
        zero_deg = (0,) * e.ambient_rank
        units = tuple(HomogeneousUnit(one, zero_deg) for _ in range(self.n))
        return MonomialMatrix(units, tuple(perm))

    # -- degree bookkeeping -------------------------------------------------

    def homogeneity(self, a):
        """Degree of a homogeneous matrix, NOT_HOMOGENEOUS, or ZERO_MATRIX."""
        lam = None
        for i in range(self.n):
            for j in range(self.n):
                x = a.entries[i][j]
                if x.is_zero:
                    continue
                term = x.single_term()
                if term is None:
                    return NOT_HOMOGENEOUS
                deg = term[0]
                cand = tuple(
                    d - b + c
                    for d, b, c in zip(deg, self.shifts[j], self.shifts[i])
                )
                if lam is None:
                    lam = cand
                elif lam != cand:
                    return NOT_HOMOGENEOUS
        if lam is None:
            return ZERO_MATRIX
        return lam

    def grade_set(self):
        """The cosets (shift_j - shift_i) + Gamma_E as canonical representatives."""
        lat = self.algebra.gamma_E
        out = set()
        for i in range(self.n):
            for j in range(self.n):
                d = tuple(a - b for a, b in zip(self.shifts[j], self.shifts[i]))
                out.add(lat.coset_rep(d))
        return out

    def gamma_S_star(self):
        """Degrees of homogeneous units of S, as a lattice.

        A degree lambda is achievable exactly when some permutation sigma has
        lambda in (shift_i - shift_{sigma(i)}) + Gamma_E for every i; the
        search runs over candidate cosets with a backtracking matching.
        """
        gens = list(self.algebra.gamma_basis)
        for rep, _ in self._achievable_cosets():
            gens.append(rep)
        return Lattice.from_generators(self.algebra.ambient_rank, gens)

    def _achievable_cosets(self):
        """(canonical coset rep, witness sigma) pairs with sigma a matching."""
        lat = self.algebra.gamma_E
        n = self.n
        candidates = {}
        for i in range(n):
            for j in range(n):
                d = tuple(a - b for a, b in zip(self.shifts[i], self.shifts[j]))
                candidates.setdefault(lat.coset_rep(d), None)
        out = []
        for rep in candidates:
            allowed = []
            for i in range(n):
                row = [
                    j
                    for j in range(n)
                    if lat.coset_rep(
                        tuple(a - b for a, b in zip(self.shifts[i], self.shifts[j]))
                    )
                    == rep
                ]
                allowed.append(row)
            sigma = _perfect_matching(allowed, n)
            if sigma is not None:
                out.append((rep, sigma))
        return out

    def achievable_monomial(self, rep, sigma):
        """A homogeneous monomial matrix of degree rep from a matching witness."""
        e = self.algebra
        units = []
        for i in range(self.n):
            d = tuple(
                r + a - b
                for r, a, b in zip(rep, self.shifts[sigma[i]], self.shifts[i])
            )
            units.append(HomogeneousUnit(e.field.one, d))
        # sigma(i) = pi^-1(i), so perm = sigma^-1
        inv = [0] * self.n
        for i, j in enumerate(sigma):
            inv[j] = i
        return self.monomial(units, inv)

    # -- arithmetic -----------------------------------------------------------

    def mat_add(self, a, b):
        e = self.algebra
        return GradedMatrix(
            tuple(
                tuple(e.add(a.entries[i][j], b.entries[i][j]) for j in range(self.n))
                for i in range(self.n)
            )
        )

    def mat_multiply(self, a, b):
        e = self.algebra
        n = self.n
        rows = []
        for i in range(n):
            arow = a.entries[i]
            row = []
            for j in range(n):
                acc = e.zero_el
                for t in range(n):
                    x = arow[t]
                    y = b.entries[t][j]
                    if x.is_zero or y.is_zero:
                        continue
                    acc = e.add(acc, e.multiply(x, y))
                row.append(acc)
            rows.append(tuple(row))
        return GradedMatrix(tuple(rows))

    def mat_scalar_mul(self, coeff, a):
        e = self.algebra
        return GradedMatrix(
            tuple(
                tuple(e.scalar_mul(coeff, x) for x in row) for row in a.entries
            )
        )

    def mat_equal(self, a, b):
        return a.entries == b.entries

    def unipotent_inverse(self, a):
        """Inverse of a unipotent triangular matrix via the nilpotent series."""
        n_mat = self.mat_add(a, self.mat_scalar_mul(self.algebra.field.minus_one, self.identity()))
        out = self.identity()
        term = self.identity()
        for _ in range(self.n - 1):
            term = self.mat_multiply(term, n_mat)
            term = self.mat_scalar_mul(self.algebra.field.minus_one, term)
            out = self.mat_add(out, term)
        return out

    def mat_invert(self, a):
        """Inverse of a homogeneous invertible matrix via Bruhat factors."""
        from .bruhat import bruhat_decompose

        form = bruhat_decompose(self, a)
        t_inv = self.unipotent_inverse(form.t)
        v_inv = self.unipotent_inverse(form.v)
        m_inv = self.monomial_to_matrix(
            self.monomial_inv(MonomialMatrix(form.units, form.perm))
        )
        return self.mat_multiply(v_inv, self.mat_multiply(m_inv, t_inv))

    # -- blocks ------------------------------------------------------------------

    def block_decompose(self, a):
        """Diagonal blocks of a degree-0 matrix under the eps-form identification.

        Returns one matrix over E_0 = T_0 (as field values) per block.
        """
        lam = self.homogeneity(a)
        if lam not in (ZERO_MATRIX,) and lam != (0,) * self.algebra.ambient_rank:
            raise NotDegreeZero("block decomposition needs a degree-0 matrix")
        work = self
        if not self.is_eps_form:
            norm = normalize_shift(self)
            work = norm.target
            a = norm.transport(a)
        e = work.algebra
        f = e.field
        zero_deg = (0,) * e.ambient_rank
        blocks = []
        for lo, hi in work.block_ranges():
            block = []
            for i in range(lo, hi):
                row = []
                for j in range(lo, hi):
                    x = a.entries[i][j]
                    if x.is_zero:
                        row.append(f.zero)
                    else:
                        term = x.single_term()
                        assert term is not None and term[0] == zero_deg
                        row.append(term[1])
                block.append(row)
            blocks.append(block)
        # entries outside the blocks of a degree-0 matrix are zero
        for i in range(work.n):
            for j in range(work.n):
                if work.block_of_index(i) != work.block_of_index(j):
                    assert a.entries[i][j].is_zero
        return blocks

    def embed_blocks(self, blocks):
        """Inverse of block_decompose, landing back in this algebra."""
        work = self if self.is_eps_form else normalize_shift(self).target
        e = work.algebra
        rows = [[e.zero_el] * work.n for _ in range(work.n)]
        ranges = work.block_ranges()
        assert len(blocks) == len(ranges)
        for (lo, hi), block in zip(ranges, blocks):
            for i in range(lo, hi):
                for j in range(lo, hi):
                    rows[i][j] = e.scalar_el(block[i - lo][j - lo])
        out = GradedMatrix(tuple(tuple(r) for r in rows))
        if self.is_eps_form:
            return out
        return normalize_shift(self).untransport(out)


@dataclass(frozen=True)
class NormalizedShift:
    source: ShiftedMatrixAlgebra
    target: ShiftedMatrixAlgebra
    perm: tuple
    translations: tuple

    def _translators(self):
        # w_i = e_{alpha_i}: conjugation by diag(w) P_perm shifts entry degrees
        # by alpha_j - alpha_i, which is exactly the eps-form correction
        e = self.source.algebra
        w = [e.monomial_el(e.field.one, tuple(al)) for al in self.translations]
        w_inv = [e.unit_to_element(e.invert_homogeneous(e.as_unit(x))) for x in w]
        return w, w_inv

    def transport(self, a):
        """Graded isomorphism source -> target; preserves homogeneity degrees."""
        s = self.source
        e = s.algebra
        w, w_inv = self._translators()
        n = s.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                x = a.entries[self.perm[i]][self.perm[j]]
                row.append(e.multiply(e.multiply(w_inv[i], x), w[j]))
            rows.append(tuple(row))
        return GradedMatrix(tuple(rows))

    def untransport(self, a):
        s = self.source
        e = s.algebra
        w, w_inv = self._translators()
        n = s.n
        inv_perm = [0] * n
        for i, p in enumerate(self.perm):
            inv_perm[p] = i
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                x = a.entries[inv_perm[i]][inv_perm[j]]
                row.append(e.multiply(e.multiply(w[inv_perm[i]], x), w_inv[inv_perm[j]]))
            rows.append(tuple(row))
        return GradedMatrix(tuple(rows))

    def transport_elementary(self, i, j, x):
        """Image of the elementary data (i, j, x) under the transport."""
        e = self.source.algebra
        w, w_inv = self._translators()
        inv_perm = [0] * self.source.n
        for a, p in enumerate(self.perm):
            inv_perm[p] = a
        ni, nj = inv_perm[i], inv_perm[j]
        nx = e.multiply(e.multiply(w_inv[ni], x), w[nj])
        return ni, nj, nx

    def untransport_elementary(self, i, j, x):
        """Pull elementary data back from the eps-form algebra to the source."""
        e = self.source.algebra
        w, w_inv = self._translators()
        si, sj = self.perm[i], self.perm[j]
        sx = e.multiply(e.multiply(w[i], x), w_inv[j])
        return si, sj, sx


def normalize_shift(s):
    """Group equal shift cosets and translate them to block representatives.

    Returns transport data realizing the graded isomorphism onto the
    epsilon-form algebra.
    """
    ef = s.eps_form
    new_shifts = []
    for blk, size in enumerate(ef.sizes):
        new_shifts.extend([ef.eps[blk]] * size)
    target = ShiftedMatrixAlgebra(s.algebra, s.n, new_shifts)
    return NormalizedShift(s, target, ef.perm, ef.translations)


def _perfect_matching(allowed, n):
    """Backtracking search for sigma with sigma(i) in allowed[i] for all i."""
    sigma = [None] * n
    used = [False] * n
    order = sorted(range(n), key=lambda i: len(allowed[i]))

    def place(t):
        if t == n:
            return True
        i = order[t]
        for j in allowed[i]:
            if not used[j]:
                used[j] = True
                sigma[i] = j
                if place(t + 1):
                    return True
                used[j] = False
                sigma[i] = None
        return False

    if place(0):
        return tuple(sigma)
    return None
