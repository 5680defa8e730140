"""Exact coefficient fields: prime fields GF(p) and cyclotomic fields Q(zeta_N).

Elements are plain values, with all arithmetic going through the field
object: ints in [0, p) for GF(p), and tuples of Fractions (coefficients of
1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial) for Q(zeta_N).
Plain values keep equality structural and hashing cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ParseError, ValidationError, ZeroElement
from .grading import INFINITE

MAX_PRIME = 10**6
MAX_CYCLOTOMIC = 120


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


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


def _divisors(n):
    ds = [1]
    for p, e in _factorize(n).items():
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


@dataclass(frozen=True)
class RootsOfUnity:
    """The cyclic group mu_d(F) of d-th roots of unity in F."""

    order: int
    generator: object
    field: object

    def elements(self):
        out = []
        x = self.field.one
        for _ in range(self.order):
            out.append(x)
            x = self.field.mul(x, self.generator)
        return out

    def contains(self, x):
        if self.field.is_zero(x):
            return False
        return self.field.pow(x, self.order) == self.field.one


class PrimeField:
    """GF(p) with canonical elements 0..p-1."""

    kind = "gf"
    is_finite = True

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise ValidationError(f"{p} is not prime")
        if p > MAX_PRIME:
            raise ValidationError(f"prime modulus capped at {MAX_PRIME}")
        self.p = p
        self.char = p
        self.units_order = p - 1
        self._unit_factors = _factorize(p - 1) if p > 2 else {}
        self._primitive_root = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def minus_one(self):
        return self.p - 1

    def from_int(self, n):
        return int(n) % self.p

    def is_zero(self, x):
        return x == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroElement("cannot invert 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        e = int(e)
        if e < 0:
            a = self.inv(a)
            e = -e
        return pow(a, e, self.p)

    def elements(self):
        return range(self.p)

    def units(self):
        return range(1, self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def random_unit(self, rng):
        return rng.randrange(1, self.p)

    def order_of_unit(self, x):
        if x == 0:
            raise ZeroElement("0 has no multiplicative order")
        t = self.p - 1
        for q in self._unit_factors:
            while t % q == 0 and pow(x, t // q, self.p) == 1:
                t //= q
        return t

    def primitive_root(self):
        if self._primitive_root is None:
            if self.p == 2:
                self._primitive_root = 1
            else:
                g = 2
                while self.order_of_unit(g) != self.p - 1:
                    g += 1
                self._primitive_root = g
        return self._primitive_root

    def dlog(self, x):
        """Discrete log of x base the canonical primitive root (baby-step giant-step)."""
        if x == 0:
            raise ZeroElement("0 has no discrete log")
        g = self.primitive_root()
        n = self.p - 1
        m = 1
        while m * m < n:
            m += 1
        table = {}
        cur = 1
        for j in range(m):
            table.setdefault(cur, j)
            cur = self.mul(cur, g)
        # x * (g^-m)^i
        gm_inv = self.inv(pow(g, m, self.p))
        cur = x
        for i in range(m + 1):
            if cur in table:
                return (i * m + table[cur]) % n
            cur = self.mul(cur, gm_inv)
        raise ValidationError("discrete log failed")  # pragma: no cover

    def mu(self, d):
        g = gcd(int(d), self.p - 1)
        gen = pow(self.primitive_root(), (self.p - 1) // g, self.p) if self.p > 2 else 1
        return RootsOfUnity(g, gen, self)

    def parse(self, text):
        t = text.strip()
        if not re.fullmatch(r"[+-]?\d+", t):
            raise ParseError(f"expected an integer literal for GF({self.p}), got {text!r}")
        return int(t) % self.p

    def format(self, x):
        return str(x)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, low degree first, as a tuple of ints."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d == n:
            continue
        num = _int_poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _int_poly_divexact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], den[-1])
        assert r == 0, "inexact cyclotomic division"
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert all(c == 0 for c in num), "inexact cyclotomic division"
    return out


class CyclotomicField:
    """Q(zeta_N) = Q[z] / Phi_N(z), exact.

    Elements are pairs (den, nums): a positive integer denominator and a
    tuple of integer coefficients of 1, z, ..., z^(phi(N)-1), normalized so
    gcd(den, content) = 1.  Phi_N is monic, so products of integer vectors
    reduce with integer tables; inversion goes through the Galois
    conjugates, whose action on powers of z is again integral.
    """

    kind = "cyclotomic"
    is_finite = False
    char = 0
    units_order = INFINITE

    def __init__(self, n):
        n = int(n)
        if n < 1:
            raise ValidationError("cyclotomic index must be positive")
        if n > MAX_CYCLOTOMIC:
            raise ValidationError(f"cyclotomic index capped at {MAX_CYCLOTOMIC}")
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        # number of roots of unity in the field: N for even N, 2N for odd
        self.torsion_order = n if n % 2 == 0 else 2 * n
        self._zpow = self._build_z_powers()
        self._conjugates = [
            k for k in range(2, n + 1) if gcd(k, n) == 1 and k != 1
        ]

    def __repr__(self):
        return f"Q(zeta_{self.n})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyc", self.n))

    def _build_z_powers(self):
        # integer coordinate rows of z^t mod Phi_N for t = 0 .. max(n, 2*deg) - 1
        deg = self.degree
        rows = []
        cur = [0] * deg
        cur[0] = 1
        top = max(self.n, 2 * deg)
        for _ in range(top):
            rows.append(tuple(cur))
            shifted = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                # z^deg = -(modulus without its leading 1)
                shifted = [
                    s - lead * m for s, m in zip(shifted, self.modulus[:-1])
                ]
            cur = shifted
        return rows

    def _norm(self, den, nums):
        if not any(nums):
            return (1, (0,) * self.degree)
        g = den
        for v in nums:
            g = gcd(g, v)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            den //= g
            nums = tuple(v // g for v in nums)
        else:
            nums = tuple(nums)
        return (den, nums)

    @property
    def zero(self):
        return (1, (0,) * self.degree)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def minus_one(self):
        return self.from_int(-1)

    def from_int(self, k):
        nums = [0] * self.degree
        nums[0] = int(k)
        return (1, tuple(nums))

    def from_fraction(self, q):
        q = Fraction(q)
        nums = [0] * self.degree
        nums[0] = q.numerator
        return self._norm(q.denominator, tuple(nums))

    def zeta(self):
        """The class of z, a primitive N-th root of unity."""
        if self.degree == 1:
            # Phi_1 = z - 1 or Phi_2 = z + 1: z is rational there
            return self.from_int(1 if self.n == 1 else -1)
        nums = [0] * self.degree
        nums[1] = 1
        return (1, tuple(nums))

    def is_zero(self, x):
        return not any(x[1])

    def coefficients(self, x):
        """The coordinates of x as Fractions, low degree first."""
        den, nums = x
        return tuple(Fraction(v, den) for v in nums)

    def add(self, a, b):
        da, na = a
        db, nb = b
        if da == db:
            return self._norm(da, tuple(x + y for x, y in zip(na, nb)))
        return self._norm(da * db, tuple(x * db + y * da for x, y in zip(na, nb)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (a[0], tuple(-x for x in a[1]))

    def scalar_mul(self, q, a):
        q = Fraction(q)
        return self._norm(a[0] * q.denominator, tuple(q.numerator * x for x in a[1]))

    def mul(self, a, b):
        deg = self.degree
        da, na = a
        db, nb = b
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(na):
            if x:
                for j, y in enumerate(nb):
                    if y:
                        conv[i + j] += x * y
        out = conv[:deg]
        for m in range(deg, 2 * deg - 1):
            c = conv[m]
            if c:
                red = self._zpow[m]
                for i in range(deg):
                    if red[i]:
                        out[i] += c * red[i]
        return self._norm(da * db, tuple(out))

    def galois_conjugate(self, a, k):
        """Image of a under z -> z^k, for k coprime to N."""
        den, nums = a
        deg = self.degree
        out = [0] * deg
        for j, c in enumerate(nums):
            if c:
                row = self._zpow[(j * k) % self.n] if self.n > 1 else self._zpow[0]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return self._norm(den, tuple(out))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroElement("cannot invert 0")
        if self.degree == 1:
            den, nums = a
            return self._norm(nums[0], (den,))
        # product of the nontrivial Galois conjugates, divided by the norm
        y = self.one
        for k in self._conjugates:
            y = self.mul(y, self.galois_conjugate(a, k))
        dn, nums = self.mul(a, y)
        assert not any(nums[1:]), "norm must be rational"
        return self.scalar_mul(Fraction(dn, nums[0]), y)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        e = int(e)
        if e < 0:
            a = self.inv(a)
            e = -e
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def random(self, rng):
        return self._norm(1, tuple(rng.randrange(-3, 4) for _ in range(self.degree)))

    def random_unit(self, rng):
        while True:
            x = self.random(rng)
            if not self.is_zero(x):
                return x

    def order_of_unit(self, x):
        if self.is_zero(x):
            raise ZeroElement("0 has no multiplicative order")
        m = self.torsion_order
        if self.pow(x, m) != self.one:
            return INFINITE
        t = m
        for q in _factorize(m):
            while t % q == 0 and self.pow(x, t // q) == self.one:
                t //= q
        return t

    def torsion_generator(self):
        z = self.zeta()
        if self.n % 2 == 0:
            return z
        return self.neg(z)

    def mu(self, d):
        g = gcd(int(d), self.torsion_order)
        gen = self.pow(self.torsion_generator(), self.torsion_order // g)
        return RootsOfUnity(g, gen, self)

    def parse(self, text):
        return _parse_poly_literal(self, text)

    def format(self, x):
        if self.is_zero(x):
            return "0"
        coeffs = self.coefficients(x)
        parts = []
        for k in range(self.degree - 1, -1, -1):
            c = coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = _format_rat(abs(c))
            else:
                zk = "z" if k == 1 else f"z^{k}"
                body = zk if abs(c) == 1 else f"{_format_rat(abs(c))}*{zk}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _format_rat(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<z>z)|(?P<pow>\^)|(?P<mul>\*)|(?P<sign>[+-]))"
)


def _parse_poly_literal(field, text):
    """Parse literals like '1/2*z^3 - z + 2' into a canonical element."""
    pos = 0
    result = field.zero
    sign = 1
    expect_term = True
    n = len(text)

    def error(msg, at):
        raise ParseError(f"{msg} in {text!r}", position=at)

    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            error("unexpected character", pos)
        pos = m.end()
        if m.group("sign"):
            if expect_term and m.group("sign") == "-":
                sign = -sign
            elif expect_term:
                pass
            else:
                sign = 1 if m.group("sign") == "+" else -1
                expect_term = True
            continue
        if not expect_term:
            error("expected '+' or '-' between terms", m.start())
        coeff = Fraction(1)
        has_coeff = False
        if m.group("num"):
            coeff = Fraction(m.group("num"))
            has_coeff = True
            m2 = _TOKEN.match(text, pos)
            if m2 and m2.group("mul"):
                pos = m2.end()
                m2 = _TOKEN.match(text, pos)
                if not (m2 and m2.group("z")):
                    error("expected 'z' after '*'", pos)
                pos = m2.end()
                has_z = True
            elif m2 and m2.group("z"):
                pos = m2.end()
                has_z = True
            else:
                has_z = False
        else:
            has_z = bool(m.group("z"))
            if not has_z:
                error("expected a term", m.start())
        power = 0
        if has_z:
            power = 1
            m3 = _TOKEN.match(text, pos)
            if m3 and m3.group("pow"):
                pos = m3.end()
                m4 = _TOKEN.match(text, pos)
                if not (m4 and m4.group("num")) or "/" in (m4.group("num") or "/"):
                    error("expected an integer exponent after '^'", pos)
                power = int(m4.group("num"))
                pos = m4.end()
        term = field.scalar_mul(sign * coeff, field.pow(field.zeta(), power))
        result = field.add(result, term)
        sign = 1
        expect_term = False
    if expect_term:
        error("empty or dangling expression", pos)
    return result


def make_field(kind, **kwargs):
    if kind == "gf":
        return PrimeField(kwargs["p"])
    if kind == "cyclotomic":
        return CyclotomicField(kwargs["n"])
    raise ValidationError(f"unknown field kind {kind!r}")


def mu(field, d):
    """The group mu_d(F) of d-th roots of unity in F."""
    if d < 1:
        raise ValidationError("mu requires d >= 1")
    return field.mu(d)


def order_of_unit(field, x):
    """Least t >= 1 with x^t = 1, or INFINITE."""
    return field.order_of_unit(x)
